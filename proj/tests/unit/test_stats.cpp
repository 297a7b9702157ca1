#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hexmix/stats.hpp"

using namespace hexmix;

TEST_CASE("chi-square tail probabilities") {
    // Two cells: statistic (60-50)^2/50 * 2 = 4 on one degree of freedom.
    const ChiSquare c = chi_square_gof({60, 40}, {0.5, 0.5});
    CHECK(c.statistic == doctest::Approx(4.0));
    CHECK(c.dof == 1);
    CHECK(c.p_value == doctest::Approx(0.0455003).epsilon(1e-5));
    // Five cells, statistic 9.4877 on four degrees of freedom is the 5% point.
    const ChiSquare d = chi_square_gof({100, 100, 100, 100, 100}, {0.2, 0.2, 0.2, 0.2, 0.2});
    CHECK(d.statistic == 0.0);
    CHECK(d.p_value == doctest::Approx(1.0));
    CHECK_THROWS_AS(chi_square_gof({3, 1}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("intervals") {
    const MeanCI m = mean_ci({1, 2, 3, 4, 5});
    CHECK(m.mean == doctest::Approx(3.0));
    CHECK(m.sd == doctest::Approx(std::sqrt(2.5)));
    // t quantile 2.776445 on four degrees of freedom
    CHECK(m.ci.hi - m.mean == doctest::Approx(2.776445 * std::sqrt(2.5) / std::sqrt(5.0)).epsilon(1e-6));
    const Interval w = wilson_interval(5, 10);
    CHECK(w.lo == doctest::Approx(0.236593).epsilon(1e-5));
    CHECK(w.hi == doctest::Approx(0.763407).epsilon(1e-5));
    CHECK(wilson_interval(0, 100).lo == 0.0);
    CHECK(Interval{0, 1}.disjoint(Interval{1.5, 2}));
    CHECK_FALSE(Interval{0, 1}.disjoint(Interval{0.5, 2}));
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("linear fit") {
    const LinearFit f = linear_fit({1, 2, 3, 4}, {3, 5, 7, 9});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
}

TEST_CASE("bootstrap") {
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(std::sin(i * 1.3) + 2.0);
    auto stat = [&](const IndexDraw& draw) {
        double s = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) s += xs[draw(xs.size())];
        return s / xs.size();
    };
    const Bootstrap a = bootstrap(stat, 500, 9), b = bootstrap(stat, 500, 9);
    CHECK(a.replicates == b.replicates);
    const MeanCI m = mean_ci(xs);
    CHECK(a.ci.contains(m.mean));
    CHECK((a.ci.hi - a.ci.lo) == doctest::Approx(m.ci.hi - m.ci.lo).epsilon(0.25));
}

TEST_CASE("uniformity test on exact counts") {
    const auto d = make_domain(1, 1, 1);
    const auto all = enumerate_all(d, 10);
    std::vector<HeightField> s;
    for (int i = 0; i < 100; ++i) s.push_back(all[i % 2]);
    CHECK(uniformity_test(s, d).p_value == doctest::Approx(1.0));
    for (int i = 0; i < 40; ++i) s.push_back(all[0]);
    CHECK(uniformity_test(s, d).p_value < 1e-3);
}
