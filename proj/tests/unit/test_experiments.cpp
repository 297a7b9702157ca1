#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "hexmix/experiments.hpp"

using namespace hexmix;

TEST_CASE("parallel_for covers every index once and rethrows") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("uniformity experiment and its negative control") {
    const auto d1 = make_domain(1, 1, 1);
    const ExperimentReport r1 = uniformity_experiment(d1, 10000, 3);
    CHECK(r1.stats["p_value"].get<double>() > 1e-3);
    const auto d = make_domain(2, 2, 2);
    const ExperimentReport neg = uniformity_experiment(d, 20000, 4, 0.5);
    CHECK(neg.stats["p_value"].get<double>() < 1e-6);
}

TEST_CASE("coupling order check detects a broken stream") {
    const auto d = make_domain(2, 2, 2);
    const OrderCheck ok = coupling_order_check(d, 0.0, 20, 5, true);
    CHECK(ok.violations == 0);
    CHECK(ok.events > 0);
    const OrderCheck bad = coupling_order_check(d, 0.0, 20, 5, false);
    CHECK(bad.violations > 0);
}

TEST_CASE("reports regenerate from the seed") {
    const ExperimentReport a = concentration_experiment({4, 6}, 6, 0.3, 12);
    const ExperimentReport b = concentration_experiment({4, 6}, 6, 0.3, 12);
    CHECK(to_json(a, false).dump() == to_json(b, false).dump());
    ::setenv("HEXMIX_THREADS", "1", 1);
    const ExperimentReport c = concentration_experiment({4, 6}, 6, 0.3, 12);
    ::unsetenv("HEXMIX_THREADS");
    CHECK(to_json(a, false).dump() == to_json(c, false).dump());
}

TEST_CASE("small-N concentration sanity") {
    const SampleBank bank = cftp_bank(4, 0.0, 20, 1);
    const ConcentrationStats cs = concentration_stats(bank, shape_table(4, 0.3));
    for (double e : cs.sup_error) CHECK(e <= 1.0);
}

TEST_CASE("pinned boundary level lines are never violated") {
    for (int n : {6, 10}) {
        const SandwichStats s = level_line_sandwich(cftp_bank(n, 0.0, 10, 2), 0.4);
        CHECK(s.boundary_lines == 20);
        CHECK(s.violated_boundary_lines == 0);
        CHECK(s.lines == static_cast<std::uint64_t>(10 * n));
    }
}

TEST_CASE("tilted samples follow the tilted shape") {
    const ExperimentReport r = tilted_shape_experiment(12, {0.5}, 40, 6, true);
    CHECK(r.stats["sup_vs_shape_q_q=0.5"].get<double>() < r.stats["sup_vs_shape_0_q=0.5"].get<double>());
}

TEST_CASE("coalescence sweep") {
    const CoalescenceSweep sw = coalescence_sweep({2, 3, 4}, 30, 8, 1e5, 200);
    REQUIRE(sw.medians.size() == 3);
    CHECK(sw.medians[0] < sw.medians[1]);
    CHECK(sw.medians[1] < sw.medians[2]);
    CHECK(sw.exponent_ci.lo <= sw.fit.slope);
    CHECK(sw.fit.slope <= sw.exponent_ci.hi);
}

TEST_CASE("TV bracket at N = 2") {
    const TvBracket tb = tv_bracket(2, 4000, 3);
    CHECK(tb.tmix_top <= tb.tmix_exact + 1e-12);
    CHECK(tb.t_emp_lo <= tb.t_emp_hi);
    CHECK(tb.bracketed);
}
