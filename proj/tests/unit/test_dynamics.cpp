#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "hexmix/dynamics.hpp"
#include "hexmix/experiments.hpp"
#include "support/oracles.hpp"

using namespace hexmix;

namespace {

ChainConfig chain(const DomainPtr& d, double q = 0.0, std::uint64_t seed = 1) {
    ChainConfig c;
    c.domain = d;
    c.q = q;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("heat bath update rule") {
    const auto d = make_domain(1, 1, 1);
    const auto [lo, hi] = extreme_tilings(d);
    const ChainConfig c = chain(d);
    CHECK(heat_bath_update(lo, {1, 1}, 0.3, c) == hi);
    CHECK(heat_bath_update(hi, {1, 1}, 0.7, c) == lo);
    CHECK(heat_bath_update(lo, {0, 0}, 0.3, c) == lo);

    const auto d2 = make_domain(2, 2, 2);
    const auto [lo2, hi2] = extreme_tilings(d2);
    // (2,1) cannot move in the minimal tiling.
    CHECK(local_bounds(lo2, Vertex{2, 1}).first == local_bounds(lo2, Vertex{2, 1}).second);
    for (double u : {0.01, 0.5, 0.99}) CHECK(heat_bath_update(lo2, {2, 1}, u, chain(d2)) == lo2);

    ChainConfig tilted = chain(d, 2.0);
    CHECK(tilted.p_up() == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
    tilted.scale = 4.0;
    CHECK(tilted.p_up() == doctest::Approx(1.0 / (1.0 + std::exp(-0.5))));
}

TEST_CASE("order preservation on all ordered pairs of (2,2,2)") {
    const auto d = make_domain(2, 2, 2);
    const auto states = enumerate_all(d, 100);
    for (double q : {0.0, 1.0, -3.0}) {
        const ChainConfig c = chain(d, q);
        std::uint64_t checked = 0;
        for (const auto& f : states)
            for (const auto& g : states) {
                if (!f.leq(g)) continue;
                for (int i : d->interior())
                    for (double u : {0.25, 0.75}) {
                        const Vertex z = d->vertex(i);
                        CHECK(heat_bath_update(f, z, u, c).leq(heat_bath_update(g, z, u, c)));
                        ++checked;
                    }
            }
        CHECK(checked > 0);
    }
}

TEST_CASE("run basics") {
    const auto d = make_domain(2, 2, 2);
    const auto [lo, hi] = extreme_tilings(d);
    ChainConfig c = chain(d, 0.0, 11);
    const Trajectory t0 = run(c, lo, 0.0);
    for (const auto& s : t0.snapshots) CHECK(s == lo);

    const std::vector<double> ts = {0.5, 1.0, 2.0, 5.0};
    const Trajectory a = run(c, lo, 5.0, ts), b = run(c, lo, 5.0, ts);
    CHECK(a.events == b.events);
    REQUIRE(a.snapshots.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(a.snapshots[i] == b.snapshots[i]);
    CHECK(a.events > 0);

    const HeightField mid = enumerate_all(d, 100)[9];
    c.floor = mid;
    c.ceiling = mid;
    for (const auto& s : run(c, mid, 10.0, ts).snapshots) CHECK(s == mid);

    ChainConfig bad = chain(d);
    bad.floor = hi;
    bad.ceiling = lo;
    CHECK_THROWS(run(bad, lo, 1.0));
}

TEST_CASE("constraints hold at every snapshot") {
    const auto d = make_domain(3, 3, 3);
    const auto states = cftp_samples(d, 0.0, 2, 5);
    const auto [m, j] = meet_join(states[0], states[1]);
    ChainConfig c = chain(d, 0.0, 3);
    c.floor = m;
    c.ceiling = j;
    std::vector<double> ts;
    for (int i = 0; i <= 200; ++i) ts.push_back(0.1 * i);
    for (const auto& s : run(c, m, 20.0, ts).snapshots) {
        CHECK(is_admissible(s));
        CHECK(m.leq(s));
        CHECK(s.leq(j));
    }
}

TEST_CASE("two-state chain occupation") {
    const auto d = make_domain(1, 1, 1);
    const auto [lo, hi] = extreme_tilings(d);
    std::vector<double> ts;
    for (int i = 0; i < 20000; ++i) ts.push_back(i + 1.0);
    const Trajectory t = run(chain(d, 0.0, 99), lo, 20000.0, ts);
    int up = 0;
    for (const auto& s : t.snapshots) up += s == hi;
    // Samples one time unit apart have correlation e^{-2}.
    const double n = ts.size(), sd = std::sqrt(0.25 / n * (1 + std::exp(-2.0)) / (1 - std::exp(-2.0)));
    CHECK(std::fabs(up / n - 0.5) < 3 * sd);
}

TEST_CASE("grand coupling on (1,1,1)") {
    const auto d = make_domain(1, 1, 1);
    const int reps = 4000;
    double sum = 0;
    for (int r = 0; r < reps; ++r) {
        const CouplingRun cr = grand_coupling(chain(d, 0.0, derive_seed(17, r)), 100.0);
        REQUIRE(cr.coalescence_time.has_value());
        CHECK(cr.top == cr.bottom);
        sum += *cr.coalescence_time;
    }
    const double mean = oracle::two_state_coalescence_mean();
    CHECK(std::fabs(sum / reps - mean) < 3 * mean / std::sqrt(reps));
}

TEST_CASE("grand coupling keeps order and stays coalesced") {
    const auto d = make_domain(3, 3, 3);
    const CouplingRun cr = grand_coupling(chain(d, 0.0, 4), 1e5);
    REQUIRE(cr.coalescence_time.has_value());
    CHECK(cr.order_checks > 0);
    CHECK(cr.top == cr.bottom);
    // Running further from the coalesced state on the same stream cannot split it.
    const CouplingRun longer = grand_coupling(chain(d, 0.0, 4), 2e5);
    CHECK(longer.coalescence_time == cr.coalescence_time);
}

TEST_CASE("CFTP on (1,1,1)") {
    const auto d = make_domain(1, 1, 1);
    const auto [lo, hi] = extreme_tilings(d);
    const int n = 10000;
    const auto samples = cftp_samples(d, 0.0, n, 21);
    int up = 0;
    for (const auto& s : samples) up += s == hi;
    CHECK(std::fabs(up - n / 2.0) < 3 * std::sqrt(n * 0.25));

    const auto d2 = make_domain(2, 2, 2);
    const auto top = extreme_tilings(d2).second;
    int at_top = 0;
    for (const auto& s : cftp_samples(d2, 50.0, 200, 3)) at_top += s == top;
    CHECK(at_top >= 190);
}

TEST_CASE("CFTP is reproducible and respects constraints") {
    const auto d = make_domain(3, 2, 2);
    ChainConfig c = chain(d, 0.0, 8);
    const CftpResult a = cftp_run(c), b = cftp_run(c);
    CHECK(a.sample == b.sample);
    CHECK(a.epochs == b.epochs);
    CHECK(is_admissible(a.sample));
    const auto [lo, hi] = extreme_tilings(d);
    c.floor = a.sample;
    CHECK(a.sample.leq(cftp_sample(c)));
}

TEST_CASE("censored runs") {
    const auto d = make_domain(2, 2, 2);
    const auto [lo, hi] = extreme_tilings(d);
    const ChainConfig c = chain(d, 0.0, 31);
    const std::vector<double> ts = {0.5, 1.5, 3.0};
    SUBCASE("full region matches run") {
        CensorSchedule s;
        s.intervals.push_back({0.0, 1.0, {}, std::nullopt, std::nullopt});
        s.intervals.push_back({1.0, 3.0, std::vector<char>(d->size(), 1), std::nullopt, std::nullopt});
        const Trajectory a = censored_run(c, s, hi, ts), b = run(c, hi, 3.0, ts);
        for (std::size_t i = 0; i < ts.size(); ++i) CHECK(a.snapshots[i] == b.snapshots[i]);
    }
    SUBCASE("empty region freezes the state") {
        CensorSchedule s;
        s.intervals.push_back({0.0, 3.0, std::vector<char>(d->size(), 0), std::nullopt, std::nullopt});
        for (const auto& f : censored_run(c, s, hi, ts).snapshots) CHECK(f == hi);
    }
    SUBCASE("censoring from the top keeps the volume law higher") {
        // Update only x <= 2 for t < 1, then everything.
        std::vector<char> left(d->size(), 0);
        for (int i = 0; i < d->size(); ++i) left[i] = d->vertex(i).x <= 2;
        CensorSchedule s;
        s.intervals.push_back({0.0, 1.0, left, std::nullopt, std::nullopt});
        s.intervals.push_back({1.0, 1.5, {}, std::nullopt, std::nullopt});
        const int reps = 10000;
        std::map<std::int64_t, int> cens, plain;
        for (int r = 0; r < reps; ++r) {
            const ChainConfig cr = chain(d, 0.0, derive_seed(77, r));
            cens[volume(censored_run(cr, s, hi, {1.5}).snapshots[0])]++;
            // independent stream for the uncensored arm
            plain[volume(run(chain(d, 0.0, derive_seed(78, r)), hi, 1.5, {1.5}).snapshots[0])]++;
        }
        // Kolmogorov-Smirnov two-sample allowance at level 1e-3: 1.95 sqrt(2/n).
        const double allow = 1.95 * std::sqrt(2.0 / reps);
        double fc = 0, fp = 0, worst = 0;
        for (std::int64_t v = volume(lo); v <= volume(hi); ++v) {
            fc += cens[v] / static_cast<double>(reps);
            fp += plain[v] / static_cast<double>(reps);
            worst = std::max(worst, fc - fp);
        }
        CHECK(worst < allow);
    }
}
