#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hexmix/spectrum.hpp"
#include "support/oracles.hpp"

using namespace hexmix;

TEST_CASE("two-state chain") {
    const ChainSpectrum s = exact_spectrum(make_domain(1, 1, 1), 0.0);
    CHECK(s.states.size() == 2);
    CHECK(s.gap == doctest::Approx(oracle::two_state_gap()).epsilon(1e-12));
    CHECK(std::fabs(tmix_exact(s, 0.25) - oracle::two_state_tmix(0.25)) < 0.01 * oracle::two_state_tmix(0.25));
    for (double t : {0.0, 0.1, 0.5, 1.3}) CHECK(s.tv(t) == doctest::Approx(oracle::two_state_tv(t)).epsilon(1e-10));
    CHECK(tmix_exact(s, 0.4) < tmix_exact(s, 0.25));
    CHECK_THROWS(tmix_exact(s, 0.0));
    CHECK_THROWS(tmix_exact(s, 1.0));
}

TEST_CASE("(2,2,2) generator") {
    for (double q : {0.0, 1.0}) {
        CAPTURE(q);
        const ChainSpectrum s = exact_spectrum(make_domain(2, 2, 2), q);
        CHECK(s.states.size() == 20);
        CHECK(s.row_sum_residual() < 1e-12);
        CHECK(s.stationary_residual() < 1e-12);
        CHECK(s.target_residual() < 1e-12);
        CHECK(s.stationary_vs_target() < 1e-12);
        CHECK(s.detailed_balance_residual() < 1e-12);
        if (q == 0.0)
            for (int i = 0; i < 20; ++i) CHECK(std::fabs(s.target[i] - 0.05) < 1e-12);
        // target proportional to exp((q/N) volume), N = 2
        for (std::size_t i = 1; i < s.states.size(); ++i) {
            const double want = std::exp(q / 2.0 * (volume(s.states[i]) - volume(s.states[0])));
            CHECK(s.target[i] / s.target[0] == doctest::Approx(want).epsilon(1e-12));
        }
        double prev = 2;
        for (int i = 0; i <= 60; ++i) {
            const double tv = s.tv(0.05 * i);
            CHECK(tv <= prev + 1e-14);
            prev = tv;
        }
        CHECK(submultiplicativity_holds(s, 0.25, 1.0 / 16));
        CHECK(s.gap > 0);
    }
}

TEST_CASE("law at time t") {
    const ChainSpectrum s = exact_spectrum(make_domain(2, 1, 1), 0.5);
    const auto p0 = s.law(0, 0.0);
    CHECK(p0[0] == doctest::Approx(1.0));
    const auto pinf = s.law(0, 200.0);
    for (int i = 0; i < pinf.size(); ++i) CHECK(pinf[i] == doctest::Approx(s.target[i]).epsilon(1e-10));
    CHECK(s.law(1, 0.7).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.index_of(s.states[2]) == 2);
}
