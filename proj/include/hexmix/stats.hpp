// Statistics used by the verification experiments.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "hexmix/lattice.hpp"

namespace hexmix {

struct ChiSquare {
    double statistic = 0;
    int dof = 0;
    double p_value = 1;
    double min_expected = 0;
};

// Goodness of fit of `counts` to `probs`; throws std::invalid_argument when
// an expected count falls below `min_expected`.
ChiSquare chi_square_gof(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                         double min_expected = 5.0);

// Chi-square test of `samples` against the uniform law on all tilings of d.
ChiSquare uniformity_test(const std::vector<HeightField>& samples, const DomainPtr& d);

struct Interval {
    double lo = 0, hi = 0;
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool disjoint(const Interval& o) const { return hi < o.lo || o.hi < lo; }
};

struct MeanCI {
    double mean = 0;
    double sd = 0;
    Interval ci;
    std::size_t n = 0;
};

// Student-t interval for the mean.
MeanCI mean_ci(const std::vector<double>& xs, double level = 0.95);

double median(std::vector<double> xs);

// Wilson score interval for k successes in n trials.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double level = 0.95);

// Percentile bootstrap: `stat` receives a uniform index generator and must
// resample on its own; returns the central `level` interval and the
// bootstrap replicates.
struct Bootstrap {
    Interval ci;
    std::vector<double> replicates;
};
using IndexDraw = std::function<std::size_t(std::size_t n)>;
Bootstrap bootstrap(const std::function<double(const IndexDraw&)>& stat, int resamples, std::uint64_t seed,
                    double level = 0.95);

// Least squares y = a + b x.
struct LinearFit {
    double intercept = 0, slope = 0, r2 = 0;
};
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace hexmix
