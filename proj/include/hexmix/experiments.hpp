// Verification experiments tying the samplers to exact enumeration and to
// the limit shape. Every replica seed is derive_seed(master, index), so a
// report is reproducible from (seed, config) regardless of thread count.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "hexmix/dynamics.hpp"
#include "hexmix/report.hpp"
#include "hexmix/spectrum.hpp"
#include "hexmix/stats.hpp"

namespace hexmix {

// Worker count: HEXMIX_THREADS if set, else the hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on worker_count() threads; the first exception
// is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Exact samples of the (q-tilted) (n, n, n) hexagon, one per replica.
struct SampleBank {
    int n = 0;
    double q = 0;
    std::uint64_t seed = 0;
    std::vector<HeightField> samples;
    std::vector<int> epochs;
    double wall_seconds = 0;
};
SampleBank cftp_bank(int n, double q, int replicas, std::uint64_t seed);
// Same on an arbitrary hexagon.
std::vector<HeightField> cftp_samples(const DomainPtr& d, double q, std::size_t count, std::uint64_t seed);

// CFTP on d against the uniform law; `sampler_q` != 0 gives the
// mislabelled negative control.
ExperimentReport uniformity_experiment(const DomainPtr& d, std::size_t samples, std::uint64_t seed,
                                       double sampler_q = 0.0);

// Exhaustive order check over all ordered state pairs of d: one heat-bath
// step at every interior site with U in {0.25, 0.75}, then a coupled run of
// `steps_per_pair` events per pair with U drawn from {0.25, 0.75}. With
// `shared` off the lower chain reads an independent stream.
struct OrderCheck {
    std::uint64_t pairs = 0;
    std::uint64_t events = 0;
    std::uint64_t violations = 0;
};
OrderCheck coupling_order_check(const DomainPtr& d, double q, int steps_per_pair, std::uint64_t seed,
                                bool shared = true);

// Limit shape (q = 0, unit sides) tabulated on the vertices of the (n,n,n)
// hexagon, with the augmented-liquid mask.
struct ShapeTable {
    int n = 0;
    double delta = 0;
    std::vector<double> H;       // limit height at z / n
    std::vector<int> rounded;    // round(n * H)
    std::vector<char> liquid_plus;
};
ShapeTable shape_table(int n, double delta);

struct ConcentrationStats {
    std::vector<double> sup_error;       // per replica
    std::vector<int> frozen_mismatches;  // per replica, outside the augmented liquid region
};
ConcentrationStats concentration_stats(const SampleBank& bank, const ShapeTable& table);

ExperimentReport concentration_experiment(const std::vector<SampleBank>& banks, double delta);
ExperimentReport concentration_experiment(const std::vector<int>& ns, int replicas, double delta, std::uint64_t seed);

// Discrete level line k against the band between U^{h-eps} and U^{h+eps},
// h = (k - 1/2)/N, eps = N^{delta-1}. A bound whose level leaves [0, b] is
// dropped.
struct SandwichStats {
    std::uint64_t lines = 0, violated_lines = 0;
    std::uint64_t points = 0, violated_points = 0;
    std::uint64_t boundary_lines = 0, violated_boundary_lines = 0;  // k = 1 and k = nb
    double min_margin = 0;  // smallest signed distance to a band edge, macroscopic units
};
SandwichStats level_line_sandwich(const SampleBank& bank, double delta);

ExperimentReport level_line_concentration(const std::vector<SampleBank>& banks, double delta);
ExperimentReport level_line_concentration(const std::vector<int>& ns, int replicas, double delta, std::uint64_t seed);

// Tilted CFTP on (n,n,n) over a q grid: mean volume with confidence
// intervals, and the sup distance of the mean height from the q-shape and
// from the q = 0 shape.
ExperimentReport tilted_shape_experiment(int n, const std::vector<double>& qs, int samples, std::uint64_t seed,
                                         bool compare_shapes = true);

// Forward grand-coupling coalescence times on (n,n,n) for each n.
struct CoalescenceSweep {
    std::vector<int> ns;
    std::vector<std::vector<double>> times;  // coalesced replicas only
    std::vector<int> censored;               // replicas that hit the cap
    std::vector<double> medians;
    LinearFit fit;                           // log median vs log n
    Interval exponent_ci;
    std::uint64_t order_checks = 0;
};
CoalescenceSweep coalescence_sweep(const std::vector<int>& ns, int replicas, std::uint64_t seed, double cap,
                                   int bootstrap_resamples = 1000);

// Empirical TV from the top tiling over `trajectories` runs against the
// exact curve from the spectrum.
struct TvBracket {
    double tmix_exact = 0;        // worst-case start
    double tmix_top = 0;          // exact crossing from the top tiling
    double eps = 0.25;
    double stat_error = 0;        // allowance on the empirical TV
    double t_emp_lo = 0, t_emp_hi = 0;  // empirical crossings of eps + err and eps - err
    double max_curve_gap = 0;     // max |empirical - exact| over the time grid
    bool bracketed = false;
    std::vector<double> times, tv_emp, tv_exact;
};
TvBracket tv_bracket(int n, int trajectories, std::uint64_t seed, double eps = 0.25);

ExperimentReport coalescence_scaling(const std::vector<int>& ns, int replicas, std::uint64_t seed,
                                     int tv_trajectories = 10000);

}  // namespace hexmix
