// Exact generator analysis for fully enumerated hexagons.
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <map>
#include <vector>

#include "hexmix/lattice.hpp"

namespace hexmix {

struct ChainSpectrum {
    DomainPtr domain;
    double q = 0;
    double scale = 0;
    std::vector<HeightField> states;
    Eigen::MatrixXd generator;   // rows sum to zero
    Eigen::VectorXd stationary;  // null vector of the generator, normalised
    Eigen::VectorXd target;      // proportional to exp((q/N) * volume)
    Eigen::VectorXd eigenvalues; // of the symmetrised generator, ascending
    Eigen::MatrixXd eigenvectors;
    double gap = 0;

    std::size_t index_of(const HeightField& f) const;

    // Worst-case total variation distance to `target` at time t.
    double tv(double t) const;
    // Total variation distance at time t starting from state i.
    double tv_from(std::size_t i, double t) const;
    // Law at time t starting from state i.
    Eigen::VectorXd law(std::size_t i, double t) const;

    double row_sum_residual() const;
    double stationary_residual() const;        // max |pi Q| for pi = stationary
    double target_residual() const;            // max |pi Q| for pi = target
    double stationary_vs_target() const;       // max |stationary - target|
    double detailed_balance_residual() const;  // max |pi_f Q_fg - pi_g Q_gf|

private:
    std::map<std::vector<int>, std::size_t> index_;
    friend ChainSpectrum exact_spectrum(const DomainPtr&, double, double, std::size_t);
};

ChainSpectrum exact_spectrum(const DomainPtr& d, double q, double scale = 0.0, std::size_t max_states = 10000);

// First t with tv(t) <= eps; throws for eps outside (0, 1).
double tmix_exact(const ChainSpectrum& s, double eps);

// Checks t_mix(eps2) <= t_mix(eps) * ceil(|log eps2| / |log 2 eps|).
bool submultiplicativity_holds(const ChainSpectrum& s, double eps, double eps2);

}  // namespace hexmix
