// Continuous-time single-flip Glauber dynamics on hexagon height fields.
//
// Every active interior site carries a rate-2 clock. When it rings the site
// is resampled by heat bath: with local range [m, M] (neighbours, floor and
// ceiling) the new height is M if U < p_up and m otherwise, where
// p_up = e^{q/N} / (1 + e^{q/N}). All replicas of a coupling read the same
// event stream.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hexmix/lattice.hpp"
#include "hexmix/rng.hpp"

namespace hexmix {

struct ChainConfig {
    DomainPtr domain;
    double q = 0.0;
    double scale = 0.0;  // nominal N in e^{q/N}; 0 means na
    std::optional<HeightField> floor;
    std::optional<HeightField> ceiling;
    std::vector<char> active;  // per-vertex mask; empty means every interior vertex
    std::uint64_t seed = 1;

    double effective_scale() const;
    double p_up() const;
    std::vector<int> active_sites() const;
    // Throws std::invalid_argument when floor/ceiling are inconsistent.
    void validate() const;
    bool within_constraints(const HeightField& f) const;
};

HeightField heat_bath_update(const HeightField& f, Vertex z, double u, const ChainConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<HeightField> snapshots;
    std::uint64_t events = 0;
};

// Runs on [0, T] with stream 0 of cfg.seed. Snapshots are taken at each
// requested time in [0, T] (sorted); with none requested, only the initial
// and final states are returned.
Trajectory run(const ChainConfig& cfg, const HeightField& init, double T,
               const std::vector<double>& snapshot_times = {});

struct CouplingRun {
    HeightField top;
    HeightField bottom;
    std::optional<double> coalescence_time;
    std::uint64_t events = 0;
    std::uint64_t order_checks = 0;
};

// Evolves the extreme admissible states (clipped to floor/ceiling) under one
// stream until they meet or time T passes.
CouplingRun grand_coupling(const ChainConfig& cfg, double T);

struct CftpResult {
    HeightField sample;
    int epochs = 0;  // number of doublings used
    std::uint64_t events = 0;
};

// Exact sample from the stationary law by coupling from the past. Epoch j
// covers [-2^j, -2^(j-1)) (epoch 0 is [-1, 0)) and always reads stream j+1.
CftpResult cftp_run(const ChainConfig& cfg, int max_epochs = 30);
HeightField cftp_sample(const ChainConfig& cfg, int max_epochs = 30);

struct CensorInterval {
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<char> region;  // empty means no censoring on this interval
    std::optional<HeightField> floor;
    std::optional<HeightField> ceiling;
};

struct CensorSchedule {
    std::vector<CensorInterval> intervals;
};

// Same stream as run(); events outside the current region are ignored and
// interval constraints are combined with the chain's own.
Trajectory censored_run(const ChainConfig& cfg, const CensorSchedule& sched, const HeightField& init,
                        const std::vector<double>& snapshot_times = {});

}  // namespace hexmix
