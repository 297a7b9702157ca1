#include "hexmix/dynamics.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <stdexcept>

namespace hexmix {

namespace {

// Heat-bath kernel over raw arrays; floor/ceiling may be null. Sites are
// addressed by slot so the neighbour lookups stay in one flat table.
struct Kernel {
    std::vector<std::array<int, 7>> table;  // site, then L R D U DL UR
    const int* floor = nullptr;
    const int* ceil = nullptr;
    double p_up = 0.5;

    Kernel(const HexDomain& d, const std::vector<int>& sites, const int* fl, const int* ce, double pu)
        : floor(fl), ceil(ce), p_up(pu) {
        table.reserve(sites.size());
        for (int z : sites) {
            if (d.is_boundary(z)) throw std::invalid_argument("boundary vertex cannot be updated");
            const auto& n = d.neighbours(z);
            table.push_back({z, n[kLeft], n[kRight], n[kDown], n[kUp], n[kDownLeft], n[kUpRight]});
        }
    }

    // Returns true when the height at the slot's site changed.
    bool update(int* h, int slot, double u) const {
        const auto& t = table[slot];
        const int hl = h[t[1]], hr = h[t[2]], hd = h[t[3]], hu = h[t[4]], hdl = h[t[5]], hur = h[t[6]];
        int lo = std::max({hl - 1, hr, hd, hu - 1, hdl, hur - 1});
        int hi = std::min({hl, hr + 1, hd + 1, hu, hdl + 1, hur});
        const int i = t[0];
        if (floor) lo = std::max(lo, floor[i]);
        if (ceil) hi = std::min(hi, ceil[i]);
        if (lo >= hi) return false;
        const int nv = u < p_up ? hi : lo;
        if (nv == h[i]) return false;
        h[i] = nv;
        return true;
    }

    // Branch-free variant for unconstrained chains; `up` is the u < p_up bit.
    void update_bit(int* h, int slot, bool up) const {
        const auto& t = table[slot];
        const int hl = h[t[1]], hr = h[t[2]], hd = h[t[3]], hu = h[t[4]], hdl = h[t[5]], hur = h[t[6]];
        const int lo = std::max(std::max(std::max(hl - 1, hr), std::max(hd, hu - 1)), std::max(hdl, hur - 1));
        const int hi = std::min(std::min(std::min(hl, hr + 1), std::min(hd + 1, hu)), std::min(hdl + 1, hur));
        const int i = t[0];
        const int nv = up ? hi : lo;
        h[i] = lo < hi ? nv : h[i];
    }
};

Kernel make_kernel(const ChainConfig& cfg, const std::vector<int>& sites) {
    return Kernel(*cfg.domain, sites, cfg.floor ? cfg.floor->values().data() : nullptr,
                  cfg.ceiling ? cfg.ceiling->values().data() : nullptr, cfg.p_up());
}

std::pair<HeightField, HeightField> coupling_extremes(const ChainConfig& cfg) {
    auto [lo, hi] = extreme_tilings(cfg.domain);
    if (cfg.floor) lo = *cfg.floor;
    if (cfg.ceiling) hi = *cfg.ceiling;
    return {std::move(lo), std::move(hi)};
}

void require_domain(const ChainConfig& cfg, const HeightField& f) {
    if (!(f.domain() == *cfg.domain)) throw std::invalid_argument("state lives on a different domain");
}

void check_snapshot_times(const std::vector<double>& ts, double T) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < 0 || ts[i] > T) throw std::invalid_argument("snapshot time outside [0, T]");
        if (i && ts[i] < ts[i - 1]) throw std::invalid_argument("snapshot times must be sorted");
    }
}

}  // namespace

double ChainConfig::effective_scale() const {
    if (scale > 0) return scale;
    if (!domain) throw std::invalid_argument("chain has no domain");
    return domain->na();
}

double ChainConfig::p_up() const {
    const double s = q / effective_scale();
    return 1.0 / (1.0 + std::exp(-s));
}

std::vector<int> ChainConfig::active_sites() const {
    if (!active.empty() && static_cast<int>(active.size()) != domain->size())
        throw std::invalid_argument("active mask has wrong size");
    std::vector<int> out;
    for (int i : domain->interior())
        if (active.empty() || active[i]) out.push_back(i);
    return out;
}

void ChainConfig::validate() const {
    if (!domain) throw std::invalid_argument("chain has no domain");
    if (floor) {
        require_domain(*this, *floor);
        if (!is_admissible(*floor)) throw std::invalid_argument("floor is not an admissible field");
    }
    if (ceiling) {
        require_domain(*this, *ceiling);
        if (!is_admissible(*ceiling)) throw std::invalid_argument("ceiling is not an admissible field");
    }
    if (floor && ceiling && !floor->leq(*ceiling)) throw std::invalid_argument("floor exceeds ceiling");
    if (!active.empty() && static_cast<int>(active.size()) != domain->size())
        throw std::invalid_argument("active mask has wrong size");
}

bool ChainConfig::within_constraints(const HeightField& f) const {
    if (floor && !floor->leq(f)) return false;
    if (ceiling && !f.leq(*ceiling)) return false;
    return true;
}

HeightField heat_bath_update(const HeightField& f, Vertex z, double u, const ChainConfig& cfg) {
    require_domain(cfg, f);
    const int i = f.domain().index(z.x, z.y);
    if (i < 0) throw std::out_of_range("vertex outside hexagon");
    HeightField g = f;
    if (f.domain().is_boundary(i)) return g;
    if (!cfg.active.empty() && !cfg.active.at(i)) throw std::invalid_argument("vertex outside the active region");
    make_kernel(cfg, {i}).update(g.values().data(), 0, u);
    return g;
}

Trajectory run(const ChainConfig& cfg, const HeightField& init, double T, const std::vector<double>& snapshot_times) {
    CensorSchedule trivial;
    trivial.intervals.push_back({0.0, T, {}, std::nullopt, std::nullopt});
    return censored_run(cfg, trivial, init, snapshot_times);
}

CouplingRun grand_coupling(const ChainConfig& cfg, double T) {
    cfg.validate();
    auto [bottom, top] = coupling_extremes(cfg);
    const std::vector<int> sites = cfg.active_sites();
    const Kernel k = make_kernel(cfg, sites);
    EventStream es(cfg.seed, 0, static_cast<int>(sites.size()), 2.0 * sites.size(), 0.0, T);

    CouplingRun out;
    int* ht = top.values().data();
    int* hb = bottom.values().data();
    long diff = 0;
    for (int i = 0; i < top.domain().size(); ++i) diff += ht[i] != hb[i];
    if (diff == 0) out.coalescence_time = 0.0;
    Event e;
    while (!out.coalescence_time && es.next(e)) {
        const int z = sites[e.slot];
        const bool was = ht[z] != hb[z];
        k.update(ht, e.slot, e.u);
        k.update(hb, e.slot, e.u);
        ++out.order_checks;
        if (hb[z] > ht[z]) throw std::logic_error("monotone coupling violated");
        diff += static_cast<long>(ht[z] != hb[z]) - static_cast<long>(was);
        if (diff == 0) out.coalescence_time = e.t;
    }
    out.events = es.count();
    out.top = std::move(top);
    out.bottom = std::move(bottom);
    return out;
}

CftpResult cftp_run(const ChainConfig& cfg, int max_epochs) {
    cfg.validate();
    const auto [lo0, hi0] = coupling_extremes(cfg);
    const std::vector<int> sites = cfg.active_sites();
    const Kernel k = make_kernel(cfg, sites);
    const int n = static_cast<int>(sites.size());
    const double rate = 2.0 * n;

    // Each epoch's events, packed as slot << 1 | (u < p_up), generated once.
    std::vector<std::vector<std::uint32_t>> cache;
    CftpResult res;
    for (int J = 0; J <= max_epochs; ++J) {
        {
            const double t0 = J == 0 ? -1.0 : -std::ldexp(1.0, J);
            const double t1 = J == 0 ? 0.0 : -std::ldexp(1.0, J - 1);
            EventStream es(cfg.seed, static_cast<std::uint32_t>(J + 1), n, rate, t0, t1);
            std::vector<std::uint32_t> ev;
            ev.reserve(static_cast<std::size_t>(rate * (t1 - t0) * 1.01) + 16);
            Event e;
            while (es.next(e)) ev.push_back(static_cast<std::uint32_t>(e.slot) << 1 | (e.u < k.p_up ? 1u : 0u));
            cache.push_back(std::move(ev));
        }
        std::vector<int> ht = hi0.values(), hb = lo0.values();
        const bool plain = !cfg.floor && !cfg.ceiling;
        // Once the two chains agree they see the same updates, so one copy is enough.
        bool merged = false;
        for (int j = J; j >= 0; --j) {
            if (plain && merged) {
                for (const std::uint32_t w : cache[j]) k.update_bit(ht.data(), static_cast<int>(w >> 1), w & 1u);
            } else if (plain) {
                for (const std::uint32_t w : cache[j]) {
                    const int slot = static_cast<int>(w >> 1);
                    k.update_bit(ht.data(), slot, w & 1u);
                    k.update_bit(hb.data(), slot, w & 1u);
                }
            } else {
                for (const std::uint32_t w : cache[j]) {
                    const int slot = static_cast<int>(w >> 1);
                    const double u = (w & 1u) ? 0.0 : 1.0;
                    k.update(ht.data(), slot, u);
                    if (!merged) k.update(hb.data(), slot, u);
                }
            }
            res.events += cache[j].size();
            if (!merged) merged = ht == hb;
        }
        if (merged) {
            res.sample = HeightField(cfg.domain, std::move(ht));
            res.epochs = J;
            return res;
        }
    }
    throw std::runtime_error("coupling from the past did not coalesce within the epoch cap");
}

HeightField cftp_sample(const ChainConfig& cfg, int max_epochs) { return cftp_run(cfg, max_epochs).sample; }

Trajectory censored_run(const ChainConfig& cfg, const CensorSchedule& sched, const HeightField& init,
                        const std::vector<double>& snapshot_times) {
    cfg.validate();
    require_domain(cfg, init);
    if (sched.intervals.empty()) throw std::invalid_argument("empty censoring schedule");
    if (sched.intervals.front().t0 != 0.0) throw std::invalid_argument("schedule must start at time 0");
    for (std::size_t i = 0; i < sched.intervals.size(); ++i) {
        const auto& iv = sched.intervals[i];
        if (!(iv.t1 >= iv.t0)) throw std::invalid_argument("schedule interval has negative length");
        if (i && iv.t0 != sched.intervals[i - 1].t1) throw std::invalid_argument("schedule has a gap or overlap");
        if (!iv.region.empty() && static_cast<int>(iv.region.size()) != cfg.domain->size())
            throw std::invalid_argument("censoring region has wrong size");
        if (iv.floor) require_domain(cfg, *iv.floor);
        if (iv.ceiling) require_domain(cfg, *iv.ceiling);
    }
    const double T = sched.intervals.back().t1;
    check_snapshot_times(snapshot_times, T);
    if (!is_admissible(init)) throw std::invalid_argument("initial state is not admissible");
    if (!cfg.within_constraints(init)) throw std::invalid_argument("initial state violates constraints");

    const std::vector<int> sites = cfg.active_sites();
    EventStream es(cfg.seed, 0, static_cast<int>(sites.size()), 2.0 * sites.size(), 0.0, T);
    const int nv = cfg.domain->size();

    Trajectory out;
    std::vector<int> h = init.values();
    std::vector<double> ts = snapshot_times;
    if (ts.empty()) ts = {0.0, T};
    std::size_t next_snap = 0;
    auto snap_until = [&](double t) {
        while (next_snap < ts.size() && ts[next_snap] < t) {
            out.times.push_back(ts[next_snap]);
            out.snapshots.emplace_back(cfg.domain, h);
            ++next_snap;
        }
    };

    Event e;
    bool pending = es.next(e);
    for (const auto& iv : sched.intervals) {
        std::vector<int> lo(nv, INT_MIN), hi(nv, INT_MAX);
        const bool has_lo = cfg.floor || iv.floor, has_hi = cfg.ceiling || iv.ceiling;
        for (int i = 0; i < nv; ++i) {
            if (cfg.floor) lo[i] = std::max(lo[i], (*cfg.floor)[i]);
            if (iv.floor) lo[i] = std::max(lo[i], (*iv.floor)[i]);
            if (cfg.ceiling) hi[i] = std::min(hi[i], (*cfg.ceiling)[i]);
            if (iv.ceiling) hi[i] = std::min(hi[i], (*iv.ceiling)[i]);
            if (h[i] < lo[i] || h[i] > hi[i])
                throw std::invalid_argument("state violates the constraints of a censoring interval");
        }
        const Kernel k(*cfg.domain, sites, has_lo ? lo.data() : nullptr, has_hi ? hi.data() : nullptr, cfg.p_up());
        const bool last = &iv == &sched.intervals.back();
        while (pending && (e.t < iv.t1 || last)) {
            snap_until(e.t);
            const int z = sites[e.slot];
            if (iv.region.empty() || iv.region[z]) k.update(h.data(), e.slot, e.u);
            pending = es.next(e);
        }
    }
    snap_until(T + 1.0);
    out.events = es.count();
    return out;
}

}  // namespace hexmix
