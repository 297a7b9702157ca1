#include "hexmix/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "hexmix/shape.hpp"

namespace hexmix {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::uint64_t bank_seed(std::uint64_t master, int n, double q) {
    const auto qbits = static_cast<std::uint64_t>(std::llround(q * 1e6));
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(n)), qbits);
}

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

std::string suffix(int n) { return "_N" + std::to_string(n); }

}  // namespace

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HEXMIX_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = static_cast<unsigned>(v);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || stop) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(mu);
                    if (!first) first = std::current_exception();
                    stop = true;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

std::vector<HeightField> cftp_samples(const DomainPtr& d, double q, std::size_t count, std::uint64_t seed) {
    std::vector<HeightField> out(count);
    parallel_for(count, [&](std::size_t i) {
        ChainConfig cfg;
        cfg.domain = d;
        cfg.q = q;
        cfg.seed = derive_seed(seed, i);
        out[i] = cftp_sample(cfg);
    });
    return out;
}

SampleBank cftp_bank(int n, double q, int replicas, std::uint64_t seed) {
    const auto t0 = Clock::now();
    SampleBank b;
    b.n = n;
    b.q = q;
    b.seed = bank_seed(seed, n, q);
    b.samples.resize(replicas);
    b.epochs.resize(replicas);
    const DomainPtr d = make_domain(n, n, n);
    parallel_for(replicas, [&](std::size_t i) {
        ChainConfig cfg;
        cfg.domain = d;
        cfg.q = q;
        cfg.seed = derive_seed(b.seed, i);
        CftpResult r = cftp_run(cfg);
        b.samples[i] = std::move(r.sample);
        b.epochs[i] = r.epochs;
    });
    b.wall_seconds = seconds_since(t0);
    return b;
}

ExperimentReport uniformity_experiment(const DomainPtr& d, std::size_t samples, std::uint64_t seed,
                                       double sampler_q) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = sampler_q == 0.0 ? "uniformity" : "uniformity_negative_control";
    r.config = {{"sides", {d->na(), d->nb(), d->nc()}}, {"samples", samples}, {"sampler_q", sampler_q}};
    r.seeds = {seed};
    const auto xs = cftp_samples(d, sampler_q, samples, seed);
    const ChiSquare c = uniformity_test(xs, d);
    r.stats["chi_square"] = c.statistic;
    r.stats["dof"] = c.dof;
    r.stats["p_value"] = c.p_value;
    r.stats["min_expected"] = c.min_expected;
    if (sampler_q == 0.0) r.verdict("p > 1e-3", c.p_value > 1e-3);
    else r.verdict("p < 1e-6", c.p_value < 1e-6);
    r.wall_seconds = seconds_since(t0);
    return r;
}

OrderCheck coupling_order_check(const DomainPtr& d, double q, int steps_per_pair, std::uint64_t seed, bool shared) {
    const auto states = enumerate_all(d, 5000);
    ChainConfig cfg;
    cfg.domain = d;
    cfg.q = q;
    const std::vector<int>& interior = d->interior();
    const int m = static_cast<int>(interior.size());
    OrderCheck oc;
    std::uint64_t pair_index = 0;
    for (const auto& lo : states) {
        for (const auto& hi : states) {
            if (lo == hi || !lo.leq(hi)) continue;
            ++oc.pairs;
            for (int i : interior) {
                for (double u : {0.25, 0.75}) {
                    const Vertex z = d->vertex(i);
                    const HeightField a = heat_bath_update(lo, z, u, cfg);
                    const HeightField b = heat_bath_update(hi, z, u, cfg);
                    ++oc.events;
                    if (!a.leq(b)) ++oc.violations;
                }
            }
            const std::uint64_t s = derive_seed(seed, pair_index++);
            EventStream upper(s, 0, m, 2.0 * m, 0.0, std::numeric_limits<double>::infinity());
            EventStream lower(s, shared ? 0u : 1u, m, 2.0 * m, 0.0, std::numeric_limits<double>::infinity());
            HeightField a = lo, b = hi;
            Event eu, el;
            for (int k = 0; k < steps_per_pair; ++k) {
                upper.next(eu);
                lower.next(el);
                const Vertex zu = d->vertex(interior[eu.slot]), zl = d->vertex(interior[el.slot]);
                b = heat_bath_update(b, zu, eu.u < 0.5 ? 0.25 : 0.75, cfg);
                a = heat_bath_update(a, zl, el.u < 0.5 ? 0.25 : 0.75, cfg);
                ++oc.events;
                if (!a.leq(b)) {
                    ++oc.violations;
                    // Restart from the pair so later events test ordered inputs.
                    a = lo;
                    b = hi;
                }
            }
        }
    }
    return oc;
}

ShapeTable shape_table(int n, double delta) {
    const DomainPtr d = make_domain(n, n, n);
    const ShapeParams p(0.0, 1.0, 1.0, 1.0);
    ShapeTable t;
    t.n = n;
    t.delta = delta;
    t.H.resize(d->size());
    t.rounded.resize(d->size());
    t.liquid_plus.resize(d->size());
    parallel_for(d->size(), [&](std::size_t i) {
        const Vertex v = d->vertex(static_cast<int>(i));
        const double x = static_cast<double>(v.x) / n, y = static_cast<double>(v.y) / n;
        t.H[i] = d->is_boundary(static_cast<int>(i)) ? static_cast<double>(d->boundary_height(v.x, v.y)) / n
                                                     : height(x, y, p);
        t.rounded[i] = static_cast<int>(std::lround(n * t.H[i]));
        t.liquid_plus[i] = augmented_liquid(x, y, p, n, delta) ? 1 : 0;
    });
    return t;
}

ConcentrationStats concentration_stats(const SampleBank& bank, const ShapeTable& table) {
    if (bank.n != table.n) throw std::invalid_argument("sample bank and shape table sizes differ");
    if (bank.q != 0.0) throw std::invalid_argument("concentration is measured against the q = 0 shape");
    ConcentrationStats cs;
    for (const auto& f : bank.samples) {
        double sup = 0;
        int mism = 0;
        for (int i = 0; i < f.domain().size(); ++i) {
            sup = std::max(sup, std::fabs(static_cast<double>(f[i]) / bank.n - table.H[i]));
            if (!table.liquid_plus[i] && f[i] != table.rounded[i]) ++mism;
        }
        cs.sup_error.push_back(sup);
        cs.frozen_mismatches.push_back(mism);
    }
    return cs;
}

ExperimentReport concentration_experiment(const std::vector<SampleBank>& banks, double delta) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = "concentration";
    std::vector<int> ns;
    for (const auto& b : banks) {
        ns.push_back(b.n);
        r.seeds.push_back(b.seed);
    }
    r.config = {{"ns", ns}, {"replicas", banks.empty() ? 0 : banks[0].samples.size()}, {"delta", delta}, {"q", 0.0}};
    r.columns = {"N", "replica", "sup_error", "frozen_mismatches"};
    std::vector<double> medians;
    double last_fraction = 0;
    double sampling = 0;
    for (const auto& b : banks) {
        const ShapeTable t = shape_table(b.n, delta);
        const ConcentrationStats cs = concentration_stats(b, t);
        const double med = median(cs.sup_error);
        medians.push_back(med);
        std::uint64_t clean = 0;
        int liquid_plus = 0;
        for (char c : t.liquid_plus) liquid_plus += c;
        for (int m : cs.frozen_mismatches) clean += m == 0;
        last_fraction = static_cast<double>(clean) / b.samples.size();
        const Interval ci = wilson_interval(clean, b.samples.size());
        r.stats["median_sup_error" + suffix(b.n)] = med;
        r.stats["max_sup_error" + suffix(b.n)] = *std::max_element(cs.sup_error.begin(), cs.sup_error.end());
        r.stats["frozen_clean_fraction" + suffix(b.n)] = last_fraction;
        r.stats["frozen_clean_ci" + suffix(b.n)] = {ci.lo, ci.hi};
        r.stats["vertices_outside_liquid_plus" + suffix(b.n)] = static_cast<int>(t.liquid_plus.size()) - liquid_plus;
        for (std::size_t i = 0; i < cs.sup_error.size(); ++i)
            r.rows.push_back({static_cast<double>(b.n), static_cast<double>(i), cs.sup_error[i],
                              static_cast<double>(cs.frozen_mismatches[i])});
        sampling += b.wall_seconds;
    }
    r.verdict("median sup error strictly decreasing in N", medians.size() >= 2 && strictly_decreasing(medians));
    r.verdict("frozen fidelity >= 95% at largest N", last_fraction >= 0.95);
    r.wall_seconds = seconds_since(t0) + sampling;
    return r;
}

ExperimentReport concentration_experiment(const std::vector<int>& ns, int replicas, double delta, std::uint64_t seed) {
    std::vector<SampleBank> banks;
    for (int n : ns) banks.push_back(cftp_bank(n, 0.0, replicas, seed));
    return concentration_experiment(banks, delta);
}

SandwichStats level_line_sandwich(const SampleBank& bank, double delta) {
    if (bank.q != 0.0) throw std::invalid_argument("level lines are compared with the q = 0 shape");
    const int n = bank.n;
    const ShapeParams p(0.0, 1.0, 1.0, 1.0);
    const ArcticGeometry g = arctic_tangency(p);
    const double eps = std::pow(static_cast<double>(n), delta - 1.0);
    const int cols = 2 * n + 1;
    const double none_lo = -std::numeric_limits<double>::infinity(), none_hi = std::numeric_limits<double>::infinity();
    // lower[k][x], upper[k][x] in macroscopic units.
    std::vector<std::vector<double>> lower(n + 1, std::vector<double>(cols, none_lo));
    std::vector<std::vector<double>> upper(n + 1, std::vector<double>(cols, none_hi));
    parallel_for(static_cast<std::size_t>(n) * cols, [&](std::size_t job) {
        const int k = 1 + static_cast<int>(job / cols), x = static_cast<int>(job % cols);
        const double h = (k - 0.5) / n, X = static_cast<double>(x) / n;
        if (h - eps >= 0.0) lower[k][x] = level_line_U(h - eps, X, p, g);
        if (h + eps <= p.b) upper[k][x] = level_line_U(h + eps, X, p, g);
    });
    const double tol = 1e-9;
    SandwichStats st;
    st.min_margin = std::numeric_limits<double>::infinity();
    for (const auto& f : bank.samples) {
        for (int k = 1; k <= n; ++k) {
            const LevelLine line = extract_level_line(f, k);
            const std::vector<int> ys = line.ordinates();
            bool bad = false;
            for (std::size_t j = 0; j < ys.size(); ++j) {
                const int x = line.x0 + static_cast<int>(j);
                const double Y = (ys[j] + 0.5) / n;
                const bool v = Y < lower[k][x] - tol || Y > upper[k][x] + tol;
                st.min_margin = std::min({st.min_margin, Y - lower[k][x], upper[k][x] - Y});
                ++st.points;
                st.violated_points += v;
                bad = bad || v;
            }
            ++st.lines;
            st.violated_lines += bad;
            if (k == 1 || k == n) {
                ++st.boundary_lines;
                st.violated_boundary_lines += bad;
            }
        }
    }
    return st;
}

ExperimentReport level_line_concentration(const std::vector<SampleBank>& banks, double delta) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = "level_line_sandwich";
    std::vector<int> ns;
    for (const auto& b : banks) {
        ns.push_back(b.n);
        r.seeds.push_back(b.seed);
    }
    r.config = {{"ns", ns}, {"replicas", banks.empty() ? 0 : banks[0].samples.size()}, {"delta", delta}, {"q", 0.0}};
    r.columns = {"N", "lines", "violated_lines", "points", "violated_points"};
    std::vector<double> fractions;
    double sampling = 0;
    for (const auto& b : banks) {
        const SandwichStats s = level_line_sandwich(b, delta);
        const double frac = static_cast<double>(s.violated_lines) / s.lines;
        fractions.push_back(frac);
        const Interval ci = wilson_interval(s.violated_lines, s.lines);
        r.stats["violation_fraction" + suffix(b.n)] = frac;
        r.stats["violation_ci" + suffix(b.n)] = {ci.lo, ci.hi};
        r.stats["point_violation_fraction" + suffix(b.n)] = static_cast<double>(s.violated_points) / s.points;
        r.stats["boundary_line_violations" + suffix(b.n)] = s.violated_boundary_lines;
        r.stats["min_band_margin" + suffix(b.n)] = s.min_margin;
        r.rows.push_back({static_cast<double>(b.n), static_cast<double>(s.lines), static_cast<double>(s.violated_lines),
                          static_cast<double>(s.points), static_cast<double>(s.violated_points)});
        sampling += b.wall_seconds;
    }
    r.verdict("violation fraction < 5% at largest N", !fractions.empty() && fractions.back() < 0.05);
    bool nonincreasing = fractions.size() >= 2;
    for (std::size_t i = 1; i < fractions.size(); ++i) nonincreasing = nonincreasing && fractions[i] <= fractions[i - 1];
    r.verdict("violation fraction non-increasing in N", nonincreasing);
    r.notes.push_back("line k is the interface between heights k-1 and k, compared at level (k - 1/2)/N");
    r.wall_seconds = seconds_since(t0) + sampling;
    return r;
}

ExperimentReport level_line_concentration(const std::vector<int>& ns, int replicas, double delta, std::uint64_t seed) {
    std::vector<SampleBank> banks;
    for (int n : ns) banks.push_back(cftp_bank(n, 0.0, replicas, seed));
    return level_line_concentration(banks, delta);
}

ExperimentReport tilted_shape_experiment(int n, const std::vector<double>& qs, int samples, std::uint64_t seed,
                                         bool compare_shapes) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = "tilted_shape";
    r.config = {{"n", n}, {"qs", qs}, {"samples", samples}, {"compare_shapes", compare_shapes}};
    r.columns = {"q", "replica", "volume"};
    const DomainPtr d = make_domain(n, n, n);
    std::vector<MeanCI> cis;
    std::vector<double> means;
    bool fits_better = true;
    for (double q : qs) {
        const std::uint64_t s = bank_seed(seed, n, q);
        r.seeds.push_back(s);
        const auto xs = cftp_samples(d, q, samples, s);
        std::vector<double> vols;
        std::vector<double> mean_h(d->size(), 0.0);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            vols.push_back(static_cast<double>(volume(xs[i])));
            r.rows.push_back({q, static_cast<double>(i), vols.back()});
            for (int v = 0; v < d->size(); ++v) mean_h[v] += static_cast<double>(xs[i][v]) / xs.size();
        }
        const MeanCI m = mean_ci(vols);
        cis.push_back(m);
        means.push_back(m.mean);
        const std::string key = "q=" + nlohmann::json(q).dump();
        r.stats["mean_volume_" + key] = m.mean;
        r.stats["volume_ci_" + key] = {m.ci.lo, m.ci.hi};
        if (compare_shapes) {
            const ShapeParams pq(q, 1, 1, 1), p0(0.0, 1, 1, 1);
            double sup_q = 0, sup_0 = 0;
            for (int v = 0; v < d->size(); ++v) {
                const Vertex z = d->vertex(v);
                const double x = static_cast<double>(z.x) / n, y = static_cast<double>(z.y) / n;
                const double mh = mean_h[v] / n;
                sup_q = std::max(sup_q, std::fabs(mh - height(x, y, pq)));
                sup_0 = std::max(sup_0, std::fabs(mh - height(x, y, p0)));
            }
            r.stats["sup_vs_shape_q_" + key] = sup_q;
            r.stats["sup_vs_shape_0_" + key] = sup_0;
            if (q != 0.0 && !(sup_q < sup_0)) fits_better = false;
        }
    }
    bool disjoint = true;
    for (std::size_t i = 1; i < cis.size(); ++i) disjoint = disjoint && cis[i - 1].ci.hi < cis[i].ci.lo;
    std::vector<double> sorted_qs = qs;
    std::sort(sorted_qs.begin(), sorted_qs.end());
    if (sorted_qs != qs) throw std::invalid_argument("q grid must be increasing");
    r.verdict("mean volume strictly increasing in q", strictly_increasing(means));
    r.verdict("consecutive 95% intervals disjoint", disjoint);
    if (compare_shapes) r.verdict("tilted shape fits better than the untilted one", fits_better);
    r.wall_seconds = seconds_since(t0);
    return r;
}

CoalescenceSweep coalescence_sweep(const std::vector<int>& ns, int replicas, std::uint64_t seed, double cap,
                                   int bootstrap_resamples) {
    CoalescenceSweep sw;
    sw.ns = ns;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> all;  // censored as +inf
    for (int n : ns) {
        const DomainPtr d = make_domain(n, n, n);
        const std::uint64_t s = bank_seed(seed, n, 0.0);
        std::vector<double> t(replicas, inf);
        std::vector<std::uint64_t> checks(replicas, 0);
        parallel_for(replicas, [&](std::size_t i) {
            ChainConfig cfg;
            cfg.domain = d;
            cfg.seed = derive_seed(s, i);
            const CouplingRun cr = grand_coupling(cfg, cap);
            if (cr.coalescence_time) t[i] = *cr.coalescence_time;
            checks[i] = cr.order_checks;
        });
        std::vector<double> ok;
        int cens = 0;
        for (double v : t) {
            if (std::isfinite(v)) ok.push_back(v);
            else ++cens;
        }
        for (auto c : checks) sw.order_checks += c;
        sw.times.push_back(ok);
        sw.censored.push_back(cens);
        sw.medians.push_back(median(t));
        all.push_back(std::move(t));
    }
    std::vector<double> lx, ly;
    bool finite = true;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        lx.push_back(std::log(static_cast<double>(ns[i])));
        ly.push_back(std::log(sw.medians[i]));
        finite = finite && std::isfinite(sw.medians[i]);
    }
    if (finite && ns.size() >= 2) {
        sw.fit = linear_fit(lx, ly);
        const Bootstrap b = bootstrap(
            [&](const IndexDraw& draw) {
                std::vector<double> my;
                for (const auto& t : all) {
                    std::vector<double> rs(t.size());
                    for (auto& v : rs) v = t[draw(t.size())];
                    my.push_back(std::log(median(rs)));
                }
                for (double v : my)
                    if (!std::isfinite(v)) return std::numeric_limits<double>::quiet_NaN();
                return linear_fit(lx, my).slope;
            },
            bootstrap_resamples, derive_seed(seed, 0xB007));
        sw.exponent_ci = b.ci;
    } else {
        sw.fit.slope = std::numeric_limits<double>::quiet_NaN();
        sw.exponent_ci = {sw.fit.slope, sw.fit.slope};
    }
    return sw;
}

TvBracket tv_bracket(int n, int trajectories, std::uint64_t seed, double eps) {
    const DomainPtr d = make_domain(n, n, n);
    const ChainSpectrum s = exact_spectrum(d, 0.0);
    const HeightField top = extreme_tilings(d).second;
    const std::size_t itop = s.index_of(top);
    TvBracket tb;
    tb.eps = eps;
    tb.tmix_exact = tmix_exact(s, eps);
    {
        double lo = 0, hi = std::max(1e-3, tb.tmix_exact);
        while (s.tv_from(itop, hi) > eps) hi *= 2;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (s.tv_from(itop, mid) > eps) lo = mid;
            else hi = mid;
        }
        tb.tmix_top = hi;
    }
    const int grid = 240;
    const double T = 3.0 * tb.tmix_top;
    for (int i = 0; i <= grid; ++i) tb.times.push_back(T * i / grid);

    std::vector<std::vector<std::uint32_t>> counts(trajectories);
    parallel_for(trajectories, [&](std::size_t r) {
        ChainConfig cfg;
        cfg.domain = d;
        cfg.seed = derive_seed(seed, r);
        const Trajectory tr = run(cfg, top, T, tb.times);
        auto& c = counts[r];
        c.resize(tr.snapshots.size());
        for (std::size_t j = 0; j < tr.snapshots.size(); ++j) c[j] = static_cast<std::uint32_t>(s.index_of(tr.snapshots[j]));
    });
    const std::size_t K = s.states.size();
    const double nt = trajectories;
    double err_at_tmix = 0;
    for (std::size_t j = 0; j < tb.times.size(); ++j) {
        std::vector<double> hist(K, 0.0);
        for (const auto& c : counts) hist[c[j]] += 1.0 / nt;
        double tv = 0;
        for (std::size_t k = 0; k < K; ++k) tv += std::fabs(hist[k] - s.target(k));
        tb.tv_emp.push_back(0.5 * tv);
        tb.tv_exact.push_back(s.tv_from(itop, tb.times[j]));
        tb.max_curve_gap = std::max(tb.max_curve_gap, std::fabs(tb.tv_emp.back() - tb.tv_exact.back()));
    }
    {
        // Three standard deviations of the summed cell errors at t_mix.
        const Eigen::VectorXd law = s.law(itop, tb.tmix_top);
        for (std::size_t k = 0; k < K; ++k) err_at_tmix += std::sqrt(std::max(0.0, law(k) * (1 - law(k))) / nt);
        tb.stat_error = 3.0 * 0.5 * err_at_tmix;
    }
    auto crossing = [&](double level) {
        for (std::size_t j = 1; j < tb.times.size(); ++j) {
            if (tb.tv_emp[j] <= level) {
                const double a = tb.tv_emp[j - 1], b = tb.tv_emp[j];
                const double w = a > b ? (a - level) / (a - b) : 1.0;
                return tb.times[j - 1] + w * (tb.times[j] - tb.times[j - 1]);
            }
        }
        return std::numeric_limits<double>::infinity();
    };
    tb.t_emp_lo = crossing(eps + tb.stat_error);
    tb.t_emp_hi = crossing(eps - tb.stat_error);
    tb.bracketed = tb.t_emp_lo <= tb.tmix_top && tb.tmix_top <= tb.t_emp_hi;
    return tb;
}

ExperimentReport coalescence_scaling(const std::vector<int>& ns, int replicas, std::uint64_t seed, int tv_trajectories) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = "coalescence_scaling";
    r.config = {{"ns", ns}, {"replicas", replicas}, {"tv_trajectories", tv_trajectories}, {"cap", 1e6}};
    r.seeds = {seed};
    r.columns = {"N", "replica", "coalescence_time"};
    const CoalescenceSweep sw = coalescence_sweep(ns, replicas, seed, 1e6);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        r.stats["median" + suffix(ns[i])] = sw.medians[i];
        r.stats["censored" + suffix(ns[i])] = sw.censored[i];
        for (std::size_t k = 0; k < sw.times[i].size(); ++k)
            r.rows.push_back({static_cast<double>(ns[i]), static_cast<double>(k), sw.times[i][k]});
    }
    r.stats["exponent"] = sw.fit.slope;
    r.stats["exponent_ci"] = {sw.exponent_ci.lo, sw.exponent_ci.hi};
    const bool flagged = !(sw.fit.slope >= 1.5 && sw.fit.slope <= 3.5);
    r.stats["exponent_flagged"] = flagged;
    r.stats["order_checks"] = sw.order_checks;
    r.verdict("coalescence medians strictly increasing in N", strictly_increasing(sw.medians));

    const TvBracket tb = tv_bracket(2, tv_trajectories, derive_seed(seed, 2), 0.25);
    r.stats["tmix_exact_N2"] = tb.tmix_exact;
    r.stats["tmix_from_top_N2"] = tb.tmix_top;
    r.stats["tv_stat_error"] = tb.stat_error;
    r.stats["empirical_crossing_window"] = {tb.t_emp_lo, tb.t_emp_hi};
    r.stats["max_tv_curve_gap"] = tb.max_curve_gap;
    r.verdict("exact t_mix(1/4) inside the empirical crossing window at N=2", tb.bracketed);
    r.notes.push_back("coalescence of the grand coupling upper-bounds mixing; the exponent is reported, not asserted");
    if (flagged) r.notes.push_back("fitted exponent outside [1.5, 3.5]");
    r.wall_seconds = seconds_since(t0);
    return r;
}

}  // namespace hexmix
