#include "hexmix/suite.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hexmix/counting.hpp"
#include "hexmix/experiments.hpp"
#include "hexmix/rng.hpp"
#include "hexmix/shape.hpp"

namespace hexmix {

namespace {

using Clock = std::chrono::steady_clock;
using json = nlohmann::ordered_json;

std::string fmt(double v, const char* pattern = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

CriterionResult start(int id, const char* title) {
    CriterionResult r;
    r.id = id;
    r.title = title;
    return r;
}

struct Ctx {
    const SuiteOptions& opt;
    std::vector<SampleBank> banks;  // shared by the concentration criteria
    double bank_seconds = 0;

    const std::vector<SampleBank>& concentration_banks() {
        if (banks.empty()) {
            const auto t0 = Clock::now();
            const std::vector<int> ns = opt.smoke ? std::vector<int>{8, 12} : std::vector<int>{16, 32};
            const int reps = opt.smoke ? 10 : 100;
            for (int n : ns) banks.push_back(cftp_bank(n, 0.0, reps, opt.seed));
            bank_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        }
        return banks;
    }
};

CriterionResult c1_enumeration(Ctx&) {
    CriterionResult r = start(1, "Enumeration oracle");
    r.details = nlohmann::ordered_json::array();
    r.budget = 1;
    const int sides[3][3] = {{1, 1, 1}, {2, 1, 1}, {2, 2, 2}};
    const int want[3] = {2, 3, 20};
    bool ok = true;
    std::ostringstream s;
    for (int i = 0; i < 3; ++i) {
        const auto d = make_domain(sides[i][0], sides[i][1], sides[i][2]);
        const std::size_t dfs = enumerate_all(d, 1000).size();
        const BigInt transfer = column_transfer_count(*d);
        const BigInt closed = macmahon_count(sides[i][0], sides[i][1], sides[i][2]);
        const bool good = dfs == static_cast<std::size_t>(want[i]) && transfer == want[i] && closed == want[i];
        ok = ok && good;
        s << (i ? ", " : "") << '(' << sides[i][0] << ',' << sides[i][1] << ',' << sides[i][2] << ")=" << dfs << '/'
          << transfer << '/' << closed;
        r.details.push_back({{"sides", {sides[i][0], sides[i][1], sides[i][2]}},
                                                                 {"dfs", dfs},
                                                                 {"transfer", transfer.convert_to<long long>()},
                                                                 {"closed_form", closed.convert_to<long long>()}});
    }
    r.pass = ok;
    r.summary = "counts dfs/transfer/closed-form " + s.str();
    return r;
}

CriterionResult c2_exact_mixing(Ctx&) {
    CriterionResult r = start(2, "Exact mixing on (1,1,1)");
    r.budget = 1;
    const ChainSpectrum s = exact_spectrum(make_domain(1, 1, 1), 0.0);
    const double tmix = tmix_exact(s, 0.25);
    // Two states flipping at rate 1 each way: TV(t) = e^{-2t}/2.
    const double want = std::log(2.0) / 2.0;
    double curve_gap = 0;
    for (int i = 0; i <= 50; ++i) {
        const double t = 0.05 * i;
        curve_gap = std::max(curve_gap, std::fabs(s.tv(t) - 0.5 * std::exp(-2.0 * t)));
    }
    const double rel_gap = std::fabs(s.gap - 2.0) / 2.0, rel_t = std::fabs(tmix - want) / want;
    r.pass = rel_gap < 0.01 && rel_t < 0.01 && curve_gap < 1e-12;
    r.details = {{"gap", s.gap}, {"tmix_quarter", tmix}, {"closed_form", want}, {"tv_curve_max_gap", curve_gap}};
    r.summary = "gap=" + fmt(s.gap, "%.12g") + " t_mix(1/4)=" + fmt(tmix, "%.10g") + " vs ln2/2=" + fmt(want, "%.10g") +
                " (rel " + fmt(rel_t, "%.2e") + ")";
    return r;
}

CriterionResult c3_stationarity(Ctx&) {
    CriterionResult r = start(3, "Stationarity and detailed balance on (2,2,2)");
    r.budget = 5;
    double worst = 0;
    std::ostringstream s;
    for (double q : {0.0, 1.0}) {
        const ChainSpectrum sp = exact_spectrum(make_domain(2, 2, 2), q);
        const double uni = q == 0.0 ? (sp.target.array() - 1.0 / sp.states.size()).abs().maxCoeff() : 0.0;
        const double res[] = {sp.row_sum_residual(), sp.stationary_residual(), sp.target_residual(),
                              sp.stationary_vs_target(), sp.detailed_balance_residual(), uni};
        double m = 0;
        for (double v : res) m = std::max(m, v);
        worst = std::max(worst, m);
        r.details["q=" + fmt(q, "%.1f")] = {{"row_sum", res[0]},      {"stationary_times_generator", res[1]},
                                             {"target_times_generator", res[2]}, {"stationary_vs_target", res[3]},
                                             {"detailed_balance", res[4]}, {"target_vs_uniform", res[5]}};
        s << (q == 0.0 ? "" : ", ") << "q=" << q << " max residual " << fmt(m, "%.2e");
    }
    r.pass = worst < 1e-12;
    r.summary = s.str();
    return r;
}

CriterionResult c4_cftp(Ctx& c) {
    CriterionResult r = start(4, "CFTP exactness");
    r.budget = 120;
    const auto d = make_domain(2, 2, 2);
    const std::size_t n = c.opt.smoke ? 10000 : 100000;
    const ExperimentReport pos = uniformity_experiment(d, n, derive_seed(c.opt.seed, 4));
    const ExperimentReport neg = uniformity_experiment(d, n, derive_seed(c.opt.seed, 40), 0.5);
    const double p = pos.stats["p_value"].get<double>(), pn = neg.stats["p_value"].get<double>();
    r.pass = p > 1e-3 && pn < 1e-6;
    r.details = {{"samples", n}, {"uniform", to_json(pos, false)}, {"negative_control", to_json(neg, false)}};
    r.summary = "p=" + fmt(p, "%.4g") + " over " + std::to_string(n) + " samples; mislabelled q=0.5 control p=" +
                fmt(pn, "%.3g");
    return r;
}

CriterionResult c5_monotone(Ctx& c) {
    CriterionResult r = start(5, "Monotone coupling");
    r.budget = 60;
    const auto d = make_domain(2, 2, 2);
    const OrderCheck oc = coupling_order_check(d, 0.0, 100, derive_seed(c.opt.seed, 5), true);
    const OrderCheck tilted = coupling_order_check(d, 1.0, 100, derive_seed(c.opt.seed, 50), true);
    const OrderCheck control = coupling_order_check(d, 0.0, 100, derive_seed(c.opt.seed, 51), false);
    r.pass = oc.events >= 10000 && oc.violations == 0 && tilted.violations == 0 && control.violations > 0;
    r.details = {{"pairs", oc.pairs},
                 {"events", oc.events},
                 {"violations", oc.violations},
                 {"tilted_q1_events", tilted.events},
                 {"tilted_q1_violations", tilted.violations},
                 {"independent_streams_violations", control.violations}};
    r.summary = std::to_string(oc.pairs) + " ordered pairs, " + std::to_string(oc.events) + " events, " +
                std::to_string(oc.violations) + " violations (q=1: " + std::to_string(tilted.violations) +
                "; independent-stream control detected " + std::to_string(control.violations) + ")";
    return r;
}

CriterionResult c6_conic(Ctx&) {
    CriterionResult r = start(6, "Arctic conic");
    r.budget = 1;
    const ShapeParams p0(0.0, 1, 1, 1);
    const Conic cn = arctic_conic(p0);
    const double scale = std::max({std::fabs(cn.xx), std::fabs(cn.xy), std::fabs(cn.yy), std::fabs(cn.x),
                                   std::fabs(cn.y), std::fabs(cn.c)});
    const double pi = std::acos(-1.0);
    double res_curve = 0, res_conic = 0;
    const std::vector<Point> poly = arctic_polyline(p0, 100);
    for (const Point& q : poly) {
        const double X = p0.X(q.x), Y = p0.Y(q.y);
        res_curve = std::max(res_curve, std::fabs((X + Y - 2) * (X + Y - 2) + 3 * (X - Y) * (X - Y) - 3));
    }
    for (int i = 0; i < 100; ++i) {
        // X + Y - 2 = sqrt(3) cos t, X - Y = sin t.
        const double t = 2 * pi * i / 100;
        const double sp = 2 + std::sqrt(3.0) * std::cos(t), df = std::sin(t);
        res_conic = std::max(res_conic, std::fabs(cn((sp + df) / 2, (sp - df) / 2)) / scale);
    }
    const double xsw = arctic_tangency(p0).x_sw();
    const ShapeParams p1(0.1, 1, 1, 1);
    // eta(X, 0) vanishes simply at the south tangency.
    auto eta0 = [&](double X) { return xi_eta_zeta(X, 0.0, p1).eta; };
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    const double Xhi = p1.X(p1.a + p1.c);
    const auto br = boost::math::tools::toms748_solve(eta0, 0.0, Xhi, eta0(0.0), eta0(Xhi), tol, it);
    const double x_root = p1.x_of(0.5 * (br.first + br.second));
    const double x_closed = tangency_sw_closed_form(p1);
    const double x_geom = arctic_tangency(p1).x_sw();
    const double agree = std::max(std::fabs(x_root - x_closed), std::fabs(x_geom - x_closed));
    r.pass = res_curve < 1e-9 && res_conic < 1e-9 && std::fabs(xsw - 0.5) < 1e-12 && agree < 1e-10;
    r.details = {{"curve_residual", res_curve},   {"conic_residual_scaled", res_conic}, {"x_sw_q0", xsw},
                 {"x_sw_closed_q01", x_closed},   {"x_sw_root_q01", x_root},            {"x_sw_conic_q01", x_geom},
                 {"agreement", agree}};
    r.summary = "ellipse residual " + fmt(std::max(res_curve, res_conic), "%.2e") + ", x_SW=" + fmt(xsw, "%.15g") +
                ", q=0.1 closed form vs root " + fmt(agree, "%.2e");
    return r;
}

CriterionResult c7_centre(Ctx&) {
    CriterionResult r = start(7, "Shape centre values");
    r.budget = 1;
    const ShapeParams p(0.0, 1, 1, 1);
    const double h = height(1.0, 1.0, p);
    const SlopeInfo s = complex_slope(1.0, 1.0, p);
    r.pass = std::fabs(h - 0.5) < 1e-8 && std::fabs(s.dHx + 1.0 / 3.0) < 1e-6 && std::fabs(s.dHy - 2.0 / 3.0) < 1e-6;
    r.details = {{"H", h}, {"dHx", s.dHx}, {"dHy", s.dHy}};
    r.summary = "H(1,1)=" + fmt(h, "%.12g") + " grad=(" + fmt(s.dHx, "%.10g") + ", " + fmt(s.dHy, "%.10g") + ")";
    return r;
}

CriterionResult c8_edge(Ctx&) {
    CriterionResult r = start(8, "Edge scaling");
    r.budget = 10;
    bool ok = true;
    std::ostringstream s;
    for (double q : {0.0, 0.1}) {
        const EdgeScalingReport e = edge_scaling_check(ShapeParams(q, 1, 1, 1), 0.2, 1e-5, 1e-3, 12);
        const bool good = std::fabs(e.fit_H.slope - 1.5) <= 0.05 && std::fabs(e.fit_dHy.slope - 0.5) <= 0.05;
        ok = ok && good;
        r.details["q=" + fmt(q, "%.1f")] = {{"d", e.d},
                                             {"H_exponent", e.fit_H.slope},
                                             {"dHy_exponent", e.fit_dHy.slope},
                                             {"dHx_exponent", e.fit_dHx.slope},
                                             {"H_prefactor_spread", e.prefactor_ratio_H},
                                             {"dHy_prefactor_spread", e.prefactor_ratio_dHy}};
        s << (q == 0.0 ? "" : "; ") << "q=" << q << ": H~e^" << fmt(e.fit_H.slope, "%.4f") << ", dyH~e^"
          << fmt(e.fit_dHy.slope, "%.4f");
    }
    r.pass = ok;
    r.summary = s.str();
    return r;
}

// Intersection of the two liquid regions sampled on rays from the q' centre.
std::vector<Point> liquid_grid(const ShapeParams& p, const ShapeParams& p2, int rays, int radii) {
    const Conic c1 = arctic_conic(p), c2 = arctic_conic(p2);
    const auto cc = c2.centre();
    const Point centre{p2.x_of(cc[0]), p2.y_of(cc[1])};
    auto inside = [&](double x, double y) {
        return in_hexagon(x, y, p, 0.0) && c1(p.X(x), p.Y(y)) < 0 && c2(p2.X(x), p2.Y(y)) < 0;
    };
    const double pi = std::acos(-1.0);
    std::vector<Point> pts;
    for (int i = 0; i < rays; ++i) {
        const double a = 2 * pi * (i + 0.5) / rays;
        const double ux = std::cos(a), uy = std::sin(a);
        double lo = 0, hi = 3;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (inside(centre.x + mid * ux, centre.y + mid * uy)) lo = mid;
            else hi = mid;
        }
        for (int j = 0; j < radii; ++j) {
            const double f = 0.15 + 0.7 * j / (radii - 1);
            pts.push_back({centre.x + f * lo * ux, centre.y + f * lo * uy});
        }
    }
    return pts;
}

CriterionResult c9_q_monotone(Ctx&) {
    CriterionResult r = start(9, "q-monotonicity and the q-comparison band");
    r.budget = 10;
    const double q = 0.1, q2 = 0.0;
    const ShapeParams pq(q, 1, 1, 1), p2(q2, 1, 1, 1);
    const std::vector<Point> grid = liquid_grid(pq, p2, 25, 8);
    int ordered = 0;
    double rmin = 1e300, rmax = -1e300, worst_order = 1e300;
    for (const Point& z : grid) {
        const double hq = height(z.x, z.y, pq), h2 = height(z.x, z.y, p2);
        worst_order = std::min(worst_order, hq - h2);
        ordered += hq >= h2;
        const EdgeCoords ec = edge_coords(z.x, z.y, p2, 1e300);
        const double ratio = (hq - h2) / (std::sqrt(ec.d * ec.e) * (q - q2));
        rmin = std::min(rmin, ratio);
        rmax = std::max(rmax, ratio);
    }
    const double band = rmin > 0 ? rmax / rmin : std::numeric_limits<double>::infinity();
    r.pass = ordered == static_cast<int>(grid.size()) && grid.size() == 200 && band <= 10.0;
    r.details = {{"points", grid.size()},     {"ordered", ordered},   {"min_difference", worst_order},
                 {"ratio_min", rmin},         {"ratio_max", rmax},    {"ratio_band", band}};
    r.summary = std::to_string(ordered) + "/" + std::to_string(grid.size()) + " points with H_0.1 >= H_0; ratio in [" +
                fmt(rmin, "%.4g") + ", " + fmt(rmax, "%.4g") + "], band " + fmt(band, "%.3g");
    return r;
}

CriterionResult c10_concentration(Ctx& c) {
    CriterionResult r = start(10, "Concentration");
    r.budget = 600;
    const auto t0 = Clock::now();
    const bool fresh = c.banks.empty();
    const auto& banks = c.concentration_banks();
    const ExperimentReport rep = concentration_experiment(banks, 0.3);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count() + (fresh ? 0.0 : c.bank_seconds);
    r.pass = rep.passed();
    r.details = to_json(rep, false);
    const int n0 = banks.front().n, n1 = banks.back().n;
    auto st = [&](const std::string& k) { return rep.stats[k].get<double>(); };
    r.summary = "median sup|H/N-H| " + fmt(st("median_sup_error_N" + std::to_string(n0)), "%.4f") + " (N=" +
                std::to_string(n0) + ") -> " + fmt(st("median_sup_error_N" + std::to_string(n1)), "%.4f") + " (N=" +
                std::to_string(n1) + "); frozen-exact fraction " +
                fmt(st("frozen_clean_fraction_N" + std::to_string(n1)), "%.3f");
    return r;
}

CriterionResult c11_sandwich(Ctx& c) {
    CriterionResult r = start(11, "Level-line sandwich");
    r.budget = 600;
    const auto t0 = Clock::now();
    const bool fresh = c.banks.empty();
    const auto& banks = c.concentration_banks();
    const ExperimentReport rep = level_line_concentration(banks, 0.4);
    // The samples are shared with criterion 10; their cost is charged here too.
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count() + (fresh ? 0.0 : c.bank_seconds);
    const int n0 = banks.front().n, n1 = banks.back().n;
    const double f0 = rep.stats["violation_fraction_N" + std::to_string(n0)].get<double>();
    const double f1 = rep.stats["violation_fraction_N" + std::to_string(n1)].get<double>();
    r.pass = rep.passed();
    r.details = to_json(rep, false);
    r.summary = "violating lines " + fmt(100 * f0, "%.2f") + "% (N=" + std::to_string(n0) + ") -> " +
                fmt(100 * f1, "%.2f") + "% (N=" + std::to_string(n1) + "), delta=0.4";
    return r;
}

CriterionResult c12_tilted(Ctx& c) {
    CriterionResult r = start(12, "Tilted volume monotonicity");
    r.budget = 300;
    const int samples = c.opt.smoke ? 60 : 400;
    const ExperimentReport rep = tilted_shape_experiment(8, {-1.0, 0.0, 1.0}, samples, derive_seed(c.opt.seed, 12), false);
    r.pass = rep.passed();
    r.details = to_json(rep, false);
    std::ostringstream s;
    s << "E[vol] ";
    bool first = true;
    for (const char* k : {"q=-1.0", "q=0.0", "q=1.0"}) {
        const auto ci = rep.stats[std::string("volume_ci_") + k];
        s << (first ? "" : " < ") << fmt(rep.stats[std::string("mean_volume_") + k].get<double>(), "%.1f") << " ["
          << fmt(ci[0].get<double>(), "%.1f") << ',' << fmt(ci[1].get<double>(), "%.1f") << ']';
        first = false;
    }
    r.summary = s.str() + " with " + std::to_string(samples) + " samples per q";
    return r;
}

CriterionResult c13_scaling(Ctx& c) {
    CriterionResult r = start(13, "Mixing-scaling exploration");
    r.budget = 900;
    const std::vector<int> ns = c.opt.smoke ? std::vector<int>{4, 6, 8} : std::vector<int>{4, 6, 8, 12, 16};
    const ExperimentReport rep =
        coalescence_scaling(ns, c.opt.smoke ? 30 : 200, derive_seed(c.opt.seed, 13), c.opt.smoke ? 2000 : 10000);
    r.pass = rep.passed();
    r.details = to_json(rep, false);
    const auto ci = rep.stats["exponent_ci"];
    r.summary = "exponent " + fmt(rep.stats["exponent"].get<double>(), "%.3f") + " [" + fmt(ci[0].get<double>(), "%.3f") +
                ", " + fmt(ci[1].get<double>(), "%.3f") + "]" +
                (rep.stats["exponent_flagged"].get<bool>() ? " FLAGGED outside [1.5, 3.5]" : "") + "; N=2 t_mix " +
                fmt(rep.stats["tmix_exact_N2"].get<double>(), "%.4f") + " in window [" +
                fmt(rep.stats["empirical_crossing_window"][0].get<double>(), "%.4f") + ", " +
                fmt(rep.stats["empirical_crossing_window"][1].get<double>(), "%.4f") + "]";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_primary_suite(const SuiteOptions& opt) {
    using Fn = CriterionResult (*)(Ctx&);
    const Fn fns[] = {c1_enumeration, c2_exact_mixing, c3_stationarity, c4_cftp,           c5_monotone,
                      c6_conic,       c7_centre,       c8_edge,         c9_q_monotone,     c10_concentration,
                      c11_sandwich,   c12_tilted,      c13_scaling};
    Ctx ctx{opt, {}, 0.0};
    std::vector<CriterionResult> out;
    for (int i = 0; i < 13; ++i) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), i + 1) == opt.only.end()) continue;
        const auto t0 = Clock::now();
        CriterionResult r;
        try {
            r = fns[i](ctx);
            if (r.seconds == 0) r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
        } catch (const std::exception& e) {
            r.id = i + 1;
            r.title = "criterion " + std::to_string(i + 1);
            r.pass = false;
            r.summary = std::string("error: ") + e.what();
            r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
            r.budget = 1e300;
        }
        if (opt.on_result) opt.on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string result_line(const CriterionResult& r) {
    std::string line = std::string("[") + (r.ok() ? "PASS" : "FAIL") + "] " + std::to_string(r.id) + " " + r.title +
                       ": " + r.summary + " (" + fmt(r.seconds, "%.2f") + " s / " + fmt(r.budget, "%.0f") + " s";
    if (r.pass && !r.within_budget()) line += ", over budget";
    return line + ")";
}

}  // namespace hexmix
