// hexmix: command-line front end.
//
//   hexmix enumerate --sides 2 2 2
//   hexmix sample --n 16 --q 0 --seed 3 --out tiling.grid
//   hexmix mix --sides 2 2 2 --q 1
//   hexmix shape --q 0 --sides 1 1 1 --conic-check
//   hexmix verify --suite primary --seed 7 --out report.json
//   hexmix render --in tiling.grid --arctic --levels --out tiling.svg
//
// Every subcommand also takes --config FILE (a JSON object keyed by long flag
// names); flags given on the command line win over the file.
#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexmix/counting.hpp"
#include "hexmix/dynamics.hpp"
#include "hexmix/experiments.hpp"
#include "hexmix/export.hpp"
#include "hexmix/lattice.hpp"
#include "hexmix/shape.hpp"
#include "hexmix/spectrum.hpp"
#include "hexmix/suite.hpp"
#include "hexmix/svg.hpp"

using namespace hexmix;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options of one subcommand that can also come from the config file.
class Bindings {
public:
    explicit Bindings(CLI::App* app) : app_(app) {
        app_->add_option("--config", config_path_, "JSON file of option values; flags override it");
    }

    template <class T>
    CLI::Option* add(const std::string& name, T& target, const std::string& desc) {
        CLI::Option* opt = app_->add_option("--" + name, target, desc)->capture_default_str();
        items_.push_back({name, opt, [&target](const json& j) { target = j.get<T>(); },
                          [&target]() { return json(target); }});
        return opt;
    }

    CLI::Option* flag(const std::string& name, bool& target, const std::string& desc) {
        CLI::Option* opt = app_->add_flag("--" + name, target, desc);
        items_.push_back({name, opt, [&target](const json& j) { target = j.get<bool>(); },
                          [&target]() { return json(target); }});
        return opt;
    }

    // Fills options absent from the command line from the config file.
    void merge() {
        if (config_path_.empty()) return;
        std::ifstream is(config_path_);
        if (!is) throw UsageError("cannot open config " + config_path_);
        json file;
        try {
            file = json::parse(is);
        } catch (const json::exception& e) {
            throw UsageError("config " + config_path_ + ": " + e.what());
        }
        if (!file.is_object()) throw UsageError("config must be a JSON object");
        for (const auto& [key, value] : file.items()) {
            auto it = std::find_if(items_.begin(), items_.end(), [&](const Item& i) { return i.name == key; });
            if (it == items_.end()) throw UsageError("config: unknown option '" + key + "'");
            if (it->opt->count() > 0) continue;
            try {
                it->set(value);
            } catch (const json::exception& e) {
                throw UsageError("config: bad value for '" + key + "': " + e.what());
            }
        }
    }

    json echo() const {
        json j = json::object();
        j["command"] = app_->get_name();
        for (const auto& i : items_) j[i.name] = i.get();
        return j;
    }

private:
    struct Item {
        std::string name;
        CLI::Option* opt;
        std::function<void(const json&)> set;
        std::function<json()> get;
    };
    CLI::App* app_;
    std::string config_path_;
    std::vector<Item> items_;
};

std::vector<std::string> echo_lines(const json& config) {
    return {"hexmix " + build_id(), "config " + config.dump()};
}

// Writes to `path`, or to stdout for "" and "-".
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

DomainPtr domain_from(const std::vector<int>& sides, int n) {
    if (n > 0) return make_domain(n, n, n);
    if (sides.size() != 3) throw UsageError("--sides takes three integers");
    for (int s : sides)
        if (s < 0) throw UsageError("--sides must be non-negative");
    return make_domain(sides[0], sides[1], sides[2]);
}

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (f == a) return;
    std::string msg = "--format must be one of";
    for (const char* a : allowed) msg += std::string(" ") + a;
    throw UsageError(msg);
}

std::string with_index(const std::string& path, std::size_t i) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    const std::string tag = "_" + std::to_string(i);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

std::string report_text(const ExperimentReport& r, const std::string& format, const json& config) {
    std::ostringstream os;
    if (format == "json") {
        json j = to_json(r, true);
        j["run_config"] = config;
        j["build"] = build_id();
        os << j.dump(2) << '\n';
    } else if (format == "csv") {
        for (const auto& l : echo_lines(config)) os << "# " << l << '\n';
        write_csv(os, r);
    } else {
        write_table(os, r, true);
    }
    return os.str();
}

// --- enumerate -------------------------------------------------------------

struct EnumerateCmd {
    std::vector<int> sides{2, 2, 2};
    std::string out, format = "json";
    std::size_t dfs_limit = 2000000;

    int run(const json& config) {
        check_format(format, {"json"});
        const DomainPtr d = domain_from(sides, 0);
        const BigInt closed = macmahon_count(d->na(), d->nb(), d->nc());
        const BigInt transfer = column_transfer_count(*d);
        bool ok = closed == transfer;
        json j = {{"run_config", config}, {"build", build_id()}, {"closed_form", closed.str()},
                  {"transfer", transfer.str()}};
        std::string dfs_note = "dfs skipped";
        if (closed <= dfs_limit) {
            const std::size_t dfs = enumerate_all(d, dfs_limit).size();
            ok = ok && BigInt(dfs) == closed;
            j["dfs"] = dfs;
            dfs_note = "dfs " + std::to_string(dfs);
        }
        j["agree"] = ok;
        std::cout << closed << '\n'
                  << "closed form " << closed << ", transfer " << transfer << ", " << dfs_note
                  << (ok ? "" : "  MISMATCH") << '\n';
        if (!out.empty()) emit(out, j.dump(2) + "\n");
        return ok ? 0 : 1;
    }
};

// --- sample ----------------------------------------------------------------

struct SampleCmd {
    std::vector<int> sides{4, 4, 4};
    int n = 0;
    double q = 0;
    double scale = 0;
    std::uint64_t seed = 1;
    int replicas = 1;
    std::string method = "cftp";
    double time = 0;
    std::string start = "bottom";
    std::string out, format = "grid";

    int run(const json& config) {
        check_format(format, {"grid", "json", "svg"});
        if (method != "cftp" && method != "run") throw UsageError("--method must be cftp or run");
        if (start != "bottom" && start != "top") throw UsageError("--start must be bottom or top");
        if (replicas < 1) throw UsageError("--replicas must be positive");
        if (method == "run" && !(time >= 0)) throw UsageError("--time must be non-negative");
        const DomainPtr d = domain_from(sides, n);
        std::vector<HeightField> fields;
        std::vector<int> epochs;
        for (int r = 0; r < replicas; ++r) {
            ChainConfig cfg;
            cfg.domain = d;
            cfg.q = q;
            cfg.scale = scale;
            cfg.seed = replicas == 1 ? seed : derive_seed(seed, static_cast<std::uint64_t>(r));
            if (method == "cftp") {
                CftpResult res = cftp_run(cfg);
                epochs.push_back(res.epochs);
                fields.push_back(std::move(res.sample));
            } else {
                const auto [lo, hi] = extreme_tilings(d);
                fields.push_back(hexmix::run(cfg, start == "top" ? hi : lo, time).snapshots.back());
            }
        }
        json j = {{"run_config", config}, {"build", build_id()}, {"samples", json::array()}};
        for (std::size_t i = 0; i < fields.size(); ++i) {
            json s = {{"volume", volume(fields[i])}, {"heights", fields[i].values()}};
            if (!epochs.empty()) s["epochs"] = epochs[i];
            j["samples"].push_back(s);
            std::cerr << "sample " << i << " volume " << volume(fields[i])
                      << (epochs.empty() ? "" : " epochs " + std::to_string(epochs[i])) << '\n';
        }
        if (format == "json") {
            emit(out, j.dump(2) + "\n");
            return 0;
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            const std::string path = fields.size() > 1 && !out.empty() && out != "-" ? with_index(out, i) : out;
            std::vector<std::string> header = echo_lines(config);
            header.push_back("replica " + std::to_string(i));
            if (format == "grid") {
                std::ostringstream os;
                save_grid_document(os, {header, fields[i]});
                emit(path, os.str());
            } else {
                SvgOptions so;
                so.comments = header;
                so.q = q;
                emit(path, render_svg(fields[i], so));
            }
        }
        return 0;
    }
};

// --- mix -------------------------------------------------------------------

struct MixCmd {
    std::vector<int> sides{2, 2, 2};
    double q = 0;
    double scale = 0;
    std::uint64_t seed = 1;
    double eps = 0.25;
    bool coalescence = false;
    std::vector<int> ns{4, 6, 8};
    int replicas = 50;
    double cap = 1e6;
    int tv_trajectories = 0;
    std::string out, format = "json";

    int run(const json& config) {
        check_format(format, {"json", "csv"});
        if (coalescence) return sweep(config);
        const DomainPtr d = domain_from(sides, 0);
        const ChainSpectrum s = exact_spectrum(d, q, scale);
        const double tmix = tmix_exact(s, eps);
        std::cout << "states " << s.states.size() << "\n"
                  << "gap " << s.gap << "\n"
                  << "t_mix(" << eps << ") " << tmix << "\n"
                  << "detailed balance residual " << s.detailed_balance_residual() << '\n';
        const int points = 200;
        std::vector<double> ts, tvs;
        for (int i = 0; i <= points; ++i) {
            ts.push_back(3.0 * tmix * i / points);
            tvs.push_back(s.tv(ts.back()));
        }
        std::ostringstream os;
        if (format == "json") {
            json j = {{"run_config", config}, {"build", build_id()},          {"states", s.states.size()},
                      {"gap", s.gap},         {"tmix", tmix},                 {"eps", eps},
                      {"stationary_residual", s.stationary_residual()},
                      {"detailed_balance_residual", s.detailed_balance_residual()},
                      {"t", ts},              {"tv", tvs}};
            os << j.dump(2) << '\n';
        } else {
            for (const auto& l : echo_lines(config)) os << "# " << l << '\n';
            os << "t,tv\n";
            char buf[64];
            for (std::size_t i = 0; i < ts.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ts[i], tvs[i]);
                os << buf;
            }
        }
        if (!out.empty()) emit(out, os.str());
        return 0;
    }

    int sweep(const json& config) {
        ExperimentReport r;
        if (tv_trajectories > 0) {
            r = coalescence_scaling(ns, replicas, seed, tv_trajectories);
        } else {
            const CoalescenceSweep sw = coalescence_sweep(ns, replicas, seed, cap);
            r.name = "coalescence_sweep";
            r.config = {{"ns", ns}, {"replicas", replicas}, {"cap", cap}};
            r.seeds = {seed};
            r.columns = {"N", "coalescence_time"};
            for (std::size_t i = 0; i < ns.size(); ++i) {
                r.stats["median_N" + std::to_string(ns[i])] = sw.medians[i];
                r.stats["censored_N" + std::to_string(ns[i])] = sw.censored[i];
                for (double t : sw.times[i]) r.rows.push_back({static_cast<double>(ns[i]), t});
            }
            r.stats["exponent"] = sw.fit.slope;
            r.stats["exponent_ci"] = {sw.exponent_ci.lo, sw.exponent_ci.hi};
        }
        std::cout << report_text(r, "table", config);
        if (!out.empty()) emit(out, report_text(r, format, config));
        return r.passed() ? 0 : 1;
    }
};

// --- shape -----------------------------------------------------------------

struct ShapeCmd {
    std::vector<int> sides{1, 1, 1};
    double q = 0;
    double n_scale = 0;  // N for the edge coordinates; 0 means none
    int grid = 40;
    bool conic_check = false;
    bool edge_scaling = false;
    bool arctic = false;
    double tol = 1e-9;
    std::string out, format = "csv";

    int run(const json& config) {
        check_format(format, {"csv"});
        if (sides.size() != 3 || sides[0] <= 0 || sides[1] <= 0 || sides[2] <= 0)
            throw UsageError("--sides takes three positive numbers");
        const double s = sides[0];
        const ShapeParams p(q, sides[0] / s, sides[1] / s, sides[2] / s);
        bool ok = true;
        if (conic_check) ok = check_conic(p) && ok;
        if (edge_scaling) ok = check_edges(p) && ok;
        if (!conic_check && !edge_scaling) {
            std::ostringstream os;
            const double N = n_scale > 0 ? n_scale : 1e300;
            if (arctic) write_arctic_csv(os, p, grid, echo_lines(config));
            else write_shape_csv(os, p, grid, grid, N, echo_lines(config));
            emit(out, os.str());
        }
        return ok ? 0 : 1;
    }

    bool check_conic(const ShapeParams& p) const {
        const Conic cn = arctic_conic(p);
        const double scale = std::max({std::fabs(cn.xx), std::fabs(cn.xy), std::fabs(cn.yy), std::fabs(cn.x),
                                       std::fabs(cn.y), std::fabs(cn.c)});
        double res = 0, ellipse = 0;
        const bool unit_q0 = q == 0 && p.a == 1 && p.b == 1 && p.c == 1;
        for (const Point& z : arctic_polyline(p, 100)) {
            const double X = p.X(z.x), Y = p.Y(z.y);
            res = std::max(res, std::fabs(cn(X, Y)) / scale);
            if (unit_q0) ellipse = std::max(ellipse, std::fabs((X + Y - 2) * (X + Y - 2) + 3 * (X - Y) * (X - Y) - 3));
        }
        const double worst = std::max(res, ellipse);
        std::cout << "max conic residual " << worst << '\n';
        if (unit_q0) std::cout << "  against (X+Y-2)^2 + 3(X-Y)^2 = 3: " << ellipse << '\n';
        const ArcticGeometry g = arctic_tangency(p);
        std::cout.precision(17);
        std::cout << "x_SW " << g.x_sw() << " (closed form " << tangency_sw_closed_form(p) << ")\n";
        std::cout.precision(6);
        return worst < tol;
    }

    bool check_edges(const ShapeParams& p) const {
        const EdgeScalingReport e = edge_scaling_check(p, 0.2, 1e-5, 1e-3, 12);
        std::cout << "edge transect d=" << e.d << ": H exponent " << e.fit_H.slope << ", dH/dy exponent "
                  << e.fit_dHy.slope << '\n';
        return std::fabs(e.fit_H.slope - 1.5) <= 0.05 && std::fabs(e.fit_dHy.slope - 0.5) <= 0.05;
    }
};

// --- verify ----------------------------------------------------------------

struct VerifyCmd {
    std::string suite = "primary";
    std::uint64_t seed = 7;
    std::vector<int> only;
    std::string out, format = "json";

    int run(const json& config) {
        check_format(format, {"json"});
        if (suite != "primary" && suite != "smoke") throw UsageError("--suite must be primary or smoke");
        SuiteOptions opt;
        opt.seed = seed;
        opt.smoke = suite == "smoke";
        opt.only = only;
        opt.on_result = [](const CriterionResult& r) { std::cout << result_line(r) << std::endl; };
        const std::vector<CriterionResult> res = run_primary_suite(opt);
        bool ok = !res.empty();
        // Only seed-determined content goes into the report; timings are printed.
        json j = {{"run_config", config}, {"build", build_id()}, {"criteria", json::array()}};
        for (const auto& r : res) {
            ok = ok && r.ok();
            j["criteria"].push_back({{"id", r.id},
                                     {"title", r.title},
                                     {"pass", r.pass},
                                     {"budget_seconds", r.budget},
                                     {"summary", r.summary},
                                     {"details", r.details}});
        }
        if (!out.empty()) emit(out, j.dump(2) + "\n");
        std::cout << (ok ? "all criteria passed" : "some criteria failed") << '\n';
        return ok ? 0 : 1;
    }
};

// --- render ----------------------------------------------------------------

struct RenderCmd {
    std::string in;
    std::vector<int> sides{6, 6, 6};
    int n = 0;
    double q = 0;
    std::uint64_t seed = 1;
    double unit = 16;
    bool arctic = false;
    bool levels = false;
    bool discrete_levels = false;
    std::string out, format = "svg";

    int run(const json& config) {
        check_format(format, {"svg"});
        HeightField f;
        std::vector<std::string> header = echo_lines(config);
        if (!in.empty()) {
            std::ifstream is(in);
            if (!is) throw UsageError("cannot open " + in);
            GridDocument doc = load_grid_document(is);
            f = std::move(doc.field);
            for (const auto& h : doc.header) header.push_back("source: " + h);
        } else {
            ChainConfig cfg;
            cfg.domain = domain_from(sides, n);
            cfg.q = q;
            cfg.seed = seed;
            f = cftp_sample(cfg);
        }
        if (!is_admissible(f)) throw UsageError("height field is not admissible");
        SvgOptions so;
        so.unit = unit;
        so.q = q;
        so.arctic = arctic;
        so.analytic_levels = levels;
        so.discrete_levels = discrete_levels;
        so.comments = header;
        emit(out, render_svg(f, so));
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lozenge tiling dynamics, exact sampling and limit shapes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", build_id());

    EnumerateCmd en;
    auto* sen = app.add_subcommand("enumerate", "Count tilings of a hexagon three ways");
    Bindings ben(sen);
    ben.add("sides", en.sides, "Hexagon sides a b c")->expected(3);
    ben.add("dfs-limit", en.dfs_limit, "Largest count for which the explicit enumeration runs");
    ben.add("out", en.out, "JSON report path");
    ben.add("format", en.format, "json");

    SampleCmd sa;
    auto* ssa = app.add_subcommand("sample", "Exact (CFTP) or fixed-time samples");
    Bindings bsa(ssa);
    bsa.add("sides", sa.sides, "Hexagon sides a b c")->expected(3);
    bsa.add("n", sa.n, "Use the n x n x n hexagon");
    bsa.add("q", sa.q, "Volume tilt");
    bsa.add("scale", sa.scale, "N in e^{q/N}; 0 means the first side");
    bsa.add("seed", sa.seed, "Seed");
    bsa.add("replicas", sa.replicas, "Number of samples");
    bsa.add("method", sa.method, "cftp or run");
    bsa.add("time", sa.time, "Run length for --method run");
    bsa.add("start", sa.start, "bottom or top, for --method run");
    bsa.add("out", sa.out, "Output path; replicas get _i suffixes");
    bsa.add("format", sa.format, "grid, json or svg");

    MixCmd mi;
    auto* smi = app.add_subcommand("mix", "Exact spectrum and TV curve, or coalescence sweeps");
    Bindings bmi(smi);
    bmi.add("sides", mi.sides, "Hexagon sides a b c")->expected(3);
    bmi.add("q", mi.q, "Volume tilt");
    bmi.add("scale", mi.scale, "N in e^{q/N}; 0 means the first side");
    bmi.add("seed", mi.seed, "Seed");
    bmi.add("eps", mi.eps, "TV threshold for t_mix");
    bmi.flag("coalescence", mi.coalescence, "Run the grand-coupling sweep over --ns");
    bmi.add("ns", mi.ns, "Hexagon sizes for the sweep");
    bmi.add("replicas", mi.replicas, "Replicas per size");
    bmi.add("cap", mi.cap, "Time cap per coupling run");
    bmi.add("tv-trajectories", mi.tv_trajectories, "Also bracket t_mix at N=2 with this many runs");
    bmi.add("out", mi.out, "Output path");
    bmi.add("format", mi.format, "json or csv");

    ShapeCmd sh;
    auto* ssh = app.add_subcommand("shape", "Limit-shape fields, arctic curve and scaling checks");
    Bindings bsh(ssh);
    bsh.add("sides", sh.sides, "Hexagon sides, rescaled so the first is 1")->expected(3);
    bsh.add("q", sh.q, "Tilt of the rescaled shape");
    bsh.add("n", sh.n_scale, "N used for the floored edge coordinates");
    bsh.add("grid", sh.grid, "Grid steps per axis, or arctic points");
    bsh.flag("conic-check", sh.conic_check, "Check the arctic polyline against its conic");
    bsh.flag("edge-scaling", sh.edge_scaling, "Fit edge exponents along a transect");
    bsh.flag("arctic", sh.arctic, "Write the arctic curve instead of the field");
    bsh.add("tol", sh.tol, "Conic residual tolerance");
    bsh.add("out", sh.out, "Output path");
    bsh.add("format", sh.format, "csv");

    VerifyCmd ve;
    auto* sve = app.add_subcommand("verify", "Run the acceptance criteria");
    Bindings bve(sve);
    bve.add("suite", ve.suite, "primary or smoke");
    bve.add("seed", ve.seed, "Master seed");
    bve.add("only", ve.only, "Criterion ids to run");
    bve.add("out", ve.out, "JSON report path");
    bve.add("format", ve.format, "json");

    RenderCmd re;
    auto* sre = app.add_subcommand("render", "Draw a tiling as SVG");
    Bindings bre(sre);
    bre.add("in", re.in, "Height grid file; without it a CFTP sample is drawn");
    bre.add("sides", re.sides, "Hexagon sides a b c")->expected(3);
    bre.add("n", re.n, "Use the n x n x n hexagon");
    bre.add("q", re.q, "Tilt for the sample and the overlays");
    bre.add("seed", re.seed, "Seed");
    bre.add("unit", re.unit, "Pixels per lattice step");
    bre.flag("arctic", re.arctic, "Overlay the arctic curve");
    bre.flag("levels", re.levels, "Overlay the analytic level lines");
    bre.flag("discrete-levels", re.discrete_levels, "Overlay the level lines of the tiling");
    bre.add("out", re.out, "SVG path");
    bre.add("format", re.format, "svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.exit(e) == 0) return 0;
        std::cerr << '\n' << app.help();
        return 2;
    }

    try {
        if (*sen) return ben.merge(), en.run(ben.echo());
        if (*ssa) return bsa.merge(), sa.run(bsa.echo());
        if (*smi) return bmi.merge(), mi.run(bmi.echo());
        if (*ssh) return bsh.merge(), sh.run(bsh.echo());
        if (*sve) return bve.merge(), ve.run(bve.echo());
        if (*sre) return bre.merge(), re.run(bre.echo());
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
