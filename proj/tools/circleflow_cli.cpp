// Command line front end: metricity analysis, geodesic-flow simulation,
// (a, b)-plane sweeps, identity verification, and the named-equation
// catalog. Exit codes: 0 success (blowup in a simulation is a finding,
// not an error), 1 usage error, 2 verification failure, 3 runtime error.

#include <CLI11.hpp>

#include <atomic>
#include <cctype>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "circleflow/circleflow.hpp"

namespace fs = std::filesystem;
using namespace circleflow;

namespace {

struct GlobalFlags {
    bool exact = false;
    bool use_float = false;
    bool extended = false;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string format = "text";
};

ClassifyOptions make_options(const GlobalFlags& g) {
    ClassifyOptions opts;
    if (g.exact) opts.mode = ClassifyOptions::Mode::Exact;
    if (g.use_float) opts.mode = ClassifyOptions::Mode::Float;
    opts.extended = g.extended;
    return opts;
}

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) fs::create_directories(dir);
}

void print_verdict_text(std::ostream& os, const Verdict& v) {
    os << "route=" << v.route << "  verdict=" << verdict_name(v.kind)
       << "  a=" << (v.exact ? v.a_str : fmt_double(v.a))
       << "  b=" << (v.exact ? v.b_str : fmt_double(v.b))
       << (v.exact ? "  [exact]" : "  [float]") << "\n";
    if (v.kind == VerdictKind::Metric) {
        os << "  symbol: |k|^" << fmt_double(v.symbol->a)
           << (v.symbol->domain == Domain::FullGroup ? " with mean projection" : " on zero-mean")
           << ", b = 2\n";
    }
    for (const WitnessFact& f : v.witness) os << "  " << f.label << " = " << f.value << "\n";
    if (v.kind == VerdictKind::Undetermined) {
        os << "  reason: " << v.reason << "\n";
        if (v.excluded_member) os << "  excluded value: " << *v.excluded_member << "\n";
    }
}

// ---------------------------------------------------------------------------

int cmd_analyze(const std::string& a_str, const std::string& b_str, const GlobalFlags& g) {
    RealParam a = RealParam::parse(a_str);
    RealParam b = RealParam::parse(b_str);
    ClassifyOptions opts = make_options(g);

    std::vector<Verdict> verdicts;
    verdicts.push_back(classify_full_group(a, b, opts));
    verdicts.push_back(classify_fourier_type(a, b, opts));
    if (a.exact == 1) verdicts.push_back(classify_full_group_fourier_type(a, b, opts));

    if (g.format == "json") {
        json arr = json::array();
        for (const Verdict& v : verdicts) arr.push_back(to_json(v));
        std::cout << arr.dump(2) << "\n";
    } else if (g.format == "csv") {
        std::cout << "a,b,route,verdict\n";
        for (const Verdict& v : verdicts)
            std::cout << fmt_double(v.a) << ',' << fmt_double(v.b) << ',' << v.route << ','
                      << verdict_name(v.kind) << "\n";
    } else {
        for (const Verdict& v : verdicts) print_verdict_text(std::cout, v);
    }
    if (!g.out_dir.empty()) {
        ensure_dir(g.out_dir);
        json arr = json::array();
        for (const Verdict& v : verdicts) arr.push_back(to_json(v));
        write_text_file((fs::path(g.out_dir) / "analyze.json").string(), arr.dump(2) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_catalog(const std::string& name, const GlobalFlags& g) {
    if (name.empty()) {
        if (g.format == "json") {
            json arr = json::array();
            for (const CatalogRow& row : catalog_rows()) {
                arr.push_back(json{{"name", row.family},
                                   {"a", row.a_desc},
                                   {"b", row.b_desc},
                                   {"convention", domain_name(row.convention)},
                                   {"note", row.note},
                                   {"parameterized", row.parameterized}});
            }
            std::cout << arr.dump(2) << "\n";
        } else {
            for (const CatalogRow& row : catalog_rows()) {
                std::string verdict = "(instantiate with a parameter)";
                if (!row.parameterized) {
                    CatalogResult r = catalog(row.family, make_options(g));
                    verdict = verdict_name(r.verdict.kind);
                }
                std::cout << row.family << "  a=" << row.a_desc << "  b=" << row.b_desc << "  "
                          << domain_name(row.convention) << "  " << verdict << "  -- " << row.note
                          << "\n";
            }
        }
        return 0;
    }

    CatalogResult r = catalog(name, make_options(g));
    if (g.format == "json") {
        std::cout << to_json(r).dump(2) << "\n";
    } else {
        std::cout << r.entry.name << ": a=" << r.entry.a.str_exact()
                  << " b=" << r.entry.b.str_exact() << " (" << domain_name(r.entry.convention)
                  << ")\n  " << r.entry.note << "\n";
        print_verdict_text(std::cout, r.verdict);
    }
    return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::optional<std::string> a, b, domain, u0;
    std::optional<long> resolution, save_every;
    std::optional<double> dt, horizon, blowup_threshold, tail_threshold;
    std::string config_file;
};

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.erase(s.begin());
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

int cmd_simulate(const SimulateArgs& args, const GlobalFlags& g) {
    std::map<std::string, std::string> cfgfile;
    if (!args.config_file.empty()) cfgfile = parse_config_file(args.config_file);

    auto pick = [&](const std::optional<std::string>& flag, const char* key,
                    const std::string& fallback) {
        if (flag) return *flag;
        auto it = cfgfile.find(key);
        return it != cfgfile.end() ? it->second : fallback;
    };
    auto pick_num = [&](const auto& flag, const char* key, double fallback) -> double {
        if (flag) return static_cast<double>(*flag);
        auto it = cfgfile.find(key);
        return it != cfgfile.end() ? std::stod(it->second) : fallback;
    };

    SimConfig cfg;
    cfg.params.a = RealParam::parse(pick(args.a, "a", "2")).value;
    cfg.params.b = RealParam::parse(pick(args.b, "b", "2")).value;
    cfg.resolution = static_cast<long>(pick_num(args.resolution, "N", 128));
    cfg.dt = pick_num(args.dt, "dt", 1e-3);
    cfg.horizon = pick_num(args.horizon, "T", 0.3);
    cfg.blowup_slope_threshold = pick_num(args.blowup_threshold, "blowup_threshold", 1e6);
    cfg.tail_ratio_threshold = pick_num(args.tail_threshold, "tail_threshold", 0.1);
    std::string domain = pick(args.domain, "domain", "zero-mean");
    if (domain == "full") cfg.domain = Domain::FullGroup;
    else if (domain == "zero-mean") cfg.domain = Domain::ZeroMean;
    else throw std::invalid_argument("domain must be 'full' or 'zero-mean'");
    std::string u0_name = pick(args.u0, "u0", "cos");
    long save_every = static_cast<long>(pick_num(args.save_every, "save_every", 0));

    TrigPoly<double> u0 = initial_data(u0_name, g.seed, cfg.resolution);
    Trajectory traj = simulate(cfg, u0);
    ConservationReport rep = conservation_report(traj);

    if (!g.out_dir.empty()) {
        ensure_dir(g.out_dir);
        std::ostringstream jsonl;
        write_diagnostics_jsonl(jsonl, traj);
        write_text_file((fs::path(g.out_dir) / "diagnostics.jsonl").string(), jsonl.str());
        std::ostringstream csv;
        write_diagnostics_csv(csv, traj);
        write_text_file((fs::path(g.out_dir) / "diagnostics.csv").string(), csv.str());
        if (save_every > 0) {
            std::ostringstream states;
            write_states_jsonl(states, traj, save_every);
            write_text_file((fs::path(g.out_dir) / "states.jsonl").string(), states.str());
        }
    }

    json summary{{"termination", termination_name(traj.termination.kind)},
                 {"t_final", traj.termination.t},
                 {"steps", traj.times.size() - 1},
                 {"energy_rel_drift", rep.energy_rel_drift},
                 {"mean_m_abs_drift", rep.mean_m_abs_drift}};
    if (!traj.termination.reason.empty()) summary["reason"] = traj.termination.reason;
    if (g.format == "json") {
        std::cout << summary.dump(2) << "\n";
    } else {
        std::cout << "termination: " << termination_name(traj.termination.kind);
        if (!traj.termination.reason.empty()) std::cout << " (" << traj.termination.reason << ")";
        std::cout << " at t = " << fmt_double(traj.termination.t) << "\n"
                  << "energy relative drift: " << fmt_double(rep.energy_rel_drift) << "\n"
                  << "mean_m drift: " << fmt_double(rep.mean_m_abs_drift) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

std::atomic<bool> g_interrupted{false};

void on_sigint(int) { g_interrupted.store(true); }

int cmd_sweep(const SweepGrid& grid, const std::string& route_name, bool svg, unsigned jobs,
              const GlobalFlags& g) {
    SweepRoute route;
    if (route_name == "fourier") route = SweepRoute::ZeroMeanFourier;
    else if (route_name == "full") route = SweepRoute::FullGroup;
    else throw std::invalid_argument("route must be 'fourier' or 'full'");

    // Partial results are still flushed if the sweep is interrupted.
    auto* previous = std::signal(SIGINT, on_sigint);
    auto cells = sweep_classify(grid, route, make_options(g), jobs, &g_interrupted);
    std::signal(SIGINT, previous);

    std::string out_dir = g.out_dir.empty() ? "." : g.out_dir;
    ensure_dir(out_dir);
    write_text_file((fs::path(out_dir) / "sweep.csv").string(), sweep_csv(cells));
    if (svg) write_text_file((fs::path(out_dir) / "sweep.svg").string(), sweep_svg(grid, cells));

    long metric = 0, nonmetric = 0, undetermined = 0, done = 0;
    for (const SweepCell& c : cells) {
        if (!c.computed) continue;
        ++done;
        if (c.kind == VerdictKind::Metric) ++metric;
        else if (c.kind == VerdictKind::NonMetric) ++nonmetric;
        else ++undetermined;
    }
    std::cout << "wrote " << (fs::path(out_dir) / "sweep.csv").string() << " (" << done << " of "
              << cells.size() << " cells: " << metric << " metric, " << nonmetric
              << " non-metric, " << undetermined << " undetermined)\n";
    if (g_interrupted.load()) {
        std::cerr << "interrupted; partial results written\n";
        return 130;
    }
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const GlobalFlags& g) {
    std::vector<CheckResult> results = run_suite(suite, g.seed);
    bool all_pass = true;
    for (const CheckResult& r : results) all_pass = all_pass && r.pass;
    if (g.format == "json") {
        json arr = json::array();
        for (const CheckResult& r : results)
            arr.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        std::cout << json{{"suite", suite}, {"pass", all_pass}, {"checks", arr}}.dump(2) << "\n";
    } else {
        for (const CheckResult& r : results) {
            std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
            if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
            std::cout << "\n";
        }
    }
    return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"circleflow: spectral flows of the periodic transport family "
                 "m_t + u m_x + b u_x m = 0, m = Lambda_mu^a u, and decision "
                 "procedures for their metric realizability"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_flag("--exact", g.exact, "force exact rational arithmetic (integer a only)");
    app.add_flag("--float", g.use_float, "force floating-point arithmetic");
    app.add_flag("--extended", g.extended,
                 "enable the extended a = 1, b < -1 non-integer analysis");
    app.add_option("--seed", g.seed, "random seed for seeded generators");
    app.add_option("--out", g.out_dir, "output directory for generated files");
    app.add_option("--format", g.format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    // analyze
    auto* analyze = app.add_subcommand("analyze", "classify one (a, b) pair");
    analyze->fallthrough();
    std::string a_str, b_str;
    analyze->add_option("--a", a_str, "Laplacian exponent a (decimal or p/q)")->required();
    analyze->add_option("--b", b_str, "stretch weight b (decimal or p/q)")->required();

    // catalog
    auto* cat = app.add_subcommand("catalog", "named equations of the family");
    cat->fallthrough();
    std::string cat_name;
    cat->add_option("name", cat_name, "equation name, e.g. hunter-saxton or gclm(0.5)");

    // simulate
    auto* sim = app.add_subcommand("simulate", "integrate the flow and record diagnostics");
    sim->fallthrough();
    SimulateArgs sargs;
    sim->add_option("--config", sargs.config_file, "flat key = value config file");
    sim->add_option("--a", sargs.a, "Laplacian exponent a");
    sim->add_option("--b", sargs.b, "stretch weight b");
    sim->add_option("--N", sargs.resolution, "spectral cutoff");
    sim->add_option("--dt", sargs.dt, "time step");
    sim->add_option("--T", sargs.horizon, "time horizon");
    sim->add_option("--domain", sargs.domain, "full or zero-mean");
    sim->add_option("--u0", sargs.u0, "initial data: cos, sin, cos+halfcos2, random, zero");
    sim->add_option("--save-every", sargs.save_every, "dump the full state every s steps");
    sim->add_option("--blowup-threshold", sargs.blowup_threshold, "stop when sup|u_x| exceeds");
    sim->add_option("--tail-threshold", sargs.tail_threshold,
                    "stop when the spectral tail fraction exceeds");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "classify a grid in the (a, b) plane");
    sweep->fallthrough();
    SweepGrid grid;
    bool svg = false;
    unsigned jobs = 0;
    std::string route_name = "fourier";
    sweep->add_option("--a-min", grid.a_min);
    sweep->add_option("--a-max", grid.a_max);
    sweep->add_option("--a-step", grid.a_step);
    sweep->add_option("--b-min", grid.b_min);
    sweep->add_option("--b-max", grid.b_max);
    sweep->add_option("--b-step", grid.b_step);
    sweep->add_option("--route", route_name, "fourier (zero-mean) or full (full group)");
    sweep->add_option("--jobs", jobs, "worker threads (0 = auto)");
    sweep->add_flag("--svg", svg, "also write an SVG heat map");

    // verify
    auto* verify = app.add_subcommand("verify", "run a named identity suite");
    verify->fallthrough();
    std::string suite;
    verify->add_option("suite", suite, "identities, recursions or conservation")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*analyze) return cmd_analyze(a_str, b_str, g);
        if (*cat) return cmd_catalog(cat_name, g);
        if (*sim) return cmd_simulate(sargs, g);
        if (*sweep) return cmd_sweep(grid, route_name, svg, jobs, g);
        if (*verify) return cmd_verify(suite, g);
    } catch (const UnknownName& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
