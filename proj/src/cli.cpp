#include "intraday/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "intraday/closed_form.hpp"
#include "intraday/config.hpp"
#include "intraday/delay.hpp"
#include "intraday/error_bounds.hpp"
#include "intraday/oracle.hpp"
#include "intraday/simulate.hpp"

namespace intraday {

namespace {

constexpr std::uint64_t kDefaultSeed = 20240601;

struct CommonArgs {
    std::string config;
    std::uint64_t seed = kDefaultSeed;
    std::size_t paths = 0;
    double dt = 60.0;
    std::string out;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config, "parameter file or bundled preset name");
    cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
    cmd->add_option("--paths", a.paths, "number of Monte Carlo paths or samples");
    cmd->add_option("--dt", a.dt, "simulation step in seconds")->capture_default_str();
    cmd->add_option("--out", a.out, "output directory");
    cmd->add_option("--workers", a.workers, "worker threads (0: all available)");
}

RunConfig config_or(const CommonArgs& a, const std::string& fallback) {
    return load_config(resolve_config(a.config.empty() ? fallback : a.config));
}

std::filesystem::path output_dir(const CommonArgs& a) {
    std::filesystem::path dir = a.out.empty() ? std::filesystem::path(".") : std::filesystem::path(a.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    return dir;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << body;
    if (!f.flush()) throw IoError("write failed for " + path.string());
}

// Three significant figures, or the sub-threshold marker used for the
// tiny probabilities and bounds in the tables.
std::string sig3(double v, bool threshold) {
    if (threshold && v < 1e-16) return "<1e-16";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fmt(double v, int digits = 10) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

struct TableRow {
    std::string label;
    double prob, value, bound;
};

std::string render_table(const std::string& header, const std::vector<TableRow>& rows) {
    std::string body = header + ",shortfall_probability,value_aux_eur,error_bound_eur\n";
    for (const auto& r : rows)
        body += r.label + "," + sig3(r.prob, true) + "," + sig3(r.value, false) + "," + sig3(r.bound, true) + "\n";
    return body;
}

int cmd_tables(const CommonArgs& a, std::ostream& out) {
    const RunConfig cfg = config_or(a, "table13");
    const auto dir = output_dir(a);
    const MarketState base = cfg.initial;

    auto row = [&](const std::string& label, ModelParams p, MarketState s) {
        const double tau = p.horizon - s.t;
        const ErrorBoundReport e = error_bound(tau, s.spread(), s.y, p);
        return TableRow{label, e.shortfall_probability, value_aux(s, p), e.bound};
    };

    std::vector<TableRow> t1, t2, t3;
    for (double hours : {1.0, 8.0, 24.0, 50.0}) {
        ModelParams p = cfg.params;
        p.horizon = hours * 3600.0;
        t1.push_back(row(fmt(hours), p, base));
    }
    for (double d0 : {500.0, 5000.0, 50000.0, 500000.0}) {
        MarketState s = base;
        s.d = d0;
        t2.push_back(row(fmt(d0), cfg.params, s));
    }
    for (double y0 : {500.0, 50.0, 40.0, 30.0, 20.0}) {
        MarketState s = base;
        s.y = y0;
        t3.push_back(row(fmt(y0), cfg.params, s));
    }
    const std::string b1 = render_table("T_hours", t1), b2 = render_table("D0_MW", t2),
                      b3 = render_table("Y0_eur_per_MW", t3);
    write_file(dir / "table1.csv", b1);
    write_file(dir / "table2.csv", b2);
    write_file(dir / "table3.csv", b3);
    out << "# table1 (horizon)\n" << b1 << "# table2 (initial demand)\n" << b2 << "# table3 (initial price)\n" << b3;
    return kOk;
}

struct Scenario {
    const char* name;
    const char* preset;
};

constexpr Scenario kScenarios[] = {
    {"nojump", "sim-nojump"},
    {"jump-positive", "sim-jump-pos"},
    {"jump-negative", "sim-jump-neg"},
    {"delay", "sim-delay"},
};

int cmd_simulate(const CommonArgs& a, const std::string& scenario, bool unconstrained, std::ostream& out) {
    const Scenario* sc = nullptr;
    for (const auto& s : kScenarios)
        if (scenario == s.name) sc = &s;
    if (!sc) throw ParamError("unknown scenario '" + scenario + "' (nojump, jump-positive, jump-negative, delay)");

    const RunConfig cfg = config_or(a, sc->preset);
    const bool constrained = !unconstrained;
    Policy policy;
    double reference = 0;
    if (scenario == "delay") {
        const double h = cfg.delay.value_or(0.0);
        policy = composite_delay_policy(cfg.params, h, constrained);
        reference = value_aux_delay(cfg.initial, cfg.params, h);
    } else if (cfg.jumps.lambda > 0) {
        policy = jump_optimal_policy(cfg.params, cfg.jumps, constrained);
        reference = value_aux_jump(cfg.initial, cfg.params, cfg.jumps);
    } else {
        policy = optimal_policy(cfg.params, constrained);
        reference = value_aux(cfg.initial, cfg.params);
    }

    SimOptions opt;
    opt.n_paths = a.paths == 0 ? 1 : a.paths;
    opt.dt = a.dt;
    opt.seed = a.seed;
    opt.workers = a.workers;
    const PathSet paths = sample_paths(cfg.params, cfg.jumps, policy, cfg.initial, opt);
    const auto csv = output_dir(a) / (scenario + ".csv");
    export_csv(paths, csv);

    const CostEstimate est = estimate_cost(paths, cfg.params);
    out << "scenario " << scenario << " (" << (constrained ? "constrained" : "unconstrained") << " production)\n"
        << "paths " << est.n_paths << ", grid nodes " << paths.nodes() << "\n"
        << "mean cost " << fmt(est.mean) << " EUR, stderr " << fmt(est.std_error, 6) << " EUR\n"
        << "auxiliary value " << fmt(reference) << " EUR\n"
        << "decision time " << fmt(paths.grid.time[paths.grid.decision_at_end ? paths.grid.steps()
                                                                                : paths.grid.decision_node])
        << " s\n"
        << "wrote " << csv.string() << "\n";
    return kOk;
}

int cmd_verify(const CommonArgs& a, const CliHooks& hooks, std::ostream& out) {
    const RunConfig cfg = config_or(a, "sim-nojump");
    VerifyOptions opt;
    opt.coefficients = hooks.coefficients;
    if (a.paths > 0) opt.mc_paths = a.paths;
    opt.dt = a.dt;
    opt.seed = a.seed;
    const VerificationReport rep = run_verification(cfg.params, cfg.jumps, cfg.initial, opt);
    out << rep.to_text();
    if (!a.out.empty()) {
        const auto dir = output_dir(a);
        write_file(dir / "verify_report.json", rep.to_json() + "\n");
        write_file(dir / "verify_report.txt", rep.to_text());
    }
    return rep.passed() ? kOk : kVerificationFailure;
}

void print_report(std::ostream& out, const std::string& label, const ErrorBoundReport& r) {
    out << label << ": bound " << sig3(r.bound, true) << " EUR (" << fmt(r.bound, 6) << ")"
        << ", shortfall probability " << sig3(r.shortfall_probability, true) << " (" << fmt(r.shortfall_probability, 6)
        << ")";
    if (r.mc_stderr > 0) out << ", Monte Carlo stderr " << fmt(r.mc_stderr, 4);
    out << "\n";
}

int cmd_errorbound(const CommonArgs& a, std::optional<double> delay_hours, std::ostream& out) {
    const RunConfig cfg = config_or(a, "sim-nojump");
    const MarketState& s = cfg.initial;
    const double tau = cfg.params.horizon - s.t;
    print_report(out, "no-jump bound", error_bound(tau, s.spread(), s.y, cfg.params));
    if (cfg.jumps.lambda > 0) {
        const std::size_t n = a.paths == 0 ? 100000 : a.paths;
        print_report(out, "jump bound",
                     error_bound_jump(tau, s.spread(), s.y, cfg.params, cfg.jumps, n, a.seed));
    }
    std::optional<double> h = cfg.delay;
    if (delay_hours) h = *delay_hours * 3600.0;
    if (h) print_report(out, "delay bound (h = " + fmt(*h / 3600.0) + " h)", error_bound_delay(s, cfg.params, *h));
    return kOk;
}

int cmd_delay(const CommonArgs& a, std::optional<double> delay_hours, bool unconstrained, std::ostream& out) {
    const RunConfig cfg = config_or(a, "sim-delay");
    double h = cfg.delay.value_or(0.0);
    if (delay_hours) h = *delay_hours * 3600.0;
    const ModelParams& p = cfg.params;
    const MarketState& s = cfg.initial;
    const double tau = p.horizon - s.t;

    out << "delay h " << fmt(h) << " s\n"
        << "K_h " << fmt(delay_constant(h, p)) << " EUR\n"
        << "value without delay " << fmt(value_aux(s, p)) << " EUR\n"
        << "value with delay " << fmt(value_aux_delay(s, p, h)) << " EUR\n"
        << "initial rate " << fmt(feedback_rate(tau, s.spread(), s.y, p)) << " MW/s\n"
        << "mean rate after decision " << fmt(post_decision_mean_rate(s, p, h)) << " MW/s\n";
    print_report(out, "delay bound", error_bound_delay(s, p, h));

    if (a.paths > 0) {
        SimOptions opt;
        opt.n_paths = a.paths;
        opt.dt = a.dt;
        opt.seed = a.seed;
        opt.workers = a.workers;
        const Policy pol = composite_delay_policy(p, h, !unconstrained);
        const PathSet paths = sample_paths(p, cfg.jumps, pol, s, opt);
        const CostEstimate est = estimate_cost(paths, p);
        out << "simulated cost " << fmt(est.mean) << " EUR, stderr " << fmt(est.std_error, 6) << " EUR over "
            << est.n_paths << " paths\n";
        if (!a.out.empty()) {
            const auto csv = output_dir(a) / "delay.csv";
            export_csv(paths, csv);
            out << "wrote " << csv.string() << "\n";
        }
    }
    return kOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    return run_cli(argc, argv, out, err, CliHooks{});
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const CliHooks& hooks) {
    CLI::App app{"Optimal intraday trading and production: closed forms, bounds, simulation"};
    app.require_subcommand(1);

    CommonArgs tables_a, sim_a, verify_a, bound_a, delay_a;
    std::string scenario = "nojump";
    bool sim_unconstrained = false, delay_unconstrained = false;
    std::optional<double> bound_h, delay_h;

    auto* tables = app.add_subcommand("tables", "write the three sensitivity tables");
    add_common(tables, tables_a);
    auto* sim = app.add_subcommand("simulate", "simulate a scenario and write its paths");
    add_common(sim, sim_a);
    sim->add_option("--scenario", scenario, "nojump | jump-positive | jump-negative | delay")->capture_default_str();
    sim->add_flag("--unconstrained", sim_unconstrained, "allow negative production");
    auto* verify = app.add_subcommand("verify", "run the verification checks");
    add_common(verify, verify_a);
    auto* bound = app.add_subcommand("errorbound", "approximation error bounds for the configured state");
    add_common(bound, bound_a);
    bound->add_option("--delay-hours", bound_h, "also report the bound with this delay");
    auto* delay = app.add_subcommand("delay", "delayed production decision report");
    add_common(delay, delay_a);
    delay->add_option("--delay-hours", delay_h, "delay in hours (overrides the config)");
    delay->add_flag("--unconstrained", delay_unconstrained, "allow negative production");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kValidationError;
    }

    try {
        if (tables->parsed()) return cmd_tables(tables_a, out);
        if (sim->parsed()) return cmd_simulate(sim_a, scenario, sim_unconstrained, out);
        if (verify->parsed()) return cmd_verify(verify_a, hooks, out);
        if (bound->parsed()) return cmd_errorbound(bound_a, bound_h, out);
        if (delay->parsed()) return cmd_delay(delay_a, delay_h, delay_unconstrained, out);
    } catch (const ParamError& e) {
        err << "error: " << e.what() << "\n";
        return kValidationError;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "I/O error: " << e.what() << "\n";
        return kIoFailure;
    }
    return kValidationError;
}

} // namespace intraday
