#include "intraday/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "intraday/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace intraday {

namespace {

enum StreamId : std::uint32_t { kPriceNoise = 0, kDemandNoise = 1, kJumpTimes = 2, kJumpSigns = 3 };

void check_options(const ModelParams& p, const JumpParams& j, const SimOptions& opt) {
    validate(p);
    validate(j);
    if (!(opt.dt > 0)) throw ParamError("dt must be positive");
    if (opt.n_paths < 1) throw ParamError("need at least one path");
    if (opt.refine_fraction < 0 || opt.refine_fraction >= 1) throw ParamError("refine_fraction must lie in [0, 1)");
    const double steps = p.horizon / opt.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
        throw ParamError("dt must divide the horizon");
    if (j.lambda > 0 && opt.dt > opt.max_jump_dt && !opt.allow_coarse_jump_grid)
        throw ParamError("dt above the jump placement threshold; set the coarse-grid override to proceed");
}

// Time-weighted regression weights: slope = sum_k w_k q_k over the step nodes.
std::vector<double> slope_weights(const TimeGrid& g) {
    const std::size_t n = g.steps();
    double total = 0, mean_t = 0;
    for (std::size_t k = 0; k < n; ++k) {
        total += g.step(k);
        mean_t += g.step(k) * g.time[k];
    }
    mean_t /= total;
    double sxx = 0;
    for (std::size_t k = 0; k < n; ++k) sxx += g.step(k) * (g.time[k] - mean_t) * (g.time[k] - mean_t);
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = g.step(k) * (g.time[k] - mean_t) / sxx;
    return w;
}

struct Trajectory {
    double cost = 0;
    double xi = 0;
    double x_decision = 0;
    int jump_count = 0;
};

// One Euler path. The recorder sees every node with the rate applied on the
// following step; the same code serves full and summary output.
template <class Recorder>
Trajectory run_path(std::size_t path, const ModelParams& p, const JumpParams& j, const Policy& policy,
                    const TimeGrid& g, const MarketState& initial, std::uint64_t seed, Recorder& rec) {
    Stream price_noise(seed, path, kPriceNoise);
    Stream demand_noise(seed, path, kDemandNoise);
    Stream jump_times(seed, path, kJumpTimes);
    Stream jump_signs(seed, path, kJumpSigns);

    const double t0 = g.time.front();
    double next_jump = j.lambda > 0 ? t0 + jump_times.exponential(j.lambda)
                                    : std::numeric_limits<double>::infinity();
    const double orth = std::sqrt(std::max(0.0, 1.0 - p.rho * p.rho));

    double x = initial.x, y = initial.y, d = initial.d, ph = initial.y;
    Trajectory out;
    bool decided = false;
    int flag = 0;
    const std::size_t n = g.steps();

    for (std::size_t k = 0;; ++k) {
        const double tau = g.tau[k];
        const double t = g.time[k];
        if (!decided && !g.decision_at_end && k == g.decision_node) {
            out.xi = policy.production(tau, MarketState{t, x, y, d});
            out.x_decision = x;
            decided = true;
        }
        double q;
        if (decided && policy.rate_after)
            q = policy.rate_after(tau, MarketState{t, x + out.xi, y, d});
        else
            q = policy.rate(tau, MarketState{t, x, y, d});
        rec.node(k, x, y, d, ph, q, flag);
        if (k == n) break;

        const double dt = g.step(k);
        const double sq = std::sqrt(dt);
        const double dw = sq * price_noise.normal();
        const double dw_perp = sq * demand_noise.normal();
        const double db = p.rho * dw + orth * dw_perp;

        out.cost += q * (y + p.gamma * q) * dt;
        x += q * dt;
        y += p.nu * q * dt + p.sigma0 * dw;
        ph += p.sigma0 * dw;
        d += p.mu * dt + p.sigma_d * db;

        flag = 0;
        const double t_next = g.time[k + 1];
        while (next_jump <= t_next) {
            const bool up = jump_signs.uniform() < j.p_plus;
            const double dd = up ? j.delta_plus : j.delta_minus;
            const double dp = up ? j.pi_plus : j.pi_minus;
            d += dd;
            y += dp;
            ph += dp;
            flag += up ? 1 : -1;
            ++out.jump_count;
            rec.jump(next_jump, up ? 1 : -1);
            next_jump += jump_times.exponential(j.lambda);
        }
    }

    if (!decided) {
        out.xi = policy.production(0.0, MarketState{g.time[n], x, y, d});
        out.x_decision = x;
    }
    out.cost += terminal_cost(d - x, out.xi, p);
    rec.finish(x, y, d);
    return out;
}

struct FullRecorder {
    PathSet& ps;
    std::size_t path;

    void node(std::size_t k, double x, double y, double d, double ph, double q, int flag) {
        const std::size_t i = ps.at(path, k);
        ps.x[i] = x;
        ps.y[i] = y;
        ps.d[i] = d;
        ps.p_hat[i] = ph;
        ps.q[i] = q;
        ps.jump_flag[i] = static_cast<std::int8_t>(std::clamp(flag, -127, 127));
    }
    void jump(double t, int sign) { ps.jumps[path].push_back({t, sign}); }
    void finish(double, double, double) {}
};

struct SummaryRecorder {
    const std::vector<double>& weights;
    PathSummary& s;

    void node(std::size_t k, double, double, double, double, double q, int) {
        if (k == 0) s.q_start = q;
        if (k < weights.size()) s.q_slope += weights[k] * q;
    }
    void jump(double, int) {}
    void finish(double x, double y, double d) {
        s.x_end = x;
        s.y_end = y;
        s.d_end = d;
    }
};

PathSet allocate(const TimeGrid& g, std::size_t n_paths) {
    PathSet ps;
    ps.grid = g;
    ps.n_paths = n_paths;
    const std::size_t total = n_paths * g.tau.size();
    ps.x.resize(total);
    ps.y.resize(total);
    ps.d.resize(total);
    ps.p_hat.resize(total);
    ps.q.resize(total);
    ps.jump_flag.resize(total);
    ps.jumps.resize(n_paths);
    ps.xi.resize(n_paths);
    ps.cost.resize(n_paths);
    return ps;
}

void fill_path(PathSet& ps, std::size_t i, const ModelParams& p, const JumpParams& j, const Policy& pol,
               const MarketState& init, std::uint64_t seed) {
    FullRecorder rec{ps, i};
    const Trajectory tr = run_path(i, p, j, pol, ps.grid, init, seed, rec);
    ps.xi[i] = tr.xi;
    ps.cost[i] = tr.cost;
}

void fill_summary(PathSummary& s, std::size_t i, const std::vector<double>& w, const ModelParams& p,
                  const JumpParams& j, const Policy& pol, const TimeGrid& g, const MarketState& init,
                  std::uint64_t seed) {
    SummaryRecorder rec{w, s};
    const Trajectory tr = run_path(i, p, j, pol, g, init, seed, rec);
    s.cost = tr.cost;
    s.xi = tr.xi;
    s.x_decision = tr.x_decision;
    s.jump_count = tr.jump_count;
}

TimeGrid grid_for(const ModelParams& p, const JumpParams& j, const Policy& policy,
                  const MarketState& initial, const SimOptions& opt) {
    check_options(p, j, opt);
    validate(initial, p);
    if (initial.t != 0.0) throw ParamError("simulation starts at t = 0");
    return build_grid(p, policy, opt);
}

int worker_count(const SimOptions& opt) {
    if (opt.workers > 0) return opt.workers;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace

TimeGrid build_grid(const ModelParams& p, const Policy& policy, const SimOptions& opt) {
    const double horizon = p.horizon;
    const double dt = opt.dt;
    const auto n_uniform = static_cast<std::size_t>(std::llround(horizon / dt));

    // Time-to-go nodes in increasing order, starting at delivery.
    std::vector<double> u{0.0};
    const double react = policy.reaction_after;
    if (opt.refine_fraction > 0 && react > 0) {
        for (;;) {
            const double step = opt.refine_fraction * (u.back() + react);
            if (step >= dt) break;
            u.push_back(u.back() + step);
        }
    }
    while (u.size() > 1 && u.back() >= horizon) u.pop_back();
    std::size_t m = static_cast<std::size_t>(std::floor(u.back() / dt)) + 1;
    if (double(m) * dt - u.back() < 1e-6 * dt) ++m;
    for (; m < n_uniform; ++m) u.push_back(double(m) * dt);
    u.push_back(horizon);

    TimeGrid g;
    const double h = horizon - policy.production_time;
    g.decision_at_end = !(h > 0);
    if (!g.decision_at_end) {
        const double tol = 1e-9 * dt;
        auto it = std::lower_bound(u.begin(), u.end(), h - tol);
        if (it == u.end() || std::abs(*it - h) > tol) u.insert(it, h);
        else *it = h;
    }

    g.tau.assign(u.rbegin(), u.rend());
    g.time.resize(g.tau.size());
    for (std::size_t k = 0; k < g.tau.size(); ++k) g.time[k] = horizon - g.tau[k];
    g.time.front() = 0.0;
    g.time.back() = horizon;
    if (!g.decision_at_end) {
        const auto it = std::find(g.tau.begin(), g.tau.end(), h);
        g.decision_node = static_cast<std::size_t>(it - g.tau.begin());
    } else {
        g.decision_node = g.steps();
    }
    return g;
}

PathSet sample_paths(const ModelParams& p, const JumpParams& j, const Policy& policy,
                     const MarketState& initial, const SimOptions& opt) {
    PathSet ps = allocate(grid_for(p, j, policy, initial, opt), opt.n_paths);
    const auto n = static_cast<std::int64_t>(opt.n_paths);
    const int workers = worker_count(opt);
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers) if (workers > 1)
    for (std::int64_t i = 0; i < n; ++i) fill_path(ps, std::size_t(i), p, j, policy, initial, opt.seed);
    return ps;
}

PathSet sample_paths_serial(const ModelParams& p, const JumpParams& j, const Policy& policy,
                            const MarketState& initial, const SimOptions& opt) {
    PathSet ps = allocate(grid_for(p, j, policy, initial, opt), opt.n_paths);
    for (std::size_t i = 0; i < opt.n_paths; ++i) fill_path(ps, i, p, j, policy, initial, opt.seed);
    return ps;
}

std::vector<PathSummary> simulate_summaries(const ModelParams& p, const JumpParams& j,
                                            const Policy& policy, const MarketState& initial,
                                            const SimOptions& opt) {
    const TimeGrid g = grid_for(p, j, policy, initial, opt);
    const std::vector<double> w = slope_weights(g);
    std::vector<PathSummary> out(opt.n_paths);
    const auto n = static_cast<std::int64_t>(opt.n_paths);
    const int workers = worker_count(opt);
#pragma omp parallel for schedule(dynamic, 64) num_threads(workers) if (workers > 1)
    for (std::int64_t i = 0; i < n; ++i)
        fill_summary(out[std::size_t(i)], std::size_t(i), w, p, j, policy, g, initial, opt.seed);
    return out;
}

std::vector<PathSummary> simulate_summaries_serial(const ModelParams& p, const JumpParams& j,
                                                   const Policy& policy, const MarketState& initial,
                                                   const SimOptions& opt) {
    const TimeGrid g = grid_for(p, j, policy, initial, opt);
    const std::vector<double> w = slope_weights(g);
    std::vector<PathSummary> out(opt.n_paths);
    for (std::size_t i = 0; i < opt.n_paths; ++i) fill_summary(out[i], i, w, p, j, policy, g, initial, opt.seed);
    return out;
}

CostEstimate mean_estimate(const std::vector<double>& samples) {
    CostEstimate out;
    out.n_paths = samples.size();
    if (samples.empty()) return out;
    double sum = 0;
    for (double v : samples) sum += v;
    const double n = double(samples.size());
    out.mean = sum / n;
    // Two passes: the raw second moment cancels badly for costs near 2e6.
    double ss = 0;
    for (double v : samples) ss += (v - out.mean) * (v - out.mean);
    out.std_error = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return out;
}

CostEstimate estimate_cost(const PathSet& paths, const ModelParams& p) {
    std::vector<double> costs(paths.n_paths);
    const TimeGrid& g = paths.grid;
    const std::size_t n = g.steps();
    for (std::size_t i = 0; i < paths.n_paths; ++i) {
        double c = 0;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t a = paths.at(i, k);
            c += paths.q[a] * (paths.y[a] + p.gamma * paths.q[a]) * g.step(k);
        }
        const std::size_t e = paths.at(i, n);
        costs[i] = c + terminal_cost(paths.d[e] - paths.x[e], paths.xi[i], p);
    }
    return mean_estimate(costs);
}

CostEstimate estimate_cost(const std::vector<PathSummary>& summaries) {
    std::vector<double> costs(summaries.size());
    for (std::size_t i = 0; i < summaries.size(); ++i) costs[i] = summaries[i].cost;
    return mean_estimate(costs);
}

namespace {

DriftEstimate drift_from_slopes(const std::vector<double>& slopes, const ModelParams& p,
                                const JumpParams& j, double z) {
    const CostEstimate e = mean_estimate(slopes);
    DriftEstimate out;
    out.slope = e.mean;
    out.std_error = e.std_error;
    out.low = e.mean - z * e.std_error;
    out.high = e.mean + z * e.std_error;
    out.expected = -j.lambda * j.pi() / (2.0 * p.gamma);
    return out;
}

} // namespace

DriftEstimate martingale_diagnostics(const PathSet& paths, const ModelParams& p, const JumpParams& j,
                                     double z) {
    const std::vector<double> w = slope_weights(paths.grid);
    std::vector<double> slopes(paths.n_paths, 0.0);
    for (std::size_t i = 0; i < paths.n_paths; ++i)
        for (std::size_t k = 0; k < w.size(); ++k) slopes[i] += w[k] * paths.q[paths.at(i, k)];
    return drift_from_slopes(slopes, p, j, z);
}

DriftEstimate martingale_diagnostics(const std::vector<PathSummary>& summaries, const ModelParams& p,
                                     const JumpParams& j, double z) {
    std::vector<double> slopes(summaries.size());
    for (std::size_t i = 0; i < summaries.size(); ++i) slopes[i] = summaries[i].q_slope;
    return drift_from_slopes(slopes, p, j, z);
}

namespace {

void append_number(std::string& line, double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, res.ptr);
}

void append_number(std::string& line, long long v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    line.append(buf, res.ptr);
}

template <class T>
T parse_field(std::string_view field, const std::filesystem::path& src, std::size_t line_no) {
    T v{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        std::ostringstream msg;
        msg << src.string() << ":" << line_no << ": bad field '" << field << "'";
        throw IoError(msg.str());
    }
    return v;
}

constexpr const char* kHeader = "time_s,path_id,X,Y,D,P_hat,q,jump_flag,xi_at_decision";

} // namespace

void export_csv(const PathSet& paths, const std::filesystem::path& destination) {
    std::ofstream out(destination, std::ios::binary);
    if (!out) throw IoError("cannot open " + destination.string() + " for writing");
    out << kHeader << '\n';
    const TimeGrid& g = paths.grid;
    const std::size_t decision = g.decision_at_end ? g.steps() : g.decision_node;
    std::string line;
    for (std::size_t i = 0; i < paths.n_paths; ++i) {
        for (std::size_t k = 0; k < paths.nodes(); ++k) {
            const std::size_t a = paths.at(i, k);
            line.clear();
            append_number(line, g.time[k]);
            line += ',';
            append_number(line, static_cast<long long>(i));
            for (double v : {paths.x[a], paths.y[a], paths.d[a], paths.p_hat[a], paths.q[a]}) {
                line += ',';
                append_number(line, v);
            }
            line += ',';
            append_number(line, static_cast<long long>(paths.jump_flag[a]));
            line += ',';
            if (k == decision) append_number(line, paths.xi[i]);
            line += '\n';
            out << line;
        }
    }
    out.flush();
    if (!out) throw IoError("write failed for " + destination.string());
}

PathSet read_csv(const std::filesystem::path& source, double horizon) {
    std::ifstream in(source, std::ios::binary);
    if (!in) throw IoError("cannot open " + source.string() + " for reading");
    std::string line;
    if (!std::getline(in, line) || line != kHeader) throw IoError(source.string() + ": unexpected header");

    PathSet ps;
    std::vector<double> times;
    std::size_t line_no = 1;
    long long current = -1;
    std::vector<std::size_t> decision_nodes;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        for (;;) {
            const auto pos = rest.find(',');
            f.push_back(rest.substr(0, pos));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        if (f.size() != 9) throw IoError(source.string() + ":" + std::to_string(line_no) + ": expected 9 fields");
        const double t = parse_field<double>(f[0], source, line_no);
        const long long path = parse_field<long long>(f[1], source, line_no);
        if (path != current) {
            if (path != current + 1) throw IoError(source.string() + ": paths out of order");
            current = path;
            ps.xi.push_back(0.0);
            decision_nodes.push_back(std::numeric_limits<std::size_t>::max());
        }
        if (path == 0) times.push_back(t);
        const std::size_t node = ps.x.size() - std::size_t(path) * times.size();
        ps.x.push_back(parse_field<double>(f[2], source, line_no));
        ps.y.push_back(parse_field<double>(f[3], source, line_no));
        ps.d.push_back(parse_field<double>(f[4], source, line_no));
        ps.p_hat.push_back(parse_field<double>(f[5], source, line_no));
        ps.q.push_back(parse_field<double>(f[6], source, line_no));
        ps.jump_flag.push_back(static_cast<std::int8_t>(parse_field<int>(f[7], source, line_no)));
        if (!f[8].empty()) {
            ps.xi.back() = parse_field<double>(f[8], source, line_no);
            decision_nodes.back() = node;
        }
    }
    ps.n_paths = std::size_t(current + 1);
    if (ps.n_paths == 0 || ps.x.size() != ps.n_paths * times.size())
        throw IoError(source.string() + ": ragged or empty path data");
    ps.grid.time = times;
    ps.grid.tau.resize(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) ps.grid.tau[k] = horizon - times[k];
    ps.grid.decision_node = decision_nodes.front();
    ps.grid.decision_at_end = ps.grid.decision_node + 1 >= times.size();
    ps.jumps.resize(ps.n_paths);
    ps.cost.assign(ps.n_paths, std::numeric_limits<double>::quiet_NaN());
    return ps;
}

} // namespace intraday
