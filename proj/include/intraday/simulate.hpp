#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "intraday/model.hpp"
#include "intraday/policy.hpp"

namespace intraday {

struct SimOptions {
    std::size_t n_paths = 1;
    double dt = 60.0;
    std::uint64_t seed = 20240601;
    // Near delivery the feedback rules react on a time scale far below dt.
    // Steps are capped at refine_fraction * (tau + reaction time); 0 keeps
    // the uniform grid.
    double refine_fraction = 0.05;
    // Jump placement degrades on coarse grids; dt above this needs the override.
    double max_jump_dt = 60.0;
    bool allow_coarse_jump_grid = false;
    int workers = 0; // 0: OpenMP default
};

struct TimeGrid {
    std::vector<double> tau;  // time-to-go, strictly decreasing to 0
    std::vector<double> time; // horizon - tau
    std::size_t decision_node = 0;
    bool decision_at_end = true;

    std::size_t steps() const { return tau.size() - 1; }
    double step(std::size_t k) const { return tau[k] - tau[k + 1]; }
};

TimeGrid build_grid(const ModelParams& p, const Policy& policy, const SimOptions& opt);

struct JumpMark {
    double time = 0;
    int sign = 0;
};

struct PathSet {
    TimeGrid grid;
    std::size_t n_paths = 0;
    // Row-major [path][node], grid.tau.size() entries per path.
    std::vector<double> x, y, d, p_hat, q;
    std::vector<std::int8_t> jump_flag;
    std::vector<std::vector<JumpMark>> jumps;
    std::vector<double> xi;
    std::vector<double> cost;

    std::size_t nodes() const { return grid.tau.size(); }
    std::size_t at(std::size_t path, std::size_t node) const { return path * nodes() + node; }
};

// Per-path reduction used when storing full trajectories is too costly.
struct PathSummary {
    double cost = 0;
    double x_end = 0;
    double y_end = 0;
    double d_end = 0;
    double xi = 0;
    double x_decision = 0; // trading inventory at the decision node
    double q_start = 0;
    double q_slope = 0;    // time-weighted least-squares slope of q against time
    int jump_count = 0;
};

PathSet sample_paths(const ModelParams& p, const JumpParams& j, const Policy& policy,
                     const MarketState& initial, const SimOptions& opt);
std::vector<PathSummary> simulate_summaries(const ModelParams& p, const JumpParams& j,
                                            const Policy& policy, const MarketState& initial,
                                            const SimOptions& opt);

// Single-threaded reference versions; identical output by construction.
PathSet sample_paths_serial(const ModelParams& p, const JumpParams& j, const Policy& policy,
                            const MarketState& initial, const SimOptions& opt);
std::vector<PathSummary> simulate_summaries_serial(const ModelParams& p, const JumpParams& j,
                                                   const Policy& policy, const MarketState& initial,
                                                   const SimOptions& opt);

struct CostEstimate {
    double mean = 0;
    double std_error = 0;
    std::size_t n_paths = 0;
};

CostEstimate estimate_cost(const PathSet& paths, const ModelParams& p);
CostEstimate estimate_cost(const std::vector<PathSummary>& summaries);
CostEstimate mean_estimate(const std::vector<double>& samples);

struct DriftEstimate {
    double slope = 0;  // MW / s^2
    double std_error = 0;
    double low = 0;
    double high = 0;
    double expected = 0; // theoretical drift of the optimal rate
    bool contains(double v) const { return low <= v && v <= high; }
};

DriftEstimate martingale_diagnostics(const PathSet& paths, const ModelParams& p, const JumpParams& j,
                                     double z = 3.0);
DriftEstimate martingale_diagnostics(const std::vector<PathSummary>& summaries, const ModelParams& p,
                                     const JumpParams& j, double z = 3.0);

void export_csv(const PathSet& paths, const std::filesystem::path& destination);
// Reads back an exported file; the result carries grid times, arrays,
// jump flags and decision values but no per-path cost.
PathSet read_csv(const std::filesystem::path& source, double horizon);

} // namespace intraday
