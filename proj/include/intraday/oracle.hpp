#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "intraday/closed_form.hpp"
#include "intraday/model.hpp"
#include "intraday/policy.hpp"
#include "intraday/simulate.hpp"

namespace intraday {

// Coefficient order: A, B, F, G, H, K (G, H, K carry the jump terms when
// the jump system is integrated).
using Coefficients = std::array<double, 6>;

struct OdeSolution {
    std::vector<double> tau;
    std::vector<Coefficients> values;
    double step = 0;       // step in the integration variable
    bool log_time = false; // integrated in u = log(1 + tau / c)
    bool stable = true;    // false when a coefficient stopped being finite
};

enum class TimeScaling { Uniform, Logarithmic };

OdeSolution integrate_riccati(const ModelParams& p, double tau_max, double step);
OdeSolution integrate_jump_riccati(const ModelParams& p, const JumpParams& j, double tau_max, double step);
// Node-count form. The logarithmic variable u = log(1 + tau / c), with c the
// feedback time scale, packs nodes near tau = 0 where the coefficients bend;
// with uniform steps the first few nodes dominate the relative error.
OdeSolution integrate_riccati_nodes(const ModelParams& p, const JumpParams& j, double tau_max,
                                    std::size_t steps, TimeScaling scaling = TimeScaling::Logarithmic);

using CoefficientProvider = std::function<Coefficients(double tau, const ModelParams&, const JumpParams&)>;
Coefficients closed_form_coefficients(double tau, const ModelParams& p, const JumpParams& j);

struct OdeComparison {
    double max_rel_error = 0;
    std::array<double, 6> per_coefficient{};
    std::size_t worst_node = 0;
};

// Relative error per node; exact zeros are compared against 1e-12 of the
// coefficient's largest magnitude on the grid.
OdeComparison compare_with_closed_form(const OdeSolution& sol, const ModelParams& p, const JumpParams& j,
                                       const CoefficientProvider& provider = closed_form_coefficients);

// Adaptive Gauss-Kronrod integral of the spread variance density on [lo, hi].
double quadrature_variance(double lo, double hi, const ModelParams& p, double rel_tol = 1e-12);

struct ProbeEntry {
    std::string profile;
    double epsilon = 0;
    double diff = 0;          // mean J(perturbed) - J(base)
    double diff_stderr = 0;
    double diff_double = 0;   // same at 2 epsilon
    double diff_double_stderr = 0;
    double ratio() const { return diff_double / diff; }
};

struct ProbeReport {
    std::vector<ProbeEntry> entries;
    std::size_t n_paths = 0;
};

// Bump profiles: constant, first third of the horizon, last third.
ProbeReport optimality_probe(const ModelParams& p, const JumpParams& j, const Policy& base,
                             const MarketState& initial, double perturbation_scale, std::size_t n_paths,
                             std::uint64_t seed, double dt = 60.0);

struct Check {
    std::string name;
    bool passed = false;
    double value = 0;
    double tolerance = 0;
    std::string detail;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool passed() const;
    std::string to_text() const;
    std::string to_json() const;
};

struct VerifyOptions {
    std::size_t ode_steps = 10000;
    std::size_t mc_paths = 4000;
    double dt = 60.0;
    std::uint64_t seed = 20240601;
    CoefficientProvider coefficients = closed_form_coefficients;
};

VerificationReport run_verification(const ModelParams& p, const JumpParams& j, const MarketState& initial,
                                    const VerifyOptions& opt = {});

} // namespace intraday
