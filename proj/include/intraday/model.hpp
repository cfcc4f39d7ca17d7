#pragma once

#include <stdexcept>
#include <string>

namespace intraday {

// Raised for any parameter or argument outside its documented domain.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// File system failures, reported with the path involved.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All quantities in seconds / MW / EUR.
struct ModelParams {
    double sigma0 = 1.0 / 60.0;     // EUR / MW / sqrt(s)
    double sigma_d = 1000.0 / 60.0; // MW / sqrt(s)
    double beta = 0.002;            // ignored when pure_trader is set
    bool pure_trader = false;
    double eta = 100.0;
    double mu = 0.0;   // MW / s
    double nu = 4e-5;  // permanent impact
    double gamma = 2.22;
    double rho = 0.8;
    double horizon = 86400.0;
};

struct JumpParams {
    double lambda = 0.0; // per second
    double p_plus = 1.0;
    double delta_plus = 1.0;
    double delta_minus = -1.0;
    double pi_plus = 1.0;
    double pi_minus = -1.0;

    double p_minus() const { return 1.0 - p_plus; }
    double delta() const { return p_plus * delta_plus + p_minus() * delta_minus; }
    double pi() const { return p_plus * pi_plus + p_minus() * pi_minus; }
    double delta_sq() const {
        return p_plus * delta_plus * delta_plus + p_minus() * delta_minus * delta_minus;
    }
    double pi_sq() const { return p_plus * pi_plus * pi_plus + p_minus() * pi_minus * pi_minus; }
    double delta_pi() const {
        return p_plus * delta_plus * pi_plus + p_minus() * delta_minus * pi_minus;
    }
};

struct MarketState {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double d = 0.0;

    double spread() const { return d - x; }
};

void validate(const ModelParams& p);
void validate(const JumpParams& j);
void validate(const MarketState& s, const ModelParams& p);

// Params with the production option removed (beta -> infinity).
ModelParams as_pure_trader(ModelParams p);

double reduced_cost_coefficient(const ModelParams& p);

double terminal_cost(double spread, double xi, const ModelParams& p);
double optimal_production_constrained(double spread, const ModelParams& p);
double optimal_production_unconstrained(double spread, const ModelParams& p);
double cost_after_production(double spread, const ModelParams& p, bool constrained);

} // namespace intraday
