#include "intraday/model.hpp"

#include <cmath>

namespace intraday {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ParamError(what);
}

bool finite(double v) { return std::isfinite(v); }

double production_share(const ModelParams& p) {
    require(!p.pure_trader, "production rule requested for a pure trader");
    return p.eta / (p.eta + p.beta);
}

} // namespace

void validate(const ModelParams& p) {
    require(finite(p.sigma0) && p.sigma0 > 0, "sigma0 must be positive");
    require(finite(p.sigma_d) && p.sigma_d > 0, "sigma_d must be positive");
    require(p.pure_trader || (finite(p.beta) && p.beta > 0), "beta must be positive");
    require(finite(p.eta) && p.eta > 0, "eta must be positive");
    require(finite(p.mu), "mu must be finite");
    require(finite(p.nu) && p.nu >= 0, "nu must be nonnegative");
    require(finite(p.gamma) && p.gamma > 0, "gamma must be positive");
    require(finite(p.rho) && p.rho >= -1 && p.rho <= 1, "rho must lie in [-1, 1]");
    require(finite(p.horizon) && p.horizon > 0, "horizon must be positive");
}

void validate(const JumpParams& j) {
    require(finite(j.lambda) && j.lambda >= 0, "jump lambda must be nonnegative");
    require(j.p_plus >= 0 && j.p_plus <= 1, "p_plus must lie in [0, 1]");
    require(finite(j.delta_plus) && j.delta_plus > 0, "delta_plus must be positive");
    require(finite(j.delta_minus) && j.delta_minus < 0, "delta_minus must be negative");
    require(finite(j.pi_plus) && j.pi_plus > 0, "pi_plus must be positive");
    require(finite(j.pi_minus) && j.pi_minus < 0, "pi_minus must be negative");
}

void validate(const MarketState& s, const ModelParams& p) {
    require(s.t >= 0 && s.t <= p.horizon, "state time outside [0, horizon]");
    require(finite(s.x) && finite(s.y) && finite(s.d), "state must be finite");
}

ModelParams as_pure_trader(ModelParams p) {
    p.pure_trader = true;
    return p;
}

double reduced_cost_coefficient(const ModelParams& p) {
    if (p.pure_trader) return p.eta;
    return p.eta * p.beta / (p.eta + p.beta);
}

double terminal_cost(double spread, double xi, const ModelParams& p) {
    if (p.pure_trader) {
        require(xi == 0.0, "pure trader cannot produce");
        return 0.5 * p.eta * spread * spread;
    }
    const double imbalance = spread - xi;
    return 0.5 * p.beta * xi * xi + 0.5 * p.eta * imbalance * imbalance;
}

double optimal_production_constrained(double spread, const ModelParams& p) {
    return spread >= 0 ? production_share(p) * spread : 0.0;
}

double optimal_production_unconstrained(double spread, const ModelParams& p) {
    return production_share(p) * spread;
}

double cost_after_production(double spread, const ModelParams& p, bool constrained) {
    const double sq = spread * spread;
    if (constrained && spread < 0) return 0.5 * p.eta * sq;
    return 0.5 * reduced_cost_coefficient(p) * sq;
}

} // namespace intraday
