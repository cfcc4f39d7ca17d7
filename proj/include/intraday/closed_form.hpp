#pragma once

#include "intraday/model.hpp"

namespace intraday {

// Quadratic-form coefficients of the value function at time-to-go tau:
// v = a s^2 + b y^2 + f s y + g s + h y + k with s = d - x.
struct CoefficientSet {
    double a = 0, b = 0, f = 0, g = 0, h = 0, k = 0;

    double evaluate(double spread, double y) const {
        return a * spread * spread + b * y * y + f * spread * y + g * spread + h * y + k;
    }
};

struct JumpCoefficientSet {
    CoefficientSet base;
    double g_lambda = 0, h_lambda = 0, k_lambda = 0;

    CoefficientSet combined() const {
        return {base.a, base.b, base.f, g_lambda, h_lambda, k_lambda};
    }
};

// (r+nu) tau + 2 gamma, the denominator shared by every closed form.
double rate_denominator(double tau, const ModelParams& p);

CoefficientSet riccati_coefficients(double tau, const ModelParams& p);
double value_aux(const MarketState& s, const ModelParams& p);
double feedback_rate(double tau, double spread, double y, const ModelParams& p);

double value_pure_trader(const MarketState& s, const ModelParams& p);
double feedback_rate_pure_trader(double tau, double spread, double y, const ModelParams& p);

struct ForecastEquilibrium {
    double lhs = 0;
    double rhs = 0;
    double forecast_production = 0;
};
ForecastEquilibrium forecast_equilibrium(double tau, const MarketState& s, const ModelParams& p);

JumpCoefficientSet jump_riccati_coefficients(double tau, const ModelParams& p, const JumpParams& j);
double value_aux_jump(const MarketState& s, const ModelParams& p, const JumpParams& j);

double feedback_rate_jump(double tau, double spread, double y, const ModelParams& p,
                          const JumpParams& j);
// The two equivalent algebraic forms, exposed for cross-checking.
double feedback_rate_jump_additive(double tau, double spread, double y, const ModelParams& p,
                                   const JumpParams& j);
double feedback_rate_jump_shifted(double tau, double spread, double y, const ModelParams& p,
                                  const JumpParams& j);

enum class RateTrend {
    RisesThenFalls,   // pi > 0, turning time inside the horizon
    FallsThenRises,   // pi < 0, turning time inside the horizon
    IncreasingThroughout,
    DecreasingThroughout,
};

struct TurningTime {
    double time = 0;    // absolute time, may fall outside [t, T]
    RateTrend trend{};
    const char* label() const;
};

// Time at which the expected jump-case rate crosses zero, seen from state s.
TurningTime expected_rate_turning_time(const MarketState& s, const ModelParams& p,
                                       const JumpParams& j);

} // namespace intraday
