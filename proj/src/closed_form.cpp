#include "intraday/closed_form.hpp"

#include <cassert>
#include <cmath>

namespace intraday {

double rate_denominator(double tau, const ModelParams& p) {
    return (reduced_cost_coefficient(p) + p.nu) * tau + 2.0 * p.gamma;
}

CoefficientSet riccati_coefficients(double tau, const ModelParams& p) {
    const double r = reduced_cost_coefficient(p);
    const double rn = r + p.nu;
    const double den = rn * tau + 2.0 * p.gamma;
    const double s0 = p.sigma0, sd = p.sigma_d, rho = p.rho;

    CoefficientSet c;
    c.a = r * (0.5 * p.nu * tau + p.gamma) / den;
    c.b = -tau / (2.0 * den);
    c.f = r * tau / den;
    c.g = 2.0 * p.mu * tau * c.a;
    c.h = -2.0 * r * p.mu * tau * c.b;

    // log1p keeps the logarithmic term accurate when gamma is tiny relative to r*tau.
    const double log_term = std::log1p(rn * tau / (2.0 * p.gamma));
    const double q_mix = s0 * s0 + sd * sd * r * r - 2.0 * rho * s0 * sd * r;
    c.k = p.gamma * q_mix / (rn * rn) * log_term
        + (sd * sd * r * p.nu + 2.0 * rho * s0 * sd * r - s0 * s0) / (2.0 * rn) * tau
        + r * p.mu * p.mu * tau * tau * (0.5 * p.nu * tau + p.gamma) / den;
    return c;
}

double value_aux(const MarketState& s, const ModelParams& p) {
    return riccati_coefficients(p.horizon - s.t, p).evaluate(s.spread(), s.y);
}

double feedback_rate(double tau, double spread, double y, const ModelParams& p) {
    const double r = reduced_cost_coefficient(p);
    return (r * (p.mu * tau + spread) - y) / rate_denominator(tau, p);
}

double value_pure_trader(const MarketState& s, const ModelParams& p) {
    return value_aux(s, as_pure_trader(p));
}

double feedback_rate_pure_trader(double tau, double spread, double y, const ModelParams& p) {
    return feedback_rate(tau, spread, y, as_pure_trader(p));
}

ForecastEquilibrium forecast_equilibrium(double tau, const MarketState& s, const ModelParams& p) {
    if (p.pure_trader) throw ParamError("forecast equilibrium needs a finite beta");
    const double q = feedback_rate(tau, s.spread(), s.y, p);
    ForecastEquilibrium out;
    out.lhs = s.y + p.nu * q * tau + 2.0 * p.gamma * q;
    out.forecast_production = p.eta / (p.eta + p.beta) * (s.d + p.mu * tau - s.x - q * tau);
    out.rhs = p.beta * out.forecast_production;
    return out;
}

JumpCoefficientSet jump_riccati_coefficients(double tau, const ModelParams& p, const JumpParams& j) {
    JumpCoefficientSet out;
    out.base = riccati_coefficients(tau, p);
    out.g_lambda = out.base.g;
    out.h_lambda = out.base.h;
    out.k_lambda = out.base.k;
    const double lam = j.lambda;
    if (lam == 0.0) return out;

    const double r = reduced_cost_coefficient(p);
    const double nu = p.nu, g = p.gamma, mu = p.mu, t = tau;
    const double rn = r + nu;
    const double den = rn * t + 2.0 * g;
    const double pp = j.p_plus, pm = j.p_minus();
    const double dp = j.delta_plus, dm = j.delta_minus;
    const double ip = j.pi_plus, im = j.pi_minus;
    const double de = j.delta(), pi = j.pi();
    const double t2 = t * t, t3 = t2 * t;

    out.g_lambda += 0.5 * lam * r * t * (pi * t + 2.0 * de * (nu * t + 2.0 * g)) / den;
    out.h_lambda -= 0.5 * lam * (pi - 2.0 * r * de) * t2 / den;

    const double log_term = std::log1p(rn * t / (2.0 * g));
    const double sq_p = ip - r * dp, sq_m = im - r * dm;
    double k = lam * g * (pp * sq_p * sq_p + pm * sq_m * sq_m) / (rn * rn) * log_term;
    k -= 0.5 * lam
        * (pp * (ip * ip - r * dp * (2.0 * ip + nu * dp)) + pm * (im * im - r * dm * (2.0 * im + nu * dm)))
        / rn * t;
    k += 0.5 * lam * r
        * (2.0 * nu * mu * de + lam * (pp * pp * dp * (ip + nu * dp) + pm * pm * dm * (im + nu * dm)))
        / rn * t2;
    k += lam * lam * g * r
        * (r * de * de + 2.0 * nu * pp * pm * dp * dm - (pp * pp * dp * ip + pm * pm * dm * im))
        / (rn * den) * t2;
    k += 2.0 * lam * g * r * r * mu * de / (rn * den) * t2;
    k -= lam * lam * pi * pi / (48.0 * g) * t3;
    k += 0.5 * lam * lam * pp * pm * r * (2.0 * nu * dp * dm + dm * ip + dp * im) / den * t3;
    k += (4.0 * r * mu * lam * pi - lam * lam * pi * pi) / (8.0 * den) * t3;
    out.k_lambda += k;
    return out;
}

double value_aux_jump(const MarketState& s, const ModelParams& p, const JumpParams& j) {
    return jump_riccati_coefficients(p.horizon - s.t, p, j).combined().evaluate(s.spread(), s.y);
}

double feedback_rate_jump_additive(double tau, double spread, double y, const ModelParams& p,
                                   const JumpParams& j) {
    const double r = reduced_cost_coefficient(p);
    const double lam = j.lambda;
    const double corr = lam * (r * j.delta() * tau + j.pi() / (4.0 * p.gamma) * (r + p.nu) * tau * tau);
    return feedback_rate(tau, spread, y, p) + corr / rate_denominator(tau, p);
}

double feedback_rate_jump_shifted(double tau, double spread, double y, const ModelParams& p,
                                  const JumpParams& j) {
    const double lam = j.lambda;
    return feedback_rate(tau, spread + lam * j.delta() * tau, y + 0.5 * lam * j.pi() * tau, p)
         + lam * j.pi() * tau / (4.0 * p.gamma);
}

double feedback_rate_jump(double tau, double spread, double y, const ModelParams& p,
                          const JumpParams& j) {
    const double q = feedback_rate_jump_additive(tau, spread, y, p, j);
#ifndef NDEBUG
    const double q2 = feedback_rate_jump_shifted(tau, spread, y, p, j);
    const double scale = std::abs(q) + std::abs(q2) + std::abs(feedback_rate(tau, spread, y, p)) + 1e-12;
    assert(std::abs(q - q2) <= 1e-9 * scale);
#endif
    return q;
}

const char* TurningTime::label() const {
    switch (trend) {
    case RateTrend::RisesThenFalls: return "rises then falls";
    case RateTrend::FallsThenRises: return "falls then rises";
    case RateTrend::IncreasingThroughout: return "increasing throughout";
    case RateTrend::DecreasingThroughout: return "decreasing throughout";
    }
    return "unknown";
}

TurningTime expected_rate_turning_time(const MarketState& s, const ModelParams& p,
                                       const JumpParams& j) {
    const double lp = j.lambda * j.pi();
    if (j.lambda == 0.0 || j.pi() == 0.0)
        throw ParamError("turning time needs lambda != 0 and pi != 0");
    const double tau = p.horizon - s.t;
    TurningTime out;
    out.time = s.t + 2.0 * p.gamma / lp * feedback_rate_jump(tau, s.spread(), s.y, p, j);
    const bool up = j.pi() > 0;
    if (out.time <= s.t)
        out.trend = up ? RateTrend::DecreasingThroughout : RateTrend::IncreasingThroughout;
    else if (out.time >= p.horizon)
        out.trend = up ? RateTrend::IncreasingThroughout : RateTrend::DecreasingThroughout;
    else
        out.trend = up ? RateTrend::RisesThenFalls : RateTrend::FallsThenRises;
    return out;
}

} // namespace intraday
