#include "intraday/delay.hpp"

#include <cmath>

#include "intraday/closed_form.hpp"

namespace intraday {

namespace {

void check_delay(double h, double tau) {
    if (!(h >= 0) || h > tau) throw ParamError("delay must lie in [0, time-to-go]");
}

double mixed_variance(double k, const ModelParams& p) {
    return p.sigma0 * p.sigma0 + p.sigma_d * p.sigma_d * k * k - 2.0 * p.rho * p.sigma0 * p.sigma_d * k;
}

} // namespace

double delay_constant(double h, const ModelParams& p) {
    check_delay(h, p.horizon);
    if (h == 0.0) return 0.0;
    if (p.pure_trader) return 0.0;
    const double eta = p.eta, beta = p.beta, nu = p.nu, g = p.gamma;
    const double r = reduced_cost_coefficient(p);
    const double s0 = p.sigma0, sd = p.sigma_d, rho = p.rho;

    const double linear = 0.5 * eta * eta * (s0 * s0 + sd * sd * nu * nu + 2.0 * rho * s0 * sd * nu)
                        / ((eta + beta) * (eta + nu) * (r + nu)) * h;
    const double trader = g * mixed_variance(eta, p) / ((eta + nu) * (eta + nu))
                        * std::log1p((eta + nu) * h / (2.0 * g));
    const double producer = g * mixed_variance(r, p) / ((r + nu) * (r + nu))
                          * std::log1p((r + nu) * h / (2.0 * g));
    return linear + trader - producer;
}

double value_aux_delay(const MarketState& s, const ModelParams& p, double h) {
    return value_aux(s, p) + delay_constant(h, p);
}

double production_rule_delay(double spread_at_decision, double y_at_decision, const ModelParams& p,
                             double h, bool constrained) {
    if (p.pure_trader) throw ParamError("production rule requested for a pure trader");
    if (h < 0) throw ParamError("delay must be nonnegative");
    const double inner = ((p.nu * h + 2.0 * p.gamma) * (p.mu * h + spread_at_decision) + h * y_at_decision)
                       / rate_denominator(h, p);
    const double xi = p.eta / (p.eta + p.beta) * inner;
    return (constrained && xi < 0) ? 0.0 : xi;
}

double variance_spread_delay(double h, const ModelParams& p) {
    check_delay(h, p.horizon);
    return variance_spread_between(h, p.horizon, p);
}

ErrorBoundReport error_bound_delay(const MarketState& s, const ModelParams& p, double h) {
    const double tau = p.horizon - s.t;
    check_delay(h, tau);
    if (h == 0.0) return error_bound(tau, s.spread(), s.y, p);
    if (p.pure_trader) throw ParamError("error bound is undefined for a pure trader");
    const double r = reduced_cost_coefficient(p);
    const double pre = p.eta * r / (2.0 * p.beta) * rate_denominator(h, p)
                     / ((p.eta + p.nu) * h + 2.0 * p.gamma);
    ErrorBoundReport out;
    out.moments.mean = mean_spread(tau, s.spread(), s.y, p);
    out.moments.variance = variance_spread_between(h, tau, p);
    if (out.moments.variance <= 0) {
        out.shortfall_probability = out.moments.mean < 0 ? 1.0 : 0.0;
        return out;
    }
    const double z = out.moments.mean / std::sqrt(out.moments.variance);
    out.bound = pre * out.moments.variance * psi(z);
    out.shortfall_probability = normal_upper_tail(z);
    return out;
}

double post_decision_mean_rate(const MarketState& s, const ModelParams& p, double h) {
    const double tau = p.horizon - s.t;
    check_delay(h, tau);
    const double q0 = feedback_rate(tau, s.spread(), s.y, p);
    const double var = variance_spread_between(h, tau, p);
    if (var <= 0 || h == 0.0) return q0;
    const double r = reduced_cost_coefficient(p);
    const double sd = std::sqrt(var);
    const double z = mean_spread(tau, s.spread(), s.y, p) / sd;
    return q0 - p.eta * r / (p.beta * ((p.eta + p.nu) * h + 2.0 * p.gamma)) * sd * psi_tilde(z);
}

Policy composite_delay_policy(const ModelParams& p, double h, bool constrained) {
    check_delay(h, p.horizon);
    if (p.pure_trader) throw ParamError("delay policy needs a finite beta");
    Policy out;
    out.rate = [p](double tau, const MarketState& s) { return feedback_rate(tau, s.spread(), s.y, p); };
    out.production_time = p.horizon - h;
    out.production = [p, h, constrained](double, const MarketState& s) {
        return production_rule_delay(s.spread(), s.y, p, h, constrained);
    };
    out.constrained = constrained;
    out.reaction_before = reaction_time(reduced_cost_coefficient(p), p);
    if (h > 0) {
        out.rate_after = [p](double tau, const MarketState& s) {
            return feedback_rate_pure_trader(tau, s.spread(), s.y, p);
        };
        out.reaction_after = reaction_time(p.eta, p);
    } else {
        out.reaction_after = out.reaction_before;
    }
    return out;
}

} // namespace intraday
