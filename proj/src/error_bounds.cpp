#include "intraday/error_bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "intraday/closed_form.hpp"
#include "intraday/rng.hpp"

namespace intraday {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kTailSwitch = 2.5;

// Continued fraction for Hh_n(z) / Hh_{n-1}(z), where Hh are the repeated
// normal tail integrals (Hh_{-1} = phi, Hh_0 = Phi(-z)). Stable for z > 0.
double hh_ratio(int n, double z) {
    const int depth = 400;
    double tail = 0.0;
    // After step k the value is the ratio of index k - 1.
    for (int k = depth; k > n; --k) tail = 1.0 / (z + k * tail);
    return tail;
}

// psi(z) / phi(z) and psi~(z) / phi(z) for large positive z.
double psi_over_pdf(double z) { return 2.0 * hh_ratio(0, z) * hh_ratio(1, z) * hh_ratio(2, z); }
double psi_tilde_over_pdf(double z) { return hh_ratio(0, z) * hh_ratio(1, z); }

double log_pdf(double z) { return -0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi); }

double bound_prefactor(const ModelParams& p) {
    if (p.pure_trader) throw ParamError("error bound is undefined for a pure trader");
    return p.eta * reduced_cost_coefficient(p) / (2.0 * p.beta);
}

// w - 2 log(1+w) + w/(1+w), series near 0 to avoid cancellation.
double f1(double w) {
    if (w < 0.05) {
        double sum = 0, pw = w * w;
        for (int k = 3; k < 40; ++k) {
            pw *= w;
            const double term = (1.0 - 2.0 / k) * pw * (k % 2 ? 1.0 : -1.0);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return w - 2.0 * std::log1p(w) + w / (1.0 + w);
}

// log(1+w) - w/(1+w)
double f2(double w) {
    if (w < 0.05) {
        double sum = 0, pw = w;
        for (int k = 2; k < 40; ++k) {
            pw *= w;
            const double term = (1.0 - 1.0 / k) * pw * (k % 2 ? -1.0 : 1.0);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        return sum;
    }
    return std::log1p(w) - w / (1.0 + w);
}

double variance_from_zero(double t, const ModelParams& p) {
    if (t <= 0) return 0.0;
    const double r = reduced_cost_coefficient(p);
    const double a = r + p.nu, c = 2.0 * p.gamma;
    const double s0 = p.sigma0, sd = p.sigma_d, rho = p.rho, nu = p.nu;
    const double quad = s0 * s0 + sd * sd * nu * nu + 2.0 * rho * s0 * sd * nu;
    const double lin = 2.0 * sd * sd * nu * c + 2.0 * rho * s0 * sd * c;
    const double w = a * t / c;
    const double v = quad * c / (a * a) * f1(w) + lin / a * f2(w) + sd * sd * c * w / (1.0 + w);
    return std::max(0.0, v / a);
}

ErrorBoundReport bound_from_moments(double pre, double mean, double var) {
    ErrorBoundReport out;
    out.moments = {mean, var};
    if (var <= 0) {
        out.shortfall_probability = mean < 0 ? 1.0 : 0.0;
        out.bound = 0.0;
        return out;
    }
    const double z = mean / std::sqrt(var);
    out.bound = pre * var * psi(z);
    out.shortfall_probability = normal_upper_tail(z);
    return out;
}

} // namespace

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double psi(double z) {
    if (z < kTailSwitch) return (z * z + 1.0) * normal_upper_tail(z) - z * normal_pdf(z);
    return normal_pdf(z) * psi_over_pdf(z);
}

double psi_tilde(double z) {
    if (z < kTailSwitch) return normal_pdf(z) - z * normal_upper_tail(z);
    return normal_pdf(z) * psi_tilde_over_pdf(z);
}

double log_psi(double z) {
    if (z < kTailSwitch) return std::log(psi(z));
    return log_pdf(z) + std::log(psi_over_pdf(z));
}

double mean_spread(double tau, double spread, double y, const ModelParams& p) {
    const double num = (p.nu * tau + 2.0 * p.gamma) * (p.mu * tau + spread) + y * tau;
    return num / rate_denominator(tau, p);
}

double variance_density(double s, const ModelParams& p) {
    const double r = reduced_cost_coefficient(p);
    const double c = p.nu * s + 2.0 * p.gamma;
    const double den = (r + p.nu) * s + 2.0 * p.gamma;
    const double num = p.sigma0 * p.sigma0 * s * s + p.sigma_d * p.sigma_d * c * c
                     + 2.0 * p.rho * p.sigma0 * p.sigma_d * s * c;
    return num / (den * den);
}

double variance_spread_between(double lo, double hi, const ModelParams& p) {
    if (lo < 0 || hi < lo) throw ParamError("variance interval must satisfy 0 <= lo <= hi");
    if (hi == lo) return 0.0;
    return std::max(0.0, variance_from_zero(hi, p) - variance_from_zero(lo, p));
}

double variance_spread(double tau, const ModelParams& p) {
    if (tau < 0) throw ParamError("time-to-go must be nonnegative");
    return variance_from_zero(tau, p);
}

ErrorBoundReport error_bound(double tau, double spread, double y, const ModelParams& p) {
    const double pre = bound_prefactor(p);
    return bound_from_moments(pre, mean_spread(tau, spread, y, p), variance_spread(tau, p));
}

double log_error_bound(double tau, double spread, double y, const ModelParams& p) {
    const double pre = bound_prefactor(p);
    const double var = variance_spread(tau, p);
    if (var <= 0) return -std::numeric_limits<double>::infinity();
    return std::log(pre * var) + log_psi(mean_spread(tau, spread, y, p) / std::sqrt(var));
}

RateConstants asymptotic_rate_constants(double tau, double spread, double y, const ModelParams& p) {
    RateConstants out;
    const double den = rate_denominator(tau, p);
    const double var = variance_spread(tau, p);
    const double m_inf = (p.nu * tau + 2.0 * p.gamma) / den;
    const double n_inf = tau / den;
    const double u = spread / p.sigma_d;
    out.time_to_go = -0.5 * u * u;
    out.spread = -0.5 * m_inf * m_inf / var;
    out.price = -0.5 * n_inf * n_inf / var;
    (void)y;
    return out;
}

double mean_spread_jump(double tau, double spread, double y, const ModelParams& p,
                        const JumpParams& j) {
    const double lam = j.lambda;
    if (lam == 0.0) return mean_spread(tau, spread, y, p);
    const double r = reduced_cost_coefficient(p);
    const double rn = r + p.nu;
    const double rd = r * j.delta();
    const double shifted = mean_spread(tau, spread, y + lam * (0.5 * j.pi() - rd) * tau, p);
    const double bracket = tau - 2.0 * p.gamma / rn * std::log1p(rn * tau / (2.0 * p.gamma));
    return shifted + lam * (rd - j.pi()) / rn * bracket;
}

ErrorBoundReport error_bound_jump(double tau, double spread, double y, const ModelParams& p,
                                  const JumpParams& j, std::uint64_t n_samples, std::uint64_t seed) {
    const double pre = bound_prefactor(p);
    const double mean = mean_spread_jump(tau, spread, y, p, j);
    const double var = variance_spread(tau, p);
    const double neg_rate = j.lambda * j.p_minus();
    if (neg_rate == 0.0 || var <= 0) return bound_from_moments(pre, mean, var);
    if (n_samples < 1000) throw ParamError("error_bound_jump needs at least 1000 samples");

    const double r = reduced_cost_coefficient(p);
    const double sd = std::sqrt(var);
    const auto n = static_cast<std::int64_t>(n_samples);
    std::vector<double> psi_vals(n), prob_vals(n);

#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        Stream rng(seed, static_cast<std::uint64_t>(i), 2);
        double sigma_minus = 0.0;
        double elapsed = rng.exponential(neg_rate);
        while (elapsed < tau) {
            const double u = tau - elapsed;
            sigma_minus += (j.delta_minus * (p.nu * u + 2.0 * p.gamma) + j.pi_minus * u)
                         / ((r + p.nu) * u + 2.0 * p.gamma);
            elapsed += rng.exponential(neg_rate);
        }
        const double z = (mean + sigma_minus) / sd;
        psi_vals[i] = psi(z);
        prob_vals[i] = normal_upper_tail(z);
    }

    double sum = 0, sum_sq = 0, prob_sum = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        sum += psi_vals[i];
        sum_sq += psi_vals[i] * psi_vals[i];
        prob_sum += prob_vals[i];
    }
    const double nd = double(n);
    const double avg = sum / nd;
    const double sample_var = std::max(0.0, (sum_sq - nd * avg * avg) / (nd - 1.0));

    ErrorBoundReport out;
    out.moments = {mean, var};
    out.bound = pre * var * avg;
    out.mc_stderr = pre * var * std::sqrt(sample_var / nd);
    out.shortfall_probability = prob_sum / nd;
    return out;
}

} // namespace intraday
