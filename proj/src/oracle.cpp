#include "intraday/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include "json.hpp"

#include "intraday/error_bounds.hpp"
#include "intraday/rng.hpp"

namespace intraday {

namespace {

// Right-hand side of the coefficient system in time-to-go.
Coefficients riccati_rhs(const Coefficients& v, const ModelParams& p, const JumpParams& j) {
    const auto [A, B, F, G, H, K] = v;
    const double g = p.gamma, nu = p.nu, mu = p.mu;
    const double s0 = p.sigma0, sd = p.sigma_d, rho = p.rho;
    const double a = -2.0 * A + nu * F;
    const double b = 2.0 * nu * B - F + 1.0;
    const double c = -G + nu * H;

    Coefficients out;
    out[0] = -a * a / (4.0 * g);
    out[1] = -b * b / (4.0 * g);
    out[2] = -a * b / (2.0 * g);
    out[3] = 2.0 * mu * A - a * c / (2.0 * g);
    out[4] = mu * F - b * c / (2.0 * g);
    out[5] = mu * G + (s0 * s0 * B + sd * sd * A + rho * s0 * sd * F) - c * c / (4.0 * g);
    const double lam = j.lambda;
    if (lam != 0.0) {
        const double de = j.delta(), pi = j.pi();
        out[3] += lam * (2.0 * de * A + pi * F);
        out[4] += lam * (2.0 * pi * B + de * F);
        out[5] += lam * (j.delta_sq() * A + j.pi_sq() * B + j.delta_pi() * F + de * G + pi * H);
    }
    return out;
}

Coefficients axpy(const Coefficients& y, double h, const Coefficients& k) {
    Coefficients out;
    for (int i = 0; i < 6; ++i) out[i] = y[i] + h * k[i];
    return out;
}

double feedback_scale(const ModelParams& p) {
    return 2.0 * p.gamma / (reduced_cost_coefficient(p) + p.nu);
}

OdeSolution integrate(const ModelParams& p, const JumpParams& j, double tau_max, std::size_t steps,
                      bool log_time) {
    validate(p);
    if (!(tau_max > 0) || steps == 0) throw ParamError("integration needs tau_max > 0 and steps > 0");
    const double c = feedback_scale(p);

    OdeSolution sol;
    sol.log_time = log_time;
    const double span = log_time ? std::log1p(tau_max / c) : tau_max;
    sol.step = span / double(steps);
    sol.tau.reserve(steps + 1);
    sol.values.reserve(steps + 1);

    // In log time tau = c (e^u - 1) and d tau / du = tau + c.
    auto to_tau = [&](double s) { return log_time ? c * std::expm1(s) : s; };
    auto deriv = [&](double s, const Coefficients& v) {
        Coefficients k = riccati_rhs(v, p, j);
        if (log_time) {
            const double jac = to_tau(s) + c;
            for (double& e : k) e *= jac;
        }
        return k;
    };

    Coefficients v{0.5 * reduced_cost_coefficient(p), 0, 0, 0, 0, 0};
    sol.tau.push_back(0.0);
    sol.values.push_back(v);
    const double h = sol.step;
    for (std::size_t n = 0; n < steps; ++n) {
        const double s = double(n) * h;
        const Coefficients k1 = deriv(s, v);
        const Coefficients k2 = deriv(s + 0.5 * h, axpy(v, 0.5 * h, k1));
        const Coefficients k3 = deriv(s + 0.5 * h, axpy(v, 0.5 * h, k2));
        const Coefficients k4 = deriv(s + h, axpy(v, h, k3));
        for (int i = 0; i < 6; ++i) v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); })) {
            sol.stable = false;
            break;
        }
        sol.tau.push_back(n + 1 == steps ? tau_max : to_tau(double(n + 1) * h));
        sol.values.push_back(v);
    }
    return sol;
}

std::size_t steps_for(double tau_max, double step) {
    if (!(step > 0)) throw ParamError("step must be positive");
    return static_cast<std::size_t>(std::ceil(tau_max / step - 1e-9));
}

} // namespace

OdeSolution integrate_riccati(const ModelParams& p, double tau_max, double step) {
    return integrate(p, JumpParams{}, tau_max, steps_for(tau_max, step), false);
}

OdeSolution integrate_jump_riccati(const ModelParams& p, const JumpParams& j, double tau_max, double step) {
    validate(j);
    return integrate(p, j, tau_max, steps_for(tau_max, step), false);
}

OdeSolution integrate_riccati_nodes(const ModelParams& p, const JumpParams& j, double tau_max,
                                    std::size_t steps, TimeScaling scaling) {
    return integrate(p, j, tau_max, steps, scaling == TimeScaling::Logarithmic);
}

Coefficients closed_form_coefficients(double tau, const ModelParams& p, const JumpParams& j) {
    const CoefficientSet c = jump_riccati_coefficients(tau, p, j).combined();
    return {c.a, c.b, c.f, c.g, c.h, c.k};
}

OdeComparison compare_with_closed_form(const OdeSolution& sol, const ModelParams& p, const JumpParams& j,
                                       const CoefficientProvider& provider) {
    std::vector<Coefficients> closed(sol.tau.size());
    std::array<double, 6> scale{};
    for (std::size_t n = 0; n < sol.tau.size(); ++n) {
        closed[n] = provider(sol.tau[n], p, j);
        for (int i = 0; i < 6; ++i) scale[i] = std::max(scale[i], std::abs(closed[n][i]));
    }
    OdeComparison out;
    for (std::size_t n = 0; n < sol.tau.size(); ++n) {
        for (int i = 0; i < 6; ++i) {
            const double floor = scale[i] > 0 ? 1e-12 * scale[i] : 1.0;
            const double err = std::abs(sol.values[n][i] - closed[n][i]) / std::max(std::abs(closed[n][i]), floor);
            out.per_coefficient[i] = std::max(out.per_coefficient[i], err);
            if (err > out.max_rel_error) {
                out.max_rel_error = err;
                out.worst_node = n;
            }
        }
    }
    if (!sol.stable) out.max_rel_error = std::numeric_limits<double>::infinity();
    return out;
}

double quadrature_variance(double lo, double hi, const ModelParams& p, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    if (hi <= lo) return 0.0;
    // The density changes over the feedback time scale; split there so the
    // adaptive rule sees smooth pieces even when that scale is tiny.
    std::vector<double> cuts{lo};
    for (double b = feedback_scale(p); b < hi; b *= 10.0)
        if (b > lo) cuts.push_back(b);
    cuts.push_back(hi);
    auto f = [&p](double s) { return variance_density(s, p); };
    double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += gauss_kronrod<double, 61>::integrate(f, cuts[i], cuts[i + 1], 12, rel_tol);
    return total;
}

ProbeReport optimality_probe(const ModelParams& p, const JumpParams& j, const Policy& base,
                             const MarketState& initial, double perturbation_scale, std::size_t n_paths,
                             std::uint64_t seed, double dt) {
    if (perturbation_scale < 0) throw ParamError("perturbation scale must be nonnegative");
    const double T = p.horizon;
    struct Profile {
        const char* name;
        double from, to;
    };
    const Profile profiles[] = {{"constant", 0.0, T}, {"early", 0.0, T / 3.0}, {"late", 2.0 * T / 3.0, T}};

    SimOptions opt;
    opt.n_paths = n_paths;
    opt.dt = dt;
    opt.seed = seed;
    const auto base_runs = simulate_summaries(p, j, base, initial, opt);

    auto perturbed = [&](const Profile& prof, double eps) {
        Policy pol = base;
        auto bump = [prof, eps, T](double tau) {
            const double t = T - tau;
            return (t >= prof.from && (t < prof.to || prof.to == T)) ? eps : 0.0;
        };
        pol.rate = [r = base.rate, bump](double tau, const MarketState& s) { return r(tau, s) + bump(tau); };
        if (base.rate_after)
            pol.rate_after = [r = base.rate_after, bump](double tau, const MarketState& s) {
                return r(tau, s) + bump(tau);
            };
        const auto runs = simulate_summaries(p, j, pol, initial, opt);
        std::vector<double> diff(n_paths);
        for (std::size_t i = 0; i < n_paths; ++i) diff[i] = runs[i].cost - base_runs[i].cost;
        return mean_estimate(diff);
    };

    ProbeReport rep;
    rep.n_paths = n_paths;
    for (const Profile& prof : profiles) {
        ProbeEntry e;
        e.profile = prof.name;
        e.epsilon = perturbation_scale;
        const CostEstimate one = perturbed(prof, perturbation_scale);
        const CostEstimate two = perturbed(prof, 2.0 * perturbation_scale);
        e.diff = one.mean;
        e.diff_stderr = one.std_error;
        e.diff_double = two.mean;
        e.diff_double_stderr = two.std_error;
        rep.entries.push_back(e);
    }
    return rep;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string VerificationReport::to_text() const {
    std::ostringstream out;
    out << std::setprecision(6);
    for (const Check& c : checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value << "  tol=" << c.tolerance;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
    }
    out << (passed() ? "all checks passed" : "verification FAILED") << '\n';
    return out.str();
}

std::string VerificationReport::to_json() const {
    nlohmann::json doc;
    doc["passed"] = passed();
    doc["checks"] = nlohmann::json::array();
    for (const Check& c : checks)
        doc["checks"].push_back(
            {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}, {"detail", c.detail}});
    return doc.dump(2);
}

VerificationReport run_verification(const ModelParams& p, const JumpParams& j, const MarketState& initial,
                                    const VerifyOptions& opt) {
    validate(p);
    validate(j);
    VerificationReport rep;
    const double T = p.horizon;
    const bool stiff = feedback_scale(p) < 1e-4 * T;
    const double ode_tol = stiff ? 1e-5 : 1e-8;

    auto add = [&rep](std::string name, bool ok, double value, double tol, std::string detail = {}) {
        rep.checks.push_back({std::move(name), ok, value, tol, std::move(detail)});
    };

    {
        const JumpParams none{};
        const auto sol = integrate_riccati_nodes(p, none, T, opt.ode_steps);
        const auto cmp = compare_with_closed_form(sol, p, none, opt.coefficients);
        add("riccati ODE vs closed form", cmp.max_rel_error <= ode_tol, cmp.max_rel_error, ode_tol,
            sol.log_time ? "log time-to-go" : "uniform time-to-go");
    }
    {
        const auto sol = integrate_riccati_nodes(p, j, T, opt.ode_steps);
        const auto cmp = compare_with_closed_form(sol, p, j, opt.coefficients);
        add("jump riccati ODE vs closed form", cmp.max_rel_error <= ode_tol, cmp.max_rel_error, ode_tol,
            j.lambda == 0 ? "lambda = 0, reduces to the plain system" : "");
    }
    {
        const JumpParams none{};
        const auto coarse = compare_with_closed_form(integrate_riccati_nodes(p, none, T, 40), p, none);
        const auto fine = compare_with_closed_form(integrate_riccati_nodes(p, none, T, 80), p, none);
        const double ratio = coarse.max_rel_error / fine.max_rel_error;
        add("RK4 order (error ratio on step halving)", ratio > 12.0 && ratio < 20.0, ratio, 16.0, "accepted band [12, 20]");
    }
    {
        double worst = 0;
        for (double tau : {1.0, 3600.0, 86400.0, 180000.0}) {
            const double closed = variance_spread(tau, p);
            const double quad = quadrature_variance(0.0, tau, p);
            worst = std::max(worst, std::abs(closed - quad) / quad);
        }
        add("spread variance closed form vs quadrature", worst <= 1e-10, worst, 1e-10);
    }
    {
        double worst_eq = 0, worst_forms = 0;
        Stream rng(opt.seed, 0, 7);
        for (int i = 0; i < 2000; ++i) {
            const double tau = T * rng.uniform();
            const MarketState s{T - tau, 2e4 * (rng.uniform() - 0.5), 200.0 * (rng.uniform() - 0.3),
                                1e5 * rng.uniform()};
            if (!p.pure_trader) {
                const auto eq = forecast_equilibrium(tau, s, p);
                worst_eq = std::max(worst_eq, std::abs(eq.lhs - eq.rhs) / std::max(std::abs(eq.rhs), 1e-300));
            }
            const double a = feedback_rate_jump_additive(tau, s.spread(), s.y, p, j);
            const double b = feedback_rate_jump_shifted(tau, s.spread(), s.y, p, j);
            const double scale = std::abs(a) + std::abs(feedback_rate(tau, s.spread(), s.y, p)) + 1e-300;
            worst_forms = std::max(worst_forms, std::abs(a - b) / scale);
        }
        if (!p.pure_trader) add("forecast equilibrium identity", worst_eq <= 1e-9, worst_eq, 1e-9);
        add("jump rate algebraic forms agree", worst_forms <= 1e-10, worst_forms, 1e-10);
    }
    if (opt.mc_paths > 1 && !p.pure_trader) {
        SimOptions so;
        so.n_paths = opt.mc_paths;
        so.dt = opt.dt;
        so.seed = opt.seed;
        const Policy pol = j.lambda > 0 ? jump_optimal_policy(p, j, false) : optimal_policy(p, false);
        const auto runs = simulate_summaries(p, j, pol, initial, so);
        const CostEstimate est = estimate_cost(runs);
        const double target = value_aux_jump(initial, p, j);
        const double z = std::abs(est.mean - target) / est.std_error;
        std::ostringstream d;
        d << std::setprecision(10) << "mean " << est.mean << " stderr " << est.std_error << " closed form " << target;
        add("Monte Carlo cost vs value function (z-score)", z <= 3.0, z, 3.0, d.str());

        const DriftEstimate drift = martingale_diagnostics(runs, p, j);
        std::ostringstream dd;
        dd << std::setprecision(6) << "slope " << drift.slope << " CI [" << drift.low << ", " << drift.high
           << "] expected " << drift.expected;
        add("optimal rate drift", drift.contains(drift.expected), drift.slope, drift.expected, dd.str());
    }
    return rep;
}

} // namespace intraday
