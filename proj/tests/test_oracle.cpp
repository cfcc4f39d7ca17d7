#include "doctest.h"

#include <cmath>

#include "intraday/closed_form.hpp"
#include "intraday/delay.hpp"
#include "intraday/error_bounds.hpp"
#include "intraday/oracle.hpp"
#include "json.hpp"

using namespace intraday;

namespace {

const MarketState kStart{0, 0, 50, 50000};

ModelParams eta200() {
    ModelParams p;
    p.eta = 200;
    return p;
}

ModelParams table_params() {
    ModelParams p = eta200();
    p.nu = 1e-10;
    p.gamma = 1e-10;
    return p;
}

JumpParams jumps(double p_plus) { return {1.5 / 86400.0, p_plus, 1500, -1500, 10, -10}; }

} // namespace

TEST_CASE("RK4 integration matches the closed forms") {
    ModelParams drift;
    drift.mu = 0.7;
    for (const ModelParams& p : {ModelParams{}, drift, eta200()}) {
        const auto sol = integrate_riccati_nodes(p, JumpParams{0}, p.horizon, 10000);
        CHECK(sol.log_time);
        CHECK(sol.stable);
        CHECK(sol.tau.size() == 10001);
        CHECK(compare_with_closed_form(sol, p, JumpParams{0}).max_rel_error <= 1e-8);
    }
    for (double pp : {1.0, 0.3, 0.55}) {
        const auto sol = integrate_riccati_nodes(eta200(), jumps(pp), 86400, 10000);
        CHECK(compare_with_closed_form(sol, eta200(), jumps(pp)).max_rel_error <= 1e-8);
        // plain time steps converge too, just more slowly near delivery
        const auto plain = integrate_jump_riccati(eta200(), jumps(pp), 86400, 2.16);
        CHECK(!plain.log_time);
        CHECK(compare_with_closed_form(plain, eta200(), jumps(pp)).max_rel_error <= 1e-8);
    }
}

TEST_CASE("stiff parameters need logarithmic time") {
    const ModelParams p = table_params();
    const auto sol = integrate_riccati_nodes(p, JumpParams{0}, p.horizon, 10000);
    CHECK(sol.log_time);
    CHECK(sol.tau.back() == doctest::Approx(p.horizon).epsilon(1e-12));
    const auto cmp = compare_with_closed_form(sol, p, JumpParams{0});
    CHECK(cmp.max_rel_error <= 1e-5);
    // uniform steps cannot resolve a boundary layer of width 1e-6 s
    const auto blunt = integrate_riccati_nodes(p, JumpParams{0}, p.horizon, 10000, TimeScaling::Uniform);
    CHECK(compare_with_closed_form(blunt, p, JumpParams{0}).max_rel_error > 1e-5);
}

TEST_CASE("fourth-order convergence") {
    const ModelParams p;
    double prev = 0;
    for (std::size_t n : {40, 80, 160, 320}) {
        const double err = compare_with_closed_form(integrate_riccati_nodes(p, JumpParams{0}, p.horizon, n), p,
                                                    JumpParams{0})
                               .max_rel_error;
        if (prev > 0) {
            const double order = std::log2(prev / err);
            CHECK(order > 3.6);
            CHECK(order < 4.4);
        }
        prev = err;
    }
}

TEST_CASE("a corrupted coefficient is detected") {
    const ModelParams p;
    const auto sol = integrate_riccati_nodes(p, JumpParams{0}, p.horizon, 2000);
    CoefficientProvider bad = [](double tau, const ModelParams& q, const JumpParams& j) {
        auto c = closed_form_coefficients(tau, q, j);
        c[0] *= 1.01;
        return c;
    };
    const auto cmp = compare_with_closed_form(sol, p, JumpParams{0}, bad);
    CHECK(cmp.max_rel_error > 5e-3);
    CHECK(cmp.per_coefficient[0] > 5e-3);
    CHECK(cmp.per_coefficient[1] < 1e-8);
}

TEST_CASE("quadrature agrees with the closed-form variance") {
    for (const ModelParams& p : {ModelParams{}, table_params()}) {
        for (double tau : {1.0, 3600.0, 86400.0, 180000.0}) {
            const double closed = variance_spread(tau, p);
            CHECK(std::abs(quadrature_variance(0, tau, p) - closed) <= 1e-10 * closed);
        }
        const double h = 4 * 3600;
        const double vh = variance_spread_delay(h, p);
        CHECK(std::abs(quadrature_variance(h, p.horizon, p) - vh) <= 1e-10 * vh);
    }
    CHECK(quadrature_variance(5, 5, ModelParams{}) == 0.0);
}

TEST_CASE("optimality probe") {
    const ModelParams p;
    const Policy pol = optimal_policy(p, false);
    const auto zero = optimality_probe(p, JumpParams{0}, pol, kStart, 0.0, 200, 3, 600);
    REQUIRE(zero.entries.size() == 3);
    for (const auto& e : zero.entries) {
        CHECK(e.diff == 0.0);
        CHECK(e.diff_double == 0.0);
    }
    CHECK(zero.entries[0].profile == "constant");
    CHECK(zero.entries[1].profile == "early");
    CHECK(zero.entries[2].profile == "late");

    const auto rep = optimality_probe(p, JumpParams{0}, pol, kStart, 0.2, 1000, 3, 600);
    for (const auto& e : rep.entries) {
        INFO(e.profile);
        CHECK(e.diff > 3 * e.diff_stderr);
        CHECK(e.ratio() == doctest::Approx(4.0).epsilon(0.2));
    }
    CHECK_THROWS_AS(optimality_probe(p, JumpParams{0}, pol, kStart, -1, 10, 3), ParamError);
}

TEST_CASE("verification suite") {
    VerifyOptions opt;
    opt.mc_paths = 2000;
    const auto rep = run_verification(ModelParams{}, JumpParams{0}, kStart, opt);
    INFO(rep.to_text());
    CHECK(rep.passed());
    CHECK(rep.checks.size() >= 8);
    const auto doc = nlohmann::json::parse(rep.to_json());
    CHECK(doc["passed"] == true);
    CHECK(doc["checks"].size() == rep.checks.size());

    // stiff parameters pass with the looser ODE tolerance
    VerifyOptions quick;
    quick.mc_paths = 0;
    CHECK(run_verification(table_params(), JumpParams{0}, kStart, quick).passed());

    // jump preset
    VerifyOptions jopt;
    jopt.mc_paths = 2000;
    const auto jrep = run_verification(eta200(), jumps(0.3), kStart, jopt);
    INFO(jrep.to_text());
    CHECK(jrep.passed());

    // injected fault
    VerifyOptions broken = quick;
    broken.coefficients = [](double tau, const ModelParams& q, const JumpParams& j) {
        auto c = closed_form_coefficients(tau, q, j);
        c[0] *= 1.01;
        return c;
    };
    const auto bad = run_verification(ModelParams{}, JumpParams{0}, kStart, broken);
    CHECK(!bad.passed());
    CHECK(bad.to_text().find("FAIL riccati ODE") != std::string::npos);
}
