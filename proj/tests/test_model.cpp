#include "doctest.h"

#include <cmath>
#include <limits>

#include "intraday/model.hpp"

using namespace intraday;

TEST_CASE("reduced cost coefficient") {
    ModelParams p;
    CHECK(reduced_cost_coefficient(p) == doctest::Approx(100.0 * 0.002 / 100.002).epsilon(1e-15));
    p.beta = 1.0;
    p.eta = 1.0;
    CHECK(reduced_cost_coefficient(p) == 0.5);
    CHECK(reduced_cost_coefficient(as_pure_trader(p)) == p.eta);
}

TEST_CASE("r increases in both eta and beta and stays below min(eta, beta)") {
    ModelParams p;
    double prev = 0;
    for (double eta = 1e-3; eta < 1e4; eta *= 3) {
        p.eta = eta;
        const double r = reduced_cost_coefficient(p);
        CHECK(r > prev);
        CHECK(r < std::min(p.eta, p.beta));
        prev = r;
    }
    p.eta = 100;
    prev = 0;
    for (double beta = 1e-5; beta < 1e5; beta *= 4) {
        p.beta = beta;
        const double r = reduced_cost_coefficient(p);
        CHECK(r > prev);
        prev = r;
    }
    // beta -> infinity approaches the pure trader
    p.beta = 1e12;
    CHECK(reduced_cost_coefficient(p) == doctest::Approx(p.eta).epsilon(1e-9));
}

TEST_CASE("validation rejects out-of-domain parameters") {
    const ModelParams good;
    CHECK_NOTHROW(validate(good));
    auto broken = [&](auto mutate) {
        ModelParams p = good;
        mutate(p);
        return p;
    };
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.gamma = 0; })), ParamError);
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.eta = -1; })), ParamError);
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.beta = 0; })), ParamError);
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.rho = 1.5; })), ParamError);
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.nu = -1e-9; })), ParamError);
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.sigma0 = std::nan(""); })), ParamError);
    CHECK_THROWS_AS(validate(broken([](ModelParams& p) { p.horizon = 0; })), ParamError);
    // the pure trader ignores beta entirely
    CHECK_NOTHROW(validate(broken([](ModelParams& p) {
        p.pure_trader = true;
        p.beta = 0;
    })));

    JumpParams j{1e-5, 0.4, 100, -50, 2, -3};
    CHECK_NOTHROW(validate(j));
    j.p_plus = 1.2;
    CHECK_THROWS_AS(validate(j), ParamError);
    j = {1e-5, 0.4, 100, 50, 2, -3};
    CHECK_THROWS_AS(validate(j), ParamError);
    j = {-1, 0.4, 100, -50, 2, -3};
    CHECK_THROWS_AS(validate(j), ParamError);

    CHECK_THROWS_AS(validate(MarketState{-1, 0, 0, 0}, good), ParamError);
    CHECK_THROWS_AS(validate(MarketState{good.horizon + 1, 0, 0, 0}, good), ParamError);
}

TEST_CASE("jump moments") {
    const JumpParams j{1e-5, 0.3, 1500, -1500, 10, -10};
    CHECK(j.p_minus() == doctest::Approx(0.7));
    CHECK(j.delta() == doctest::Approx(-600));
    CHECK(j.pi() == doctest::Approx(-4));
    CHECK(j.delta_sq() == doctest::Approx(1500.0 * 1500.0));
    CHECK(j.pi_sq() == doctest::Approx(100));
    CHECK(j.delta_pi() == doctest::Approx(15000));
}

TEST_CASE("terminal cost and production rules") {
    const ModelParams p;
    CHECK(terminal_cost(10, 0, p) == doctest::Approx(0.5 * p.eta * 100));
    CHECK(terminal_cost(10, 10, p) == doctest::Approx(0.5 * p.beta * 100));
    CHECK_THROWS_AS(terminal_cost(1, 1, as_pure_trader(p)), ParamError);
    CHECK(terminal_cost(2, 0, as_pure_trader(p)) == doctest::Approx(2 * p.eta));
    CHECK_THROWS_AS(optimal_production_constrained(1, as_pure_trader(p)), ParamError);

    CHECK(optimal_production_constrained(-5, p) == 0.0);
    CHECK(optimal_production_unconstrained(-5, p) < 0.0);
    CHECK(optimal_production_constrained(5, p) == optimal_production_unconstrained(5, p));
}

TEST_CASE("production rule is the argmin of the terminal cost") {
    const ModelParams p;
    for (double s : {-3000.0, -12.5, 0.0, 0.7, 48000.0}) {
        const double xi = optimal_production_unconstrained(s, p);
        const double best = terminal_cost(s, xi, p);
        CHECK(cost_after_production(s, p, false) == doctest::Approx(best).epsilon(1e-12));
        // dense scan around the minimiser never finds anything lower
        const double scale = std::max(1.0, std::abs(s));
        for (int k = -200; k <= 200; ++k) {
            const double trial = xi + scale * k * 1e-3;
            CHECK(terminal_cost(s, trial, p) >= best * (1 - 1e-14) - 1e-12);
        }
        // constrained: scan over xi >= 0 only
        const double xc = optimal_production_constrained(s, p);
        const double cbest = terminal_cost(s, xc, p);
        CHECK(cost_after_production(s, p, true) == doctest::Approx(cbest).epsilon(1e-12));
        for (int k = 0; k <= 400; ++k) {
            const double trial = scale * k * 5e-3;
            CHECK(terminal_cost(s, trial, p) >= cbest * (1 - 1e-14) - 1e-12);
        }
    }
}
