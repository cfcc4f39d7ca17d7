#include "intraday/policy.hpp"

#include "intraday/closed_form.hpp"

namespace intraday {

double reaction_time(double k, const ModelParams& p) { return 2.0 * p.gamma / (k + p.nu); }

namespace {

ProductionRule terminal_production(const ModelParams& p, bool constrained) {
    return [p, constrained](double, const MarketState& s) {
        return constrained ? optimal_production_constrained(s.spread(), p)
                           : optimal_production_unconstrained(s.spread(), p);
    };
}

} // namespace

Policy optimal_policy(const ModelParams& p, bool constrained) {
    Policy out;
    out.rate = [p](double tau, const MarketState& s) { return feedback_rate(tau, s.spread(), s.y, p); };
    out.production_time = p.horizon;
    out.production = terminal_production(p, constrained);
    out.constrained = constrained;
    out.reaction_before = out.reaction_after = reaction_time(reduced_cost_coefficient(p), p);
    return out;
}

Policy jump_optimal_policy(const ModelParams& p, const JumpParams& j, bool constrained) {
    Policy out = optimal_policy(p, constrained);
    out.rate = [p, j](double tau, const MarketState& s) {
        return feedback_rate_jump(tau, s.spread(), s.y, p, j);
    };
    return out;
}

Policy zero_policy(const ModelParams& p) {
    Policy out;
    out.rate = [](double, const MarketState&) { return 0.0; };
    out.production_time = p.horizon;
    out.production = [](double, const MarketState&) { return 0.0; };
    out.constrained = true;
    out.reaction_before = out.reaction_after = 0.0;
    return out;
}

Policy pure_trader_policy(const ModelParams& p) {
    Policy out = zero_policy(p);
    out.rate = [p](double tau, const MarketState& s) {
        return feedback_rate_pure_trader(tau, s.spread(), s.y, p);
    };
    out.reaction_before = out.reaction_after = reaction_time(p.eta, p);
    return out;
}

} // namespace intraday
