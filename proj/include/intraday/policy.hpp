#pragma once

#include <functional>

#include "intraday/model.hpp"

namespace intraday {

// Rate and production rules receive the time-to-go alongside the state:
// near delivery tau is tiny and recomputing it as horizon - t would lose
// most of its significant digits.
using RateRule = std::function<double(double tau, const MarketState&)>;
using ProductionRule = std::function<double(double tau, const MarketState&)>;

struct Policy {
    RateRule rate;
    // Rule used once production is fixed; its state carries inventory plus
    // production in x. Empty means keep using `rate`.
    RateRule rate_after;
    // Absolute decision time. A value equal to the horizon means production
    // is chosen after trading stops.
    double production_time = 0;
    ProductionRule production;
    bool constrained = true;
    // Characteristic feedback time scales (seconds) before and after the
    // decision; used to refine the simulation grid where the rule stiffens.
    double reaction_before = 0;
    double reaction_after = 0;
};

// Feedback time scale 2 gamma / (k + nu) of a rule with terminal coefficient k.
double reaction_time(double k, const ModelParams& p);

// Auxiliary-problem optimum: q-hat throughout, production at delivery.
Policy optimal_policy(const ModelParams& p, bool constrained);
// Jump-aware optimum.
Policy jump_optimal_policy(const ModelParams& p, const JumpParams& j, bool constrained);
// No trading and no production.
Policy zero_policy(const ModelParams& p);
// Pure trader: q-hat with r replaced by eta, never produces.
Policy pure_trader_policy(const ModelParams& p);

} // namespace intraday
