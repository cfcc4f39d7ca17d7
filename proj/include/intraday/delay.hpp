#pragma once

#include "intraday/error_bounds.hpp"
#include "intraday/model.hpp"
#include "intraday/policy.hpp"

namespace intraday {

struct DelaySpec {
    double h = 0; // seconds between the production decision and delivery
};

double delay_constant(double h, const ModelParams& p);
double value_aux_delay(const MarketState& s, const ModelParams& p, double h);

double production_rule_delay(double spread_at_decision, double y_at_decision, const ModelParams& p,
                             double h, bool constrained);

// Spread variance accumulated on [h, T].
double variance_spread_delay(double h, const ModelParams& p);

ErrorBoundReport error_bound_delay(const MarketState& s, const ModelParams& p, double h);

// Expected inventory slope after the decision time.
double post_decision_mean_rate(const MarketState& s, const ModelParams& p, double h);

// q-hat before T-h, production fixed at T-h, pure-trader rule afterwards.
Policy composite_delay_policy(const ModelParams& p, double h, bool constrained = true);

} // namespace intraday
