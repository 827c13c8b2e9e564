#pragma once

#include "ose/scenario.hpp"

namespace ose {

struct PricePair {
    double p_i = 0.0;
    double p_e = 0.0;
};

struct DemandBundle {
    double q_i = 0.0;
    double q_e = 0.0;
    double q_s = 0.0;  // component demand, always q_i + q_e
};

enum class ConsumerChoice { BuyInterior, BuyExterior, BuyNeither };

/// Surplus-maximizing purchase of a consumer with valuation v. Exact ties
/// between the two products go to the interior manufacturer.
ConsumerChoice consumer_choice(double v, PricePair prices, double theta);

/// Piecewise-linear demands for v ~ U[0,1] scaled by the common market share.
/// Throws std::invalid_argument on negative or non-finite prices.
DemandBundle demand(PricePair prices, double theta, double A_hat);
DemandBundle demand(PricePair prices, const ScenarioParams& p);

}  // namespace ose
