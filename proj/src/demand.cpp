#include "ose/demand.hpp"

#include <cmath>
#include <stdexcept>

namespace ose {

ConsumerChoice consumer_choice(double v, PricePair prices, double theta) {
    const double s_i = v - prices.p_i;
    const double s_e = theta * v - prices.p_e;
    if (s_i >= 0.0 && s_i >= s_e) return ConsumerChoice::BuyInterior;
    if (s_e >= 0.0) return ConsumerChoice::BuyExterior;
    return ConsumerChoice::BuyNeither;
}

DemandBundle demand(PricePair prices, double theta, double A_hat) {
    const double pi = prices.p_i;
    const double pe = prices.p_e;
    if (!std::isfinite(pi) || !std::isfinite(pe) || pi < 0.0 || pe < 0.0)
        throw std::invalid_argument("demand: prices must be finite and nonnegative");

    double qi = 0.0;
    double qe = 0.0;
    if (theta < 1.0) {
        if (pi >= 1.0 - theta + pe) {
            qe = 1.0 - pe / theta;
        } else if (pi >= pe / theta) {
            qi = 1.0 - (pi - pe) / (1.0 - theta);
            qe = (theta * pi - pe) / (theta * (1.0 - theta));
        } else {
            qi = 1.0 - pi;
        }
    } else {
        if (pi > pe / theta) {
            qe = 1.0 - pe / theta;
        } else if (pi > pe - theta + 1.0) {
            qi = (pe - theta * pi) / (theta - 1.0);
            qe = 1.0 - (pe - pi) / (theta - 1.0);
        } else {
            qi = 1.0 - pi;
        }
    }
    // Prices above the top valuation leave the linear formulas negative.
    qi = A_hat * std::max(qi, 0.0);
    qe = A_hat * std::max(qe, 0.0);
    return {qi, qe, qi + qe};
}

DemandBundle demand(PricePair prices, const ScenarioParams& p) {
    return demand(prices, p.theta(), common_market_share(p));
}

}  // namespace ose
