#pragma once

#include "ose/demand.hpp"
#include "ose/follower.hpp"
#include "ose/leader.hpp"
#include "ose/scenario.hpp"

namespace ose {

/// Grid resolutions. Domains are fixed: p_i in [0,1], w and p_e in [0,theta].
struct GridSpec {
    double step_pe = 1e-3;
    double step_pi = 2e-3;
    double step_w = 2e-3;
};

/// Largest number of points allowed on any single grid axis.
inline constexpr double kMaxGridPoints = 1e8;

/// Throws GridTooLargeError (or std::invalid_argument for steps <= 0).
void check_grid(const GridSpec& g, double theta);

/// Demand by exact integration of consumer_choice over v in [0,1].
DemandBundle integrate_demand(PricePair prices, double theta, double A_hat);
DemandBundle integrate_demand(PricePair prices, const ScenarioParams& p);

struct GridBest {
    double p_e = 0.0;
    double profit = 0.0;
};

/// Best switching price on the p_e grid, ignoring the stay option.
GridBest follower_grid_search(double p_i, double w, const Market& m, const GridSpec& g = {});

/// Exhaustive p_e search with the stay option worth pi0.
FollowerDecision brute_force_follower(double p_i, double w, const Market& m, const GridSpec& g = {});
FollowerDecision brute_force_follower(double p_i, double w, const ScenarioParams& p, const GridSpec& g = {});

/// Nested exhaustive (p_i, w) search with the follower best-responding on its
/// own grid. p_i_interval is the p_i extent of the near-optimal set when it
/// spans more than one grid point. Throws BelowEntryThresholdError when no
/// grid point makes the follower switch.
LeaderDecision brute_force_leader(const Market& m, const GridSpec& g = {});
LeaderDecision brute_force_leader(const ScenarioParams& p, const GridSpec& g = {});

}  // namespace ose
