#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ose/demand.hpp"
#include "ose/follower.hpp"
#include "ose/leader.hpp"
#include "ose/scenario.hpp"

namespace ose {

enum class Strategy { Open, Closed };
enum class Role { ProductManufacturer, ComponentManufacturer, DualManufacturer };
enum class Reason { BelowEntryThreshold, OpenDominated, OpenWeaklyBetter };

std::string_view to_string(Strategy s);
std::string_view to_string(Role r);
std::string_view to_string(Reason r);

struct StrategyOutcome {
    Strategy strategy = Strategy::Closed;
    Role role = Role::ProductManufacturer;
    Reason reason = Reason::BelowEntryThreshold;
    std::optional<double> profit_open;  // stage-2 profit minus K, when an equilibrium exists
    double profit_closed = 0.0;
    std::optional<LeaderDecision> decision;     // equilibrium, whether or not it is adopted
    std::optional<FollowerDecision> follower;   // follower response at the equilibrium
    std::optional<DemandBundle> demand;         // demands at the equilibrium
    Diagnostics diagnostics;
};

StrategyOutcome stage1_decide(const ScenarioParams& p);

/// One lattice axis: count points from lo to hi inclusive (count 1 gives lo).
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int count = 1;

    double at(int k) const { return count == 1 ? lo : lo + (hi - lo) * k / (count - 1); }
};

struct ZoneCell {
    double A = 0.0;
    double gamma1 = 0.0;
    double A_hat = 0.0;
    double entry_threshold = 0.0;
    StrategyOutcome outcome;
};

struct ZoneMap {
    Axis A_axis;
    Axis gamma1_axis;
    RawParams fixed;             // A and gamma1 are overwritten per cell
    std::vector<ZoneCell> cells;  // row-major by (A, gamma1); masked cells omitted
    int masked = 0;              // cells with gamma1 + gamma2 > 1
    int invalid = 0;             // other cells rejected by validation
};

/// Sweeps (A, gamma1) with everything else fixed. threads = 0 picks a count
/// from the hardware; output order never depends on it.
ZoneMap pareto_sweep(const RawParams& fixed, const Axis& A_axis, const Axis& gamma1_axis, unsigned threads = 0);

}  // namespace ose
