#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ose/follower.hpp"
#include "ose/scenario.hpp"

namespace ose {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Free-form notes collected while solving (discarded candidates, tree mismatches).
using Diagnostics = std::vector<std::string>;

struct LeaderCandidate {
    RegionId region = RegionId::R1;
    std::string label;  // "Lemma2-case3", or "R2-kkt" for the enumeration solver
    double p_i = 0.0;
    double w = 0.0;
    double profit = 0.0;
    bool p_i_arbitrary = false;  // profit does not depend on p_i over p_i_interval
    std::optional<Interval> p_i_interval;
};

struct LeaderDecision {
    double p_i = 0.0;
    double w = 0.0;
    std::string case_label;  // table path such as "i.1.2.2", or "enumeration"
    std::string candidate;   // label of the candidate that was returned
    RegionId region = RegionId::R1;
    double profit = 0.0;
    std::optional<Interval> p_i_interval;
};

/// (p_i - m_i) Q_i + w Q_e at the follower's best response, or none when the
/// follower stays with its incumbent supplier.
std::optional<double> leader_profit(double p_i, double w, const Market& m);
std::optional<double> leader_profit(double p_i, double w, const ScenarioParams& p);

/// Leader objective restricted to region r, using that region's follower price.
double region_leader_profit(RegionId r, double p_i, double w, const Market& m);

/// Closed-form lemma candidates of region r whose conditions hold. Candidates
/// that fail the numerical region check or have w < 0 are dropped and noted.
/// Throws EmptyRegionError when r is not in nonempty_regions(m).
std::vector<LeaderCandidate> region_optimum(RegionId r, const Market& m, Diagnostics* diag = nullptr);
std::vector<LeaderCandidate> region_optimum(RegionId r, const ScenarioParams& p,
                                            Diagnostics* diag = nullptr);

/// Exact maximizer of the leader objective over the closure of region r,
/// found from first-order conditions on every face. None if r is empty.
std::optional<LeaderCandidate> region_kkt_optimum(RegionId r, const Market& m);

struct ThresholdRoot {
    std::optional<double> root;
    std::string dominant;  // candidate ahead when there is no root
    Interval bracket;
};

/// Root in A_hat (outside option held fixed) of the profit gap between the two
/// competing Table-2 i.1.2 candidates. Throws EmptyBracketError.
ThresholdRoot threshold_A0(const Market& m);
ThresholdRoot threshold_A0(const ScenarioParams& p);

/// Same for the Table-3 i.2.2 pair.
ThresholdRoot threshold_A1(const Market& m);
ThresholdRoot threshold_A1(const ScenarioParams& p);

/// Stage-2 equilibrium: decision-tree pick, cross-checked against every
/// lemma and KKT candidate. Throws BelowEntryThresholdError.
LeaderDecision equilibrium(const Market& m, Diagnostics* diag = nullptr);
LeaderDecision equilibrium(const ScenarioParams& p, Diagnostics* diag = nullptr);

}  // namespace ose
