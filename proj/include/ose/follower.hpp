#pragma once

#include <optional>
#include <set>
#include <string_view>

#include "ose/scenario.hpp"

namespace ose {

/// R1-R3 exist only for theta < 1, R4-R6 only for theta > 1.
enum class RegionId { R1 = 1, R2, R3, R4, R5, R6 };

std::string_view to_string(RegionId r);
std::optional<RegionId> region_from_string(std::string_view s);

enum class Source { SwitchToS, StayWithIncumbent };

std::string_view to_string(Source s);

struct FollowerDecision {
    Source source = Source::StayWithIncumbent;
    std::optional<RegionId> region;  // set iff source == SwitchToS
    double p_e = 0.0;
    double profit = 0.0;
};

/// Slack applied to the weak inequalities of every region system, so that
/// points computed on a binding boundary still classify.
inline constexpr double kRegionTol = 1e-12;

/// Whether (p_i, w) satisfies the full inequality system of region r,
/// participation constraint included.
bool in_region(RegionId r, double p_i, double w, const Market& m, double tol = kRegionTol);

/// Lowest-numbered region whose system holds, or none.
std::optional<RegionId> classify_region(double p_i, double w, const Market& m,
                                        double tol = kRegionTol);
std::optional<RegionId> classify_region(double p_i, double w, const ScenarioParams& p);

/// The follower price that region r prescribes at (p_i, w), and its profit.
double region_price(RegionId r, double p_i, double w, const Market& m);
double region_follower_profit(RegionId r, double p_i, double w, const Market& m);

FollowerDecision follower_best_response(double p_i, double w, const Market& m);
FollowerDecision follower_best_response(double p_i, double w, const ScenarioParams& p);

std::set<RegionId> nonempty_regions(const Market& m);
std::set<RegionId> nonempty_regions(const ScenarioParams& p);

/// Regions that belong to the market's theta regime.
std::set<RegionId> regime_regions(const Market& m);

}  // namespace ose
