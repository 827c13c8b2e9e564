#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ose/demand.hpp"
#include "ose/follower.hpp"
#include "ose/leader.hpp"
#include "ose/scenario.hpp"
#include "ose/strategy.hpp"

namespace ose {

using json = nlohmann::json;

/// A number rounded to nine significant digits before it goes into JSON.
double rounded(double x);

/// Scenario record: the eight parameter names, K optional. Unknown or
/// non-numeric fields throw ValidationError. The result is not yet validated.
RawParams raw_params_from_json(const json& j);

/// Full-precision scenario block, so that it parses back to identical values.
json to_json(const RawParams& p);

json to_json(const Baselines& b);
json to_json(const DemandBundle& d);
json to_json(const FollowerDecision& f);
json to_json(const LeaderDecision& d);
json to_json(const StrategyOutcome& s);

inline constexpr const char* kZoneCsvHeader =
    "A,gamma1,A_hat,strategy,role,region,case,p_i,w,p_e,profit_open,profit_closed";

/// Header plus one line per cell, in the map's row-major order.
void write_zone_csv(std::ostream& os, const ZoneMap& map);

}  // namespace ose
