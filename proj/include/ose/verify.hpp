#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "ose/oracle.hpp"
#include "ose/scenario.hpp"
#include "ose/serialize.hpp"

namespace ose {

struct Tolerances {
    double demand = 1e-9;
    double price = 1e-3;
    double profit = 1e-3;
    double follower_profit = 1e-4;
};

struct CheckRow {
    std::string name;
    double analytic = 0.0;
    double oracle = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckRow> rows;
    bool all_pass() const;
};

/// The closed forms under test. Defaults to the library; tests swap in broken
/// versions to make sure a failing check is reported.
struct Analytic {
    std::function<DemandBundle(PricePair, const ScenarioParams&)> demand;
    std::function<FollowerDecision(double, double, const ScenarioParams&)> follower;
    std::function<LeaderDecision(const ScenarioParams&)> leader;

    static Analytic library();
};

/// Runs every analytic-vs-oracle check for one scenario. Propagates
/// GridTooLargeError.
VerificationReport verify_scenario(const ScenarioParams& p, const GridSpec& g = {}, const Tolerances& tol = {},
                                   const Analytic& analytic = Analytic::library());

json to_json(const VerificationReport& r);

/// Fixed-width table, one row per check.
void print_report(std::ostream& os, const VerificationReport& r);

}  // namespace ose
