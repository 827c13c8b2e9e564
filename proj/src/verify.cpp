#include "ose/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>

#include "ose/demand.hpp"
#include "ose/follower.hpp"
#include "ose/format.hpp"
#include "ose/leader.hpp"

namespace ose {

bool VerificationReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

Analytic Analytic::library() {
    return {[](PricePair x, const ScenarioParams& p) { return ose::demand(x, p); },
            [](double p_i, double w, const ScenarioParams& p) { return follower_best_response(p_i, w, p); },
            [](const ScenarioParams& p) { return equilibrium(p); }};
}

namespace {

/// Grid maximum of objective(x) over [0, 1] with step 1e-4.
PriceProfit grid_max(const std::function<double(double)>& objective) {
    PriceProfit best{0.0, objective(0.0)};
    for (int k = 1; k <= 10000; ++k) {
        const double x = k * 1e-4;
        const double v = objective(x);
        if (v > best.profit) best = {x, v};
    }
    return best;
}

}  // namespace

VerificationReport verify_scenario(const ScenarioParams& p, const GridSpec& g, const Tolerances& tol,
                                   const Analytic& analytic) {
    check_grid(g, p.theta());
    VerificationReport rep;
    auto add = [&](std::string name, double a, double o, double t) {
        const double gap = std::abs(a - o);
        rep.rows.push_back({std::move(name), a, o, gap, t, gap <= t});
    };

    const Market m = make_market(p);
    const double th = p.theta();

    // Baselines against their own objectives.
    const auto closed = closed_supply_baseline(p);
    const auto closed_grid = grid_max([&](double x) { return p.A() * (x - p.m_i()) * (1.0 - x); });
    add("closed_baseline.price", closed.price, closed_grid.price, 1e-3);
    add("closed_baseline.profit", closed.profit, closed_grid.profit, 1e-6);
    const auto ext = exterior_baseline(p);
    const auto ext_grid =
        grid_max([&](double x) { return (x - p.w0() - p.m_e()) * p.gamma2() * (1.0 - p.A()) * (1.0 - x); });
    add("exterior_baseline.price", ext.price, ext_grid.price, 1e-3);
    add("exterior_baseline.profit", ext.profit, ext_grid.profit, 1e-6);

    // Demand on a fixed set of price pairs straddling every branch.
    const PricePair pairs[] = {{0.6, 0.45 * th / 0.8}, {0.2, 0.1}, {0.5, 0.5 * th},
                               {0.9, 0.3},             {0.3, 0.9}, {1.0, th}};
    for (std::size_t k = 0; k < std::size(pairs); ++k) {
        const auto a = analytic.demand(pairs[k], p);
        const auto o = integrate_demand(pairs[k], p);
        const std::string base = "demand[" + std::to_string(k) + "]";
        add(base + ".q_i", a.q_i, o.q_i, tol.demand);
        add(base + ".q_e", a.q_e, o.q_e, tol.demand);
        add(base + ".q_s", a.q_s, o.q_s, tol.demand);
    }

    // Leader equilibrium, or its absence.
    std::optional<LeaderDecision> eq;
    std::optional<LeaderDecision> grid;
    try {
        eq = analytic.leader(p);
    } catch (const BelowEntryThresholdError&) {
    }
    try {
        grid = brute_force_leader(m, g);
    } catch (const BelowEntryThresholdError&) {
    }
    add("leader.feasible", eq ? 1.0 : 0.0, grid ? 1.0 : 0.0, 0.0);
    if (eq && grid) {
        add("leader.profit", eq->profit, grid->profit, tol.profit);
        // The oracle's own valuation of the analytic prices. Grid arg-max
        // positions are not compared: near a binding curve they drift by
        // several steps while the profit stays put.
        const auto at = follower_grid_search(eq->p_i, eq->w, m, g);
        const auto q = integrate_demand({eq->p_i, at.p_e}, th, m.A_hat);
        add("leader.profit_at_prices", eq->profit, (eq->p_i - m.m_i) * q.q_i + eq->w * q.q_e, tol.profit);
        const double open_a = eq->profit - p.K() >= closed.profit ? 1.0 : 0.0;
        const double open_o = grid->profit - p.K() >= closed.profit ? 1.0 : 0.0;
        // A verdict this close to the tie is not decidable on the grid.
        const bool near_tie = std::abs(grid->profit - p.K() - closed.profit) <= tol.profit;
        add("stage1.open", open_a, near_tie ? open_a : open_o, 0.0);
    }

    // Follower at the equilibrium, or at the closed-supply price otherwise.
    const double fp_i = eq ? eq->p_i : closed.price;
    const double fw = eq ? eq->w : 0.0;
    const auto fa = analytic.follower(fp_i, fw, p);
    const auto fo = brute_force_follower(fp_i, fw, m, g);
    const bool fa_switch = fa.source == Source::SwitchToS;
    const bool fo_switch = fo.source == Source::SwitchToS;
    // On a binding participation curve the grid can fall just short of pi0.
    const bool binding = fa_switch && std::abs(fa.profit - m.pi0) <= 1e-6 && fp_i - m.m_e >= fw;
    add("follower.switch", fa_switch ? 1.0 : 0.0, binding ? 1.0 : (fo_switch ? 1.0 : 0.0), 0.0);
    if (binding && !fo_switch) {
        const auto best = follower_grid_search(fp_i, fw, m, g);
        add("follower.p_e", fa.p_e, best.p_e, tol.price);
        add("follower.profit", fa.profit, best.profit, tol.follower_profit);
    } else {
        add("follower.p_e", fa.p_e, fo.p_e, tol.price);
        add("follower.profit", fa.profit, fo.profit, tol.follower_profit);
    }
    return rep;
}

json to_json(const VerificationReport& r) {
    json rows = json::array();
    for (const auto& c : r.rows)
        rows.push_back({{"name", c.name},
                        {"analytic", rounded(c.analytic)},
                        {"oracle", rounded(c.oracle)},
                        {"gap", rounded(c.gap)},
                        {"tolerance", rounded(c.tolerance)},
                        {"pass", c.pass}});
    return {{"all_pass", r.all_pass()}, {"checks", rows}};
}

void print_report(std::ostream& os, const VerificationReport& r) {
    os << std::left << std::setw(28) << "check" << std::setw(16) << "analytic" << std::setw(16) << "oracle"
       << std::setw(16) << "gap" << std::setw(12) << "tol" << "result\n";
    for (const auto& c : r.rows)
        os << std::setw(28) << c.name << std::setw(16) << format_number(c.analytic) << std::setw(16)
           << format_number(c.oracle) << std::setw(16) << format_number(c.gap) << std::setw(12)
           << format_number(c.tolerance) << (c.pass ? "PASS" : "FAIL") << '\n';
    os << (r.all_pass() ? "all checks passed" : "some checks FAILED") << '\n';
}

}  // namespace ose
