#include "ose/strategy.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace ose {

std::string_view to_string(Strategy s) { return s == Strategy::Open ? "open" : "closed"; }

std::string_view to_string(Role r) {
    switch (r) {
        case Role::ProductManufacturer: return "product_manufacturer";
        case Role::ComponentManufacturer: return "component_manufacturer";
        case Role::DualManufacturer: return "dual_manufacturer";
    }
    return "?";
}

std::string_view to_string(Reason r) {
    switch (r) {
        case Reason::BelowEntryThreshold: return "below_entry_threshold";
        case Reason::OpenDominated: return "open_dominated";
        case Reason::OpenWeaklyBetter: return "open_weakly_better";
    }
    return "?";
}

namespace {

// Own demand below this is a boundary artifact, not a product line.
constexpr double kDemandEps = 1e-12;

}  // namespace

StrategyOutcome stage1_decide(const ScenarioParams& p) {
    StrategyOutcome out;
    out.profit_closed = closed_supply_baseline(p).profit;
    const Market m = make_market(p);
    if (m.A_hat < entry_threshold(p)) return out;

    LeaderDecision eq;
    try {
        eq = equilibrium(m, &out.diagnostics);
    } catch (const BelowEntryThresholdError&) {
        return out;
    }
    const auto f = follower_best_response(eq.p_i, eq.w, m);
    const auto q = demand({eq.p_i, f.p_e}, m.theta, m.A_hat);
    out.decision = eq;
    out.follower = f;
    out.demand = q;
    out.profit_open = eq.profit - p.K();

    if (*out.profit_open >= out.profit_closed) {
        out.strategy = Strategy::Open;
        out.reason = Reason::OpenWeaklyBetter;
        out.role = q.q_i > kDemandEps ? Role::DualManufacturer : Role::ComponentManufacturer;
    } else {
        out.reason = Reason::OpenDominated;
    }
    return out;
}

ZoneMap pareto_sweep(const RawParams& fixed, const Axis& A_axis, const Axis& gamma1_axis, unsigned threads) {
    ZoneMap map{A_axis, gamma1_axis, fixed, {}, 0, 0};
    const int rows = std::max(A_axis.count, 0), cols = std::max(gamma1_axis.count, 0);
    const std::size_t n = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);

    enum class Slot { Masked, Invalid, Ok };
    std::vector<Slot> slots(n, Slot::Invalid);
    std::vector<ZoneCell> cells(n);

    auto solve_cell = [&](std::size_t idx) {
        RawParams raw = fixed;
        raw.A = A_axis.at(static_cast<int>(idx / cols));
        raw.gamma1 = gamma1_axis.at(static_cast<int>(idx % cols));
        if (raw.gamma1 + raw.gamma2 > 1.0) {
            slots[idx] = Slot::Masked;
            return;
        }
        try {
            const auto p = validate_params(raw);
            cells[idx] = {raw.A, raw.gamma1, common_market_share(p), entry_threshold(p), stage1_decide(p)};
            slots[idx] = Slot::Ok;
        } catch (const ValidationError&) {
            slots[idx] = Slot::Invalid;
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) solve_cell(i);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (slots[i] == Slot::Masked)
            ++map.masked;
        else if (slots[i] == Slot::Invalid)
            ++map.invalid;
        else
            map.cells.push_back(std::move(cells[i]));
    }
    return map;
}

}  // namespace ose
