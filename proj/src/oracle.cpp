// Brute-force reference. Deliberately builds everything from consumer_choice
// and plain grids; tests/check_oracle_independence.cmake enforces that.
#include "ose/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ose {

namespace {

constexpr double kTieTol = 1e-12;

std::size_t axis_points(double span, double step) { return static_cast<std::size_t>(std::floor(span / step + 1e-9)) + 1; }

std::vector<double> axis(double span, double step) {
    const std::size_t n = axis_points(span, step);
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) xs[k] = std::min(span, static_cast<double>(k) * step);
    return xs;
}

/// Follower price grid plus every p_e at which two valuation breakpoints
/// (0, 1, p_i, p_e/theta and the indifference valuation) coincide.
std::vector<double> price_grid(double p_i, double theta, double step) {
    std::vector<double> pe = axis(theta, step);
    const double extra[] = {theta * p_i, p_i, p_i - (1.0 - theta), theta};
    for (double x : extra)
        if (x >= 0.0 && x <= theta) pe.push_back(x);
    std::sort(pe.begin(), pe.end());
    pe.erase(std::unique(pe.begin(), pe.end()), pe.end());
    return pe;
}

RegionId label_region(double p_i, double p_e, double theta, const DemandBundle& q) {
    if (theta < 1.0) {
        if (q.q_i > 0.0 && q.q_e > 0.0) return RegionId::R2;
        return std::abs(p_e - (p_i - 1.0 + theta)) <= kTieTol ? RegionId::R3 : RegionId::R1;
    }
    if (q.q_i > 0.0 && q.q_e > 0.0) return RegionId::R5;
    return std::abs(p_e - theta * p_i) <= kTieTol ? RegionId::R6 : RegionId::R4;
}

struct Column {
    std::vector<double> pe, qi, qe;
};

Column column(double p_i, const Market& m, double step) {
    Column c;
    c.pe = price_grid(p_i, m.theta, step);
    c.qi.resize(c.pe.size());
    c.qe.resize(c.pe.size());
    for (std::size_t k = 0; k < c.pe.size(); ++k) {
        const auto q = integrate_demand({p_i, c.pe[k]}, m.theta, m.A_hat);
        c.qi[k] = q.q_i;
        c.qe[k] = q.q_e;
    }
    return c;
}

/// Index of the follower's best grid price at wholesale price w (first on ties).
std::size_t best_price(const Column& c, double w, double m_e, double& profit) {
    const double cost = w + m_e;
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < c.pe.size(); ++k) {
        const double v = (c.pe[k] - cost) * c.qe[k];
        if (v > best) {
            best = v;
            arg = k;
        }
    }
    profit = best;
    return arg;
}

bool switches(double profit, const Market& m) { return profit >= m.pi0 - kTieTol; }

}  // namespace

void check_grid(const GridSpec& g, double theta) {
    for (double s : {g.step_pe, g.step_pi, g.step_w})
        if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("grid steps must be positive");
    if (theta / g.step_pe + 1.0 > kMaxGridPoints || 1.0 / g.step_pi + 1.0 > kMaxGridPoints ||
        theta / g.step_w + 1.0 > kMaxGridPoints)
        throw GridTooLargeError("grid exceeds 1e8 points on an axis");
}

DemandBundle integrate_demand(PricePair prices, double theta, double A_hat) {
    std::vector<double> cuts{0.0, 1.0, prices.p_i, prices.p_e / theta};
    if (theta != 1.0) cuts.push_back((prices.p_i - prices.p_e) / (1.0 - theta));
    std::vector<double> v;
    for (double x : cuts)
        if (std::isfinite(x)) v.push_back(std::clamp(x, 0.0, 1.0));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());

    double qi = 0.0, qe = 0.0;
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const double len = v[k + 1] - v[k];
        switch (consumer_choice(0.5 * (v[k] + v[k + 1]), prices, theta)) {
            case ConsumerChoice::BuyInterior: qi += len; break;
            case ConsumerChoice::BuyExterior: qe += len; break;
            case ConsumerChoice::BuyNeither: break;
        }
    }
    return {A_hat * qi, A_hat * qe, A_hat * qi + A_hat * qe};
}

DemandBundle integrate_demand(PricePair prices, const ScenarioParams& p) {
    return integrate_demand(prices, p.theta(), common_market_share(p));
}

GridBest follower_grid_search(double p_i, double w, const Market& m, const GridSpec& g) {
    check_grid(g, m.theta);
    const Column c = column(p_i, m, g.step_pe);
    double profit = 0.0;
    const std::size_t k = best_price(c, w, m.m_e, profit);
    return {c.pe[k], profit};
}

FollowerDecision brute_force_follower(double p_i, double w, const Market& m, const GridSpec& g) {
    check_grid(g, m.theta);
    const FollowerDecision stay{Source::StayWithIncumbent, std::nullopt, m.p_e0, m.pi0};
    if (w > p_i - m.m_e) return stay;  // the follower never buys from a rival below its own cost
    const Column c = column(p_i, m, g.step_pe);
    double profit = 0.0;
    const std::size_t k = best_price(c, w, m.m_e, profit);
    if (!switches(profit, m)) return stay;
    const DemandBundle q{c.qi[k], c.qe[k], c.qi[k] + c.qe[k]};
    return {Source::SwitchToS, label_region(p_i, c.pe[k], m.theta, q), c.pe[k], profit};
}

FollowerDecision brute_force_follower(double p_i, double w, const ScenarioParams& p, const GridSpec& g) {
    return brute_force_follower(p_i, w, make_market(p), g);
}

LeaderDecision brute_force_leader(const Market& m, const GridSpec& g) {
    check_grid(g, m.theta);
    const auto pis = axis(1.0, g.step_pi);
    const auto ws = axis(m.theta, g.step_w);

    struct Hit {
        double value, p_e, p_i, w;
        RegionId region;
    };
    std::optional<Hit> best;
    std::vector<double> row_best(pis.size(), -1.0);

    for (std::size_t i = 0; i < pis.size(); ++i) {
        const double p = pis[i];
        const Column c = column(p, m, g.step_pe);
        for (double w : ws) {
            if (w > p - m.m_e) break;
            double fprofit = 0.0;
            const std::size_t k = best_price(c, w, m.m_e, fprofit);
            if (!switches(fprofit, m)) continue;
            const double value = (p - m.m_i) * c.qi[k] + w * c.qe[k];
            row_best[i] = std::max(row_best[i], value);
            // Iteration runs by increasing p_i then w, so only p_e can break an exact tie.
            if (!best || value > best->value || (value == best->value && c.pe[k] < best->p_e)) {
                const DemandBundle q{c.qi[k], c.qe[k], c.qi[k] + c.qe[k]};
                best = Hit{value, c.pe[k], p, w, label_region(p, c.pe[k], m.theta, q)};
            }
        }
    }
    if (!best) throw BelowEntryThresholdError("no grid point makes the follower switch");

    LeaderDecision out;
    out.p_i = best->p_i;
    out.w = best->w;
    out.case_label = "grid";
    out.candidate = "brute-force";
    out.region = best->region;
    out.profit = best->value;
    double lo = 2.0, hi = -1.0;
    for (std::size_t i = 0; i < pis.size(); ++i) {
        if (row_best[i] >= best->value - kTieTol) {
            lo = std::min(lo, pis[i]);
            hi = std::max(hi, pis[i]);
        }
    }
    if (hi > lo) out.p_i_interval = Interval{lo, hi};
    return out;
}

LeaderDecision brute_force_leader(const ScenarioParams& p, const GridSpec& g) {
    return brute_force_leader(make_market(p), g);
}

}  // namespace ose
