#include "ose/follower.hpp"

#include <cmath>
#include <stdexcept>

namespace ose {

std::string_view to_string(RegionId r) {
    switch (r) {
        case RegionId::R1: return "R1";
        case RegionId::R2: return "R2";
        case RegionId::R3: return "R3";
        case RegionId::R4: return "R4";
        case RegionId::R5: return "R5";
        case RegionId::R6: return "R6";
    }
    return "?";
}

std::optional<RegionId> region_from_string(std::string_view s) {
    for (int k = 1; k <= 6; ++k) {
        const auto r = static_cast<RegionId>(k);
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

std::string_view to_string(Source s) {
    return s == Source::SwitchToS ? "switch_to_s" : "stay_with_incumbent";
}

namespace {

bool is_low_regime(RegionId r) { return r == RegionId::R1 || r == RegionId::R2 || r == RegionId::R3; }

}  // namespace

double region_price(RegionId r, double p_i, double w, const Market& m) {
    const double th = m.theta;
    switch (r) {
        case RegionId::R1:
        case RegionId::R4: return (th + w + m.m_e) / 2.0;
        case RegionId::R2: return (th * p_i + w + m.m_e) / 2.0;
        case RegionId::R3: return p_i - 1.0 + th;
        case RegionId::R5: return (th - 1.0 + p_i + w + m.m_e) / 2.0;
        case RegionId::R6: return th * p_i;
    }
    throw std::logic_error("region_price: bad region");
}

double region_follower_profit(RegionId r, double p_i, double w, const Market& m) {
    const double th = m.theta;
    const double pe = region_price(r, p_i, w, m);
    double q = 0.0;
    switch (r) {
        case RegionId::R1:
        case RegionId::R3:
        case RegionId::R4:
        case RegionId::R6: q = 1.0 - pe / th; break;
        case RegionId::R2: q = (th * p_i - pe) / (th * (1.0 - th)); break;
        case RegionId::R5: q = 1.0 - (pe - p_i) / (th - 1.0); break;
    }
    return m.A_hat * q * (pe - w - m.m_e);
}

bool in_region(RegionId r, double p, double w, const Market& m, double tol) {
    const double th = m.theta;
    const double me = m.m_e;
    if (is_low_regime(r) != (th < 1.0)) return false;
    if (w > p - me + tol) return false;
    if (m.A_hat <= 0.0) return false;

    switch (r) {
        case RegionId::R1:
            return w <= 2.0 * p - 2.0 + th - me + tol &&
                   w <= th - me - 2.0 * std::sqrt(th * m.pi0 / m.A_hat) + tol;
        case RegionId::R2:
            return w >= (2.0 - th) * p - 2.0 + 2.0 * th - me - tol &&
                   w <= th * p - me - 2.0 * std::sqrt(th * (1.0 - th) * m.pi0 / m.A_hat) + tol;
        case RegionId::R3:
            return w >= 2.0 * p - 2.0 + th - me - tol &&
                   w <= (2.0 - th) * p - 2.0 + 2.0 * th - me + tol &&
                   m.A_hat * (1.0 - p) / th * (p - 1.0 + th - w - me) >= m.pi0 - tol;
        case RegionId::R4:
            return w < 2.0 * th * p - th - me &&
                   w <= th - me - 2.0 * std::sqrt(th * m.pi0 / m.A_hat) + tol;
        case RegionId::R5:
            return w >= (2.0 * th - 1.0) * p - th + 1.0 - me - tol &&
                   w <= p - me + th - 1.0 - 2.0 * std::sqrt((th - 1.0) * m.pi0 / m.A_hat) + tol;
        case RegionId::R6:
            return w >= 2.0 * th * p - th - me - tol &&
                   w <= (2.0 * th - 1.0) * p - th + 1.0 - me + tol &&
                   m.A_hat * (1.0 - p) * (th * p - w - me) >= m.pi0 - tol;
    }
    return false;
}

std::set<RegionId> regime_regions(const Market& m) {
    if (m.theta < 1.0) return {RegionId::R1, RegionId::R2, RegionId::R3};
    return {RegionId::R4, RegionId::R5, RegionId::R6};
}

std::optional<RegionId> classify_region(double p_i, double w, const Market& m, double tol) {
    for (RegionId r : regime_regions(m))
        if (in_region(r, p_i, w, m, tol)) return r;
    return std::nullopt;
}

std::optional<RegionId> classify_region(double p_i, double w, const ScenarioParams& p) {
    return classify_region(p_i, w, make_market(p));
}

FollowerDecision follower_best_response(double p_i, double w, const Market& m) {
    if (const auto r = classify_region(p_i, w, m)) {
        return {Source::SwitchToS, r, region_price(*r, p_i, w, m),
                region_follower_profit(*r, p_i, w, m)};
    }
    return {Source::StayWithIncumbent, std::nullopt, m.p_e0, m.pi0};
}

FollowerDecision follower_best_response(double p_i, double w, const ScenarioParams& p) {
    return follower_best_response(p_i, w, make_market(p));
}

std::set<RegionId> nonempty_regions(const Market& m) {
    const double th = m.theta;
    const double me = m.m_e;
    const double gap2 = (th - me) * (th - me);
    const double entry = entry_threshold(th, me, m.pi0);
    if (m.A_hat < entry) return {};

    if (th < 1.0) {
        const double t_i = th * (2.0 - th) * (2.0 - th) * m.pi0 / ((1.0 - th) * gap2);
        if (m.A_hat >= t_i) return {RegionId::R1, RegionId::R2, RegionId::R3};
        return {RegionId::R1, RegionId::R3};
    }

    const double r5_min = (2.0 * th - 1.0) * (2.0 * th - 1.0) * m.pi0 / ((th - 1.0) * gap2);
    if (me > th / (2.0 * th - 1.0)) return {RegionId::R4};
    if (me <= 0.5 && m.A_hat >= r5_min) return {RegionId::R4, RegionId::R5, RegionId::R6};
    return {RegionId::R4, RegionId::R6};
}

std::set<RegionId> nonempty_regions(const ScenarioParams& p) { return nonempty_regions(make_market(p)); }

}  // namespace ose
