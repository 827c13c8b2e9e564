#pragma once

#include <string>

#include "ose/error.hpp"

namespace ose {

/// Unvalidated parameter record, e.g. straight from JSON or CLI flags.
struct RawParams {
    double theta = 0.0;
    double A = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    double m_i = 0.0;
    double m_e = 0.0;
    double w0 = 0.0;
    double K = 0.0;

    bool operator==(const RawParams&) const = default;
};

struct ValidationOptions {
    double theta_band = 1e-3;  // |theta - 1| must be at least this
    double theta_max = 4.0;
};

/// Exogenous model parameters that passed domain validation.
///
/// Only validate_params() constructs one, so every function taking a
/// ScenarioParams may assume:
///   0 < theta <= theta_max, |theta - 1| >= theta_band,
///   A in (0,1], gamma1 in [0,1), gamma2 in (0,1), gamma1 + gamma2 <= 1,
///   m_i, m_e, w0 in [0,1), m_e < theta, w0 + m_e < 1, K >= 0.
/// The component production cost is normalized to zero and has no field.
class ScenarioParams {
public:
    double theta() const noexcept { return raw_.theta; }
    double A() const noexcept { return raw_.A; }
    double gamma1() const noexcept { return raw_.gamma1; }
    double gamma2() const noexcept { return raw_.gamma2; }
    double m_i() const noexcept { return raw_.m_i; }
    double m_e() const noexcept { return raw_.m_e; }
    double w0() const noexcept { return raw_.w0; }
    double K() const noexcept { return raw_.K; }

    bool interior_preferred() const noexcept { return raw_.theta < 1.0; }
    const RawParams& raw() const noexcept { return raw_; }

    bool operator==(const ScenarioParams&) const = default;

private:
    explicit ScenarioParams(const RawParams& raw) : raw_(raw) {}
    RawParams raw_;

    friend ScenarioParams validate_params(const RawParams&, const ValidationOptions&);
};

ScenarioParams validate_params(const RawParams& raw, const ValidationOptions& options = {});

struct Baselines {
    double A_hat = 0.0;            // common market share
    double p_i0 = 0.0;             // closed-supply product price
    double Pi_i0 = 0.0;            // closed-supply leader profit
    double p_e0 = 0.0;             // exterior price with the incumbent supplier
    double pi_e0 = 0.0;            // exterior profit with the incumbent supplier
    double A_hat_entry_min = 0.0;  // below this no exterior manufacturer switches
};

double common_market_share(const ScenarioParams& p);

struct PriceProfit {
    double price = 0.0;
    double profit = 0.0;
};

PriceProfit closed_supply_baseline(const ScenarioParams& p);
PriceProfit exterior_baseline(const ScenarioParams& p);
double entry_threshold(const ScenarioParams& p);
Baselines baselines(const ScenarioParams& p);

/// 4 theta pi0 / (theta - m_e)^2, the lower bound on A_hat for any switching.
double entry_threshold(double theta, double m_e, double pi_e0);

/// The handful of derived quantities the open-supply analysis actually uses.
/// Kept separate from ScenarioParams so threshold searches can vary A_hat
/// while holding the exterior outside option fixed.
struct Market {
    double theta = 0.0;
    double A_hat = 0.0;
    double m_i = 0.0;
    double m_e = 0.0;
    double pi0 = 0.0;  // exterior outside option
    double p_e0 = 0.0;  // exterior price when staying with the incumbent

    bool interior_preferred() const noexcept { return theta < 1.0; }
};

Market make_market(const ScenarioParams& p);

}  // namespace ose
