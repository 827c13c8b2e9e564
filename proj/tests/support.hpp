#pragma once

#include <random>

#include "ose/scenario.hpp"

namespace ose::testing {

inline ScenarioParams default_scenario(double theta, double gamma2 = 0.5) {
    return validate_params({theta, 0.3, 0.4, gamma2, 0.1, 0.1, 0.05, 0.0});
}

/// Valid parameters with theta on one side of 1. Thresholds degenerate as
/// theta approaches 1, so the sampled band stops short of it.
class ParamSampler {
public:
    explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}

    ScenarioParams draw(bool low_theta) {
        for (;;) {
            RawParams r;
            r.theta = low_theta ? uni(0.2, 0.95) : uni(1.05, 3.0);
            r.A = uni(0.05, 0.95);
            r.gamma2 = uni(0.05, 0.9);
            r.gamma1 = uni(0.0, 1.0 - r.gamma2);
            r.m_i = uni(0.0, 0.6);
            r.m_e = uni(0.0, std::min(0.6, r.theta - 0.02));
            r.w0 = uni(0.0, std::min(0.4, 0.98 - r.m_e));
            try {
                return validate_params(r);
            } catch (const ValidationError&) {
            }
        }
    }

    /// A draw whose common market clears the entry threshold.
    ScenarioParams draw_entering(bool low_theta) {
        for (;;) {
            auto p = draw(low_theta);
            if (common_market_share(p) >= entry_threshold(p)) return p;
        }
    }

    ScenarioParams draw_below_entry(bool low_theta) {
        for (;;) {
            auto p = draw(low_theta);
            if (common_market_share(p) < entry_threshold(p)) return p;
        }
    }

    double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace ose::testing
