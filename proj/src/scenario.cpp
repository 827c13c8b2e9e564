#include "ose/scenario.hpp"

#include <cmath>
#include <sstream>

namespace ose {

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::invalid_argument([&] {
          std::ostringstream os;
          os << "invalid scenario:";
          for (const auto& v : violations) os << " [" << v.field << ": " << v.constraint << "]";
          return os.str();
      }()),
      violations_(std::move(violations)) {}

bool ValidationError::theta_near_one() const noexcept {
    for (const auto& v : violations_)
        if (v.kind == ViolationKind::ThetaNearOne) return true;
    return false;
}

ScenarioParams validate_params(const RawParams& raw, const ValidationOptions& options) {
    std::vector<Violation> out;
    auto fail = [&](std::string field, std::string what,
                    ViolationKind kind = ViolationKind::Domain) {
        out.push_back({std::move(field), std::move(what), kind});
    };

    const struct {
        const char* name;
        double value;
    } fields[] = {{"theta", raw.theta}, {"A", raw.A},     {"gamma1", raw.gamma1},
                  {"gamma2", raw.gamma2}, {"m_i", raw.m_i}, {"m_e", raw.m_e},
                  {"w0", raw.w0},         {"K", raw.K}};
    bool all_finite = true;
    for (const auto& f : fields) {
        if (!std::isfinite(f.value)) {
            fail(f.name, "must be a finite number");
            all_finite = false;
        }
    }
    if (!all_finite) throw ValidationError(std::move(out));

    if (!(raw.theta > 0.0)) fail("theta", "theta > 0");
    if (raw.theta > options.theta_max) fail("theta", "theta <= theta_max");
    if (std::abs(raw.theta - 1.0) < options.theta_band)
        fail("theta", "|theta - 1| >= theta_band", ViolationKind::ThetaNearOne);
    if (!(raw.A > 0.0 && raw.A <= 1.0)) fail("A", "0 < A <= 1");
    if (!(raw.gamma1 >= 0.0 && raw.gamma1 < 1.0)) fail("gamma1", "0 <= gamma1 < 1");
    if (!(raw.gamma2 > 0.0 && raw.gamma2 < 1.0)) fail("gamma2", "0 < gamma2 < 1");
    if (raw.gamma1 + raw.gamma2 > 1.0) fail("gamma1+gamma2", "gamma1 + gamma2 <= 1");
    if (!(raw.m_i >= 0.0 && raw.m_i < 1.0)) fail("m_i", "0 <= m_i < 1");
    if (!(raw.m_e >= 0.0 && raw.m_e < 1.0)) fail("m_e", "0 <= m_e < 1");
    if (!(raw.w0 >= 0.0 && raw.w0 < 1.0)) fail("w0", "0 <= w0 < 1");
    if (!(raw.K >= 0.0)) fail("K", "K >= 0");
    if (!(raw.m_e < raw.theta)) fail("m_e", "m_e < theta");
    if (!(raw.w0 + raw.m_e < 1.0)) fail("w0+m_e", "w0 + m_e < 1");

    if (!out.empty()) throw ValidationError(std::move(out));
    return ScenarioParams(raw);
}

double common_market_share(const ScenarioParams& p) {
    return p.A() + p.gamma1() * (1.0 - p.A());
}

PriceProfit closed_supply_baseline(const ScenarioParams& p) {
    const double margin = (1.0 - p.m_i()) / 2.0;
    return {(1.0 + p.m_i()) / 2.0, p.A() * margin * margin};
}

PriceProfit exterior_baseline(const ScenarioParams& p) {
    const double margin = (1.0 - p.w0() - p.m_e()) / 2.0;
    return {(1.0 + p.w0() + p.m_e()) / 2.0, p.gamma2() * (1.0 - p.A()) * margin * margin};
}

double entry_threshold(double theta, double m_e, double pi_e0) {
    const double gap = theta - m_e;
    return 4.0 * theta * pi_e0 / (gap * gap);
}

double entry_threshold(const ScenarioParams& p) {
    return entry_threshold(p.theta(), p.m_e(), exterior_baseline(p).profit);
}

Baselines baselines(const ScenarioParams& p) {
    const auto closed = closed_supply_baseline(p);
    const auto ext = exterior_baseline(p);
    return {common_market_share(p), closed.price, closed.profit,
            ext.price,              ext.profit,   entry_threshold(p.theta(), p.m_e(), ext.profit)};
}

Market make_market(const ScenarioParams& p) {
    const auto ext = exterior_baseline(p);
    return {p.theta(), common_market_share(p), p.m_i(), p.m_e(), ext.profit, ext.price};
}

}  // namespace ose
