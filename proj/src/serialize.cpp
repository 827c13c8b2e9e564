#include "ose/serialize.hpp"

#include <cstdlib>
#include <ostream>
#include <set>

#include "ose/format.hpp"

namespace ose {

double rounded(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

RawParams raw_params_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError(std::vector<Violation>{{"scenario", "must be a JSON object"}});
    RawParams raw;
    struct Field {
        const char* name;
        double* slot;
        bool required;
    };
    const Field fields[] = {{"theta", &raw.theta, true},   {"A", &raw.A, true},     {"gamma1", &raw.gamma1, true},
                            {"gamma2", &raw.gamma2, true}, {"m_i", &raw.m_i, true}, {"m_e", &raw.m_e, true},
                            {"w0", &raw.w0, true},         {"K", &raw.K, false}};
    std::vector<Violation> bad;
    std::set<std::string> known;
    for (const auto& f : fields) {
        known.insert(f.name);
        const auto it = j.find(f.name);
        if (it == j.end()) {
            if (f.required) bad.push_back({f.name, "missing"});
        } else if (!it->is_number()) {
            bad.push_back({f.name, "must be a number"});
        } else {
            *f.slot = it->get<double>();
        }
    }
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) bad.push_back({key, "unknown field"});
    if (!bad.empty()) throw ValidationError(std::move(bad));
    return raw;
}

json to_json(const RawParams& p) {
    return {{"theta", p.theta}, {"A", p.A},     {"gamma1", p.gamma1}, {"gamma2", p.gamma2},
            {"m_i", p.m_i},     {"m_e", p.m_e}, {"w0", p.w0},         {"K", p.K}};
}

json to_json(const Baselines& b) {
    return {{"A_hat", rounded(b.A_hat)}, {"p_i0", rounded(b.p_i0)}, {"Pi_i0", rounded(b.Pi_i0)},
            {"p_e0", rounded(b.p_e0)},   {"pi_e0", rounded(b.pi_e0)}, {"A_hat_entry_min", rounded(b.A_hat_entry_min)}};
}

json to_json(const DemandBundle& d) {
    return {{"q_i", rounded(d.q_i)}, {"q_e", rounded(d.q_e)}, {"q_s", rounded(d.q_s)}};
}

json to_json(const FollowerDecision& f) {
    json j{{"source", std::string(to_string(f.source))}, {"region", nullptr},
           {"p_e", rounded(f.p_e)}, {"profit", rounded(f.profit)}};
    if (f.region) j["region"] = std::string(to_string(*f.region));
    return j;
}

json to_json(const LeaderDecision& d) {
    json j{{"p_i", rounded(d.p_i)},
           {"w", rounded(d.w)},
           {"case", d.case_label},
           {"candidate", d.candidate},
           {"region", std::string(to_string(d.region))},
           {"profit", rounded(d.profit)},
           {"p_i_interval", nullptr}};
    if (d.p_i_interval) j["p_i_interval"] = {rounded(d.p_i_interval->lo), rounded(d.p_i_interval->hi)};
    return j;
}

json to_json(const StrategyOutcome& s) {
    json j{{"strategy", std::string(to_string(s.strategy))},
           {"role", std::string(to_string(s.role))},
           {"reason", std::string(to_string(s.reason))},
           {"profit_open", nullptr},
           {"profit_closed", rounded(s.profit_closed)}};
    if (s.profit_open) j["profit_open"] = rounded(*s.profit_open);
    return j;
}

void write_zone_csv(std::ostream& os, const ZoneMap& map) {
    os << kZoneCsvHeader << '\n';
    for (const auto& c : map.cells) {
        const auto& o = c.outcome;
        os << format_number(c.A) << ',' << format_number(c.gamma1) << ',' << format_number(c.A_hat) << ','
           << to_string(o.strategy) << ',' << to_string(o.role) << ',';
        if (o.strategy == Strategy::Open && o.decision && o.follower) {
            os << to_string(o.decision->region) << ',' << o.decision->case_label << ','
               << format_number(o.decision->p_i) << ',' << format_number(o.decision->w) << ','
               << format_number(o.follower->p_e) << ',';
        } else {
            os << ",,,,,";
        }
        if (o.profit_open) os << format_number(*o.profit_open);
        os << ',' << format_number(o.profit_closed) << '\n';
    }
}

}  // namespace ose
