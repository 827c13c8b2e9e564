#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ose/format.hpp"
#include "ose/oracle.hpp"
#include "ose/serialize.hpp"
#include "ose/strategy.hpp"
#include "ose/verify.hpp"

namespace ose::cli {

namespace {

struct ScenarioFlags {
    std::optional<double> theta, A, gamma1, m_i, m_e;
    double gamma2 = 0.5;
    double w0 = 0.05;
    double K = 0.0;
    std::string scenario_file;
    std::vector<CLI::Option*> inline_opts;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f) {
    f.inline_opts = {
        app->add_option("--theta", f.theta, "relative perceived value of the exterior product"),
        app->add_option("--A", f.A, "original market share of the interior manufacturer"),
        app->add_option("--gamma1", f.gamma1, "market spillover degree"),
        app->add_option("--gamma2", f.gamma2, "exterior share proportion")->capture_default_str(),
        app->add_option("--m-i", f.m_i, "unit cost of the interior manufacturer"),
        app->add_option("--m-e", f.m_e, "unit cost of the exterior manufacturer"),
        app->add_option("--w0", f.w0, "incumbent supplier's component price")->capture_default_str(),
        app->add_option("--K", f.K, "component brand-building investment")->capture_default_str(),
    };
    app->add_option("--scenario", f.scenario_file, "scenario JSON file (instead of inline flags)");
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Assembles the raw record. `need` lists the inline flags that must be given.
RawParams gather(const ScenarioFlags& f, bool need_A_gamma1) {
    bool any_inline = false;
    for (auto* o : f.inline_opts) any_inline |= o->count() > 0;
    if (!f.scenario_file.empty()) {
        if (any_inline) throw UsageError("--scenario cannot be combined with inline parameter flags");
        std::ifstream in(f.scenario_file);
        if (!in) throw UsageError("cannot open scenario file " + f.scenario_file);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw UsageError("malformed scenario JSON: " + std::string(e.what()));
        }
        return raw_params_from_json(j);
    }
    std::vector<std::string> missing;
    auto take = [&](const std::optional<double>& v, const char* name, bool required) {
        if (v) return *v;
        if (required) missing.push_back(name);
        return 0.0;
    };
    RawParams raw;
    raw.theta = take(f.theta, "--theta", true);
    raw.A = take(f.A, "--A", need_A_gamma1);
    raw.gamma1 = take(f.gamma1, "--gamma1", need_A_gamma1);
    raw.m_i = take(f.m_i, "--m-i", true);
    raw.m_e = take(f.m_e, "--m-e", true);
    raw.gamma2 = f.gamma2;
    raw.w0 = f.w0;
    raw.K = f.K;
    if (!missing.empty()) {
        std::string msg = "missing required flag(s):";
        for (const auto& m : missing) msg += " " + m;
        throw UsageError(msg);
    }
    return raw;
}

/// Writes text to --out, or to out when no path was given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
    if (!f) throw UsageError("cannot write " + path);
}

std::string solve_json(const ScenarioParams& p, const StrategyOutcome& s) {
    json j;
    j["scenario"] = to_json(p.raw());
    j["baselines"] = to_json(baselines(p));
    j["strategy"] = to_json(s);
    j["leader"] = s.decision ? to_json(*s.decision) : json(nullptr);
    const auto stay = exterior_baseline(p);
    j["follower"] = s.follower ? to_json(*s.follower)
                               : to_json(FollowerDecision{Source::StayWithIncumbent, std::nullopt, stay.price,
                                                          stay.profit});
    j["demand"] = s.demand ? to_json(*s.demand) : json(nullptr);
    j["diagnostics"] = s.diagnostics;
    return j.dump(2) + "\n";
}

struct AxisFlags {
    double lo, hi;
    int count = 50;
    std::optional<double> step;
};

Axis make_axis(const AxisFlags& f, const char* name) {
    if (!std::isfinite(f.lo) || !std::isfinite(f.hi) || f.hi < f.lo)
        throw UsageError(std::string(name) + " axis needs lo <= hi");
    if (f.step) {
        if (!(*f.step > 0.0)) throw UsageError(std::string(name) + " step must be positive");
        const double n = std::floor((f.hi - f.lo) / *f.step + 1e-9) + 1.0;
        if (n > 1e6) throw UsageError(std::string(name) + " axis has too many points");
        const int count = static_cast<int>(n);
        return {f.lo, f.lo + (count - 1) * *f.step, count};
    }
    if (f.count < 1) throw UsageError(std::string(name) + " count must be at least 1");
    return {f.lo, f.hi, f.count};
}

}  // namespace

unsigned threads_from_env() {
    const char* s = std::getenv("OSE_THREADS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (*end != '\0' || v < 0) return 0;
    return static_cast<unsigned>(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Open-supply Stackelberg pricing solver"};
    app.require_subcommand(1);

    ScenarioFlags solve_f, zones_f, verify_f;
    std::string solve_out, zones_out, verify_out;
    std::string solve_format = "json", zones_format = "csv", verify_format = "table";

    auto* solve = app.add_subcommand("solve", "equilibrium and supply strategy for one scenario");
    add_scenario_flags(solve, solve_f);
    solve->add_option("--out", solve_out, "output path (default stdout)");
    solve->add_option("--format", solve_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    auto* zones = app.add_subcommand("zones", "supply-strategy map over (A, gamma1)");
    add_scenario_flags(zones, zones_f);
    AxisFlags a_axis{0.02, 0.98}, g_axis{0.0, 0.5};
    bool g_hi_set = false;
    zones->add_option("--A-lo", a_axis.lo)->capture_default_str();
    zones->add_option("--A-hi", a_axis.hi)->capture_default_str();
    zones->add_option("--A-count", a_axis.count)->capture_default_str();
    zones->add_option("--A-step", a_axis.step, "overrides --A-count");
    zones->add_option("--gamma1-lo", g_axis.lo)->capture_default_str();
    zones->add_option("--gamma1-hi", g_axis.hi, "default 1 - gamma2")->each([&](const std::string&) { g_hi_set = true; });
    zones->add_option("--gamma1-count", g_axis.count)->capture_default_str();
    zones->add_option("--gamma1-step", g_axis.step, "overrides --gamma1-count");
    zones->add_option("--out", zones_out, "CSV path (default stdout)");
    zones->add_option("--format", zones_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    auto* verify = app.add_subcommand("verify", "check closed forms against the brute-force oracle");
    add_scenario_flags(verify, verify_f);
    GridSpec grid;
    bool corrupt = false;
    verify->add_option("--grid-pe", grid.step_pe)->capture_default_str();
    verify->add_option("--grid-pi", grid.step_pi)->capture_default_str();
    verify->add_option("--grid-w", grid.step_w)->capture_default_str();
    verify->add_option("--out", verify_out, "report path (default stdout)");
    verify->add_option("--format", verify_format)->check(CLI::IsMember({"table", "json"}))->capture_default_str();
    verify->add_flag("--corrupt-fixture", corrupt)->group("");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (solve->parsed()) {
            const auto p = validate_params(gather(solve_f, true));
            const auto s = stage1_decide(p);
            if (solve_format == "json") {
                emit(solve_json(p, s), solve_out, out);
            } else {
                ZoneMap one{{p.A(), p.A(), 1}, {p.gamma1(), p.gamma1(), 1}, p.raw(), {}, 0, 0};
                one.cells.push_back({p.A(), p.gamma1(), common_market_share(p), entry_threshold(p), s});
                std::ostringstream os;
                write_zone_csv(os, one);
                emit(os.str(), solve_out, out);
            }
            return kOk;
        }
        if (zones->parsed()) {
            auto raw = gather(zones_f, false);
            if (!g_hi_set) g_axis.hi = 1.0 - raw.gamma2;
            const Axis ax = make_axis(a_axis, "A");
            const Axis gx = make_axis(g_axis, "gamma1");
            // Validate the fixed part once so a bad theta is reported up front.
            RawParams probe = raw;
            probe.A = ax.lo > 0.0 ? ax.lo : 0.5;
            probe.gamma1 = 0.0;
            validate_params(probe);

            const auto map = pareto_sweep(raw, ax, gx, threads_from_env());
            std::ostringstream os;
            int open = 0;
            for (const auto& c : map.cells) open += c.outcome.strategy == Strategy::Open;
            if (zones_format == "csv") {
                write_zone_csv(os, map);
            } else {
                json cells = json::array();
                for (const auto& c : map.cells) {
                    json cell{{"A", rounded(c.A)}, {"gamma1", rounded(c.gamma1)}, {"A_hat", rounded(c.A_hat)},
                              {"entry_threshold", rounded(c.entry_threshold)}};
                    cell.update(to_json(c.outcome));
                    cell["leader"] = c.outcome.decision ? to_json(*c.outcome.decision) : json(nullptr);
                    cells.push_back(cell);
                }
                os << json{{"fixed", to_json(raw)}, {"cells", cells}}.dump(2) << '\n';
            }
            emit(os.str(), zones_out, out);
            std::ostream& summary = zones_out.empty() ? err : out;
            summary << "cells: " << map.cells.size() << " open: " << open
                    << " closed: " << map.cells.size() - open << " masked: " << map.masked
                    << " invalid: " << map.invalid << '\n';
            return kOk;
        }
        if (verify->parsed()) {
            const auto p = validate_params(gather(verify_f, true));
            auto analytic = Analytic::library();
            if (corrupt) {
                analytic.demand = [](PricePair x, const ScenarioParams& q) {
                    auto d = ose::demand(x, q);
                    d.q_i *= 1.01;
                    d.q_s = d.q_i + d.q_e;
                    return d;
                };
            }
            const auto rep = verify_scenario(p, grid, {}, analytic);
            std::ostringstream os;
            if (verify_format == "json")
                os << to_json(rep).dump(2) << '\n';
            else
                print_report(os, rep);
            emit(os.str(), verify_out, out);
            return rep.all_pass() ? kOk : kCheckFailed;
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const GridTooLargeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace ose::cli
