#include "ose/leader.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "ose/demand.hpp"
#include "ose/format.hpp"

namespace ose {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kProfitMatchTol = 1e-9;
constexpr double kTreeSlack = 1e-9;

double sq(double x) { return x * x; }

/// Case thresholds on A_hat shared by the lemmas and the decision trees.
struct Thresholds {
    double entry, t16;
    // theta < 1
    double t_a, t_b, t_i, t_mi, t_int;
    // theta > 1
    double u1, u2, u3, r5_lo, r5_hi;
};

Thresholds thresholds(const Market& m) {
    const double th = m.theta, me = m.m_e, mi = m.m_i, pi0 = m.pi0;
    const double gap2 = sq(th - me);
    Thresholds t{};
    t.entry = 4.0 * th * pi0 / gap2;
    t.t16 = 16.0 * th * pi0 / gap2;
    if (th < 1.0) {
        t.t_a = 4.0 * th * pi0 / ((1.0 - th) * gap2);
        t.t_b = 4.0 * th * sq(2.0 - th) * pi0 / ((1.0 - th) * gap2);
        t.t_i = th * sq(2.0 - th) * pi0 / ((1.0 - th) * gap2);
        t.t_mi = 4.0 * th * pi0 / (sq(1.0 - mi) * (1.0 - th));
        const double d = th * mi - me;
        t.t_int = d == 0.0 ? kInf : 16.0 * th * (1.0 - th) * pi0 / sq(d);
    } else {
        t.u1 = sq(2.0 * th - 1.0) * pi0 / (th * sq(th - 1.0));
        t.u2 = (1.0 - me * me) > 0.0 ? 4.0 * pi0 / ((th - 1.0) * (1.0 - me * me)) : kInf;
        t.u3 = 4.0 * th * th * pi0 / ((th - 1.0) * (th * th - me * me));
        t.r5_lo = sq(2.0 * th - 1.0) * pi0 / ((th - 1.0) * gap2);
        t.r5_hi = 4.0 * pi0 / (th - 1.0);
    }
    return t;
}

struct Point {
    double p_i, w;
};

// Closed-form points of the lemmas, valid or not; conditions are checked separately.

Point plateau_point(const Market& m, bool unconstrained) {
    const double th = m.theta, me = m.m_e;
    if (unconstrained) return {1.0, (th - me) / 2.0};
    return {1.0, th - me - 2.0 * std::sqrt(th * m.pi0 / m.A_hat)};
}

Point r3_point(int which, const Market& m) {
    const double th = m.theta, me = m.m_e;
    switch (which) {
        case 1: return {(4.0 - 3.0 * th + me) / (2.0 * (2.0 - th)), (th - me) / 2.0};
        case 2: {
            const double s = std::sqrt(th * m.pi0 / (m.A_hat * (1.0 - th)));
            return {1.0 - s, th - me - (2.0 - th) * s};
        }
        default:
            return {(2.0 - th + me) / 2.0, (th - me) / 2.0 - 2.0 * th * m.pi0 / (m.A_hat * (th - me))};
    }
}

Point r2_point(int which, const Market& m) {
    const double th = m.theta, me = m.m_e, mi = m.m_i;
    switch (which) {
        case 1: return {(1.0 + mi) / 2.0, (th - me) / 2.0};
        case 2: return r3_point(1, m);
        case 3:
            return {(1.0 + mi) / 2.0,
                    th * (1.0 + mi) / 2.0 - me - 2.0 * std::sqrt(th * (1.0 - th) * m.pi0 / m.A_hat)};
        default: return r3_point(2, m);
    }
}

Point r6_point(int which, const Market& m) {
    const double th = m.theta, me = m.m_e;
    switch (which) {
        case 1: {
            const double p = th / (2.0 * th - 1.0);
            return {p, p - me};
        }
        case 2: return {(1.0 + me) / 2.0, (1.0 - me) / 2.0};
        case 3: {
            const double p = (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * m.pi0 / (m.A_hat * (th - 1.0))))) / 2.0;
            return {p, p - me};
        }
        default:
            return {(th + me) / (2.0 * th), (th - me) / 2.0 - 2.0 * th * m.pi0 / (m.A_hat * (th - me))};
    }
}

Point r5_point(int which, const Market& m) {
    const double th = m.theta, me = m.m_e;
    if (which == 1) return {0.5, 0.5 - m.m_e};
    const double s = std::sqrt(m.pi0 / (m.A_hat * (th - 1.0)));
    return {1.0 - s, th - me - (2.0 * th - 1.0) * s};
}

std::string lemma_label(int lemma, int which) {
    return "Lemma" + std::to_string(lemma) + "-case" + std::to_string(which);
}

Interval plateau_interval(RegionId r, double w, const Market& m) {
    const double th = m.theta, me = m.m_e;
    const double lo = r == RegionId::R1 ? (w + 2.0 - th + me) / 2.0 : (w + th + me) / (2.0 * th);
    return {std::max(lo, w + me), 1.0};
}

/// Builds a candidate and runs the region check on it. Returns none, with a
/// note, when the point is outside its region.
std::optional<LeaderCandidate> make_candidate(RegionId r, std::string label, Point pt, const Market& m,
                                              Diagnostics* diag) {
    auto note = [&](const std::string& why) {
        if (diag) diag->push_back(label + " (" + std::string(to_string(r)) + ") discarded: " + why);
    };
    if (!std::isfinite(pt.p_i) || !std::isfinite(pt.w)) {
        note("closed form not finite");
        return std::nullopt;
    }
    if (pt.w < -kRegionTol) {
        note("w = " + format_number(pt.w) + " < 0");
        return std::nullopt;
    }
    pt.w = std::max(pt.w, 0.0);
    if (pt.p_i < 0.0 || pt.p_i > 1.0) {
        note("p_i = " + format_number(pt.p_i) + " outside [0,1]");
        return std::nullopt;
    }
    if (!in_region(r, pt.p_i, pt.w, m)) {
        note("point fails the region inequalities");
        return std::nullopt;
    }
    const auto actual = leader_profit(pt.p_i, pt.w, m);
    const double claimed = region_leader_profit(r, pt.p_i, pt.w, m);
    if (!actual || std::abs(*actual - claimed) > kProfitMatchTol) {
        note("region objective disagrees with the best-response profit");
        return std::nullopt;
    }
    LeaderCandidate c{r, std::move(label), pt.p_i, pt.w, *actual, false, std::nullopt};
    if (r == RegionId::R1 || r == RegionId::R4) {
        c.p_i_arbitrary = true;
        c.p_i_interval = plateau_interval(r, c.w, m);
    }
    return c;
}

Market with_A_hat(Market m, double A_hat) {
    m.A_hat = A_hat;
    return m;
}

}  // namespace

std::optional<double> leader_profit(double p_i, double w, const Market& m) {
    const auto f = follower_best_response(p_i, w, m);
    if (f.source != Source::SwitchToS) return std::nullopt;
    const auto q = demand({p_i, f.p_e}, m.theta, m.A_hat);
    return (p_i - m.m_i) * q.q_i + w * q.q_e;
}

std::optional<double> leader_profit(double p_i, double w, const ScenarioParams& p) {
    return leader_profit(p_i, w, make_market(p));
}

double region_leader_profit(RegionId r, double p, double w, const Market& m) {
    const double th = m.theta, mi = m.m_i, Ah = m.A_hat;
    const double pe = region_price(r, p, w, m);
    switch (r) {
        case RegionId::R1:
        case RegionId::R3:
        case RegionId::R4:
        case RegionId::R6: return w * Ah * (1.0 - pe / th);
        case RegionId::R2:
            return Ah * ((p - mi) * (1.0 - (p - pe) / (1.0 - th)) + w * (th * p - pe) / (th * (1.0 - th)));
        case RegionId::R5:
            return Ah * ((p - mi) * (pe - th * p) / (th - 1.0) + w * (1.0 - (pe - p) / (th - 1.0)));
    }
    return 0.0;
}

std::vector<LeaderCandidate> region_optimum(RegionId r, const Market& m, Diagnostics* diag) {
    if (!nonempty_regions(m).count(r))
        throw EmptyRegionError("region " + std::string(to_string(r)) + " is empty for these parameters");

    const auto t = thresholds(m);
    const double th = m.theta, me = m.m_e, mi = m.m_i, Ah = m.A_hat;
    std::vector<std::pair<int, Point>> hits;  // (case, point)
    int lemma = 0;

    switch (r) {
        case RegionId::R1:
        case RegionId::R4:
            lemma = r == RegionId::R1 ? 1 : 4;
            if (Ah >= t.t16)
                hits.push_back({1, plateau_point(m, true)});
            else
                hits.push_back({2, plateau_point(m, false)});
            break;
        case RegionId::R3:
            lemma = 2;
            if (Ah >= t.t_b) hits.push_back({1, r3_point(1, m)});
            if (Ah >= t.t_a && Ah < t.t_b) hits.push_back({2, r3_point(2, m)});
            if (Ah < t.t_a) hits.push_back({3, r3_point(3, m)});
            break;
        case RegionId::R2: {
            lemma = 3;
            const bool wide = 1.0 - mi >= (th - me) / (2.0 - th);
            const bool narrow = 1.0 - mi <= (th - me) / (2.0 - th);
            if (Ah >= t.t_int && wide) hits.push_back({1, r2_point(1, m)});
            if (Ah >= t.t_b && narrow) hits.push_back({2, r2_point(2, m)});
            if (Ah >= t.t_mi && Ah < t.t_int) hits.push_back({3, r2_point(3, m)});
            if (Ah < std::min(t.t_mi, t.t_b)) hits.push_back({4, r2_point(4, m)});
            break;
        }
        case RegionId::R6:
            lemma = 5;
            if (Ah > t.u1 && me > 1.0 / (2.0 * th - 1.0) && me <= th / (2.0 * th - 1.0))
                hits.push_back({1, r6_point(1, m)});
            if (Ah > t.u2 && me <= 1.0 / (2.0 * th - 1.0)) hits.push_back({2, r6_point(2, m)});
            if (Ah > t.u3 && Ah <= t.u2) hits.push_back({3, r6_point(3, m)});
            if (Ah <= t.u3) hits.push_back({4, r6_point(4, m)});
            break;
        case RegionId::R5:
            lemma = 6;
            if (Ah > t.r5_hi && me <= 0.5) hits.push_back({1, r5_point(1, m)});
            if (Ah >= t.r5_lo && Ah <= t.r5_hi) hits.push_back({2, r5_point(2, m)});
            break;
    }

    std::vector<LeaderCandidate> out;
    for (const auto& [which, pt] : hits)
        if (auto c = make_candidate(r, lemma_label(lemma, which), pt, m, diag)) out.push_back(std::move(*c));
    return out;
}

std::vector<LeaderCandidate> region_optimum(RegionId r, const ScenarioParams& p, Diagnostics* diag) {
    return region_optimum(r, make_market(p), diag);
}

// ---------------------------------------------------------------------------
// Exact region maximizer

namespace {

/// Boundary w = a + b p + c / (1 - p) of a region in the (p_i, w) plane.
struct Curve {
    double a, b, c;
    double at(double p) const { return a + b * p + (c != 0.0 ? c / (1.0 - p) : 0.0); }
};

/// Crossings of two curves on [0, 1).
std::vector<double> crossings(const Curve& f, const Curve& g) {
    const double a = f.a - g.a, b = f.b - g.b, c = f.c - g.c;
    // (a + b p)(1 - p) + c = 0
    const double qa = -b, qb = b - a, qc = a + c;
    std::vector<double> roots;
    if (std::abs(qa) < 1e-15) {
        if (std::abs(qb) > 1e-15) roots.push_back(-qc / qb);
    } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
            const double s = std::sqrt(disc);
            roots.push_back((-qb + s) / (2.0 * qa));
            roots.push_back((-qb - s) / (2.0 * qa));
        }
    }
    std::vector<double> out;
    for (double p : roots)
        if (p >= 0.0 && p < 1.0) out.push_back(p);
    return out;
}

/// Maximizer of a concave-or-not quadratic g on [lo, hi], from the endpoints
/// and the vertex.
std::vector<double> quadratic_candidates(const std::function<double(double)>& g, double lo, double hi) {
    if (hi - lo < 1e-14) return {lo};
    const double mid = (lo + hi) / 2.0, h = (hi - lo) / 2.0;
    const double f0 = g(lo), f1 = g(mid), f2 = g(hi);
    const double curv = (f0 - 2.0 * f1 + f2) / (2.0 * h * h);
    const double slope = (f2 - f0) / (2.0 * h);
    std::vector<double> out{lo, hi};
    if (curv < 0.0) out.push_back(std::clamp(mid - slope / (2.0 * curv), lo, hi));
    return out;
}

struct Best {
    std::optional<LeaderCandidate> cand;
    void offer(RegionId r, const std::string& label, double p, double w, const Market& m) {
        if (!std::isfinite(p) || !std::isfinite(w) || p < 0.0 || p > 1.0 || w < -kRegionTol) return;
        w = std::max(w, 0.0);
        if (!in_region(r, p, w, m)) return;
        const auto v = leader_profit(p, w, m);
        if (!v) return;
        if (!cand || *v > cand->profit + 1e-15) cand = LeaderCandidate{r, label, p, w, *v, false, std::nullopt};
    }
};

std::optional<LeaderCandidate> plateau_kkt(RegionId r, const Market& m) {
    const double th = m.theta, me = m.m_e;
    const double cap = std::min({th - me - 2.0 * std::sqrt(th * m.pi0 / m.A_hat), 1.0 - me, th - me});
    if (cap < 0.0) return std::nullopt;
    Best best;
    const std::string label = std::string(to_string(r)) + "-kkt";
    best.offer(r, label, 1.0, std::min((th - me) / 2.0, cap), m);
    if (!best.cand) return std::nullopt;
    best.cand->p_i_arbitrary = true;
    best.cand->p_i_interval = plateau_interval(r, best.cand->w, m);
    return best.cand;
}

/// R3 and R6: the leader earns w Q_e with Q_e proportional to (1 - p_i), so
/// w sits on the upper envelope and only p_i is free.
std::optional<LeaderCandidate> envelope_kkt(RegionId r, const Market& m) {
    const double th = m.theta, me = m.m_e, Ah = m.A_hat, pi0 = m.pi0;
    std::vector<Curve> ups, lows;
    if (r == RegionId::R3) {
        ups = {{th - 1.0 - me, 1.0, -th * pi0 / Ah}, {-2.0 + 2.0 * th - me, 2.0 - th, 0.0}, {-me, 1.0, 0.0}};
        lows = {{-2.0 + th - me, 2.0, 0.0}, {0.0, 0.0, 0.0}};
    } else {
        ups = {{-me, th, -pi0 / Ah}, {-th + 1.0 - me, 2.0 * th - 1.0, 0.0}, {-me, 1.0, 0.0}};
        lows = {{-th - me, 2.0 * th, 0.0}, {0.0, 0.0, 0.0}};
    }
    std::vector<double> ps{0.0};
    for (const auto& f : ups)
        if (f.b != 0.0) ps.push_back((f.b - f.a) / (2.0 * f.b));
    std::vector<Curve> all = ups;
    all.insert(all.end(), lows.begin(), lows.end());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            for (double p : crossings(all[i], all[j])) ps.push_back(p);

    Best best;
    const std::string label = std::string(to_string(r)) + "-kkt";
    for (double p : ps) {
        if (!(p >= 0.0 && p < 1.0)) continue;
        double upper = kInf, lower = -kInf;
        for (const auto& f : ups) upper = std::min(upper, f.at(p));
        for (const auto& f : lows) lower = std::max(lower, f.at(p));
        if (upper >= lower - kRegionTol) best.offer(r, label, p, upper, m);
    }
    return best.cand;
}

/// R2 and R5: a concave quadratic over a polygon bounded by lines in p_i.
std::optional<LeaderCandidate> polygon_kkt(RegionId r, const Market& m) {
    const double th = m.theta, me = m.m_e, mi = m.m_i, Ah = m.A_hat, pi0 = m.pi0;
    struct Line {
        double a, b;
    };
    std::vector<Line> lows, ups;
    if (r == RegionId::R2) {
        const double c = 2.0 * std::sqrt(th * (1.0 - th) * pi0 / Ah);
        lows = {{-2.0 + 2.0 * th - me, 2.0 - th}, {0.0, 0.0}};
        ups = {{-me - c, th}, {-me, 1.0}};
    } else {
        const double c = 2.0 * std::sqrt((th - 1.0) * pi0 / Ah);
        lows = {{-th + 1.0 - me, 2.0 * th - 1.0}, {0.0, 0.0}};
        ups = {{th - 1.0 - me - c, 1.0}, {-me, 1.0}};
    }
    auto obj = [&](double p, double w) { return region_leader_profit(r, p, w, m); };

    Best best;
    const std::string label = std::string(to_string(r)) + "-kkt";
    best.offer(r, label, (1.0 + mi) / 2.0, (th - me) / 2.0, m);

    std::vector<Line> edges = lows;
    edges.insert(edges.end(), ups.begin(), ups.end());
    for (const auto& e : edges) {
        double lo = 0.0, hi = 1.0;
        bool empty = false;
        for (const auto& l : lows) {  // e.a + e.b p >= l.a + l.b p
            const double d = e.b - l.b, rhs = l.a - e.a;
            if (std::abs(d) < 1e-15) {
                if (rhs > kRegionTol) empty = true;
            } else if (d > 0.0) {
                lo = std::max(lo, rhs / d);
            } else {
                hi = std::min(hi, rhs / d);
            }
        }
        for (const auto& u : ups) {  // e.a + e.b p <= u.a + u.b p
            const double d = e.b - u.b, rhs = u.a - e.a;
            if (std::abs(d) < 1e-15) {
                if (rhs < -kRegionTol) empty = true;
            } else if (d < 0.0) {
                lo = std::max(lo, rhs / d);
            } else {
                hi = std::min(hi, rhs / d);
            }
        }
        if (empty || lo > hi + kRegionTol) continue;
        hi = std::max(hi, lo);
        auto g = [&](double p) { return obj(p, e.a + e.b * p); };
        for (double p : quadratic_candidates(g, lo, hi)) best.offer(r, label, p, e.a + e.b * p, m);
    }
    for (double p : {0.0, 1.0}) {
        double lw = -kInf, uw = kInf;
        for (const auto& l : lows) lw = std::max(lw, l.a + l.b * p);
        for (const auto& u : ups) uw = std::min(uw, u.a + u.b * p);
        if (lw > uw) continue;
        auto g = [&](double w) { return obj(p, w); };
        for (double w : quadratic_candidates(g, lw, uw)) best.offer(r, label, p, w, m);
    }
    return best.cand;
}

}  // namespace

std::optional<LeaderCandidate> region_kkt_optimum(RegionId r, const Market& m) {
    if (!regime_regions(m).count(r) || m.A_hat <= 0.0) return std::nullopt;
    switch (r) {
        case RegionId::R1:
        case RegionId::R4: return plateau_kkt(r, m);
        case RegionId::R3:
        case RegionId::R6: return envelope_kkt(r, m);
        case RegionId::R2:
        case RegionId::R5: return polygon_kkt(r, m);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Threshold roots

namespace {

constexpr int kScanPoints = 200;
constexpr double kBisectTol = 1e-10;

ThresholdRoot find_root(const std::function<double(double)>& gap, Interval bracket, const std::string& pos_label,
                        const std::string& neg_label) {
    ThresholdRoot out{std::nullopt, "", bracket};
    std::vector<double> xs(kScanPoints), fs(kScanPoints);
    for (int k = 0; k < kScanPoints; ++k) {
        xs[k] = bracket.lo + (bracket.hi - bracket.lo) * k / (kScanPoints - 1);
        fs[k] = gap(xs[k]);
    }
    for (int k = 0; k + 1 < kScanPoints; ++k) {
        if (fs[k] == 0.0) {
            out.root = xs[k];
            break;
        }
        if ((fs[k] < 0.0) != (fs[k + 1] < 0.0)) {
            double lo = xs[k], hi = xs[k + 1];
            const bool lo_neg = fs[k] < 0.0;
            while (hi - lo > kBisectTol) {
                const double mid = 0.5 * (lo + hi);
                if ((gap(mid) < 0.0) == lo_neg)
                    lo = mid;
                else
                    hi = mid;
            }
            out.root = 0.5 * (lo + hi);
            break;
        }
    }
    if (!out.root && fs.back() == 0.0) out.root = xs.back();
    out.dominant = fs[kScanPoints / 2] >= 0.0 ? pos_label : neg_label;
    return out;
}

}  // namespace

ThresholdRoot threshold_A0(const Market& m) {
    if (!(m.theta < 1.0)) throw EmptyBracketError("threshold_A0 needs theta < 1");
    const auto t = thresholds(m);
    if (!std::isfinite(t.t_int)) throw EmptyBracketError("bracket upper bound diverges (theta m_i = m_e)");
    if (t.t_mi > t.t_int) throw EmptyBracketError("bracket bounds cross");
    auto gap = [&](double Ah) {
        const Market mm = with_A_hat(m, Ah);
        const auto a = r3_point(3, mm);
        const auto b = r2_point(3, mm);
        return region_leader_profit(RegionId::R3, a.p_i, a.w, mm) - region_leader_profit(RegionId::R2, b.p_i, b.w, mm);
    };
    return find_root(gap, {t.t_mi, t.t_int}, lemma_label(2, 3), lemma_label(3, 3));
}

ThresholdRoot threshold_A0(const ScenarioParams& p) { return threshold_A0(make_market(p)); }

ThresholdRoot threshold_A1(const Market& m) {
    if (!(m.theta > 1.0)) throw EmptyBracketError("threshold_A1 needs theta > 1");
    const auto t = thresholds(m);
    const double lo = std::max(t.u2, t.entry);
    if (!std::isfinite(lo) || lo > t.t16) throw EmptyBracketError("bracket bounds cross");
    auto gap = [&](double Ah) {
        const Market mm = with_A_hat(m, Ah);
        const auto a = r6_point(2, mm);
        const auto b = plateau_point(mm, false);
        return region_leader_profit(RegionId::R6, a.p_i, a.w, mm) - region_leader_profit(RegionId::R4, b.p_i, b.w, mm);
    };
    return find_root(gap, {lo, t.t16}, lemma_label(5, 2), lemma_label(4, 2));
}

ThresholdRoot threshold_A1(const ScenarioParams& p) { return threshold_A1(make_market(p)); }

// ---------------------------------------------------------------------------
// Equilibrium

namespace {

struct TreePick {
    std::string path;
    RegionId region;
    std::string label;
    Point point;
};

TreePick walk_low(const Market& m, Diagnostics* diag) {
    const auto t = thresholds(m);
    const double th = m.theta, me = m.m_e, mi = m.m_i, Ah = m.A_hat;
    const TreePick r3c3{"", RegionId::R3, lemma_label(2, 3), r3_point(3, m)};
    auto at = [](TreePick p, std::string path) {
        p.path = std::move(path);
        return p;
    };
    if (Ah < t.t_i) return at(r3c3, "ii");
    if (1.0 - mi >= (th - me) / (2.0 - th)) {
        if (Ah >= t.t_int) return {"i.1.1", RegionId::R2, lemma_label(3, 1), r2_point(1, m)};
        if (Ah >= t.t_mi) {
            const TreePick r2c3{"i.1.2.1", RegionId::R2, lemma_label(3, 3), r2_point(3, m)};
            const auto root = threshold_A0(m);
            bool r2_side;
            if (root.root) {
                r2_side = Ah >= *root.root;
            } else {
                r2_side = root.dominant == r2c3.label;
                if (diag) diag->push_back("threshold A0 has no root on its bracket; " + root.dominant + " dominates");
            }
            return r2_side ? r2c3 : at(r3c3, "i.1.2.2");
        }
        if (Ah > t.t_a) return {"i.1.3", RegionId::R3, lemma_label(2, 2), r3_point(2, m)};
        return at(r3c3, "i.1.4");
    }
    if (Ah >= t.t_b) return {"i.2.1", RegionId::R3, lemma_label(2, 1), r3_point(1, m)};
    if (Ah > t.t_a) return {"i.2.2", RegionId::R3, lemma_label(2, 2), r3_point(2, m)};
    return at(r3c3, "i.2.3");
}

std::optional<TreePick> walk_high(const Market& m, Diagnostics* diag) {
    const auto t = thresholds(m);
    const double th = m.theta, me = m.m_e, Ah = m.A_hat;
    auto r4 = [&](const std::string& base) -> TreePick {
        if (Ah >= t.t16) return {base + ".1", RegionId::R4, lemma_label(4, 1), plateau_point(m, true)};
        return {base + ".2", RegionId::R4, lemma_label(4, 2), plateau_point(m, false)};
    };
    if (me > th / (2.0 * th - 1.0)) return r4("ii");
    const bool low_cost = me <= 1.0 / (2.0 * th - 1.0);
    if (Ah > t.u1 && !low_cost) return r4("i.1");
    if (Ah > t.u2 && low_cost) {
        if (Ah >= t.t16) return TreePick{"i.2.1", RegionId::R4, lemma_label(4, 1), plateau_point(m, true)};
        const TreePick r4c2{"i.2.2.1", RegionId::R4, lemma_label(4, 2), plateau_point(m, false)};
        const TreePick r6c2{"i.2.2.2", RegionId::R6, lemma_label(5, 2), r6_point(2, m)};
        const auto root = threshold_A1(m);
        if (root.root) return Ah >= *root.root ? r4c2 : r6c2;
        if (diag) diag->push_back("threshold A1 has no root on its bracket; " + root.dominant + " dominates");
        return root.dominant == r4c2.label ? r4c2 : r6c2;
    }
    if (Ah > t.u3 && Ah <= t.u2) return TreePick{"i.3", RegionId::R6, lemma_label(5, 3), r6_point(3, m)};
    if (Ah <= t.u3) return TreePick{"i.4", RegionId::R6, lemma_label(5, 4), r6_point(4, m)};
    if (diag) diag->push_back("no Table-3 case matches; falling back to enumeration");
    return std::nullopt;
}

/// Enumeration order doubles as the tie preference.
std::vector<RegionId> preference(const Market& m) {
    if (m.theta < 1.0) return {RegionId::R3, RegionId::R2, RegionId::R1};
    return {RegionId::R4, RegionId::R6, RegionId::R5};
}

LeaderDecision to_decision(const LeaderCandidate& c, std::string path) {
    return {c.p_i, c.w, std::move(path), c.label, c.region, c.profit, c.p_i_interval};
}

}  // namespace

LeaderDecision equilibrium(const Market& m, Diagnostics* diag) {
    const double entry = entry_threshold(m.theta, m.m_e, m.pi0);
    if (m.A_hat < entry)
        throw BelowEntryThresholdError("common market share " + format_number(m.A_hat) +
                                       " is below the entry threshold " + format_number(entry));

    std::optional<TreePick> pick = m.theta < 1.0 ? std::optional<TreePick>(walk_low(m, diag)) : walk_high(m, diag);
    std::optional<LeaderCandidate> tree;
    if (pick) {
        tree = make_candidate(pick->region, pick->label, pick->point, m, diag);
        if (!tree && diag) diag->push_back("tree case " + pick->path + " rejected by the region check");
    }

    std::optional<LeaderCandidate> best;
    auto offer = [&](const LeaderCandidate& c) {
        if (!best || c.profit > best->profit + 1e-12) best = c;
    };
    const auto open = nonempty_regions(m);
    for (RegionId r : preference(m)) {
        if (open.count(r))
            for (const auto& c : region_optimum(r, m, diag)) offer(c);
        if (auto c = region_kkt_optimum(r, m)) offer(*c);
    }

    if (tree && (!best || best->profit <= tree->profit + kTreeSlack)) return to_decision(*tree, pick->path);
    if (!best) throw BelowEntryThresholdError("no feasible open-supply pricing");
    if (diag) {
        std::ostringstream os;
        os << "TreeMismatch: ";
        if (tree)
            os << "tree case " << pick->path << " (" << tree->label << ", profit " << format_number(tree->profit)
               << ")";
        else
            os << "no valid tree pick";
        os << " beaten by " << best->label << " (profit " << format_number(best->profit) << ")";
        diag->push_back(os.str());
    }
    return to_decision(*best, "enumeration");
}

LeaderDecision equilibrium(const ScenarioParams& p, Diagnostics* diag) { return equilibrium(make_market(p), diag); }

}  // namespace ose
