#include "hcmc/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace hcmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAngleTol = 1e-9;

bool angles_equal(double a, double b) {
    const double d = angle_mod_2pi(a - b);
    return d < kAngleTol || kTwoPi - d < kAngleTol;
}

} // namespace

double Height::resolve(MeanCurvatureH H) const {
    switch (tag) {
        case Tag::MinusPole: return -kInf;
        case Tag::PlusPole: return kInf;
        case Tag::MinusLH: return -lH(H).value;
        case Tag::PlusLH: return lH(H).value;
        case Tag::Zero: return 0.0;
        case Tag::Finite: return value;
    }
    return 0.0;
}

bool Height::same(const Height& o) const {
    auto norm = [](const Height& h) {
        return h.tag == Tag::Finite && h.value == 0.0 ? Tag::Zero : h.tag;
    };
    if (norm(*this) != norm(o)) return false;
    if (tag == Tag::Finite && o.tag == Tag::Finite) return std::abs(value - o.value) < 1e-12;
    return true;
}

const char* curve_type_name(CurveType t) {
    switch (t) {
        case CurveType::I: return "I";
        case CurveType::II: return "II";
        case CurveType::III: return "III";
        case CurveType::IV: return "IV";
        case CurveType::V: return "V";
        case CurveType::VI: return "VI";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Classifier internals

namespace {

// Symbolic rank used when no H is supplied: generic 0 < l_H < infinity.
double rank_of(const Height& h) {
    switch (h.tag) {
        case Height::Tag::MinusPole: return -kInf;
        case Height::Tag::MinusLH: return -1.0;
        case Height::Tag::Zero: return 0.0;
        case Height::Tag::PlusLH: return 1.0;
        case Height::Tag::PlusPole: return kInf;
        case Height::Tag::Finite:
            throw DomainError("classify: numeric heights require H");
    }
    return 0.0;
}

struct Resolver {
    std::optional<MeanCurvatureH> H;
    double lh() const { return H ? lH(*H).value : 1.0; }
    double operator()(const Height& h) const { return H ? h.resolve(*H) : rank_of(h); }
};

// A vertex of the boundary sphere: poles compare regardless of angle.
struct BPoint {
    bool pole = false;
    int pole_sign = 0;
    double angle = 0.0;
    Height h;

    static BPoint make(double ang, const Height& hh) {
        if (hh.tag == Height::Tag::MinusPole) return {true, -1, 0.0, hh};
        if (hh.tag == Height::Tag::PlusPole) return {true, +1, 0.0, hh};
        return {false, 0, angle_mod_2pi(ang), hh};
    }
    bool matches(const BPoint& o) const {
        if (pole || o.pole) return pole && o.pole && pole_sign == o.pole_sign;
        return angles_equal(angle, o.angle) && h.same(o.h);
    }
};

std::pair<BPoint, BPoint> segment_ends(const Segment& seg) {
    if (const auto* a = std::get_if<EquatorArc>(&seg))
        return {BPoint::make(a->from, a->height), BPoint::make(a->to, a->height)};
    if (const auto* w = std::get_if<WeylSegment>(&seg))
        return {BPoint::make(w->q, w->lo), BPoint::make(w->q, w->hi)};
    const auto& p = std::get<PolePoint>(seg);
    const Height h = p.plus ? Height::plus_pole() : Height::minus_pole();
    return {BPoint::make(0.0, h), BPoint::make(0.0, h)};
}

bool chain_closes(const std::vector<Segment>& comp) {
    if (comp.empty()) return false;
    if (comp.size() == 1) {
        if (const auto* a = std::get_if<EquatorArc>(&comp[0])) return a->full_circle;
        return false;
    }
    for (const auto& seg : comp)
        if (const auto* a = std::get_if<EquatorArc>(&seg); a && a->full_circle) return false;
    for (int orient = 0; orient < 2; ++orient) {
        auto [a0, b0] = segment_ends(comp[0]);
        BPoint start = orient ? b0 : a0;
        BPoint cur = orient ? a0 : b0;
        bool ok = true;
        for (std::size_t i = 1; i < comp.size(); ++i) {
            auto [a, b] = segment_ends(comp[i]);
            if (a.matches(cur))
                cur = b;
            else if (b.matches(cur))
                cur = a;
            else {
                ok = false;
                break;
            }
        }
        if (ok && cur.matches(start)) return true;
    }
    return false;
}

bool arc_covers(const EquatorArc& a, double psi) {
    if (a.full_circle) return true;
    if (a.ccw) return angle_mod_2pi(psi - a.from) <= angle_mod_2pi(a.to - a.from) + kAngleTol;
    return angle_mod_2pi(a.from - psi) <= angle_mod_2pi(a.from - a.to) + kAngleTol;
}

bool arc_interior_covers(const EquatorArc& a, double psi) {
    if (a.full_circle) return true;
    if (angles_equal(psi, a.from) || angles_equal(psi, a.to)) return false;
    return arc_covers(a, psi);
}

struct Interval {
    double lo, hi;
    int component;
    int segment;
};

struct DirectionData {
    double angle;
    std::vector<Interval> intervals;
};

// Chamber-interval flavour for the type rules.
enum class ChKind { Degenerate, Mid, Up, Down, LongUp, LongDown, Full, Other };

ChKind chamber_kind(const WeylSegment& w) {
    using T = Height::Tag;
    const T lo = w.lo.tag, hi = w.hi.tag;
    if (w.lo.same(w.hi)) return ChKind::Degenerate;
    if (lo == T::MinusLH && hi == T::PlusLH) return ChKind::Mid;
    if (lo == T::PlusLH && hi == T::PlusPole) return ChKind::Up;
    if (lo == T::MinusPole && hi == T::MinusLH) return ChKind::Down;
    if (lo == T::MinusLH && hi == T::PlusPole) return ChKind::LongUp;
    if (lo == T::MinusPole && hi == T::PlusLH) return ChKind::LongDown;
    if (lo == T::MinusPole && hi == T::PlusPole) return ChKind::Full;
    return ChKind::Other;
}

} // namespace

Verdict classify(const BoundaryCurve& curve, std::optional<MeanCurvatureH> H) {
    Verdict verdict;
    const Resolver res{H};
    const double lh = res.lh();

    // Structural closure first.
    for (std::size_t c = 0; c < curve.components.size(); ++c) {
        if (!chain_closes(curve.components[c])) {
            std::ostringstream msg;
            msg << "component " << c << " does not close up";
            throw MalformedCurveError(msg.str());
        }
    }

    auto add_violation = [&](int comp, int seg, std::string rule) {
        verdict.violations.push_back({comp, seg, std::move(rule)});
    };

    // Arcs must sit at +-l_H (collapsing heights are fine at H = 0).
    for (std::size_t c = 0; c < curve.components.size(); ++c) {
        const auto& comp = curve.components[c];
        for (std::size_t s = 0; s < comp.size(); ++s) {
            const auto* a = std::get_if<EquatorArc>(&comp[s]);
            if (!a) continue;
            bool ok;
            if (H) {
                const double hv = res(a->height);
                ok = hv == lh || hv == -lh || std::abs(hv - lh) < 1e-12 ||
                     std::abs(hv + lh) < 1e-12;
            } else {
                ok = a->height.tag == Height::Tag::MinusLH ||
                     a->height.tag == Height::Tag::PlusLH;
            }
            if (!ok) add_violation((int)c, (int)s, "arc not at +-l_H");
        }
    }

    // Gather chamber traces per ideal direction.
    std::vector<DirectionData> dirs;
    auto dir_at = [&](double ang) -> DirectionData& {
        for (auto& d : dirs)
            if (angles_equal(d.angle, ang)) return d;
        dirs.push_back({angle_mod_2pi(ang), {}});
        return dirs.back();
    };

    for (std::size_t c = 0; c < curve.components.size(); ++c) {
        const auto& comp = curve.components[c];
        for (std::size_t s = 0; s < comp.size(); ++s) {
            if (const auto* w = std::get_if<WeylSegment>(&comp[s])) {
                const double lo = res(w->lo), hi = res(w->hi);
                if (lo > hi) {
                    add_violation((int)c, (int)s, "interval endpoints out of order");
                    continue;
                }
                dir_at(w->q).intervals.push_back({lo, hi, (int)c, (int)s});
            } else if (const auto* a = std::get_if<EquatorArc>(&comp[s])) {
                if (!a->full_circle) {
                    const double hv = res(a->height);
                    dir_at(a->from).intervals.push_back({hv, hv, (int)c, (int)s});
                    dir_at(a->to).intervals.push_back({hv, hv, (int)c, (int)s});
                }
            }
        }
    }

    // Arcs whose interior sweeps over a chamber direction create a junction,
    // so the set cannot be a simple curve there.
    for (const auto& d : dirs) {
        bool has_chamber = false;
        for (const auto& iv : d.intervals)
            if (iv.lo != iv.hi) has_chamber = true;
        if (!has_chamber) continue;
        for (std::size_t c = 0; c < curve.components.size(); ++c) {
            const auto& comp = curve.components[c];
            for (std::size_t s = 0; s < comp.size(); ++s)
                if (const auto* a = std::get_if<EquatorArc>(&comp[s]))
                    if (arc_interior_covers(*a, d.angle)) {
                        const double hv = res(a->height);
                        for (const auto& iv : d.intervals)
                            if (iv.lo != iv.hi && hv >= iv.lo && hv <= iv.hi)
                                add_violation((int)c, (int)s,
                                              "arc crosses a chamber direction");
                    }
        }
    }

    // Doubled chamber runs at one direction are not simple either.
    for (const auto& d : dirs) {
        for (std::size_t i = 0; i < d.intervals.size(); ++i)
            for (std::size_t j = i + 1; j < d.intervals.size(); ++j) {
                const auto& A = d.intervals[i];
                const auto& B = d.intervals[j];
                if (A.component != B.component) continue;
                if (A.lo == A.hi || B.lo == B.hi) continue;
                if (std::max(A.lo, B.lo) < std::min(A.hi, B.hi))
                    add_violation(A.component, A.segment,
                                  "overlapping chamber segments at one direction");
            }
    }

    // Weyl-chamber trace conditions at each touched direction.
    for (const auto& d : dirs) {
        std::vector<std::pair<double, double>> ivs;
        for (const auto& iv : d.intervals) ivs.push_back({iv.lo, iv.hi});
        std::sort(ivs.begin(), ivs.end());
        std::vector<std::pair<double, double>> merged;
        for (const auto& iv : ivs) {
            if (!merged.empty() && iv.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, iv.second);
            else
                merged.push_back(iv);
        }
        if (merged.size() > 1) {
            add_violation(-1, -1, "disconnected chamber trace at one direction");
            continue;
        }
        const double lo = merged[0].first, hi = merged[0].second;

        // trace ∩ [l_H, +pole]
        if (hi >= lh) {
            const double ilo = std::max(lo, lh);
            const bool pole_only = ilo == kInf;
            if (!pole_only && ilo > lh)
                add_violation(-1, -1, "upper chamber trace misses (q, l_H)");
        }
        // trace ∩ [-pole, -l_H]
        if (lo <= -lh) {
            const double ihi = std::min(hi, -lh);
            const bool pole_only = ihi == -kInf;
            if (!pole_only && ihi < -lh)
                add_violation(-1, -1, "lower chamber trace misses (q, -l_H)");
        }
        // trace ∩ [-l_H, l_H]
        const double mlo = std::max(lo, -lh), mhi = std::min(hi, lh);
        if (mlo <= mhi) {
            const bool touches = mlo == -lh || mhi == lh;
            if (!touches)
                add_violation(-1, -1, "chamber interval missing +-l_H endpoint");
        }
    }

    // Pairwise disjointness of components. At H = 0 identical full circles
    // collapse onto the equator and are treated as one.
    const std::size_t n = curve.components.size();
    std::vector<bool> duplicate(n, false);
    auto full_circle_height = [&](std::size_t c) -> std::optional<double> {
        if (curve.components[c].size() != 1) return {};
        const auto* a = std::get_if<EquatorArc>(&curve.components[c][0]);
        if (!a || !a->full_circle) return {};
        return res(a->height);
    };
    if (H && H->value() == 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                auto hi_ = full_circle_height(i), hj = full_circle_height(j);
                if (hi_ && hj && *hi_ == *hj) duplicate[j] = true;
            }
    }

    auto component_touches_pole = [&](std::size_t c, int sign) {
        for (const auto& seg : curve.components[c]) {
            auto [a, b] = segment_ends(seg);
            if ((a.pole && a.pole_sign == sign) || (b.pole && b.pole_sign == sign)) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < n; ++i) {
        if (duplicate[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (duplicate[j]) continue;
            bool meet = false;
            for (int sign : {-1, +1})
                if (component_touches_pole(i, sign) && component_touches_pole(j, sign))
                    meet = true;
            // chamber/chamber and arc/chamber and arc/arc meetings
            for (const auto& si : curve.components[i]) {
                for (const auto& sj : curve.components[j]) {
                    const auto* wi = std::get_if<WeylSegment>(&si);
                    const auto* wj = std::get_if<WeylSegment>(&sj);
                    const auto* ai = std::get_if<EquatorArc>(&si);
                    const auto* aj = std::get_if<EquatorArc>(&sj);
                    if (wi && wj && angles_equal(wi->q, wj->q)) {
                        if (std::max(res(wi->lo), res(wj->lo)) <=
                            std::min(res(wi->hi), res(wj->hi)))
                            meet = true;
                    } else if (ai && aj && res(ai->height) == res(aj->height)) {
                        if (ai->full_circle || aj->full_circle ||
                            arc_covers(*ai, aj->from) || arc_covers(*ai, aj->to) ||
                            arc_covers(*aj, ai->from) || arc_covers(*aj, ai->to))
                            meet = true;
                    } else if (ai && wj) {
                        if (arc_covers(*ai, wj->q) && res(ai->height) >= res(wj->lo) &&
                            res(ai->height) <= res(wj->hi))
                            meet = true;
                    } else if (wi && aj) {
                        if (arc_covers(*aj, wi->q) && res(aj->height) >= res(wi->lo) &&
                            res(aj->height) <= res(wi->hi))
                            meet = true;
                    }
                }
            }
            if (meet) add_violation((int)j, -1, "components are not pairwise disjoint");
        }
    }

    verdict.admissible = verdict.violations.empty();
    if (!verdict.admissible) return verdict;

    // Type assignment per component, VI for admissible unions.
    std::vector<CurveType> types;
    for (std::size_t c = 0; c < n; ++c) {
        if (duplicate[c]) continue;
        const auto& comp = curve.components[c];
        bool has_mid = false, has_up = false, has_down = false, has_long = false,
             has_full = false, any_chamber = false;
        for (const auto& seg : comp) {
            const auto* w = std::get_if<WeylSegment>(&seg);
            if (!w) continue;
            switch (chamber_kind(*w)) {
                case ChKind::Mid: has_mid = true; any_chamber = true; break;
                case ChKind::Up: has_up = true; any_chamber = true; break;
                case ChKind::Down: has_down = true; any_chamber = true; break;
                case ChKind::LongUp:
                case ChKind::LongDown: has_long = true; any_chamber = true; break;
                case ChKind::Full: has_full = true; any_chamber = true; break;
                case ChKind::Degenerate: break;
                case ChKind::Other: any_chamber = true; break;
            }
        }
        CurveType t;
        if (!any_chamber)
            t = CurveType::I;
        else if (has_full)
            t = CurveType::V;
        else if (has_long || (has_mid && (has_up || has_down)))
            t = CurveType::IV;
        else if (has_mid)
            t = CurveType::III;
        else
            t = CurveType::II;
        types.push_back(t);
    }
    verdict.component_types = types;
    verdict.curve_type = types.size() == 1 ? types[0] : CurveType::VI;
    return verdict;
}

// ---------------------------------------------------------------------------
// Catalogue boundaries

namespace {

EquatorArc full_circle(Height h) {
    EquatorArc a;
    a.height = h;
    a.full_circle = true;
    return a;
}

EquatorArc arc_through(Height h, const Geodesic& g, bool reverse) {
    // The arc between q1 and q2 whose interior contains plus_side.
    EquatorArc a;
    a.height = h;
    const double span_ccw = angle_mod_2pi(g.q2.theta - g.q1.theta);
    const bool plus_on_ccw = angle_mod_2pi(g.plus_side.theta - g.q1.theta) <= span_ccw;
    a.from = g.q1.theta;
    a.to = g.q2.theta;
    a.ccw = plus_on_ccw;
    if (reverse) {
        std::swap(a.from, a.to);
        a.ccw = !a.ccw;
    }
    return a;
}

WeylSegment chamber(double q, Height lo, Height hi) { return {q, lo, hi}; }

} // namespace

BoundarySet boundary_of(const InvariantSurface& surf) {
    BoundarySet out;
    switch (surf.kind()) {
        case SurfaceKind::Rotational: {
            if (surf.reflected()) {
                out.curve.components.push_back({full_circle(Height::plus_lh())});
                out.curve.components.push_back({full_circle(Height::minus_lh())});
            } else {
                out.curve.components.push_back({full_circle(Height::plus_lh())});
            }
            return out;
        }
        case SurfaceKind::Parabolic: {
            const double p = surf.horocycle_base().base.theta;
            if (surf.reflected()) {
                out.curve.components.push_back(
                    {chamber(p, Height::minus_lh(), Height::plus_lh())});
                out.curve.components.push_back({full_circle(Height::plus_lh())});
                out.curve.components.push_back({full_circle(Height::minus_lh())});
                out.note = "both circles meet the chamber at (p, +-l_H)";
            } else {
                out.curve.components.push_back({chamber(p, Height::zero(), Height::plus_lh())});
                out.curve.components.push_back({full_circle(Height::plus_lh())});
                out.note = "circle meets the chamber at (p, l_H)";
            }
            out.is_curve = false;
            return out;
        }
        case SurfaceKind::Hyperbolic:
            break;
    }

    const Geodesic& g = surf.geodesic_base();
    const double q1 = g.q1.theta, q2 = g.q2.theta;
    const double C = surf.hyperbolic_profile().C();

    if (C > 1.0) {
        if (surf.reflected()) {
            out.curve.components.push_back(
                {arc_through(Height::plus_lh(), g, false),
                 chamber(q2, Height::minus_lh(), Height::plus_lh()),
                 arc_through(Height::minus_lh(), g, true),
                 chamber(q1, Height::minus_lh(), Height::plus_lh())});
        } else {
            out.curve.components.push_back({chamber(q1, Height::zero(), Height::plus_lh()),
                                            arc_through(Height::plus_lh(), g, false),
                                            chamber(q2, Height::zero(), Height::plus_lh())});
            out.is_curve = false;
            out.note = "upper sheet alone: the chain ends at slope 0 over q1 and q2";
        }
        return out;
    }
    if (C == 1.0) {
        out.curve.components.push_back({chamber(q1, Height::minus_pole(), Height::plus_lh()),
                                        arc_through(Height::plus_lh(), g, false),
                                        chamber(q2, Height::minus_pole(), Height::plus_lh())});
        return out;
    }
    if (C == -1.0) {
        if (surf.reflected())
            throw GluingError("C = -1 profile has no vertical edge");
        out.curve.components.push_back({chamber(q1, Height::minus_lh(), Height::plus_pole()),
                                        arc_through(Height::minus_lh(), g, false),
                                        chamber(q2, Height::minus_lh(), Height::plus_pole())});
        out.note = "mirror of the C = 1 curve; the graph over {s > -R} itself has the "
                   "non-curve trace arc(l_H) with chambers [0, +pole]";
        return out;
    }
    if (C < -1.0) {
        if (surf.reflected()) {
            // Same rectangle shape as C > 1; the surface is immersed.
            out.curve.components.push_back(
                {arc_through(Height::plus_lh(), g, false),
                 chamber(q2, Height::minus_lh(), Height::plus_lh()),
                 arc_through(Height::minus_lh(), g, true),
                 chamber(q1, Height::minus_lh(), Height::plus_lh())});
        } else {
            out.curve.components.push_back({chamber(q1, Height::zero(), Height::plus_lh()),
                                            arc_through(Height::plus_lh(), g, false),
                                            chamber(q2, Height::zero(), Height::plus_lh())});
            out.is_curve = false;
            out.note = "upper sheet alone: the chain ends at slope 0 over q1 and q2";
        }
        return out;
    }

    // |C| < 1: entire hypercap graph.
    out.curve.components.push_back({full_circle(Height::plus_lh())});
    out.curve.components.push_back({chamber(q1, Height::zero(), Height::plus_lh())});
    out.curve.components.push_back({chamber(q2, Height::zero(), Height::plus_lh())});
    out.is_curve = false;
    out.note = "circle meets the chambers at (q_i, l_H)";
    return out;
}

BoundarySet cylinder_boundary(const Geodesic& g) {
    BoundarySet out;
    out.curve.components.push_back(
        {chamber(g.q1.theta, Height::minus_pole(), Height::plus_pole()),
         chamber(g.q2.theta, Height::minus_pole(), Height::plus_pole())});
    return out;
}

std::optional<std::pair<double, double>> weyl_restriction(const BoundarySet& set, IdealPoint q,
                                                          MeanCurvatureH H) {
    bool any = false;
    double lo = kInf, hi = -kInf;
    for (const auto& comp : set.curve.components) {
        for (const auto& seg : comp) {
            if (const auto* w = std::get_if<WeylSegment>(&seg)) {
                if (!angles_equal(w->q, q.theta)) continue;
                lo = std::min(lo, w->lo.resolve(H));
                hi = std::max(hi, w->hi.resolve(H));
                any = true;
            } else if (const auto* a = std::get_if<EquatorArc>(&seg)) {
                if (!arc_covers(*a, q.theta)) continue;
                const double hv = a->height.resolve(H);
                lo = std::min(lo, hv);
                hi = std::max(hi, hv);
                any = true;
            }
        }
    }
    if (!any) return {};
    return std::make_pair(lo, hi);
}

// ---------------------------------------------------------------------------
// Cone probes

namespace {

struct PathSample {
    double h1, d1, h2, d2;
};

double surface_phi(const InvariantSurface& surf, double s) {
    switch (surf.kind()) {
        case SurfaceKind::Rotational: return surf.rotational_profile().phi(s);
        case SurfaceKind::Hyperbolic: return surf.hyperbolic_profile().phi(s);
        case SurfaceKind::Parabolic: return surf.parabolic_profile().phi(s);
    }
    return 0.0;
}

HPoint probe_anchor(const InvariantSurface& surf) {
    switch (surf.kind()) {
        case SurfaceKind::Rotational: return surf.circle_base().center;
        case SurfaceKind::Hyperbolic: return GeodesicFrame(surf.geodesic_base()).origin();
        case SurfaceKind::Parabolic: return HorocycleFrame(surf.horocycle_base()).anchor();
    }
    return HPoint();
}

// Signed s along the ray from the anchor toward the ideal direction psi,
// in closed form where the coordinates would lose precision.
double ray_s(const InvariantSurface& surf, double psi, double t) {
    switch (surf.kind()) {
        case SurfaceKind::Rotational:
            return t - surf.circle_base().radius;
        case SurfaceKind::Hyperbolic: {
            const GeodesicFrame frame(surf.geodesic_base());
            const double beta = frame.boundary_angle(IdealPoint(psi));
            return frame.sign() * std::asinh(std::sinh(t) * std::sin(beta));
        }
        case SurfaceKind::Parabolic: {
            const HPoint p = geodesic_ray(probe_anchor(surf), IdealPoint(psi), t);
            return busemann(surf.horocycle_base().base, p) - surf.horocycle_base().level;
        }
    }
    return 0.0;
}

bool s_in_domain(const InvariantSurface& surf, double s) {
    const double edge = surf.domain_edge();
    if (!std::isfinite(edge)) return true;
    if (surf.kind() == SurfaceKind::Hyperbolic && !surf.hyperbolic_profile().edge_attained())
        return s > edge + 1e-6;
    return s >= edge;
}

std::vector<PathSample> probe_paths(const InvariantSurface& surf, IdealPoint q, double t_max) {
    std::vector<PathSample> paths;
    const double t1 = 0.5 * t_max, t2 = t_max;

    auto add_sheets = [&](double h1, double d1, double h2, double d2) {
        paths.push_back({h1, d1, h2, d2});
        if (surf.reflected()) paths.push_back({-h1, d1, -h2, d2});
    };

    static const double offsets[] = {0.0,  0.02,  -0.02, 0.05, -0.05,
                                     0.12, -0.12, 0.25,  -0.25};
    for (double off : offsets) {
        const double psi = q.theta + off;
        const double s1 = ray_s(surf, psi, t1);
        const double s2 = ray_s(surf, psi, t2);
        if (!s_in_domain(surf, s1) || !s_in_domain(surf, s2)) continue;
        add_sheets(surface_phi(surf, s1), t1, surface_phi(surf, s2), t2);
    }

    // Level-curve paths exist only where level sets converge to q.
    if (surf.kind() == SurfaceKind::Hyperbolic) {
        const Geodesic& g = surf.geodesic_base();
        const bool at_q1 = angles_equal(q.theta, g.q1.theta);
        const bool at_q2 = angles_equal(q.theta, g.q2.theta);
        if (at_q1 || at_q2) {
            const GeodesicFrame frame(g);
            const double end_angle = frame.boundary_angle(at_q1 ? g.q1 : g.q2);
            const double tau_sign = std::abs(end_angle) < 0.5 * kPi ? 1.0 : -1.0;
            const auto& prof = surf.hyperbolic_profile();
            std::vector<double> levels;
            if (prof.edge_attained())
                levels = {prof.domain_edge(), prof.domain_edge() + 0.5,
                          prof.domain_edge() + 1.0};
            else if (prof.M_C_is_finite())
                levels = {prof.domain_edge() + 0.3, prof.domain_edge() + 1.0};
            else
                levels = {prof.anchor(), prof.anchor() + 1.0, prof.anchor() - 1.0};
            for (double s0 : levels) {
                const double h = surface_phi(surf, s0);
                const double d1 = std::acosh(std::cosh(t1) * std::cosh(s0));
                const double d2 = std::acosh(std::cosh(t2) * std::cosh(s0));
                (void)tau_sign;
                add_sheets(h, d1, h, d2);
            }
        }
    } else if (surf.kind() == SurfaceKind::Parabolic &&
               angles_equal(q.theta, surf.horocycle_base().base.theta)) {
        const HorocycleFrame frame(surf.horocycle_base());
        const HPoint anchor = frame.anchor();
        for (double s0 : {0.0, 0.5, 1.0}) {
            const double h = surface_phi(surf, s0);
            const double d1 = dist(anchor, frame.point(t1, s0));
            const double d2 = dist(anchor, frame.point(t2, s0));
            add_sheets(h, d1, h, d2);
        }
    }
    return paths;
}

} // namespace

ConeRelation cone_probe(const InvariantSurface& surf, IdealPoint q, double m, double t_max) {
    const std::vector<PathSample> paths = probe_paths(surf, q, t_max);
    if (paths.empty()) throw DomainError("cone_probe: no admissible sample paths toward q");

    const double tol_m = 2e-3;
    const double tol_h = 0.05;
    bool all_above = true, all_below = true;
    for (const auto& p : paths) {
        const double trend = (p.h2 - p.h1) / (p.d2 - p.d1) - m;
        const double delta = p.h2 - m * p.d2;
        const bool above = trend > tol_m || (std::abs(trend) <= tol_m && delta > tol_h);
        const bool below = trend < -tol_m || (std::abs(trend) <= tol_m && delta < -tol_h);
        if (!above) all_above = false;
        if (!below) all_below = false;
        if (!above && !below) return ConeRelation::Crosses;
    }
    if (all_above) return ConeRelation::Above;
    if (all_below) return ConeRelation::Below;
    return ConeRelation::Crosses;
}

std::pair<double, double> estimate_weyl_interval(const InvariantSurface& surf, IdealPoint q,
                                                 double t_max) {
    const double bound = lH(surf.H()).value + 1.0;
    const int n_scan = 81;
    std::vector<ConeRelation> scan(n_scan);
    auto m_at = [&](int i) { return -bound + 2.0 * bound * i / (n_scan - 1); };
    for (int i = 0; i < n_scan; ++i) scan[i] = cone_probe(surf, q, m_at(i), t_max);

    auto bisect = [&](double a, double b, auto pred) {
        // pred(a) true, pred(b) false
        for (int it = 0; it < 60 && b - a > 1e-5; ++it) {
            const double mid = 0.5 * (a + b);
            (pred(mid) ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };

    double m_lo = -bound;
    for (int i = 0; i < n_scan; ++i) {
        if (scan[i] != ConeRelation::Above) {
            if (i == 0) break;
            m_lo = bisect(m_at(i - 1), m_at(i), [&](double m) {
                return cone_probe(surf, q, m, t_max) == ConeRelation::Above;
            });
            break;
        }
        if (i == n_scan - 1) m_lo = bound;
    }
    double m_hi = bound;
    for (int i = n_scan - 1; i >= 0; --i) {
        if (scan[i] != ConeRelation::Below) {
            if (i == n_scan - 1) break;
            // pred true means still Below coming down from +bound
            const double lo = m_at(i), hi = m_at(i + 1);
            double a = lo, b = hi;
            for (int it = 0; it < 60 && b - a > 1e-5; ++it) {
                const double mid = 0.5 * (a + b);
                (cone_probe(surf, q, mid, t_max) == ConeRelation::Below ? b : a) = mid;
            }
            m_hi = 0.5 * (a + b);
            break;
        }
        if (i == 0) m_hi = -bound;
    }
    return {m_lo, m_hi};
}

// ---------------------------------------------------------------------------
// JSON I/O

namespace {

using nlohmann::json;

json height_to_json(const Height& h) {
    switch (h.tag) {
        case Height::Tag::MinusPole: return "-pole";
        case Height::Tag::PlusPole: return "+pole";
        case Height::Tag::MinusLH: return "-lH";
        case Height::Tag::PlusLH: return "+lH";
        case Height::Tag::Zero: return 0.0;
        case Height::Tag::Finite: return h.value;
    }
    return nullptr;
}

Height height_from_json(const json& j) {
    if (j.is_number()) {
        const double v = j.get<double>();
        return v == 0.0 ? Height::zero() : Height::finite(v);
    }
    const std::string s = j.get<std::string>();
    if (s == "-pole") return Height::minus_pole();
    if (s == "+pole") return Height::plus_pole();
    if (s == "-lH") return Height::minus_lh();
    if (s == "+lH") return Height::plus_lh();
    throw DomainError("unknown height tag: " + s);
}

json segment_to_json(const Segment& seg) {
    json j;
    if (const auto* a = std::get_if<EquatorArc>(&seg)) {
        j["kind"] = "arc";
        j["height"] = height_to_json(a->height);
        j["from"] = a->from;
        j["to"] = a->to;
        j["orientation"] = a->ccw ? "ccw" : "cw";
        j["full_circle"] = a->full_circle;
    } else if (const auto* w = std::get_if<WeylSegment>(&seg)) {
        j["kind"] = "weyl";
        j["q"] = w->q;
        j["interval"] = json::array({height_to_json(w->lo), height_to_json(w->hi)});
    } else {
        const auto& p = std::get<PolePoint>(seg);
        j["kind"] = "pole";
        j["height"] = p.plus ? "+pole" : "-pole";
    }
    return j;
}

Segment segment_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "arc") {
        EquatorArc a;
        a.height = height_from_json(j.at("height"));
        a.from = j.value("from", 0.0);
        a.to = j.value("to", 0.0);
        a.ccw = j.value("orientation", std::string("ccw")) == "ccw";
        a.full_circle = j.value("full_circle", false);
        return a;
    }
    if (kind == "weyl") {
        WeylSegment w;
        w.q = j.at("q").get<double>();
        w.lo = height_from_json(j.at("interval").at(0));
        w.hi = height_from_json(j.at("interval").at(1));
        return w;
    }
    if (kind == "pole") {
        PolePoint p;
        p.plus = height_from_json(j.at("height")).tag == Height::Tag::PlusPole;
        return p;
    }
    throw DomainError("unknown segment kind: " + kind);
}

} // namespace

std::string curve_to_json(const BoundarySet& set, std::optional<double> H) {
    json j;
    if (H) j["H"] = *H;
    j["is_curve"] = set.is_curve;
    if (!set.note.empty()) j["note"] = set.note;
    j["components"] = json::array();
    for (const auto& comp : set.curve.components) {
        json jc = json::array();
        for (const auto& seg : comp) jc.push_back(segment_to_json(seg));
        j["components"].push_back(jc);
    }
    return j.dump(2);
}

BoundarySet curve_from_json(const std::string& text, std::optional<double>* H_out) {
    const json j = json::parse(text);
    BoundarySet set;
    if (H_out) {
        if (j.contains("H"))
            *H_out = j.at("H").get<double>();
        else
            *H_out = std::nullopt;
    }
    set.is_curve = j.value("is_curve", true);
    set.note = j.value("note", std::string());
    for (const auto& jc : j.at("components")) {
        std::vector<Segment> comp;
        for (const auto& js : jc) comp.push_back(segment_from_json(js));
        set.curve.components.push_back(std::move(comp));
    }
    return set;
}

std::string verdict_to_json(const Verdict& v) {
    json j;
    j["admissible"] = v.admissible;
    if (v.curve_type)
        j["type"] = curve_type_name(*v.curve_type);
    else
        j["type"] = nullptr;
    j["violations"] = json::array();
    for (const auto& viol : v.violations)
        j["violations"].push_back(
            {{"component", viol.component}, {"segment", viol.segment}, {"rule", viol.rule}});
    j["component_types"] = json::array();
    for (auto t : v.component_types) j["component_types"].push_back(curve_type_name(t));
    return j.dump(2);
}

} // namespace hcmc
