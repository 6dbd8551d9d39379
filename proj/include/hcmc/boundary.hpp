#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcmc/profiles.hpp"
#include "hcmc/surfaces.hpp"

namespace hcmc {

// ---------------------------------------------------------------------------
// Heights and segments on the geodesic boundary of H^2 x R.
//
// A point of the boundary away from the poles is a pair (ideal angle, slope);
// slopes are stored symbolically so that the classifier never depends on
// floating-point ties when l_H is tiny.

struct Height {
    enum class Tag { MinusPole, MinusLH, Zero, PlusLH, PlusPole, Finite };
    Tag tag = Tag::Zero;
    double value = 0.0; // Finite only

    static Height minus_pole() { return {Tag::MinusPole, 0.0}; }
    static Height minus_lh() { return {Tag::MinusLH, 0.0}; }
    static Height zero() { return {Tag::Zero, 0.0}; }
    static Height plus_lh() { return {Tag::PlusLH, 0.0}; }
    static Height plus_pole() { return {Tag::PlusPole, 0.0}; }
    static Height finite(double v) { return {Tag::Finite, v}; }

    bool is_pole() const { return tag == Tag::MinusPole || tag == Tag::PlusPole; }
    bool needs_H() const { return tag == Tag::Finite || tag == Tag::Zero; }
    /// Numeric slope given H (poles resolve to +-infinity).
    double resolve(MeanCurvatureH H) const;
    /// Symbolic equality of tags (Finite compares by value).
    bool same(const Height& o) const;
};

struct EquatorArc {
    Height height;    // +-l_H for catalogue curves
    double from = 0.0;
    double to = 0.0;  // ideal angles in radians
    bool ccw = true;
    bool full_circle = false;
};

struct WeylSegment {
    double q = 0.0; // ideal angle
    Height lo;
    Height hi;
};

struct PolePoint {
    bool plus = true;
};

using Segment = std::variant<EquatorArc, WeylSegment, PolePoint>;

/// Components are cyclic segment chains; classify() validates closure.
struct BoundaryCurve {
    std::vector<std::vector<Segment>> components;
};

/// boundary_of result: components plus a curve flag. Sets that are not
/// Jordan curves (or disjoint unions of them) carry is_curve = false.
struct BoundarySet {
    BoundaryCurve curve;
    bool is_curve = true;
    std::string note;
};

enum class CurveType { I, II, III, IV, V, VI };
const char* curve_type_name(CurveType t);

struct Violation {
    int component = -1;
    int segment = -1; // -1: whole-curve rule
    std::string rule;
};

struct Verdict {
    bool admissible = false;
    std::optional<CurveType> curve_type;
    std::vector<Violation> violations;
    std::vector<CurveType> component_types;
};

/// Checks the Weyl-chamber trace conditions at every ideal direction the
/// curve touches, that equator arcs sit at +-l_H, and assigns the curve
/// type. Throws MalformedCurveError when a component does not close up.
/// H resolves symbolic ties (required when Finite/Zero heights appear; at
/// H = 0 the +-l_H tags legitimately collapse onto the equator).
Verdict classify(const BoundaryCurve& curve, std::optional<MeanCurvatureH> H = {});

// ---------------------------------------------------------------------------
// Exact boundaries of the invariant catalogue.

BoundarySet boundary_of(const InvariantSurface& surf);

/// Geodesic boundary of the vertical cylinder over the equidistant curve at
/// distance artanh(2H) from the geodesic: both full chambers.
BoundarySet cylinder_boundary(const Geodesic& g);

/// Union of chamber traces of a boundary set over the direction q, resolved
/// against H. Arcs contribute their height at interior directions and
/// endpoints; returns nothing when the set misses W(q) entirely.
std::optional<std::pair<double, double>> weyl_restriction(const BoundarySet& set, IdealPoint q,
                                                          MeanCurvatureH H);

// ---------------------------------------------------------------------------
// Numeric boundary estimation.

enum class ConeRelation { Above, Below, Crosses };

/// Compares the surface with the slope-m cone over the surface's anchor point
/// near the ideal direction q, by sampling ray and level-curve paths out to
/// parameter t_max and classifying their asymptotic trend.
ConeRelation cone_probe(const InvariantSurface& surf, IdealPoint q, double m,
                        double t_max = 30.0);

/// Bisection of cone_probe over m: the slope interval the surface fills in
/// W(q), within about 1e-2.
std::pair<double, double> estimate_weyl_interval(const InvariantSurface& surf, IdealPoint q,
                                                 double t_max = 30.0);

// ---------------------------------------------------------------------------
// Structured text I/O (JSON).

std::string curve_to_json(const BoundarySet& set, std::optional<double> H = {});
BoundarySet curve_from_json(const std::string& text, std::optional<double>* H_out = nullptr);
std::string verdict_to_json(const Verdict& v);

} // namespace hcmc
