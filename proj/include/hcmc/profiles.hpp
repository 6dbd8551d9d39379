#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "hcmc/errors.hpp"

namespace hcmc {

/// Mean curvature in the admissible band [0, 1/2]. Operations that need
/// H < 1/2 enforce it at the call site.
class MeanCurvatureH {
  public:
    explicit MeanCurvatureH(double v) : value_(v) {
        if (!(v >= 0.0 && v <= 0.5))
            throw DomainError("mean curvature must lie in [0, 1/2]");
    }
    double value() const { return value_; }
    bool is_half() const { return value_ == 0.5; }
    void require_below_half(const char* who) const {
        if (is_half()) throw DomainError(std::string(who) + " requires H < 1/2");
    }

  private:
    double value_;
};

/// Asymptotic slope 2H/sqrt(1-4H^2); +infinity exactly at H = 1/2.
struct SlopeLH {
    double value = 0.0;
    bool is_infinite() const { return std::isinf(value); }
};

SlopeLH lH(MeanCurvatureH H);

// ---------------------------------------------------------------------------

/// Profile of the rotational family: graphs over the exterior of B_r(o)
/// as functions of s = d(x, o) - r. r > 0 gives the unduloid sheet
/// (vertical at s = 0), r = 0 the cap (horizontal at s = 0).
struct RotationalProfile {
    MeanCurvatureH H;
    double r = 0.0;

    RotationalProfile(MeanCurvatureH h, double radius);

    /// Eq-(3)-type integral, r > 0 required. Defined for s >= 0.
    double und(double s) const;
    double und_deriv(double s) const;

    /// Entire cap profile, increasing, phi(0) = 0.
    double cap(double s) const;
    double cap_deriv(double s) const;

    double phi(double s) const { return r > 0.0 ? und(s) : cap(s); }
    double phi_deriv(double s) const { return r > 0.0 ? und_deriv(s) : cap_deriv(s); }
    /// Flux phi'/sqrt(1+phi'^2), finite on the whole domain.
    double flux(double s) const;
};

// ---------------------------------------------------------------------------

/// Profiles invariant under hyperbolic translations along a geodesic,
/// parametrized by the integration constant C of
/// g_C(s) = (2H sinh s + C sqrt(1-4H^2)) / cosh s.
class HyperbolicProfile {
  public:
    HyperbolicProfile(MeanCurvatureH h, double c);

    double H_value() const { return H_.value(); }
    MeanCurvatureH H() const { return H_; }
    double C() const { return C_; }
    double R() const { return R_; }

    /// -infinity is reported as M_C_is_finite() == false.
    double M_C() const { return MC_; }
    bool M_C_is_finite() const { return std::isfinite(MC_); }

    double g(double s) const;
    double g_deriv(double s) const;
    /// 1 - g^2 in a product form stable near the domain edge.
    double one_minus_g2(double s) const;

    /// Slope of g at the finite domain edge, C > 1 only.
    double gprime_at_MC() const;

    /// Minimum point of phi for |C| < 1 (root of g). For H = 0, C != 0 no
    /// root exists and the anchor falls back to 0.
    double x_m() const;

    /// phi normalized to 0 at M_C (|C|>1), at x_m (|C|<1), or at
    /// s_ref = M_C + 1 (C = ±1).
    double phi(double s) const;
    double phi_deriv(double s) const;
    double flux(double s) const { return g(s); }

    /// Explicit antiderivative for C = ±1, shifted to vanish at s_ref.
    double phi_closed(double s) const;

    double anchor() const { return anchor_; }
    /// Least admissible s (M_C for |C| >= 1; unbounded below otherwise).
    double domain_edge() const { return MC_; }
    /// Whether phi extends continuously to the edge (|C| > 1).
    bool edge_attained() const { return std::abs(C_) > 1.0; }

  private:
    double phi_closed_raw_(double s) const;
    double edge_integrand_(double u) const;
    void check_domain_(double s) const;

    MeanCurvatureH H_;
    double C_;
    double R_;
    double MC_;
    double anchor_;
};

// ---------------------------------------------------------------------------

/// Profile invariant under parabolic isometries: graphs outside a horodisc,
/// s the distance to the boundary horocycle.
struct ParabolicProfile {
    MeanCurvatureH H;

    explicit ParabolicProfile(MeanCurvatureH h);

    double horo(double s) const;
    double horo_closed(double s) const;
    double horo_deriv(double s) const;

    double phi(double s) const { return horo_closed(s); }
    double phi_deriv(double s) const { return horo_deriv(s); }
    double flux(double s) const;
};

} // namespace hcmc
