#pragma once

#include <complex>
#include <functional>

#include "hcmc/errors.hpp"

namespace hcmc {

/// Point of the hyperbolic plane in the Poincaré unit-disk model,
/// metric 4(dx²+dy²)/(1-x²-y²)².
struct HPoint {
    double x = 0.0;
    double y = 0.0;

    HPoint() = default;
    HPoint(double px, double py);
    explicit HPoint(std::complex<double> z) : HPoint(z.real(), z.imag()) {}

    std::complex<double> z() const { return {x, y}; }
    double norm2() const { return x * x + y * y; }
};

/// Point of the ideal boundary circle, stored as an angle to avoid
/// precision loss near |z| = 1. Normalized to [0, 2π).
struct IdealPoint {
    double theta = 0.0;

    IdealPoint() = default;
    explicit IdealPoint(double angle);

    std::complex<double> unit() const { return std::polar(1.0, theta); }
};

/// Complete geodesic given by its two ideal endpoints. plus_side marks the
/// connected component of the complement whose ideal boundary carries the
/// positive sign of the signed distance.
struct Geodesic {
    IdealPoint q1;
    IdealPoint q2;
    IdealPoint plus_side;

    Geodesic(IdealPoint a, IdealPoint b, IdealPoint plus);
};

/// Horocycle based at an ideal point. level is the Busemann value of the
/// curve; the level-0 horocycle passes through the origin.
struct Horocycle {
    IdealPoint base;
    double level = 0.0;
};

/// Metric circle.
struct HCircle {
    HPoint center;
    double radius = 0.0;

    HCircle() = default;
    HCircle(HPoint c, double r);
};

double angle_mod_2pi(double a);

// -------------------------------------------------------------------------
// Distances

double dist(const HPoint& a, const HPoint& b);

/// Distance to the circle, defined on the closed exterior; 0 on the circle
/// itself, InsideDomainError strictly inside.
double dist_to_circle(const HPoint& x, const HCircle& c);

/// Busemann function based at xi, normalized to 0 at the origin.
/// Decreases toward the base point.
double busemann(const IdealPoint& xi, const HPoint& x);

/// Distance to the horocycle, defined outside the horodisc {B < level};
/// 0 on the curve, InsideDomainError inside.
double dist_to_horocycle(const HPoint& x, const Horocycle& h);

/// Signed distance to the geodesic: positive on the plus_side component.
double signed_dist_to_geodesic(const HPoint& x, const Geodesic& g);

// -------------------------------------------------------------------------
// Rays and frames

/// Unit-speed point at parameter t >= 0 on the ray from x toward q.
HPoint geodesic_ray(const HPoint& x, const IdealPoint& q, double t);

/// Disk automorphism data normalizing a geodesic to the real diameter.
/// to_normalized maps g to the diameter with signed distance
/// s(z) = sign * asinh(2 Im w / (1-|w|²)), w the normalized image.
class GeodesicFrame {
  public:
    explicit GeodesicFrame(const Geodesic& g);

    std::complex<double> to_normalized(std::complex<double> z) const;
    std::complex<double> from_normalized(std::complex<double> w) const;

    /// Boundary image angle of an ideal point under the normalizing map.
    double boundary_angle(const IdealPoint& q) const;

    double sign() const { return sign_; }
    /// Point of the geodesic at arclength tau from the frame origin.
    HPoint point_on_geodesic(double tau) const;
    /// Fermi coordinates: signed distance sigma over the point at arclength tau.
    HPoint fermi_point(double tau, double sigma) const;
    /// Frame origin (tau = 0 point of the geodesic).
    HPoint origin() const { return point_on_geodesic(0.0); }

  private:
    double rot_ = 0.0;   // pre-rotation angle
    double x0_ = 0.0;    // real translation parameter
    double sign_ = 1.0;  // plus_side orientation
};

/// Parabolic frame: maps the disk to the upper half-plane sending the base
/// point to infinity, with Busemann value -log(Im w).
class HorocycleFrame {
  public:
    explicit HorocycleFrame(const Horocycle& h);

    /// Point at arclength tau along the horocycle at distance s outside h.
    HPoint point(double tau, double s) const;
    /// Half-plane image of a disk point.
    std::complex<double> to_uhp(std::complex<double> z) const;

    HPoint anchor() const { return point(0.0, 0.0); }

  private:
    double rot_ = 0.0;
    double level_ = 0.0;
};

// -------------------------------------------------------------------------
// Test oracle support

/// Laplace–Beltrami operator by second-order central differences along two
/// orthogonal unit-speed geodesics through x.
double laplacian_fd(const std::function<double(const HPoint&)>& field, const HPoint& x,
                    double h = 1e-3);

} // namespace hcmc
