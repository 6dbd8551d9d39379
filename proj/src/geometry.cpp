#include "hcmc/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hcmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
const std::complex<double> kI{0.0, 1.0};

std::complex<double> mobius_to_origin(std::complex<double> pivot, std::complex<double> z) {
    return (z - pivot) / (1.0 - std::conj(pivot) * z);
}

std::complex<double> mobius_from_origin(std::complex<double> pivot, std::complex<double> w) {
    return (w + pivot) / (1.0 + std::conj(pivot) * w);
}

// Disk translation along the real axis, pivot a in (-1,1).
std::complex<double> mobius_real(double a, std::complex<double> z) {
    return (z - a) / (1.0 - a * z);
}

// sinh of the signed distance to the real diameter; invariant under
// mobius_real and exact on the imaginary diameter.
double diameter_invariant(std::complex<double> w) {
    return 2.0 * w.imag() / (1.0 - std::norm(w));
}

} // namespace

double angle_mod_2pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

HPoint::HPoint(double px, double py) : x(px), y(py) {
    if (!(x * x + y * y < 1.0))
        throw DomainError("HPoint outside the unit disk: |z|^2 = " +
                          std::to_string(x * x + y * y));
}

IdealPoint::IdealPoint(double angle) : theta(angle_mod_2pi(angle)) {}

Geodesic::Geodesic(IdealPoint a, IdealPoint b, IdealPoint plus) : q1(a), q2(b), plus_side(plus) {
    const double eps = 1e-12;
    auto close = [&](const IdealPoint& u, const IdealPoint& v) {
        double d = angle_mod_2pi(u.theta - v.theta);
        return d < eps || kTwoPi - d < eps;
    };
    if (close(q1, q2)) throw DomainError("Geodesic endpoints coincide");
    if (close(plus_side, q1) || close(plus_side, q2))
        throw DomainError("plus_side must differ from the geodesic endpoints");
}

HCircle::HCircle(HPoint c, double r) : center(c), radius(r) {
    if (r < 0.0) throw DomainError("HCircle radius must be >= 0");
}

double dist(const HPoint& a, const HPoint& b) {
    const std::complex<double> w = mobius_to_origin(a.z(), b.z());
    return 2.0 * std::atanh(std::abs(w));
}

double dist_to_circle(const HPoint& x, const HCircle& c) {
    const double d = dist(x, c.center);
    if (d < c.radius - 1e-12)
        throw InsideDomainError("point inside B_r: d = " + std::to_string(d) +
                                ", r = " + std::to_string(c.radius));
    return std::max(d - c.radius, 0.0);
}

double busemann(const IdealPoint& xi, const HPoint& x) {
    const std::complex<double> u = xi.unit();
    return std::log(std::norm(u - x.z()) / (1.0 - x.norm2()));
}

double dist_to_horocycle(const HPoint& x, const Horocycle& h) {
    const double s = busemann(h.base, x) - h.level;
    if (s < -1e-12)
        throw InsideDomainError("point inside the horodisc: B - level = " + std::to_string(s));
    return std::max(s, 0.0);
}

HPoint geodesic_ray(const HPoint& x, const IdealPoint& q, double t) {
    if (t < 0.0) throw DomainError("geodesic_ray requires t >= 0");
    std::complex<double> dir = mobius_to_origin(x.z(), q.unit());
    dir /= std::abs(dir);
    return HPoint(mobius_from_origin(x.z(), std::tanh(0.5 * t) * dir));
}

// ---------------------------------------------------------------------------
// GeodesicFrame
//
// Normalization: rotate by -psi so the endpoints become a conjugate pair
// e^{±i delta}; the geodesic then crosses the real axis at
// x0 = (1-|sin delta|)/cos delta. Translating x0 to the origin sends the
// geodesic to the imaginary diameter; a final -i rotation puts it on the
// real diameter, where sinh(s) = 2 Im w / (1-|w|^2).

GeodesicFrame::GeodesicFrame(const Geodesic& g) {
    const std::complex<double> u = g.q1.unit();
    const std::complex<double> v = g.q2.unit();
    rot_ = std::arg(std::sqrt(u * v));
    const double delta = g.q1.theta - rot_;
    const double c = std::cos(delta), s = std::sin(delta);
    x0_ = std::abs(c) < 1e-15 ? 0.0 : (1.0 - std::abs(s)) / c;
    sign_ = to_normalized(g.plus_side.unit()).imag() >= 0.0 ? 1.0 : -1.0;
}

std::complex<double> GeodesicFrame::to_normalized(std::complex<double> z) const {
    return -kI * mobius_real(x0_, std::polar(1.0, -rot_) * z);
}

std::complex<double> GeodesicFrame::from_normalized(std::complex<double> w) const {
    return std::polar(1.0, rot_) * mobius_real(-x0_, kI * w);
}

double GeodesicFrame::boundary_angle(const IdealPoint& q) const {
    return std::arg(to_normalized(q.unit()));
}

HPoint GeodesicFrame::point_on_geodesic(double tau) const {
    return HPoint(from_normalized(std::tanh(0.5 * tau)));
}

HPoint GeodesicFrame::fermi_point(double tau, double sigma) const {
    const double a = std::tanh(0.5 * tau);
    const std::complex<double> off = kI * (std::tanh(0.5 * sigma) * sign_);
    return HPoint(from_normalized(mobius_real(-a, off)));
}

double signed_dist_to_geodesic(const HPoint& x, const Geodesic& g) {
    const GeodesicFrame frame(g);
    const std::complex<double> w = frame.to_normalized(x.z());
    return frame.sign() * std::asinh(diameter_invariant(w));
}

// ---------------------------------------------------------------------------
// HorocycleFrame
//
// Half-plane picture with the base point at infinity: B = -log(Im w), so the
// horocycle of Busemann level L is the line Im w = e^{-L}.

HorocycleFrame::HorocycleFrame(const Horocycle& h) : rot_(h.base.theta), level_(h.level) {}

std::complex<double> HorocycleFrame::to_uhp(std::complex<double> z) const {
    const std::complex<double> zr = std::polar(1.0, -rot_) * z;
    return kI * (1.0 + zr) / (1.0 - zr);
}

HPoint HorocycleFrame::point(double tau, double s) const {
    const double y = std::exp(-(level_ + s));
    const std::complex<double> w(tau * y, y);
    const std::complex<double> z = (w - kI) / (w + kI);
    return HPoint(std::polar(1.0, rot_) * z);
}

// ---------------------------------------------------------------------------

double laplacian_fd(const std::function<double(const HPoint&)>& field, const HPoint& x,
                    double h) {
    if (!(h > 0.0)) throw DomainError("laplacian_fd requires h > 0");
    const double f0 = field(x);
    const double step = std::tanh(0.5 * h);
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        const std::complex<double> dir = std::polar(step, 0.5 * std::numbers::pi * k);
        acc += field(HPoint(mobius_from_origin(x.z(), dir)));
    }
    return (acc - 4.0 * f0) / (h * h);
}

} // namespace hcmc
