#include "hcmc/profiles.hpp"

#include <cmath>

#include "hcmc/quadrature.hpp"

namespace hcmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

SlopeLH lH(MeanCurvatureH H) {
    if (H.is_half()) return {kInf};
    const double h2 = 2.0 * H.value();
    return {h2 / std::sqrt((1.0 - h2) * (1.0 + h2))};
}

// ---------------------------------------------------------------------------
// Rotational family

RotationalProfile::RotationalProfile(MeanCurvatureH h, double radius) : H(h), r(radius) {
    if (r < 0.0) throw DomainError("rotational profile needs r >= 0");
}

namespace {

// N(t) = 2H(cosh(r+t) - cosh r) + sinh r, the numerator of the unduloid
// integrand. The discriminant sinh^2(r+t) - N^2 factors into half-angle
// products with no cancellation near t = 0:
//   sinh(r+t) - N = 2 sinh(t/2) (cosh(r+t/2) - 2H sinh(r+t/2))
//   sinh(r+t) + N = 2 sinh(r+t/2) (cosh(t/2) + 2H sinh(t/2))
double und_numer(double H, double r, double t) {
    return 2.0 * H * (std::cosh(r + t) - std::cosh(r)) + std::sinh(r);
}

double und_disc(double H, double r, double t) {
    const double a = 2.0 * std::sinh(0.5 * t) *
                     (std::cosh(r + 0.5 * t) - 2.0 * H * std::sinh(r + 0.5 * t));
    const double b = 2.0 * std::sinh(r + 0.5 * t) *
                     (std::cosh(0.5 * t) + 2.0 * H * std::sinh(0.5 * t));
    return a * b;
}

} // namespace

double RotationalProfile::und(double s) const {
    if (s < 0.0) throw DomainError("und requires s >= 0");
    if (r <= 0.0) throw DomainError("und requires r > 0");
    H.require_below_half("und");
    if (s == 0.0) return 0.0;
    const double h = H.value();
    const double rr = r;
    auto f = [h, rr](double t) { return und_numer(h, rr, t) / std::sqrt(und_disc(h, rr, t)); };
    return quad::integrate_sqrt_singular_lower(f, 0.0, s);
}

double RotationalProfile::und_deriv(double s) const {
    if (s < 0.0) throw DomainError("und_deriv requires s >= 0");
    if (r <= 0.0) throw DomainError("und_deriv requires r > 0");
    H.require_below_half("und_deriv");
    if (s == 0.0) return kInf;
    return und_numer(H.value(), r, s) / std::sqrt(und_disc(H.value(), r, s));
}

namespace {

// cap integrand 2H sqrt(cosh t - 1)/sqrt((1-4H^2)cosh t + 1 + 4H^2),
// with cosh t - 1 = 2 sinh^2(t/2).
double cap_integrand(double H, double t) {
    const double num = 2.0 * H * std::sqrt(2.0) * std::sinh(0.5 * t);
    const double den = std::sqrt((1.0 - 4.0 * H * H) * std::cosh(t) + 1.0 + 4.0 * H * H);
    return num / den;
}

} // namespace

double RotationalProfile::cap(double s) const {
    if (s < 0.0) throw DomainError("cap requires s >= 0");
    H.require_below_half("cap");
    const double h = H.value();
    if (h == 0.0 || s == 0.0) return 0.0;
    return quad::integrate([h](double t) { return cap_integrand(h, t); }, 0.0, s);
}

double RotationalProfile::cap_deriv(double s) const {
    if (s < 0.0) throw DomainError("cap_deriv requires s >= 0");
    H.require_below_half("cap_deriv");
    return cap_integrand(H.value(), s);
}

double RotationalProfile::flux(double s) const {
    if (r > 0.0) {
        // phi' = N/sqrt(sinh^2(r+s) - N^2)  =>  F = N/sinh(r+s).
        return und_numer(H.value(), r, s) / std::sinh(r + s);
    }
    // F = 2H(cosh s - 1)/sinh s = 2H tanh(s/2).
    return 2.0 * H.value() * std::tanh(0.5 * s);
}

// ---------------------------------------------------------------------------
// Hyperbolic family

HyperbolicProfile::HyperbolicProfile(MeanCurvatureH h, double c) : H_(h), C_(c) {
    H_.require_below_half("HyperbolicProfile");
    R_ = std::atanh(2.0 * H_.value());
    const double a = std::abs(C_);
    if (a > 1.0)
        MC_ = C_ > 0.0 ? R_ + std::acosh(C_) : std::acosh(-C_) - R_;
    else if (a == 1.0)
        MC_ = C_ > 0.0 ? R_ : -R_;
    else
        MC_ = -kInf;

    if (a > 1.0)
        anchor_ = MC_;
    else if (a == 1.0)
        anchor_ = MC_ + 1.0;
    else
        anchor_ = x_m();
}

double HyperbolicProfile::g(double s) const {
    const double h2 = 2.0 * H_.value();
    return (h2 * std::sinh(s) + C_ * std::sqrt((1.0 - h2) * (1.0 + h2))) / std::cosh(s);
}

double HyperbolicProfile::g_deriv(double s) const {
    // g'(s) = (sinh R - C sinh s)/(cosh R cosh^2 s).
    const double ch = std::cosh(s);
    return (std::sinh(R_) - C_ * std::sinh(s)) / (std::cosh(R_) * ch * ch);
}

double HyperbolicProfile::one_minus_g2(double s) const {
    // (1 - g^2) (cosh R cosh s)^2 = (cosh(s-R) - C)(cosh(s+R) + C); each
    // bracket is expanded in half-angle products near its root.
    double br1;
    if (C_ > 1.0) {
        const double x0 = std::acosh(C_);
        br1 = 2.0 * std::sinh(0.5 * (s - R_ + x0)) * std::sinh(0.5 * (s - R_ - x0));
    } else if (C_ == 1.0) {
        const double t = std::sinh(0.5 * (s - R_));
        br1 = 2.0 * t * t;
    } else {
        br1 = std::cosh(s - R_) - C_;
    }
    double br2;
    if (C_ < -1.0) {
        const double x0 = std::acosh(-C_);
        br2 = 2.0 * std::sinh(0.5 * (s + R_ + x0)) * std::sinh(0.5 * (s + R_ - x0));
    } else if (C_ == -1.0) {
        const double t = std::sinh(0.5 * (s + R_));
        br2 = 2.0 * t * t;
    } else {
        br2 = std::cosh(s + R_) + C_;
    }
    const double scale = std::cosh(R_) * std::cosh(s);
    return br1 * br2 / (scale * scale);
}

double HyperbolicProfile::gprime_at_MC() const {
    if (!(C_ > 1.0)) throw DomainError("gprime_at_MC requires C > 1");
    const double h2 = 2.0 * H_.value();
    const double root = std::sqrt((C_ - 1.0) * (C_ + 1.0));
    return -root * (1.0 - h2 * h2) / (C_ + h2 * root);
}

double HyperbolicProfile::x_m() const {
    if (std::abs(C_) >= 1.0) throw DomainError("x_m requires |C| < 1");
    if (C_ == 0.0) return 0.0;
    const double sR = std::sinh(R_);
    if (sR == 0.0) return 0.0; // H = 0: g never vanishes, anchor at 0
    return std::asinh(-C_ / sR);
}

void HyperbolicProfile::check_domain_(double s) const {
    if (std::abs(C_) > 1.0) {
        if (s < MC_) throw DomainError("phi undefined below M_C");
    } else if (std::abs(C_) == 1.0) {
        if (s <= MC_) throw DomainError("phi undefined at or below M_C");
    }
}

double HyperbolicProfile::phi_deriv(double s) const {
    check_domain_(s);
    const double om = one_minus_g2(s);
    if (om <= 0.0) return C_ > 0.0 ? kInf : -kInf;
    return g(s) / std::sqrt(om);
}

// Integrand of phi near the attained edge, in the substituted variable
// t = M_C + u^2. Written directly in u so the vanishing half-angle bracket
// sinh((t - M_C)/2) = sinh(u^2/2) never suffers cancellation.
double HyperbolicProfile::edge_integrand_(double u) const {
    const double du = u * u;
    const double t = MC_ + du;
    double br_edge, br_other;
    if (C_ > 1.0) {
        const double x0 = std::acosh(C_);
        br_edge = 2.0 * std::sinh(0.5 * (t - R_ + x0)) * std::sinh(0.5 * du);
        br_other = std::cosh(t + R_) + C_;
    } else {
        const double x0 = std::acosh(-C_);
        br_edge = 2.0 * std::sinh(0.5 * (t + R_ + x0)) * std::sinh(0.5 * du);
        br_other = std::cosh(t - R_) - C_;
    }
    const double scale = std::cosh(R_) * std::cosh(t);
    const double om = br_edge * br_other / (scale * scale);
    return 2.0 * u * g(t) / std::sqrt(om);
}

double HyperbolicProfile::phi(double s) const {
    check_domain_(s);
    auto f = [this](double t) { return g(t) / std::sqrt(one_minus_g2(t)); };
    if (std::abs(C_) > 1.0) {
        // Integrand behaves like (t - M_C)^{-1/2} at the edge.
        auto fu = [this](double u) { return edge_integrand_(u); };
        const double split = MC_ + 1.0;
        if (s <= split) return quad::integrate(fu, 0.0, std::sqrt(std::max(s - MC_, 0.0)));
        return quad::integrate(fu, 0.0, 1.0) + quad::integrate(f, split, s);
    }
    return quad::integrate(f, anchor_, s);
}

double HyperbolicProfile::phi_closed_raw_(double s) const {
    const double shR = std::sinh(R_), chR = std::cosh(R_);
    if (C_ == 1.0)
        return shR * s + chR * std::log(std::abs((std::exp(s) - std::exp(R_)) /
                                                 (std::exp(s) + std::exp(-R_))));
    if (C_ == -1.0)
        return shR * s + chR * std::log(std::abs((std::exp(s) + std::exp(R_)) /
                                                 (std::exp(s) - std::exp(-R_))));
    throw DomainError("phi_closed requires C = +1 or C = -1");
}

double HyperbolicProfile::phi_closed(double s) const {
    if (C_ != 1.0 && C_ != -1.0) throw DomainError("phi_closed requires C = +1 or C = -1");
    check_domain_(s);
    return phi_closed_raw_(s) - phi_closed_raw_(anchor_);
}

// ---------------------------------------------------------------------------
// Parabolic family

ParabolicProfile::ParabolicProfile(MeanCurvatureH h) : H(h) {
    H.require_below_half("ParabolicProfile");
}

double ParabolicProfile::flux(double s) const {
    return 2.0 * H.value() + (1.0 - 2.0 * H.value()) * std::exp(-s);
}

double ParabolicProfile::horo(double s) const {
    if (s < 0.0) throw DomainError("horo requires s >= 0");
    H.require_below_half("horo");
    if (s == 0.0) return 0.0;
    const double h = H.value();
    auto f = [h](double t) {
        const double c = 2.0 * h + (1.0 - 2.0 * h) * std::exp(-t);
        const double one_minus = (1.0 - 2.0 * h) * (-std::expm1(-t));
        return c / std::sqrt(one_minus * (1.0 + c));
    };
    return quad::integrate_sqrt_singular_lower(f, 0.0, s);
}

double ParabolicProfile::horo_closed(double s) const {
    if (s < 0.0) throw DomainError("horo_closed requires s >= 0");
    H.require_below_half("horo_closed");
    const double h = H.value();
    const double one_minus_c = (1.0 - 2.0 * h) * (-std::expm1(-s));
    const double theta = 2.0 * std::asin(std::sqrt(0.5 * one_minus_c));
    if (h == 0.0) return theta;
    const double k = std::sqrt((1.0 + 2.0 * h) / (1.0 - 2.0 * h));
    const double lh = 2.0 * h / std::sqrt((1.0 - 2.0 * h) * (1.0 + 2.0 * h));
    return theta + 2.0 * lh * std::atanh(k * std::tan(0.5 * theta));
}

double ParabolicProfile::horo_deriv(double s) const {
    if (s < 0.0) throw DomainError("horo_deriv requires s >= 0");
    H.require_below_half("horo_deriv");
    if (s == 0.0) return kInf;
    const double c = flux(s);
    const double one_minus = (1.0 - 2.0 * H.value()) * (-std::expm1(-s));
    return c / std::sqrt(one_minus * (1.0 + c));
}

} // namespace hcmc
