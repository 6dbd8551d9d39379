#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>

namespace hcmc::quad {

// Gauss(7)/Kronrod(15) pair on [a,b]. All nodes are interior, so integrands
// that blow up at an endpoint are never evaluated there.
template <class F>
std::pair<double, double> gauss_kronrod_15(const F& f, double a, double b) {
    static const double nodes[8] = {
        0.000000000000000, 0.207784955007898, 0.405845151377397, 0.586087235467691,
        0.741531185599394, 0.864864423359769, 0.949107912342759, 0.991455371120813};
    static const double wk[8] = {
        0.209482141084728, 0.204432940075298, 0.190350578064785, 0.169004726639267,
        0.140653259715525, 0.104790010322250, 0.063092092629979, 0.022935322010529};
    static const double wg[4] = {
        0.417959183673469, 0.381830050505119, 0.279705391489277, 0.129484966168870};

    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);

    const double f0 = f(mid);
    double k15 = wk[0] * f0;
    double g7 = wg[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = hw * nodes[i];
        const double fs = f(mid + dx) + f(mid - dx);
        k15 += wk[i] * fs;
        if (i % 2 == 0) g7 += wg[i / 2] * fs;
    }
    k15 *= hw;
    g7 *= hw;
    const double err = std::pow(200.0 * std::abs(k15 - g7), 1.5);
    return {k15, err};
}

struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-10;
};

// Adaptive bisection on top of the G7K15 pair. The panel budget bounds the
// total work even when the error estimate degenerates.
template <class F>
double integrate(const F& f, double a, double b, Tolerance tol = {}, int max_depth = 48) {
    if (a == b) return 0.0;
    struct Panel {
        double a, b;
        int depth;
    };
    Panel stack[256];
    int top = 0;
    stack[top++] = {a, b, 0};
    double total = 0.0;
    int panels = 0;
    while (top > 0) {
        const Panel p = stack[--top];
        auto [val, err] = gauss_kronrod_15(f, p.a, p.b);
        const bool refine = std::isfinite(err)
                                ? err > tol.abs && err > tol.rel * std::abs(val)
                                : true;
        if (!refine || p.depth >= max_depth || top > 250 || ++panels > 40000) {
            total += val;
            continue;
        }
        const double m = 0.5 * (p.a + p.b);
        stack[top++] = {p.a, m, p.depth + 1};
        stack[top++] = {m, p.b, p.depth + 1};
    }
    return total;
}

// ∫_a^b f(t) dt where f ~ (t-a)^{-1/2} near a. Substituting t = a + u²
// gives the bounded integrand 2u·f(a+u²) on [0, sqrt(b-a)].
template <class F>
double integrate_sqrt_singular_lower(const F& f, double a, double b, Tolerance tol = {}) {
    if (b <= a) return 0.0;
    const double ub = std::sqrt(b - a);
    auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
    return integrate(g, 0.0, ub, tol);
}

} // namespace hcmc::quad
