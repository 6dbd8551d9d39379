// Acceptance suite: one check per release criterion, each printed as a
// PASS/FAIL line with its runtime. The process exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "hcmc/boundary.hpp"
#include "hcmc/dirichlet.hpp"
#include "hcmc/geometry.hpp"
#include "hcmc/profiles.hpp"
#include "hcmc/surfaces.hpp"

using namespace hcmc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Harness {
    int failures = 0;

    void run(int number, const std::string& name, double time_budget_s,
             const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (time_budget_s > 0.0 && secs >= time_budget_s) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
        }
        std::printf("[%s] %2d %-38s %7.2fs%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                     secs, detail.empty() ? "" : "  -- ", detail.c_str());
        if (!ok) ++failures;
    }
};

double rel_gap(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

HPoint surface_point(const InvariantSurface& surf, std::mt19937& gen, double s_lo,
                     double s_hi) {
    std::uniform_real_distribution<double> us(s_lo, s_hi);
    std::uniform_real_distribution<double> ulev(-2.5, 2.5);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * kPi);
    const double s = us(gen);
    switch (surf.kind()) {
        case SurfaceKind::Rotational: {
            const auto& c = surf.circle_base();
            return geodesic_ray(c.center, IdealPoint(uang(gen)), c.radius + s);
        }
        case SurfaceKind::Hyperbolic:
            return GeodesicFrame(surf.geodesic_base()).fermi_point(ulev(gen), s);
        case SurfaceKind::Parabolic:
            return HorocycleFrame(surf.horocycle_base()).point(ulev(gen), s);
    }
    return HPoint();
}

} // namespace

int main() {
    Harness h;

    // 1 ------------------------------------------------------------------
    h.run(1, "closed-form agreement (C=+-1, horo)", 5.0, [](std::string& detail) {
        double worst = 0.0;
        for (double H : {0.1, 0.25, 0.4}) {
            MeanCurvatureH mc(H);
            for (double C : {1.0, -1.0}) {
                HyperbolicProfile p(mc, C);
                // 50 samples skipping a +-0.1 window around the shared anchor
                for (int k = 0; k < 50; ++k) {
                    const double lo = p.M_C() + 0.05;
                    double s = lo + (p.M_C() + 8.0 - lo) * k / 49.0;
                    if (std::abs(s - p.anchor()) < 0.1) s += 0.21;
                    worst = std::max(worst, rel_gap(p.phi(s), p.phi_closed(s)));
                }
            }
            ParabolicProfile pp(mc);
            for (int k = 0; k < 50; ++k) {
                const double s = 0.2 + (10.0 - 0.2) * k / 49.0;
                worst = std::max(worst, rel_gap(pp.horo(s), pp.horo_closed(s)));
            }
        }
        detail = "max rel gap " + std::to_string(worst);
        return worst <= 1e-8;
    });

    // 2 ------------------------------------------------------------------
    h.run(2, "M_C root-find vs case formulas", 1.0, [](std::string& detail) {
        const std::vector<std::pair<double, double>> pairs = {
            {0.1, 3.0},   {0.25, 2.0}, {0.4, 1.5},  {0.3, 5.0},   // (i)
            {0.0, 1.0},   {0.1, 1.0},  {0.25, 1.0}, {0.4, 1.0},   // (ii)
            {0.25, 0.5},  {0.4, -0.7}, {0.1, 0.3},  {0.2, 0.0},   // (iii)
            {0.05, -1.0}, {0.15, -1.0}, {0.3, -1.0}, {0.45, -1.0}, // (iv)
            {0.1, -3.0},  {0.25, -2.0}, {0.4, -1.5}, {0.3, -5.0}}; // (v)
        double worst = 0.0;
        for (auto [H, C] : pairs) {
            HyperbolicProfile p(MeanCurvatureH(H), C);
            if (std::abs(C) > 1.0) {
                // crossing of |g| = 1 bounding the interval that contains +inf
                double lo = 30.0;
                while (std::abs(p.g(lo)) < 1.0) lo -= 0.05;
                double hi = lo + 0.05;
                for (int it = 0; it < 200; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (std::abs(p.g(mid)) >= 1.0 ? lo : hi) = mid;
                }
                worst = std::max(worst, std::abs(0.5 * (lo + hi) - p.M_C()));
            } else if (std::abs(C) == 1.0) {
                // tangency: locate it as the root of g' and check |g| = 1
                double lo = -10.0, hi = 10.0;
                const double sign_lo = p.g_deriv(lo);
                while (hi - lo > 1e-14) {
                    const double mid = 0.5 * (lo + hi);
                    (p.g_deriv(mid) * sign_lo > 0.0 ? lo : hi) = mid;
                }
                const double s = 0.5 * (lo + hi);
                if (std::abs(std::abs(p.g(s)) - 1.0) > 1e-12) return false;
                worst = std::max(worst, std::abs(s - p.M_C()));
            } else {
                if (p.M_C_is_finite()) return false;
                double sup = 0.0;
                for (double s = -25.0; s <= 25.0; s += 0.01)
                    sup = std::max(sup, std::abs(p.g(s)));
                if (sup >= 1.0) return false;
            }
        }
        detail = "max |root - formula| " + std::to_string(worst);
        return worst <= 1e-10;
    });

    // 3 ------------------------------------------------------------------
    h.run(3, "g'(M_C) vs central differences", 0.0, [](std::string& detail) {
        const std::vector<std::pair<double, double>> pairs = {
            {0.0, 2.0},  {0.1, 3.0},  {0.25, 2.0}, {0.4, 1.5},  {0.3, 5.0},
            {0.2, 1.2},  {0.45, 4.0}, {0.05, 1.6}, {0.35, 2.5}, {0.15, 10.0}};
        double worst = 0.0;
        for (auto [H, C] : pairs) {
            HyperbolicProfile p(MeanCurvatureH(H), C);
            const double fd = (p.g(p.M_C() + 1e-6) - p.g(p.M_C() - 1e-6)) / 2e-6;
            worst = std::max(worst, std::abs(p.gprime_at_MC() - fd));
        }
        detail = "max gap " + std::to_string(worst);
        return worst <= 1e-6;
    });

    // 4 ------------------------------------------------------------------
    h.run(4, "distance Laplacian identities", 0.0, [](std::string& detail) {
        std::mt19937 gen(2024);
        std::uniform_real_distribution<double> uang(0.0, 2.0 * kPi);
        std::uniform_real_distribution<double> urad(0.0, 1.0);
        auto disk_point = [&]() {
            const double r = std::sqrt(urad(gen)) * 0.93;
            const double th = uang(gen);
            return HPoint(r * std::cos(th), r * std::sin(th));
        };
        const HCircle circ(HPoint(), 0.8);
        const Horocycle horo{IdealPoint(0.0), 0.0};
        const Geodesic geo(IdealPoint(kPi), IdealPoint(0.0), IdealPoint(0.5 * kPi));
        double worst = 0.0;

        int done = 0;
        while (done < 100) {
            const HPoint x = disk_point();
            double s;
            try {
                s = dist_to_circle(x, circ);
            } catch (const InsideDomainError&) {
                continue;
            }
            if (s <= 0.1) continue;
            const double lap = laplacian_fd(
                [&](const HPoint& p) { return dist_to_circle(p, circ); }, x, 1e-3);
            worst = std::max(worst, std::abs(lap - 1.0 / std::tanh(circ.radius + s)));
            ++done;
        }
        done = 0;
        while (done < 100) {
            const HPoint x = disk_point();
            double s;
            try {
                s = dist_to_horocycle(x, horo);
            } catch (const InsideDomainError&) {
                continue;
            }
            if (s <= 0.1) continue;
            const double lap = laplacian_fd(
                [&](const HPoint& p) { return dist_to_horocycle(p, horo); }, x, 1e-3);
            worst = std::max(worst, std::abs(lap - 1.0));
            ++done;
        }
        done = 0;
        while (done < 100) {
            const HPoint x = disk_point();
            const double s = signed_dist_to_geodesic(x, geo);
            if (std::abs(s) <= 0.1) continue;
            const double lap = laplacian_fd(
                [&](const HPoint& p) { return signed_dist_to_geodesic(p, geo); }, x, 1e-3);
            worst = std::max(worst, std::abs(lap - std::tanh(s)));
            ++done;
        }
        detail = "max identity gap " + std::to_string(worst);
        return worst <= 1e-4;
    });

    // 5 ------------------------------------------------------------------
    h.run(5, "CMC residual across the catalogue", 10.0, [](std::string& detail) {
        std::mt19937 gen(7);
        double worst = 0.0;
        int surfaces = 0;
        for (double H : {0.0, 0.1, 0.25, 0.4}) {
            MeanCurvatureH mc(H);
            std::vector<InvariantSurface> cat;
            for (double r : {0.0, 0.5, 2.0})
                cat.push_back(r == 0.0 ? InvariantSurface::cap(mc)
                                       : InvariantSurface::unduloid(mc, r));
            for (double C : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0})
                cat.push_back(InvariantSurface::hyperbolic_graph(mc, C));
            cat.push_back(InvariantSurface::parabolic_graph(mc));
            for (const auto& surf : cat) {
                ++surfaces;
                const double edge = surf.domain_edge();
                const double lo = std::isfinite(edge) ? edge + 0.1 : -3.0;
                for (int k = 0; k < 100; ++k) {
                    const HPoint x = surface_point(surf, gen, lo, lo + 6.0);
                    worst = std::max(worst, std::abs(surf.qh_residual(x)));
                }
            }
        }
        detail = std::to_string(surfaces) + " surfaces, max |Q_H| " + std::to_string(worst);
        return worst <= 1e-6;
    });

    // 6 ------------------------------------------------------------------
    h.run(6, "asymptotic slopes at s = 30", 0.0, [](std::string& detail) {
        double worst = 0.0;
        for (double H : {0.1, 0.25, 0.4}) {
            MeanCurvatureH mc(H);
            const double lh = lH(mc).value;
            worst = std::max(worst, std::abs(RotationalProfile(mc, 0.5).und_deriv(30.0) - lh));
            worst = std::max(worst, std::abs(RotationalProfile(mc, 0.0).cap_deriv(30.0) - lh));
            worst = std::max(worst, std::abs(HyperbolicProfile(mc, 0.5).phi_deriv(30.0) - lh));
            worst = std::max(worst, std::abs(HyperbolicProfile(mc, 2.0).phi_deriv(30.0) - lh));
            worst = std::max(worst, std::abs(ParabolicProfile(mc).horo_deriv(30.0) - lh));
        }
        detail = "max |phi'(30) - l_H| " + std::to_string(worst);
        return worst <= 1e-3;
    });

    // 7 ------------------------------------------------------------------
    h.run(7, "boundary classification oracle", 0.0, [](std::string& detail) {
        MeanCurvatureH mc(0.25);
        auto expect = [&](const BoundarySet& set, CurveType want) {
            if (!set.is_curve) return false;
            const Verdict v = classify(set.curve, mc);
            return v.admissible && v.curve_type && *v.curve_type == want;
        };
        bool ok = true;
        ok &= expect(boundary_of(InvariantSurface::cap(mc)), CurveType::I);
        ok &= expect(boundary_of(alexandrov_reflect(InvariantSurface::unduloid(mc, 0.6))),
                     CurveType::VI);
        ok &= expect(
            boundary_of(alexandrov_reflect(InvariantSurface::hyperbolic_graph(mc, 2.0))),
            CurveType::III);
        ok &= expect(boundary_of(InvariantSurface::hyperbolic_graph(mc, 1.0)), CurveType::IV);
        ok &= expect(boundary_of(InvariantSurface::hyperbolic_graph(mc, -1.0)), CurveType::IV);
        ok &= !boundary_of(alexandrov_reflect(InvariantSurface::parabolic_graph(mc))).is_curve;

        // negative controls
        {
            BoundaryCurve c;
            EquatorArc a;
            a.height = Height::zero();
            a.full_circle = true;
            c.components.push_back({a});
            const Verdict v = classify(c, mc);
            bool hit = !v.admissible;
            bool rule = false;
            for (const auto& viol : v.violations) rule |= viol.rule == "arc not at +-l_H";
            ok &= hit && rule;
        }
        {
            BoundaryCurve c;
            WeylSegment w{1.0, Height::finite(-0.2), Height::finite(0.2)};
            c.components.push_back({w, w});
            const Verdict v = classify(c, mc);
            bool rule = false;
            for (const auto& viol : v.violations)
                rule |= viol.rule == "chamber interval missing +-l_H endpoint";
            ok &= !v.admissible && rule;
        }
        {
            BoundaryCurve open = boundary_of(alexandrov_reflect(
                                                 InvariantSurface::hyperbolic_graph(mc, 2.0)))
                                     .curve;
            open.components[0].pop_back();
            bool threw = false;
            try {
                (void)classify(open, mc);
            } catch (const MalformedCurveError&) {
                threw = true;
            }
            ok &= threw;
        }
        detail = ok ? "catalogue types and controls as expected" : "mismatch";
        return ok;
    });

    // 8 ------------------------------------------------------------------
    h.run(8, "numeric vs symbolic Weyl intervals", 30.0, [](std::string& detail) {
        MeanCurvatureH mc(0.25);
        const InvariantSurface hyp = InvariantSurface::hyperbolic_graph(mc, 2.0);
        const BoundarySet sym = boundary_of(hyp);

        const IdealPoint q1(kPi);
        const auto sym1 = weyl_restriction(sym, q1, mc);
        const auto est1 = estimate_weyl_interval(hyp, q1);
        const IdealPoint mid(0.5 * kPi);
        const auto sym2 = weyl_restriction(sym, mid, mc);
        const auto est2 = estimate_weyl_interval(hyp, mid);
        if (!sym1 || !sym2) return false;
        const double worst =
            std::max({std::abs(est1.first - sym1->first), std::abs(est1.second - sym1->second),
                      std::abs(est2.first - sym2->first),
                      std::abs(est2.second - sym2->second)});
        detail = "max interval gap " + std::to_string(worst);
        return worst <= 1e-2;
    });

    // 9 ------------------------------------------------------------------
    h.run(9, "Dirichlet cap exactness and O(h^2)", 60.0, [](std::string& detail) {
        MeanCurvatureH mc(0.25);
        const DiskGrid grid(8.0, 256, 256);
        const Solution base = solve(grid, mc, AsymptoticData::constant(0.0));
        const Solution shifted = solve(grid, mc, AsymptoticData::constant(0.7));
        double dev = 0.0;
        for (int k = 0; k < grid.size(); ++k)
            dev = std::max(dev, std::abs(shifted.u[k] - base.u[k] - 0.7));
        if (dev > 1e-10) {
            detail = "translation deviation " + std::to_string(dev);
            return false;
        }

        RotationalProfile cap(mc, 0.0);
        auto max_res = [&](int n_rho) {
            const DiskGrid g(8.0, n_rho, 16);
            std::vector<double> u(g.size());
            for (int i = 0; i < g.n_rho; ++i) {
                const double v = cap.cap(g.rho(i));
                for (int j = 0; j < g.n_theta; ++j) u[g.index(i, j)] = v;
            }
            const auto res = discrete_QH(g, u, mc);
            double m = 0.0;
            for (int i = 0; i < g.n_rho - 1; ++i)
                for (int j = 0; j < g.n_theta; ++j)
                    m = std::max(m, std::abs(res[g.index(i, j)]));
            return m;
        };
        const double rc = max_res(128), rf = max_res(256);
        const double ratio = rc / rf;
        detail = "translation dev " + std::to_string(dev) + ", halving ratio " +
                 std::to_string(ratio) + ", fine residual " + std::to_string(rf);
        return ratio >= 3.5 && ratio <= 4.5 && rf <= 1e-4;
    });

    // 10 -----------------------------------------------------------------
    h.run(10, "Dirichlet structure at 256x256", 120.0, [](std::string& detail) {
        MeanCurvatureH mc(0.25);
        const DiskGrid grid(8.0, 256, 256);
        const AsymptoticData phi = AsymptoticData::fourier(0.0, {0.3}, {});
        const Solution sol = solve(grid, mc, phi);
        const Solution base = solve(grid, mc, AsymptoticData::constant(0.0));

        // comparison principle against the shifted discrete caps
        for (int k = 0; k < grid.size(); ++k) {
            if (sol.u[k] < base.u[k] - 0.3 - 1e-8 || sol.u[k] > base.u[k] + 0.3 + 1e-8) {
                detail = "comparison bound violated";
                return false;
            }
        }
        const Solution below = solve(grid, mc, AsymptoticData::fourier(-0.02, {0.3}, {}));
        for (int k = 0; k < grid.size(); ++k)
            if (below.u[k] > sol.u[k] + 1e-8) {
                detail = "monotone comparison violated";
                return false;
            }

        // translation equivariance
        const Solution up = solve(grid, mc, AsymptoticData::fourier(0.25, {0.3}, {}));
        double worst_t = 0.0;
        for (int k = 0; k < grid.size(); ++k)
            worst_t = std::max(worst_t, std::abs(up.u[k] - sol.u[k] - 0.25));
        if (worst_t > 1e-10) {
            detail = "translation equivariance gap " + std::to_string(worst_t);
            return false;
        }

        // rotational symmetry
        double worst_s = 0.0;
        for (int i = 0; i < grid.n_rho; ++i)
            for (int j = 0; j < grid.n_theta; ++j)
                worst_s = std::max(worst_s, std::abs(base.u[grid.index(i, j)] -
                                                     base.u[grid.index(i, 0)]));
        if (worst_s > 1e-9) {
            detail = "theta variation " + std::to_string(worst_s);
            return false;
        }

        // two-initialization uniqueness
        RotationalProfile cap(mc, 0.0);
        std::vector<double> lo_init(grid.size()), hi_init(grid.size());
        for (int i = 0; i < grid.n_rho; ++i) {
            const double c = cap.cap(grid.rho(i));
            for (int j = 0; j < grid.n_theta; ++j) {
                lo_init[grid.index(i, j)] = c - 0.3;
                hi_init[grid.index(i, j)] = c + 0.3;
            }
        }
        SolveOptions o1, o2;
        o1.initial_guess = lo_init;
        o2.initial_guess = hi_init;
        const Solution s1 = solve(grid, mc, phi, o1);
        const Solution s2 = solve(grid, mc, phi, o2);
        double worst_u = 0.0;
        for (int k = 0; k < grid.size(); ++k)
            worst_u = std::max(worst_u, std::abs(s1.u[k] - s2.u[k]));
        detail = "translation " + std::to_string(worst_t) + ", symmetry " +
                 std::to_string(worst_s) + ", uniqueness " + std::to_string(worst_u);
        return worst_u <= 1e-8;
    });

    // 11 -----------------------------------------------------------------
    h.run(11, "barrier sandwich", 0.0, [](std::string& detail) {
        MeanCurvatureH mc(0.25);
        const DiskGrid grid(8.0, 192, 128);
        const Solution sol = solve(grid, mc, AsymptoticData::constant(0.0));
        const Barrier lo = lower_barrier(mc, IdealPoint(0.0), 0.1);
        const Barrier up = upper_barrier(mc, IdealPoint(0.0), 0.1);

        const SandwichReport rep = check_sandwich(sol, lo, up);
        if (!rep.ok()) {
            detail = "violations " + std::to_string(rep.lower_violations) + "/" +
                     std::to_string(rep.upper_violations) + ", max " +
                     std::to_string(std::max(rep.max_lower_violation, rep.max_upper_violation));
            return false;
        }
        const SandwichReport bad = check_sandwich(sol, lo.shifted(0.05), up);
        detail = "clean sandwich; shifted control flagged " +
                 std::to_string(bad.lower_violations) + " nodes, max " +
                 std::to_string(bad.max_lower_violation);
        return bad.lower_violations > 0 && bad.max_lower_violation > 0.01;
    });

    std::printf("%d of 11 criteria passed\n", 11 - h.failures);
    return h.failures;
}
