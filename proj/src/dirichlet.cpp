#include "hcmc/dirichlet.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <numbers>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <json.hpp>

namespace hcmc {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
} // namespace

// ---------------------------------------------------------------------------
// AsymptoticData

AsymptoticData::AsymptoticData(std::function<double(double)> fn) : fn_(std::move(fn)) {
    validate_();
}

void AsymptoticData::validate_() const {
    // Continuity guard: reject NaN/inf and O(1) jumps on a dense grid.
    const int n = 4096;
    double prev = fn_(0.0);
    if (!std::isfinite(prev)) throw DomainError("boundary data not finite");
    for (int k = 1; k <= n; ++k) {
        const double v = fn_(kTwoPi * k / n);
        if (!std::isfinite(v)) throw DomainError("boundary data not finite");
        if (std::abs(v - prev) > 1.0)
            throw DomainError("boundary data jumps on the sampling grid; not continuous");
        prev = v;
    }
}

AsymptoticData AsymptoticData::constant(double c) {
    return AsymptoticData([c](double) { return c; });
}

AsymptoticData AsymptoticData::fourier(double a0, std::vector<double> cos_coeffs,
                                       std::vector<double> sin_coeffs) {
    return AsymptoticData([a0, c = std::move(cos_coeffs), s = std::move(sin_coeffs)](double th) {
        double v = a0;
        for (std::size_t k = 0; k < c.size(); ++k) v += c[k] * std::cos((double)(k + 1) * th);
        for (std::size_t k = 0; k < s.size(); ++k) v += s[k] * std::sin((double)(k + 1) * th);
        return v;
    });
}

AsymptoticData AsymptoticData::samples(std::vector<double> thetas, std::vector<double> values) {
    if (thetas.size() != values.size() || thetas.size() < 2)
        throw DomainError("sampled boundary data needs matching theta/value lists");
    return AsymptoticData([t = std::move(thetas), v = std::move(values)](double th) {
        const double x = angle_mod_2pi(th);
        // periodic linear interpolation; the table is assumed sorted
        std::size_t hi = 0;
        while (hi < t.size() && t[hi] <= x) ++hi;
        const std::size_t i1 = hi % t.size();
        const std::size_t i0 = (hi + t.size() - 1) % t.size();
        double t0 = t[i0], t1 = t[i1];
        double span = angle_mod_2pi(t1 - t0);
        if (span == 0.0) span = kTwoPi;
        const double w = angle_mod_2pi(x - t0) / span;
        return v[i0] + w * (v[i1] - v[i0]);
    });
}

// ---------------------------------------------------------------------------
// Grid

DiskGrid::DiskGrid(double R_max_, int n_rho_, int n_theta_, double rho_min_)
    : R_max(R_max_), n_rho(n_rho_), n_theta(n_theta_) {
    if (n_rho < 4 || n_theta < 4) throw DomainError("grid needs n_rho, n_theta >= 4");
    if (n_theta % 2 != 0) throw DomainError("n_theta must be even");
    if (!(R_max > 0.0)) throw DomainError("R_max must be positive");
    if (rho_min_ > 0.0) {
        if (rho_min_ >= R_max) throw DomainError("rho_min must lie in (0, R_max)");
        rho_min = rho_min_;
        h_rho = (R_max - rho_min) / (n_rho - 1);
    } else {
        // rho_min = h/2 puts the innermost cell face exactly at the pole.
        h_rho = R_max / (n_rho - 0.5);
        rho_min = 0.5 * h_rho;
    }
    h_theta = kTwoPi / n_theta;
}

HPoint DiskGrid::point(int i, int j) const {
    const double rad = std::tanh(0.5 * rho(i));
    return HPoint(rad * std::cos(theta(j)), rad * std::sin(theta(j)));
}

// ---------------------------------------------------------------------------
// Discrete operator

namespace {

// The stencil works in extended precision: the pole ring divides angular
// flux differences by sinh^2(h/2), which amplifies double roundoff to just
// about the 1e-10 convergence tolerance at desk-scale grids.
struct Stencil {
    const DiskGrid& g;
    std::vector<long double> sinh_node;
    std::vector<long double> sinh_face; // face i+1/2; the face below ring 0 is at rho=0

    explicit Stencil(const DiskGrid& grid) : g(grid) {
        sinh_node.resize(g.n_rho);
        sinh_face.resize(g.n_rho);
        for (int i = 0; i < g.n_rho; ++i) {
            sinh_node[i] = std::sinh(static_cast<long double>(g.rho(i)));
            sinh_face[i] = std::sinh(static_cast<long double>(g.rho_face(i)));
        }
    }

    int jw(int j) const { return (j + g.n_theta) % g.n_theta; }

    // Radial flux through face (i+1/2, j), premultiplied by sinh(rho_face).
    // wsrc supplies the field used inside W (equals u except in Picard steps).
    template <class Vec>
    long double radial_flux(const Vec& u, const Vec& wsrc, int i, int j) const {
        const long double h = g.h_rho;
        const long double ur = (static_cast<long double>(u[g.index(i + 1, j)]) -
                                u[g.index(i, j)]) /
                               h;
        auto ut_at = [&](int ii) {
            return (static_cast<long double>(wsrc[g.index(ii, jw(j + 1))]) -
                    wsrc[g.index(ii, jw(j - 1))]) /
                   (2.0L * g.h_theta);
        };
        const long double ut = 0.5L * (ut_at(i) + ut_at(i + 1));
        const long double wr = (static_cast<long double>(wsrc[g.index(i + 1, j)]) -
                                wsrc[g.index(i, j)]) /
                               h;
        const long double ang = ut / sinh_face[i];
        const long double W = std::sqrt(1.0L + wr * wr + ang * ang);
        return sinh_face[i] * ur / W;
    }

    // Angular flux through face (i, j+1/2): u_theta / (sinh(rho) W).
    template <class Vec>
    long double angular_flux(const Vec& u, const Vec& wsrc, int i, int j) const {
        const long double ut = (static_cast<long double>(u[g.index(i, jw(j + 1))]) -
                                u[g.index(i, j)]) /
                               static_cast<long double>(g.h_theta);
        auto ur_at = [&](int jj) {
            if (i == 0)
                return (static_cast<long double>(wsrc[g.index(1, jj)]) -
                        wsrc[g.index(0, jj)]) /
                       static_cast<long double>(g.h_rho);
            return (static_cast<long double>(wsrc[g.index(i + 1, jj)]) -
                    wsrc[g.index(i - 1, jj)]) /
                   (2.0L * g.h_rho);
        };
        const long double ur = 0.5L * (ur_at(j) + ur_at(jw(j + 1)));
        const long double wt = (static_cast<long double>(wsrc[g.index(i, jw(j + 1))]) -
                                wsrc[g.index(i, j)]) /
                               static_cast<long double>(g.h_theta);
        const long double ang = wt / sinh_node[i];
        const long double W = std::sqrt(1.0L + ur * ur + ang * ang);
        return ut / (sinh_node[i] * W);
    }

    template <class Vec>
    double residual_at(const Vec& u, const Vec& wsrc, int i, int j, double twoH) const {
        const long double fp = radial_flux(u, wsrc, i, j);
        const long double fm = i == 0 ? 0.0L : radial_flux(u, wsrc, i - 1, j);
        const long double gp = angular_flux(u, wsrc, i, j);
        const long double gm = angular_flux(u, wsrc, i, jw(j - 1));
        return static_cast<double>((fp - fm) / (sinh_node[i] * g.h_rho) +
                                   (gp - gm) / (sinh_node[i] * g.h_theta) - twoH);
    }
};

std::vector<double> cap_rings(const DiskGrid& g, MeanCurvatureH H) {
    RotationalProfile cap(H, 0.0);
    std::vector<double> out(g.n_rho);
    for (int i = 0; i < g.n_rho; ++i) out[i] = cap.cap(g.rho(i));
    return out;
}

// Radial restriction of the same conservative scheme: the discrete cap.
// Theta-independent data reduces the 2-D problem to this 1-D one exactly,
// so it is the right baseline for solver-level identities.
std::vector<double> discrete_radial_cap(const DiskGrid& g, MeanCurvatureH H) {
    const int n = g.n_rho;
    const double twoH = 2.0 * H.value();
    std::vector<double> sn(n), sf(n);
    for (int i = 0; i < n; ++i) {
        sn[i] = std::sinh(g.rho(i));
        sf[i] = std::sinh(g.rho_face(i));
    }
    std::vector<double> v = cap_rings(g, H); // init and Dirichlet value at i = n-1

    auto flux = [&](const std::vector<double>& u, int i) {
        const double d = (u[i + 1] - u[i]) / g.h_rho;
        return sf[i] * d / std::sqrt(1.0 + d * d);
    };
    auto residual = [&](const std::vector<double>& u, int i) {
        const double fp = flux(u, i);
        const double fm = i == 0 ? 0.0 : flux(u, i - 1);
        return (fp - fm) / (sn[i] * g.h_rho) - twoH;
    };

    std::vector<double> lower(n), diag(n), upper(n), rhs(n);
    for (int it = 0; it < 60; ++it) {
        double rnorm = 0.0;
        for (int i = 0; i < n - 1; ++i) {
            const double base = residual(v, i);
            rhs[i] = -base;
            rnorm = std::max(rnorm, std::abs(base));
            for (int di = -1; di <= 1; ++di) {
                const int ii = i + di;
                if (ii < 0 || ii >= n - 1) continue;
                const double delta = 1e-7 * std::max(1.0, std::abs(v[ii]));
                const double keep = v[ii];
                v[ii] = keep + delta;
                const double d = (residual(v, i) - base) / delta;
                v[ii] = keep;
                (di < 0 ? lower[i] : di > 0 ? upper[i] : diag[i]) = d;
            }
        }
        if (rnorm <= 1e-13) break;
        // Thomas sweep on the interior tridiagonal block
        std::vector<double> cp(n), dp(n);
        cp[0] = upper[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (int i = 1; i < n - 1; ++i) {
            const double m = diag[i] - lower[i] * cp[i - 1];
            cp[i] = upper[i] / m;
            dp[i] = (rhs[i] - lower[i] * dp[i - 1]) / m;
        }
        std::vector<double> dx(n, 0.0);
        dx[n - 2] = dp[n - 2];
        for (int i = n - 3; i >= 0; --i) dx[i] = dp[i] - cp[i] * dx[i + 1];
        for (int i = 0; i < n - 1; ++i) v[i] += dx[i];
    }
    return v;
}

} // namespace

std::vector<double> discrete_QH(const DiskGrid& grid, const std::vector<double>& u,
                                MeanCurvatureH H) {
    if ((int)u.size() != grid.size()) throw DomainError("u has the wrong grid size");
    const Stencil st(grid);
    const double twoH = 2.0 * H.value();
    std::vector<double> res(grid.size(), 0.0);
    for (int i = 0; i < grid.n_rho - 1; ++i)
        for (int j = 0; j < grid.n_theta; ++j)
            res[grid.index(i, j)] = st.residual_at(u, u, i, j, twoH);
    return res;
}

// ---------------------------------------------------------------------------
// Newton solver

namespace {

struct LinearizedSystem {
    Eigen::SparseMatrix<double> J;
    Eigen::VectorXd rhs;
};

// FD Jacobian over the 9-point box. frozen_w keeps W coefficients at the
// base iterate (Picard step); otherwise the full Newton matrix is built.
LinearizedSystem assemble(const DiskGrid& g, const Stencil& st,
                          const std::vector<long double>& u, double twoH, bool frozen_w) {
    const int ni = g.n_rho - 1; // interior rings
    const int N = ni * g.n_theta;
    auto row_of = [&](int i, int j) { return i * g.n_theta + j; };

    Eigen::VectorXd rhs(N);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(N) * 10);

    std::vector<long double> up = u; // perturbation buffer

    for (int i = 0; i < ni; ++i) {
        for (int j = 0; j < g.n_theta; ++j) {
            const double base = st.residual_at(u, u, i, j, twoH);
            rhs(row_of(i, j)) = -base;
            for (int di = -1; di <= 1; ++di) {
                const int ii = i + di;
                if (ii < 0 || ii >= ni) continue; // Dirichlet ring is data
                for (int dj = -1; dj <= 1; ++dj) {
                    const int jj = st.jw(j + dj);
                    const int col = g.index(ii, jj);
                    const double delta =
                        1e-7 * std::max(1.0, std::abs(static_cast<double>(u[col])));
                    up[col] = u[col] + delta;
                    const double pert =
                        frozen_w ? st.residual_at(up, u, i, j, twoH)
                                 : st.residual_at(up, up, i, j, twoH);
                    up[col] = u[col];
                    const double d = (pert - base) / delta;
                    if (d != 0.0) trips.emplace_back(row_of(i, j), row_of(ii, jj), d);
                }
            }
        }
    }
    LinearizedSystem sys;
    sys.J.resize(N, N);
    sys.J.setFromTriplets(trips.begin(), trips.end());
    sys.rhs = std::move(rhs);
    return sys;
}

Eigen::VectorXd solve_linear(LinearizedSystem& sys, bool verbose) {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> it;
    it.preconditioner().setFillfactor(10);
    it.preconditioner().setDroptol(1e-5);
    it.setTolerance(1e-13);
    it.setMaxIterations(4000);
    it.compute(sys.J);
    Eigen::VectorXd d = it.solve(sys.rhs);
    if (verbose)
        std::fprintf(stderr, "  bicgstab: info=%d iters=%d err=%.3e\n", (int)it.info(),
                     (int)it.iterations(), it.error());
    if (it.info() == Eigen::Success && d.allFinite()) return d;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(sys.J);
    if (lu.info() != Eigen::Success) throw NonConvergenceError("linear solve failed");
    if (verbose) std::fprintf(stderr, "  sparse LU fallback engaged\n");
    return lu.solve(sys.rhs);
}

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

Solution solve(const DiskGrid& grid, MeanCurvatureH H, const AsymptoticData& data,
               const SolveOptions& opts) {
    H.require_below_half("solve");
    const Stencil st(grid);
    const double twoH = 2.0 * H.value();
    const std::vector<double> cap = cap_rings(grid, H);

    // The iterate is held in extended precision: one double ulp of u at the
    // pole ring already moves the pointwise residual by ~1e-9 at desk-scale
    // grids, which would put the 1e-10 tolerance out of reach.
    std::vector<long double> u(grid.size());
    if (!opts.initial_guess.empty()) {
        if ((int)opts.initial_guess.size() != grid.size())
            throw DomainError("initial guess has the wrong grid size");
        for (int k = 0; k < grid.size(); ++k) u[k] = opts.initial_guess[k];
    } else {
        double mean = 0.0;
        for (int j = 0; j < grid.n_theta; ++j) mean += data(grid.theta(j));
        mean /= grid.n_theta;
        for (int i = 0; i < grid.n_rho; ++i)
            for (int j = 0; j < grid.n_theta; ++j) u[grid.index(i, j)] = cap[i] + mean;
    }
    for (int j = 0; j < grid.n_theta; ++j)
        u[grid.index(grid.n_rho - 1, j)] =
            static_cast<long double>(cap[grid.n_rho - 1]) + data(grid.theta(j));

    const int ni = grid.n_rho - 1;
    auto residual_vec = [&](const std::vector<long double>& v) {
        std::vector<double> r(static_cast<std::size_t>(ni) * grid.n_theta);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < grid.n_theta; ++j)
                r[i * grid.n_theta + j] = st.residual_at(v, v, i, j, twoH);
        return r;
    };

    std::vector<double> r = residual_vec(u);
    double rnorm = inf_norm(r);
    int iter = 0;
    bool polished = false;
    std::string history = std::to_string(rnorm);

    while (iter < opts.max_iters) {
        if (rnorm <= opts.tolerance) {
            if (polished) break;
            polished = true; // one extra step sharpens algebraic identities
        }
        // Saturated flux regions (|grad u| large) make the full Newton matrix
        // nearly singular; a frozen-coefficient direction always descends, so
        // it backs up the line search.
        auto try_direction = [&](bool frozen_w, double& achieved) {
            LinearizedSystem sys = assemble(grid, st, u, twoH, frozen_w);
            Eigen::VectorXd d = solve_linear(sys, opts.verbose);
            const double dmax = d.cwiseAbs().maxCoeff();
            if (dmax > 10.0) d *= 10.0 / dmax; // trust cap for wild directions
            double alpha = 1.0;
            std::vector<long double> candidate = u;
            for (int ls = 0; ls < 12; ++ls) {
                for (int i = 0; i < ni; ++i)
                    for (int j = 0; j < grid.n_theta; ++j)
                        candidate[grid.index(i, j)] =
                            u[grid.index(i, j)] +
                            static_cast<long double>(alpha) * d(i * grid.n_theta + j);
                const std::vector<double> rc = residual_vec(candidate);
                achieved = inf_norm(rc);
                if (achieved < rnorm || rnorm <= opts.tolerance) {
                    u = candidate;
                    r = rc;
                    return true;
                }
                alpha *= 0.5;
            }
            return false;
        };

        double new_norm = rnorm;
        bool ok = try_direction(iter < opts.picard_iters, new_norm);
        if (!ok && rnorm > opts.tolerance) ok = try_direction(true, new_norm);
        ++iter;
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, " -> %.3e", new_norm);
            history += buf;
        }
        if (opts.verbose) std::fprintf(stderr, "newton %d: %.6e\n", iter, new_norm);
        if (!ok && rnorm > opts.tolerance)
            throw NonConvergenceError("Newton stalled after " + std::to_string(iter) +
                                      " iterations; residual history " + history);
        rnorm = new_norm;
    }

    if (rnorm > opts.tolerance) {
        throw NonConvergenceError("no convergence after " + std::to_string(iter) +
                                  " iterations, residual " + std::to_string(rnorm));
    }
    std::vector<double> out(grid.size());
    for (int k = 0; k < grid.size(); ++k) out[k] = static_cast<double>(u[k]);
    return Solution{grid, std::move(out), rnorm, iter};
}

std::vector<double> asymptotic_trace(const Solution& sol, MeanCurvatureH H, double rho_star) {
    const DiskGrid& g = sol.grid;
    if (rho_star > g.R_max - 1.0 + 1e-12)
        throw DomainError("rho_star must be at most R_max - 1");
    if (rho_star < g.rho_min) throw DomainError("rho_star below the innermost ring");
    const double x = (rho_star - g.rho_min) / g.h_rho;
    const int i0 = std::min((int)x, g.n_rho - 2);
    const double w = x - i0;
    // Offsets are measured against the discrete cap on the same grid, so
    // constant boundary data yields a constant trace to solver tolerance.
    const std::vector<double> cap = discrete_radial_cap(g, H);
    const double cap_star = (1.0 - w) * cap[i0] + w * cap[i0 + 1];
    std::vector<double> out(g.n_theta);
    for (int j = 0; j < g.n_theta; ++j)
        out[j] = (1.0 - w) * sol.u[g.index(i0, j)] + w * sol.u[g.index(i0 + 1, j)] - cap_star;
    return out;
}

// ---------------------------------------------------------------------------
// Barriers

Barrier Barrier::shifted(double delta) const {
    Barrier b = *this;
    auto base = evaluator;
    b.evaluator = [base, delta](const HPoint& p) { return base(p) + delta; };
    return b;
}

namespace {

double cap_at(MeanCurvatureH H, const HPoint& center, const HPoint& x) {
    return RotationalProfile(H, 0.0).cap(dist(center, x));
}

} // namespace

Barrier lower_barrier(MeanCurvatureH H, IdealPoint anchor, double C,
                      const BarrierRegions& regions) {
    H.require_below_half("lower_barrier");
    if (!(C > 0.0)) throw ConfigError("barrier height C must be positive");
    const double w = regions.wedge_halfwidth;
    if (!(w > 0.0 && w < 0.5 * kPi)) throw ConfigError("wedge halfwidth out of range");

    const Geodesic wedge(IdealPoint(anchor.theta - w), IdealPoint(anchor.theta + w), anchor);
    auto hund = std::make_shared<HyperbolicProfile>(H, 1.0);
    auto frame = std::make_shared<GeodesicFrame>(wedge);
    const double edge = hund->domain_edge();

    RotationalProfile capp(H, 0.0);
    // Asymptotic matching constant: limit of cap - hund along the ray from
    // the cap center toward the anchor. That ray crosses the wedge geodesic
    // orthogonally at distance d0, so its signed distance is exactly t - d0.
    const double d0 = dist(HPoint(), frame->origin());
    const double t_far = 28.0;
    auto deficit_at = [&](double t) { return capp.cap(t) - hund->phi(t - d0); };
    const double t_star = deficit_at(t_far);

    // Ordering check: the wedge graph must stay below the cap.
    for (double t : {2.0, 4.0, 8.0, 14.0, 20.0, 26.0}) {
        if (deficit_at(t) < t_star - 1e-9)
            throw ConfigError("lower barrier ordering fails along the anchor ray");
    }
    for (double tau : {-6.0, -3.0, 0.0, 3.0, 6.0}) {
        for (double s : {edge + 0.3, edge + 1.0, edge + 3.0, edge + 6.0}) {
            const HPoint p = frame->fermi_point(tau, s);
            const double gap = cap_at(H, HPoint(), p) - (hund->phi(s) + t_star);
            if (gap < -1e-9) throw ConfigError("lower barrier pokes above the cap");
        }
    }

    Barrier b;
    b.kind = Barrier::Kind::Lower;
    b.anchor = anchor;
    b.C = C;
    const double t = -C;
    auto wedge_value = [hund, frame, t_star](const HPoint& x) {
        const std::complex<double> wz = frame->to_normalized(x.z());
        const double s = frame->sign() * std::asinh(2.0 * wz.imag() / (1.0 - std::norm(wz)));
        if (s <= hund->domain_edge() + 1e-9)
            return -std::numeric_limits<double>::infinity();
        return hund->phi(s) + t_star;
    };
    b.evaluator = [H, t, wedge_value](const HPoint& x) {
        return std::max(cap_at(H, HPoint(), x) + t, wedge_value(x));
    };
    b.active_branch = [H, t, wedge_value](const HPoint& x) {
        return wedge_value(x) > cap_at(H, HPoint(), x) + t ? 1 : 0;
    };
    return b;
}

Barrier upper_barrier(MeanCurvatureH H, IdealPoint anchor, double C,
                      const BarrierRegions& regions) {
    H.require_below_half("upper_barrier");
    if (!(C > 0.0)) throw ConfigError("barrier height C must be positive");
    const double d = regions.cap_offset;
    if (!(d > 0.0)) throw ConfigError("cap offset must be positive");

    const HPoint p = geodesic_ray(HPoint(), anchor, d);
    RotationalProfile capp(H, 0.0);
    const double t_far = 28.0;
    // cap(tau) - cap(tau - d) increases to l_H d; matching at t_far keeps the
    // translated cap above the origin cap up to roundoff.
    const double t_star = capp.cap(t_far) - capp.cap(t_far - d);

    for (double tau : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const HPoint q = geodesic_ray(HPoint(), anchor, tau);
        if (cap_at(H, p, q) + t_star - cap_at(H, HPoint(), q) < -1e-9)
            throw ConfigError("upper barrier dips below the cap along the anchor ray");
    }

    Barrier b;
    b.kind = Barrier::Kind::Upper;
    b.anchor = anchor;
    b.C = C;
    const double t = C;
    b.evaluator = [H, p, t, t_star](const HPoint& x) {
        return std::min(cap_at(H, p, x) + t_star, cap_at(H, HPoint(), x) + t);
    };
    b.active_branch = [H, p, t, t_star](const HPoint& x) {
        return cap_at(H, p, x) + t_star < cap_at(H, HPoint(), x) + t ? 1 : 0;
    };
    return b;
}

SandwichReport check_sandwich(const Solution& sol, const Barrier& lower, const Barrier& upper) {
    const DiskGrid& g = sol.grid;
    SandwichReport rep;
    const double slack = 1e-9;
    for (int i = 0; i < g.n_rho; ++i) {
        for (int j = 0; j < g.n_theta; ++j) {
            const HPoint x = g.point(i, j);
            const double u = sol.u[g.index(i, j)];
            const double lo = lower.evaluator(x);
            const double hi = upper.evaluator(x);
            if (lo - u > slack) {
                ++rep.lower_violations;
                rep.max_lower_violation = std::max(rep.max_lower_violation, lo - u);
            }
            if (u - hi > slack) {
                ++rep.upper_violations;
                rep.max_upper_violation = std::max(rep.max_upper_violation, u - hi);
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Run configuration

RunConfig run_config_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunConfig cfg;
    cfg.H = j.value("H", 0.25);
    cfg.R_max = j.value("R_max", 8.0);
    cfg.n_rho = j.value("n_rho", 256);
    cfg.n_theta = j.value("n_theta", 256);
    cfg.tolerance = j.value("tolerance", 1e-10);
    cfg.max_iters = j.value("max_iters", 30);
    if (j.contains("phi")) {
        const auto& jp = j.at("phi");
        const std::string type = jp.at("type").get<std::string>();
        if (type == "constant") {
            cfg.phi = AsymptoticData::constant(jp.value("value", 0.0));
        } else if (type == "fourier") {
            cfg.phi = AsymptoticData::fourier(
                jp.value("a0", 0.0), jp.value("cos", std::vector<double>{}),
                jp.value("sin", std::vector<double>{}));
        } else if (type == "samples") {
            cfg.phi = AsymptoticData::samples(jp.at("theta").get<std::vector<double>>(),
                                              jp.at("values").get<std::vector<double>>());
        } else {
            throw DomainError("unknown phi type: " + type);
        }
    }
    return cfg;
}

std::string convergence_report_json(const Solution& sol, bool converged) {
    nlohmann::json j;
    j["converged"] = converged;
    j["iterations"] = sol.iterations;
    j["residual_norm"] = sol.residual_norm;
    j["n_rho"] = sol.grid.n_rho;
    j["n_theta"] = sol.grid.n_theta;
    j["R_max"] = sol.grid.R_max;
    return j.dump(2);
}

} // namespace hcmc
