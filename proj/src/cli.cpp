#include "hcmc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcmc/boundary.hpp"
#include "hcmc/dirichlet.hpp"
#include "hcmc/geometry.hpp"
#include "hcmc/profiles.hpp"
#include "hcmc/surfaces.hpp"
#include "hcmc/version.hpp"

namespace hcmc {

namespace {

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct SurfaceFlags {
    std::string family;
    double H = 0.25;
    double r = 1.0;
    double C = 2.0;
    bool reflected = false;

    void attach(CLI::App* cmd, bool with_reflect = true) {
        cmd->add_option("--family", family, "und | cap | hyper | horo")->required();
        cmd->add_option("--H", H, "mean curvature in [0, 1/2)")->required();
        cmd->add_option("--r", r, "waist radius (und)");
        cmd->add_option("--C", C, "integration constant (hyper)");
        if (with_reflect) cmd->add_flag("--reflected", reflected, "glue the mirror sheet");
    }

    InvariantSurface build() const {
        MeanCurvatureH h(H);
        InvariantSurface s = [&] {
            if (family == "und") return InvariantSurface::unduloid(h, r);
            if (family == "cap") return InvariantSurface::cap(h);
            if (family == "hyper") return InvariantSurface::hyperbolic_graph(h, C);
            if (family == "horo") return InvariantSurface::parabolic_graph(h);
            throw DomainError("unknown family: " + family);
        }();
        return reflected ? alexandrov_reflect(s) : s;
    }
};

std::ostream& open_sink(const std::string& path, std::ofstream& file, std::ostream& fallback) {
    if (path.empty()) return fallback;
    file.open(path);
    if (!file) throw DomainError("cannot open output file: " + path);
    return file;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------------------

void run_profile(const std::string& family, double Hv, double r, double C, double s_max, int n,
                 std::ostream& out) {
    MeanCurvatureH H(Hv);
    std::function<double(double)> phi, dphi;
    double s_lo = 0.0;
    std::ostringstream params;
    if (family == "und") {
        auto p = std::make_shared<RotationalProfile>(H, r);
        if (!(r > 0.0)) throw DomainError("und requires --r > 0");
        phi = [p](double s) { return p->und(s); };
        dphi = [p](double s) { return p->und_deriv(s); };
        params << " r=" << fmt(r);
    } else if (family == "cap") {
        auto p = std::make_shared<RotationalProfile>(H, 0.0);
        phi = [p](double s) { return p->cap(s); };
        dphi = [p](double s) { return p->cap_deriv(s); };
    } else if (family == "hyper") {
        auto p = std::make_shared<HyperbolicProfile>(H, C);
        s_lo = p->M_C_is_finite()
                   ? (p->edge_attained() ? p->M_C() : p->M_C() + 1e-3)
                   : p->anchor() - s_max;
        phi = [p](double s) { return p->phi(s); };
        dphi = [p](double s) { return p->phi_deriv(s); };
        params << " C=" << fmt(C);
    } else if (family == "horo") {
        auto p = std::make_shared<ParabolicProfile>(H);
        phi = [p](double s) { return p->horo_closed(s); };
        dphi = [p](double s) { return p->horo_deriv(s); };
    } else {
        throw DomainError("unknown family: " + family);
    }
    if (n < 2) throw DomainError("--n must be at least 2");
    const double lh = lH(H).value;
    out << "# " << kToolName << ' ' << kVersion << " profile family=" << family
        << " H=" << fmt(Hv) << params.str() << " lH=" << fmt(lh) << "\n";
    out << "s,phi,dphi\n";
    const double hi = family == "hyper" ? s_lo + s_max : s_max;
    for (int k = 0; k < n; ++k) {
        const double s = s_lo + (hi - s_lo) * k / (n - 1);
        out << fmt(s) << ',' << fmt(phi(s)) << ',' << fmt(dphi(s)) << "\n";
    }
}

int run_verify(std::ostream& out);

} // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariant CMC-H surfaces in H^2 x R: profiles, boundaries, Dirichlet solver"};
    app.require_subcommand(1);

    // profile
    auto* cprof = app.add_subcommand("profile", "tabulate a profile function as CSV");
    std::string family;
    double Hv = 0.0, rv = 1.0, Cv = 2.0, s_max = 5.0;
    int n = 50;
    std::string out_path;
    cprof->add_option("--family", family)->required();
    cprof->add_option("--H", Hv)->required();
    cprof->add_option("--r", rv);
    cprof->add_option("--C", Cv);
    cprof->add_option("--s-max", s_max);
    cprof->add_option("--n", n);
    cprof->add_option("--out", out_path);

    // mesh
    auto* cmesh = app.add_subcommand("mesh", "sample a surface mesh (OBJ or CSV)");
    SurfaceFlags mesh_flags;
    mesh_flags.attach(cmesh);
    int n_level = 48, n_s = 24;
    double s_span = 4.0;
    std::string mesh_format = "obj", mesh_out;
    cmesh->add_option("--n-level", n_level);
    cmesh->add_option("--n-s", n_s);
    cmesh->add_option("--s-span", s_span);
    cmesh->add_option("--format", mesh_format)->check(CLI::IsMember({"obj", "csv"}));
    cmesh->add_option("--out", mesh_out);

    // classify
    auto* cclass = app.add_subcommand("classify", "classify a boundary curve file");
    std::string curve_path;
    double classify_H = -1.0;
    cclass->add_option("--curve", curve_path)->required();
    cclass->add_option("--H", classify_H, "resolve symbolic heights against this H");

    // boundary
    auto* cbound = app.add_subcommand("boundary", "symbolic geodesic boundary of a surface");
    SurfaceFlags bound_flags;
    bool cylinder = false;
    cbound->add_option("--family", bound_flags.family, "und | cap | hyper | horo");
    cbound->add_option("--H", bound_flags.H);
    cbound->add_option("--r", bound_flags.r);
    cbound->add_option("--C", bound_flags.C);
    cbound->add_flag("--reflected", bound_flags.reflected);
    cbound->add_flag("--cylinder", cylinder, "equidistant cylinder instead of a graph");

    // probe
    auto* cprobe = app.add_subcommand("probe", "estimate the Weyl-chamber slope interval");
    SurfaceFlags probe_flags;
    probe_flags.attach(cprobe);
    double q_angle = 0.0, t_max = 30.0;
    cprobe->add_option("--q", q_angle, "ideal direction (radians)")->required();
    cprobe->add_option("--t-max", t_max);

    // solve
    auto* csolve = app.add_subcommand("solve", "asymptotic Dirichlet run from a config file");
    std::string config_path, grid_out, trace_out;
    double rho_star = -1.0;
    csolve->add_option("--config", config_path)->required();
    csolve->add_option("--out-grid", grid_out);
    csolve->add_option("--out-trace", trace_out);
    csolve->add_option("--rho-star", rho_star, "trace radius (default R_max - 1)");

    // verify
    auto* cverify = app.add_subcommand("verify", "run the invariant suite");

    std::vector<const char*> argv;
    argv.push_back(kToolName);
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse((int)argv.size(), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cprof->parsed()) {
            std::ofstream f;
            run_profile(family, Hv, rv, Cv, s_max, n, open_sink(out_path, f, out));
            return 0;
        }
        if (cmesh->parsed()) {
            InvariantSurface surf = mesh_flags.build();
            MeshOptions opts;
            opts.n_level = n_level;
            opts.n_s = n_s;
            opts.s_span = s_span;
            const SurfaceMesh mesh = sample_mesh(surf, opts);
            std::ofstream f;
            std::ostream& sink = open_sink(mesh_out, f, out);
            std::ostringstream note;
            note << kToolName << ' ' << kVersion << " mesh " << mesh.descriptor;
            if (mesh_format == "obj")
                write_obj(mesh, sink);
            else
                write_mesh_csv(mesh, sink, note.str());
            return 0;
        }
        if (cclass->parsed()) {
            std::optional<double> file_H;
            const BoundarySet set = curve_from_json(read_file(curve_path), &file_H);
            std::optional<MeanCurvatureH> H;
            if (classify_H >= 0.0)
                H = MeanCurvatureH(classify_H);
            else if (file_H)
                H = MeanCurvatureH(*file_H);
            if (!set.is_curve) {
                nlohmann::json j;
                j["admissible"] = false;
                j["type"] = nullptr;
                j["violations"] = {{{"component", -1},
                                    {"segment", -1},
                                    {"rule", "not a curve: " + set.note}}};
                out << j.dump(2) << "\n";
                return 0;
            }
            const Verdict v = classify(set.curve, H);
            out << verdict_to_json(v) << "\n";
            return 0;
        }
        if (cbound->parsed()) {
            BoundarySet set;
            if (cylinder) {
                const Geodesic g(IdealPoint(std::numbers::pi), IdealPoint(0.0),
                                 IdealPoint(0.5 * std::numbers::pi));
                set = cylinder_boundary(g);
            } else {
                if (bound_flags.family.empty())
                    throw DomainError("boundary needs --family or --cylinder");
                set = boundary_of(bound_flags.build());
            }
            out << curve_to_json(set, bound_flags.H) << "\n";
            return 0;
        }
        if (cprobe->parsed()) {
            InvariantSurface surf = probe_flags.build();
            const auto [lo, hi] = estimate_weyl_interval(surf, IdealPoint(q_angle), t_max);
            nlohmann::json j;
            j["q"] = q_angle;
            j["m_lo"] = lo;
            j["m_hi"] = hi;
            out << j.dump(2) << "\n";
            return 0;
        }
        if (csolve->parsed()) {
            const RunConfig cfg = run_config_from_json(read_file(config_path));
            const DiskGrid grid(cfg.R_max, cfg.n_rho, cfg.n_theta);
            SolveOptions opts;
            opts.tolerance = cfg.tolerance;
            opts.max_iters = cfg.max_iters;
            const Solution sol = solve(grid, MeanCurvatureH(cfg.H), cfg.phi, opts);
            if (!grid_out.empty()) {
                std::ofstream f(grid_out);
                if (!f) throw DomainError("cannot open " + grid_out);
                f << "# " << kToolName << ' ' << kVersion << " solve H=" << fmt(cfg.H)
                  << " R_max=" << fmt(cfg.R_max) << " n_rho=" << cfg.n_rho
                  << " n_theta=" << cfg.n_theta << "\n";
                f << "rho,theta,u\n";
                for (int i = 0; i < grid.n_rho; ++i)
                    for (int j = 0; j < grid.n_theta; ++j)
                        f << fmt(grid.rho(i)) << ',' << fmt(grid.theta(j)) << ','
                          << fmt(sol.u[grid.index(i, j)]) << "\n";
            }
            if (!trace_out.empty()) {
                const double rs = rho_star > 0.0 ? rho_star : cfg.R_max - 1.0;
                const auto trace = asymptotic_trace(sol, MeanCurvatureH(cfg.H), rs);
                std::ofstream f(trace_out);
                if (!f) throw DomainError("cannot open " + trace_out);
                f << "# " << kToolName << ' ' << kVersion << " trace H=" << fmt(cfg.H)
                  << " rho_star=" << fmt(rs) << "\n";
                f << "theta,trace\n";
                for (int j = 0; j < grid.n_theta; ++j)
                    f << fmt(grid.theta(j)) << ',' << fmt(trace[j]) << "\n";
            }
            out << convergence_report_json(sol, true) << "\n";
            return 0;
        }
        if (cverify->parsed()) return run_verify(out);
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed input document: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify verb

namespace {

int run_verify(std::ostream& out) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        out << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    // slope constant
    {
        MeanCurvatureH h(0.3);
        const double v = lH(h).value;
        check("lH closed form", std::abs(v - 0.75) < 1e-12 && lH(MeanCurvatureH(0.5)).is_infinite());
    }

    // distance Laplacian identities
    {
        bool ok = true;
        const HCircle circ(HPoint(), 0.7);
        const Horocycle horo{IdealPoint(0.0), 0.0};
        const Geodesic geo(IdealPoint(std::numbers::pi), IdealPoint(0.0),
                           IdealPoint(0.5 * std::numbers::pi));
        const HPoint pts[] = {HPoint(0.55, 0.3), HPoint(-0.4, 0.45), HPoint(0.1, -0.62)};
        for (const auto& x : pts) {
            const double s1 = dist_to_circle(x, circ);
            ok &= std::abs(laplacian_fd([&](const HPoint& p) { return dist_to_circle(p, circ); },
                                        x) -
                           1.0 / std::tanh(circ.radius + s1)) < 1e-4;
            const double s3 = signed_dist_to_geodesic(x, geo);
            ok &= std::abs(
                      laplacian_fd(
                          [&](const HPoint& p) { return signed_dist_to_geodesic(p, geo); }, x) -
                      std::tanh(s3)) < 1e-4;
        }
        const HPoint far(0.9, 0.0);
        ok &= std::abs(laplacian_fd(
                           [&](const HPoint& p) { return dist_to_horocycle(p, horo); },
                           HPoint(-0.5, 0.2)) -
                       1.0) < 1e-4;
        (void)far;
        check("distance Laplacians", ok);
    }

    // profile ODE residuals
    {
        bool ok = true;
        auto ode = [&](const InvariantSurface& s, double s0) {
            const double h = 1e-5;
            const double dF = (s.flux(s0 + h) - s.flux(s0 - h)) / (2.0 * h);
            return std::abs(dF + s.flux(s0) * s.laplacian_s(s0) - 2.0 * s.H().value());
        };
        for (double H : {0.0, 0.25, 0.4}) {
            MeanCurvatureH h(H);
            ok &= ode(InvariantSurface::unduloid(h, 0.8), 1.3) < 1e-6;
            ok &= ode(InvariantSurface::cap(h), 2.1) < 1e-6;
            ok &= ode(InvariantSurface::hyperbolic_graph(h, 1.7),
                      HyperbolicProfile(h, 1.7).M_C() + 1.1) < 1e-6;
            ok &= ode(InvariantSurface::parabolic_graph(h), 0.9) < 1e-6;
        }
        check("profile ODE residuals", ok);
    }

    // asymptotic slopes
    {
        bool ok = true;
        for (double H : {0.1, 0.25, 0.4}) {
            MeanCurvatureH h(H);
            const double lh = lH(h).value;
            ok &= std::abs(RotationalProfile(h, 0.5).und_deriv(30.0) - lh) < 1e-3;
            ok &= std::abs(RotationalProfile(h, 0.0).cap_deriv(30.0) - lh) < 1e-3;
            ok &= std::abs(HyperbolicProfile(h, 2.0).phi_deriv(30.0) - lh) < 1e-3;
            ok &= std::abs(HyperbolicProfile(h, 0.4).phi_deriv(30.0) - lh) < 1e-3;
            ok &= std::abs(ParabolicProfile(h).horo_deriv(30.0) - lh) < 1e-3;
        }
        check("asymptotic slopes at s=30", ok);
    }

    // closed forms
    {
        bool ok = true;
        for (double H : {0.1, 0.25, 0.4}) {
            MeanCurvatureH h(H);
            for (double C : {1.0, -1.0}) {
                HyperbolicProfile p(h, C);
                for (double ds : {0.4, 2.5}) {
                    const double s = p.anchor() + ds;
                    ok &= std::abs(p.phi(s) - p.phi_closed(s)) <
                          1e-8 * std::max(1.0, std::abs(p.phi_closed(s)));
                }
            }
            ParabolicProfile pp(h);
            for (double s : {0.7, 3.0})
                ok &= std::abs(pp.horo(s) - pp.horo_closed(s)) < 1e-8;
        }
        check("quadrature vs closed forms", ok);
    }

    // catalogue classification
    {
        bool ok = true;
        MeanCurvatureH h(0.25);
        auto type_of = [&](const InvariantSurface& s) {
            const BoundarySet b = boundary_of(s);
            const Verdict v = classify(b.curve, h);
            return v.admissible && v.curve_type ? *v.curve_type : CurveType::VI;
        };
        ok &= type_of(InvariantSurface::cap(h)) == CurveType::I;
        ok &= type_of(alexandrov_reflect(InvariantSurface::unduloid(h, 0.6))) == CurveType::VI;
        ok &= type_of(alexandrov_reflect(InvariantSurface::hyperbolic_graph(h, 2.0))) ==
              CurveType::III;
        ok &= type_of(InvariantSurface::hyperbolic_graph(h, 1.0)) == CurveType::IV;
        ok &= type_of(InvariantSurface::hyperbolic_graph(h, -1.0)) == CurveType::IV;
        ok &= !boundary_of(alexandrov_reflect(InvariantSurface::parabolic_graph(h))).is_curve;
        check("catalogue boundary classification", ok);
    }

    // CMC residual spot checks
    {
        bool ok = true;
        MeanCurvatureH h(0.25);
        const InvariantSurface und = InvariantSurface::unduloid(h, 0.8);
        ok &= std::abs(und.qh_residual(HPoint(0.75, 0.1))) < 1e-6;
        const InvariantSurface hyp = InvariantSurface::hyperbolic_graph(h, 2.0);
        ok &= std::abs(hyp.qh_residual(HPoint(0.0, 0.93))) < 1e-6;
        check("graph CMC residuals", ok);
    }

    // small Dirichlet run: symmetry and translation equivariance
    {
        const DiskGrid grid(6.0, 48, 32);
        MeanCurvatureH h(0.25);
        const Solution s0 = solve(grid, h, AsymptoticData::constant(0.0));
        const Solution s1 = solve(grid, h, AsymptoticData::constant(0.4));
        double dmax = 0.0, tvar = 0.0;
        for (int i = 0; i < grid.n_rho; ++i)
            for (int j = 0; j < grid.n_theta; ++j) {
                dmax = std::max(dmax, std::abs(s1.u[grid.index(i, j)] -
                                               s0.u[grid.index(i, j)] - 0.4));
                tvar = std::max(tvar, std::abs(s0.u[grid.index(i, j)] -
                                               s0.u[grid.index(i, 0)]));
            }
        check("Dirichlet translation equivariance", dmax < 1e-10);
        check("Dirichlet rotational symmetry", tvar < 1e-9);
    }

    out << (failures == 0 ? "all properties pass\n" : "failures detected\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

} // namespace hcmc
