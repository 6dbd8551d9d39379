#include "hcmc/surfaces.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

namespace hcmc {

namespace {
constexpr double kPi = std::numbers::pi;
}

InvariantSurface InvariantSurface::unduloid(MeanCurvatureH H, double r, HCircle base) {
    if (!(r > 0.0)) throw DomainError("unduloid requires r > 0");
    if (base.radius != r) throw DomainError("base circle radius must equal the waist radius");
    InvariantSurface s;
    s.kind_ = SurfaceKind::Rotational;
    s.H_ = H;
    s.rot_.emplace(H, r);
    s.circle_ = base;
    return s;
}

InvariantSurface InvariantSurface::cap(MeanCurvatureH H, HCircle base) {
    if (base.radius != 0.0) throw DomainError("cap base is a point (radius 0)");
    InvariantSurface s;
    s.kind_ = SurfaceKind::Rotational;
    s.H_ = H;
    s.rot_.emplace(H, 0.0);
    s.circle_ = base;
    return s;
}

InvariantSurface InvariantSurface::hyperbolic_graph(MeanCurvatureH H, double C, Geodesic base) {
    InvariantSurface s;
    s.kind_ = SurfaceKind::Hyperbolic;
    s.H_ = H;
    s.hyp_.emplace(H, C);
    s.geod_ = base;
    return s;
}

InvariantSurface InvariantSurface::parabolic_graph(MeanCurvatureH H, Horocycle base) {
    InvariantSurface s;
    s.kind_ = SurfaceKind::Parabolic;
    s.H_ = H;
    s.par_.emplace(H);
    s.horo_ = base;
    return s;
}

InvariantSurface InvariantSurface::unduloid(MeanCurvatureH H, double r) {
    return unduloid(H, r, HCircle(HPoint(), r));
}
InvariantSurface InvariantSurface::cap(MeanCurvatureH H) { return cap(H, HCircle(HPoint(), 0.0)); }
InvariantSurface InvariantSurface::hyperbolic_graph(MeanCurvatureH H, double C) {
    return hyperbolic_graph(H, C,
                            Geodesic(IdealPoint(kPi), IdealPoint(0.0), IdealPoint(0.5 * kPi)));
}
InvariantSurface InvariantSurface::parabolic_graph(MeanCurvatureH H) {
    return parabolic_graph(H, Horocycle{IdealPoint(0.0), 0.0});
}

MeanCurvatureH InvariantSurface::H() const { return H_; }

const RotationalProfile& InvariantSurface::rotational_profile() const {
    if (!rot_) throw DomainError("not a rotational surface");
    return *rot_;
}
const HyperbolicProfile& InvariantSurface::hyperbolic_profile() const {
    if (!hyp_) throw DomainError("not a hyperbolic surface");
    return *hyp_;
}
const ParabolicProfile& InvariantSurface::parabolic_profile() const {
    if (!par_) throw DomainError("not a parabolic surface");
    return *par_;
}
const HCircle& InvariantSurface::circle_base() const {
    if (!circle_) throw DomainError("no circle base");
    return *circle_;
}
const Geodesic& InvariantSurface::geodesic_base() const {
    if (!geod_) throw DomainError("no geodesic base");
    return *geod_;
}
const Horocycle& InvariantSurface::horocycle_base() const {
    if (!horo_) throw DomainError("no horocycle base");
    return *horo_;
}

double InvariantSurface::domain_edge() const {
    switch (kind_) {
        case SurfaceKind::Rotational:
        case SurfaceKind::Parabolic:
            return 0.0;
        case SurfaceKind::Hyperbolic:
            return hyp_->domain_edge();
    }
    return 0.0;
}

double InvariantSurface::s_at(const HPoint& x) const {
    switch (kind_) {
        case SurfaceKind::Rotational: {
            double s;
            try {
                s = dist_to_circle(x, *circle_);
            } catch (const InsideDomainError& e) {
                throw OutsideDomainError(e.what());
            }
            return s;
        }
        case SurfaceKind::Parabolic: {
            try {
                return dist_to_horocycle(x, *horo_);
            } catch (const InsideDomainError& e) {
                throw OutsideDomainError(e.what());
            }
        }
        case SurfaceKind::Hyperbolic: {
            const double s = signed_dist_to_geodesic(x, *geod_);
            const double edge = hyp_->domain_edge();
            if (hyp_->edge_attained()) {
                // the closed edge is part of the domain; absorb roundoff
                if (s >= edge) return s;
                if (edge - s < 1e-12) return edge;
                throw OutsideDomainError("point below the profile domain edge");
            }
            if (s <= edge) throw OutsideDomainError("point below the profile domain edge");
            return s;
        }
    }
    throw OutsideDomainError("unreachable");
}

double InvariantSurface::height(const HPoint& x) const {
    const double s = s_at(x);
    switch (kind_) {
        case SurfaceKind::Rotational:
            return rot_->phi(s);
        case SurfaceKind::Hyperbolic:
            return hyp_->phi(s);
        case SurfaceKind::Parabolic:
            return par_->phi(s);
    }
    return 0.0;
}

std::pair<double, double> InvariantSurface::heights(const HPoint& x) const {
    if (!reflected_) throw DomainError("heights() needs a reflected surface");
    const double h = height(x);
    return {h, -h};
}

double InvariantSurface::flux(double s) const {
    switch (kind_) {
        case SurfaceKind::Rotational:
            return rot_->flux(s);
        case SurfaceKind::Hyperbolic:
            return hyp_->flux(s);
        case SurfaceKind::Parabolic:
            return par_->flux(s);
    }
    return 0.0;
}

double InvariantSurface::laplacian_s(double s) const {
    switch (kind_) {
        case SurfaceKind::Rotational:
            return 1.0 / std::tanh(circle_->radius + s);
        case SurfaceKind::Hyperbolic:
            return std::tanh(s);
        case SurfaceKind::Parabolic:
            return 1.0;
    }
    return 0.0;
}

double InvariantSurface::qh_residual(const HPoint& x) const {
    const double s = s_at(x);
    const double edge = domain_edge();
    if (std::isfinite(edge) && s < edge + 0.05)
        throw OutsideDomainError("qh_residual needs s >= edge + 0.05");
    const double h = 1e-5;
    const double dF = (flux(s + h) - flux(s - h)) / (2.0 * h);
    return dF + flux(s) * laplacian_s(s) - 2.0 * H_.value();
}

InvariantSurface alexandrov_reflect(const InvariantSurface& surf) {
    switch (surf.kind_) {
        case SurfaceKind::Rotational:
            if (surf.rot_->r <= 0.0)
                throw GluingError("cap has phi'(0) = 0, no vertical edge to glue along");
            break;
        case SurfaceKind::Hyperbolic:
            if (!surf.hyp_->edge_attained())
                throw GluingError("hyperbolic profile needs |C| > 1 to reach a vertical edge");
            break;
        case SurfaceKind::Parabolic:
            break;
    }
    InvariantSurface copy = surf;
    copy.reflected_ = true;
    return copy;
}

// ---------------------------------------------------------------------------
// Meshing

namespace {

HPoint mesh_point(const InvariantSurface& surf, double level, double s) {
    switch (surf.kind()) {
        case SurfaceKind::Rotational: {
            const HCircle& c = surf.circle_base();
            const double t = c.radius + s;
            if (t <= 0.0) return c.center;
            // Direction through an ideal angle; exact for the origin-centered
            // default and still a valid polar chart otherwise.
            return geodesic_ray(c.center, IdealPoint(level), t);
        }
        case SurfaceKind::Hyperbolic: {
            GeodesicFrame frame(surf.geodesic_base());
            return frame.fermi_point(level, s);
        }
        case SurfaceKind::Parabolic: {
            HorocycleFrame frame(surf.horocycle_base());
            return frame.point(level, s);
        }
    }
    return HPoint();
}

} // namespace

SurfaceMesh sample_mesh(const InvariantSurface& surf, const MeshOptions& opts) {
    if (opts.n_level < 2 || opts.n_s < 2)
        throw DomainError("mesh resolution must be >= 2 in each direction");

    const bool periodic = surf.kind() == SurfaceKind::Rotational;
    const int nl = opts.n_level;
    const int ns = opts.n_s;

    double s_lo, s_hi;
    const double edge = surf.domain_edge();
    if (std::isfinite(edge)) {
        const bool open_edge =
            surf.kind() == SurfaceKind::Hyperbolic && !surf.hyperbolic_profile().edge_attained();
        s_lo = open_edge ? edge + 0.05 : edge;
        s_hi = s_lo + opts.s_span;
    } else {
        const double mid = surf.hyperbolic_profile().anchor();
        s_lo = mid - 0.5 * opts.s_span;
        s_hi = mid + 0.5 * opts.s_span;
    }

    std::vector<double> levels(nl), svals(ns);
    for (int i = 0; i < nl; ++i)
        levels[i] = periodic ? 2.0 * kPi * i / nl
                             : -opts.level_span + 2.0 * opts.level_span * i / (nl - 1);
    for (int j = 0; j < ns; ++j) svals[j] = s_lo + (s_hi - s_lo) * j / (ns - 1);

    SurfaceMesh mesh;
    std::ostringstream desc;
    desc << "kind=" << (surf.kind() == SurfaceKind::Rotational   ? "rotational"
                        : surf.kind() == SurfaceKind::Hyperbolic ? "hyperbolic"
                                                                 : "parabolic")
         << " H=" << surf.H().value() << " reflected=" << (surf.reflected() ? 1 : 0);
    mesh.descriptor = desc.str();

    // Row-major: row j holds the level sweep at svals[j]; the reflected sheet
    // reuses row 0 (the edge curve) and appends mirrored rows.
    auto push_row = [&](double s, double sheet_sign) {
        for (int i = 0; i < nl; ++i) {
            const HPoint p = mesh_point(surf, levels[i], s);
            double h;
            switch (surf.kind()) {
                case SurfaceKind::Rotational:
                    h = surf.rotational_profile().phi(s);
                    break;
                case SurfaceKind::Hyperbolic:
                    h = surf.hyperbolic_profile().phi(s);
                    break;
                default:
                    h = surf.parabolic_profile().phi(s);
            }
            mesh.vertices.push_back({p.x, p.y, sheet_sign * h});
        }
    };

    for (int j = 0; j < ns; ++j) push_row(svals[j], 1.0);
    if (surf.reflected())
        for (int j = 1; j < ns; ++j) push_row(svals[j], -1.0);

    auto add_quads = [&](auto row_index, int rows) {
        for (int j = 0; j + 1 < rows; ++j) {
            const int ilim = periodic ? nl : nl - 1;
            for (int i = 0; i < ilim; ++i) {
                const std::uint32_t a = row_index(j) + i;
                const std::uint32_t b = row_index(j) + (i + 1) % nl;
                const std::uint32_t c = row_index(j + 1) + i;
                const std::uint32_t d = row_index(j + 1) + (i + 1) % nl;
                mesh.faces.push_back({a, b, d});
                mesh.faces.push_back({a, d, c});
            }
        }
    };
    add_quads([&](int j) { return static_cast<std::uint32_t>(j * nl); }, ns);
    if (surf.reflected()) {
        // Mirrored sheet rows: edge row 0 is shared, row j>0 lives at offset.
        auto mirror_row = [&](int j) {
            return static_cast<std::uint32_t>(j == 0 ? 0 : (ns + j - 1) * nl);
        };
        add_quads(mirror_row, ns);
    }
    return mesh;
}

void write_obj(const SurfaceMesh& mesh, std::ostream& out) {
    out << "# " << mesh.descriptor << "\n";
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x, v.y, v.h);
        out << buf;
    }
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << "\n";
}

void write_mesh_csv(const SurfaceMesh& mesh, std::ostream& out, const std::string& header_note) {
    out << "# " << header_note << "\n";
    out << "x,y,height\n";
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", v.x, v.y, v.h);
        out << buf;
    }
}

} // namespace hcmc
