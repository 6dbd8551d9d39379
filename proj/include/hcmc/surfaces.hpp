#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hcmc/geometry.hpp"
#include "hcmc/profiles.hpp"

namespace hcmc {

enum class SurfaceKind { Rotational, Hyperbolic, Parabolic };

/// An invariant graph u(x) = phi(s(x)) over its base domain, optionally glued
/// with its mirror image across the zero slice. Gluing is only admissible
/// where the profile is vertical at the domain edge.
class InvariantSurface {
  public:
    static InvariantSurface unduloid(MeanCurvatureH H, double r, HCircle base);
    static InvariantSurface cap(MeanCurvatureH H, HCircle base);
    static InvariantSurface hyperbolic_graph(MeanCurvatureH H, double C, Geodesic base);
    static InvariantSurface parabolic_graph(MeanCurvatureH H, Horocycle base);

    // Default bases: circle at the origin, real-diameter geodesic with the
    // upper half-disk positive, level-0 horocycle at angle 0.
    static InvariantSurface unduloid(MeanCurvatureH H, double r);
    static InvariantSurface cap(MeanCurvatureH H);
    static InvariantSurface hyperbolic_graph(MeanCurvatureH H, double C);
    static InvariantSurface parabolic_graph(MeanCurvatureH H);

    SurfaceKind kind() const { return kind_; }
    bool reflected() const { return reflected_; }
    MeanCurvatureH H() const;

    const RotationalProfile& rotational_profile() const;
    const HyperbolicProfile& hyperbolic_profile() const;
    const ParabolicProfile& parabolic_profile() const;
    const HCircle& circle_base() const;
    const Geodesic& geodesic_base() const;
    const Horocycle& horocycle_base() const;

    /// Signed/unsigned distance coordinate of a point; OutsideDomainError if
    /// it leaves the profile domain.
    double s_at(const HPoint& x) const;

    double height(const HPoint& x) const;
    /// Both sheets of a glued surface: {+phi, -phi}.
    std::pair<double, double> heights(const HPoint& x) const;

    /// One-dimensional reduction residual of the CMC operator at an interior
    /// point: d/ds[phi'/sqrt(1+phi'^2)] + (phi'/sqrt(1+phi'^2))·(Lap s) - 2H,
    /// with the flux analytic and its s-derivative by central differences.
    double qh_residual(const HPoint& x) const;

    /// Lower bound of the profile's s-domain (-inf when unbounded).
    double domain_edge() const;
    /// Flux and distance Laplacian as functions of s (exposed for tests).
    double flux(double s) const;
    double laplacian_s(double s) const;

    friend InvariantSurface alexandrov_reflect(const InvariantSurface& surf);

  private:
    InvariantSurface() : H_(0.0) {}

    SurfaceKind kind_ = SurfaceKind::Rotational;
    MeanCurvatureH H_;
    std::optional<RotationalProfile> rot_;
    std::optional<HyperbolicProfile> hyp_;
    std::optional<ParabolicProfile> par_;
    std::optional<HCircle> circle_;
    std::optional<Geodesic> geod_;
    std::optional<Horocycle> horo_;
    bool reflected_ = false;
};

/// Glued copy; GluingError when the edge slope is finite (cap, |C| <= 1).
InvariantSurface alexandrov_reflect(const InvariantSurface& surf);

// ---------------------------------------------------------------------------

struct SurfaceMesh {
    struct Vertex {
        double x, y, h;
    };
    std::vector<Vertex> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;
    std::string descriptor;
};

struct MeshOptions {
    int n_level = 48;  ///< samples along the invariance direction
    int n_s = 24;      ///< samples across the profile direction
    double s_span = 4.0;
    double level_span = 4.0; ///< arclength half-range for non-compact level curves
};

/// Structured sampling in (level parameter, s) coordinates. Reflected
/// surfaces contribute both sheets sharing the edge row.
SurfaceMesh sample_mesh(const InvariantSurface& surf, const MeshOptions& opts = {});

void write_obj(const SurfaceMesh& mesh, std::ostream& out);
void write_mesh_csv(const SurfaceMesh& mesh, std::ostream& out, const std::string& header_note);

} // namespace hcmc
