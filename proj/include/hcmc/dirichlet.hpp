#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hcmc/geometry.hpp"
#include "hcmc/profiles.hpp"

namespace hcmc {

/// Continuous asymptotic boundary data: height offsets relative to the cap,
/// as a function of the ideal angle.
class AsymptoticData {
  public:
    static AsymptoticData constant(double c);
    static AsymptoticData fourier(double a0, std::vector<double> cos_coeffs,
                                  std::vector<double> sin_coeffs);
    static AsymptoticData samples(std::vector<double> thetas, std::vector<double> values);

    double operator()(double theta) const { return fn_(theta); }

  private:
    explicit AsymptoticData(std::function<double(double)> fn);
    void validate_() const;
    std::function<double(double)> fn_;
};

/// Geodesic polar grid on [rho_min, R_max] x [0, 2pi), metric
/// d rho^2 + sinh^2(rho) d theta^2. Node ring i = n_rho-1 carries the
/// Dirichlet data; the innermost cell face sits exactly at rho = 0.
struct DiskGrid {
    double R_max;
    int n_rho;
    int n_theta;
    double rho_min;
    double h_rho;
    double h_theta;

    DiskGrid(double R_max_, int n_rho_, int n_theta_, double rho_min_ = -1.0);

    double rho(int i) const { return rho_min + i * h_rho; }
    double rho_face(int i) const { return rho_min + (i + 0.5) * h_rho; }
    double theta(int j) const { return j * h_theta; }
    int index(int i, int j) const { return i * n_theta + j; }
    int size() const { return n_rho * n_theta; }
    HPoint point(int i, int j) const;
};

/// Second-order conservative residual of div(grad u / W) - 2H at the interior
/// nodes (boundary-ring entries are zero).
std::vector<double> discrete_QH(const DiskGrid& grid, const std::vector<double>& u,
                                MeanCurvatureH H);

struct SolveOptions {
    double tolerance = 1e-10;
    int max_iters = 30;
    int picard_iters = 0; ///< frozen-coefficient steps before full Newton
    bool verbose = false;
    /// Optional starting iterate (full grid layout); the boundary ring is
    /// overwritten with the Dirichlet data either way.
    std::vector<double> initial_guess;
};

struct Solution {
    DiskGrid grid;
    std::vector<double> u;
    double residual_norm = 0.0;
    int iterations = 0;
};

/// Truncated asymptotic Dirichlet problem: Q_H(u) = 0 with
/// u(R_max, theta) = cap(R_max) + phi(theta). Damped Newton from the
/// cap + mean(phi) initial guess; NonConvergenceError past max_iters.
Solution solve(const DiskGrid& grid, MeanCurvatureH H, const AsymptoticData& data,
               const SolveOptions& opts = {});

/// Finite-radius proxy of the asymptotic height: theta_j -> u(rho_star, .) -
/// cap(rho_star), linearly interpolated between rings.
std::vector<double> asymptotic_trace(const Solution& sol, MeanCurvatureH H, double rho_star);

// ---------------------------------------------------------------------------
// Barriers

struct Barrier {
    enum class Kind { Lower, Upper };
    Kind kind;
    std::function<double(const HPoint&)> evaluator;
    /// Which piece of the piecewise definition is active at a point
    /// (0 = cap branch, 1 = comparison-surface branch).
    std::function<int(const HPoint&)> active_branch;
    IdealPoint anchor;
    double C = 0.0;

    Barrier shifted(double delta) const;
};

struct BarrierRegions {
    double wedge_halfwidth = 0.9; ///< ideal half-width of the C=1 wedge (lower)
    double cap_offset = 1.5;      ///< distance of the translated cap center (upper)
};

/// Piecewise lower barrier max(cap + t, hund_{C=1} + t*) with t = -C and t*
/// the asymptotic matching constant toward the anchor; ConfigError when the
/// ordering checks fail on the sample set.
Barrier lower_barrier(MeanCurvatureH H, IdealPoint anchor, double C,
                      const BarrierRegions& regions = {});

/// min of the origin cap + C and a translated cap matched toward the anchor.
Barrier upper_barrier(MeanCurvatureH H, IdealPoint anchor, double C,
                      const BarrierRegions& regions = {});

struct SandwichReport {
    int lower_violations = 0;
    int upper_violations = 0;
    double max_lower_violation = 0.0; ///< max(lower - u), clipped at 0
    double max_upper_violation = 0.0; ///< max(u - upper), clipped at 0
    bool ok() const { return lower_violations == 0 && upper_violations == 0; }
};

/// Verifies lower <= u <= upper at every grid node (slack 1e-9 for roundoff).
SandwichReport check_sandwich(const Solution& sol, const Barrier& lower, const Barrier& upper);

// ---------------------------------------------------------------------------
// Run configuration (structured text I/O)

struct RunConfig {
    double H = 0.25;
    double R_max = 8.0;
    int n_rho = 256;
    int n_theta = 256;
    double tolerance = 1e-10;
    int max_iters = 30;
    AsymptoticData phi = AsymptoticData::constant(0.0);
};

RunConfig run_config_from_json(const std::string& text);
std::string convergence_report_json(const Solution& sol, bool converged);

} // namespace hcmc
