#pragma once

// Horizontal minimal surfaces in S^5(1) in C^3, and checkers for the two
// properties the construction needs from them: horizontality (the lift is
// orthogonal to the Hopf fibre iW) and minimality in S^5.

#include <string>
#include <vector>

#include "chen/jets.hpp"

namespace chen {

struct HorizontalSurface {
    ParametricMap map;  // domain (u, v), codomain C^3
    std::string label;

    const std::vector<Interval>& domain_box() const { return map.domain_box; }
};

/// (e^{iu}, e^{iv}, e^{-i(u+v)}) / sqrt(3) on [0, 2pi]^2.
HorizontalSurface clifford_surface();

/// Real unit 2-sphere (cos u cos v, cos u sin v, sin u), |u| <= pi/3.
HorizontalSurface geodesic_sphere_surface();

/// Negative control: e^{iu} times the geodesic sphere. Unit-norm but not horizontal.
HorizontalSurface tilted_control_surface();

/// Negative control: a latitude 2-sphere of radius sin(rho) in S^5,
///   (cos rho, sin rho cos u e^{iv}, sin rho sin u).
/// Not minimal for rho < pi/2; mean curvature norm is 2 cot(rho).
HorizontalSurface latitude_control_surface(double rho = 0.5);

struct HorizontalityResidual {
    /// max_a |<d_a W, iW>_R|
    double horizontality = 0.0;
    /// | |W|^2 - 1 |
    double unit_norm = 0.0;
};

HorizontalityResidual horizontality_residual(const HorizontalSurface& surface, const Coords& point,
                                             const JetConfig& config = {});

/// Norm of g^{ab} II_ab, the (unnormalised) mean curvature vector of the
/// surface in S^5. Throws ImmersionFailure when det g < 1e-8.
double surface_mean_curvature_norm(const HorizontalSurface& surface, const Coords& point,
                                   const JetConfig& config = {});

/// Real Gram determinant of {W, W_u, W_v, iW, iW_u, iW_v}. Positive exactly
/// when the six vectors span R^6.
double horizontal_nondegeneracy(const HorizontalSurface& surface, const Coords& point,
                                const JetConfig& config = {});

struct SurfaceCheckSummary {
    std::size_t points = 0;
    double max_horizontality = 0.0;
    double max_unit_norm = 0.0;
    double max_mean_curvature = 0.0;
    double min_metric_det = 0.0;
    double min_nondegeneracy = 0.0;
};

/// Runs every checker on an n x n interior grid of the surface's box.
SurfaceCheckSummary check_surface(const HorizontalSurface& surface, std::size_t n = 10,
                                  const JetConfig& config = {});

}  // namespace chen
