#pragma once

// Assembly of the immersion
//
//   E0(t, u, v) = [ (-b1 + i lam2) e^{it},  e^{it/3} W(u, v) ] / sqrt(1 + b1^2 + lam2^2)
//
// from a horizontal minimal surface W in S^5 and a profile trajectory, plus
// the maps V and W that split it back apart. The gauge is fixed by putting
// V in the first complex slot and taking theta = -t/3.

#include <memory>
#include <vector>

#include "chen/invariants.hpp"
#include "chen/profile_ode.hpp"
#include "chen/surfaces.hpp"

namespace chen {

struct ConstructedImmersion {
    HorizontalSurface surface;
    std::shared_ptr<const ProfileTrajectory> trajectory;
    /// Coordinates (t, u, v), codomain C^4.
    ParametricMap map;
};

ConstructedImmersion build_E0(const HorizontalSurface& surface,
                              std::shared_ptr<const ProfileTrajectory> trajectory);

/// Closed-form E0 for given profile values and surface point.
AmbientVector assemble_point(double t, double b1, double lam2, const AmbientVector& W);

/// V = (-(b1 + i lam2) E0 + E1) / sqrt(1 + b1^2 + lam2^2), E1 = d_t E0 / |d_t E0|.
AmbientVector compute_V(const JetPoint& jet, const ProfileState& profile);

/// W = e^{i theta} (E0 - (-b1 + i lam2) E1) / sqrt(1 + b1^2 + lam2^2), theta = -t/3.
AmbientVector compute_W_from_immersion(const JetPoint& jet, const ProfileState& profile);

struct VWResiduals {
    double v_unit = 0.0;       // | |V| - 1 |
    double v_tail = 0.0;       // max modulus of V's slots 2..4
    double dV_e1 = 0.0;        // |D_{E1}V - 3 lam2 i V|
    double dV_lateral = 0.0;   // max_j |D_{Ej}V|, j = 2, 3
    double w_orthogonal = 0.0; // max(|<W,V>_R|, |<W,iV>_R|)
    double w_roundtrip = 0.0;  // |W - (0, W_surface(u, v))|
    double dW_e1 = 0.0;        // |D_{E1}W|
    double dW_lateral = 0.0;   // max_j |D_{Ej}W - sqrt(1+b1^2+lam2^2) e^{i theta} Ej|

    double max_derivative() const;
};

/// Derivatives of V and W come from the product rule on the jet of E0 and
/// the profile derivatives, so no nested differencing is needed.
VWResiduals vw_residuals(const JetPoint& jet, const ProfileState& profile,
                         const TangentFrame& frame, const AmbientVector& surface_value);

/// Totally geodesic reference: S^3 in R^4 in C^4 through hyperspherical
/// coordinates (chi, theta, phi), away from the coordinate singularities.
ParametricMap rp3_reference_lift();

/// Negative control: the first slot multiplied by e^{i eps t}. A t-dependent
/// phase moves the lift off the horizontal distribution.
ParametricMap perturbed_immersion(const ConstructedImmersion& immersion, double eps = 0.05);

}  // namespace chen
