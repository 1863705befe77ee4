#pragma once

// Pointwise intrinsic and extrinsic invariants of a horizontal immersion
// E0 : M^3 -> S^7(1) in C^4, i.e. of the Lagrangian immersion [E0] into CP^3(4).
//
// All tensors are expressed in an orthonormal tangent frame {e_1, e_2, e_3}
// (0-based indices in code). The cubic form is C(X, Y, Z) = <h(X, Y), JZ>;
// for a horizontal lift it equals <D_X dE0(Y), i dE0(Z)>, so it can be read
// off second partials without Christoffel corrections.

#include <array>
#include <optional>
#include <string>

#include "chen/jets.hpp"
#include "chen/profile_ode.hpp"

namespace chen {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

class CubicTensor {
public:
    using Components = std::array<std::array<std::array<double, 3>, 3>, 3>;

    CubicTensor() = default;

    /// Symmetrises raw components and records the largest deviation of any
    /// component from the mean over its index permutations.
    static CubicTensor from_raw(const Components& raw);

    /// The normal form at an equality point:
    ///   C(1,1,1) = 4 lam2, C(1,2,2) = C(1,3,3) = lam2,
    ///   C(2,2,2) = -C(2,3,3) = a, C(2,2,3) = -C(3,3,3) = b, everything else 0.
    static CubicTensor adapted_structure(double lam2, double a, double b);

    double operator()(int i, int j, int k) const { return comp_[i][j][k]; }
    const Components& components() const noexcept { return comp_; }
    double symmetry_residual() const noexcept { return symmetry_residual_; }
    double max_abs() const;

    /// Components in the frame whose i-th vector has old-frame components rows[i].
    CubicTensor rotated(const Mat3& rows) const;

private:
    Components comp_{};
    double symmetry_residual_ = 0.0;
};

/// Orthonormal tangent frame of a jet, with each vector's coordinate
/// coefficients (e_i = sum_a coeffs[i][a] d_a E0).
struct TangentFrame {
    std::array<Coords, 3> coeffs{};
    OrthonormalFrame vectors;
};

/// Gram-Schmidt of d_0 E0, d_1 E0, d_2 E0 in that order, so e_1 is the
/// normalised first coordinate direction. Throws Error(Frame) on rank loss.
TangentFrame coordinate_tangent_frame(const JetPoint& jet);

/// max_a |<d_a E0, i E0>_R|
double horizontality_residual(const JetPoint& jet);

/// Throws Error(NotLagrangian) when horizontality_residual exceeds the tolerance.
CubicTensor cubic_form(const JetPoint& jet, const TangentFrame& frame,
                       double horizontality_tolerance = 1e-6);

/// (1/9) sum_k (sum_i C(i,i,k))^2
double mean_curvature_sq(const CubicTensor& C);

/// Components of H in the basis J e_k: (1/3) sum_i C(i,i,k).
Vec3 mean_curvature_vector(const CubicTensor& C);

class CurvatureTensor {
public:
    double operator()(int i, int j, int k, int l) const { return r_[i][j][k][l]; }
    double& at(int i, int j, int k, int l) { return r_[i][j][k][l]; }

    /// max deviation from antisymmetry, pair symmetry and first Bianchi.
    double symmetry_defect() const;

private:
    double r_[3][3][3][3] = {};
};

/// Gauss equation on a Lagrangian 3-fold of CP^3(4):
///   R(X,Y,Z,W) = <X,W><Y,Z> - <X,Z><Y,W>
///              + sum_m [C(X,W,m) C(Y,Z,m) - C(X,Z,m) C(Y,W,m)].
CurvatureTensor curvature_tensor(const CubicTensor& C);

/// K(X ^ Y) = R(X, Y, Y, X) for orthonormal frame-component vectors X, Y.
/// Throws Error(Usage) if X, Y are not orthonormal to 1e-9.
double sectional_curvature(const CurvatureTensor& R, const Vec3& X, const Vec3& Y);

/// tau = K(e1^e2) + K(e1^e3) + K(e2^e3)
double scalar_tau(const CurvatureTensor& R);

/// Quadratic form Q with K(u^perp) = u^T Q u for unit u.
Mat3 plane_curvature_form(const CurvatureTensor& R);

struct InfSectional {
    double inf_K = 0.0;
    /// Unit normal of the minimising plane (u and -u describe the same plane).
    Vec3 normal{};
    double grid_value = 0.0;
    double gradient_norm = 0.0;
};

inline constexpr std::size_t kSphereGridPoints = 2000;

/// Quasi-uniform search over plane normals followed by local descent.
InfSectional inf_sectional(const CurvatureTensor& R, std::size_t grid_points = kSphereGridPoints);

enum class ChenVersion { Improved, Classical };

/// n = 3 in CP^3(4): improved 2 + (3/2)|H|^2, classical 2 + (9/4)|H|^2.
double chen_rhs(double H_norm_sq, ChenVersion version);

inline constexpr double kMinimalityThreshold = 1e-6;

struct AdaptedFrame {
    /// |H| below the minimality threshold: e_1 is not determined.
    bool minimal = false;
    /// rows[i] = components of the adapted e_i in the input frame.
    Mat3 rows{};
    CubicTensor C;
    double H_norm = 0.0;
    double lambda1 = 0.0;  // C(1,1,1)
    double lambda2 = 0.0;  // (C(1,2,2) + C(1,3,3)) / 2
};

/// e_1 = -J H / |H| (so that H = |H| J e_1), completed by Gram-Schmidt.
/// In the minimal case the input frame is returned unchanged.
AdaptedFrame adapted_frame(const CubicTensor& C);

struct ConditionResiduals {
    double off_diagonal = 0.0;  // (i)   C(1,1,2), C(1,1,3)
    double ratio = 0.0;         // (ii)  C(1,2,2) - C(1,1,1)/4, C(1,3,3) - C(1,1,1)/4, C(1,2,3)
    double traceless = 0.0;     // (iii) C(2,2,2) + C(2,3,3), C(2,2,3) + C(3,3,3)
    double trace = 0.0;         // sum_i C(i,i,2), sum_i C(i,i,3)
    /// (iii) <= (i) + trace up to rounding; (iii) is implied by the others.
    bool redundancy_consistent = true;

    double max() const;
};

ConditionResiduals equality_conditions_check(const CubicTensor& adapted_C);

struct StructureResiduals {
    double eq_e1e1 = 0.0;      // |D_{E1}E1 - (4 lam2 i E1 - E0)|
    double eq_eje1 = 0.0;      // max_j |D_{Ej}E1 - (b1 + i lam2) Ej|
    double t_rate = 0.0;       // |E1(t) - 3 lam2|
    double lam2_lateral = 0.0; // max_j |Ej(lam2)|

    double max() const;
};

/// Coordinate 0 of the jet must be the profile parameter t and frame e_1
/// must be the normalised d_t E0.
StructureResiduals structure_equation_residuals(const JetPoint& jet, const ProfileState& profile,
                                                const TangentFrame& frame);

struct ChenReport {
    double tau = 0.0;
    double inf_K = 0.0;
    Vec3 min_plane_normal{};
    double delta = 0.0;
    double H_norm_sq = 0.0;
    double improved_rhs = 0.0;
    double classical_rhs = 0.0;
    /// improved_rhs - delta; zero at equality points.
    double improved_gap = 0.0;
    /// classical_rhs - delta
    double classical_slack = 0.0;
    ConditionResiduals conditions;
    bool minimal = false;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    /// |<min-plane normal, adapted e_1>|; 0 in the minimal case.
    double min_plane_alignment = 0.0;
    double horizontality = 0.0;
    double c_symmetry = 0.0;
    double c_max_abs = 0.0;
};

struct PointAnalysis {
    TangentFrame frame;
    CubicTensor C;
    AdaptedFrame adapted;
    CurvatureTensor R;
    ChenReport report;
};

PointAnalysis analyze_point(const JetPoint& jet, double horizontality_tolerance = 1e-6);

}  // namespace chen
