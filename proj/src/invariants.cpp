#include "chen/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

namespace chen {

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 normalized(Vec3 v) {
    const double n = std::sqrt(dot(v, v));
    for (auto& x : v) x /= n;
    return v;
}

Vec3 apply(const Mat3& m, const Vec3& v) {
    return {dot(m[0], v), dot(m[1], v), dot(m[2], v)};
}

// Unit vector orthogonal to u, built from the coordinate axis least aligned with u.
Vec3 orthogonal_unit(const Vec3& u) {
    int axis = 0;
    for (int k = 1; k < 3; ++k)
        if (std::abs(u[k]) < std::abs(u[axis])) axis = k;
    Vec3 a{};
    a[axis] = 1.0;
    const double p = dot(a, u);
    for (int k = 0; k < 3; ++k) a[k] -= p * u[k];
    return normalized(a);
}

}  // namespace

// ---------------------------------------------------------------------------
// CubicTensor

CubicTensor CubicTensor::from_raw(const Components& raw) {
    CubicTensor out;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                const double perms[6] = {raw[i][j][k], raw[i][k][j], raw[j][i][k],
                                         raw[j][k][i], raw[k][i][j], raw[k][j][i]};
                double mean = 0.0;
                for (double p : perms) mean += p;
                mean /= 6.0;
                out.comp_[i][j][k] = mean;
                for (double p : perms)
                    out.symmetry_residual_ = std::max(out.symmetry_residual_, std::abs(p - mean));
            }
        }
    }
    return out;
}

CubicTensor CubicTensor::adapted_structure(double lam2, double a, double b) {
    Components c{};
    auto set = [&c](int i, int j, int k, double v) {
        const int idx[3] = {i, j, k};
        int p[3] = {0, 1, 2};
        do {
            c[idx[p[0]]][idx[p[1]]][idx[p[2]]] = v;
        } while (std::next_permutation(p, p + 3));
    };
    set(0, 0, 0, 4.0 * lam2);
    set(0, 1, 1, lam2);
    set(0, 2, 2, lam2);
    set(1, 1, 1, a);
    set(1, 2, 2, -a);
    set(1, 1, 2, b);
    set(2, 2, 2, -b);
    return from_raw(c);
}

double CubicTensor::max_abs() const {
    double m = 0.0;
    for (const auto& a : comp_)
        for (const auto& b : a)
            for (double x : b) m = std::max(m, std::abs(x));
    return m;
}

CubicTensor CubicTensor::rotated(const Mat3& rows) const {
    CubicTensor out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double s = 0.0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c)
                            s += rows[i][a] * rows[j][b] * rows[k][c] * comp_[a][b][c];
                out.comp_[i][j][k] = s;
            }
    out.symmetry_residual_ = symmetry_residual_;
    return out;
}

// ---------------------------------------------------------------------------
// Frames and the cubic form

TangentFrame coordinate_tangent_frame(const JetPoint& jet) {
    if (jet.domain_dim != 3) {
        throw Error(ErrorKind::Frame, "coordinate_tangent_frame: a 3-dimensional jet is required");
    }
    TangentFrame frame;
    try {
        const std::vector<AmbientVector> partials(jet.first.begin(), jet.first.end());
        frame.vectors = gram_schmidt(partials);
    } catch (const DegenerateInputError& e) {
        throw Error(ErrorKind::Frame, std::string("tangent frame degenerate: ") + e.what());
    }
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a) frame.coeffs[i][a] = frame.vectors.coefficients[i][a];
    return frame;
}

double horizontality_residual(const JetPoint& jet) {
    const AmbientVector fibre = jet.value.J();
    double r = 0.0;
    for (std::size_t a = 0; a < jet.domain_dim; ++a)
        r = std::max(r, std::abs(real_inner(jet.first[a], fibre)));
    return r;
}

CubicTensor cubic_form(const JetPoint& jet, const TangentFrame& frame,
                       double horizontality_tolerance) {
    const double h = horizontality_residual(jet);
    if (!(h <= horizontality_tolerance)) {
        std::ostringstream msg;
        msg << "cubic_form: horizontality residual " << h << " exceeds " << horizontality_tolerance
            << "; the cubic form is undefined";
        throw Error(ErrorKind::NotLagrangian, msg.str());
    }
    std::array<AmbientVector, 3> JE;
    for (int k = 0; k < 3; ++k) JE[k] = frame.vectors.vectors[k].J();

    CubicTensor::Components raw{};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const AmbientVector d = second_directional(jet, frame.coeffs[i], frame.coeffs[j]);
            for (int k = 0; k < 3; ++k) {
                raw[i][j][k] = real_inner(d, JE[k]);
                raw[j][i][k] = raw[i][j][k];
            }
        }
    return CubicTensor::from_raw(raw);
}

Vec3 mean_curvature_vector(const CubicTensor& C) {
    Vec3 h{};
    for (int k = 0; k < 3; ++k) h[k] = (C(0, 0, k) + C(1, 1, k) + C(2, 2, k)) / 3.0;
    return h;
}

double mean_curvature_sq(const CubicTensor& C) {
    const Vec3 h = mean_curvature_vector(C);
    return dot(h, h);
}

// ---------------------------------------------------------------------------
// Curvature

CurvatureTensor curvature_tensor(const CubicTensor& C) {
    CurvatureTensor R;
    auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    double v = delta(i, l) * delta(j, k) - delta(i, k) * delta(j, l);
                    for (int m = 0; m < 3; ++m) v += C(i, l, m) * C(j, k, m) - C(i, k, m) * C(j, l, m);
                    R.at(i, j, k, l) = v;
                }
    return R;
}

double CurvatureTensor::symmetry_defect() const {
    double d = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    const double v = r_[i][j][k][l];
                    d = std::max(d, std::abs(v + r_[j][i][k][l]));
                    d = std::max(d, std::abs(v + r_[i][j][l][k]));
                    d = std::max(d, std::abs(v - r_[k][l][i][j]));
                    d = std::max(d, std::abs(v + r_[j][k][i][l] + r_[k][i][j][l]));
                }
    return d;
}

double sectional_curvature(const CurvatureTensor& R, const Vec3& X, const Vec3& Y) {
    if (std::abs(dot(X, X) - 1.0) > 1e-9 || std::abs(dot(Y, Y) - 1.0) > 1e-9 ||
        std::abs(dot(X, Y)) > 1e-9) {
        throw Error(ErrorKind::Usage, "sectional_curvature: plane vectors must be orthonormal");
    }
    double k = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) k += X[i] * Y[j] * Y[a] * X[b] * R(i, j, a, b);
    return k;
}

double scalar_tau(const CurvatureTensor& R) { return R(0, 1, 1, 0) + R(0, 2, 2, 0) + R(1, 2, 2, 1); }

Mat3 plane_curvature_form(const CurvatureTensor& R) {
    // u = e_p corresponds to the plane e_q ^ e_r with (p, q, r) cyclic.
    static constexpr int q[3] = {1, 2, 0};
    static constexpr int r[3] = {2, 0, 1};
    Mat3 Q{};
    for (int p = 0; p < 3; ++p)
        for (int s = 0; s < 3; ++s) Q[p][s] = R(q[p], r[p], r[s], q[s]);
    return Q;
}

namespace {

double quad(const Mat3& Q, const Vec3& u) { return dot(u, apply(Q, u)); }

std::optional<Vec3> solve3(Mat3 A, const Vec3& b) {
    const double det = dot(A[0], cross(A[1], A[2]));
    if (!(std::abs(det) > 1e-300)) return std::nullopt;
    // Cramer's rule via the cofactor matrix.
    const Vec3 c0 = cross(A[1], A[2]);
    const Vec3 c1 = cross(A[2], A[0]);
    const Vec3 c2 = cross(A[0], A[1]);
    Vec3 x{};
    for (int k = 0; k < 3; ++k) x[k] = (c0[k] * b[0] + c1[k] * b[1] + c2[k] * b[2]) / det;
    for (double v : x)
        if (!std::isfinite(v)) return std::nullopt;
    return x;
}

}  // namespace

InfSectional inf_sectional(const CurvatureTensor& R, std::size_t grid_points) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    InfSectional best;
    best.grid_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double z = 1.0 - (2.0 * double(i) + 1.0) / double(grid_points);
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * double(i);
        const Vec3 u{rho * std::cos(phi), rho * std::sin(phi), z};
        const Vec3 X = orthogonal_unit(u);
        const Vec3 Y = cross(u, X);
        const double k = sectional_curvature(R, X, Y);
        if (k < best.grid_value) {
            best.grid_value = k;
            best.normal = u;
        }
    }

    // Descent on the sphere. K(u^perp) = u^T Q u, so Rayleigh-quotient steps
    // converge fast; each step is accepted only if it lowers K.
    const Mat3 Q = plane_curvature_form(R);
    double scale = 0.0;
    for (const auto& row : Q)
        for (double x : row) scale += x * x;
    scale = std::sqrt(scale) + 1e-300;

    Vec3 u = best.normal;
    double k = quad(Q, u);
    auto gradient = [&](const Vec3& v, double kv) {
        const Vec3 qv = apply(Q, v);
        return Vec3{2 * (qv[0] - kv * v[0]), 2 * (qv[1] - kv * v[1]), 2 * (qv[2] - kv * v[2])};
    };
    Vec3 g = gradient(u, k);
    for (int iter = 0; iter < 200 && std::sqrt(dot(g, g)) >= 1e-8; ++iter) {
        bool moved = false;
        Mat3 shifted = Q;
        for (int d = 0; d < 3; ++d) shifted[d][d] -= k;
        if (const auto w = solve3(shifted, u)) {
            Vec3 cand = normalized(*w);
            if (dot(cand, u) < 0) cand = {-cand[0], -cand[1], -cand[2]};
            const double kc = quad(Q, cand);
            if (kc <= k) {
                u = cand;
                k = kc;
                moved = true;
            }
        }
        if (!moved) {
            double alpha = 0.5 / scale;
            for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
                const Vec3 cand = normalized({u[0] - alpha * g[0], u[1] - alpha * g[1], u[2] - alpha * g[2]});
                const double kc = quad(Q, cand);
                if (kc < k) {
                    u = cand;
                    k = kc;
                    moved = true;
                    break;
                }
            }
        }
        g = gradient(u, k);
        if (!moved) break;
    }
    best.normal = u;
    best.inf_K = std::min(k, best.grid_value);
    best.gradient_norm = std::sqrt(dot(g, g));
    return best;
}

double chen_rhs(double H_norm_sq, ChenVersion version) {
    if (H_norm_sq < 0.0) throw Error(ErrorKind::Usage, "chen_rhs: |H|^2 must be non-negative");
    return version == ChenVersion::Improved ? 2.0 + 1.5 * H_norm_sq : 2.0 + 2.25 * H_norm_sq;
}

// ---------------------------------------------------------------------------
// Adapted frame and the equality conditions

AdaptedFrame adapted_frame(const CubicTensor& C) {
    AdaptedFrame out;
    const Vec3 h = mean_curvature_vector(C);
    out.H_norm = std::sqrt(dot(h, h));
    if (out.H_norm < kMinimalityThreshold) {
        out.minimal = true;
        out.rows = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
        out.C = C;
    } else {
        // -J H = sum_k h_k e_k
        const Vec3 e1 = normalized(h);
        const Vec3 e2 = orthogonal_unit(e1);
        out.rows = {e1, e2, cross(e1, e2)};
        out.C = C.rotated(out.rows);
    }
    out.lambda1 = out.C(0, 0, 0);
    out.lambda2 = 0.5 * (out.C(0, 1, 1) + out.C(0, 2, 2));
    return out;
}

double ConditionResiduals::max() const {
    return std::max({off_diagonal, ratio, traceless});
}

ConditionResiduals equality_conditions_check(const CubicTensor& C) {
    ConditionResiduals r;
    r.off_diagonal = std::max(std::abs(C(0, 0, 1)), std::abs(C(0, 0, 2)));
    const double quarter = C(0, 0, 0) / 4.0;
    r.ratio = std::max({std::abs(C(0, 1, 1) - quarter), std::abs(C(0, 2, 2) - quarter),
                        std::abs(C(0, 1, 2))});
    r.traceless = std::max(std::abs(C(1, 1, 1) + C(1, 2, 2)), std::abs(C(1, 1, 2) + C(2, 2, 2)));
    r.trace = std::max(std::abs(C(0, 0, 1) + C(1, 1, 1) + C(2, 2, 1)),
                       std::abs(C(0, 0, 2) + C(1, 1, 2) + C(2, 2, 2)));
    r.redundancy_consistent = r.traceless <= r.off_diagonal + r.trace + 1e-12 * (1.0 + C.max_abs());
    return r;
}

// ---------------------------------------------------------------------------
// Structure equations along the profile direction

double StructureResiduals::max() const {
    return std::max({eq_e1e1, eq_eje1, t_rate, lam2_lateral});
}

StructureResiduals structure_equation_residuals(const JetPoint& jet, const ProfileState& profile,
                                                const TangentFrame& frame) {
    if (jet.domain_dim != 3) throw Error(ErrorKind::Frame, "structure equations need a 3-jet");
    const ProfileRate rate = rhs(profile);
    const AmbientVector& Et = jet.first[0];
    const double speed = Et.norm();
    if (!(speed > 0.0)) throw Error(ErrorKind::Frame, "structure equations: d_t E0 vanishes");
    const double s = 1.0 / speed;
    // d_a of the normalisation s = |d_t E0|^{-1}
    Vec3 ds{};
    for (int a = 0; a < 3; ++a) ds[a] = -s * s * s * real_inner(jet.second[a][0], Et);

    const AmbientVector E1 = s * Et;
    StructureResiduals out;

    const AmbientVector d11 = (s * s) * jet.second[0][0] + (s * ds[0]) * Et;
    const AmbientVector rhs5 = (4.0 * profile.lam2) * E1.J() - jet.value;
    out.eq_e1e1 = (d11 - rhs5).norm();

    const Complex beta(profile.b1, profile.lam2);
    for (int j = 1; j < 3; ++j) {
        const Coords& X = frame.coeffs[j];
        AmbientVector d = AmbientVector::zero(jet.value.dim());
        double dsj = 0.0;
        for (int a = 0; a < 3; ++a) {
            d += (s * X[a]) * jet.second[a][0];
            dsj += X[a] * ds[a];
        }
        d += dsj * Et;
        const AmbientVector Ej = frame.vectors.vectors[j];
        out.eq_eje1 = std::max(out.eq_eje1, (d - beta * Ej).norm());
        out.lam2_lateral = std::max(out.lam2_lateral, std::abs(X[0] * rate.dlam2_dt));
    }
    out.t_rate = std::abs(s - 3.0 * profile.lam2);
    return out;
}

// ---------------------------------------------------------------------------

PointAnalysis analyze_point(const JetPoint& jet, double horizontality_tolerance) {
    PointAnalysis pa;
    pa.frame = coordinate_tangent_frame(jet);
    pa.C = cubic_form(jet, pa.frame, horizontality_tolerance);
    pa.R = curvature_tensor(pa.C);
    pa.adapted = adapted_frame(pa.C);

    ChenReport& rep = pa.report;
    rep.horizontality = horizontality_residual(jet);
    rep.c_symmetry = pa.C.symmetry_residual();
    rep.c_max_abs = pa.C.max_abs();
    rep.tau = scalar_tau(pa.R);
    const InfSectional inf = inf_sectional(pa.R);
    rep.inf_K = inf.inf_K;
    rep.min_plane_normal = inf.normal;
    rep.delta = rep.tau - rep.inf_K;
    rep.H_norm_sq = mean_curvature_sq(pa.C);
    rep.improved_rhs = chen_rhs(rep.H_norm_sq, ChenVersion::Improved);
    rep.classical_rhs = chen_rhs(rep.H_norm_sq, ChenVersion::Classical);
    rep.improved_gap = rep.improved_rhs - rep.delta;
    rep.classical_slack = rep.classical_rhs - rep.delta;
    rep.conditions = equality_conditions_check(pa.adapted.C);
    rep.minimal = pa.adapted.minimal;
    rep.lambda1 = pa.adapted.lambda1;
    rep.lambda2 = pa.adapted.lambda2;
    rep.min_plane_alignment = rep.minimal ? 0.0 : std::abs(dot(inf.normal, pa.adapted.rows[0]));
    return pa;
}

}  // namespace chen
