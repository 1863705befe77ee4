#include "chen/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chen {

namespace {

Complex cis(double x) { return std::polar(1.0, x); }

// Profile quantities shared by V, W and their derivatives.
struct ProfileTerms {
    double r;        // sqrt(1 + b1^2 + lam2^2)
    double dr_dt;
    Complex beta;    // b1 + i lam2
    Complex dbeta_dt;
    Complex gamma;   // -b1 + i lam2
    Complex dgamma_dt;
};

ProfileTerms profile_terms(const ProfileState& p) {
    const ProfileRate rate = rhs(p);
    ProfileTerms t;
    t.r = std::sqrt(1.0 + p.b1 * p.b1 + p.lam2 * p.lam2);
    t.dr_dt = (p.b1 * rate.db1_dt + p.lam2 * rate.dlam2_dt) / t.r;
    t.beta = Complex(p.b1, p.lam2);
    t.dbeta_dt = Complex(rate.db1_dt, rate.dlam2_dt);
    t.gamma = Complex(-p.b1, p.lam2);
    t.dgamma_dt = Complex(-rate.db1_dt, rate.dlam2_dt);
    return t;
}

// s = |d_t E0|^{-1} and its coordinate derivatives.
struct Normalisation {
    double s;
    std::array<double, 3> ds;
};

Normalisation normalisation(const JetPoint& jet) {
    const AmbientVector& Et = jet.first[0];
    const double speed = Et.norm();
    if (!(speed > 0.0)) throw Error(ErrorKind::Frame, "d_t E0 vanishes; E1 is undefined");
    Normalisation n{1.0 / speed, {}};
    for (int a = 0; a < 3; ++a) n.ds[a] = -n.s * n.s * n.s * real_inner(jet.second[a][0], Et);
    return n;
}

AmbientVector along(const std::array<AmbientVector, 3>& partials, const Coords& X) {
    AmbientVector out = AmbientVector::zero(partials[0].dim());
    for (int a = 0; a < 3; ++a) out += X[a] * partials[a];
    return out;
}

}  // namespace

AmbientVector assemble_point(double t, double b1, double lam2, const AmbientVector& W) {
    const double r = std::sqrt(1.0 + b1 * b1 + lam2 * lam2);
    AmbientVector E(4);
    E[0] = Complex(-b1, lam2) * cis(t) / r;
    const Complex phase = cis(t / 3.0) / r;
    for (std::size_t k = 0; k < 3; ++k) E[k + 1] = phase * W[k];
    return E;
}

ConstructedImmersion build_E0(const HorizontalSurface& surface,
                              std::shared_ptr<const ProfileTrajectory> trajectory) {
    if (!trajectory || trajectory->samples.size() < 2) {
        throw Error(ErrorKind::Usage, "build_E0: trajectory must contain at least two knots");
    }
    if (surface.map.domain_dim != 2 || surface.map.codomain_dim != 3) {
        throw Error(ErrorKind::Usage, "build_E0: surface must map (u, v) into C^3");
    }
    ConstructedImmersion im;
    im.surface = surface;
    im.trajectory = trajectory;
    im.map.domain_dim = 3;
    im.map.codomain_dim = 4;
    im.map.domain_box = {Interval{trajectory->t_min(), trajectory->t_max()},
                         surface.map.domain_box[0], surface.map.domain_box[1]};
    im.map.evaluator = [traj = trajectory, W = surface.map](const Coords& p) {
        const ProfileState st = dense_eval(*traj, p[0]);
        return assemble_point(p[0], st.b1, st.lam2, W({p[1], p[2], 0.0}));
    };
    return im;
}

AmbientVector compute_V(const JetPoint& jet, const ProfileState& profile) {
    const ProfileTerms pt = profile_terms(profile);
    const Normalisation n = normalisation(jet);
    return (-pt.beta * jet.value + n.s * jet.first[0]) / pt.r;
}

AmbientVector compute_W_from_immersion(const JetPoint& jet, const ProfileState& profile) {
    const ProfileTerms pt = profile_terms(profile);
    const Normalisation n = normalisation(jet);
    const Complex phase = cis(-profile.t / 3.0);
    return (phase / pt.r) * (jet.value - (pt.gamma * n.s) * jet.first[0]);
}

double VWResiduals::max_derivative() const {
    return std::max({dV_e1, dV_lateral, dW_e1, dW_lateral});
}

VWResiduals vw_residuals(const JetPoint& jet, const ProfileState& profile,
                         const TangentFrame& frame, const AmbientVector& surface_value) {
    const ProfileTerms pt = profile_terms(profile);
    const Normalisation n = normalisation(jet);
    const AmbientVector& E = jet.value;
    const AmbientVector& Et = jet.first[0];
    const AmbientVector V = compute_V(jet, profile);
    const AmbientVector W = compute_W_from_immersion(jet, profile);
    const Complex phase = cis(-profile.t / 3.0);
    const Complex i(0.0, 1.0);

    std::array<AmbientVector, 3> dV;
    std::array<AmbientVector, 3> dW;
    for (int a = 0; a < 3; ++a) {
        const bool is_t = (a == 0);
        const double dr = is_t ? pt.dr_dt : 0.0;
        const Complex dbeta = is_t ? pt.dbeta_dt : Complex(0.0);
        const Complex dgamma = is_t ? pt.dgamma_dt : Complex(0.0);
        const double dtheta = is_t ? -1.0 / 3.0 : 0.0;
        const AmbientVector& Ea = jet.first[a];
        const AmbientVector& Eat = jet.second[a][0];

        dV[a] = (-dbeta * E - pt.beta * Ea + n.ds[a] * Et + n.s * Eat) / pt.r - (dr / pt.r) * V;
        dW[a] = (i * dtheta) * W +
                (phase / pt.r) * (Ea - (dgamma * n.s) * Et - (pt.gamma * n.ds[a]) * Et -
                                  (pt.gamma * n.s) * Eat) -
                (dr / pt.r) * W;
    }

    VWResiduals out;
    out.v_unit = std::abs(V.norm() - 1.0);
    for (std::size_t k = 1; k < 4; ++k) out.v_tail = std::max(out.v_tail, std::abs(V[k]));
    out.dV_e1 = (along(dV, frame.coeffs[0]) - (3.0 * profile.lam2) * V.J()).norm();
    out.dW_e1 = along(dW, frame.coeffs[0]).norm();
    for (int j = 1; j < 3; ++j) {
        out.dV_lateral = std::max(out.dV_lateral, along(dV, frame.coeffs[j]).norm());
        const AmbientVector target = (pt.r * phase) * frame.vectors.vectors[j];
        out.dW_lateral = std::max(out.dW_lateral, (along(dW, frame.coeffs[j]) - target).norm());
    }
    out.w_orthogonal = std::max(std::abs(real_inner(W, V)), std::abs(real_inner(W, V.J())));
    AmbientVector expected(4);
    for (std::size_t k = 0; k < 3; ++k) expected[k + 1] = surface_value[k];
    out.w_roundtrip = (W - expected).norm();
    return out;
}

ParametricMap rp3_reference_lift() {
    ParametricMap m;
    m.domain_dim = 3;
    m.codomain_dim = 4;
    m.domain_box = {Interval{0.4, 1.4}, Interval{0.4, 1.4}, Interval{0.0, 2.0 * std::numbers::pi}};
    m.evaluator = [](const Coords& p) {
        const double sc = std::sin(p[0]);
        const double st = std::sin(p[1]);
        return AmbientVector{std::cos(p[0]), sc * std::cos(p[1]), sc * st * std::cos(p[2]),
                             sc * st * std::sin(p[2])};
    };
    return m;
}

ParametricMap perturbed_immersion(const ConstructedImmersion& immersion, double eps) {
    ParametricMap m = immersion.map;
    m.evaluator = [base = immersion.map, eps](const Coords& p) {
        AmbientVector E = base(p);
        E[0] *= cis(eps * p[0]);
        return E;
    };
    return m;
}

}  // namespace chen
