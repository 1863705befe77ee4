// Acceptance suite: one PASS/FAIL line per exit criterion, tolerances fixed
// below. Exit status is non-zero if any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "chen/verification.hpp"

using namespace chen;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double max_over(const VerificationReport& r, F f) {
    double m = 0.0;
    for (const auto& s : r.samples) m = std::max(m, f(s));
    return m;
}

Outcome first_integral_conservation() {
    constexpr int kStates = 10;
    constexpr double kSpan = 2.0;
    constexpr double kStep = 1e-3;
    constexpr double kDrift = 1e-10;
    constexpr double kRuntime = 1.0;

    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> b1(-2.0, 2.0), lam2(0.1, 2.0);
    IntegrationControl control;
    control.step = kStep;

    const auto t0 = std::chrono::steady_clock::now();
    int completed = 0;
    double worst_drift = 0.0;
    std::string spans;
    for (int n = 0; n < kStates; ++n) {
        const ProfileState init{0.0, b1(rng), lam2(rng)};
        const auto traj = integrate(init, kSpan, control);
        worst_drift = std::max(worst_drift, traj.max_drift);
        if (traj.completed()) ++completed;
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s(%.3f,%.3f)->%.3f", n ? " " : "", init.b1, init.lam2, traj.t_max());
        spans += buf;
    }
    const double elapsed = seconds_since(t0);
    Outcome o;
    o.pass = completed == kStates && worst_drift < kDrift && elapsed < kRuntime;
    o.detail = std::to_string(completed) + "/" + std::to_string(kStates) + " states reach t = 2" +
               fmt("; max drift on accepted knots %.3g", worst_drift) + fmt("; %.3f s", elapsed) +
               "; reached t per (b1,lam2): " + spans;
    return o;
}

Outcome chain_rule_consistency() {
    constexpr int kStates = 100;
    constexpr double kRel = 4 * 2.220446049250313e-16;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> b1(-5.0, 5.0), lam2(0.05, 5.0), sign(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < kStates; ++n) {
        ProfileState s{0.0, b1(rng), lam2(rng)};
        if (sign(rng) < 0) s.lam2 = -s.lam2;
        const double e1_t = 3.0 * s.lam2;
        const double e1_lam2 = 2.0 * s.lam2 * s.b1;
        const double e1_b1 = -(1.0 + s.b1 * s.b1 + 3.0 * s.lam2 * s.lam2);
        const auto r = rhs(s);
        worst = std::max(worst, std::abs(r.dlam2_dt - e1_lam2 / e1_t) / std::max(1.0, std::abs(r.dlam2_dt)));
        worst = std::max(worst, std::abs(r.db1_dt - e1_b1 / e1_t) / std::max(1.0, std::abs(r.db1_dt)));
    }
    return {worst <= kRel, fmt("max relative deviation %.3g over 100 states", worst)};
}

Outcome forward_direction(const VerificationReport& r, double elapsed) {
    constexpr double kUnitNorm = 1e-12, kHoriz = 1e-6, kSym = 1e-5, kRatio = 1e-4, kCond = 1e-4,
                     kStruct = 1e-4, kRuntime = 30.0;
    const bool ok_samples = std::none_of(r.samples.begin(), r.samples.end(),
                                         [](const SampleRecord& s) { return s.failure.has_value(); });
    if (!ok_samples) return {false, "hard failure at a sample point"};
    const double unit = max_over(r, [](const SampleRecord& s) { return s.unit_norm; });
    const double horiz = max_over(r, [](const SampleRecord& s) { return *s.horizontality; });
    const double sym = max_over(r, [](const SampleRecord& s) { return s.chen->c_symmetry; });
    const double ratio = max_over(r, [](const SampleRecord& s) {
        return s.chen->minimal ? INFINITY : std::abs(s.chen->lambda1 / s.chen->lambda2 - 4.0);
    });
    const double cond = max_over(r, [](const SampleRecord& s) { return s.chen->conditions.max(); });
    const double eq5 = max_over(r, [](const SampleRecord& s) { return s.structure->eq_e1e1; });
    const double eq6 = max_over(r, [](const SampleRecord& s) { return s.structure->eq_eje1; });
    Outcome o;
    o.pass = r.samples.size() == 27 && unit <= kUnitNorm && horiz < kHoriz && sym < kSym && ratio < kRatio &&
             cond < kCond && eq5 < kStruct && eq6 < kStruct && elapsed < kRuntime;
    o.detail = fmt("unit %.2g", unit) + fmt(", horizontality %.2g", horiz) + fmt(", C-symmetry %.2g", sym) +
               fmt(", |l1/l2-4| %.2g", ratio) + fmt(", conditions %.2g", cond) + fmt(", D_E1 E1 %.2g", eq5) +
               fmt(", D_Ej E1 %.2g", eq6) + fmt(", %.2f s", elapsed);
    return o;
}

Outcome converse_direction(const VerificationReport& r) {
    constexpr double kGap = 1e-4, kH = 1e-4, kSlack = 1e-4;
    double gap = 0.0, herr = 0.0, serr = 0.0, smin = INFINITY;
    for (const auto& s : r.samples) {
        if (!s.chen || !s.profile) return {false, "sample without report"};
        const double lam2 = s.profile->lam2;
        gap = std::max(gap, std::abs(s.chen->delta - 2.0 - 1.5 * s.chen->H_norm_sq));
        herr = std::max(herr, std::abs(std::sqrt(s.chen->H_norm_sq) - 2.0 * lam2));
        serr = std::max(serr, std::abs(s.chen->classical_slack - 3.0 * lam2 * lam2));
        smin = std::min(smin, s.chen->classical_slack);
    }
    Outcome o;
    o.pass = gap < kGap && herr < kH && serr < kSlack && smin > 0.0;
    o.detail = fmt("|delta-2-1.5|H|^2| %.2g", gap) + fmt(", ||H|-2lam2| %.2g", herr) +
               fmt(", |slack-3lam2^2| %.2g", serr) + fmt(", min slack %.3g", smin);
    return o;
}

Outcome minimal_plane(const VerificationReport& r) {
    constexpr double kAlign = 1e-4;
    double worst = 0.0;
    for (const auto& s : r.samples) {
        if (!s.chen) return {false, "sample without report"};
        worst = std::max(worst, 1.0 - s.chen->min_plane_alignment);
    }
    return {worst < kAlign, fmt("max 1-|<u,e1>| %.2g", worst)};
}

Outcome vw_decomposition(const VerificationReport& r) {
    constexpr double kDeriv = 1e-4, kRoundTrip = 1e-5, kSurfHoriz = 1e-6, kSurfMin = 1e-5;
    const double dv1 = max_over(r, [](const SampleRecord& s) { return s.vw->dV_e1; });
    const double dvj = max_over(r, [](const SampleRecord& s) { return s.vw->dV_lateral; });
    const double dw1 = max_over(r, [](const SampleRecord& s) { return s.vw->dW_e1; });
    const double rt = max_over(r, [](const SampleRecord& s) { return s.vw->w_roundtrip; });
    const double wh = max_over(r, [](const SampleRecord& s) { return s.surface_horizontality->horizontality; });
    const double wm = max_over(r, [](const SampleRecord& s) { return *s.surface_mean_curvature; });
    Outcome o;
    o.pass = dv1 < kDeriv && dvj < kDeriv && dw1 < kDeriv && rt < kRoundTrip && wh < kSurfHoriz && wm < kSurfMin;
    o.detail = fmt("|D_E1 V-3lam2 iV| %.2g", dv1) + fmt(", |D_Ej V| %.2g", dvj) + fmt(", |D_E1 W| %.2g", dw1) +
               fmt(", W round trip %.2g", rt) + fmt(", W horizontality %.2g", wh) +
               fmt(", W mean curvature %.2g", wm);
    return o;
}

Outcome totally_geodesic() {
    constexpr double kC = 1e-6, kRef = 1e-5, kH = 1e-10;
    RunConfig c;
    c.run_case = RunCase::Rp3Reference;
    const auto r = run_verify(c);
    double cmax = 0, tau = 0, infk = 0, delta = 0, h = 0, gap = 0;
    bool minimal = true;
    for (const auto& s : r.samples) {
        if (!s.chen) return {false, "hard failure at a sample point"};
        cmax = std::max(cmax, s.chen->c_max_abs);
        tau = std::max(tau, std::abs(s.chen->tau - 3.0));
        infk = std::max(infk, std::abs(s.chen->inf_K - 1.0));
        delta = std::max(delta, std::abs(s.chen->delta - 2.0));
        h = std::max(h, s.chen->H_norm_sq);
        gap = std::max(gap, std::abs(s.chen->improved_gap));
        minimal = minimal && s.chen->minimal;
    }
    Outcome o;
    o.pass = cmax < kC && tau < kRef && infk < kRef && delta < kRef && h < kH && gap < kRef && minimal;
    o.detail = fmt("|C| %.2g", cmax) + fmt(", |tau-3| %.2g", tau) + fmt(", |infK-1| %.2g", infk) +
               fmt(", |delta-2| %.2g", delta) + fmt(", |H|^2 %.2g", h) + fmt(", gap %.2g", gap);
    return o;
}

Outcome closed_form_identity() {
    constexpr int kDraws = 1000;
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> d(-3.0, 3.0);
    const Vec3 e2{0, 1, 0}, e3{0, 0, 1};
    double worst = 0.0;
    for (int n = 0; n < kDraws; ++n) {
        const double lam2 = d(rng), a = d(rng), b = d(rng);
        const auto R = curvature_tensor(CubicTensor::adapted_structure(lam2, a, b));
        const double v = scalar_tau(R) - sectional_curvature(R, e2, e3) - 1.5 * 4.0 * lam2 * lam2;
        worst = std::max(worst, std::abs(v - 2.0));
    }
    return {worst < kTol, fmt("max |tau - K(e2^e3) - 6 lam2^2 - 2| %.2g over 1000 draws", worst)};
}

int cli_status(const std::string& args) {
    const std::string cmd = std::string(CHEN_VERIFY_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome negative_controls() {
    RunConfig perturbed;
    perturbed.run_case = RunCase::Perturbed;
    RunConfig latitude;
    latitude.surface = SurfaceChoice::LatitudeControl;
    const auto rp = run_verify(perturbed);
    const auto rl = run_verify(latitude);
    const int cli_p = cli_status("verify --case perturbed --out /dev/null");
    const int cli_l = cli_status("verify --surface latitude_control --out /dev/null");
    const bool flagged_p = rp.exit_code() != ExitCode::Pass && !rp.pass.at("horizontality") && cli_p > 0;
    const bool flagged_l = rl.exit_code() != ExitCode::Pass && !rl.pass.at("surface_minimality") && cli_l > 0;
    Outcome o;
    o.pass = flagged_p && flagged_l;
    o.detail = "perturbed exit " + std::to_string(cli_p) + fmt(" (horizontality %.2g)", rp.maxima.at("horizontality")) +
               ", latitude control exit " + std::to_string(cli_l) +
               fmt(" (surface mean curvature %.3g)", rl.maxima.at("surface_minimality"));
    return o;
}

}  // namespace

int main() {
    report(1, "first-integral conservation", first_integral_conservation());
    report(2, "ODE chain-rule consistency", chain_rule_consistency());

    const auto t0 = std::chrono::steady_clock::now();
    RunConfig construction;
    const VerificationReport r = run_verify(construction);
    const double elapsed = seconds_since(t0);

    report(3, "forward direction on the Clifford construction", forward_direction(r, elapsed));
    report(4, "improved equality, strict classical inequality", converse_direction(r));
    report(5, "minimal sectional curvature plane", minimal_plane(r));
    report(6, "V/W decomposition", vw_decomposition(r));
    report(7, "totally geodesic reference", totally_geodesic());
    report(8, "closed-form equality identity", closed_form_identity());
    report(9, "negative controls", negative_controls());

    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
