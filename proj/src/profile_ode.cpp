#include "chen/profile_ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

namespace chen {

const char* to_string(TerminationStatus status) {
    switch (status) {
        case TerminationStatus::Completed: return "completed";
        case TerminationStatus::LambdaBelowThreshold: return "lam2-below-threshold";
        case TerminationStatus::B1BlowUp: return "b1-blow-up";
        case TerminationStatus::StepUnderflow: return "step-underflow";
    }
    return "unknown";
}

ProfileRate rhs(const ProfileState& s, double singularity_threshold) {
    if (!(std::abs(s.lam2) > singularity_threshold)) {
        std::ostringstream msg;
        msg << "profile rhs: |lam2| = " << std::abs(s.lam2) << " is at or below "
            << singularity_threshold << " (minimal locus)";
        throw Error(ErrorKind::Singularity, msg.str());
    }
    return {-(1.0 + 3.0 * s.lam2 * s.lam2 + s.b1 * s.b1) / (3.0 * s.lam2), 2.0 * s.b1 / 3.0};
}

double first_integral(const ProfileState& s) {
    return s.lam2 * (1.0 + s.lam2 * s.lam2 + s.b1 * s.b1);
}

const ProfileState& ProfileTrajectory::start_state() const {
    return t_requested >= t_start ? samples.front() : samples.back();
}

const ProfileState& ProfileTrajectory::end_state() const {
    return t_requested >= t_start ? samples.back() : samples.front();
}

namespace {

struct Vec2 {
    double b1;
    double lam2;
};

// Stage evaluations only refuse a literal zero; the threshold is applied to
// accepted states.
std::optional<Vec2> raw_rhs(const Vec2& y) {
    if (y.lam2 == 0.0 || !std::isfinite(y.lam2) || !std::isfinite(y.b1)) return std::nullopt;
    Vec2 d{-(1.0 + 3.0 * y.lam2 * y.lam2 + y.b1 * y.b1) / (3.0 * y.lam2), 2.0 * y.b1 / 3.0};
    if (!std::isfinite(d.b1) || !std::isfinite(d.lam2)) return std::nullopt;
    return d;
}

std::optional<Vec2> rk4_step(const Vec2& y, double h) {
    const auto k1 = raw_rhs(y);
    if (!k1) return std::nullopt;
    const auto k2 = raw_rhs({y.b1 + 0.5 * h * k1->b1, y.lam2 + 0.5 * h * k1->lam2});
    if (!k2) return std::nullopt;
    const auto k3 = raw_rhs({y.b1 + 0.5 * h * k2->b1, y.lam2 + 0.5 * h * k2->lam2});
    if (!k3) return std::nullopt;
    const auto k4 = raw_rhs({y.b1 + h * k3->b1, y.lam2 + h * k3->lam2});
    if (!k4) return std::nullopt;
    Vec2 out{y.b1 + h / 6.0 * (k1->b1 + 2.0 * k2->b1 + 2.0 * k3->b1 + k4->b1),
             y.lam2 + h / 6.0 * (k1->lam2 + 2.0 * k2->lam2 + 2.0 * k3->lam2 + k4->lam2)};
    if (!std::isfinite(out.b1) || !std::isfinite(out.lam2)) return std::nullopt;
    return out;
}

}  // namespace

ProfileTrajectory integrate(ProfileState init, double t_end, const IntegrationControl& control) {
    if (!(control.step > 0.0) || !(control.min_step > 0.0)) {
        throw Error(ErrorKind::Usage, "integrate: steps must be positive");
    }
    if (!std::isfinite(t_end) || t_end == init.t) {
        throw Error(ErrorKind::Usage, "integrate: t_end must be finite and differ from init.t");
    }
    if (!(std::abs(init.lam2) > control.singularity_threshold)) {
        throw Error(ErrorKind::Singularity, "integrate: initial lam2 lies on the minimal locus");
    }

    ProfileTrajectory traj;
    traj.t_start = init.t;
    traj.t_requested = t_end;
    if (init.lam2 < 0.0) {
        init.b1 = -init.b1;
        init.lam2 = -init.lam2;
        traj.sign_flipped = true;
    }
    traj.first_integral_value = first_integral(init);

    const double dir = t_end > init.t ? 1.0 : -1.0;
    std::vector<ProfileState> states{init};
    ProfileState cur = init;
    double h = control.step;

    auto accept = [&](const Vec2& y, double t) -> bool {
        const ProfileState s{t, y.b1, y.lam2};
        if (std::abs(s.lam2) < control.singularity_threshold) {
            traj.status = TerminationStatus::LambdaBelowThreshold;
            return false;
        }
        if (std::abs(s.b1) > control.b1_limit) {
            traj.status = TerminationStatus::B1BlowUp;
            return false;
        }
        states.push_back(s);
        cur = s;
        return true;
    };

    bool running = true;
    while (running && dir * (t_end - cur.t) > 0.0) {
        const double remaining = std::abs(t_end - cur.t);
        double hs = (remaining <= h * (1.0 + 1e-9)) ? remaining : h;
        const Vec2 y{cur.b1, cur.lam2};
        bool saw_nonfinite = false;
        for (;;) {
            if (hs < control.min_step) {
                if (saw_nonfinite) {
                    throw DivergenceError(cur, "integrate: non-finite state near t = " +
                                                   std::to_string(cur.t));
                }
                traj.status = TerminationStatus::StepUnderflow;
                running = false;
                break;
            }
            const auto full = rk4_step(y, dir * hs);
            const auto half = rk4_step(y, dir * hs / 2);
            const auto twice = half ? rk4_step(*half, dir * hs / 2) : std::nullopt;
            if (!full || !half || !twice) {
                saw_nonfinite = true;
                hs /= 2;
                continue;
            }
            const double err_b1 = std::abs(full->b1 - twice->b1) / std::max(std::abs(twice->b1), 1.0);
            const double err_lam = std::abs(full->lam2 - twice->lam2) / std::abs(twice->lam2);
            if (std::max(err_b1, err_lam) > control.local_tolerance) {
                hs /= 2;
                continue;
            }
            const bool last = hs == remaining;
            if (!accept(*half, cur.t + dir * hs / 2) ||
                !accept(*twice, last ? t_end : cur.t + dir * hs / 2)) {
                running = false;
            }
            break;
        }
        h = std::min(control.step, 2.0 * hs);
    }

    if (dir < 0.0) std::reverse(states.begin(), states.end());
    traj.samples = std::move(states);
    traj.rates.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        traj.rates.push_back(rhs(s, control.singularity_threshold));
        traj.max_drift = std::max(traj.max_drift, std::abs(first_integral(s) - traj.first_integral_value) /
                                                      std::abs(traj.first_integral_value));
    }
    return traj;
}

ProfileState dense_eval(const ProfileTrajectory& traj, double t) {
    if (traj.samples.empty() || !(t >= traj.t_min() && t <= traj.t_max())) {
        std::ostringstream msg;
        msg << "dense_eval: t = " << t << " outside trajectory span";
        if (!traj.samples.empty()) msg << " [" << traj.t_min() << ", " << traj.t_max() << "]";
        throw Error(ErrorKind::Range, msg.str());
    }
    const auto& s = traj.samples;
    auto it = std::lower_bound(s.begin(), s.end(), t,
                               [](const ProfileState& a, double x) { return a.t < x; });
    std::size_t hi = static_cast<std::size_t>(it - s.begin());
    if (s[hi].t == t) return s[hi];
    const std::size_t lo = hi - 1;

    const double h = s[hi].t - s[lo].t;
    const double x = (t - s[lo].t) / h;
    const double h00 = (1 + 2 * x) * (1 - x) * (1 - x);
    const double h10 = x * (1 - x) * (1 - x);
    const double h01 = x * x * (3 - 2 * x);
    const double h11 = x * x * (x - 1);
    const auto& r0 = traj.rates[lo];
    const auto& r1 = traj.rates[hi];
    return {t, h00 * s[lo].b1 + h * h10 * r0.db1_dt + h01 * s[hi].b1 + h * h11 * r1.db1_dt,
            h00 * s[lo].lam2 + h * h10 * r0.dlam2_dt + h01 * s[hi].lam2 + h * h11 * r1.dlam2_dt};
}

void write_csv(const ProfileTrajectory& traj, std::ostream& out) {
    out << "t,b1,lam2,first_integral\n";
    char line[128];
    for (const auto& s : traj.samples) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", s.t, s.b1, s.lam2,
                      first_integral(s));
        out << line;
    }
}

}  // namespace chen
