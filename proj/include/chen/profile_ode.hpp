#pragma once

// The profile system for (b1, lam2) along the circle parameter t:
//
//   db1/dt   = -(1 + 3 lam2^2 + b1^2) / (3 lam2)
//   dlam2/dt = (2/3) b1
//
// with first integral I = lam2 (1 + lam2^2 + b1^2). Every solution leaves
// the non-minimal region in finite time in both directions (b1 decreases
// monotonically and lam2 = I / (1 + lam2^2 + b1^2) tends to zero), so
// trajectories carry the status under which integration stopped.

#include <iosfwd>
#include <string>
#include <vector>

#include "chen/errors.hpp"

namespace chen {

struct ProfileState {
    double t = 0.0;
    double b1 = 0.0;
    double lam2 = 0.0;
};

struct ProfileRate {
    double db1_dt = 0.0;
    double dlam2_dt = 0.0;
};

inline constexpr double kSingularityThreshold = 1e-6;

/// Throws Error(Singularity) when |lam2| <= threshold.
ProfileRate rhs(const ProfileState& state, double singularity_threshold = kSingularityThreshold);

double first_integral(const ProfileState& state);

struct IntegrationControl {
    /// Nominal step. Every step is checked against two half steps; knots sit
    /// at half-step spacing.
    double step = 1e-3;
    /// Step-doubling discrepancy (relative for lam2, relative to max(|b1|,1)
    /// for b1) above which the step is halved. Infinity gives plain fixed-step RK4.
    double local_tolerance = 1e-13;
    double singularity_threshold = kSingularityThreshold;
    double b1_limit = 1e6;
    double min_step = 1e-12;
};

enum class TerminationStatus {
    Completed,
    LambdaBelowThreshold,
    B1BlowUp,
    StepUnderflow,
};

const char* to_string(TerminationStatus status);

struct ProfileTrajectory {
    /// Strictly increasing in t, whichever direction was integrated.
    std::vector<ProfileState> samples;
    std::vector<ProfileRate> rates;
    double first_integral_value = 0.0;
    /// max over samples of |I - I(t0)| / |I(t0)|
    double max_drift = 0.0;
    TerminationStatus status = TerminationStatus::Completed;
    /// The input had lam2 < 0 and was replaced by (-b1, -lam2), which is a
    /// symmetry of the system.
    bool sign_flipped = false;
    double t_start = 0.0;
    double t_requested = 0.0;

    double t_min() const { return samples.front().t; }
    double t_max() const { return samples.back().t; }
    bool completed() const { return status == TerminationStatus::Completed; }
    const ProfileState& start_state() const;
    /// State at the far end of the integration (t_requested when completed).
    const ProfileState& end_state() const;
};

class DivergenceError : public Error {
public:
    DivergenceError(const ProfileState& last_valid, const std::string& what)
        : Error(ErrorKind::Divergence, what), last_valid_(last_valid) {}
    const ProfileState& last_valid() const noexcept { return last_valid_; }

private:
    ProfileState last_valid_;
};

ProfileTrajectory integrate(ProfileState init, double t_end, const IntegrationControl& control = {});

/// Cubic Hermite interpolation between bracketing knots. Throws Error(Range)
/// outside the trajectory span.
ProfileState dense_eval(const ProfileTrajectory& trajectory, double t);

/// `t,b1,lam2,first_integral`, 17 significant digits.
void write_csv(const ProfileTrajectory& trajectory, std::ostream& out);

}  // namespace chen
