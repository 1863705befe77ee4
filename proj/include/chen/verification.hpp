#pragma once

// Command implementations behind the chen_verify CLI: profile integration,
// sampled immersion export, the verification sweep and report tabulation.
// Everything here is deterministic for a fixed RunConfig apart from the
// report timestamp.

#include <array>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chen/assembly.hpp"

namespace chen {

inline constexpr const char* kToolVersion = "chen-equality 1.0.0";

enum class ExitCode : int {
    Pass = 0,
    VerificationFailure = 1,
    UsageError = 2,
    NumericalFailure = 3,
};

enum class SurfaceChoice { Clifford, GeodesicSphere, LatitudeControl, TiltedControl };
enum class RunCase { Construction, Rp3Reference, Perturbed };

SurfaceChoice parse_surface(const std::string& name);
std::string to_string(SurfaceChoice s);
RunCase parse_case(const std::string& name);
std::string to_string(RunCase c);
HorizontalSurface make_surface(SurfaceChoice s);

class Tolerances {
public:
    Tolerances();
    double operator[](const std::string& key) const;
    /// Throws Error(Usage) for unknown keys or non-positive values.
    void set(const std::string& key, double value);
    /// Parses "KEY=VAL".
    void apply(const std::string& assignment);
    const std::map<std::string, double>& values() const noexcept { return values_; }

private:
    std::map<std::string, double> values_;
};

struct RunConfig {
    SurfaceChoice surface = SurfaceChoice::Clifford;
    RunCase run_case = RunCase::Construction;
    double b1_0 = 0.0;
    double lam2_0 = 0.5;
    double t0 = 0.0;
    double t1 = 0.5;
    double ode_step = 1e-3;
    std::array<std::size_t, 3> grid{3, 3, 3};
    /// First-partial step; second partials use fd_step * 10^0.5.
    double fd_step = 1e-3;
    Tolerances tolerances;
    std::optional<std::filesystem::path> out;

    /// Throws Error(Usage) on a violated invariant.
    void validate() const;
    JetConfig jet_config() const;
    nlohmann::json to_json() const;
};

/// "TxUxV" -> three counts, each >= 2.
std::array<std::size_t, 3> parse_grid(const std::string& text);

// ---------------------------------------------------------------------------

struct OdeOutcome {
    ProfileTrajectory trajectory;
    /// |forward-then-backward endpoint - initial state|; absent if the
    /// forward run stopped early.
    std::optional<double> reversal_error;
    ExitCode exit = ExitCode::Pass;
    std::string summary;
};

OdeOutcome run_ode(const RunConfig& config);

struct BuildOutcome {
    nlohmann::json document;
    ExitCode exit = ExitCode::Pass;
};

BuildOutcome run_build(const RunConfig& config);

struct SampleFailure {
    std::string kind;
    std::string message;
};

struct SampleRecord {
    std::size_t index = 0;
    Coords point{};
    std::optional<ProfileState> profile;
    double unit_norm = 0.0;
    std::optional<double> horizontality;
    std::optional<ChenReport> chen;
    std::optional<StructureResiduals> structure;
    std::optional<VWResiduals> vw;
    std::optional<HorizontalityResidual> surface_horizontality;
    std::optional<double> surface_mean_curvature;
    std::optional<SampleFailure> failure;
};

struct VerificationReport {
    RunConfig config;
    std::optional<ProfileTrajectory> trajectory;
    std::vector<SampleRecord> samples;
    std::map<std::string, double> maxima;
    std::map<std::string, bool> pass;
    std::vector<std::string> failures;

    bool all_pass() const;
    ExitCode exit_code() const;
    /// `timestamp` is the only field that varies between identical runs.
    nlohmann::json to_json(const std::string& timestamp) const;
};

VerificationReport run_verify(const RunConfig& config);

/// Recomputes the maxima block from a serialized sample list.
std::map<std::string, double> maxima_from_samples(const nlohmann::json& samples);

struct ReportRow {
    std::string file;
    std::string run_case;
    double lam2_min = 0.0, lam2_max = 0.0;
    double H_sq_min = 0.0, H_sq_max = 0.0;
    double delta_min = 0.0, delta_max = 0.0;
    double improved_gap_max = 0.0;
    double classical_slack_min = 0.0, classical_slack_max = 0.0;
    /// max |classical_slack - 3 lam2^2| over samples
    double slack_check = 0.0;
    bool pass = false;
};

/// Reads report files, sorted by path. Throws Error(Parse) naming the path
/// and, where relevant, the record index.
std::vector<ReportRow> run_report(std::vector<std::filesystem::path> files);
void write_report_table(const std::vector<ReportRow>& rows, std::ostream& out);
void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out);

std::string utc_timestamp();

}  // namespace chen
