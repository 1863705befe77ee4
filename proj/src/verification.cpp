#include "chen/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace chen {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

SurfaceChoice parse_surface(const std::string& name) {
    if (name == "clifford") return SurfaceChoice::Clifford;
    if (name == "geodesic_sphere") return SurfaceChoice::GeodesicSphere;
    if (name == "latitude_control") return SurfaceChoice::LatitudeControl;
    if (name == "tilted_control") return SurfaceChoice::TiltedControl;
    throw Error(ErrorKind::Usage, "unknown surface '" + name + "'");
}

std::string to_string(SurfaceChoice s) {
    switch (s) {
        case SurfaceChoice::Clifford: return "clifford";
        case SurfaceChoice::GeodesicSphere: return "geodesic_sphere";
        case SurfaceChoice::LatitudeControl: return "latitude_control";
        case SurfaceChoice::TiltedControl: return "tilted_control";
    }
    return "unknown";
}

RunCase parse_case(const std::string& name) {
    if (name == "construction") return RunCase::Construction;
    if (name == "rp3") return RunCase::Rp3Reference;
    if (name == "perturbed") return RunCase::Perturbed;
    throw Error(ErrorKind::Usage, "unknown case '" + name + "'");
}

std::string to_string(RunCase c) {
    switch (c) {
        case RunCase::Construction: return "construction";
        case RunCase::Rp3Reference: return "rp3";
        case RunCase::Perturbed: return "perturbed";
    }
    return "unknown";
}

HorizontalSurface make_surface(SurfaceChoice s) {
    switch (s) {
        case SurfaceChoice::Clifford: return clifford_surface();
        case SurfaceChoice::GeodesicSphere: return geodesic_sphere_surface();
        case SurfaceChoice::LatitudeControl: return latitude_control_surface();
        case SurfaceChoice::TiltedControl: return tilted_control_surface();
    }
    throw Error(ErrorKind::Usage, "unknown surface");
}

Tolerances::Tolerances()
    : values_{
          {"horizontality", 1e-6},
          {"c_symmetry", 1e-5},
          {"conditions", 1e-4},
          {"equality_gap", 1e-4},
          {"structure", 1e-4},
          {"t_rate", 1e-5},
          {"ode_drift", 1e-10},
          {"unit_norm", 1e-12},
          {"lambda_ratio", 1e-4},
          {"h_norm", 1e-4},
          {"classical_slack", 1e-4},
          {"min_plane", 1e-4},
          {"vw", 1e-4},
          {"v_tail", 1e-6},
          {"w_orthogonal", 1e-6},
          {"w_roundtrip", 1e-5},
          {"surface_horizontality", 1e-6},
          {"surface_minimality", 1e-5},
          {"cubic_zero", 1e-6},
          {"reference", 1e-5},
          {"minimal_h", 1e-10},
      } {}

double Tolerances::operator[](const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorKind::Usage, "unknown tolerance key '" + key + "'");
    return it->second;
}

void Tolerances::set(const std::string& key, double value) {
    const auto it = values_.find(key);
    if (it == values_.end()) throw Error(ErrorKind::Usage, "unknown tolerance key '" + key + "'");
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw Error(ErrorKind::Usage, "tolerance '" + key + "' must be a positive number");
    }
    it->second = value;
}

void Tolerances::apply(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorKind::Usage, "--tol expects KEY=VAL, got '" + assignment + "'");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw Error(ErrorKind::Usage, "--tol value for '" + key + "' is not a number: '" + text + "'");
    }
    set(key, value);
}

std::array<std::size_t, 3> parse_grid(const std::string& text) {
    std::array<std::size_t, 3> out{};
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
        const std::size_t next = (k < 2) ? text.find('x', pos) : text.size();
        if (next == std::string::npos) break;
        const std::string part = text.substr(pos, next - pos);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) {
            throw Error(ErrorKind::Usage, "--grid expects TxUxV with positive integers, got '" + text + "'");
        }
        out[k] = std::stoul(part);
        pos = next + 1;
        if (k == 2 && next != text.size()) break;
    }
    if (std::count(text.begin(), text.end(), 'x') != 2) {
        throw Error(ErrorKind::Usage, "--grid expects TxUxV, got '" + text + "'");
    }
    for (auto n : out) {
        if (n < 2) throw Error(ErrorKind::Usage, "--grid counts must be at least 2");
    }
    return out;
}

void RunConfig::validate() const {
    if (!std::isfinite(lam2_0) || lam2_0 == 0.0) {
        throw Error(ErrorKind::Usage, "--lam2 must be non-zero (lam2 = 0 is the minimal locus)");
    }
    if (!std::isfinite(b1_0) || !std::isfinite(t0) || !std::isfinite(t1) || t0 == t1) {
        throw Error(ErrorKind::Usage, "--t0 and --t1 must be finite and distinct");
    }
    if (!(ode_step > 0.0) || !(fd_step > 0.0)) {
        throw Error(ErrorKind::Usage, "--ode-step and --fd-step must be positive");
    }
    for (auto n : grid) {
        if (n < 2) throw Error(ErrorKind::Usage, "--grid counts must be at least 2");
    }
}

JetConfig RunConfig::jet_config() const {
    JetConfig jc;
    jc.first_step = fd_step;
    jc.second_step = fd_step * std::sqrt(10.0);
    jc.richardson = true;
    return jc;
}

json RunConfig::to_json() const {
    json j;
    j["surface"] = to_string(surface);
    j["case"] = to_string(run_case);
    j["b1"] = b1_0;
    j["lam2"] = lam2_0;
    j["t0"] = t0;
    j["t1"] = t1;
    j["ode_step"] = ode_step;
    j["grid"] = {grid[0], grid[1], grid[2]};
    j["fd_step"] = fd_step;
    j["tolerances"] = tolerances.values();
    return j;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------------------
// ode

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

ProfileTrajectory integrate_profile(const RunConfig& config) {
    IntegrationControl control;
    control.step = config.ode_step;
    return integrate({config.t0, config.b1_0, config.lam2_0}, config.t1, control);
}

}  // namespace

OdeOutcome run_ode(const RunConfig& config) {
    config.validate();
    OdeOutcome out;
    out.trajectory = integrate_profile(config);
    const ProfileTrajectory& traj = out.trajectory;

    std::ostringstream s;
    s << "status: " << to_string(traj.status) << "\n";
    s << "span reached: [" << fmt(traj.t_min()) << ", " << fmt(traj.t_max()) << "] of requested ["
      << fmt(std::min(config.t0, config.t1)) << ", " << fmt(std::max(config.t0, config.t1)) << "]\n";
    s << "knots: " << traj.samples.size() << "\n";
    s << "first integral: " << fmt(traj.first_integral_value) << "\n";
    s << "max relative drift: " << fmt(traj.max_drift) << " (tolerance "
      << fmt(config.tolerances["ode_drift"]) << ")\n";
    if (traj.sign_flipped) s << "note: lam2 < 0 at t0; integrated the mirrored state (-b1, -lam2)\n";

    if (traj.completed()) {
        IntegrationControl control;
        control.step = config.ode_step;
        const ProfileTrajectory back = integrate(traj.end_state(), config.t0, control);
        if (back.completed()) {
            const ProfileState& a = back.end_state();
            const ProfileState& b = traj.start_state();
            out.reversal_error = std::max(std::abs(a.b1 - b.b1), std::abs(a.lam2 - b.lam2));
            s << "reversal endpoint error: " << fmt(*out.reversal_error) << "\n";
        }
    }

    if (!traj.completed()) {
        s << "integration stopped early at t = " << fmt(traj.end_state().t) << "\n";
        out.exit = ExitCode::NumericalFailure;
    } else if (!(traj.max_drift <= config.tolerances["ode_drift"])) {
        out.exit = ExitCode::VerificationFailure;
    }
    out.summary = s.str();
    return out;
}

// ---------------------------------------------------------------------------
// Shared helpers for build and verify

namespace {

struct Target {
    ParametricMap map;
    std::optional<ConstructedImmersion> immersion;
    std::shared_ptr<const ProfileTrajectory> trajectory;
};

Target make_target(const RunConfig& config) {
    Target target;
    if (config.run_case == RunCase::Rp3Reference) {
        target.map = rp3_reference_lift();
        return target;
    }
    auto traj = std::make_shared<const ProfileTrajectory>(integrate_profile(config));
    target.trajectory = traj;
    target.immersion = build_E0(make_surface(config.surface), traj);
    target.map = config.run_case == RunCase::Perturbed ? perturbed_immersion(*target.immersion)
                                                       : target.immersion->map;
    return target;
}

std::vector<Coords> sample_points(const RunConfig& config, const ParametricMap& map) {
    return interior_grid(map.domain_box, {config.grid[0], config.grid[1], config.grid[2]});
}

json coords_json(const Coords& p) { return json::array({p[0], p[1], p[2]}); }

}  // namespace

BuildOutcome run_build(const RunConfig& config) {
    config.validate();
    BuildOutcome out;
    Target target = make_target(config);
    const JetConfig jc = config.jet_config();

    json records = json::array();
    double unit_max = 0.0;
    double horiz_max = 0.0;
    for (const Coords& p : sample_points(config, target.map)) {
        const AmbientVector E = target.map(p);
        unit_max = std::max(unit_max, std::abs(E.norm_sq() - 1.0));
        horiz_max = std::max(horiz_max, horizontality_residual(jet_at(target.map, p, jc)));
        records.push_back({{"t", p[0]}, {"u", p[1]}, {"v", p[2]}, {"E0", E.to_real()}});
    }

    json meta;
    meta["records"] = records.size();
    meta["unit_norm_max_deviation"] = unit_max;
    meta["horizontality_max_residual"] = horiz_max;
    if (target.trajectory) {
        meta["trajectory_status"] = to_string(target.trajectory->status);
        meta["trajectory_span"] = {target.trajectory->t_min(), target.trajectory->t_max()};
        meta["first_integral_drift"] = target.trajectory->max_drift;
    }
    out.document = {{"version", kToolVersion},
                    {"config", config.to_json()},
                    {"metadata", meta},
                    {"records", records}};
    if (target.trajectory && !target.trajectory->completed()) out.exit = ExitCode::NumericalFailure;
    return out;
}

// ---------------------------------------------------------------------------
// verify

bool VerificationReport::all_pass() const {
    return std::all_of(pass.begin(), pass.end(), [](const auto& kv) { return kv.second; });
}

ExitCode VerificationReport::exit_code() const {
    const auto ode = pass.find("ode_completed");
    if (ode != pass.end() && !ode->second) return ExitCode::NumericalFailure;
    return all_pass() ? ExitCode::Pass : ExitCode::VerificationFailure;
}

namespace {

json sample_json(const SampleRecord& r) {
    json j;
    j["index"] = r.index;
    j["point"] = coords_json(r.point);
    j["unit_norm"] = r.unit_norm;
    if (r.horizontality) j["horizontality"] = *r.horizontality;
    if (r.profile) j["profile"] = {{"t", r.profile->t}, {"b1", r.profile->b1}, {"lam2", r.profile->lam2}};
    if (r.chen) {
        const ChenReport& c = *r.chen;
        j["chen"] = {
            {"tau", c.tau},
            {"inf_K", c.inf_K},
            {"min_plane_normal", {c.min_plane_normal[0], c.min_plane_normal[1], c.min_plane_normal[2]}},
            {"delta", c.delta},
            {"H_norm_sq", c.H_norm_sq},
            {"improved_rhs", c.improved_rhs},
            {"classical_rhs", c.classical_rhs},
            {"improved_gap", c.improved_gap},
            {"classical_slack", c.classical_slack},
            {"minimal", c.minimal},
            {"lambda1", c.lambda1},
            {"lambda2", c.lambda2},
            {"min_plane_alignment", c.min_plane_alignment},
            {"horizontality", c.horizontality},
            {"c_symmetry", c.c_symmetry},
            {"c_max_abs", c.c_max_abs},
            {"conditions",
             {{"off_diagonal", c.conditions.off_diagonal},
              {"ratio", c.conditions.ratio},
              {"traceless", c.conditions.traceless},
              {"trace", c.conditions.trace},
              {"redundancy_consistent", c.conditions.redundancy_consistent}}},
        };
    }
    if (r.structure) {
        j["structure"] = {{"eq_e1e1", r.structure->eq_e1e1},
                          {"eq_eje1", r.structure->eq_eje1},
                          {"t_rate", r.structure->t_rate},
                          {"lam2_lateral", r.structure->lam2_lateral}};
    }
    if (r.vw) {
        const VWResiduals& v = *r.vw;
        j["vw"] = {{"v_unit", v.v_unit},         {"v_tail", v.v_tail},
                   {"dV_e1", v.dV_e1},           {"dV_lateral", v.dV_lateral},
                   {"w_orthogonal", v.w_orthogonal}, {"w_roundtrip", v.w_roundtrip},
                   {"dW_e1", v.dW_e1},           {"dW_lateral", v.dW_lateral}};
    }
    if (r.surface_horizontality) {
        j["surface"] = {{"horizontality", r.surface_horizontality->horizontality},
                        {"unit_norm", r.surface_horizontality->unit_norm}};
        if (r.surface_mean_curvature) j["surface"]["mean_curvature"] = *r.surface_mean_curvature;
    }
    if (r.failure) j["failure"] = {{"kind", r.failure->kind}, {"message", r.failure->message}};
    return j;
}

double get_or(const json& j, const char* a, const char* b, double fallback) {
    if (!j.contains(a) || !j[a].contains(b)) return fallback;
    return j[a][b].get<double>();
}

}  // namespace

std::map<std::string, double> maxima_from_samples(const json& samples) {
    std::map<std::string, double> m;
    auto upd = [&m](const std::string& key, double v) {
        auto [it, inserted] = m.emplace(key, v);
        if (!inserted) it->second = std::max(it->second, v);
    };
    for (const json& s : samples) {
        upd("unit_norm", s.at("unit_norm").get<double>());
        if (s.contains("failure")) upd("failures", 1.0);
        if (s.contains("horizontality")) upd("horizontality", s["horizontality"].get<double>());
        if (s.contains("chen")) {
            const json& c = s["chen"];
            const double H = std::sqrt(c["H_norm_sq"].get<double>());
            upd("c_symmetry", c["c_symmetry"].get<double>());
            upd("c_max_abs", c["c_max_abs"].get<double>());
            upd("conditions", std::max({c["conditions"]["off_diagonal"].get<double>(),
                                        c["conditions"]["ratio"].get<double>(),
                                        c["conditions"]["traceless"].get<double>()}));
            upd("improved_gap_abs", std::abs(c["improved_gap"].get<double>()));
            upd("classical_slack_abs", std::abs(c["classical_slack"].get<double>()));
            upd("H_norm_sq", c["H_norm_sq"].get<double>());
            upd("tau_minus_3_abs", std::abs(c["tau"].get<double>() - 3.0));
            upd("inf_K_minus_1_abs", std::abs(c["inf_K"].get<double>() - 1.0));
            upd("delta_minus_2_abs", std::abs(c["delta"].get<double>() - 2.0));
            if (!c["minimal"].get<bool>()) {
                upd("lambda_ratio_error", std::abs(c["lambda1"].get<double>() / c["lambda2"].get<double>() - 4.0));
                upd("min_plane_misalignment", 1.0 - c["min_plane_alignment"].get<double>());
            } else {
                upd("minimal_points", 1.0);
            }
            if (s.contains("profile")) {
                const double lam2 = s["profile"]["lam2"].get<double>();
                upd("H_norm_error", std::abs(H - 2.0 * lam2));
                upd("classical_slack_error", std::abs(c["classical_slack"].get<double>() - 3.0 * lam2 * lam2));
                upd("neg_classical_slack", -c["classical_slack"].get<double>());
            }
        }
        if (s.contains("structure")) {
            const json& st = s["structure"];
            upd("structure", std::max({st["eq_e1e1"].get<double>(), st["eq_eje1"].get<double>(),
                                       st["lam2_lateral"].get<double>()}));
            upd("t_rate", st["t_rate"].get<double>());
        }
        if (s.contains("vw")) {
            const json& v = s["vw"];
            upd("vw_derivatives", std::max({v["dV_e1"].get<double>(), v["dV_lateral"].get<double>(),
                                            v["dW_e1"].get<double>(), v["dW_lateral"].get<double>()}));
            upd("v_tail", std::max(v["v_tail"].get<double>(), v["v_unit"].get<double>()));
            upd("w_orthogonal", v["w_orthogonal"].get<double>());
            upd("w_roundtrip", v["w_roundtrip"].get<double>());
        }
        if (s.contains("surface")) {
            upd("surface_horizontality", std::max(get_or(s, "surface", "horizontality", 0.0),
                                                  get_or(s, "surface", "unit_norm", 0.0)));
            if (s["surface"].contains("mean_curvature"))
                upd("surface_minimality", s["surface"]["mean_curvature"].get<double>());
        }
        if (s.contains("profile")) upd("b1_abs", std::abs(s["profile"]["b1"].get<double>()));
    }
    return m;
}

json VerificationReport::to_json(const std::string& timestamp) const {
    json samples_json = json::array();
    for (const auto& s : samples) samples_json.push_back(sample_json(s));
    json j;
    j["version"] = kToolVersion;
    j["timestamp"] = timestamp;
    j["config"] = config.to_json();
    if (trajectory) {
        j["trajectory"] = {{"status", to_string(trajectory->status)},
                           {"span", {trajectory->t_min(), trajectory->t_max()}},
                           {"first_integral", trajectory->first_integral_value},
                           {"max_drift", trajectory->max_drift},
                           {"knots", trajectory->samples.size()}};
    }
    j["samples"] = samples_json;
    j["maxima"] = maxima;
    j["pass"] = pass;
    j["overall_pass"] = all_pass();
    j["failures"] = failures;
    return j;
}

VerificationReport run_verify(const RunConfig& config) {
    config.validate();
    VerificationReport report;
    report.config = config;
    const Tolerances& tol = config.tolerances;
    const JetConfig jc = config.jet_config();

    Target target = make_target(config);
    if (target.trajectory) report.trajectory = *target.trajectory;
    const bool has_profile = target.immersion.has_value();

    std::size_t index = 0;
    for (const Coords& p : sample_points(config, target.map)) {
        SampleRecord rec;
        rec.index = index++;
        rec.point = p;
        try {
            rec.unit_norm = std::abs(target.map(p).norm_sq() - 1.0);
            if (has_profile) {
                rec.profile = dense_eval(*target.trajectory, p[0]);
                const Coords uv{p[1], p[2], 0.0};
                rec.surface_horizontality = horizontality_residual(target.immersion->surface, uv, jc);
                rec.surface_mean_curvature = surface_mean_curvature_norm(target.immersion->surface, uv, jc);
            }
            const JetPoint jet = jet_at(target.map, p, jc);
            rec.horizontality = horizontality_residual(jet);
            const PointAnalysis pa = analyze_point(jet, tol["horizontality"]);
            rec.chen = pa.report;
            if (has_profile) {
                rec.structure = structure_equation_residuals(jet, *rec.profile, pa.frame);
                const AmbientVector w = target.immersion->surface.map({p[1], p[2], 0.0});
                rec.vw = vw_residuals(jet, *rec.profile, pa.frame, w);
            }
        } catch (const Error& e) {
            rec.failure = SampleFailure{to_string(e.kind()), e.what()};
            report.failures.push_back("sample " + std::to_string(rec.index) + ": " + e.what());
        }
        report.samples.push_back(std::move(rec));
    }

    json samples_json = json::array();
    for (const auto& s : report.samples) samples_json.push_back(sample_json(s));
    report.maxima = maxima_from_samples(samples_json);
    const auto& mx = report.maxima;
    auto max_of = [&mx](const std::string& key) {
        const auto it = mx.find(key);
        return it == mx.end() ? std::numeric_limits<double>::infinity() : it->second;
    };
    auto& pass = report.pass;

    pass["no_hard_failures"] = report.failures.empty();
    pass["unit_norm"] = max_of("unit_norm") <= tol["unit_norm"];
    pass["horizontality"] = max_of("horizontality") <= tol["horizontality"];
    pass["c_symmetry"] = max_of("c_symmetry") <= tol["c_symmetry"];
    pass["conditions"] = max_of("conditions") <= tol["conditions"];
    pass["improved_equality"] = max_of("improved_gap_abs") <= tol["equality_gap"];

    if (config.run_case == RunCase::Rp3Reference) {
        pass["cubic_zero"] = max_of("c_max_abs") <= tol["cubic_zero"];
        pass["minimal_h"] = max_of("H_norm_sq") <= tol["minimal_h"];
        pass["tau"] = max_of("tau_minus_3_abs") <= tol["reference"];
        pass["inf_K"] = max_of("inf_K_minus_1_abs") <= tol["reference"];
        pass["delta"] = max_of("delta_minus_2_abs") <= tol["reference"];
        pass["classical_equality"] = max_of("classical_slack_abs") <= tol["equality_gap"];
        pass["minimal_path"] = max_of("minimal_points") == 1.0 && mx.count("lambda_ratio_error") == 0;
    } else {
        const ProfileTrajectory& traj = *target.trajectory;
        pass["ode_completed"] = traj.completed();
        pass["ode_drift"] = traj.max_drift <= tol["ode_drift"];
        pass["non_minimal"] = mx.count("minimal_points") == 0;
        pass["b1_not_identically_zero"] = max_of("b1_abs") > 0.0 && max_of("b1_abs") < 1e300;
        pass["lambda_ratio"] = max_of("lambda_ratio_error") <= tol["lambda_ratio"];
        pass["structure"] = max_of("structure") <= tol["structure"];
        pass["t_rate"] = max_of("t_rate") <= tol["t_rate"];
        pass["h_norm"] = max_of("H_norm_error") <= tol["h_norm"];
        pass["classical_slack"] = max_of("classical_slack_error") <= tol["classical_slack"] &&
                                  max_of("neg_classical_slack") < 0.0;
        pass["min_plane"] = max_of("min_plane_misalignment") <= tol["min_plane"];
        pass["vw_derivatives"] = max_of("vw_derivatives") <= tol["vw"];
        pass["v_tail"] = max_of("v_tail") <= tol["v_tail"];
        pass["w_orthogonal"] = max_of("w_orthogonal") <= tol["w_orthogonal"];
        pass["w_roundtrip"] = max_of("w_roundtrip") <= tol["w_roundtrip"];
        pass["surface_horizontality"] = max_of("surface_horizontality") <= tol["surface_horizontality"];
        pass["surface_minimality"] = max_of("surface_minimality") <= tol["surface_minimality"];
    }
    return report;
}

// ---------------------------------------------------------------------------
// report

std::vector<ReportRow> run_report(std::vector<std::filesystem::path> files) {
    if (files.empty()) throw Error(ErrorKind::Usage, "report: at least one report file is required");
    std::sort(files.begin(), files.end());
    std::vector<ReportRow> rows;
    for (const auto& path : files) {
        std::ifstream in(path);
        if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open");
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
        }
        if (!doc.is_object() || !doc.contains("samples") || !doc["samples"].is_array() ||
            !doc.contains("pass")) {
            throw Error(ErrorKind::Parse, path.string() + ": not a verification report");
        }
        ReportRow row;
        row.file = path.string();
        row.run_case = doc.contains("config") ? doc["config"].value("case", "unknown") : "unknown";
        row.pass = doc.value("overall_pass", false);
        const double inf = std::numeric_limits<double>::infinity();
        row.lam2_min = row.H_sq_min = row.delta_min = row.classical_slack_min = inf;
        row.lam2_max = row.H_sq_max = row.delta_max = row.classical_slack_max = -inf;
        std::size_t idx = 0;
        std::size_t used = 0;
        for (const json& s : doc["samples"]) {
            try {
                if (s.contains("failure")) {
                    ++idx;
                    continue;
                }
                const json& c = s.at("chen");
                const double lam2 = s.contains("profile") ? s["profile"].at("lam2").get<double>()
                                                          : c.at("lambda2").get<double>();
                const double H = c.at("H_norm_sq").get<double>();
                const double delta = c.at("delta").get<double>();
                const double slack = c.at("classical_slack").get<double>();
                row.lam2_min = std::min(row.lam2_min, lam2);
                row.lam2_max = std::max(row.lam2_max, lam2);
                row.H_sq_min = std::min(row.H_sq_min, H);
                row.H_sq_max = std::max(row.H_sq_max, H);
                row.delta_min = std::min(row.delta_min, delta);
                row.delta_max = std::max(row.delta_max, delta);
                row.improved_gap_max = std::max(row.improved_gap_max, std::abs(c.at("improved_gap").get<double>()));
                row.classical_slack_min = std::min(row.classical_slack_min, slack);
                row.classical_slack_max = std::max(row.classical_slack_max, slack);
                row.slack_check = std::max(row.slack_check, std::abs(slack - 3.0 * lam2 * lam2));
                ++used;
            } catch (const json::exception& e) {
                throw Error(ErrorKind::Parse,
                            path.string() + ": record " + std::to_string(idx) + ": " + e.what());
            }
            ++idx;
        }
        if (used == 0) {
            row.lam2_min = row.lam2_max = row.H_sq_min = row.H_sq_max = std::nan("");
            row.delta_min = row.delta_max = row.classical_slack_min = row.classical_slack_max = std::nan("");
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_report_table(const std::vector<ReportRow>& rows, std::ostream& out) {
    char line[512];
    std::snprintf(line, sizeof line, "%-32s %-12s %-23s %-23s %-23s %-10s %-23s %-10s %s\n", "file",
                  "case", "lam2 range", "|H|^2 range", "delta range", "max gap", "classical slack",
                  "3lam2^2 dev", "pass");
    out << line;
    for (const auto& r : rows) {
        auto range = [](double a, double b) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "[%.4g, %.4g]", a, b);
            return std::string(buf);
        };
        std::snprintf(line, sizeof line, "%-32s %-12s %-23s %-23s %-23s %-10.3g %-23s %-10.3g %s\n",
                      r.file.c_str(), r.run_case.c_str(), range(r.lam2_min, r.lam2_max).c_str(),
                      range(r.H_sq_min, r.H_sq_max).c_str(), range(r.delta_min, r.delta_max).c_str(),
                      r.improved_gap_max, range(r.classical_slack_min, r.classical_slack_max).c_str(),
                      r.slack_check, r.pass ? "yes" : "no");
        out << line;
    }
}

void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
    out << "file,case,lam2_min,lam2_max,H_sq_min,H_sq_max,delta_min,delta_max,improved_gap_max,"
           "classical_slack_min,classical_slack_max,slack_check,pass\n";
    for (const auto& r : rows) {
        out << r.file << ',' << r.run_case << ',' << g17(r.lam2_min) << ',' << g17(r.lam2_max) << ','
            << g17(r.H_sq_min) << ',' << g17(r.H_sq_max) << ',' << g17(r.delta_min) << ','
            << g17(r.delta_max) << ',' << g17(r.improved_gap_max) << ',' << g17(r.classical_slack_min)
            << ',' << g17(r.classical_slack_max) << ',' << g17(r.slack_check) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
}

}  // namespace chen
