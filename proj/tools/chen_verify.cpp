// chen_verify: integrate the profile system, build sampled immersions,
// run the equality verification sweep and tabulate stored reports.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
// 3 numerical failure (singular profile, divergence, early termination).

#include <cstdio>
#include <fstream>
#include <sstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chen/verification.hpp"

namespace {

struct Options {
    std::string surface = "clifford";
    std::string run_case = "construction";
    std::string grid = "3x3x3";
    std::vector<std::string> tolerances;
    std::string out;
    chen::RunConfig config;
};

void add_run_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--surface", o.surface, "clifford | geodesic_sphere | latitude_control | tilted_control");
    cmd->add_option("--case", o.run_case, "construction | rp3 | perturbed");
    cmd->add_option("--b1", o.config.b1_0, "initial b1");
    cmd->add_option("--lam2", o.config.lam2_0, "initial lambda2 (non-zero)");
    cmd->add_option("--t0", o.config.t0, "start of the t range");
    cmd->add_option("--t1", o.config.t1, "end of the t range");
    cmd->add_option("--ode-step", o.config.ode_step, "initial/maximum RK4 step");
    cmd->add_option("--grid", o.grid, "sample grid TxUxV");
    cmd->add_option("--fd-step", o.config.fd_step, "finite-difference step for first partials");
    cmd->add_option("--tol", o.tolerances, "override a tolerance, KEY=VAL (repeatable)");
    cmd->add_option("--out", o.out, "output path");
}

chen::RunConfig finish_config(Options& o) {
    chen::RunConfig c = o.config;
    c.surface = chen::parse_surface(o.surface);
    c.run_case = chen::parse_case(o.run_case);
    c.grid = chen::parse_grid(o.grid);
    for (const auto& t : o.tolerances) c.tolerances.apply(t);
    if (!o.out.empty()) c.out = o.out;
    c.validate();
    return c;
}

void write_text(const chen::RunConfig& c, const std::string& text) {
    if (!c.out) {
        std::cout << text;
        return;
    }
    std::ofstream f(*c.out);
    if (!f) throw chen::Error(chen::ErrorKind::Usage, "cannot write " + c.out->string());
    f << text;
}

int exit_value(chen::ExitCode e) { return static_cast<int>(e); }

int run(int argc, char** argv) {
    CLI::App app{"Verification tool for Chen-equality immersions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", chen::kToolVersion);

    Options opts;
    auto* ode = app.add_subcommand("ode", "integrate the profile system and write a CSV trajectory");
    auto* build = app.add_subcommand("build", "sample the immersion on the grid and write JSON");
    auto* verify = app.add_subcommand("verify", "run the verification sweep and write a JSON report");
    auto* report = app.add_subcommand("report", "tabulate verification reports");
    add_run_options(ode, opts);
    add_run_options(build, opts);
    add_run_options(verify, opts);

    std::vector<std::string> report_files;
    std::string report_out;
    report->add_option("files", report_files, "verification report JSON files")->required();
    report->add_option("--out", report_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_value(chen::ExitCode::UsageError);
    }

    if (*ode) {
        const chen::RunConfig c = finish_config(opts);
        const chen::OdeOutcome r = chen::run_ode(c);
        std::ostringstream csv;
        chen::write_csv(r.trajectory, csv);
        write_text(c, csv.str());
        (c.out ? std::cout : std::cerr) << r.summary;
        return exit_value(r.exit);
    }
    if (*build) {
        const chen::RunConfig c = finish_config(opts);
        const chen::BuildOutcome r = chen::run_build(c);
        write_text(c, r.document.dump(2) + "\n");
        return exit_value(r.exit);
    }
    if (*verify) {
        const chen::RunConfig c = finish_config(opts);
        const chen::VerificationReport r = chen::run_verify(c);
        write_text(c, r.to_json(chen::utc_timestamp()).dump(2) + "\n");
        std::ostream& log = c.out ? std::cout : std::cerr;
        for (const auto& [name, ok] : r.pass) log << (ok ? "PASS " : "FAIL ") << name << "\n";
        if (r.trajectory && !r.trajectory->completed()) {
            log << "profile stopped early (" << chen::to_string(r.trajectory->status) << ") at t = "
                << r.trajectory->end_state().t << "\n";
        }
        return exit_value(r.exit_code());
    }
    const auto rows = chen::run_report({report_files.begin(), report_files.end()});
    chen::write_report_table(rows, std::cout);
    if (!report_out.empty()) {
        std::ofstream f(report_out);
        if (!f) throw chen::Error(chen::ErrorKind::Usage, "cannot write " + report_out);
        chen::write_report_csv(rows, f);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const chen::Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", chen::to_string(e.kind()), e.what());
        switch (e.kind()) {
            case chen::ErrorKind::Singularity:
            case chen::ErrorKind::Divergence:
                return exit_value(chen::ExitCode::NumericalFailure);
            default:
                return exit_value(chen::ExitCode::UsageError);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_value(chen::ExitCode::UsageError);
    }
}
