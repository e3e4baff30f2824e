#include "cli/run_config.hpp"

#include "bpskink/closed_form.hpp"
#include "bpskink/errors.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <map>
#include <vector>

namespace bpskink::cli {

namespace {

void add_model_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--lambda", cfg.lambda, "Skyrme coupling lambda > 0");
    sub.add_option("--L,--big-l", cfg.big_l, "Period scale L > 0");
}

void add_solver_options(CLI::App& sub, RunConfig& cfg) {
    sub.add_option("--rel-tol", cfg.solver.rel_tol, "Relative tolerance (ODE and quadrature)");
    sub.add_option("--abs-tol", cfg.solver.abs_tol, "Absolute tolerance (ODE and quadrature)");
    sub.add_option("--max-steps", cfg.solver.max_steps, "Step budget per ODE trajectory");
    sub.add_option("--tail-cut", cfg.solver.tail_cut,
                   "Distance from the vacua at which the line is truncated");
}

void add_output_options(CLI::App& sub, RunConfig& cfg) {
    static const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                                             {"json", OutputFormat::json}};
    sub.add_option("--format", cfg.format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub.add_option_function<std::string>(
        "-o,--output", [&cfg](const std::string& s) { cfg.output_path = s; },
        "Output file (default: stdout, or $BPSKINK_OUTPUT_DIR/<command>.<format>)");
}

void add_profile_options(CLI::App& sub, RunConfig& cfg, std::vector<long>& branch) {
    static const std::map<std::string, Method> methods{{"closed_form", Method::closed_form},
                                                       {"ode", Method::ode},
                                                       {"bvp", Method::bvp},
                                                       {"all", Method::all}};
    sub.add_option("--x0", cfg.x0, "Kink centre (alpha = pi/2 there)");
    sub.add_option("--branch", branch, "Boundary vacua m n: alpha(-inf) = m pi, alpha(+inf) = n pi")
        ->expected(2);
    sub.add_option("--method", cfg.method, "closed_form, ode, bvp or all")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    sub.add_option("--points", cfg.points, "Samples on the output grid");
    sub.add_flag("--rescaled", cfg.rescaled, "Emit x/L and kappa units instead of (lambda, L, x)");
}

}  // namespace

ParseOutcome parse_run_config(int argc, const char* const* argv) {
    RunConfig cfg;
    std::vector<long> branch;

    CLI::App app{"Closed-form, first-order and second-order kink solutions of the reduced "
                 "Skyrme model"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "Write kink profiles");
    auto* verify = app.add_subcommand("verify", "Check saturation, charge and equivalence");
    auto* charge = app.add_subcommand("charge", "Compare kink charge evaluations");
    auto* sweep = app.add_subcommand("sweep", "Energy and charge over a list of kappa values");

    for (auto* sub : {solve, verify}) {
        add_model_options(*sub, cfg);
        add_profile_options(*sub, cfg, branch);
        add_solver_options(*sub, cfg);
        add_output_options(*sub, cfg);
    }
    add_model_options(*charge, cfg);
    add_solver_options(*charge, cfg);
    add_output_options(*charge, cfg);

    sweep->add_option("--L,--big-l", cfg.big_l, "Period scale L > 0");
    sweep->add_option("--kappa-file", cfg.kappa_file, "One positive kappa per line")->required();
    add_solver_options(*sweep, cfg);
    add_output_options(*sweep, cfg);

    ParseOutcome outcome;
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        outcome.message = app.help();
        return outcome;
    } catch (const CLI::CallForAllHelp&) {
        outcome.message = app.help("", CLI::AppFormatMode::All);
        return outcome;
    } catch (const CLI::ParseError& e) {
        outcome.exit_code = kInputError;
        outcome.message = e.what();
        return outcome;
    }

    if (solve->parsed()) {
        cfg.command = Command::solve;
    } else if (verify->parsed()) {
        cfg.command = Command::verify;
    } else if (charge->parsed()) {
        cfg.command = Command::charge;
    } else {
        cfg.command = Command::sweep;
    }
    if (branch.size() == 2) {
        cfg.branch_m = branch[0];
        cfg.branch_n = branch[1];
    }
    outcome.config = cfg;
    return outcome;
}

std::optional<std::string> validate(const RunConfig& cfg) {
    try {
        if (cfg.command == Command::sweep) {
            ModelParams(1.0, cfg.big_l);
        } else {
            ModelParams(cfg.lambda, cfg.big_l);
        }
        cfg.solver.validate();
    } catch (const DomainError& e) {
        return std::string(e.what());
    }
    if (!std::isfinite(cfg.x0)) {
        return std::string("x0 must be finite");
    }
    if (cfg.points < 5) {
        return std::string("--points must be at least 5");
    }
    if (cfg.command == Command::solve || cfg.command == Command::verify) {
        if (cfg.branch_m != cfg.branch_n && !branch_map(cfg.branch_m, cfg.branch_n).valid) {
            return "branch (" + std::to_string(cfg.branch_m) + ", " +
                   std::to_string(cfg.branch_n) +
                   "): finite-energy kinks only join adjacent vacua, need |m - n| = 1 "
                   "(or m = n for the vacuum)";
        }
    }
    return std::nullopt;
}

const char* to_string(Command c) noexcept {
    switch (c) {
        case Command::solve:
            return "solve";
        case Command::verify:
            return "verify";
        case Command::charge:
            return "charge";
        case Command::sweep:
            return "sweep";
    }
    return "unknown";
}

const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::closed_form:
            return "closed_form";
        case Method::ode:
            return "ode";
        case Method::bvp:
            return "bvp";
        case Method::all:
            return "all";
    }
    return "unknown";
}

const char* extension(OutputFormat f) noexcept { return f == OutputFormat::csv ? "csv" : "json"; }

}  // namespace bpskink::cli
