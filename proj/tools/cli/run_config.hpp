#pragma once

#include "bpskink/solvers.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

namespace bpskink::cli {

enum class Command { solve, verify, charge, sweep };
enum class Method { closed_form, ode, bvp, all };
enum class OutputFormat { csv, json };

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailed = 1,
    kInputError = 2,
    kNumericalFailure = 3,
};

struct RunConfig {
    Command command = Command::solve;
    double lambda = 1.0;
    double big_l = 1.0;
    double x0 = 0.0;
    long branch_m = 0;
    long branch_n = 1;
    Method method = Method::all;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::filesystem::path> output_path;
    SolverConfig solver;
    std::size_t points = 2001;
    bool rescaled = false;
    std::filesystem::path kappa_file;
};

struct ParseOutcome {
    std::optional<RunConfig> config;
    int exit_code = kSuccess;
    std::string message;  // help text or the parse error
};

/// Parses argv. On --help the config is empty and exit_code is 0; on a bad
/// command line it is empty and exit_code is kInputError.
ParseOutcome parse_run_config(int argc, const char* const* argv);

/// Checks every value that must hold before any computation starts;
/// returns an error message or nothing.
std::optional<std::string> validate(const RunConfig& cfg);

const char* to_string(Command c) noexcept;
const char* to_string(Method m) noexcept;
const char* extension(OutputFormat f) noexcept;

}  // namespace bpskink::cli
