#pragma once

#include "cli/run_config.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpskink::cli {

/// Thresholds applied by `verify`.
struct VerifyThresholds {
    double bps_defect = 1e-8;
    double charge_relative = 1e-8;
    double bps_residual = 1e-8;
    double bps_residual_bvp = 1e-6;
    double second_order_residual = 1e-6;
    double pp_product = 1e-8;
    double single_branch = 1e-6;
    double pairwise_sup = 1e-6;
};

/// Malformed entry in a kappa list file; `line` is 1-based.
class KappaListError : public std::runtime_error {
public:
    KappaListError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// One positive kappa per line; blank lines are skipped.
std::vector<double> parse_kappa_list(std::istream& is);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parse, validate and execute; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bpskink::cli
