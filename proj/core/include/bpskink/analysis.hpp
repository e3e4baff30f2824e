#pragma once

// Energy, kink charge, Bogomol'nyi saturation and first-/second-order
// equivalence diagnostics for sampled kink profiles.

#include "bpskink/model.hpp"
#include "bpskink/solvers.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bpskink {

struct EnergyChargeReport {
    double energy = 0.0;
    double charge_quadrature = 0.0;
    /// Signed like the profile's charge: positive on the minus branch, negative on the plus branch.
    double charge_closed_form = 0.0;
    /// energy - |charge_quadrature|; nonnegative up to quadrature error.
    double bps_defect = 0.0;
    /// Estimated energy (and charge) carried by the tails cut off outside the grid.
    double tail_bound = 0.0;
    ModelParams params;
};

struct DiagnosticsReport {
    double max_bps_residual = 0.0;
    double max_second_order_residual = 0.0;
    double pp_product_max_abs = 0.0;
    /// Total variation of P+ P- along the samples.
    double pp_product_variation = 0.0;
    /// (largest |P+|, largest |P-|) over the two end samples.
    std::pair<double, double> endpoint_p_values{0.0, 0.0};
    double max_abs_p_plus = 0.0;
    double max_abs_p_minus = 0.0;
};

/// Integral of the energy density over the profile's grid.
double total_energy(const KinkProfile& profile, const SolverConfig& cfg = {});

/// Integral of the charge density over the profile's grid.
double kink_charge_quadrature(const KinkProfile& profile, const SolverConfig& cfg = {});

/// Charge of one kink, (1/L) int_{-1}^{1} sqrt(1 + kappa (1 - u^2)) du
///   = (1/L) [1 + ((1 + kappa)/sqrt(kappa)) asin(sqrt(kappa/(1 + kappa)))].
double kink_charge_closed_form(const ModelParams& p);

/// The alternative evaluation
///   (1/2L)(1 + sqrt(1 + 2 lambda^2/L)) + (1/(lambda sqrt(L)))(1 + lambda^2/L) asin(lambda/sqrt(L + lambda^2))
/// sometimes quoted for this charge. It does not agree with the integral (e.g. 2.9368 vs 1 + pi/2
/// at lambda = L = 1) and is only reported for comparison.
double kink_charge_reference_expression(const ModelParams& p);

/// total_energy - |kink_charge_quadrature|.
double bps_defect(const KinkProfile& profile, const SolverConfig& cfg = {});

/// Charge of the vacuum tails beyond the grid, assuming exponential approach.
double tail_bound(const KinkProfile& profile);

EnergyChargeReport energy_charge_report(const KinkProfile& profile, const SolverConfig& cfg = {});

/// Pointwise residuals and P(+/-) statistics. Needs a uniform grid for the
/// second-order residual. A trivial (vacuum) profile reports all zeros.
DiagnosticsReport equivalence_diagnostics(const KinkProfile& profile);

struct SweepItem {
    double kappa = 0.0;
    std::optional<EnergyChargeReport> report;
    std::string error;
};

/// One closed-form report per kappa at period scale L, in input order. A failing
/// item carries its error message and does not stop the sweep.
std::vector<SweepItem> sweep(std::span<const double> kappa_values, double big_l,
                             const SolverConfig& cfg = {});

}  // namespace bpskink
