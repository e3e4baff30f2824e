#pragma once

// Numerical routes to the kink that do not go through the closed form:
// adaptive Runge-Kutta integration of the first-order equation, shooting on the
// second-order equation, and adaptive quadrature. They double as oracles for
// the closed-form solution.

#include "bpskink/closed_form.hpp"
#include "bpskink/model.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bpskink {

struct SolverConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    std::size_t max_steps = 1'000'000;
    /// Distance from the vacua at which the infinite line is truncated.
    double tail_cut = 1e-6;

    /// Throws DomainError on nonpositive tolerances or tail_cut outside (0, pi/4).
    void validate() const;
};

/// Strictly increasing sample abscissae.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    static Grid uniform(double x_min, double x_max, std::size_t n);

    double x_min() const noexcept { return points_.front(); }
    double x_max() const noexcept { return points_.back(); }
    std::size_t size() const noexcept { return points_.size(); }
    std::span<const double> points() const noexcept { return points_; }
    double operator[](std::size_t i) const noexcept { return points_[i]; }

    /// True when consecutive spacings agree to 1e-12 relative.
    bool is_uniform() const noexcept;

private:
    std::vector<double> points_;
};

enum class Provenance { closed_form, ode_first_order, bvp_second_order };

const char* to_string(Provenance p) noexcept;

/// A kink (or vacuum) sampled on a grid. `dense` evaluates the same solution
/// between samples; it may be empty for profiles built from raw data.
struct KinkProfile {
    Grid grid;
    std::vector<double> alpha;
    std::vector<double> dalpha;
    ModelParams params;
    KinkSign sign = KinkSign::minus;
    long vacuum_base = 0;
    Provenance provenance = Provenance::closed_form;
    bool trivial = false;
    std::function<PointState(double)> dense;

    std::size_t size() const noexcept { return alpha.size(); }
    PointState at(std::size_t i) const noexcept { return {alpha[i], dalpha[i]}; }
    /// Vacuum index approached at the left / right end.
    long left_vacuum() const noexcept;
    long right_vacuum() const noexcept;
};

/// Uniform grid centred on x0 that reaches tail_cut from the vacua on the
/// first-order kink: half-width L * int_{tail_cut}^{pi/2} sqrt(1 + kappa sin^2 a)/sin a da.
Grid default_grid(const ModelParams& p, double x0, const SolverConfig& cfg,
                  std::size_t n_points = 2001);

/// Closed-form solution sampled on a grid.
KinkProfile closed_form_profile(const ImplicitSolution& sol, const Grid& grid);

/// Constant profile alpha = n pi.
KinkProfile vacuum_profile(const ModelParams& p, long n, const Grid& grid,
                           Provenance provenance = Provenance::closed_form);

/// Integrates the first-order equation outward from alpha(x0) = vacuum_base pi + pi/2 with
/// an embedded Dormand-Prince 5(4) pair. Grid must contain x0 in its interior.
/// NumericError when max_steps is exhausted.
KinkProfile integrate_bps(const ModelParams& p, double x0, KinkSign sign,
                          const SolverConfig& cfg, const Grid& grid, long vacuum_base = 0);

/// Shooting solution of the second-order equation with alpha(x_min) = m pi (+/-) tail_cut and
/// alpha(x_max) = n pi (-/+) tail_cut. The unknown slope at x_min is bisected on [0, 2/L];
/// the result is translated so that it crosses the midpoint value at the grid midpoint.
/// m == n yields the constant vacuum profile; |m - n| > 1 is a DomainError; a failing
/// bracket or step budget is a NumericError.
KinkProfile solve_second_order_bvp(const ModelParams& p, const SolverConfig& cfg,
                                   const Grid& grid, long m = 0, long n = 1);

/// Adaptive Gauss-Kronrod quadrature; NumericError if neither abs_tol nor rel_tol is met.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  const SolverConfig& cfg);

/// Second derivative by finite differences: 4th-order central stencil in the interior,
/// 2nd-order stencils on the two outermost points at each end. Needs a uniform grid
/// (1e-12 relative) with at least 5 points, otherwise DomainError.
std::vector<double> differentiate(std::span<const double> values, const Grid& grid);
std::vector<double> differentiate(const KinkProfile& profile);

/// Sup-norm distance between two profiles, sampling `b` through its dense evaluator
/// at the abscissae of `a` (or sample-by-sample when grids coincide and `b` has none).
double sup_distance(const KinkProfile& a, const KinkProfile& b);

}  // namespace bpskink
