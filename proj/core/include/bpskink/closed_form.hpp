#pragma once

// Explicit integration of the first-order kink equation.
//
// In rescaled units (x/L -> x, kappa = lambda/L^2) the canonical kink obeys
//   alpha' = sin(alpha) / sqrt(1 + kappa sin^2 alpha),  alpha(-inf) = 0, alpha(+inf) = pi.
// With u = cos(alpha) and the substitution
//   sqrt(1 + kappa (1 - u^2)) = sqrt(1 + kappa) + u v
// the quadrature becomes rational in v and integrates to the implicit relation
//   2 sqrt(kappa) atan(v / sqrt(kappa)) - 1/2 ln|(v^2 + 2v - kappa)/(v^2 - 2v - kappa)| = x - x0.
// This header exposes each step of that construction and the inverse map x -> alpha.

#include "bpskink/model.hpp"

namespace bpskink {

/// Below this kappa the v-substitution degenerates and alpha(x) is evaluated
/// with the sine-Gordon kink 2 atan(exp((x - x0)/L)).
inline constexpr double sine_gordon_kappa_threshold = 1e-8;

/// Open interval swept by v as alpha runs over (0, pi): v_min = 1 - sqrt(1+kappa), v_max = -v_min.
struct VRange {
    double v_min = 0.0;
    double v_max = 0.0;

    bool contains_open(double v) const noexcept { return v > v_min && v < v_max; }
    bool contains_closed(double v) const noexcept { return v >= v_min && v <= v_max; }
};

VRange v_range(const ModelParams& p) noexcept;

/// u = cos(alpha) = -2 v sqrt(1+kappa) / (v^2 + kappa). DomainError outside the closed VRange.
double u_of_v(double v, const ModelParams& p);

/// v for alpha in (0, pi); continuous through alpha = pi/2 where it vanishes.
double v_of_alpha(double alpha, const ModelParams& p);

/// 1/2 ln|(v^2+2v-kappa)/(v^2-2v-kappa)| - 2 sqrt(kappa) atan(v/sqrt(kappa)), integration constant 0.
/// SingularityError at or beyond either end of the VRange.
double antiderivative(double v, const ModelParams& p);

struct IdentitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Both sides of the partial-fraction decomposition of the v-integrand:
///   lhs = -2(1+kappa)(v^2-kappa)^2 / ([(v^2-kappa)^2 - 4v^2](v^2+kappa))
///   rhs = (v+1)/(v^2+2v-kappa) - (v-1)/(v^2-2v-kappa) - 2 kappa/(v^2+kappa)
/// SingularityError if v is a root of any denominator.
IdentitySides partial_fraction_identity(double v, double kappa);

/// Canonical kink position (rescaled, centred at 0) where the kink takes the value
/// alpha_c in (0, pi). Odd about pi/2; tends to -inf / +inf at 0 / pi.
double reduced_position(double alpha_c, double kappa);

/// Reduction of the boundary data alpha(-inf) = m pi, alpha(+inf) = n pi to a kink
/// on the vacuum interval (vacuum_base pi, (vacuum_base + 1) pi).
struct BranchMapping {
    long vacuum_base = 0;
    KinkSign sign = KinkSign::minus;
    bool valid = false;
};

/// Only adjacent vacua (|m - n| = 1) carry a nontrivial finite-energy kink.
BranchMapping branch_map(long m, long n) noexcept;

/// +1 if a kink on the given branch and vacuum interval rises with x, -1 if it falls.
int kink_orientation(KinkSign sign, long vacuum_base) noexcept;

/// Closed-form kink: alpha(x) = vacuum_base pi + alpha_c(orientation (x - x0) / L), where
/// alpha_c is the canonical kink and the orientation follows from the branch sign and
/// the parity of vacuum_base.
class ImplicitSolution {
public:
    ImplicitSolution(ModelParams params, double x0, KinkSign sign, long vacuum_base = 0);

    /// Kink connecting m pi at -inf to n pi at +inf. DomainError unless |m - n| = 1.
    static ImplicitSolution for_branch(const ModelParams& params, double x0, long m, long n);

    const ModelParams& params() const noexcept { return params_; }
    double x0() const noexcept { return x0_; }
    KinkSign sign() const noexcept { return sign_; }
    long vacuum_base() const noexcept { return vacuum_base_; }

    /// +1 if alpha increases with x, -1 otherwise.
    int orientation() const noexcept;
    long left_vacuum() const noexcept;
    long right_vacuum() const noexcept;

    double alpha(double x) const;
    PointState state(double x) const;

    ImplicitSolution shifted(double dx) const;
    /// Mirror image x -> 2 x0 - x (flips the branch sign).
    ImplicitSolution reflected() const;

private:
    ModelParams params_;
    double x0_;
    KinkSign sign_;
    long vacuum_base_;
};

/// Position (original units) at which the solution reaches the given v.
double x_of_v(double v, const ImplicitSolution& sol);

double alpha_of_x(double x, const ImplicitSolution& sol);

}  // namespace bpskink
