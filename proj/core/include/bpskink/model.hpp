#pragma once

// Pointwise formulas of the reduced one-dimensional Skyrme kink model.
//
// The static field alpha(x) carries the energy density
//
//   H = 1/2 [ alpha'^2 + sin^2(alpha)/L^2 + (lambda/L^2) alpha'^2 sin^2(alpha) ]
//
// whose zeros are the vacua alpha = n*pi. Everything here is a pure function
// of its arguments.

#include <numbers>
#include <utility>

namespace bpskink {

inline constexpr double pi = std::numbers::pi;

/// Coupling lambda and period scale L. kappa = lambda / L^2 is always derived.
class ModelParams {
public:
    /// Throws DomainError unless both values are finite and strictly positive.
    ModelParams(double lambda, double big_l);

    /// Parameters with a prescribed kappa at period scale L (lambda = kappa L^2).
    static ModelParams from_kappa(double kappa, double big_l);

    double lambda() const noexcept { return lambda_; }
    double big_l() const noexcept { return big_l_; }
    double kappa() const noexcept { return kappa_; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    double lambda_;
    double big_l_;
    double kappa_;
};

struct PointState {
    double alpha = 0.0;   ///< field value, radians
    double dalpha = 0.0;  ///< d alpha / dx
};

/// Branch of the first-order equation  alpha' (+/-) sin(alpha)/sqrt(L^2 + lambda sin^2 alpha) = 0.
/// `minus` is the branch alpha' = +sin(alpha)/sqrt(...), i.e. the kink rising from 0 to pi.
enum class KinkSign { plus, minus };

/// +1 for plus, -1 for minus: the coefficient in front of the sin term of the residual.
constexpr double sign_factor(KinkSign s) noexcept { return s == KinkSign::plus ? 1.0 : -1.0; }

constexpr KinkSign opposite(KinkSign s) noexcept {
    return s == KinkSign::plus ? KinkSign::minus : KinkSign::plus;
}

const char* to_string(KinkSign s) noexcept;

struct PPair {
    double plus = 0.0;
    double minus = 0.0;

    double operator[](KinkSign s) const noexcept { return s == KinkSign::plus ? plus : minus; }
};

/// Reduced Hamiltonian density; nonnegative.
double energy_density(const PointState& s, const ModelParams& p) noexcept;

/// alpha'' - sin(2 alpha)(1 - lambda alpha'^2) / (2 (L^2 + lambda sin^2 alpha)).
double second_order_residual(double alpha, double dalpha, double ddalpha,
                             const ModelParams& p) noexcept;

/// Right-hand side of the second-order equation solved for alpha''.
double second_order_rhs(double alpha, double dalpha, const ModelParams& p) noexcept;

/// alpha' (+/-) sin(alpha) / sqrt(L^2 + lambda sin^2 alpha).
double bps_residual(const PointState& s, KinkSign sign, const ModelParams& p) noexcept;

/// Slope prescribed by the first-order equation on the given branch.
double bps_slope(double alpha, KinkSign sign, const ModelParams& p) noexcept;

/// P(+/-) = sqrt(L^2 + lambda sin^2 alpha) alpha' (+/-) sin(alpha).
PPair p_plus_minus(const PointState& s, const ModelParams& p) noexcept;

/// Kink charge density (1/L) sin(alpha) sqrt(1 + kappa sin^2 alpha) alpha'.
double charge_density(const PointState& s, const ModelParams& p) noexcept;

/// Index n of the vacuum n*pi closest to alpha; ties go to the smaller n.
long vacuum_nearest(double alpha) noexcept;

}  // namespace bpskink
