#include "bpskink/closed_form.hpp"

#include "bpskink/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bpskink {

namespace {

// Smallest half-angle resolved by the inversion; beyond it the field sits on the vacuum.
constexpr double kThetaFloor = 1e-150;
constexpr int kMaxBisections = 400;

struct Roots {
    double s;    // sqrt(1 + kappa)
    double sm1;  // sqrt(1 + kappa) - 1, free of cancellation
};

Roots roots_of(double kappa) noexcept {
    const double s = std::sqrt(1.0 + kappa);
    return {s, kappa / (1.0 + s)};
}

// Rescaled position of the canonical kink at theta in (0, pi/2].
//
// The log argument is written in factored form around v_min:
//   v - v_min = D,  v_max - v = 2(s-1) - D,  v + 1 + s = 2 + D,  1 + s - v = 2s - D,
// with D evaluated directly from theta so the left tail keeps full relative precision.
double position_lower_half(double theta, double kappa) noexcept {
    if (kappa < sine_gordon_kappa_threshold) {
        return std::log(std::tan(0.5 * theta));
    }
    const auto [s, sm1] = roots_of(kappa);
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    const double w = std::sqrt(1.0 + kappa * sn * sn);
    const double v = -kappa * c / (w + s);
    const double d = s * sn * sn * (kappa * c / (s + w) + sm1) / ((w + c) * (1.0 + c));
    const double ratio = (2.0 * sm1 - d) * (2.0 + d) / (d * (2.0 * s - d));
    const double rk = std::sqrt(kappa);
    return 2.0 * rk * std::atan(v / rk) - 0.5 * std::log(ratio);
}

struct HalfAngle {
    double theta;  // distance of alpha_c from the nearer vacuum (0 or pi)
    bool upper;    // alpha_c = pi - theta
};

// Canonical kink at rescaled coordinate t.
HalfAngle canonical_half_angle(double t, double kappa) {
    if (t == 0.0) {
        return {0.5 * pi, false};
    }
    const bool upper = t > 0.0;
    const double y = -std::abs(t);
    if (kappa < sine_gordon_kappa_threshold) {
        return {2.0 * std::atan(std::exp(y)), upper};
    }
    if (!(y > position_lower_half(kThetaFloor, kappa))) {
        return {0.0, upper};
    }
    double lo = kThetaFloor;
    double hi = 0.5 * pi;
    for (int it = 0; it < kMaxBisections; ++it) {
        const double mid = hi > 4.0 * lo ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            return {mid, upper};
        }
        if (position_lower_half(mid, kappa) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    throw NumericError("alpha_of_x: bisection did not converge");
}

}  // namespace

VRange v_range(const ModelParams& p) noexcept {
    const double sm1 = roots_of(p.kappa()).sm1;
    return {-sm1, sm1};
}

double u_of_v(double v, const ModelParams& p) {
    const VRange r = v_range(p);
    if (!r.contains_closed(v)) {
        throw DomainError("u_of_v: v = " + std::to_string(v) + " outside [v_min, v_max]");
    }
    const double kappa = p.kappa();
    return -2.0 * v * std::sqrt(1.0 + kappa) / (v * v + kappa);
}

double v_of_alpha(double alpha, const ModelParams& p) {
    if (!(alpha > 0.0 && alpha < pi)) {
        throw DomainError("v_of_alpha: alpha must lie in (0, pi)");
    }
    // (sqrt(1 + k sin^2) - sqrt(1 + k)) / cos rewritten without the removable 0/0 at pi/2.
    const double kappa = p.kappa();
    const double sn = std::sin(alpha);
    return -kappa * std::cos(alpha) /
           (std::sqrt(1.0 + kappa * sn * sn) + std::sqrt(1.0 + kappa));
}

double antiderivative(double v, const ModelParams& p) {
    const double kappa = p.kappa();
    const auto [s, sm1] = roots_of(kappa);
    const double to_max = sm1 - v;
    const double from_min = v + sm1;
    if (!(to_max > 0.0 && from_min > 0.0)) {
        throw SingularityError("antiderivative: v = " + std::to_string(v) +
                               " is at or beyond an end of the v range");
    }
    const double ratio = to_max * (v + 1.0 + s) / (from_min * (1.0 + s - v));
    const double rk = std::sqrt(kappa);
    return 0.5 * std::log(ratio) - 2.0 * rk * std::atan(v / rk);
}

IdentitySides partial_fraction_identity(double v, double kappa) {
    const double v2 = v * v;
    const double q_plus = v2 + 2.0 * v - kappa;
    const double q_minus = v2 - 2.0 * v - kappa;
    const double q_sum = v2 + kappa;
    if (q_plus == 0.0 || q_minus == 0.0 || q_sum == 0.0) {
        throw SingularityError("partial_fraction_identity: v is a pole of the integrand");
    }
    const double a = v2 - kappa;
    const double lhs = -2.0 * (1.0 + kappa) * a * a / ((a * a - 4.0 * v2) * q_sum);
    const double rhs = (v + 1.0) / q_plus - (v - 1.0) / q_minus - 2.0 * kappa / q_sum;
    if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
        throw SingularityError("partial_fraction_identity: v is numerically at a pole");
    }
    return {lhs, rhs};
}

double reduced_position(double alpha_c, double kappa) {
    if (!(alpha_c > 0.0 && alpha_c < pi)) {
        throw DomainError("reduced_position: alpha must lie in (0, pi)");
    }
    if (alpha_c <= 0.5 * pi) {
        return position_lower_half(alpha_c, kappa);
    }
    return -position_lower_half(pi - alpha_c, kappa);
}

BranchMapping branch_map(long m, long n) noexcept {
    if (m - n != 1 && n - m != 1) {
        return {0, KinkSign::minus, false};
    }
    const long base = m < n ? m : n;
    const bool rising = n > m;
    const bool even = base % 2 == 0;
    // sin(alpha) has sign (-1)^base on the interval; the minus branch moves alpha along sin(alpha).
    const KinkSign sign = (rising == even) ? KinkSign::minus : KinkSign::plus;
    return {base, sign, true};
}

ImplicitSolution::ImplicitSolution(ModelParams params, double x0, KinkSign sign, long vacuum_base)
    : params_(params), x0_(x0), sign_(sign), vacuum_base_(vacuum_base) {
    if (!std::isfinite(x0)) {
        throw DomainError("ImplicitSolution: x0 must be finite");
    }
}

ImplicitSolution ImplicitSolution::for_branch(const ModelParams& params, double x0, long m,
                                              long n) {
    const BranchMapping b = branch_map(m, n);
    if (!b.valid) {
        throw DomainError("only adjacent vacua (|m - n| = 1) are joined by a finite-energy kink; got (" +
                          std::to_string(m) + ", " + std::to_string(n) + ")");
    }
    return ImplicitSolution(params, x0, b.sign, b.vacuum_base);
}

int kink_orientation(KinkSign sign, long vacuum_base) noexcept {
    const bool even = vacuum_base % 2 == 0;
    return (sign == KinkSign::minus) == even ? 1 : -1;
}

int ImplicitSolution::orientation() const noexcept {
    return kink_orientation(sign_, vacuum_base_);
}

long ImplicitSolution::left_vacuum() const noexcept {
    return orientation() > 0 ? vacuum_base_ : vacuum_base_ + 1;
}

long ImplicitSolution::right_vacuum() const noexcept {
    return orientation() > 0 ? vacuum_base_ + 1 : vacuum_base_;
}

double ImplicitSolution::alpha(double x) const { return state(x).alpha; }

PointState ImplicitSolution::state(double x) const {
    const double kappa = params_.kappa();
    const double t = orientation() * (x - x0_) / params_.big_l();
    const HalfAngle h = canonical_half_angle(t, kappa);
    const double base = static_cast<double>(vacuum_base_) * pi;
    const double alpha = h.upper ? base + (pi - h.theta) : base + h.theta;
    const double sn = std::sin(h.theta);
    const double slope = sn / (params_.big_l() * std::sqrt(1.0 + kappa * sn * sn));
    return {alpha, orientation() * slope};
}

ImplicitSolution ImplicitSolution::shifted(double dx) const {
    return ImplicitSolution(params_, x0_ + dx, sign_, vacuum_base_);
}

ImplicitSolution ImplicitSolution::reflected() const {
    return ImplicitSolution(params_, x0_, opposite(sign_), vacuum_base_);
}

double x_of_v(double v, const ImplicitSolution& sol) {
    const ModelParams& p = sol.params();
    return sol.x0() - sol.orientation() * p.big_l() * antiderivative(v, p);
}

double alpha_of_x(double x, const ImplicitSolution& sol) { return sol.alpha(x); }

}  // namespace bpskink
