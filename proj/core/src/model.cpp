#include "bpskink/model.hpp"

#include "bpskink/errors.hpp"

#include <cmath>
#include <string>

namespace bpskink {

ModelParams::ModelParams(double lambda, double big_l)
    : lambda_(lambda), big_l_(big_l), kappa_(lambda / (big_l * big_l)) {
    if (!std::isfinite(lambda) || !(lambda > 0.0)) {
        throw DomainError("ModelParams: lambda must be finite and > 0, got " +
                          std::to_string(lambda));
    }
    if (!std::isfinite(big_l) || !(big_l > 0.0)) {
        throw DomainError("ModelParams: L must be finite and > 0, got " + std::to_string(big_l));
    }
    if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) {
        throw DomainError("ModelParams: kappa = lambda/L^2 is not a positive finite number");
    }
}

ModelParams ModelParams::from_kappa(double kappa, double big_l) {
    return ModelParams(kappa * big_l * big_l, big_l);
}

const char* to_string(KinkSign s) noexcept { return s == KinkSign::plus ? "plus" : "minus"; }

double energy_density(const PointState& s, const ModelParams& p) noexcept {
    const double sn = std::sin(s.alpha);
    const double s2 = sn * sn;
    const double d2 = s.dalpha * s.dalpha;
    const double l2 = p.big_l() * p.big_l();
    return 0.5 * (d2 + s2 / l2 + p.kappa() * d2 * s2);
}

double second_order_rhs(double alpha, double dalpha, const ModelParams& p) noexcept {
    const double sn = std::sin(alpha);
    const double l2 = p.big_l() * p.big_l();
    return std::sin(2.0 * alpha) * (1.0 - p.lambda() * dalpha * dalpha) /
           (2.0 * (l2 + p.lambda() * sn * sn));
}

double second_order_residual(double alpha, double dalpha, double ddalpha,
                             const ModelParams& p) noexcept {
    return ddalpha - second_order_rhs(alpha, dalpha, p);
}

namespace {

double bps_root(double sin_alpha, const ModelParams& p) noexcept {
    return std::sqrt(p.big_l() * p.big_l() + p.lambda() * sin_alpha * sin_alpha);
}

}  // namespace

double bps_slope(double alpha, KinkSign sign, const ModelParams& p) noexcept {
    const double sn = std::sin(alpha);
    return -sign_factor(sign) * sn / bps_root(sn, p);
}

double bps_residual(const PointState& s, KinkSign sign, const ModelParams& p) noexcept {
    const double sn = std::sin(s.alpha);
    return s.dalpha + sign_factor(sign) * sn / bps_root(sn, p);
}

PPair p_plus_minus(const PointState& s, const ModelParams& p) noexcept {
    const double sn = std::sin(s.alpha);
    const double scaled = bps_root(sn, p) * s.dalpha;
    return {scaled + sn, scaled - sn};
}

double charge_density(const PointState& s, const ModelParams& p) noexcept {
    const double sn = std::sin(s.alpha);
    return sn * std::sqrt(1.0 + p.kappa() * sn * sn) * s.dalpha / p.big_l();
}

long vacuum_nearest(double alpha) noexcept {
    return static_cast<long>(std::ceil(alpha / pi - 0.5));
}

}  // namespace bpskink
