#include "bpskink/analysis.hpp"

#include "bpskink/closed_form.hpp"
#include "bpskink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <future>
#include <thread>

namespace bpskink {

namespace {

// Adaptive quadrature over segments no longer than 2 L, or a composite rule
// on the samples when the profile has no evaluator.
double integrate_profile(const KinkProfile& profile, const SolverConfig& cfg,
                         double (*density)(const PointState&, const ModelParams&)) {
    if (profile.trivial) {
        return 0.0;
    }
    const ModelParams& p = profile.params;
    const double a = profile.grid.x_min();
    const double b = profile.grid.x_max();
    if (profile.dense) {
        const auto f = [&](double x) { return density(profile.dense(x), p); };
        const auto pieces =
            static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / (2.0 * p.big_l()))));
        double sum = 0.0;
        for (std::size_t k = 0; k < pieces; ++k) {
            const double lo = a + (b - a) * static_cast<double>(k) / static_cast<double>(pieces);
            const double hi =
                k + 1 == pieces ? b
                                : a + (b - a) * static_cast<double>(k + 1) /
                                          static_cast<double>(pieces);
            sum += quadrature(f, lo, hi, cfg);
        }
        return sum;
    }
    const std::size_t n = profile.size();
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = density(profile.at(i), p);
    }
    if (profile.grid.is_uniform() && n % 2 == 1 && n >= 3) {
        const double h = (b - a) / static_cast<double>(n - 1);
        double s = vals.front() + vals.back();
        for (std::size_t i = 1; i + 1 < n; ++i) {
            s += (i % 2 == 1 ? 4.0 : 2.0) * vals[i];
        }
        return s * h / 3.0;
    }
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        s += 0.5 * (vals[i] + vals[i - 1]) * (profile.grid[i] - profile.grid[i - 1]);
    }
    return s;
}

}  // namespace

double total_energy(const KinkProfile& profile, const SolverConfig& cfg) {
    return integrate_profile(profile, cfg, &energy_density);
}

double kink_charge_quadrature(const KinkProfile& profile, const SolverConfig& cfg) {
    return integrate_profile(profile, cfg, &charge_density);
}

double kink_charge_closed_form(const ModelParams& p) {
    const double kappa = p.kappa();
    const double z = std::sqrt(kappa / (1.0 + kappa));
    // ((1 + kappa)/sqrt(kappa)) asin(z) = sqrt(1 + kappa) asin(z)/z, finite as kappa -> 0.
    return (1.0 + std::sqrt(1.0 + kappa) * std::asin(z) / z) / p.big_l();
}

double kink_charge_reference_expression(const ModelParams& p) {
    const double lam = p.lambda();
    const double big_l = p.big_l();
    return (1.0 + std::sqrt(1.0 + 2.0 * lam * lam / big_l)) / (2.0 * big_l) +
           (1.0 + lam * lam / big_l) * std::asin(lam / std::sqrt(big_l + lam * lam)) /
               (lam * std::sqrt(big_l));
}

double bps_defect(const KinkProfile& profile, const SolverConfig& cfg) {
    return total_energy(profile, cfg) - std::abs(kink_charge_quadrature(profile, cfg));
}

double tail_bound(const KinkProfile& profile) {
    if (profile.trivial || profile.size() == 0) {
        return 0.0;
    }
    const double kappa = profile.params.kappa();
    const auto tail = [&](double value, long vacuum) {
        const double d = std::abs(value - static_cast<double>(vacuum) * pi);
        return 0.5 * d * d * std::sqrt(1.0 + kappa * d * d) / profile.params.big_l();
    };
    return tail(profile.alpha.front(), profile.left_vacuum()) +
           tail(profile.alpha.back(), profile.right_vacuum());
}

EnergyChargeReport energy_charge_report(const KinkProfile& profile, const SolverConfig& cfg) {
    EnergyChargeReport r{0.0, 0.0, 0.0, 0.0, 0.0, profile.params};
    if (profile.trivial) {
        return r;
    }
    r.energy = total_energy(profile, cfg);
    r.charge_quadrature = kink_charge_quadrature(profile, cfg);
    const double q = kink_charge_closed_form(profile.params);
    r.charge_closed_form = profile.sign == KinkSign::minus ? q : -q;
    r.bps_defect = r.energy - std::abs(r.charge_quadrature);
    r.tail_bound = tail_bound(profile);
    return r;
}

DiagnosticsReport equivalence_diagnostics(const KinkProfile& profile) {
    DiagnosticsReport d;
    const std::size_t n = profile.size();
    if (n == 0 || profile.trivial) {
        return d;
    }
    const ModelParams& p = profile.params;
    const std::vector<double> second = differentiate(profile);
    double prev_product = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const PointState s = profile.at(i);
        const PPair pp = p_plus_minus(s, p);
        const double product = pp.plus * pp.minus;
        d.max_bps_residual =
            std::max(d.max_bps_residual, std::abs(bps_residual(s, profile.sign, p)));
        d.max_abs_p_plus = std::max(d.max_abs_p_plus, std::abs(pp.plus));
        d.max_abs_p_minus = std::max(d.max_abs_p_minus, std::abs(pp.minus));
        d.pp_product_max_abs = std::max(d.pp_product_max_abs, std::abs(product));
        if (i > 0) {
            d.pp_product_variation += std::abs(product - prev_product);
        }
        prev_product = product;
        if (i >= 2 && i + 2 < n) {
            d.max_second_order_residual =
                std::max(d.max_second_order_residual,
                         std::abs(second_order_residual(s.alpha, s.dalpha, second[i], p)));
        }
    }
    const PPair first = p_plus_minus(profile.at(0), p);
    const PPair last = p_plus_minus(profile.at(n - 1), p);
    d.endpoint_p_values = {std::max(std::abs(first.plus), std::abs(last.plus)),
                           std::max(std::abs(first.minus), std::abs(last.minus))};
    return d;
}

std::vector<SweepItem> sweep(std::span<const double> kappa_values, double big_l,
                             const SolverConfig& cfg) {
    const auto one = [big_l, cfg](double kappa) {
        SweepItem item;
        item.kappa = kappa;
        try {
            if (!(kappa > 0.0) || !std::isfinite(kappa)) {
                throw DomainError("kappa must be positive and finite");
            }
            const ModelParams p = ModelParams::from_kappa(kappa, big_l);
            const ImplicitSolution sol(p, 0.0, KinkSign::minus);
            const KinkProfile prof = closed_form_profile(sol, default_grid(p, 0.0, cfg));
            item.report = energy_charge_report(prof, cfg);
        } catch (const std::exception& e) {
            item.error = e.what();
        }
        return item;
    };
    const std::size_t batch = std::max(1u, std::thread::hardware_concurrency());
    std::vector<SweepItem> out;
    out.reserve(kappa_values.size());
    for (std::size_t start = 0; start < kappa_values.size(); start += batch) {
        const std::size_t stop = std::min(kappa_values.size(), start + batch);
        std::vector<std::future<SweepItem>> pending;
        for (std::size_t i = start; i < stop; ++i) {
            pending.push_back(std::async(std::launch::async, one, kappa_values[i]));
        }
        for (auto& f : pending) {
            out.push_back(f.get());
        }
    }
    return out;
}

}  // namespace bpskink
