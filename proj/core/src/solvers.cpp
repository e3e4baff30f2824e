#include "bpskink/solvers.hpp"

#include "bpskink/errors.hpp"
#include "ode_march.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

namespace bpskink {

namespace {

using detail::OdeMarcher;
using detail::OdeState;

double parity(long n) noexcept { return n % 2 == 0 ? 1.0 : -1.0; }

// Index of the sample nearest to x.
std::size_t nearest_index(std::span<const double> xs, double x) {
    const auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it == xs.begin()) {
        return 0;
    }
    if (it == xs.end()) {
        return xs.size() - 1;
    }
    const auto i = static_cast<std::size_t>(it - xs.begin());
    return (x - xs[i - 1] <= xs[i] - x) ? i - 1 : i;
}

// First-order equation written for zeta = alpha - vacuum * pi, which keeps the
// approach to that vacuum at full relative precision.
struct FirstOrderSystem {
    ModelParams params;
    double coeff;  // -sign_factor * (-1)^vacuum

    FirstOrderSystem(const ModelParams& p, KinkSign sign, long vacuum)
        : params(p), coeff(-sign_factor(sign) * parity(vacuum)) {}

    double slope(double zeta) const noexcept {
        const double sn = std::sin(zeta);
        return coeff * sn /
               std::sqrt(params.big_l() * params.big_l() + params.lambda() * sn * sn);
    }

    void operator()(const OdeState<1>& y, OdeState<1>& dy, double /*x*/) const {
        dy[0] = slope(y[0]);
    }
};

// Second-order equation; invariant under zeta -> zeta + k pi.
struct SecondOrderSystem {
    ModelParams params;

    void operator()(const OdeState<2>& y, OdeState<2>& dy, double /*x*/) const {
        dy[0] = y[1];
        dy[1] = second_order_rhs(y[0], y[1], params);
    }
};

// Split value = k pi + zeta with zeta in [-pi/2, pi/2].
void renormalize(double& zeta, long& k) noexcept {
    while (zeta > 0.5 * pi) {
        zeta -= pi;
        ++k;
    }
    while (zeta < -0.5 * pi) {
        zeta += pi;
        --k;
    }
}

double initial_step(const ModelParams& p) noexcept { return 1e-2 * p.big_l(); }

// The second-order flow is unstable on both tails, so local errors grow like
// exp(|dx| / L). Capping the step keeps the global error independent of the output grid.
double bvp_max_step(const ModelParams& p) noexcept { return p.big_l() / 64.0; }

struct BpsSamples {
    ModelParams params;
    SolverConfig cfg;
    KinkSign sign;
    double x0;
    long left_vacuum;
    long right_vacuum;
    std::vector<double> xs;
    std::vector<double> alpha;
};

PointState evaluate_bps(const BpsSamples& d, double x) {
    const std::size_t i = nearest_index(d.xs, x);
    const long vacuum = d.xs[i] >= d.x0 ? d.right_vacuum : d.left_vacuum;
    const FirstOrderSystem sys(d.params, d.sign, vacuum);
    OdeState<1> y{d.alpha[i] - static_cast<double>(vacuum) * pi};
    double xi = d.xs[i];
    OdeMarcher<1> marcher(d.cfg, initial_step(d.params));
    marcher.advance(sys, y, xi, x);
    return {static_cast<double>(vacuum) * pi + y[0], sys.slope(y[0])};
}

struct Trajectory {
    ModelParams params;
    SolverConfig cfg;
    std::vector<double> xs;
    std::vector<double> value;  // canonical field, 0 .. pi
    std::vector<double> slope;
};

PointState evaluate_trajectory(const Trajectory& t, double x) {
    const std::size_t i = nearest_index(t.xs, x);
    long k = 0;
    OdeState<2> y{t.value[i], t.slope[i]};
    renormalize(y[0], k);
    double xi = t.xs[i];
    OdeMarcher<2> marcher(t.cfg, initial_step(t.params), bvp_max_step(t.params));
    marcher.advance(SecondOrderSystem{t.params}, y, xi, x);
    return {static_cast<double>(k) * pi + y[0], y[1]};
}

struct ShotResult {
    bool reached = false;  // the target was met at or before x_max
    double end_value = 0.0;
};

// Canonical shot: start at tail_cut with the given slope and march across the grid.
ShotResult shoot(const ModelParams& p, const SolverConfig& cfg, const Grid& grid, double slope,
                 double target, Trajectory* record) {
    const double start = cfg.tail_cut;
    OdeState<2> y{start, slope};
    long k = 0;
    double x = grid.x_min();
    OdeMarcher<2> marcher(cfg, initial_step(p), bvp_max_step(p));
    const SecondOrderSystem sys{p};
    ShotResult r;
    if (record) {
        record->value.assign(grid.size(), 0.0);
        record->slope.assign(grid.size(), 0.0);
        record->value[0] = start;
        record->slope[0] = slope;
    }
    double value = start;
    for (std::size_t j = 1; j < grid.size(); ++j) {
        marcher.advance(sys, y, x, grid[j]);
        renormalize(y[0], k);
        value = static_cast<double>(k) * pi + y[0];
        if (record) {
            record->value[j] = value;
            record->slope[j] = y[1];
        }
        if (value >= target) {
            r.reached = true;
            if (!record && value >= pi) {
                break;  // went over the far vacuum; no need to continue
            }
        }
    }
    r.end_value = value;
    return r;
}

}  // namespace

void SolverConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw DomainError("SolverConfig: tolerances must be positive");
    }
    if (max_steps == 0) {
        throw DomainError("SolverConfig: max_steps must be positive");
    }
    if (!(tail_cut > 0.0 && tail_cut < 0.25 * pi)) {
        throw DomainError("SolverConfig: tail_cut must lie in (0, pi/4)");
    }
}

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw DomainError("Grid: at least two points required");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) {
            throw DomainError("Grid: non-finite abscissa");
        }
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw DomainError("Grid: abscissae must be strictly increasing");
        }
    }
}

Grid Grid::uniform(double x_min, double x_max, std::size_t n) {
    if (n < 2 || !(x_min < x_max)) {
        throw DomainError("Grid::uniform: need n >= 2 and x_min < x_max");
    }
    std::vector<double> pts(n);
    const double span = x_max - x_min;
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = x_min + span * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    pts.back() = x_max;
    return Grid(std::move(pts));
}

bool Grid::is_uniform() const noexcept {
    const std::size_t n = points_.size();
    const double h = (x_max() - x_min()) / static_cast<double>(n - 1);
    const double scale = std::max({h, std::abs(x_min()), std::abs(x_max())});
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(points_[i] - points_[i - 1] - h) > 1e-12 * scale) {
            return false;
        }
    }
    return true;
}

const char* to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::closed_form:
            return "closed_form";
        case Provenance::ode_first_order:
            return "ode";
        case Provenance::bvp_second_order:
            return "bvp";
    }
    return "unknown";
}

long KinkProfile::left_vacuum() const noexcept {
    if (trivial) {
        return vacuum_base;
    }
    return kink_orientation(sign, vacuum_base) > 0 ? vacuum_base : vacuum_base + 1;
}

long KinkProfile::right_vacuum() const noexcept {
    if (trivial) {
        return vacuum_base;
    }
    return kink_orientation(sign, vacuum_base) > 0 ? vacuum_base + 1 : vacuum_base;
}

Grid default_grid(const ModelParams& p, double x0, const SolverConfig& cfg, std::size_t n_points) {
    cfg.validate();
    const double kappa = p.kappa();
    // a = exp(u) removes the 1/a behaviour of the integrand at the tail end.
    const auto integrand = [kappa](double u) {
        const double a = std::exp(u);
        const double sn = std::sin(a);
        return std::sqrt(1.0 + kappa * sn * sn) * a / sn;
    };
    const double half = p.big_l() * quadrature(integrand, std::log(cfg.tail_cut),
                                               std::log(0.5 * pi), cfg);
    return Grid::uniform(x0 - half, x0 + half, n_points);
}

KinkProfile closed_form_profile(const ImplicitSolution& sol, const Grid& grid) {
    KinkProfile prof{grid, {}, {}, sol.params(), sol.sign(), sol.vacuum_base(),
                     Provenance::closed_form, false, {}};
    prof.alpha.resize(grid.size());
    prof.dalpha.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PointState s = sol.state(grid[i]);
        prof.alpha[i] = s.alpha;
        prof.dalpha[i] = s.dalpha;
    }
    prof.dense = [sol](double x) { return sol.state(x); };
    return prof;
}

KinkProfile vacuum_profile(const ModelParams& p, long n, const Grid& grid, Provenance provenance) {
    const double value = static_cast<double>(n) * pi;
    KinkProfile prof{grid,
                     std::vector<double>(grid.size(), value),
                     std::vector<double>(grid.size(), 0.0),
                     p,
                     KinkSign::minus,
                     n,
                     provenance,
                     true,
                     [value](double) { return PointState{value, 0.0}; }};
    return prof;
}

KinkProfile integrate_bps(const ModelParams& p, double x0, KinkSign sign, const SolverConfig& cfg,
                          const Grid& grid, long vacuum_base) {
    cfg.validate();
    if (!(grid.x_min() < x0 && x0 < grid.x_max())) {
        throw DomainError("integrate_bps: grid must contain x0 in its interior");
    }
    const int orient = kink_orientation(sign, vacuum_base);
    auto data = std::make_shared<BpsSamples>(BpsSamples{
        p, cfg, sign, x0, orient > 0 ? vacuum_base : vacuum_base + 1,
        orient > 0 ? vacuum_base + 1 : vacuum_base,
        std::vector<double>(grid.points().begin(), grid.points().end()),
        std::vector<double>(grid.size(), 0.0)});

    const double centre = static_cast<double>(vacuum_base) * pi + 0.5 * pi;
    const auto first_right =
        static_cast<std::size_t>(std::lower_bound(data->xs.begin(), data->xs.end(), x0) -
                                 data->xs.begin());

    // Outward from the centre towards each vacuum.
    {
        const long vac = data->right_vacuum;
        const FirstOrderSystem sys(p, sign, vac);
        OdeState<1> y{centre - static_cast<double>(vac) * pi};
        double x = x0;
        OdeMarcher<1> marcher(cfg, initial_step(p));
        for (std::size_t i = first_right; i < grid.size(); ++i) {
            marcher.advance(sys, y, x, grid[i]);
            data->alpha[i] = grid[i] == x0 ? centre : static_cast<double>(vac) * pi + y[0];
        }
    }
    {
        const long vac = data->left_vacuum;
        const FirstOrderSystem sys(p, sign, vac);
        OdeState<1> y{centre - static_cast<double>(vac) * pi};
        double x = x0;
        OdeMarcher<1> marcher(cfg, initial_step(p));
        for (std::size_t i = first_right; i-- > 0;) {
            marcher.advance(sys, y, x, grid[i]);
            data->alpha[i] = static_cast<double>(vac) * pi + y[0];
        }
    }

    KinkProfile prof{grid, data->alpha, {}, p, sign, vacuum_base, Provenance::ode_first_order,
                     false, {}};
    prof.dalpha.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        prof.dalpha[i] = bps_slope(prof.alpha[i], sign, p);
    }
    prof.dense = [data](double x) { return evaluate_bps(*data, x); };
    return prof;
}

KinkProfile solve_second_order_bvp(const ModelParams& p, const SolverConfig& cfg, const Grid& grid,
                                   long m, long n) {
    cfg.validate();
    if (m == n) {
        return vacuum_profile(p, m, grid, Provenance::bvp_second_order);
    }
    const BranchMapping branch = branch_map(m, n);
    if (!branch.valid) {
        throw DomainError("solve_second_order_bvp: only adjacent vacua (|m - n| = 1) admit a "
                          "finite-energy kink");
    }

    // Canonical problem beta: tail_cut -> pi - tail_cut; alpha = m pi + direction * beta.
    const double target = pi - cfg.tail_cut;
    double lo = 0.0;
    double hi = 2.0 / p.big_l();
    if (shoot(p, cfg, grid, lo, target, nullptr).reached ||
        !shoot(p, cfg, grid, hi, target, nullptr).reached) {
        throw NumericError("solve_second_order_bvp: shooting bracket [0, 2/L] not found for this "
                           "grid; the truncated problem has no monotone solution here");
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (shoot(p, cfg, grid, mid, target, nullptr).reached) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    auto raw = std::make_shared<Trajectory>(
        Trajectory{p, cfg, {grid.points().begin(), grid.points().end()}, {}, {}});
    Trajectory alt = *raw;
    const ShotResult r_lo = shoot(p, cfg, grid, lo, target, raw.get());
    const ShotResult r_hi = shoot(p, cfg, grid, hi, target, &alt);
    if (std::abs(r_hi.end_value - target) < std::abs(r_lo.end_value - target)) {
        raw->value = std::move(alt.value);
        raw->slope = std::move(alt.slope);
    }

    // Post-hoc translation: the midpoint value pi/2 is moved to the grid midpoint.
    const auto crossing = std::adjacent_find(
        raw->value.begin(), raw->value.end(),
        [](double a, double b) { return a < 0.5 * pi && b >= 0.5 * pi; });
    if (crossing == raw->value.end()) {
        throw NumericError("solve_second_order_bvp: shooting solution never crosses pi/2");
    }
    const auto ic = static_cast<std::size_t>(crossing - raw->value.begin());
    double a = grid[ic];
    double b = grid[ic + 1];
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) {
            break;
        }
        if (evaluate_trajectory(*raw, mid).alpha < 0.5 * pi) {
            a = mid;
        } else {
            b = mid;
        }
    }
    const double x_mid = 0.5 * (grid.x_min() + grid.x_max());
    const double shift = x_mid - 0.5 * (a + b);

    const double offset = static_cast<double>(m) * pi;
    const double direction = n > m ? 1.0 : -1.0;
    KinkProfile prof{grid, {}, {}, p, branch.sign, branch.vacuum_base,
                     Provenance::bvp_second_order, false, {}};
    prof.alpha.resize(grid.size());
    prof.dalpha.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PointState s = evaluate_trajectory(*raw, grid[i] - shift);
        prof.alpha[i] = offset + direction * s.alpha;
        prof.dalpha[i] = direction * s.dalpha;
    }
    prof.dense = [raw, shift, offset, direction](double x) {
        const PointState s = evaluate_trajectory(*raw, x - shift);
        return PointState{offset + direction * s.alpha, direction * s.dalpha};
    };
    return prof;
}

double quadrature(const std::function<double(double)>& f, double a, double b,
                  const SolverConfig& cfg) {
    if (!(a < b)) {
        throw DomainError("quadrature: need a < b");
    }
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 20, cfg.rel_tol, &error, &l1);
    if (!std::isfinite(value)) {
        throw NumericError("quadrature: non-finite result");
    }
    if (error > std::max(cfg.abs_tol, cfg.rel_tol * l1)) {
        throw NumericError("quadrature: error estimate " + std::to_string(error) +
                           " exceeds tolerance");
    }
    return value;
}

std::vector<double> differentiate(std::span<const double> values, const Grid& grid) {
    const std::size_t n = grid.size();
    if (n < 5 || values.size() != n) {
        throw DomainError("differentiate: need at least 5 samples matching the grid");
    }
    if (!grid.is_uniform()) {
        throw DomainError("differentiate: grid spacing is not uniform");
    }
    const double h = (grid.x_max() - grid.x_min()) / static_cast<double>(n - 1);
    const double h2 = h * h;
    const auto& f = values;
    std::vector<double> out(n);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        out[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) /
                 (12.0 * h2);
    }
    out[1] = (f[0] - 2.0 * f[1] + f[2]) / h2;
    out[n - 2] = (f[n - 3] - 2.0 * f[n - 2] + f[n - 1]) / h2;
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return out;
}

std::vector<double> differentiate(const KinkProfile& profile) {
    return differentiate(profile.alpha, profile.grid);
}

double sup_distance(const KinkProfile& a, const KinkProfile& b) {
    double worst = 0.0;
    const bool same_grid = a.grid.size() == b.grid.size() &&
                           std::equal(a.grid.points().begin(), a.grid.points().end(),
                                      b.grid.points().begin());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double other = 0.0;
        if (same_grid) {
            other = b.alpha[i];
        } else if (b.dense) {
            other = b.dense(a.grid[i]).alpha;
        } else {
            throw DomainError("sup_distance: grids differ and the second profile has no evaluator");
        }
        worst = std::max(worst, std::abs(a.alpha[i] - other));
    }
    return worst;
}

}  // namespace bpskink
