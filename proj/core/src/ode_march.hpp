#pragma once

#include "bpskink/errors.hpp"
#include "bpskink/solvers.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

namespace bpskink::detail {

template <std::size_t N>
using OdeState = std::array<double, N>;

// Controlled Dormand-Prince 5(4) stepping that lands exactly on requested abscissae.
// One instance follows one trajectory; the FSAL derivative cache is tied to it.
template <std::size_t N>
class OdeMarcher {
public:
    OdeMarcher(const SolverConfig& cfg, double initial_step,
               double max_step = std::numeric_limits<double>::infinity())
        : stepper_(boost::numeric::odeint::make_controlled(
              cfg.abs_tol, cfg.rel_tol,
              boost::numeric::odeint::runge_kutta_dopri5<OdeState<N>>())),
          max_steps_(cfg.max_steps),
          max_step_(max_step),
          step_(std::min(std::abs(initial_step), max_step)) {}

    template <class System>
    void advance(System&& system, OdeState<N>& y, double& x, double x_to) {
        if (x == x_to) {
            return;
        }
        const double dir = x_to > x ? 1.0 : -1.0;
        while ((x_to - x) * dir > 0.0) {
            if (++steps_ > max_steps_) {
                throw NumericError("ODE integration exhausted max_steps (" +
                                   std::to_string(max_steps_) + ") at x = " + std::to_string(x));
            }
            double h = dir * std::min(step_, max_step_);
            const bool clipped = (x + h - x_to) * dir >= 0.0;
            if (clipped) {
                h = x_to - x;
            }
            double t = x;
            const auto result = stepper_.try_step(system, y, t, h);
            if (result == boost::numeric::odeint::success) {
                if (clipped) {
                    x = x_to;
                    step_ = std::max(step_, std::abs(h));
                } else {
                    x = t;
                    step_ = std::abs(h);
                }
            } else {
                step_ = std::abs(h);
                if (!(step_ > 0.0) || x + dir * step_ == x) {
                    throw NumericError("ODE step size underflow at x = " + std::to_string(x));
                }
            }
        }
    }

    std::size_t steps() const noexcept { return steps_; }

private:
    using Stepper = boost::numeric::odeint::controlled_runge_kutta<
        boost::numeric::odeint::runge_kutta_dopri5<OdeState<N>>>;
    Stepper stepper_;
    std::size_t max_steps_;
    double max_step_;
    std::size_t steps_ = 0;
    double step_;
};

}  // namespace bpskink::detail
