/// @file shift.hpp
/// @brief The weight function a(zeta), the constants sigma_l, alpha_l, M, C*,
///        the shift ODE X(t), and the y-coordinate change of variables.
///
/// The weight is a(zeta) = 1 + (u_- - u~(zeta))/sqrt(delta), increasing from
/// 1 to 1 + sqrt(delta) across the shock, with a'(zeta) = -u~'(zeta)/
/// sqrt(delta) > 0.  The shift solves
///     Xdot = -(M/delta) [ Int a u~' (u - u~) dx
///                         + (1/sigma) Int a (p(v~))_x (v - v~) dx ],
/// with the profile evaluated at zeta = x - sigma t - X - beta (impermeable)
/// or zeta = xi - (sigma - sigma_-) t - X - beta (inflow), and is
/// co-integrated with the PDE using the same two-stage scheme and dt.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsshock/shock_profile.hpp"
#include "nsshock/solver.hpp"

namespace nsshock {

/// Constants of the weighted-entropy analysis evaluated at the left state:
///   sigma_l = sqrt(-p'(v_-)),
///   alpha_l = (gamma+1) / (2 gamma sigma_l p(v_-)),
///   M       = (3/2) sigma_l^3 alpha_l,
///   C*      = (1/2) (1/sigma_l - sqrt(delta) (gamma+1)/(gamma p(v_-))).
/// C* must be positive for the maximized quadratic structure to make sense;
/// the constructor rejects delta too large for that unless
/// allow_inadmissible is set, in which case C* is floored at a small positive
/// value and flagged (used by the deliberate negative-control runs).
struct WeightParams {
    double delta = 0.0;
    double beta = 0.0;
    double sigma_l = 0.0;
    double alpha_l = 0.0;
    double big_m = 0.0;
    double c_star = 0.0;
    bool sup_weight_at_limit = false;  ///< sqrt(delta) >= 1/2 (sup a >= 3/2)
    bool c_star_clamped = false;       ///< C* <= 0 was floored (inadmissible delta)

    WeightParams(const GasLaw& law, const EndStates& end, double beta_,
                 bool allow_inadmissible = false) {
        if (!(end.delta > 0.0))
            throw std::invalid_argument("WeightParams: delta must be positive");
        if (!(beta_ > 0.0))
            throw std::invalid_argument("WeightParams: beta must be positive");
        delta = end.delta;
        beta = beta_;
        const double g = law.gamma();
        const double p_minus = law.pressure(end.v_minus);
        sigma_l = std::sqrt(-law.dpressure(end.v_minus));
        alpha_l = (g + 1.0) / (2.0 * g * sigma_l * p_minus);
        big_m = 1.5 * sigma_l * sigma_l * sigma_l * alpha_l;
        c_star = 0.5 * (1.0 / sigma_l - std::sqrt(delta) * (g + 1.0) / (g * p_minus));
        sup_weight_at_limit = std::sqrt(delta) >= 0.5;
        if (!(c_star > 0.0)) {
            if (!allow_inadmissible)
                throw std::invalid_argument(
                    "WeightParams: delta = " + std::to_string(delta) +
                    " makes C* = " + std::to_string(c_star) +
                    " nonpositive; the maximized decomposition requires C* > 0");
            // Negative control: keep the diagnostics well-defined with a
            // small positive floor and record the clamp.
            c_star = 0.05 / sigma_l;
            c_star_clamped = true;
        }
    }
};

/// Weight value and derivative at one zeta.
struct WeightValue {
    double a = 1.0;
    double da = 0.0;
};

/// a(zeta) = 1 + (u_- - u~(zeta))/sqrt(delta) (which is 1 - u~/sqrt(delta)
/// for the impermeable wall, where u_- = 0); a' = -u~'/sqrt(delta) > 0.
inline WeightValue weight_eval(const ShockProfile& profile, const WeightParams& params,
                               double zeta) {
    const auto s = profile(zeta);
    const double rd = std::sqrt(params.delta);
    return {1.0 + (profile.end_states().u_minus - s.u) / rd, -s.du / rd};
}

/// Current shift, its rate, and the recorded history.
struct ShiftState {
    double t = 0.0;
    double X = 0.0;     ///< X(0) = 0
    double Xdot = 0.0;  ///< most recently evaluated rate
    struct Record { double t, X, Xdot; };
    std::vector<Record> history;  ///< piecewise-linear discrete record
};

/// Right-hand side of the shift ODE at shift value X and time t, by trapezoid
/// quadrature on the solver grid.
/// @throws std::invalid_argument if the state does not match the grid.
inline double shift_rhs(const Problem& problem, const State& state,
                        const WeightParams& params, double X, double t) {
    const Grid& grid = problem.grid;
    if (state.v.size() != grid.n_nodes() || state.u.size() != grid.n_nodes())
        throw std::invalid_argument("shift_rhs: state incompatible with problem grid");
    const ShockProfile& profile = *problem.profile;
    const GasLaw& law = problem.law;
    const double sigma = problem.end.sigma;
    const std::size_t n = grid.n_nodes();
    const double dx = grid.dx();
    const double rd = std::sqrt(params.delta);
    const double u_minus = problem.end.u_minus;

    // Both integrands carry a profile-derivative factor, which is exactly
    // zero wherever the table has flattened to the far-field states; restrict
    // the quadrature to the resolvable support.
    const double frame = grid.x_at(0) - problem.zeta(grid.x_at(0), t, X);
    const double x_lo = profile.support_front() + frame;
    const double x_hi = profile.support_back() + frame;
    std::size_t i_lo = x_lo <= 0.0 ? 0 : static_cast<std::size_t>(x_lo / dx);
    std::size_t i_hi = x_hi >= grid.length
                           ? n - 1
                           : static_cast<std::size_t>(x_hi / dx) + 1;
    if (i_hi >= n) i_hi = n - 1;

    double acc = 0.0;
    for (std::size_t i = i_lo; i <= i_hi; ++i) {
        const auto ps = profile(problem.zeta(grid.x_at(i), t, X));
        const double a = 1.0 + (u_minus - ps.u) / rd;
        const double integrand =
            a * ps.du * (state.u[i] - ps.u) +
            (1.0 / sigma) * a * law.dpressure(ps.v) * ps.dv * (state.v[i] - ps.v);
        acc += (i == 0 || i + 1 == n) ? 0.5 * integrand : integrand;
    }
    return -(params.big_m / params.delta) * acc * dx;
}

/// Single-stage Euler update of the shift record (linear in the rate), used
/// as the building block of the two-stage co-integration: the run loop calls
/// it with the Heun-averaged rate so the shift sees exactly the PDE stages.
/// Exact for constant rates by construction.
inline ShiftState advance_shift(const ShiftState& shift, double rate, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("advance_shift: dt must be positive");
    ShiftState next = shift;
    next.t = shift.t + dt;
    next.X = shift.X + rate * dt;
    next.Xdot = rate;
    next.history.push_back({next.t, next.X, rate});
    return next;
}

/// The y-coordinate of the sharp Poincare estimate:
///     y(x) = (u_- - u~(x - sigma t - X - beta)) / delta  in (0, 1),
/// monotone increasing in x.  y0 = y(0) must stay under 1/6 for the
/// contraction argument; beta = 60/delta in the presets guarantees that with
/// a wide margin.  log_y0 is computed through the profile's analytic tail, so
/// it remains finite when y0 itself underflows.
struct YCoordinates {
    double y0 = 0.0;
    double log_y0 = 0.0;
    /// Monotone map evaluated at x (same frame conventions as the run).
    double operator()(double x) const {
        const auto s = (*profile)(x - frame_shift);
        return (u_minus - s.u) / delta;
    }
    const ShockProfile* profile = nullptr;
    double frame_shift = 0.0;  ///< sigma t + X + beta (plus -sigma_- t inflow)
    double u_minus = 0.0;
    double delta = 0.0;
};

inline YCoordinates y_coordinates(const Problem& problem, const WeightParams& params,
                                  double X, double t) {
    const ShockProfile& profile = *problem.profile;
    YCoordinates y;
    y.profile = &profile;
    y.frame_shift = (problem.end.sigma - problem.end.sigma_minus) * t + X + problem.beta;
    y.u_minus = problem.end.u_minus;
    y.delta = params.delta;
    const double zeta0 = -y.frame_shift;
    // u_- - u~ = sigma (v~ - v_-): use the analytic left tail for zeta deep
    // below the table.
    const double log_dev = profile.log_left_tail_deviation(zeta0);
    y.log_y0 = std::log(problem.end.sigma) + log_dev - std::log(params.delta);
    y.y0 = problem.end.sigma * profile.tail_deviation_v(zeta0) / params.delta;
    if (!(y.y0 >= 0.0 && y.y0 < 1.0))
        throw std::logic_error("y_coordinates: y0 outside [0, 1)");
    return y;
}

}  // namespace nsshock
