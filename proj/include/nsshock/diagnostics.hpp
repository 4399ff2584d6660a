/// @file diagnostics.hpp
/// @brief Every functional, identity, and inequality of the weighted
///        relative-entropy analysis, evaluated on solver states: the term
///        decomposition of the entropy identity, good terms, boundary terms,
///        effective velocity, the sharp Poincare inequality, and the
///        headline convergence metrics.
///
/// Conventions.  Spatial derivatives of the *numerical* fields use the same
/// second-order stencils as the solver (one-sided at the ends); profile
/// derivatives always use the exact closed-form evaluators.  All integrals
/// are trapezoid sums on the solver grid.  Boundary terms are assembled from
/// the profile's analytic tail deviation, which stays meaningful far below
/// double round-off of the tabulated values.
///
/// The generic constants multiplying B5 and B6 in the maximized bad-term
/// bound are existential in the analysis; they are normalized to 1 here so
/// the reported values are the bare integrals delta*Int a_x |dp|^2 and
/// Int a_x |dp|^3.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nsshock/gas.hpp"
#include "nsshock/shift.hpp"
#include "nsshock/shock_profile.hpp"
#include "nsshock/solver.hpp"

namespace nsshock {

// ---------------------------------------------------------------------------
// Discrete derivative stencils (numerical fields only).

namespace stencil {

/// Second-order first derivative: central interior, one-sided at the ends.
inline void d_dx(const std::vector<double>& f, double dx, std::vector<double>& out) {
    const std::size_t n = f.size();
    out.resize(n);
    if (n < 3) throw std::invalid_argument("stencil::d_dx: need >= 3 nodes");
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
    out[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
}

/// Second derivative: 3-point interior, one-sided 4-point at the ends
/// (both second-order accurate).
inline void d2_dx2(const std::vector<double>& f, double dx, std::vector<double>& out) {
    const std::size_t n = f.size();
    out.resize(n);
    if (n < 4) throw std::invalid_argument("stencil::d2_dx2: need >= 4 nodes");
    const double h2 = dx * dx;
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    for (std::size_t i = 1; i + 1 < n; ++i)
        out[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    out[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
}

}  // namespace stencil

// ---------------------------------------------------------------------------
// Term breakdown.

/// All entropy-identity terms at one time.  Naming follows the analysis:
/// jbad/jgood are the five/three integrals of the identity
///     d/dt Int a eta(U|U~) = Xdot Y + J_bad - J_good + P,
/// b/g1/g2/d_visc the maximized decomposition B_1..B_6, G_1, G_2, D, and
/// y_parts the six-way split of Y with Y = sum Y_i exactly.
struct TermBreakdown {
    double t = 0.0;
    double weighted_entropy = 0.0;  ///< Int a eta(U|U~)
    double y_functional = 0.0;      ///< Y
    double jbad[5] = {0, 0, 0, 0, 0};
    double jgood[3] = {0, 0, 0};
    double boundary_p = 0.0;  ///< P
    double b[6] = {0, 0, 0, 0, 0, 0};
    double g1 = 0.0, g2 = 0.0, d_visc = 0.0;
    double gs = 0.0, dv1 = 0.0, du1 = 0.0, du2 = 0.0;
    double y_parts[6] = {0, 0, 0, 0, 0, 0};

    double jbad_total() const { return jbad[0] + jbad[1] + jbad[2] + jbad[3] + jbad[4]; }
    double jgood_total() const { return jgood[0] + jgood[1] + jgood[2]; }
    double y_parts_sum() const {
        return y_parts[0] + y_parts[1] + y_parts[2] + y_parts[3] + y_parts[4] +
               y_parts[5];
    }
};

/// Pointwise relative entropy eta(U|U~^{X,beta}) on the grid.
inline std::vector<double> relative_entropy_field(const Problem& problem,
                                                  const State& state, double X) {
    state.require_valid(problem.grid);
    const std::size_t n = problem.grid.n_nodes();
    std::vector<double> field(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ps = (*problem.profile)(problem.zeta(problem.grid.x_at(i), state.t, X));
        field[i] = problem.law.relative_entropy(state.v[i], state.u[i], ps.v, ps.u);
    }
    return field;
}

/// Computes every term of the entropy identity and its maximized
/// decomposition by trapezoid quadrature on the solver grid.
inline TermBreakdown term_breakdown(const Problem& problem, const State& state,
                                    const WeightParams& params, double X) {
    state.require_valid(problem.grid);
    const Grid& grid = problem.grid;
    const GasLaw& law = problem.law;
    const ShockProfile& profile = *problem.profile;
    const EndStates& end = problem.end;
    const std::size_t n = grid.n_nodes();
    const double dx = grid.dx();
    const double rd = std::sqrt(params.delta);
    const double sigma = end.sigma;
    const double cs = params.c_star;

    TermBreakdown out;
    out.t = state.t;

    // Discrete derivatives of the numerical fields (solver stencils).
    std::vector<double> pv(n), ux(n), uxx(n), px(n);
    for (std::size_t i = 0; i < n; ++i) pv[i] = law.pressure(state.v[i]);
    stencil::d_dx(state.u, dx, ux);
    stencil::d2_dx2(state.u, dx, uxx);
    stencil::d_dx(pv, dx, px);

    for (std::size_t i = 0; i < n; ++i) {
        const double w = ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * dx;
        const auto ps = profile(problem.zeta(grid.x_at(i), state.t, X));
        const double a = 1.0 + (end.u_minus - ps.u) / rd;
        const double ax = -ps.du / rd;  // a' = -u~'/sqrt(delta) = sigma v~'/sqrt(delta)

        const double du = state.u[i] - ps.u;
        const double dv = state.v[i] - ps.v;
        const double dp = pv[i] - law.pressure(ps.v);
        const double dux = ux[i] - ps.du;                            // (u-u~)_x
        const double duxx = uxx[i] - ps.d2u;                         // (u-u~)_xx
        const double dpx = px[i] - law.dpressure(ps.v) * ps.dv;      // (p(v)-p(v~))_x
        const double q_rel = law.relative_internal_energy(state.v[i], ps.v);
        const double p_rel = law.relative_pressure(state.v[i], ps.v);
        const double eta = 0.5 * du * du + q_rel;
        const double vvt = state.v[i] * ps.v;

        out.weighted_entropy += w * a * eta;

        // Y = -Int a_x eta + Int a u~_x (u-u~) - Int a p'(v~) v~_x (v-v~).
        out.y_functional +=
            w * (-ax * eta + a * ps.du * du - a * law.dpressure(ps.v) * ps.dv * dv);

        out.jbad[0] += w * ax * dp * du;
        out.jbad[1] += w * (-a * ps.du * p_rel);
        out.jbad[2] += w * (-ax * du / state.v[i] * dux);
        out.jbad[3] += w * (ax * du * dv * ps.du / vvt);
        out.jbad[4] += w * (a * dux * dv * ps.du / vvt);

        out.jgood[0] += w * (0.5 * sigma * ax * du * du);
        out.jgood[1] += w * (sigma * ax * q_rel);
        out.jgood[2] += w * (a / state.v[i] * dux * dux);

        out.b[0] += w * (ax * du * du / (4.0 * cs));
        // b[1], b[2], b[3] coincide with jbad[2..4]; accumulated below.
        out.b[4] += w * (params.delta * ax * dp * dp);
        out.b[5] += w * (ax * std::abs(dp * dp * dp));

        const double g1_arg = dp - du / (2.0 * cs);
        out.g1 += w * (cs * ax * g1_arg * g1_arg);
        out.g2 += w * (0.5 * sigma * ax * du * du);
        out.d_visc += w * (a / state.v[i] * dux * dux);

        out.gs += w * (std::abs(ps.du) * du * du);
        out.dv1 += w * (dpx * dpx);
        out.du1 += w * (dux * dux);
        out.du2 += w * (duxx * duxx);

        out.y_parts[0] += w * (a * ps.du * du);
        out.y_parts[1] += w * (a * law.dpressure(ps.v) * ps.dv * du / sigma);
        out.y_parts[2] += w * (-0.5 * ax * (du - 2.0 * cs * dp) * (du + 2.0 * cs * dp));
        out.y_parts[3] += w * (-2.0 * cs * cs * ax * dp * dp - ax * q_rel);
        out.y_parts[4] +=
            w * (-a * law.dpressure(ps.v) * ps.dv * (dv + 2.0 * cs / sigma * dp));
        out.y_parts[5] +=
            w * (a * law.dpressure(ps.v) * ps.dv * (2.0 * cs / sigma) * (dp - du / (2.0 * cs)));
    }
    out.b[1] = out.jbad[2];
    out.b[2] = out.jbad[3];
    out.b[3] = out.jbad[4];

    // Boundary term P at x = 0, from the analytic left-tail deviation
    // (zeta0 = -(sigma - sigma_-) t - X - beta is always deep in the left
    // tail, where the tabulated profile has flattened to round-off).
    {
        const double zeta0 = problem.zeta(0.0, state.t, X);
        const double dev = profile.tail_deviation_v(zeta0);        // v~ - v_-
        const double rate = profile.check_tail_decay().left.rate;  // linear tail
        const double vt0 = end.v_minus + dev;
        const double ut0 = end.u_minus - sigma * dev;
        const double dvt0 = rate * dev;           // v~'(zeta0)
        const double dut0 = -sigma * dvt0;        // u~'(zeta0)
        const double a0 = 1.0 + sigma * dev / rd; // a(zeta0)
        if (problem.kind == ProblemKind::impermeable) {
            const double dp0 = pv[0] - law.pressure(vt0);
            const double dv0 = state.v[0] - vt0;
            out.boundary_p = -a0 * ut0 * dp0 + a0 * ut0 * (ux[0] - dut0) / state.v[0] -
                             a0 * ut0 * dv0 * dut0 / (state.v[0] * vt0);
        } else {
            // (v,u)(0) = (v_-, u_-) exactly (Dirichlet), so the boundary
            // perturbation is the tail deviation itself; evaluate the
            // relative quantities through their quadratic forms to avoid
            // catastrophic cancellation at |dev| << round-off(v_-).
            const double du0 = sigma * dev;                        // u - u~ at 0
            const double dv0 = -dev;                               // v - v~ at 0
            const double dp0 = law.dpressure(end.v_minus) * dv0;   // p(v)-p(v~)
            const double q0 = -0.5 * law.dpressure(end.v_minus) * dev * dev;
            const double dux0 = ux[0] - dut0;
            const double sm = end.sigma_minus;
            out.boundary_p = a0 * du0 * dp0 - a0 * 0.5 * sm * du0 * du0 -
                             a0 * sm * q0 - a0 / end.v_minus * du0 * dux0 -
                             a0 / (end.v_minus * vt0) * du0 * dv0 * dut0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Entropy identity residual.

/// The pieces of the identity needed for a residual check at one snapshot.
struct IdentitySnapshot {
    double t = 0.0;
    double weighted_entropy = 0.0;
    double xdot = 0.0;
    double y_functional = 0.0;
    double jbad = 0.0;
    double jgood = 0.0;
    double boundary_p = 0.0;
};

inline IdentitySnapshot make_identity_snapshot(const TermBreakdown& bd, double xdot) {
    return {bd.t, bd.weighted_entropy, xdot, bd.y_functional, bd.jbad_total(),
            bd.jgood_total(), bd.boundary_p};
}

/// Centered finite-difference d/dt of Int a eta across (prev, next) minus the
/// identity right-hand side at mid, normalized by the largest participating
/// term (with an absolute floor so zero-perturbation data report 0).
inline double entropy_identity_residual(const IdentitySnapshot& prev,
                                        const IdentitySnapshot& mid,
                                        const IdentitySnapshot& next,
                                        double floor = 1e-14) {
    if (!(prev.t < mid.t && mid.t < next.t))
        throw std::invalid_argument("entropy_identity_residual: need increasing times");
    const double dWdt =
        (next.weighted_entropy - prev.weighted_entropy) / (next.t - prev.t);
    const double rhs = mid.xdot * mid.y_functional + mid.jbad - mid.jgood + mid.boundary_p;
    const double scale = std::max({std::abs(dWdt), std::abs(mid.xdot * mid.y_functional),
                                   std::abs(mid.jbad), std::abs(mid.jgood),
                                   std::abs(mid.boundary_p), floor});
    return (dWdt - rhs) / scale;
}

/// Residual series over a full record (one value per interior snapshot).
/// @throws std::invalid_argument with fewer than 2 snapshots.
inline std::vector<double> entropy_identity_residual_series(
    const std::vector<IdentitySnapshot>& snaps, double floor = 1e-14) {
    if (snaps.size() < 2)
        throw std::invalid_argument("entropy_identity_residual_series: need >= 2 snapshots");
    std::vector<double> res;
    for (std::size_t i = 1; i + 1 < snaps.size(); ++i)
        res.push_back(entropy_identity_residual(snaps[i - 1], snaps[i], snaps[i + 1], floor));
    return res;
}

// ---------------------------------------------------------------------------
// Effective velocity.

/// h = u - (ln v)_x with the solver's second-order stencils.
inline std::vector<double> effective_velocity(const Grid& grid, const State& state) {
    state.require_valid(grid);
    const std::size_t n = grid.n_nodes();
    std::vector<double> lnv(n), dlnv(n), h(n);
    for (std::size_t i = 0; i < n; ++i) lnv[i] = std::log(state.v[i]);
    stencil::d_dx(lnv, grid.dx(), dlnv);
    for (std::size_t i = 0; i < n; ++i) h[i] = state.u[i] - dlnv[i];
    return h;
}

/// h-relative entropy Int (|h - h~|^2/2 + Q(v|v~)) dx with
/// h~ = u~ - (ln v~)_x = u~ - v~'/v~ from the exact profile evaluators.
inline double h_entropy(const Problem& problem, const State& state, double X) {
    const Grid& grid = problem.grid;
    const std::vector<double> h = effective_velocity(grid, state);
    const std::size_t n = grid.n_nodes();
    const double dx = grid.dx();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ps = (*problem.profile)(problem.zeta(grid.x_at(i), state.t, X));
        const double ht = ps.u - ps.dv / ps.v;
        const double dh = h[i] - ht;
        const double q_rel = problem.law.relative_internal_energy(state.v[i], ps.v);
        acc += ((i == 0 || i + 1 == n) ? 0.5 : 1.0) * (0.5 * dh * dh + q_rel) * dx;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Sharp Poincare inequality.

/// Both sides of the weighted Poincare inequality
///     Int_c^d |f - mean(f)|^2 <= (1/2) Int_c^d (y-c)(d-y) |f'|^2
/// for a piecewise-linear f given by samples (y_i, f_i), by exact polynomial
/// quadrature per cell (the integrands are quadratic resp. cubic).
struct PoincarePair {
    double lhs = 0.0;
    double rhs = 0.0;
};

inline PoincarePair poincare_gap(const std::vector<double>& y,
                                 const std::vector<double>& f) {
    if (y.size() != f.size() || y.size() < 2)
        throw std::invalid_argument("poincare_gap: need >= 2 matching samples");
    const double c = y.front(), d = y.back();
    if (!(c < d)) throw std::invalid_argument("poincare_gap: require c < d");
    for (std::size_t i = 0; i + 1 < y.size(); ++i)
        if (!(y[i] < y[i + 1]))
            throw std::invalid_argument("poincare_gap: samples must increase in y");

    // Exact integral of the piecewise-linear f (trapezoid is exact here).
    double integral_f = 0.0;
    for (std::size_t i = 0; i + 1 < y.size(); ++i)
        integral_f += 0.5 * (f[i] + f[i + 1]) * (y[i + 1] - y[i]);
    const double mean = integral_f / (d - c);

    PoincarePair out;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
        const double h = y[i + 1] - y[i];
        const double ga = f[i] - mean, gb = f[i + 1] - mean;
        // Int of a linear function squared over the cell.
        out.lhs += h * (ga * ga + ga * gb + gb * gb) / 3.0;
        // Weight integral Int (y-c)(d-y) dy over the cell, closed form.
        auto anti = [c, d](double t) {
            return -t * t * t / 3.0 + 0.5 * (c + d) * t * t - c * d * t;
        };
        const double slope = (f[i + 1] - f[i]) / h;
        out.rhs += 0.5 * slope * slope * (anti(y[i + 1]) - anti(y[i]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Convergence metrics and the R1 inequality.

/// Headline metrics of the stability theorems at one time.
struct ConvergenceMetrics {
    double sup_perturbation = 0.0;  ///< sup_x |(v-v~, u-u~)| (Euclidean norm)
    double xdot_abs = 0.0;
    double x_over_t = 0.0;  ///< 0 below t_floor
    double h1_perturbation = 0.0;
};

inline ConvergenceMetrics convergence_metrics(const Problem& problem, const State& state,
                                              const ShiftState& shift,
                                              double t_floor = 1e-9) {
    state.require_valid(problem.grid);
    const Grid& grid = problem.grid;
    const std::size_t n = grid.n_nodes();
    const double dx = grid.dx();
    ConvergenceMetrics m;
    m.xdot_abs = std::abs(shift.Xdot);
    m.x_over_t = state.t > t_floor ? shift.X / state.t : 0.0;
    std::vector<double> dv(n), du(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ps = (*problem.profile)(problem.zeta(grid.x_at(i), state.t, shift.X));
        dv[i] = state.v[i] - ps.v;
        du[i] = state.u[i] - ps.u;
        m.sup_perturbation = std::max(m.sup_perturbation, std::hypot(dv[i], du[i]));
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (dv[i] * dv[i] + du[i] * du[i]) * dx;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double gv = (dv[i + 1] - dv[i]) / dx;
        const double gu = (du[i + 1] - du[i]) / dx;
        acc += (gv * gv + gu * gu) * dx;
    }
    m.h1_perturbation = std::sqrt(acc);
    return m;
}

/// Margin of the key contraction inequality
///     R1 = -delta/(2M) |Xdot|^2 + B1 - G2 - (3/4) D <= -C1 G^S,
/// with C1 = sigma_l^3 alpha_l / 8.  Nonnegative margin means it holds;
/// violations are reported, never thrown (the inequality is asymptotic in
/// the smallness parameters).
inline double r1_inequality_check(const TermBreakdown& bd, const WeightParams& params,
                                  double xdot) {
    const double c1 = params.sigma_l * params.sigma_l * params.sigma_l * params.alpha_l / 8.0;
    const double r1 = -params.delta / (2.0 * params.big_m) * xdot * xdot + bd.b[0] -
                      bd.g2 - 0.75 * bd.d_visc;
    return -c1 * bd.gs - r1;
}

}  // namespace nsshock
