/// @file solver.hpp
/// @brief Semi-discrete finite-difference solver for the impermeable-wall and
///        inflow systems on a truncated half-line.
///
/// Space: second-order central differences for p(v)_x, flux form at half
/// nodes for the viscous term (u_x/v)_x, and first-order upwind for the
/// sigma_- convection of the inflow system.  The convected profile moves in
/// the +xi direction (the shifted frame has sigma_- < 0, so -sigma_- * q_xi
/// advects rightward) and the upwind stencil is therefore biased toward the
/// boundary.  Time: explicit two-stage second-order Runge-Kutta (Heun) under
/// a parabolic CFL restriction.
///
/// Boundary handling: x = 0 carries the Dirichlet data of the problem (u = 0
/// for the impermeable wall; (v, u) = (v_-, u_-) for inflow); the far end
/// x = L imposes (v_+, u_+).  Non-Dirichlet boundary rows use one-sided
/// second-order stencils.

#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsshock/gas.hpp"
#include "nsshock/shock_profile.hpp"

namespace nsshock {

/// Thrown when positivity of the specific volume is lost mid-run.
struct BlowUpError : std::runtime_error {
    double t;
    std::size_t node;
    BlowUpError(double t_, std::size_t node_)
        : std::runtime_error("solver blow-up: v <= 0 at t = " + std::to_string(t_) +
                             ", node " + std::to_string(node_)),
          t(t_), node(node_) {}
};

/// Thrown when a state violates its invariants on entry to an operation.
struct StateInvalidError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform node grid on [0, L] with x_0 = 0 at the boundary.
struct Grid {
    double length = 0.0;
    std::size_t n_cells = 0;

    Grid() = default;
    Grid(double L, std::size_t n) : length(L), n_cells(n) {
        if (!(L > 0.0) || n < 2)
            throw std::invalid_argument("Grid: require L > 0 and n_cells >= 2");
    }
    double dx() const { return length / static_cast<double>(n_cells); }
    std::size_t n_nodes() const { return n_cells + 1; }
    double x_at(std::size_t i) const { return dx() * static_cast<double>(i); }
};

/// Grid fields (v, u) at one time.
struct State {
    double t = 0.0;
    std::vector<double> v, u;

    void require_valid(const Grid& grid) const {
        if (v.size() != grid.n_nodes() || u.size() != grid.n_nodes())
            throw StateInvalidError("State: array lengths do not match the grid");
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!(v[i] > 0.0))
                throw StateInvalidError("State: nonpositive specific volume at node " +
                                        std::to_string(i));
    }
};

/// Dirichlet data and convection speed defining the discrete operator,
/// independent of any shock structure.  Built from EndStates for the physical
/// problems; constructible directly for verification states (manufactured
/// solutions, uniform fixed points).
struct StencilSystem {
    GasLaw law;
    Grid grid;
    double left_u = 0.0;               ///< u(t, 0)
    std::optional<double> left_v;      ///< v(t, 0) when prescribed (inflow)
    double right_v = 1.0, right_u = 0.0;
    double sigma_minus = 0.0;          ///< <= 0; nonzero only for inflow
};

/// Problem = physical setup: end states, initial profile offset beta, and the
/// derived discrete operator.  The shock profile is shared, immutable.
struct Problem {
    ProblemKind kind = ProblemKind::impermeable;
    EndStates end;
    GasLaw law;
    Grid grid;
    double beta = 0.0;
    std::shared_ptr<const ShockProfile> profile;

    Problem(ProblemKind kind_, const EndStates& end_, const GasLaw& law_,
            const Grid& grid_, double beta_,
            std::shared_ptr<const ShockProfile> profile_)
        : kind(kind_), end(end_), law(law_), grid(grid_), beta(beta_),
          profile(std::move(profile_)) {
        end.validate(law);
        if (kind != end.kind)
            throw std::invalid_argument("Problem: kind does not match EndStates");
        if (!(beta > 0.0)) throw std::invalid_argument("Problem: beta must be positive");
        if (!profile) throw std::invalid_argument("Problem: missing profile");
    }

    /// Profile argument zeta at position x and time t given the current
    /// shift: zeta = x - sigma t - X - beta (impermeable) or
    /// zeta = xi - (sigma - sigma_-) t - X - beta (inflow frame).
    double zeta(double x, double t, double X) const {
        const double speed = end.sigma - end.sigma_minus;
        return x - speed * t - X - beta;
    }

    StencilSystem system() const {
        StencilSystem s{law, grid, end.u_minus, std::nullopt, end.v_plus, end.u_plus,
                        end.sigma_minus};
        if (kind == ProblemKind::inflow) s.left_v = end.v_minus;
        return s;
    }
};

struct SolverConfig {
    double cfl_number = 0.4;
    double t_end = 0.0;
    std::size_t output_stride = 100;  ///< steps between emitted snapshots
    int scheme_order = 2;             ///< fixed; documented for the metadata echo

    void validate() const {
        if (!(cfl_number > 0.0 && cfl_number <= 1.0))
            throw std::invalid_argument("SolverConfig: cfl_number must be in (0, 1]");
        if (!(t_end >= 0.0))
            throw std::invalid_argument("SolverConfig: t_end must be nonnegative");
        if (output_stride == 0)
            throw std::invalid_argument("SolverConfig: output_stride must be positive");
        if (scheme_order != 2)
            throw std::invalid_argument("SolverConfig: only scheme_order 2 is provided");
    }
};

/// Tendency arrays (dv/dt, du/dt) of the semi-discrete operator.
struct Tendency {
    std::vector<double> dv, du;
};

/// Second-order semi-discrete right-hand side.  Dirichlet rows carry zero
/// tendency; the impermeable v-row at x = 0 uses the one-sided second-order
/// u_x stencil.
inline void semidiscrete_rhs(const StencilSystem& sys, const State& s, Tendency& out) {
    s.require_valid(sys.grid);
    const std::size_t n = sys.grid.n_nodes();
    const double dx = sys.grid.dx();
    out.dv.assign(n, 0.0);
    out.du.assign(n, 0.0);

    const auto& v = s.v;
    const auto& u = s.u;
    const GasLaw& law = sys.law;
    const double sm = sys.sigma_minus;

    // Precompute pressures once per call; the stencil reads each twice.
    static thread_local std::vector<double> p;
    p.resize(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = law.pressure(v[i]);

    // Interior nodes.
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double ux_c = (u[i + 1] - u[i - 1]) / (2.0 * dx);
        const double px_c = (p[i + 1] - p[i - 1]) / (2.0 * dx);
        const double flux_r = (u[i + 1] - u[i]) / (dx * 0.5 * (v[i] + v[i + 1]));
        const double flux_l = (u[i] - u[i - 1]) / (dx * 0.5 * (v[i - 1] + v[i]));
        out.dv[i] = ux_c;
        out.du[i] = -px_c + (flux_r - flux_l) / dx;
        if (sm != 0.0) {
            // v_t = sigma_- v_xi + ...: advection speed -sigma_- > 0, upwind
            // toward the boundary (backward difference).
            out.dv[i] += sm * (v[i] - v[i - 1]) / dx;
            out.du[i] += sm * (u[i] - u[i - 1]) / dx;
        }
    }

    // Left boundary x = 0.  u is always Dirichlet (tendency 0).  v evolves
    // for the impermeable wall: one-sided second-order u_x (the sigma_-
    // convection is absent there).
    if (!sys.left_v) {
        // Grouped as differences so constant u gives exactly zero.
        out.dv[0] = (4.0 * (u[1] - u[0]) - (u[2] - u[0])) / (2.0 * dx);
    }
    // Right boundary x = L: both fields Dirichlet, tendency 0.
}

/// dt = cfl * min( dx^2 min(v)/2 , dx / (max|u| + |sigma_-| + max c(v)) ).
/// The parabolic bound dominates at the preset resolutions.
inline double cfl_dt(const StencilSystem& sys, const SolverConfig& cfg, const State& s) {
    s.require_valid(sys.grid);
    const double dx = sys.grid.dx();
    double vmin = s.v[0], umax = 0.0, cmax = 0.0;
    for (std::size_t i = 0; i < s.v.size(); ++i) {
        vmin = std::min(vmin, s.v[i]);
        umax = std::max(umax, std::abs(s.u[i]));
        cmax = std::max(cmax, sys.law.sound_speed(s.v[i]));
    }
    const double dt_parabolic = dx * dx * vmin / 2.0;
    const double dt_hyperbolic = dx / (umax + std::abs(sys.sigma_minus) + cmax);
    return cfg.cfl_number * std::min(dt_parabolic, dt_hyperbolic);
}

inline void impose_boundary(const StencilSystem& sys, State& s) {
    s.u[0] = sys.left_u;
    if (sys.left_v) s.v[0] = *sys.left_v;
    s.v.back() = sys.right_v;
    s.u.back() = sys.right_u;
}

namespace detail {
inline void check_positive(const State& s) {
    for (std::size_t i = 0; i < s.v.size(); ++i)
        if (!(s.v[i] > 0.0)) throw BlowUpError(s.t, i);
}
}  // namespace detail

/// One explicit Heun step (two stages, second order).  Boundary values are
/// re-imposed after each stage; positivity is re-checked.
/// dt = 0 returns the state unchanged.
inline State step(const StencilSystem& sys, const State& s, double dt) {
    if (!(dt >= 0.0)) throw std::invalid_argument("step: dt must be nonnegative");
    if (dt == 0.0) return s;
    Tendency k1, k2;
    semidiscrete_rhs(sys, s, k1);
    State mid = s;
    for (std::size_t i = 0; i < mid.v.size(); ++i) {
        mid.v[i] += dt * k1.dv[i];
        mid.u[i] += dt * k1.du[i];
    }
    mid.t = s.t + dt;
    impose_boundary(sys, mid);
    detail::check_positive(mid);
    semidiscrete_rhs(sys, mid, k2);
    State next = s;
    for (std::size_t i = 0; i < next.v.size(); ++i) {
        next.v[i] += 0.5 * dt * (k1.dv[i] + k2.dv[i]);
        next.u[i] += 0.5 * dt * (k1.du[i] + k2.du[i]);
    }
    next.t = s.t + dt;
    impose_boundary(sys, next);
    detail::check_positive(next);
    return next;
}

/// Initial-perturbation shape added on top of the sampled shifted profile.
/// The default is the C-infinity bump
///     amplitude * exp(1 - 1/(1 - r^2)),  r = (x - center)/width,  |r| < 1,
/// applied to both v and u.  seed != 0 replaces the single bump by a
/// deterministic pseudo-random superposition of three bumps inside the same
/// support (for randomized robustness runs).
struct PerturbationSpec {
    enum class Kind { none, bump } kind = Kind::bump;
    double amplitude = 0.0;
    double center = 0.0;  ///< absolute x; harness defaults this to beta
    double width = 5.0;   ///< support half-width
    std::uint64_t seed = 0;
};

inline double bump_shape(double r) {
    if (std::abs(r) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

/// Samples the shifted profile (v~, u~)(x - beta) on the grid and adds the
/// perturbation.  Reports the discrete H1 norm of the perturbation through
/// h1_out when given.
/// @throws std::invalid_argument if the perturbation support violates the
///         boundary condition (touches x = 0 or x = L).
inline State make_initial_data(const Problem& problem, const PerturbationSpec& pert,
                               double* h1_out = nullptr) {
    const Grid& grid = problem.grid;
    const std::size_t n = grid.n_nodes();
    State s;
    s.t = 0.0;
    s.v.resize(n);
    s.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ps = (*problem.profile)(problem.zeta(grid.x_at(i), 0.0, 0.0));
        s.v[i] = ps.v;
        s.u[i] = ps.u;
    }

    std::vector<double> dv(n, 0.0), du(n, 0.0);
    if (pert.kind == PerturbationSpec::Kind::bump && pert.amplitude != 0.0) {
        if (!(pert.amplitude > 0.0))
            throw std::invalid_argument("make_initial_data: amplitude must be >= 0");
        if (!(pert.center - pert.width > 0.0) ||
            !(pert.center + pert.width < grid.length))
            throw std::invalid_argument(
                "make_initial_data: perturbation support must lie strictly inside "
                "(0, L); it would violate the boundary condition");
        struct Piece { double amp, center, width; };
        std::vector<Piece> pieces;
        if (pert.seed == 0) {
            pieces.push_back({pert.amplitude, pert.center, pert.width});
        } else {
            std::mt19937_64 rng(pert.seed);
            std::uniform_real_distribution<double> unit(-1.0, 1.0);
            for (int k = 0; k < 3; ++k) {
                const double off = 0.5 * pert.width * unit(rng);
                const double amp = pert.amplitude * (0.5 + 0.5 * std::abs(unit(rng)));
                pieces.push_back({amp, pert.center + off, 0.4 * pert.width});
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& pc : pieces) {
                const double b = pc.amp * bump_shape((grid.x_at(i) - pc.center) / pc.width);
                dv[i] += b;
                du[i] += b;
            }
            s.v[i] += dv[i];
            s.u[i] += du[i];
        }
    }

    if (h1_out) {
        const double dx = grid.dx();
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += (dv[i] * dv[i] + du[i] * du[i]) * dx;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double gv = (dv[i + 1] - dv[i]) / dx;
            const double gu = (du[i + 1] - du[i]) / dx;
            acc += (gv * gv + gu * gu) * dx;
        }
        *h1_out = std::sqrt(acc);
    }
    s.require_valid(grid);
    return s;
}

}  // namespace nsshock
