/// @file runner.hpp
/// @brief Time-marching driver: advances the PDE and the shift ODE together
///        with the same two-stage scheme and invokes observers at the
///        snapshot cadence.
///
/// The PDE does not depend on X (the shift only translates the reference
/// wave inside the diagnostics), so the coupling is one-way; integrating the
/// shift with the PDE's own stages keeps the pair second-order without
/// splitting error.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nsshock/shift.hpp"
#include "nsshock/solver.hpp"

namespace nsshock {

/// Everything an observer may inspect at an emission point.
struct RunContext {
    const Problem& problem;
    const SolverConfig& config;
    const WeightParams& params;
    const State& state;
    const ShiftState& shift;
    std::size_t step_index;
};

using Observer = std::function<void(const RunContext&)>;

struct RunRecord {
    std::vector<double> snapshot_times;
    State final_state;
    ShiftState shift;
    std::size_t n_steps = 0;
    bool completed = false;
    std::string error;
};

/// Advances from the given initial state to t_end.  Observers fire on the
/// initial state, every output_stride steps, and on the final state.  A
/// blow-up is caught and returned as an incomplete record with the partial
/// history attached.
inline RunRecord run(const Problem& problem, const SolverConfig& config,
                     const WeightParams& params, const State& initial,
                     const std::vector<Observer>& observers) {
    config.validate();
    initial.require_valid(problem.grid);
    const StencilSystem sys = problem.system();

    RunRecord rec;
    State state = initial;
    ShiftState shift;
    shift.Xdot = shift_rhs(problem, state, params, 0.0, state.t);
    shift.history.push_back({state.t, 0.0, shift.Xdot});

    auto emit = [&](std::size_t step_index) {
        rec.snapshot_times.push_back(state.t);
        const RunContext ctx{problem, config, params, state, shift, step_index};
        for (const auto& obs : observers) obs(ctx);
    };

    emit(0);
    Tendency k1, k2;
    State mid;
    try {
        std::size_t step_index = 0;
        while (state.t < config.t_end) {
            const double dt =
                std::min(cfl_dt(sys, config, state), config.t_end - state.t);
            if (state.t + dt == state.t) {  // dt below time round-off: done
                state.t = config.t_end;
                break;
            }

            // Stage 1.
            semidiscrete_rhs(sys, state, k1);
            const double k1x = shift_rhs(problem, state, params, shift.X, state.t);
            mid = state;
            for (std::size_t i = 0; i < mid.v.size(); ++i) {
                mid.v[i] += dt * k1.dv[i];
                mid.u[i] += dt * k1.du[i];
            }
            mid.t = state.t + dt;
            impose_boundary(sys, mid);
            detail::check_positive(mid);

            // Stage 2.
            semidiscrete_rhs(sys, mid, k2);
            const double k2x =
                shift_rhs(problem, mid, params, shift.X + dt * k1x, mid.t);
            for (std::size_t i = 0; i < state.v.size(); ++i) {
                state.v[i] += 0.5 * dt * (k1.dv[i] + k2.dv[i]);
                state.u[i] += 0.5 * dt * (k1.du[i] + k2.du[i]);
            }
            state.t += dt;
            impose_boundary(sys, state);
            detail::check_positive(state);
            shift = advance_shift(shift, 0.5 * (k1x + k2x), dt);
            ++step_index;

            if (step_index % config.output_stride == 0 || state.t >= config.t_end)
                emit(step_index);
        }
        rec.n_steps = shift.history.size() - 1;
        rec.completed = true;
    } catch (const BlowUpError& e) {
        rec.error = e.what();
        rec.completed = false;
    }
    rec.final_state = state;
    rec.shift = shift;
    return rec;
}

}  // namespace nsshock
