/// @file harness.hpp
/// @brief Scenario configuration (INI-style documents and named presets),
///        run orchestration, and file outputs: run-metadata JSON, the
///        per-snapshot diagnostics CSV, field snapshots, shift history, and
///        plot-data extracts.
///
/// Config schema (all keys optional unless noted; unknown keys rejected):
///   [gas]          gamma
///   [shock]        kind = impermeable|inflow (required)
///                  v_plus, u_plus            (impermeable; u_plus < 0)
///                  v_minus, u_minus, v_plus  (inflow)
///                  beta | beta_mult          (explicit beta, or beta_mult/delta)
///                  allow_large_delta = 0|1   (negative-control runs)
///   [grid]         dx, length | length_pad   (L = beta + sigma t_end + pad/delta)
///   [time]         t_end, cfl, output_stride, snapshot_every
///   [perturbation] kind = none|bump, amplitude, center, width, seed
///   [output]       dir
/// The NSSHOCK_OUT environment variable overrides [output] dir.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nsshock/diagnostics.hpp"
#include "nsshock/runner.hpp"

namespace nsshock {

/// Fully resolved run description.  Presets fill one of these; config files
/// override fields of the preset (or of the documented defaults).
struct Scenario {
    std::string name = "custom";
    ProblemKind kind = ProblemKind::impermeable;
    double gamma = 2.0;
    double v_plus = 1.0;
    double u_plus = -0.1;   // impermeable input
    double v_minus = 1.0;   // inflow inputs
    double u_minus = 0.1;
    double beta_mult = 60.0;        ///< beta = beta_mult/delta unless overridden
    double beta_override = 0.0;     ///< explicit beta when > 0
    double length_pad = 80.0;       ///< L = beta + sigma t_end + length_pad/delta
    double length_override = 0.0;   ///< explicit L when > 0
    double dx = 0.05;
    double cfl = 0.4;
    double t_end = 200.0;
    std::size_t output_stride = 1000;
    std::size_t snapshot_every = 40;  ///< field snapshots every k-th emission
    bool allow_large_delta = false;
    PerturbationSpec perturbation{PerturbationSpec::Kind::bump, 0.01, -1.0, 5.0, 0};
    std::string out_dir = "out";

    double profile_halfwidth_mult = 60.0;  ///< table half-width = mult/delta
    std::size_t profile_samples = 8192;
};

/// A scenario resolved into runnable objects.
struct ResolvedScenario {
    Scenario scenario;
    EndStates end;
    std::shared_ptr<const ShockProfile> profile;
    std::unique_ptr<Problem> problem;
    SolverConfig config;
    std::unique_ptr<WeightParams> params;
    PerturbationSpec perturbation;
};

inline ResolvedScenario resolve_scenario(const Scenario& s) {
    ResolvedScenario r;
    r.scenario = s;
    GasLaw law(s.gamma);
    if (s.kind == ProblemKind::impermeable) {
        if (!(s.u_plus < 0.0))
            throw std::invalid_argument(
                "scenario: impermeable requires u_plus < 0 (entropy condition "
                "u_- = 0 > u_+ selects the outgoing 2-shock)");
        r.end = solve_left_state_impermeable(s.v_plus, s.u_plus, law);
    } else {
        r.end = shock_curve_inflow(s.v_minus, s.u_minus, s.v_plus, law);
    }
    const double delta = r.end.delta;
    const double beta = s.beta_override > 0.0 ? s.beta_override : s.beta_mult / delta;
    const double length =
        s.length_override > 0.0
            ? s.length_override
            : beta + r.end.sigma * s.t_end + s.length_pad / delta;
    const std::size_t n_cells = static_cast<std::size_t>(std::lround(length / s.dx));
    Grid grid(n_cells * s.dx, n_cells);
    r.profile = std::make_shared<ShockProfile>(r.end, law, s.profile_halfwidth_mult / delta,
                                               s.profile_samples);
    r.problem = std::make_unique<Problem>(s.kind, r.end, law, grid, beta, r.profile);
    r.config = SolverConfig{s.cfl, s.t_end, s.output_stride, 2};
    r.config.validate();
    r.params = std::make_unique<WeightParams>(law, r.end, beta, s.allow_large_delta);
    r.perturbation = s.perturbation;
    if (r.perturbation.center < 0.0) r.perturbation.center = beta;  // default: at the wave
    return r;
}

// ---------------------------------------------------------------------------
// Presets.

/// Stable preset identifiers: impermeable-weak-shock, inflow-weak-shock,
/// traveling-wave-oracle, large-delta-control.
inline Scenario preset_scenario(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "impermeable-weak-shock") {
        // gamma=2, v_+=1, u_+=-0.1 (delta ~ 0.1), beta = 60/delta, t_end=200.
        return s;
    }
    if (name == "inflow-weak-shock") {
        s.kind = ProblemKind::inflow;
        s.v_minus = 1.0;
        s.u_minus = 0.1;
        s.v_plus = 1.075;  // puts the shock strength at delta ~ 0.1005
        return s;
    }
    if (name == "traveling-wave-oracle") {
        // Zero perturbation, wave far from both boundaries, T = 50; the
        // max-norm error budget recorded with this preset is 5 dx^2.
        s.perturbation.kind = PerturbationSpec::Kind::none;
        s.perturbation.amplitude = 0.0;
        s.beta_override = 200.0;
        s.length_override = 520.0;
        s.t_end = 50.0;
        s.output_stride = 2000;
        return s;
    }
    if (name == "large-delta-control") {
        // Deliberately inadmissible shock strength (delta = 0.5): C* <= 0 is
        // clamped and flagged; inequality violations are expected and
        // reported, the run must still complete.
        s.u_plus = -0.5;
        s.allow_large_delta = true;
        s.t_end = 20.0;
        s.beta_mult = 30.0;
        s.length_pad = 30.0;
        s.output_stride = 400;
        return s;
    }
    throw std::invalid_argument("unknown preset: " + name);
}

// ---------------------------------------------------------------------------
// Config parsing.

namespace detail_config {

struct IniDoc {
    // section -> key -> value, plus encounter order for error messages.
    std::map<std::string, std::map<std::string, std::string>> sections;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline IniDoc parse_ini(const std::string& text) {
    IniDoc doc;
    std::istringstream is(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::invalid_argument("config parse error at line " +
                                            std::to_string(lineno) +
                                            ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            doc.sections[section];
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config parse error at line " +
                                        std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw std::invalid_argument("config parse error at line " +
                                        std::to_string(lineno) + ": key outside a section");
        doc.sections[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return doc;
}

inline double to_number(const std::string& path, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw std::invalid_argument("config validation error at " + path +
                                    ": not a number: '" + v + "'");
    }
}

}  // namespace detail_config

/// Parses an INI-style scenario document on top of the documented defaults
/// (or on top of a preset when base is given).  Unknown sections or keys are
/// rejected with their key path; physically invalid parameters surface as
/// validation errors from resolve_scenario.
inline Scenario parse_config(const std::string& text,
                             const Scenario& base = Scenario{}) {
    using detail_config::to_number;
    auto doc = detail_config::parse_ini(text);
    Scenario s = base;
    for (const auto& [section, kv] : doc.sections) {
        for (const auto& [key, value] : kv) {
            const std::string path = section + "." + key;
            if (section == "gas") {
                if (key == "gamma") s.gamma = to_number(path, value);
                else throw std::invalid_argument("config: unknown key " + path);
            } else if (section == "shock") {
                if (key == "kind") {
                    if (value == "impermeable") s.kind = ProblemKind::impermeable;
                    else if (value == "inflow") s.kind = ProblemKind::inflow;
                    else
                        throw std::invalid_argument(
                            "config validation error at " + path +
                            ": expected impermeable or inflow, got '" + value + "'");
                } else if (key == "v_plus") s.v_plus = to_number(path, value);
                else if (key == "u_plus") s.u_plus = to_number(path, value);
                else if (key == "v_minus") s.v_minus = to_number(path, value);
                else if (key == "u_minus") s.u_minus = to_number(path, value);
                else if (key == "beta") s.beta_override = to_number(path, value);
                else if (key == "beta_mult") s.beta_mult = to_number(path, value);
                else if (key == "allow_large_delta")
                    s.allow_large_delta = to_number(path, value) != 0.0;
                else throw std::invalid_argument("config: unknown key " + path);
            } else if (section == "grid") {
                if (key == "dx") s.dx = to_number(path, value);
                else if (key == "length") s.length_override = to_number(path, value);
                else if (key == "length_pad") s.length_pad = to_number(path, value);
                else throw std::invalid_argument("config: unknown key " + path);
            } else if (section == "time") {
                if (key == "t_end") s.t_end = to_number(path, value);
                else if (key == "cfl") s.cfl = to_number(path, value);
                else if (key == "output_stride")
                    s.output_stride = static_cast<std::size_t>(to_number(path, value));
                else if (key == "snapshot_every")
                    s.snapshot_every = static_cast<std::size_t>(to_number(path, value));
                else throw std::invalid_argument("config: unknown key " + path);
            } else if (section == "perturbation") {
                if (key == "kind") {
                    if (value == "none") s.perturbation.kind = PerturbationSpec::Kind::none;
                    else if (value == "bump") s.perturbation.kind = PerturbationSpec::Kind::bump;
                    else
                        throw std::invalid_argument("config validation error at " + path +
                                                    ": expected none or bump");
                } else if (key == "amplitude") s.perturbation.amplitude = to_number(path, value);
                else if (key == "center") s.perturbation.center = to_number(path, value);
                else if (key == "width") s.perturbation.width = to_number(path, value);
                else if (key == "seed")
                    s.perturbation.seed = static_cast<std::uint64_t>(to_number(path, value));
                else throw std::invalid_argument("config: unknown key " + path);
            } else if (section == "output") {
                if (key == "dir") s.out_dir = value;
                else throw std::invalid_argument("config: unknown key " + path);
            } else {
                throw std::invalid_argument("config: unknown section [" + section + "]");
            }
        }
    }
    if (const char* env = std::getenv("NSSHOCK_OUT")) s.out_dir = env;
    return s;
}

// ---------------------------------------------------------------------------
// Diagnostics CSV schema.

/// One emitted diagnostics row; columns fixed and documented (see
/// diagnostics_csv_header()).
struct DiagnosticsRow {
    TermBreakdown bd;
    ConvergenceMetrics metrics;
    double xdot = 0.0, x = 0.0;
    double y0 = 0.0;
    double r1_margin = 0.0;
};

inline std::string diagnostics_csv_header() {
    return "t,weighted_entropy,Y,jbad1,jbad2,jbad3,jbad4,jbad5,"
           "jgood1,jgood2,jgood3,P,B1,B2,B3,B4,B5,B6,G1,G2,D,GS,Dv1,Du1,Du2,"
           "Y1,Y2,Y3,Y4,Y5,Y6,sup_pert,xdot,x_over_t,h1_pert,y0,r1_margin";
}

inline std::string format_diagnostics_row(const DiagnosticsRow& r) {
    char buf[64];
    std::string line;
    auto put = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        if (!line.empty()) line += ',';
        line += buf;
    };
    const TermBreakdown& b = r.bd;
    put(b.t);
    put(b.weighted_entropy);
    put(b.y_functional);
    for (double x : b.jbad) put(x);
    for (double x : b.jgood) put(x);
    put(b.boundary_p);
    for (double x : b.b) put(x);
    put(b.g1); put(b.g2); put(b.d_visc);
    put(b.gs); put(b.dv1); put(b.du1); put(b.du2);
    for (double x : b.y_parts) put(x);
    put(r.metrics.sup_perturbation);
    put(r.metrics.xdot_abs);
    put(r.metrics.x_over_t);
    put(r.metrics.h1_perturbation);
    put(r.y0);
    put(r.r1_margin);
    return line;
}

/// Builds the full diagnostics row for one run context.
inline DiagnosticsRow make_diagnostics_row(const RunContext& ctx) {
    DiagnosticsRow row;
    row.bd = term_breakdown(*&ctx.problem, ctx.state, ctx.params, ctx.shift.X);
    row.metrics = convergence_metrics(ctx.problem, ctx.state, ctx.shift);
    row.xdot = ctx.shift.Xdot;
    row.x = ctx.shift.X;
    row.y0 = y_coordinates(ctx.problem, ctx.params, ctx.shift.X, ctx.state.t).y0;
    row.r1_margin = r1_inequality_check(row.bd, ctx.params, ctx.shift.Xdot);
    return row;
}

// ---------------------------------------------------------------------------
// Run orchestration with artifacts.

struct ScenarioResult {
    std::vector<DiagnosticsRow> rows;
    RunRecord record;
    int exit_status = 0;
    nlohmann::json hard_invariants;  ///< per-invariant booleans for metadata
};

/// Collects diagnostics in memory (no file output); the building block of
/// run_scenario and of the in-process acceptance checks.
inline ScenarioResult run_scenario_collect(const ResolvedScenario& rs) {
    ScenarioResult out;
    double h1 = 0.0;
    State initial = make_initial_data(*rs.problem, rs.perturbation, &h1);

    bool jgood_nonneg = true, a_bounds = true, eta_nonneg = true;
    std::vector<Observer> obs;
    obs.push_back([&](const RunContext& ctx) {
        DiagnosticsRow row = make_diagnostics_row(ctx);
        for (double g : row.bd.jgood) jgood_nonneg &= g >= -1e-12;
        eta_nonneg &= row.bd.weighted_entropy >= -1e-12;
        const double rd = std::sqrt(ctx.params.delta);
        // Spot-check the weight bounds along the emitted frame.
        for (double z : {-ctx.problem.beta, 0.0, ctx.problem.beta}) {
            const auto w = weight_eval(*ctx.problem.profile, ctx.params, z);
            a_bounds &= w.a >= 1.0 - 1e-12 && w.a <= 1.0 + rd + 1e-12 && w.da >= 0.0;
        }
        out.rows.push_back(std::move(row));
    });

    out.record = run(*rs.problem, rs.config, *rs.params, initial, obs);

    out.hard_invariants = {
        {"completed", out.record.completed},
        {"positivity", out.record.completed},  // blow-up is the only violation path
        {"jgood_nonnegative", jgood_nonneg},
        {"weighted_entropy_nonnegative", eta_nonneg},
        {"weight_bounds", a_bounds},
        {"initial_h1_perturbation", h1},
    };
    out.exit_status =
        (out.record.completed && jgood_nonneg && eta_nonneg && a_bounds) ? 0 : 1;
    return out;
}

inline void write_snapshot_csv(const std::filesystem::path& path, const Grid& grid,
                               const State& s) {
    std::ofstream os(path);
    os << "x,v,u\n";
    char buf[96];
    for (std::size_t i = 0; i < grid.n_nodes(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", grid.x_at(i), s.v[i],
                      s.u[i]);
        os << buf;
    }
}

/// Executes a scenario and writes all artifacts under out_dir/name/:
/// metadata.json, diagnostics.csv, shift_history.csv, snapshot_*.csv, and
/// the four plot-data extracts.  Returns the process exit status (0 iff all
/// hard invariants held).
inline int run_scenario(const Scenario& scenario) {
    namespace fs = std::filesystem;
    ResolvedScenario rs = resolve_scenario(scenario);
    const fs::path dir = fs::path(scenario.out_dir) / scenario.name;
    fs::create_directories(dir);

    // Field snapshots are emitted at a sparser cadence than diagnostics
    // (every snapshot_every-th emission) to keep artifact sizes sane.
    std::size_t emission = 0;
    std::vector<Observer> extra;
    ScenarioResult result;
    {
        double h1 = 0.0;
        State initial = make_initial_data(*rs.problem, rs.perturbation, &h1);
        bool jgood_nonneg = true, a_bounds = true, eta_nonneg = true;
        std::vector<Observer> obs;
        obs.push_back([&](const RunContext& ctx) {
            DiagnosticsRow row = make_diagnostics_row(ctx);
            for (double g : row.bd.jgood) jgood_nonneg &= g >= -1e-12;
            eta_nonneg &= row.bd.weighted_entropy >= -1e-12;
            const double rd = std::sqrt(ctx.params.delta);
            for (double z : {-ctx.problem.beta, 0.0, ctx.problem.beta}) {
                const auto w = weight_eval(*ctx.problem.profile, ctx.params, z);
                a_bounds &= w.a >= 1.0 - 1e-12 && w.a <= 1.0 + rd + 1e-12 && w.da >= 0.0;
            }
            result.rows.push_back(std::move(row));
            if (emission % std::max<std::size_t>(1, scenario.snapshot_every) == 0) {
                char name[64];
                std::snprintf(name, sizeof(name), "snapshot_%05zu.csv", emission);
                write_snapshot_csv(dir / name, ctx.problem.grid, ctx.state);
            }
            ++emission;
        });
        result.record = run(*rs.problem, rs.config, *rs.params, initial, obs);
        result.hard_invariants = {
            {"completed", result.record.completed},
            {"positivity", result.record.completed},
            {"jgood_nonnegative", jgood_nonneg},
            {"weighted_entropy_nonnegative", eta_nonneg},
            {"weight_bounds", a_bounds},
            {"initial_h1_perturbation", h1},
        };
        result.exit_status =
            (result.record.completed && jgood_nonneg && eta_nonneg && a_bounds) ? 0 : 1;
    }

    // diagnostics.csv
    {
        std::ofstream os(dir / "diagnostics.csv");
        os << diagnostics_csv_header() << "\n";
        for (const auto& row : result.rows) os << format_diagnostics_row(row) << "\n";
    }
    // shift_history.csv at the emission cadence plus the final record.
    {
        std::ofstream os(dir / "shift_history.csv");
        os << "t,X,Xdot\n";
        char buf[96];
        const auto& h = result.record.shift.history;
        const std::size_t stride = std::max<std::size_t>(1, rs.config.output_stride);
        for (std::size_t i = 0; i < h.size(); i += (i + stride < h.size() ? stride : 1)) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", h[i].t, h[i].X,
                          h[i].Xdot);
            os << buf;
        }
    }
    // Plot-data extracts: the paper's headline quantities.
    auto plot = [&](const char* file, auto getter) {
        std::ofstream os(dir / file);
        os << "t,value\n";
        char buf[96];
        for (const auto& row : result.rows) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", row.bd.t, getter(row));
            os << buf;
        }
    };
    plot("plot_sup_pert.csv", [](const DiagnosticsRow& r) { return r.metrics.sup_perturbation; });
    plot("plot_xdot.csv", [](const DiagnosticsRow& r) { return r.metrics.xdot_abs; });
    plot("plot_x_over_t.csv", [](const DiagnosticsRow& r) { return r.metrics.x_over_t; });
    plot("plot_weighted_entropy.csv",
         [](const DiagnosticsRow& r) { return r.bd.weighted_entropy; });

    // metadata.json: config echo, derived quantities, invariant flags.
    {
        nlohmann::json meta;
        meta["scenario"] = {
            {"name", scenario.name},
            {"kind", scenario.kind == ProblemKind::impermeable ? "impermeable" : "inflow"},
            {"gamma", scenario.gamma},
            {"v_plus", scenario.v_plus},
            {"u_plus", scenario.u_plus},
            {"v_minus", scenario.v_minus},
            {"u_minus", scenario.u_minus},
            {"dx", scenario.dx},
            {"cfl", scenario.cfl},
            {"t_end", scenario.t_end},
            {"output_stride", scenario.output_stride},
            {"snapshot_every", scenario.snapshot_every},
            {"perturbation",
             {{"kind", scenario.perturbation.kind == PerturbationSpec::Kind::none
                           ? "none" : "bump"},
              {"amplitude", scenario.perturbation.amplitude},
              {"width", scenario.perturbation.width},
              {"seed", scenario.perturbation.seed}}},
        };
        meta["derived"] = {
            {"v_minus", rs.end.v_minus}, {"v_plus", rs.end.v_plus},
            {"u_minus", rs.end.u_minus}, {"u_plus", rs.end.u_plus},
            {"sigma", rs.end.sigma},     {"sigma_minus", rs.end.sigma_minus},
            {"delta", rs.end.delta},     {"beta", rs.problem->beta},
            {"length", rs.problem->grid.length},
            {"n_cells", rs.problem->grid.n_cells},
            {"sigma_l", rs.params->sigma_l}, {"alpha_l", rs.params->alpha_l},
            {"big_m", rs.params->big_m},     {"c_star", rs.params->c_star},
            {"c_star_clamped", rs.params->c_star_clamped},
            {"sup_weight_at_limit", rs.params->sup_weight_at_limit},
        };
        meta["hard_invariants"] = result.hard_invariants;
        meta["n_steps"] = result.record.n_steps;
        meta["completed"] = result.record.completed;
        if (!result.record.completed) meta["error"] = result.record.error;
        std::ofstream os(dir / "metadata.json");
        os << meta.dump(2) << "\n";
    }
    return result.exit_status;
}

/// Cumulative trapezoid integral of |P| over the emitted rows; the measured
/// boundary budget of the contraction check.
inline std::vector<double> cumulative_abs_boundary(const std::vector<DiagnosticsRow>& rows) {
    std::vector<double> cum(rows.size(), 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double dt = rows[i].bd.t - rows[i - 1].bd.t;
        cum[i] = cum[i - 1] +
                 0.5 * (std::abs(rows[i].bd.boundary_p) +
                        std::abs(rows[i - 1].bd.boundary_p)) * dt;
    }
    return cum;
}

}  // namespace nsshock
