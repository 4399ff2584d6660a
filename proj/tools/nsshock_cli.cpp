/// @file nsshock_cli.cpp
/// @brief Command-line front end.
///
/// Subcommands:
///   profile  — build a viscous shock profile and export it as CSV
///   run      — execute one scenario (preset and/or config file) with full
///              diagnostics artifacts
///   sweep    — run the boundary-offset sweep (beta in {40,60,80}/delta) and
///              report the fitted exponential decay of the boundary budget
///   check    — evaluate the sharp quadratic entropy/pressure bounds for a
///              given state pair and print the certificate
///
/// Common flags: --config FILE, --preset NAME, --out DIR, --seed N.
/// The NSSHOCK_OUT environment variable also overrides the output directory.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nsshock/harness.hpp"

namespace {

nsshock::Scenario load_scenario(const std::string& preset, const std::string& config,
                                const std::string& out, std::uint64_t seed,
                                bool seed_set) {
    nsshock::Scenario s =
        preset.empty() ? nsshock::Scenario{} : nsshock::preset_scenario(preset);
    if (!config.empty()) {
        std::ifstream is(config);
        if (!is) throw std::runtime_error("cannot open config file: " + config);
        std::stringstream ss;
        ss << is.rdbuf();
        s = nsshock::parse_config(ss.str(), s);
    } else if (const char* env = std::getenv("NSSHOCK_OUT")) {
        s.out_dir = env;  // parse_config applies this itself when used
    }
    if (!out.empty()) s.out_dir = out;
    if (seed_set) s.perturbation.seed = seed;
    return s;
}

int cmd_profile(const nsshock::Scenario& s) {
    nsshock::ResolvedScenario rs = nsshock::resolve_scenario(s);
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(s.out_dir) / s.name;
    fs::create_directories(dir);
    {
        std::ofstream os(dir / "profile.csv");
        rs.profile->export_csv(os);
    }
    const auto decay = rs.profile->check_tail_decay();
    std::printf("profile: delta=%.17g sigma=%.17g v_minus=%.17g v_plus=%.17g\n",
                rs.end.delta, rs.end.sigma, rs.end.v_minus, rs.end.v_plus);
    std::printf("tail rates: left=%.12g right=%.12g (r^2 %.9f / %.9f)\n",
                decay.left.rate, decay.right.rate, decay.left.r_squared,
                decay.right.r_squared);
    std::printf("wrote %s\n", (dir / "profile.csv").c_str());
    return decay.pass ? 0 : 1;
}

int cmd_run(const nsshock::Scenario& s) {
    const int status = nsshock::run_scenario(s);
    std::printf("run %s: %s\n", s.name.c_str(),
                status == 0 ? "all hard invariants held" : "INVARIANT VIOLATION");
    return status;
}

int cmd_sweep(const nsshock::Scenario& base, double t_end) {
    // Boundary budget vs. beta: cumulative \int |P| dt should decay like
    // exp(-kappa_- beta) as the wave is launched farther from the boundary.
    const double mults[] = {40.0, 60.0, 80.0};
    std::vector<double> betas, logs;
    for (double m : mults) {
        nsshock::Scenario s = base;
        s.beta_mult = m;
        s.t_end = t_end;
        s.name = base.name + "-beta" + std::to_string(static_cast<int>(m));
        nsshock::ResolvedScenario rs = nsshock::resolve_scenario(s);
        auto result = nsshock::run_scenario_collect(rs);
        const auto cum = nsshock::cumulative_abs_boundary(result.rows);
        const double budget = cum.empty() ? 0.0 : cum.back();
        std::printf("beta=%.6g cumulative |P| = %.17g\n", rs.problem->beta, budget);
        if (budget > 0.0) {
            betas.push_back(rs.problem->beta);
            logs.push_back(std::log(budget));
        }
    }
    if (betas.size() >= 2) {
        const double slope = (logs.back() - logs.front()) / (betas.back() - betas.front());
        std::printf("fitted decay rate of boundary budget: %.9g per unit beta\n", -slope);
    }
    return 0;
}

int cmd_check(double gamma, double v, double vbar, double v_plus, double delta) {
    nsshock::GasLaw law(gamma);
    const auto constants = nsshock::calibrate_quadratic_bounds(law, v_plus, 0.3);
    const auto report =
        nsshock::quadratic_bound_certificate(law, v, vbar, v_plus, delta, constants);
    for (const auto& c : report.checks) {
        std::printf("%-28s lhs=%.12g rhs=%.12g hypothesis=%s : %s\n", c.name,
                    c.lhs, c.rhs, c.hypothesis_met ? "met" : "not met",
                    c.holds ? "holds" : "VIOLATED");
    }
    std::printf("certificate: %s\n", report.all_hold() ? "all bounds hold" : "FAILED");
    return report.all_hold() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"viscous shock stability simulator and diagnostics"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the common flags after the subcommand too

    std::string config, preset, out;
    std::uint64_t seed = 0;
    app.add_option("--config", config, "INI-style scenario file")->capture_default_str();
    app.add_option("--preset", preset,
                   "preset name: impermeable-weak-shock, inflow-weak-shock, "
                   "traveling-wave-oracle, large-delta-control");
    app.add_option("--out", out, "output directory (overrides config and NSSHOCK_OUT)");
    auto* seed_opt = app.add_option("--seed", seed, "perturbation seed (0 = single bump)");

    auto* prof = app.add_subcommand("profile", "build and export a shock profile");
    auto* runc = app.add_subcommand("run", "execute one scenario with diagnostics");
    auto* sweep = app.add_subcommand("sweep", "boundary-offset decay sweep");
    double sweep_t_end = 20.0;
    sweep->add_option("--t-end", sweep_t_end, "sweep horizon")->capture_default_str();
    auto* check = app.add_subcommand("check", "quadratic bound certificate for (v, vbar)");
    double ck_gamma = 2.0, ck_v = 1.05, ck_vbar = 1.0, ck_vplus = 1.0, ck_delta = 0.1;
    check->add_option("--gamma", ck_gamma)->capture_default_str();
    check->add_option("--v", ck_v)->capture_default_str();
    check->add_option("--vbar", ck_vbar)->capture_default_str();
    check->add_option("--v-plus", ck_vplus)->capture_default_str();
    check->add_option("--delta", ck_delta)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return cmd_check(ck_gamma, ck_v, ck_vbar, ck_vplus, ck_delta);
        nsshock::Scenario s = load_scenario(preset, config, out, seed, seed_opt->count() > 0);
        if (prof->parsed()) return cmd_profile(s);
        if (runc->parsed()) return cmd_run(s);
        if (sweep->parsed()) return cmd_sweep(s, sweep_t_end);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
