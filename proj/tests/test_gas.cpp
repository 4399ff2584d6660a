/// @file test_gas.cpp
/// @brief Gas-law, relative-quantity, and sharp quadratic bound tests.

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "nsshock/gas.hpp"

using nsshock::GasLaw;

TEST_CASE("pressure law and derivatives") {
    GasLaw law(2.0);
    CHECK(law.pressure(1.0) == 1.0);
    CHECK(law.pressure(2.0) == 0.25);
    CHECK(law.dpressure(1.0) == -2.0);
    CHECK(law.d2pressure(1.0) == 6.0);
    CHECK(law.internal_energy(1.0) == 1.0);
    CHECK(law.internal_energy(2.0) == 0.5);
    CHECK(law.sound_speed(1.0) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-15));

    GasLaw g53(5.0 / 3.0);
    // Finite-difference consistency of the derivative chain, generic gamma.
    const double v = 1.3, h = 1e-5;
    CHECK(g53.dpressure(v) ==
          Catch::Approx((g53.pressure(v + h) - g53.pressure(v - h)) / (2 * h))
              .epsilon(1e-8));
    CHECK(g53.d2pressure(v) ==
          Catch::Approx((g53.dpressure(v + h) - g53.dpressure(v - h)) / (2 * h))
              .epsilon(1e-8));
    // Q' = -p.
    CHECK(-g53.pressure(v) ==
          Catch::Approx((g53.internal_energy(v + h) - g53.internal_energy(v - h)) /
                        (2 * h))
              .epsilon(1e-8));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(GasLaw(1.0), std::domain_error);
    CHECK_THROWS_AS(GasLaw(0.5), std::domain_error);
    GasLaw law(2.0);
    CHECK_THROWS_AS(law.pressure(0.0), std::domain_error);
    CHECK_THROWS_AS(law.pressure(-1.0), std::domain_error);
    CHECK_THROWS_AS(law.internal_energy(-0.1), std::domain_error);
}

TEST_CASE("relative quantities: exact value and properties") {
    GasLaw law(2.0);
    // p(v|w) = p(v) - p(w) - p'(w)(v - w); for gamma = 2, v = 2, w = 1:
    // 0.25 - 1 - (-2)(1) = 1.25.
    CHECK(law.relative_pressure(2.0, 1.0) == Catch::Approx(1.25).epsilon(1e-15));
    // Q(2|1) = 0.5 - 1 - (-1)(1) = 0.5.
    CHECK(law.relative_internal_energy(2.0, 1.0) == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(law.relative_entropy(2.0, 0.3, 1.0, 0.1) ==
          Catch::Approx(0.5 * 0.2 * 0.2 + 0.5).epsilon(1e-14));

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    for (int i = 0; i < 200; ++i) {
        const double v = dist(rng), w = dist(rng);
        // Both p and Q are strictly convex, so the relative quantity is
        // nonnegative and vanishes only on the diagonal.
        CHECK(law.relative_pressure(v, w) >= 0.0);
        CHECK(law.relative_internal_energy(v, w) >= 0.0);
        CHECK(law.relative_pressure(w, w) == 0.0);
        if (std::abs(v - w) > 1e-3) {
            CHECK(law.relative_pressure(v, w) > 0.0);
            CHECK(law.relative_internal_energy(v, w) > 0.0);
        }
    }
}

TEST_CASE("relative_quantity template matches the closed forms") {
    GasLaw law(1.4);
    auto p = [&](double v) { return law.pressure(v); };
    auto dp = [&](double v) { return law.dpressure(v); };
    auto q = [&](double v) { return law.internal_energy(v); };
    auto dq = [&](double v) { return -law.pressure(v); };
    for (double v : {0.5, 0.9, 1.0, 1.7, 2.4}) {
        for (double w : {0.6, 1.0, 1.9}) {
            CHECK(nsshock::relative_quantity(p, dp, v, w) ==
                  Catch::Approx(law.relative_pressure(v, w)).margin(1e-15));
            CHECK(nsshock::relative_quantity(q, dq, v, w) ==
                  Catch::Approx(law.relative_internal_energy(v, w)).margin(1e-15));
        }
    }
}

TEST_CASE("subsonic predicate") {
    GasLaw law(2.0);
    // c(1) = sqrt(2): u = 1 is subsonic, u = 1.5 is not.
    CHECK(law.is_subsonic(1.0, 1.0));
    CHECK(law.is_subsonic(1.0, -1.0));
    CHECK_FALSE(law.is_subsonic(1.0, 1.5));
    CHECK_FALSE(law.is_subsonic(1.0, std::sqrt(2.0)));  // strict inequality
}

TEST_CASE("quadratic bound certificate holds across the admissible range") {
    GasLaw law(2.0);
    const double v_plus = 1.0, delta_star = 0.3;
    const auto constants = nsshock::calibrate_quadratic_bounds(law, v_plus, delta_star);
    CHECK(constants.c_item1_energy > 0.0);
    CHECK(constants.c_item1_pressure > 0.0);
    CHECK(constants.c_item2 > 0.0);
    CHECK(constants.delta_star == delta_star);

    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> vdist(0.55, 1.45);
    int exercised = 0;
    for (int i = 0; i < 2000; ++i) {
        const double vbar = vdist(rng), v = vdist(rng);
        const double dp = std::abs(law.pressure(v) - law.pressure(vbar));
        const double dpb = std::abs(law.pressure(vbar) - law.pressure(v_plus));
        const double delta = std::max(dp, dpb) * 1.05 + 1e-6;
        if (delta >= delta_star) continue;
        const auto report =
            nsshock::quadratic_bound_certificate(law, v, vbar, v_plus, delta, constants);
        for (const auto& c : report.checks) {
            INFO(c.name << ": lhs=" << c.lhs << " rhs=" << c.rhs);
            CHECK(c.holds);
        }
        if (report.checks[0].hypothesis_met) ++exercised;
    }
    CHECK(exercised > 200);  // the sweep genuinely exercised the hypotheses
}

TEST_CASE("constant-free lower bound on Q(v|vbar) is sharp to second order") {
    // Q(v|vbar) >= p(vbar)^{-1/gamma - 1}/(2 gamma) |dp|^2 - (1+gamma)/(3 gamma^2)
    //              p(vbar)^{-1/gamma - 2} dp^3, with no tunable constant.
    GasLaw law(2.0);
    const double g = law.gamma();
    for (double vbar : {0.8, 1.0, 1.2}) {
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            const double v = vbar * (1.0 + eps);
            const double dp = law.pressure(v) - law.pressure(vbar);
            const double pb = law.pressure(vbar);
            const double lead = std::pow(pb, -1.0 / g - 1.0) / (2.0 * g) * dp * dp;
            const double corr =
                (1.0 + g) / (3.0 * g * g) * std::pow(pb, -1.0 / g - 2.0) * dp * dp * dp;
            const double lower = lead - corr;
            CHECK(law.relative_internal_energy(v, vbar) >= lower - 1e-15);
            // Sharpness: the gap is higher order than the leading term.
            CHECK(law.relative_internal_energy(v, vbar) - lower <= lead * eps * 10.0);
        }
    }
}
