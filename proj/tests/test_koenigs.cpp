#include <doctest.h>

#include <cmath>
#include <random>

#include "diskflow/fit.hpp"
#include "diskflow/koenigs.hpp"
#include "oracle_helpers.hpp"

using namespace diskflow;

TEST_CASE("catalog models invert their own maps") {
    std::mt19937_64 gen(3);
    for (const KoenigsModel& m : KoenigsModel::catalog()) {
        double worst = 0.0;
        for (int k = 0; k < 2000; ++k) {
            const Complex z = oracle::random_disk_point(gen, 0.9);
            worst = std::max(worst, std::abs(m.h_inverse(m.h(z)) - z));
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("phi is the identity at t = 0 and linearizes") {
    std::mt19937_64 gen(5);
    // Plain-coordinate h evaluation loses the boundary gap past t ~ 15;
    // the linearization guard runs where the round trip is well conditioned.
    std::uniform_real_distribution<double> tdist(0.0, 10.0);
    for (const KoenigsModel& m : KoenigsModel::catalog()) {
        double worst_id = 0.0, worst_lin = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const Complex z = oracle::random_disk_point(gen, 0.9);
            worst_id = std::max(worst_id, std::abs(m.phi(0.0, z).value - z));
            const double t = tdist(gen);
            worst_lin =
                std::max(worst_lin, std::abs(m.h(m.phi(t, z).value) - m.h(z) - t));
        }
        CHECK(worst_id < 1e-12);
        CHECK(worst_lin < 1e-9);
    }
}

TEST_CASE("automorphism model hits the hand-computed orbit point") {
    const KoenigsModel m = KoenigsModel::parabolic_automorphism();
    const DiskPoint p = m.phi(1.0, Complex(0.0));
    CHECK(p.value.real() == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(p.value.imag() == doctest::Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("semigroup law") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> tdist(0.0, 10.0);
    for (const KoenigsModel& m : KoenigsModel::catalog()) {
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const Complex z = oracle::random_disk_point(gen, 0.9);
            const double t = tdist(gen);
            const double s = tdist(gen);
            const DiskPoint once = m.phi(t + s, DiskPoint(z));
            const DiskPoint twice = m.phi(t, m.phi(s, DiskPoint(z)));
            worst = std::max(worst, std::abs(once.value - twice.value));
        }
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("Schwarz-Pick contraction along the flow") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> tdist(0.0, 15.0);
    for (const KoenigsModel& m : KoenigsModel::catalog()) {
        for (int k = 0; k < 500; ++k) {
            const Complex z = oracle::random_disk_point(gen, 0.9);
            const Complex w = oracle::random_disk_point(gen, 0.9);
            const double t = tdist(gen);
            const double before = hyperbolic_distance(z, w);
            const double after = hyperbolic_distance(m.phi(t, z), m.phi(t, w));
            CHECK(after <= before + 1e-10);
        }
    }
}

TEST_CASE("trajectories approach the boundary fixed point") {
    const KoenigsModel strip = KoenigsModel::hyperbolic_strip();
    const Trajectory traj = trajectory(strip, Complex(0.0), {0.0, 1.0, 5.0, 20.0, 50.0});
    REQUIRE(traj.samples.size() == 5);
    CHECK(traj.samples[0].second.value == Complex(0.0));
    for (const auto& [t, p] : traj.samples) {
        CHECK(one_minus_abs_sq(p) > 0.0);
    }
    const double first_gap = std::abs(traj.samples.front().second.gap);
    const double last_gap = std::abs(traj.samples.back().second.gap);
    CHECK(last_gap < first_gap);
    CHECK(last_gap < 1e-10);  // |phi_50(0) - 1| at t = 50

    const Trajectory single = trajectory(strip, Complex(0.2, 0.1), {0.0});
    CHECK(single.samples.size() == 1);
    CHECK(std::abs(single.samples[0].second.value - Complex(0.2, 0.1)) < 1e-15);
    CHECK_THROWS_AS(trajectory(strip, Complex(0.0), {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("divergence rate recovers the catalog rates") {
    const KoenigsModel strip = KoenigsModel::hyperbolic_strip();
    CHECK(divergence_rate(strip, Complex(0.0), 200.0) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(divergence_rate(strip, Complex(0.0), 200.0) ==
          divergence_rate(strip, Complex(0.0), 200.0));

    const KoenigsModel zero = KoenigsModel::parabolic_zero_step();
    CHECK(divergence_rate(zero, Complex(0.0), 1e3) < 0.02);

    // Regression oracle for the nominal rate: slope of d(0, phi_t(0)) over
    // t in [100, 500] (the range is capped by gap underflow).
    std::vector<double> ts, ds;
    for (double t = 100.0; t <= 500.0; t += 50.0) {
        ts.push_back(t);
        ds.push_back(hyperbolic_distance(DiskPoint(Complex(0.0)), strip.phi(t, Complex(0.0))));
    }
    const LineFit fit = fit_line(ts, ds);
    CHECK(2.0 * fit.slope == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("hyperbolic step separates the parabolic subtypes") {
    const KoenigsModel strip = KoenigsModel::hyperbolic_strip();
    const KoenigsModel autom = KoenigsModel::parabolic_automorphism();
    const KoenigsModel zero = KoenigsModel::parabolic_zero_step();

    // Automorphisms keep d invariant: the step equals d(z, phi_u(z)) for
    // every r, so the stabilization diagnostic vanishes.
    const StepEstimate s_auto = hyperbolic_step(autom, 1.0, Complex(0.0), 1e3);
    CHECK(s_auto.value ==
          doctest::Approx(hyperbolic_distance(Complex(0.0), autom.phi(1.0, Complex(0.0)).value))
              .epsilon(1e-9));
    CHECK(s_auto.diagnostic < 1e-9);
    CHECK(s_auto.stabilized);

    for (double u : {1.0, 2.0, 4.0, 8.0}) {
        const StepEstimate s = hyperbolic_step(zero, u, Complex(0.0), 1e4);
        CHECK(s.value < 1e-3);
        const StepEstimate coarser = hyperbolic_step(zero, u, Complex(0.0), 1e2);
        CHECK(s.value < coarser.value);
    }

    // Strip model: step is u/2 for every r; ratio to u gives the rate.
    for (double u : {2.0, 10.0, 50.0}) {
        const StepEstimate s = hyperbolic_step(strip, u, Complex(0.0), 100.0);
        CHECK(2.0 * s.value / u == doctest::Approx(1.0).epsilon(1e-10));
    }

    // Non-increasing in r.
    for (const KoenigsModel& m : KoenigsModel::catalog()) {
        double prev = hyperbolic_step(m, 3.0, Complex(0.1, 0.2), 10.0).value;
        for (double r : {20.0, 40.0, 80.0}) {
            const double cur = hyperbolic_step(m, 3.0, Complex(0.1, 0.2), r).value;
            CHECK(cur <= prev + 1e-10);
            prev = cur;
        }
    }
}

TEST_CASE("classify identifies every catalog model") {
    const Classification strip = classify(KoenigsModel::hyperbolic_strip());
    CHECK(strip.kind == Classification::Kind::Hyperbolic);
    CHECK(strip.lambda_hat == doctest::Approx(1.0).epsilon(0.02));

    const Classification autom = classify(KoenigsModel::parabolic_automorphism());
    CHECK(autom.kind == Classification::Kind::ParabolicPositiveStep);

    const Classification zero = classify(KoenigsModel::parabolic_zero_step());
    CHECK(zero.kind == Classification::Kind::ParabolicZeroStep);
}

TEST_CASE("orbit gap underflow raises the conditioning signal") {
    const KoenigsModel strip = KoenigsModel::hyperbolic_strip();
    CHECK_THROWS_AS(strip.phi(2000.0, Complex(0.0)), ConditioningError);
    CHECK_THROWS_AS(strip.phi(-1.0, Complex(0.0)), std::domain_error);
    CHECK_THROWS_AS(strip.phi(1.0, Complex(2.0, 0.0)), std::domain_error);
}
