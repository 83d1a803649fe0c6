#include <doctest.h>

#include <cmath>
#include <random>

#include "diskflow/disk_geometry.hpp"
#include "oracle_helpers.hpp"

using namespace diskflow;

TEST_CASE("pseudo-hyperbolic distance basics") {
    CHECK(pseudo_hyperbolic(Complex(0.0), Complex(0.3, 0.2)) ==
          doctest::Approx(std::abs(Complex(0.3, 0.2))).epsilon(1e-14));
    CHECK(pseudo_hyperbolic(Complex(0.4, -0.1), Complex(0.4, -0.1)) == 0.0);
    CHECK(pseudo_hyperbolic(Complex(0.5), Complex(-0.5)) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK_THROWS_AS(pseudo_hyperbolic(Complex(1.0), Complex(0.0)), std::domain_error);
    CHECK_THROWS_AS(pseudo_hyperbolic(Complex(0.0), Complex(1.2, 0.1)), std::domain_error);
}

TEST_CASE("hyperbolic distance basics") {
    CHECK(hyperbolic_distance(Complex(0.0), Complex(0.7)) ==
          doctest::Approx(std::atanh(0.7)).epsilon(1e-14));
    CHECK(hyperbolic_distance(Complex(0.1, 0.1), Complex(0.1, 0.1)) == 0.0);
    CHECK(hyperbolic_distance(Complex(0.5), Complex(-0.5)) ==
          doctest::Approx(std::atanh(0.8)).epsilon(1e-14));
}

TEST_CASE("metric axioms on random triples") {
    std::mt19937_64 gen(7);
    for (int k = 0; k < 1000; ++k) {
        const Complex a = oracle::random_disk_point(gen);
        const Complex b = oracle::random_disk_point(gen);
        const Complex c = oracle::random_disk_point(gen);
        CHECK(pseudo_hyperbolic(a, b) == doctest::Approx(pseudo_hyperbolic(b, a)).epsilon(1e-13));
        const double dab = hyperbolic_distance(a, b);
        const double dba = hyperbolic_distance(b, a);
        CHECK(dab == doctest::Approx(dba).epsilon(1e-12));
        CHECK(dab <= hyperbolic_distance(a, c) + hyperbolic_distance(c, b) + 1e-12);
    }
}

TEST_CASE("green function matches the distance identities") {
    CHECK(green_disk(Complex(0.0), Complex(0.5)) ==
          doctest::Approx(-std::log(0.5)).epsilon(1e-14));
    CHECK(green_disk(Complex(0.2, 0.4), Complex(-0.3, 0.1)) ==
          doctest::Approx(green_disk(Complex(-0.3, 0.1), Complex(0.2, 0.4))).epsilon(1e-13));
    CHECK(std::isinf(green_disk(Complex(0.3), Complex(0.3))));

    const double d = hyperbolic_distance(Complex(0.3), Complex(0.6));
    CHECK(green_disk(Complex(0.3), Complex(0.6)) ==
          doctest::Approx(green_from_distance(d)).epsilon(1e-13));

    std::mt19937_64 gen(11);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Complex a = oracle::random_disk_point(gen);
        const Complex b = oracle::random_disk_point(gen);
        if (std::abs(a - b) < 1e-6) {
            continue;
        }
        const double g = green_disk(a, b);
        const double via_d = green_from_distance(hyperbolic_distance(a, b));
        const double via_rho = -std::log(pseudo_hyperbolic(a, b));
        worst = std::max(worst, std::abs(g - via_d) / g);
        worst = std::max(worst, std::abs(g - via_rho) / g);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("gap-carried points keep boundary accuracy") {
    // w = 1 - g with g = 1e-30: plain coordinates round to 1, the gap form
    // still produces d(0, w) = atanh(1 - g) = 0.5 log((2 - g)/g).
    const double g = 1e-30;
    const DiskPoint w = DiskPoint::from_gap(Complex(g, 0.0));
    const double expected = 0.5 * std::log((2.0 - g) / g);
    CHECK(hyperbolic_distance(DiskPoint(Complex(0.0)), w) ==
          doctest::Approx(expected).epsilon(1e-13));
    CHECK(one_minus_abs_sq(w) == doctest::Approx(2.0 * g).epsilon(1e-12));
}

TEST_CASE("sigma values and Lemma-style bound") {
    CHECK(sigma(1.0) == doctest::Approx(-1.3006985996311946).epsilon(1e-12));
    CHECK(sigma(0.1) == doctest::Approx(8.354756831746402).epsilon(1e-12));
    CHECK_THROWS_AS(sigma(0.0), std::domain_error);
    CHECK_THROWS_AS(sigma(-2.0), std::domain_error);

    // Strict decrease and the -2 floor on a log grid.
    double prev = sigma(1e-3);
    for (int k = 1; k <= 400; ++k) {
        const double x = 1e-3 * std::pow(40.0 / 1e-3, k / 400.0);
        const double s = sigma(x);
        CHECK(s < prev);
        CHECK(s > -2.0);
        prev = s;
    }

    // Oracle-scanned constants: -log tanh x <= 2.5 e^{-2x} from x0 = 2 on,
    // equivalently sigma(x) <= log(2.5)/x - 2.
    constexpr double kC = 2.5;
    constexpr double kX0 = 2.0;
    double worst_ratio = 0.0;
    for (int k = 0; k <= 38000; ++k) {
        const double x = kX0 + 1e-3 * k;
        worst_ratio = std::max(worst_ratio, neg_log_tanh(x) * std::exp(2.0 * x));
        CHECK(sigma(x) <= std::log(kC) / x - 2.0 + 1e-15);
    }
    CHECK(worst_ratio <= kC);

    // Very large arguments switch to the asymptotic branch.
    CHECK(sigma(400.0) == doctest::Approx(std::log(2.0) / 400.0 - 2.0).epsilon(1e-12));
}

TEST_CASE("koebe map and inverse") {
    CHECK(std::abs(koebe(Complex(0.0))) == 0.0);
    CHECK(koebe(Complex(0.5)) == Complex(2.0, 0.0));
    CHECK_THROWS_AS(koebe(Complex(1.5)), std::domain_error);
    CHECK_THROWS_AS(koebe_inverse(Complex(-0.3, 0.0)), std::domain_error);
    CHECK_THROWS_AS(koebe_inverse(Complex(-0.25, 0.0)), std::domain_error);

    std::mt19937_64 gen(23);
    for (int k = 0; k < 1000; ++k) {
        const Complex z = oracle::random_disk_point(gen);
        CHECK(std::abs(koebe_inverse(koebe(z)) - z) < 1e-12);
    }
}

TEST_CASE("koebe-domain distance agrees with the pullback") {
    CHECK(koebe_hyperbolic_distance(Complex(1.0, 1.0), Complex(1.0, 1.0)) == 0.0);
    CHECK(koebe_hyperbolic_distance(Complex(0.0), Complex(2.0)) ==
          doctest::Approx(std::atanh(0.5)).epsilon(1e-14));
    CHECK_THROWS_AS(koebe_hyperbolic_distance(Complex(-1.0, 0.0), Complex(0.0)),
                    std::domain_error);

    std::mt19937_64 gen(37);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const Complex a = oracle::random_disk_point(gen);
        const Complex b = oracle::random_disk_point(gen);
        const double via_koebe = koebe_hyperbolic_distance(koebe(a), koebe(b));
        const double direct = hyperbolic_distance(a, b);
        worst = std::max(worst, std::abs(via_koebe - direct));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("hyperbolic distance is Moebius invariant") {
    std::mt19937_64 gen(41);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const Complex a = oracle::random_disk_point(gen, 0.8);
        const double th = angle(gen);
        const Complex z = oracle::random_disk_point(gen);
        const Complex w = oracle::random_disk_point(gen);
        const double before = hyperbolic_distance(z, w);
        const double after =
            hyperbolic_distance(disk_automorphism(a, th, z), disk_automorphism(a, th, w));
        worst = std::max(worst, std::abs(after - before) / std::max(before, 1e-6));
    }
    CHECK(worst < 1e-11);
}
