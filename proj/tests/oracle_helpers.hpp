#pragma once

// Test-only oracles, kept independent of the library paths they check.

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "diskflow/disk_geometry.hpp"

namespace oracle {

using diskflow::Complex;

// Geometric-mean pairwise distance product of an explicit tuple, computed by
// the plain double product (no log accumulation).
inline double tuple_diameter(std::span<const Complex> tuple,
                             bool hyperbolic = false) {
    const std::size_t n = tuple.size();
    double product = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d;
            if (hyperbolic) {
                d = std::abs(tuple[i] - tuple[j]) /
                    std::abs(Complex(1.0) - std::conj(tuple[i]) * tuple[j]);
            } else {
                d = std::abs(tuple[i] - tuple[j]);
            }
            product *= std::pow(d, 2.0 / (static_cast<double>(n) * (n - 1)));
        }
    }
    return product;
}

// Uniform random point of the disk of radius r_max.
inline Complex random_disk_point(std::mt19937_64& gen, double r_max = 0.95) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = r_max * std::sqrt(unit(gen));
    const double th = 2.0 * diskflow::kPi * unit(gen);
    return std::polar(r, th);
}

// Mean of f over a circle of radius rho around z (trapezoid rule).
template <typename F>
double circle_mean(F&& f, Complex z, double rho, int panels = 256) {
    double sum = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double th = 2.0 * diskflow::kPi * k / panels;
        sum += f(z + std::polar(rho, th));
    }
    return sum / panels;
}

// Harmonic measure of the arc [theta0, theta1] of the circle |w| = R seen
// from z inside: Poisson-kernel quadrature (Simpson).
inline double poisson_arc_measure(Complex z, double R, double theta0, double theta1,
                                  int panels = 512) {
    auto kernel = [&](double th) {
        const Complex w = std::polar(R, th);
        return (R * R - std::norm(z)) / (2.0 * diskflow::kPi * std::norm(w - z));
    };
    const double h = (theta1 - theta0) / panels;
    double sum = kernel(theta0) + kernel(theta1);
    for (int k = 1; k < panels; ++k) {
        sum += (k % 2 ? 4.0 : 2.0) * kernel(theta0 + k * h);
    }
    return sum * h / 3.0;
}

}  // namespace oracle
