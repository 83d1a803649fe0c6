#pragma once

#include <complex>
#include <stdexcept>

namespace diskflow {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// A point of the open unit disk together with its gap 1 - z to the boundary
/// point 1. Semigroup orbits approach 1 exponentially fast; storing the gap
/// explicitly keeps full relative accuracy of the boundary distance long
/// after the plain coordinate has rounded to 1.0.
struct DiskPoint {
    Complex value{0.0, 0.0};
    Complex gap{1.0, 0.0};  // 1 - value

    DiskPoint() = default;
    explicit DiskPoint(Complex z) : value(z), gap(Complex(1.0) - z) {}
    DiskPoint(Complex z, Complex one_minus_z) : value(z), gap(one_minus_z) {}

    static DiskPoint from_gap(Complex one_minus_z) {
        return DiskPoint(Complex(1.0) - one_minus_z, one_minus_z);
    }
};

/// 1 - |p|^2, evaluated from the gap (exact near the boundary point 1).
double one_minus_abs_sq(const DiskPoint& p);

bool in_unit_disk(Complex z);

/// rho(z,w) = |z - w| / |1 - conj(z) w|, in [0,1).
double pseudo_hyperbolic(const DiskPoint& a, const DiskPoint& b);
double pseudo_hyperbolic(Complex z, Complex w);

/// d(z,w) = arctanh rho(z,w).
double hyperbolic_distance(const DiskPoint& a, const DiskPoint& b);
double hyperbolic_distance(Complex z, Complex w);

/// Green function of the unit disk, log|(1 - z conj(w)) / (z - w)|.
/// Returns +infinity at z == w.
double green_disk(const DiskPoint& a, const DiskPoint& b);
double green_disk(Complex z, Complex w);

/// -log tanh x for x > 0, stable for large x (where tanh x rounds to 1).
double neg_log_tanh(double x);

/// Green function value at hyperbolic distance d: g = -log tanh d.
double green_from_distance(double d);

/// sigma(x) = log(-log tanh x) / x, strictly decreasing on (0, inf) with
/// limit -2.
double sigma(double x);

/// Koebe map k(z) = z / (1 - z)^2 and its inverse on C \ (-inf, -1/4].
Complex koebe(Complex z);
Complex koebe_inverse(Complex w);

/// Hyperbolic distance of the Koebe domain C \ (-inf, -1/4]:
/// arctanh |(sqrt(4z+1) - sqrt(4w+1)) / (conj(sqrt(4z+1)) + sqrt(4w+1))|
/// with principal roots. Equals hyperbolic_distance(k^-1(z), k^-1(w)).
double koebe_hyperbolic_distance(Complex z, Complex w);

/// m(z) = e^{i theta} (z - a) / (1 - conj(a) z), an automorphism of the disk.
Complex disk_automorphism(Complex a, double theta, Complex z);

}  // namespace diskflow
