#include "diskflow/disk_geometry.hpp"

#include <cmath>
#include <limits>

namespace diskflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1 - conj(a) b expressed through the gaps: conj(ga) + gb - conj(ga) gb.
Complex one_minus_conj_prod(const DiskPoint& a, const DiskPoint& b) {
    const Complex cga = std::conj(a.gap);
    return cga + b.gap - cga * b.gap;
}

void require_disk(const DiskPoint& p) {
    if (!(one_minus_abs_sq(p) > 0.0)) {
        throw std::domain_error("point is not inside the open unit disk");
    }
}

}  // namespace

double one_minus_abs_sq(const DiskPoint& p) {
    // |z|^2 = |1 - g|^2 = 1 - 2 Re g + |g|^2.
    return 2.0 * p.gap.real() - std::norm(p.gap);
}

bool in_unit_disk(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag()) && std::norm(z) < 1.0;
}

double pseudo_hyperbolic(const DiskPoint& a, const DiskPoint& b) {
    require_disk(a);
    require_disk(b);
    const double num = std::abs(a.gap - b.gap);  // |b.value - a.value|
    const double den = std::abs(one_minus_conj_prod(a, b));
    return num / den;
}

double pseudo_hyperbolic(Complex z, Complex w) {
    return pseudo_hyperbolic(DiskPoint(z), DiskPoint(w));
}

double hyperbolic_distance(const DiskPoint& a, const DiskPoint& b) {
    require_disk(a);
    require_disk(b);
    const double den2 = std::norm(one_minus_conj_prod(a, b));
    const double rho = std::abs(a.gap - b.gap) / std::sqrt(den2);
    if (rho < 0.5) {
        return std::atanh(rho);
    }
    // 1 - rho^2 = (1-|a|^2)(1-|b|^2) / |1 - conj(a) b|^2, free of cancellation.
    const double omrs = one_minus_abs_sq(a) * one_minus_abs_sq(b) / den2;
    if (!(omrs > 0.0)) {
        return kInf;
    }
    return std::log1p(rho) - 0.5 * std::log(omrs);
}

double hyperbolic_distance(Complex z, Complex w) {
    return hyperbolic_distance(DiskPoint(z), DiskPoint(w));
}

double green_disk(const DiskPoint& a, const DiskPoint& b) {
    require_disk(a);
    require_disk(b);
    const double den2 = std::norm(one_minus_conj_prod(a, b));
    const double rho = std::abs(a.gap - b.gap) / std::sqrt(den2);
    if (rho == 0.0) {
        return kInf;  // pole at coincident points
    }
    if (rho < 0.5) {
        return -std::log(rho);
    }
    const double omrs = one_minus_abs_sq(a) * one_minus_abs_sq(b) / den2;
    return -0.5 * std::log1p(-omrs);
}

double green_disk(Complex z, Complex w) {
    return green_disk(DiskPoint(z), DiskPoint(w));
}

double neg_log_tanh(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("neg_log_tanh requires x > 0");
    }
    if (x > 350.0) {
        return 2.0 * std::exp(-2.0 * x);  // underflows gracefully
    }
    // -log tanh x = log coth x = log(1 + 2/(e^{2x} - 1)).
    return std::log1p(2.0 / std::expm1(2.0 * x));
}

double green_from_distance(double d) {
    return neg_log_tanh(d);
}

double sigma(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("sigma requires x > 0");
    }
    if (x > 350.0) {
        // -log tanh x = 2 e^{-2x} (1 + O(e^{-4x})); the correction is below
        // double precision here.
        return (std::log(2.0) - 2.0 * x) / x;
    }
    return std::log(neg_log_tanh(x)) / x;
}

Complex koebe(Complex z) {
    if (!in_unit_disk(z)) {
        throw std::domain_error("koebe requires |z| < 1");
    }
    const Complex d = Complex(1.0) - z;
    return z / (d * d);
}

Complex koebe_inverse(Complex w) {
    const Complex s = 4.0 * w + 1.0;
    if (s.imag() == 0.0 && s.real() <= 0.0) {
        throw std::domain_error("koebe_inverse: argument lies on the slit (-inf, -1/4]");
    }
    const Complex r = std::sqrt(s);  // principal branch, Re r > 0
    return (r - 1.0) / (r + 1.0);
}

double koebe_hyperbolic_distance(Complex z, Complex w) {
    auto root = [](Complex v) {
        const Complex s = 4.0 * v + 1.0;
        if (s.imag() == 0.0 && s.real() <= 0.0) {
            throw std::domain_error("koebe_hyperbolic_distance: point on the slit (-inf, -1/4]");
        }
        return std::sqrt(s);
    };
    const Complex rz = root(z);
    const Complex rw = root(w);
    const double rho = std::abs((rz - rw) / (std::conj(rz) + rw));
    return std::atanh(rho);
}

Complex disk_automorphism(Complex a, double theta, Complex z) {
    return std::polar(1.0, theta) * (z - a) / (Complex(1.0) - std::conj(a) * z);
}

}  // namespace diskflow
