#include "diskflow/compact_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diskflow {

namespace {

double point_segment_distance(Complex z, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) {
        return std::abs(z - a);
    }
    double s = ((z - a).real() * ab.real() + (z - a).imag() * ab.imag()) / len2;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(z - (a + s * ab));
}

}  // namespace

CompactSet CompactSet::disk(Complex center, double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("disk plate requires radius > 0");
    }
    CompactSet k;
    k.shape_ = Shape::Disk;
    k.center_ = center;
    k.radius_ = radius;
    return k;
}

CompactSet CompactSet::polygon(std::vector<Complex> vertices) {
    if (vertices.size() < 3) {
        throw std::invalid_argument("polygon plate requires at least 3 vertices");
    }
    double perimeter = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        perimeter += std::abs(vertices[(i + 1) % vertices.size()] - vertices[i]);
    }
    if (!(perimeter > 0.0)) {
        throw std::invalid_argument("polygon plate is degenerate");
    }
    CompactSet k;
    k.shape_ = Shape::Polygon;
    k.vertices_ = std::move(vertices);
    return k;
}

CompactSet CompactSet::segment(Complex a, Complex b) {
    if (a == b) {
        throw std::invalid_argument("segment plate requires distinct endpoints");
    }
    CompactSet k;
    k.shape_ = Shape::Segment;
    k.vertices_ = {a, b};
    return k;
}

std::vector<Complex> CompactSet::boundary_samples(int n) const {
    if (n < 2) {
        throw std::invalid_argument("boundary_samples requires n >= 2");
    }
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(n));
    switch (shape_) {
        case Shape::Disk:
            for (int i = 0; i < n; ++i) {
                const double th = 2.0 * kPi * i / n;
                pts.push_back(center_ + std::polar(radius_, th));
            }
            break;
        case Shape::Polygon: {
            const std::size_t m = vertices_.size();
            std::vector<double> cum(m + 1, 0.0);
            for (std::size_t i = 0; i < m; ++i) {
                cum[i + 1] = cum[i] + std::abs(vertices_[(i + 1) % m] - vertices_[i]);
            }
            const double total = cum[m];
            std::size_t edge = 0;
            for (int i = 0; i < n; ++i) {
                const double s = total * i / n;
                while (edge + 1 < m && cum[edge + 1] <= s) {
                    ++edge;
                }
                const Complex a = vertices_[edge];
                const Complex b = vertices_[(edge + 1) % m];
                const double seg = cum[edge + 1] - cum[edge];
                const double f = seg > 0.0 ? (s - cum[edge]) / seg : 0.0;
                pts.push_back(a + f * (b - a));
            }
            break;
        }
        case Shape::Segment: {
            const Complex a = vertices_[0];
            const Complex b = vertices_[1];
            for (int i = 0; i < n; ++i) {
                pts.push_back(a + (b - a) * (static_cast<double>(i) / (n - 1)));
            }
            break;
        }
    }
    return pts;
}

double CompactSet::distance(Complex z) const {
    switch (shape_) {
        case Shape::Disk:
            return std::max(0.0, std::abs(z - center_) - radius_);
        case Shape::Polygon: {
            if (contains(z)) {
                return 0.0;
            }
            double d = std::numeric_limits<double>::infinity();
            const std::size_t m = vertices_.size();
            for (std::size_t i = 0; i < m; ++i) {
                d = std::min(d, point_segment_distance(z, vertices_[i], vertices_[(i + 1) % m]));
            }
            return d;
        }
        case Shape::Segment:
            return point_segment_distance(z, vertices_[0], vertices_[1]);
    }
    return 0.0;
}

bool CompactSet::contains(Complex z) const {
    switch (shape_) {
        case Shape::Disk:
            return std::abs(z - center_) <= radius_;
        case Shape::Polygon: {
            // Crossing-number parity.
            bool inside = false;
            const std::size_t m = vertices_.size();
            for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
                const Complex& a = vertices_[i];
                const Complex& b = vertices_[j];
                if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
                    const double x = a.real() + (z.imag() - a.imag()) *
                                                    (b.real() - a.real()) /
                                                    (b.imag() - a.imag());
                    if (z.real() < x) {
                        inside = !inside;
                    }
                }
            }
            return inside;
        }
        case Shape::Segment:
            return false;
    }
    return false;
}

double CompactSet::max_boundary_modulus() const {
    switch (shape_) {
        case Shape::Disk:
            return std::abs(center_) + radius_;
        case Shape::Polygon:
        case Shape::Segment: {
            double m = 0.0;
            for (const Complex& v : vertices_) {
                m = std::max(m, std::abs(v));
            }
            return m;
        }
    }
    return 0.0;
}

double CompactSet::diameter() const {
    switch (shape_) {
        case Shape::Disk:
            return 2.0 * radius_;
        case Shape::Polygon:
        case Shape::Segment: {
            double d = 0.0;
            for (std::size_t i = 0; i < vertices_.size(); ++i) {
                for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
                    d = std::max(d, std::abs(vertices_[i] - vertices_[j]));
                }
            }
            return d;
        }
    }
    return 0.0;
}

void CompactSet::require_disk_plate(double margin) const {
    if (max_boundary_modulus() >= 1.0 - margin) {
        throw std::domain_error("plate is not compactly inside the unit disk");
    }
}

void DiscreteMeasure::validate() const {
    if (support.size() != weights.size() || support.empty()) {
        throw std::invalid_argument("measure support/weights mismatch");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("measure has a negative weight");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("measure weights do not sum to 1");
    }
}

double DiscreteMeasure::green_potential(Complex z) const {
    double g = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
        g += weights[i] * green_disk(z, support[i]);
    }
    return g;
}

}  // namespace diskflow
