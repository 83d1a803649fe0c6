#pragma once

#include <vector>

#include "diskflow/disk_geometry.hpp"

namespace diskflow {

/// Compact non-polar plane set with an arclength-uniform boundary sampler.
/// Every representable shape has positive logarithmic capacity; bare finite
/// point sets are not constructible.
class CompactSet {
public:
    enum class Shape { Disk, Polygon, Segment };

    static CompactSet disk(Complex center, double radius);
    static CompactSet polygon(std::vector<Complex> vertices);
    static CompactSet segment(Complex a, Complex b);

    Shape shape() const { return shape_; }

    /// n approximately arclength-uniform boundary points.
    std::vector<Complex> boundary_samples(int n) const;

    /// Distance from z to the solid set (0 inside).
    double distance(Complex z) const;

    /// Solid membership. Always false for segments (zero area).
    bool contains(Complex z) const;

    double max_boundary_modulus() const;
    double diameter() const;

    /// Throws std::domain_error unless the closure sits inside the open unit
    /// disk with the given margin.
    void require_disk_plate(double margin = 1e-6) const;

    Complex disk_center() const { return center_; }
    double disk_radius() const { return radius_; }
    const std::vector<Complex>& vertices() const { return vertices_; }

private:
    CompactSet() = default;

    Shape shape_ = Shape::Disk;
    Complex center_{0.0, 0.0};
    double radius_ = 0.0;
    std::vector<Complex> vertices_;  // polygon vertices or segment endpoints
};

/// Finitely supported probability measure on the plane.
struct DiscreteMeasure {
    std::vector<Complex> support;
    std::vector<double> weights;

    void validate() const;

    /// Green potential sum_i w_i g_D(z, x_i); +infinity on the support.
    double green_potential(Complex z) const;
};

}  // namespace diskflow
