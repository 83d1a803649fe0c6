#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diskflow/disk_geometry.hpp"

namespace diskflow {

/// Raised when an orbit point gets too close to the boundary for its gap to
/// carry any relative accuracy (double underflow, or a custom model whose
/// plain evaluation has rounded to within ~1e-13 of 1).
struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SemigroupKind { HyperbolicStrip, ParabolicPositiveStep, ParabolicZeroStep, Custom };

/// Geometry of the linearizing image domain, used to place grids and walls
/// for the field-solver estimators.
struct OmegaGeometry {
    enum class Type { HorizontalStrip, RightHalfPlane, UpperHalfPlane, Unknown };
    Type type = Type::Unknown;
    double param = 0.0;  // strip half-width, or the Re/Im wall coordinate
};

/// A semigroup phi_t(z) = h^{-1}(h(z) + t) given by a closed-form conformal
/// map h of the disk onto a horizontally convex domain and its inverse.
/// Catalog models evaluate the boundary gap 1 - phi_t(z) in compensated
/// closed form, so the gap stays accurate down to the underflow threshold.
class KoenigsModel {
public:
    using MapFn = std::function<Complex(Complex)>;

    static KoenigsModel hyperbolic_strip();
    static KoenigsModel parabolic_automorphism();
    static KoenigsModel parabolic_zero_step();
    static KoenigsModel custom(MapFn h, MapFn h_inverse, std::string note);

    static const std::vector<KoenigsModel>& catalog();
    static KoenigsModel by_id(const std::string& id);

    Complex h(Complex z) const { return h_(z); }
    Complex h_inverse(Complex w) const { return h_inverse_(w); }

    /// phi_t(z); throws ConditioningError when the result's gap is lost.
    DiskPoint phi(double t, const DiskPoint& z) const;
    DiskPoint phi(double t, Complex z) const { return phi(t, DiskPoint(z)); }

    const std::string& id() const { return id_; }
    SemigroupKind kind() const { return kind_; }
    std::optional<double> nominal_lambda() const { return nominal_lambda_; }
    const OmegaGeometry& omega() const { return omega_; }
    const std::string& domain_note() const { return domain_note_; }

private:
    KoenigsModel() = default;

    std::string id_;
    SemigroupKind kind_ = SemigroupKind::Custom;
    std::optional<double> nominal_lambda_;
    OmegaGeometry omega_;
    std::string domain_note_;
    MapFn h_;
    MapFn h_inverse_;
};

struct Trajectory {
    DiskPoint start;
    std::vector<std::pair<double, DiskPoint>> samples;
};

/// Orbit samples of z along an increasing t grid.
Trajectory trajectory(const KoenigsModel& model, Complex z, const std::vector<double>& t_grid);

/// 2 d_D(z, phi_t(z)) / t.
double divergence_rate(const KoenigsModel& model, Complex z, double t);

struct StepEstimate {
    double value = 0.0;       // d_D(phi_r(z), phi_{r+u}(z)) at r = r_max
    double diagnostic = 0.0;  // |value - same quantity at r_max/2|
    bool stabilized = false;
};

/// Tail estimate of the order-u step of the orbit of z. The quantity is
/// non-increasing in r, so the r_max value is an upper estimate of the limit.
StepEstimate hyperbolic_step(const KoenigsModel& model, double u, Complex z, double r_max,
                             double stabilization_tol = 1e-3);

struct Classification {
    enum class Kind { Hyperbolic, ParabolicPositiveStep, ParabolicZeroStep, Ambiguous };
    Kind kind = Kind::Ambiguous;
    double lambda_hat = 0.0;
    double step_at_unit = 0.0;
};

/// Type verdict from the divergence-rate tail, with the parabolic subcases
/// split by the stabilized unit step.
Classification classify(const KoenigsModel& model);

}  // namespace diskflow
