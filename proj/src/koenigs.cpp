#include "diskflow/koenigs.hpp"

#include <cmath>

namespace diskflow {

namespace {

bool usable_gap(const DiskPoint& p) {
    return std::isfinite(p.gap.real()) && std::isfinite(p.gap.imag()) &&
           !(p.gap == Complex(0.0)) && one_minus_abs_sq(p) > 0.0;
}

DiskPoint checked(DiskPoint p, const char* what) {
    if (!usable_gap(p)) {
        throw ConditioningError(what);
    }
    return p;
}

}  // namespace

KoenigsModel KoenigsModel::hyperbolic_strip() {
    KoenigsModel m;
    m.id_ = "hyperbolic-strip";
    m.kind_ = SemigroupKind::HyperbolicStrip;
    m.nominal_lambda_ = 1.0;  // fixed by the divergence-rate regression oracle
    m.omega_ = {OmegaGeometry::Type::HorizontalStrip, kPi / 2.0};
    m.domain_note_ = "h(z) = log((1+z)/(1-z)); image is the horizontal strip |Im w| < pi/2";
    m.h_ = [](Complex z) { return std::log((Complex(1.0) + z) / (Complex(1.0) - z)); };
    m.h_inverse_ = [](Complex w) {
        const Complex e = std::exp(w);
        return (e - 1.0) / (e + 1.0);
    };
    return m;
}

KoenigsModel KoenigsModel::parabolic_automorphism() {
    KoenigsModel m;
    m.id_ = "parabolic-automorphism";
    m.kind_ = SemigroupKind::ParabolicPositiveStep;
    m.nominal_lambda_ = 0.0;
    m.omega_ = {OmegaGeometry::Type::UpperHalfPlane, 0.0};
    m.domain_note_ = "h(z) = i(1+z)/(1-z); image is the upper half-plane, phi_t are automorphisms";
    m.h_ = [](Complex z) { return Complex(0.0, 1.0) * (Complex(1.0) + z) / (Complex(1.0) - z); };
    m.h_inverse_ = [](Complex w) {
        return (w - Complex(0.0, 1.0)) / (w + Complex(0.0, 1.0));
    };
    return m;
}

KoenigsModel KoenigsModel::parabolic_zero_step() {
    KoenigsModel m;
    m.id_ = "parabolic-zero-step";
    m.kind_ = SemigroupKind::ParabolicZeroStep;
    m.nominal_lambda_ = 0.0;
    m.omega_ = {OmegaGeometry::Type::RightHalfPlane, -0.5};
    m.domain_note_ = "h(z) = z/(1-z); image is the half-plane Re w > -1/2, base space C";
    m.h_ = [](Complex z) { return z / (Complex(1.0) - z); };
    m.h_inverse_ = [](Complex w) { return w / (Complex(1.0) + w); };
    return m;
}

KoenigsModel KoenigsModel::custom(MapFn h, MapFn h_inverse, std::string note) {
    KoenigsModel m;
    m.id_ = "custom";
    m.kind_ = SemigroupKind::Custom;
    m.omega_ = {OmegaGeometry::Type::Unknown, 0.0};
    m.domain_note_ = std::move(note);
    m.h_ = std::move(h);
    m.h_inverse_ = std::move(h_inverse);
    return m;
}

const std::vector<KoenigsModel>& KoenigsModel::catalog() {
    static const std::vector<KoenigsModel> models = {
        hyperbolic_strip(), parabolic_automorphism(), parabolic_zero_step()};
    return models;
}

KoenigsModel KoenigsModel::by_id(const std::string& id) {
    for (const KoenigsModel& m : catalog()) {
        if (m.id_ == id) {
            return m;
        }
    }
    throw std::invalid_argument("unknown model id: " + id);
}

DiskPoint KoenigsModel::phi(double t, const DiskPoint& z) const {
    if (!(t >= 0.0)) {
        throw std::domain_error("phi requires t >= 0");
    }
    if (!(one_minus_abs_sq(z) > 0.0)) {
        throw std::domain_error("phi requires |z| < 1");
    }
    const Complex ga = z.gap;
    switch (kind_) {
        case SemigroupKind::HyperbolicStrip: {
            // e^{-(h(z)+t)} = e^{-t} (1-z)/(1+z); gap = 2q/(1+q).
            const Complex q = std::exp(-t) * ga / (Complex(2.0) - ga);
            return checked(DiskPoint::from_gap(2.0 * q / (Complex(1.0) + q)),
                           "strip orbit gap underflow");
        }
        case SemigroupKind::ParabolicPositiveStep: {
            // gap = 2i (1-z) / (t (1-z) + 2i).
            const Complex tw = t * ga + Complex(0.0, 2.0);
            return checked(DiskPoint::from_gap(Complex(0.0, 2.0) * ga / tw),
                           "automorphism orbit gap underflow");
        }
        case SemigroupKind::ParabolicZeroStep: {
            // gap = (1-z) / (1 + t (1-z)).
            return checked(DiskPoint::from_gap(ga / (Complex(1.0) + t * ga)),
                           "zero-step orbit gap underflow");
        }
        case SemigroupKind::Custom: {
            const Complex w = h_(z.value) + t;
            const Complex p = h_inverse_(w);
            DiskPoint out(p);
            if (std::abs(out.gap) < 1e-13) {
                throw ConditioningError("custom model orbit within 1e-13 of the boundary");
            }
            return checked(out, "custom orbit left the disk");
        }
    }
    throw std::logic_error("unreachable model kind");
}

Trajectory trajectory(const KoenigsModel& model, Complex z, const std::vector<double>& t_grid) {
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("trajectory t grid must be strictly increasing");
        }
    }
    Trajectory traj;
    traj.start = DiskPoint(z);
    traj.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        traj.samples.emplace_back(t, model.phi(t, traj.start));
    }
    return traj;
}

double divergence_rate(const KoenigsModel& model, Complex z, double t) {
    if (!(t > 0.0)) {
        throw std::domain_error("divergence_rate requires t > 0");
    }
    const DiskPoint p(z);
    return 2.0 * hyperbolic_distance(p, model.phi(t, p)) / t;
}

StepEstimate hyperbolic_step(const KoenigsModel& model, double u, Complex z, double r_max,
                             double stabilization_tol) {
    if (!(u > 0.0) || !(r_max > 0.0)) {
        throw std::domain_error("hyperbolic_step requires u > 0 and r_max > 0");
    }
    const DiskPoint p(z);
    auto step_at = [&](double r) {
        return hyperbolic_distance(model.phi(r, p), model.phi(r + u, p));
    };
    StepEstimate est;
    est.value = step_at(r_max);
    est.diagnostic = std::abs(est.value - step_at(r_max / 2.0));
    est.stabilized = est.diagnostic <= stabilization_tol;
    return est;
}

Classification classify(const KoenigsModel& model) {
    constexpr double kHorizon = 200.0;
    const DiskPoint origin{Complex(0.0)};
    const double d_half = hyperbolic_distance(origin, model.phi(kHorizon / 2.0, origin));
    const double d_full = hyperbolic_distance(origin, model.phi(kHorizon, origin));
    const double lambda_hat = 2.0 * (d_full - d_half) / (kHorizon / 2.0);

    Classification c;
    c.lambda_hat = std::max(0.0, lambda_hat);
    if (lambda_hat >= 0.05) {
        c.kind = Classification::Kind::Hyperbolic;
        return c;
    }
    if (lambda_hat >= 0.02) {
        c.kind = Classification::Kind::Ambiguous;
        return c;
    }
    const StepEstimate s = hyperbolic_step(model, 1.0, Complex(0.0), 1e3);
    c.step_at_unit = s.value;
    if (s.value >= 1e-2) {
        c.kind = Classification::Kind::ParabolicPositiveStep;
    } else if (s.value <= 1e-3) {
        c.kind = Classification::Kind::ParabolicZeroStep;
    } else {
        c.kind = Classification::Kind::Ambiguous;
    }
    return c;
}

}  // namespace diskflow
