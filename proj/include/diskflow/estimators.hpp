#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diskflow/capacity.hpp"
#include "diskflow/field.hpp"
#include "diskflow/fit.hpp"
#include "diskflow/koenigs.hpp"

namespace diskflow {

enum class EstimatorId {
    HypDist,
    Green,
    HarmonicMeasure,
    ExtremalDistance,
    CondenserCapacity,
    HyperbolicStep,
};

enum class FitKind { RatioTail, SlopeRegression };

std::string estimator_name(EstimatorId id);

/// Per-point solver flags carried upward into the fit.
enum RawFlag : std::uint32_t {
    kFlagNone = 0,
    kFlagConditioning = 1u << 0,   // orbit gap lost
    kFlagFloorBreach = 1u << 1,    // harmonic measure below the configured floor
    kFlagNotStabilized = 1u << 2,  // step diagnostic above tolerance
    kFlagSolverFailure = 1u << 3,
    kFlagRichardson = 1u << 4,     // Richardson pair spread above 4%
};

struct ConvergenceReport {
    EstimatorId estimator = EstimatorId::HypDist;
    std::vector<double> t_grid;
    std::vector<double> raw_values;
    std::vector<std::uint32_t> flags;
    double fitted_lambda = 0.0;  // fitted 1/lambda for CondenserCapacity
    FitKind fit_kind = FitKind::SlopeRegression;
    LineFit fit;
    bool tainted = false;    // a flagged point fell inside the fitted range
    bool divergent = false;  // CondenserCapacity only: raw series blows up
    std::uint64_t seed = 0;
};

/// Settings for the solver-bound estimators (harmonic measure, extremal
/// distance, condenser capacity).
struct EstimatorConfig {
    double spacing = kPi / 256.0;            // harmonic-measure grids
    double condenser_spacing = kPi / 128.0;  // Richardson pair solves at half of it
    double margin = 6.0;
    double condenser_margin = 3.0;
    int boundary_samples = 256;
    double omega_floor = 1e-6;
    double sor_tolerance = 1e-10;
    int threads = 0;  // 0: hardware concurrency; results do not depend on it
    std::uint64_t seed = 1;

    KoenigsFieldConfig field_config() const {
        KoenigsFieldConfig f;
        f.spacing = spacing;
        f.margin = margin;
        f.boundary_samples = boundary_samples;
        f.solver.tolerance = sor_tolerance;
        return f;
    }

    KoenigsFieldConfig condenser_field_config() const {
        KoenigsFieldConfig f = field_config();
        f.spacing = condenser_spacing;
        f.margin = condenser_margin;
        return f;
    }
};

/// Theorem-style estimators. Raw values are the finite-t ratios; the fitted
/// value comes from an affine fit over the upper half of the grid, which
/// removes the O(1/t) intercept bias of the plain ratio.
ConvergenceReport lambda_via_hyp_dist(const KoenigsModel& model, Complex z, Complex w,
                                      const std::vector<double>& t_grid);
ConvergenceReport lambda_via_green(const KoenigsModel& model, Complex z, Complex w,
                                   const std::vector<double>& t_grid);
ConvergenceReport lambda_via_harmonic(const KoenigsModel& model, const CompactSet& set, Complex z,
                                      const std::vector<double>& t_grid,
                                      const EstimatorConfig& config = {});
ConvergenceReport lambda_via_extremal(const KoenigsModel& model, const CompactSet& set,
                                      const std::vector<double>& t_grid,
                                      const EstimatorConfig& config = {});
ConvergenceReport lambda_via_condenser(const KoenigsModel& model, const CompactSet& set,
                                       const std::vector<double>& t_grid,
                                       const EstimatorConfig& config = {});
/// Both condenser-backed reports from a single sweep of solves.
std::pair<ConvergenceReport, ConvergenceReport> lambda_via_extremal_and_condenser(
    const KoenigsModel& model, const CompactSet& set, const std::vector<double>& t_grid,
    const EstimatorConfig& config = {});
ConvergenceReport lambda_via_step(const KoenigsModel& model, Complex z,
                                  const std::vector<double>& u_grid, double r_max);

struct ResidualRow {
    double u = 0.0;
    double step = 0.0;
    double half_pi_lambda_d = 0.0;
    double residual = 0.0;  // (step - (pi/2) lambda_D) / u
};

/// Residual between the step and extremal-distance routes; tends to zero.
std::vector<ResidualRow> proposition_residual(const KoenigsModel& model, const CompactSet& set,
                                              Complex z, const std::vector<double>& u_grid,
                                              double r_max, const EstimatorConfig& config = {});

/// Snap grid values onto multiples of the solver lattice spacing so plates
/// rasterize identically along the whole grid.
std::vector<double> snap_to_lattice(const std::vector<double>& grid, double spacing);

std::vector<double> geometric_grid(double t_min, double t_max, int count);
std::vector<double> arithmetic_grid(double t_min, double t_max, int count);

}  // namespace diskflow
