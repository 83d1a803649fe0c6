#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "diskflow/compact_set.hpp"
#include "diskflow/koenigs.hpp"

namespace diskflow {

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int nx = 0;
    int ny = 0;
    double spacing = 0.0;
    Complex origin{0.0, 0.0};  // node (i,j) sits at origin + (i*h, j*h)

    Complex node(int i, int j) const {
        return origin + Complex(i * spacing, j * spacing);
    }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * nx + i;
    }
};

enum class NodeTag : std::uint8_t { Interior, PlateZero, PlateOne, NeumannOuter };

struct FieldSolution {
    GridSpec grid;
    std::vector<double> u;
    std::vector<NodeTag> tags;
    double energy = 0.0;    // cell-quadrature Dirichlet integral
    double residual = 0.0;  // max update at termination
    int sweeps = 0;
};

/// Boundary character of the problem, used to pick the relaxation factor.
enum class SolverMode { DirichletDominated, NeumannFarField };

struct SolverOptions {
    double tolerance = 1e-10;
    int max_sweeps = 100000;
    SolverMode mode = SolverMode::DirichletDominated;
};

/// Red-black SOR on the tagged grid. Interior nodes relax against available
/// neighbors; NeumannOuter neighbors are dropped from the stencil, which
/// mirrors the field across the staircased wall.
FieldSolution solve_field(const GridSpec& grid, std::vector<NodeTag> tags,
                          const SolverOptions& options = {});

void write_field(const FieldSolution& field, std::ostream& out);
FieldSolution read_field(std::istream& in);

/// Plate region for rasterization: even-odd union of closed loops plus
/// zero-area segments marked by proximity.
struct PlateSpec {
    std::vector<std::vector<Complex>> loops;
    std::vector<std::pair<Complex, Complex>> segments;

    static PlateSpec from_compact_set(const CompactSet& set, int boundary_samples = 256);
    static PlateSpec annulus(Complex center, double r_inner, double r_outer, int n = 256);

    bool covers(Complex z, double spacing) const;
    void bounding_box(double& x0, double& x1, double& y0, double& y1) const;
};

struct HarmonicMeasureEstimate {
    enum class Method { WoS, Grid };
    double value = 0.0;
    double std_error = 0.0;  // zero for Grid
    long samples = 0;
    Method method = Method::Grid;
    long discarded = 0;
    std::uint64_t seed = 0;
};

struct WosOptions {
    int max_steps = 100000;
    int threads = 0;         // 0: hardware concurrency
    long batch_size = 16384; // tallies are merged per batch in fixed order
};

/// Fraction of walk-on-spheres walkers absorbed within eps of the plate
/// rather than of the unit circle. Reproducible for a fixed seed,
/// independent of the thread count.
HarmonicMeasureEstimate harmonic_measure_wos(Complex z, const CompactSet& plate, double eps,
                                             long n_samples, std::uint64_t seed,
                                             const WosOptions& options = {});

/// 5-point relaxation in disk coordinates: u = 1 on the plate, u = 0 outside
/// the disk, bilinear read-off at z.
HarmonicMeasureEstimate harmonic_measure_grid(Complex z, const CompactSet& plate, double spacing,
                                              const SolverOptions& options = {});
FieldSolution harmonic_measure_grid_field(const CompactSet& plate, double spacing,
                                          const SolverOptions& options = {});

struct CondenserDomain {
    enum class Type { UnitDisk, KoenigsImage };
    Type type = Type::UnitDisk;
    OmegaGeometry omega;                     // walls of the image domain
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;   // window (KoenigsImage only)

    static CondenserDomain unit_disk();
    static CondenserDomain koenigs_window(const OmegaGeometry& omega, double x0, double x1,
                                          double y0, double y1);
};

struct CondenserResult {
    double cap = 0.0;         // fine-grid Dirichlet energy
    double cap_coarse = 0.0;  // the spacing-h member of the Richardson pair
    FieldSolution field;      // fine-grid equilibrium potential

    double richardson_gap() const {
        return std::abs(cap - cap_coarse) / std::max(cap, 1e-300);
    }
};

/// Mixed problem: u = 0 on plate_zero, u = 1 on plate_one, homogeneous
/// Neumann on the domain walls. cap is computed at spacing/2 with the
/// spacing-h solve kept as the Richardson pair.
CondenserResult condenser_capacity(const CondenserDomain& domain, const PlateSpec& plate_zero,
                                   const PlateSpec& plate_one, double spacing,
                                   const SolverOptions& options = {});

/// Reciprocal of condenser capacity.
double extremal_distance(double cap);

/// Solver settings shared by the Koenigs-coordinate estimator paths.
struct KoenigsFieldConfig {
    double spacing = kPi / 256.0;
    double margin = 6.0;            // window walls beyond the plates
    int boundary_samples = 256;
    SolverOptions solver;
};

/// The spacing the image-domain grid will actually use: snapped so true
/// walls land on node rows. Grids built on multiples of it rasterize the
/// translated plate identically for every t.
double koenigs_lattice_spacing(const KoenigsModel& model, double requested);

/// omega(z, phi_t(K), D) computed in the image domain by conformal
/// invariance: plate h(K) + t, walls carry the boundary values of the disk.
double harmonic_measure_koenigs(const KoenigsModel& model, const CompactSet& set, Complex z,
                                double t, const KoenigsFieldConfig& config = {});

/// Cap(D, K, phi_t(K)) through the image-domain window.
CondenserResult condenser_capacity_koenigs(const KoenigsModel& model, const CompactSet& set,
                                           double t, const KoenigsFieldConfig& config = {});

struct BoundSeriesRow {
    double t = 0.0;
    double log_omega = 0.0;
    double pi_lambda_d = 0.0;
    double sum = 0.0;  // log omega + pi lambda_D
};

struct BeurlingCheck {
    std::vector<BoundSeriesRow> rows;
    double bound = 0.0;  // max of the sum column
};

/// log omega(z, phi_t(K), D) + pi lambda_D(K, phi_t(K)) over the grid; the
/// series is bounded above and the max is reported. The condenser solves may
/// run on their own (typically coarser) lattice.
BeurlingCheck beurling_slope_check(const KoenigsModel& model, const CompactSet& set, Complex z,
                                   const std::vector<double>& t_grid,
                                   const KoenigsFieldConfig& omega_config = {},
                                   const KoenigsFieldConfig* condenser_config = nullptr);

}  // namespace diskflow
