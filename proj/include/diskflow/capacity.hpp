#pragma once

#include <span>
#include <vector>

#include "diskflow/compact_set.hpp"
#include "diskflow/koenigs.hpp"

namespace diskflow {

enum class PlaneMetric { Euclidean, PseudoHyperbolic };

struct DiameterResult {
    double diameter = 0.0;      // geometric-mean pairwise distance of the tuple
    double log_diameter = 0.0;  // its log, the optimizer's native scale
    std::vector<int> tuple;     // candidate indices, size n
    bool converged = false;     // exchange reached a local optimum
    int exchange_steps = 0;
};

/// Greedy seeding plus best-swap exchange to a local optimum of the n-point
/// geometric-mean distance product over the candidate set.
DiameterResult n_diameter(std::span<const Complex> candidates, int n, PlaneMetric metric,
                          int max_exchange_steps = 4000);

struct CapacityEstimate {
    double value = 0.0;
    std::vector<std::pair<int, double>> ladder;  // (n, d_n) on the doubling ladder
    bool monotone_ladder = true;                 // false flags an optimization failure
    int boundary_samples_used = 0;
};

/// Limit of euclidean n-th diameters on the ladder n = 8, 16, ..., n_max.
CapacityEstimate logarithmic_capacity(const CompactSet& set, int n_max);

/// Same ladder with the pseudo-hyperbolic metric; candidates must lie in the
/// open unit disk.
CapacityEstimate hyperbolic_capacity(const CompactSet& set, int n_max);
CapacityEstimate hyperbolic_capacity(std::span<const Complex> boundary_points, int n_max);

/// Boundary samples of phi_t(K), all inside the disk.
std::vector<Complex> image_set(const KoenigsModel& model, double t, const CompactSet& set, int n);

/// Uniform weights on the hyperbolic Fekete n-tuple of the set's boundary.
DiscreteMeasure green_equilibrium_discrete(const CompactSet& set, int n);

/// Harmonic measure of the plate at z through the equilibrium identity
/// omega = G_nu(z) / V with V = -log caph(K). Clamped to [0,1].
double harmonic_measure_via_equilibrium(Complex z, const CompactSet& set, int n);

struct CaphDecayRow {
    double t = 0.0;
    double caph = 0.0;
    double log_caph_over_t = 0.0;
};

/// (t, caph phi_t(K), log caph / t) along the grid; the last column tends to
/// zero and the caph column is non-increasing in t.
std::vector<CaphDecayRow> caph_decay_study(const KoenigsModel& model, const CompactSet& set,
                                           const std::vector<double>& t_grid, int n_max = 64);

}  // namespace diskflow
