#include "diskflow/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace diskflow {

namespace {

double log_metric(Complex a, Complex b, PlaneMetric metric) {
    if (metric == PlaneMetric::Euclidean) {
        return std::log(std::abs(a - b));
    }
    return std::log(pseudo_hyperbolic(a, b));
}

// Fits d_n = cap + (a + b log n)/n through the last three ladder entries.
// The log term tracks the n^{1/(n-1)}-type approach of smooth boundaries;
// with fewer than three entries this degrades to plain 1/n extrapolation.
double extrapolate_ladder(const std::vector<std::pair<int, double>>& ladder) {
    const std::size_t m = ladder.size();
    if (m == 0) {
        throw std::logic_error("empty capacity ladder");
    }
    if (m == 1) {
        return ladder[0].second;
    }
    if (m == 2) {
        const double n0 = ladder[0].first, n1 = ladder[1].first;
        const double d0 = ladder[0].second, d1 = ladder[1].second;
        return d1 + (d1 - d0) * (1.0 / n1) / ((1.0 / n0) - (1.0 / n1));
    }
    double A[3][4];
    for (int r = 0; r < 3; ++r) {
        const double n = ladder[m - 3 + r].first;
        A[r][0] = 1.0;
        A[r][1] = 1.0 / n;
        A[r][2] = std::log(n) / n;
        A[r][3] = ladder[m - 3 + r].second;
    }
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r) {
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) {
                piv = r;
            }
        }
        std::swap(A[c], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) {
                continue;
            }
            const double f = A[r][c] / A[c][c];
            for (int k = c; k < 4; ++k) {
                A[r][k] -= f * A[c][k];
            }
        }
    }
    return A[0][3] / A[0][0];
}

CapacityEstimate capacity_from_samples(
    const std::function<std::vector<Complex>(int)>& sampler, int n_max, PlaneMetric metric) {
    if (n_max < 8) {
        throw std::invalid_argument("capacity requires n_max >= 8");
    }
    std::vector<int> ladder_ns;
    for (int n = 8; n <= n_max; n *= 2) {
        ladder_ns.push_back(n);
    }

    // Double the sampler resolution until the top rung moves by < 0.1%.
    int samples = 256;
    std::vector<Complex> pts = sampler(samples);
    double top = n_diameter(pts, ladder_ns.back(), metric).diameter;
    while (samples < 4096) {
        std::vector<Complex> finer = sampler(samples * 2);
        const double top2 = n_diameter(finer, ladder_ns.back(), metric).diameter;
        if (std::abs(top2 - top) <= 1e-3 * std::abs(top)) {
            break;
        }
        samples *= 2;
        pts = std::move(finer);
        top = top2;
    }

    CapacityEstimate est;
    est.boundary_samples_used = samples;
    for (int n : ladder_ns) {
        const DiameterResult r = n_diameter(pts, n, metric);
        if (!r.converged) {
            est.monotone_ladder = false;
        }
        est.ladder.emplace_back(n, r.diameter);
    }
    for (std::size_t i = 1; i < est.ladder.size(); ++i) {
        if (est.ladder[i].second > est.ladder[i - 1].second * (1.0 + 1e-12)) {
            est.monotone_ladder = false;
        }
    }
    est.value = extrapolate_ladder(est.ladder);
    return est;
}

}  // namespace

namespace {

struct ExchangeOutcome {
    std::vector<int> tuple;
    double log_product = -std::numeric_limits<double>::infinity();
    bool converged = false;
    int steps = 0;
};

// Greedy fill from the given seed points, then best-swap exchange to a
// local optimum of the summed log distances.
ExchangeOutcome exchange_from_seed(std::span<const Complex> candidates, int n,
                                   PlaneMetric metric, std::vector<int> tuple,
                                   int max_exchange_steps) {
    const int m = static_cast<int>(candidates.size());
    std::vector<char> used(m, 0);
    std::vector<double> accum(m, 0.0);  // sum of log distances to the tuple
    for (int idx : tuple) {
        used[idx] = 1;
    }
    for (int c = 0; c < m; ++c) {
        if (!used[c]) {
            for (int idx : tuple) {
                accum[c] += log_metric(candidates[c], candidates[idx], metric);
            }
        }
    }
    while (static_cast<int>(tuple.size()) < n) {
        int best = -1;
        for (int c = 0; c < m; ++c) {
            if (!used[c] && (best < 0 || accum[c] > accum[best])) {
                best = c;
            }
        }
        used[best] = 1;
        tuple.push_back(best);
        for (int c = 0; c < m; ++c) {
            if (!used[c]) {
                accum[c] += log_metric(candidates[c], candidates[best], metric);
            }
        }
    }

    auto tuple_sums = [&]() {
        std::vector<double> s(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    s[i] += log_metric(candidates[tuple[i]], candidates[tuple[j]], metric);
                }
            }
        }
        return s;
    };
    std::vector<double> s = tuple_sums();
    ExchangeOutcome out;
    constexpr double kGainTol = 1e-12;
    for (int step = 0; step < max_exchange_steps; ++step) {
        int best_i = -1, best_c = -1;
        double best_gain = kGainTol;
        for (int c = 0; c < m; ++c) {
            if (used[c]) {
                continue;
            }
            double tc = 0.0;
            for (int j = 0; j < n; ++j) {
                tc += log_metric(candidates[c], candidates[tuple[j]], metric);
            }
            for (int i = 0; i < n; ++i) {
                const double gain =
                    (tc - log_metric(candidates[c], candidates[tuple[i]], metric)) - s[i];
                if (gain > best_gain) {
                    best_gain = gain;
                    best_i = i;
                    best_c = c;
                }
            }
        }
        if (best_i < 0) {
            out.converged = true;
            break;
        }
        used[tuple[best_i]] = 0;
        used[best_c] = 1;
        tuple[best_i] = best_c;
        s = tuple_sums();
        out.steps = step + 1;
    }

    out.log_product = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            out.log_product += log_metric(candidates[tuple[i]], candidates[tuple[j]], metric);
        }
    }
    out.tuple = std::move(tuple);
    return out;
}

}  // namespace

DiameterResult n_diameter(std::span<const Complex> candidates, int n, PlaneMetric metric,
                          int max_exchange_steps) {
    const int m = static_cast<int>(candidates.size());
    if (n < 2) {
        throw std::invalid_argument("n_diameter requires n >= 2");
    }
    if (m < n) {
        throw std::invalid_argument("n_diameter requires at least n candidate points");
    }
    if (metric == PlaneMetric::PseudoHyperbolic) {
        for (const Complex& p : candidates) {
            if (!in_unit_disk(p)) {
                throw std::domain_error("pseudo-hyperbolic diameter requires disk points");
            }
        }
    }

    // Multi-start: the farthest pair in the chosen metric plus a few spread
    // single-point seeds. Keeps isometric candidate clouds from settling in
    // different local optima.
    std::vector<std::vector<int>> seeds;
    {
        int bi = 0, bj = 1;
        double best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                const double d = log_metric(candidates[i], candidates[j], metric);
                if (d > best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        seeds.push_back({bi, bj});
    }
    constexpr int kRotatedStarts = 4;
    for (int k = 0; k < kRotatedStarts; ++k) {
        seeds.push_back({static_cast<int>(static_cast<long>(m) * k / kRotatedStarts)});
    }

    ExchangeOutcome best;
    for (const std::vector<int>& seed : seeds) {
        ExchangeOutcome out =
            exchange_from_seed(candidates, n, metric, seed, max_exchange_steps);
        if (out.log_product > best.log_product) {
            best = std::move(out);
        }
    }

    DiameterResult result;
    result.converged = best.converged;
    result.exchange_steps = best.steps;
    result.log_diameter = 2.0 * best.log_product / (static_cast<double>(n) * (n - 1));
    result.diameter = std::exp(result.log_diameter);
    result.tuple = std::move(best.tuple);
    return result;
}

CapacityEstimate logarithmic_capacity(const CompactSet& set, int n_max) {
    return capacity_from_samples([&](int n) { return set.boundary_samples(n); }, n_max,
                                 PlaneMetric::Euclidean);
}

CapacityEstimate hyperbolic_capacity(const CompactSet& set, int n_max) {
    return capacity_from_samples([&](int n) { return set.boundary_samples(n); }, n_max,
                                 PlaneMetric::PseudoHyperbolic);
}

CapacityEstimate hyperbolic_capacity(std::span<const Complex> boundary_points, int n_max) {
    std::vector<Complex> base(boundary_points.begin(), boundary_points.end());
    // Fixed point cloud: no resampling, subsample by stride when asked for
    // fewer points so the ladder still sees the full geometry.
    auto sampler = [base](int n) -> std::vector<Complex> {
        if (n >= static_cast<int>(base.size())) {
            return base;
        }
        std::vector<Complex> out;
        out.reserve(n);
        for (int i = 0; i < n; ++i) {
            out.push_back(base[static_cast<std::size_t>(i) * base.size() / n]);
        }
        return out;
    };
    return capacity_from_samples(sampler, n_max, PlaneMetric::PseudoHyperbolic);
}

std::vector<Complex> image_set(const KoenigsModel& model, double t, const CompactSet& set, int n) {
    if (n < 16) {
        throw std::invalid_argument("image_set requires n >= 16");
    }
    set.require_disk_plate();
    std::vector<Complex> out;
    out.reserve(n);
    for (const Complex& p : set.boundary_samples(n)) {
        out.push_back(model.phi(t, DiskPoint(p)).value);
    }
    return out;
}

DiscreteMeasure green_equilibrium_discrete(const CompactSet& set, int n) {
    if (n < 8) {
        throw std::invalid_argument("green_equilibrium_discrete requires n >= 8");
    }
    set.require_disk_plate();
    const std::vector<Complex> samples = set.boundary_samples(std::max(4 * n, 256));
    const DiameterResult fekete = n_diameter(samples, n, PlaneMetric::PseudoHyperbolic);
    DiscreteMeasure mu;
    mu.support.reserve(n);
    for (int idx : fekete.tuple) {
        mu.support.push_back(samples[idx]);
    }
    mu.weights.assign(n, 1.0 / n);
    mu.validate();
    return mu;
}

double harmonic_measure_via_equilibrium(Complex z, const CompactSet& set, int n) {
    if (set.distance(z) == 0.0) {
        throw std::domain_error("evaluation point must lie outside the plate");
    }
    const DiscreteMeasure mu = green_equilibrium_discrete(set, n);
    const CapacityEstimate caph = hyperbolic_capacity(set, n);
    const double energy = -std::log(caph.value);  // Green energy of the plate
    if (!(energy > 0.0)) {
        throw std::domain_error("plate has vanishing Green energy");
    }
    return std::clamp(mu.green_potential(z) / energy, 0.0, 1.0);
}

std::vector<CaphDecayRow> caph_decay_study(const KoenigsModel& model, const CompactSet& set,
                                           const std::vector<double>& t_grid, int n_max) {
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw std::invalid_argument("caph_decay_study t grid must be strictly increasing");
        }
    }
    std::vector<CaphDecayRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        CaphDecayRow row;
        row.t = t;
        if (t == 0.0) {
            row.caph = hyperbolic_capacity(set, n_max).value;
        } else {
            const std::vector<Complex> pts = image_set(model, t, set, 512);
            row.caph = hyperbolic_capacity(pts, n_max).value;
        }
        row.log_caph_over_t = t > 0.0 ? std::log(row.caph) / t : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace diskflow
