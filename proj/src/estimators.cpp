#include "diskflow/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

namespace diskflow {

namespace {

void require_increasing(const std::vector<double>& grid, const char* what) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string(what) + " grid is empty");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(std::string(what) + " grid must be strictly increasing");
        }
    }
}

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = std::min<int>(threads, static_cast<int>(count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.push_back(std::async(std::launch::async, [&]() {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                fn(i);
            }
        }));
    }
    for (auto& f : pool) {
        f.get();
    }
}

// Affine fit of y against x over the upper half of the prefix that carries
// no flags. Flagged tails (measure floor, solver trouble) are excluded; a
// report whose usable prefix is too short for a fit is tainted.
void fit_upper_half(ConvergenceReport& report, const std::vector<double>& x,
                    const std::vector<double>& y) {
    std::size_t usable = 0;
    while (usable < report.flags.size() && report.flags[usable] == kFlagNone) {
        ++usable;
    }
    if (usable < 3) {
        report.tainted = true;
        if (usable == 2) {
            report.fit = fit_line(std::span(x).first(2), std::span(y).first(2));
        }
        return;
    }
    const std::size_t start = usable / 2;
    report.fit = fit_line(std::span(x).subspan(start, usable - start),
                          std::span(y).subspan(start, usable - start));
}

ConvergenceReport closed_form_report(EstimatorId id, const std::vector<double>& grid) {
    ConvergenceReport r;
    r.estimator = id;
    r.t_grid = grid;
    r.raw_values.assign(grid.size(), 0.0);
    r.flags.assign(grid.size(), kFlagNone);
    return r;
}

}  // namespace

std::string estimator_name(EstimatorId id) {
    switch (id) {
        case EstimatorId::HypDist:
            return "hyp_dist";
        case EstimatorId::Green:
            return "green";
        case EstimatorId::HarmonicMeasure:
            return "harmonic";
        case EstimatorId::ExtremalDistance:
            return "extremal";
        case EstimatorId::CondenserCapacity:
            return "condenser";
        case EstimatorId::HyperbolicStep:
            return "step";
    }
    return "unknown";
}

ConvergenceReport lambda_via_hyp_dist(const KoenigsModel& model, Complex z, Complex w,
                                      const std::vector<double>& t_grid) {
    require_increasing(t_grid, "hyp_dist");
    ConvergenceReport r = closed_form_report(EstimatorId::HypDist, t_grid);
    std::vector<double> dist(t_grid.size(), 0.0);
    const DiskPoint zp(z), wp(w);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        try {
            dist[i] = hyperbolic_distance(zp, model.phi(t_grid[i], wp));
            r.raw_values[i] = 2.0 * dist[i] / t_grid[i];
        } catch (const ConditioningError&) {
            r.flags[i] = kFlagConditioning;
        }
    }
    fit_upper_half(r, t_grid, dist);
    r.fitted_lambda = std::max(0.0, 2.0 * r.fit.slope);
    return r;
}

ConvergenceReport lambda_via_green(const KoenigsModel& model, Complex z, Complex w,
                                   const std::vector<double>& t_grid) {
    require_increasing(t_grid, "green");
    ConvergenceReport r = closed_form_report(EstimatorId::Green, t_grid);
    std::vector<double> neg_log_g(t_grid.size(), 0.0);
    const DiskPoint zp(z), wp(w);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        try {
            const double g = green_disk(zp, model.phi(t_grid[i], wp));
            if (!(g > 0.0) || !std::isfinite(g)) {
                r.flags[i] = kFlagConditioning;
                continue;
            }
            neg_log_g[i] = -std::log(g);
            r.raw_values[i] = neg_log_g[i] / t_grid[i];
        } catch (const ConditioningError&) {
            r.flags[i] = kFlagConditioning;
        }
    }
    fit_upper_half(r, t_grid, neg_log_g);
    r.fitted_lambda = std::max(0.0, r.fit.slope);
    return r;
}

ConvergenceReport lambda_via_step(const KoenigsModel& model, Complex z,
                                  const std::vector<double>& u_grid, double r_max) {
    require_increasing(u_grid, "step");
    ConvergenceReport r = closed_form_report(EstimatorId::HyperbolicStep, u_grid);
    std::vector<double> steps(u_grid.size(), 0.0);
    for (std::size_t i = 0; i < u_grid.size(); ++i) {
        try {
            const StepEstimate s = hyperbolic_step(model, u_grid[i], z, r_max);
            steps[i] = s.value;
            r.raw_values[i] = 2.0 * s.value / u_grid[i];
            if (!s.stabilized) {
                r.flags[i] = kFlagNotStabilized;
            }
        } catch (const ConditioningError&) {
            r.flags[i] = kFlagConditioning;
        }
    }
    fit_upper_half(r, u_grid, steps);
    r.fitted_lambda = std::max(0.0, 2.0 * r.fit.slope);
    return r;
}

ConvergenceReport lambda_via_harmonic(const KoenigsModel& model, const CompactSet& set, Complex z,
                                      const std::vector<double>& t_grid,
                                      const EstimatorConfig& config) {
    require_increasing(t_grid, "harmonic");
    if (set.distance(z) > 0.0) {
        throw std::domain_error("lambda_via_harmonic requires z in the plate set");
    }
    ConvergenceReport r = closed_form_report(EstimatorId::HarmonicMeasure, t_grid);
    r.seed = config.seed;
    std::vector<double> neg_log_omega(t_grid.size(), 0.0);
    const KoenigsFieldConfig field = config.field_config();
    parallel_for(t_grid.size(), config.threads, [&](std::size_t i) {
        try {
            const double omega = harmonic_measure_koenigs(model, set, z, t_grid[i], field);
            if (!(omega >= config.omega_floor)) {
                r.flags[i] = kFlagFloorBreach;
                return;
            }
            neg_log_omega[i] = -std::log(omega);
            r.raw_values[i] = neg_log_omega[i] / t_grid[i];
        } catch (const std::exception&) {
            r.flags[i] = kFlagSolverFailure;
        }
    });
    fit_upper_half(r, t_grid, neg_log_omega);
    r.fitted_lambda = std::max(0.0, r.fit.slope);
    return r;
}

std::pair<ConvergenceReport, ConvergenceReport> lambda_via_extremal_and_condenser(
    const KoenigsModel& model, const CompactSet& set, const std::vector<double>& t_grid,
    const EstimatorConfig& config) {
    require_increasing(t_grid, "condenser");
    ConvergenceReport ext = closed_form_report(EstimatorId::ExtremalDistance, t_grid);
    ConvergenceReport cond = closed_form_report(EstimatorId::CondenserCapacity, t_grid);
    ext.seed = cond.seed = config.seed;

    std::vector<double> pi_lambda(t_grid.size(), 0.0);
    const KoenigsFieldConfig field = config.condenser_field_config();
    parallel_for(t_grid.size(), config.threads, [&](std::size_t i) {
        try {
            const CondenserResult cap = condenser_capacity_koenigs(model, set, t_grid[i], field);
            pi_lambda[i] = kPi * extremal_distance(cap.cap);
            ext.raw_values[i] = pi_lambda[i] / t_grid[i];
            cond.raw_values[i] = t_grid[i] * cap.cap / kPi;
            if (cap.richardson_gap() > 0.04) {
                ext.flags[i] = cond.flags[i] = kFlagRichardson;
            }
        } catch (const std::exception&) {
            ext.flags[i] = cond.flags[i] = kFlagSolverFailure;
        }
    });

    fit_upper_half(ext, t_grid, pi_lambda);
    ext.fitted_lambda = std::max(0.0, ext.fit.slope);

    // raw(v) = t Cap / pi is affine in 1/t up to O(1/t^2); the intercept of
    // the 1/t fit is the tail limit 1/lambda.
    std::vector<double> inv_t(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        inv_t[i] = 1.0 / t_grid[i];
    }
    cond.fit_kind = FitKind::RatioTail;
    fit_upper_half(cond, inv_t, cond.raw_values);
    cond.fitted_lambda = std::max(0.0, cond.fit.intercept);

    bool increasing = t_grid.size() >= 2;
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(cond.raw_values[i] > cond.raw_values[i - 1])) {
            increasing = false;
            break;
        }
    }
    cond.divergent =
        increasing && cond.raw_values.back() >= 1.25 * cond.raw_values.front();
    return {std::move(ext), std::move(cond)};
}

ConvergenceReport lambda_via_extremal(const KoenigsModel& model, const CompactSet& set,
                                      const std::vector<double>& t_grid,
                                      const EstimatorConfig& config) {
    return lambda_via_extremal_and_condenser(model, set, t_grid, config).first;
}

ConvergenceReport lambda_via_condenser(const KoenigsModel& model, const CompactSet& set,
                                       const std::vector<double>& t_grid,
                                       const EstimatorConfig& config) {
    return lambda_via_extremal_and_condenser(model, set, t_grid, config).second;
}

std::vector<ResidualRow> proposition_residual(const KoenigsModel& model, const CompactSet& set,
                                              Complex z, const std::vector<double>& u_grid,
                                              double r_max, const EstimatorConfig& config) {
    require_increasing(u_grid, "residual");
    std::vector<ResidualRow> rows(u_grid.size());
    const KoenigsFieldConfig field = config.condenser_field_config();
    parallel_for(u_grid.size(), config.threads, [&](std::size_t i) {
        ResidualRow& row = rows[i];
        row.u = u_grid[i];
        row.step = hyperbolic_step(model, row.u, z, r_max).value;
        const CondenserResult cap = condenser_capacity_koenigs(model, set, row.u, field);
        row.half_pi_lambda_d = 0.5 * kPi * extremal_distance(cap.cap);
        row.residual = (row.step - row.half_pi_lambda_d) / row.u;
    });
    return rows;
}

std::vector<double> snap_to_lattice(const std::vector<double>& grid, double spacing) {
    std::vector<double> snapped;
    snapped.reserve(grid.size());
    for (double t : grid) {
        const double s = spacing * std::round(t / spacing);
        if (snapped.empty() || s > snapped.back()) {
            snapped.push_back(s);
        }
    }
    return snapped;
}

std::vector<double> geometric_grid(double t_min, double t_max, int count) {
    if (!(t_min > 0.0) || !(t_max > t_min) || count < 2) {
        throw std::invalid_argument("geometric_grid requires 0 < t_min < t_max, count >= 2");
    }
    std::vector<double> grid(count);
    const double ratio = std::log(t_max / t_min) / (count - 1);
    for (int i = 0; i < count; ++i) {
        grid[i] = t_min * std::exp(ratio * i);
    }
    return grid;
}

std::vector<double> arithmetic_grid(double t_min, double t_max, int count) {
    if (!(t_max > t_min) || count < 2) {
        throw std::invalid_argument("arithmetic_grid requires t_min < t_max, count >= 2");
    }
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
        grid[i] = t_min + (t_max - t_min) * i / (count - 1);
    }
    return grid;
}

}  // namespace diskflow
