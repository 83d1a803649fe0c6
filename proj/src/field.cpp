#include "diskflow/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <istream>
#include <ostream>
#include <thread>

#include "diskflow/rng.hpp"

namespace diskflow {

namespace {

int worker_count(int requested) {
    if (requested > 0) {
        return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double omega_for_radius(double rho_j) {
    rho_j = std::min(rho_j, 1.0 - 1e-14);
    return 2.0 / (1.0 + std::sqrt(std::max(0.0, 1.0 - rho_j * rho_j)));
}

// Dirichlet-anchored problems relax at the half-wave Jacobi radius. With
// Neumann far fields the slowest mode is a quarter wave along the longest
// axis, anchored only at the plates.
double sor_relaxation_factor(int nx, int ny, SolverMode mode) {
    if (mode == SolverMode::NeumannFarField) {
        const int n_max = std::max(nx, ny);
        return omega_for_radius(0.5 * (1.0 + std::cos(0.5 * kPi / n_max)));
    }
    return omega_for_radius(0.5 * (std::cos(kPi / nx) + std::cos(kPi / ny)));
}

double cell_energy(const FieldSolution& f) {
    const GridSpec& g = f.grid;
    double energy = 0.0;
    for (int j = 0; j + 1 < g.ny; ++j) {
        for (int i = 0; i + 1 < g.nx; ++i) {
            const std::size_t k00 = g.index(i, j);
            const std::size_t k10 = g.index(i + 1, j);
            const std::size_t k01 = g.index(i, j + 1);
            const std::size_t k11 = g.index(i + 1, j + 1);
            if (f.tags[k00] == NodeTag::NeumannOuter || f.tags[k10] == NodeTag::NeumannOuter ||
                f.tags[k01] == NodeTag::NeumannOuter || f.tags[k11] == NodeTag::NeumannOuter) {
                continue;
            }
            const double ux =
                0.5 * ((f.u[k10] - f.u[k00]) + (f.u[k11] - f.u[k01])) / g.spacing;
            const double uy =
                0.5 * ((f.u[k01] - f.u[k00]) + (f.u[k11] - f.u[k10])) / g.spacing;
            energy += (ux * ux + uy * uy) * g.spacing * g.spacing;
        }
    }
    return energy;
}

double bilinear_at(const FieldSolution& f, Complex z) {
    const GridSpec& g = f.grid;
    const double fx = (z.real() - g.origin.real()) / g.spacing;
    const double fy = (z.imag() - g.origin.imag()) / g.spacing;
    const int i = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 2);
    const int j = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 2);
    const double ax = std::clamp(fx - i, 0.0, 1.0);
    const double ay = std::clamp(fy - j, 0.0, 1.0);
    return (1.0 - ax) * (1.0 - ay) * f.u[g.index(i, j)] +
           ax * (1.0 - ay) * f.u[g.index(i + 1, j)] +
           (1.0 - ax) * ay * f.u[g.index(i, j + 1)] +
           ax * ay * f.u[g.index(i + 1, j + 1)];
}

void require_plates_resolved(const GridSpec& g, const std::vector<NodeTag>& tags) {
    long zero_nodes = 0, one_nodes = 0;
    for (NodeTag t : tags) {
        zero_nodes += t == NodeTag::PlateZero;
        one_nodes += t == NodeTag::PlateOne;
    }
    if (zero_nodes == 0 || one_nodes == 0) {
        throw SolverError("a plate received no grid nodes at this spacing");
    }
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (tags[g.index(i, j)] != NodeTag::PlateOne) {
                continue;
            }
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int ii = i + di[k];
                const int jj = j + dj[k];
                if (ii >= 0 && ii < g.nx && jj >= 0 && jj < g.ny &&
                    tags[g.index(ii, jj)] == NodeTag::PlateZero) {
                    throw SolverError("plates touch after discretization");
                }
            }
        }
    }
}

}  // namespace

FieldSolution solve_field(const GridSpec& grid, std::vector<NodeTag> tags,
                          const SolverOptions& options) {
    if (grid.nx < 3 || grid.ny < 3 || !(grid.spacing > 0.0)) {
        throw std::invalid_argument("solve_field needs a grid of at least 3x3 nodes");
    }
    if (tags.size() != static_cast<std::size_t>(grid.nx) * grid.ny) {
        throw std::invalid_argument("tag array does not match the grid");
    }
    FieldSolution f;
    f.grid = grid;
    f.tags = std::move(tags);
    f.u.assign(f.tags.size(), 0.0);
    for (std::size_t k = 0; k < f.tags.size(); ++k) {
        if (f.tags[k] == NodeTag::PlateOne) {
            f.u[k] = 1.0;
        }
    }

    const double omega = sor_relaxation_factor(grid.nx, grid.ny, options.mode);
    const int nx = grid.nx;
    const int ny = grid.ny;
    double max_update = 0.0;
    int sweep = 0;
    for (; sweep < options.max_sweeps; ++sweep) {
        max_update = 0.0;
        for (int parity = 0; parity < 2; ++parity) {
            for (int j = 0; j < ny; ++j) {
                const int start = (j + parity) & 1;
                for (int i = start; i < nx; i += 2) {
                    const std::size_t k = f.grid.index(i, j);
                    if (f.tags[k] != NodeTag::Interior) {
                        continue;
                    }
                    double sum = 0.0;
                    int count = 0;
                    if (i + 1 < nx && f.tags[k + 1] != NodeTag::NeumannOuter) {
                        sum += f.u[k + 1];
                        ++count;
                    }
                    if (i > 0 && f.tags[k - 1] != NodeTag::NeumannOuter) {
                        sum += f.u[k - 1];
                        ++count;
                    }
                    if (j + 1 < ny && f.tags[k + nx] != NodeTag::NeumannOuter) {
                        sum += f.u[k + nx];
                        ++count;
                    }
                    if (j > 0 && f.tags[k - nx] != NodeTag::NeumannOuter) {
                        sum += f.u[k - nx];
                        ++count;
                    }
                    if (count == 0) {
                        continue;
                    }
                    const double gs = sum / count;
                    const double delta = omega * (gs - f.u[k]);
                    f.u[k] += delta;
                    max_update = std::max(max_update, std::abs(delta));
                }
            }
        }
        if (max_update < options.tolerance) {
            break;
        }
    }
    if (max_update >= options.tolerance) {
        throw SolverError("relaxation did not converge within the sweep cap");
    }
    f.residual = max_update;
    f.sweeps = sweep + 1;
    f.energy = cell_energy(f);
    return f;
}

void write_field(const FieldSolution& field, std::ostream& out) {
    char buf[64];
    out << field.grid.nx << ' ' << field.grid.ny << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", field.grid.spacing);
    out << buf << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", field.grid.origin.real());
    out << buf << ' ';
    std::snprintf(buf, sizeof buf, "%.17g", field.grid.origin.imag());
    out << buf << '\n';
    for (int j = 0; j < field.grid.ny; ++j) {
        for (int i = 0; i < field.grid.nx; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", field.u[field.grid.index(i, j)]);
            out << buf << (i + 1 == field.grid.nx ? '\n' : ' ');
        }
    }
}

FieldSolution read_field(std::istream& in) {
    FieldSolution f;
    double ox = 0.0, oy = 0.0;
    in >> f.grid.nx >> f.grid.ny >> f.grid.spacing >> ox >> oy;
    f.grid.origin = Complex(ox, oy);
    f.u.resize(static_cast<std::size_t>(f.grid.nx) * f.grid.ny);
    for (double& v : f.u) {
        in >> v;
    }
    f.tags.assign(f.u.size(), NodeTag::Interior);
    return f;
}

PlateSpec PlateSpec::from_compact_set(const CompactSet& set, int boundary_samples) {
    PlateSpec p;
    if (set.shape() == CompactSet::Shape::Segment) {
        p.segments.emplace_back(set.vertices()[0], set.vertices()[1]);
    } else {
        p.loops.push_back(set.boundary_samples(boundary_samples));
    }
    return p;
}

PlateSpec PlateSpec::annulus(Complex center, double r_inner, double r_outer, int n) {
    if (!(0.0 < r_inner && r_inner < r_outer)) {
        throw std::invalid_argument("annulus requires 0 < r_inner < r_outer");
    }
    PlateSpec p;
    p.loops.push_back(CompactSet::disk(center, r_outer).boundary_samples(n));
    p.loops.push_back(CompactSet::disk(center, r_inner).boundary_samples(n));
    return p;
}

bool PlateSpec::covers(Complex z, double spacing) const {
    bool inside = false;
    for (const auto& loop : loops) {
        const std::size_t m = loop.size();
        for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
            const Complex& a = loop[i];
            const Complex& b = loop[j];
            if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
                const double x =
                    a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) /
                                   (b.imag() - a.imag());
                if (z.real() < x) {
                    inside = !inside;
                }
            }
        }
    }
    if (inside) {
        return true;
    }
    for (const auto& [a, b] : segments) {
        const Complex ab = b - a;
        const double len2 = std::norm(ab);
        double s = len2 > 0.0 ? ((z - a).real() * ab.real() + (z - a).imag() * ab.imag()) / len2
                              : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        if (std::abs(z - (a + s * ab)) <= 0.5 * spacing) {
            return true;
        }
    }
    return false;
}

void PlateSpec::bounding_box(double& x0, double& x1, double& y0, double& y1) const {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -std::numeric_limits<double>::infinity();
    auto feed = [&](Complex p) {
        x0 = std::min(x0, p.real());
        x1 = std::max(x1, p.real());
        y0 = std::min(y0, p.imag());
        y1 = std::max(y1, p.imag());
    };
    for (const auto& loop : loops) {
        for (Complex p : loop) {
            feed(p);
        }
    }
    for (const auto& [a, b] : segments) {
        feed(a);
        feed(b);
    }
}

HarmonicMeasureEstimate harmonic_measure_wos(Complex z, const CompactSet& plate, double eps,
                                             long n_samples, std::uint64_t seed,
                                             const WosOptions& options) {
    if (!in_unit_disk(z)) {
        throw std::domain_error("walk-on-spheres start must lie in the disk");
    }
    if (plate.distance(z) == 0.0) {
        throw std::domain_error("walk-on-spheres start must lie outside the plate");
    }
    if (!(eps > 0.0) || n_samples <= 0) {
        throw std::invalid_argument("walk-on-spheres needs eps > 0 and samples > 0");
    }
    plate.require_disk_plate(eps);

    // Cheap lower bound on the plate distance to skip exact evaluation when
    // the circle is closer anyway.
    const std::vector<Complex> hull = plate.boundary_samples(16);
    Complex centroid(0.0, 0.0);
    for (Complex p : hull) {
        centroid += p;
    }
    centroid /= static_cast<double>(hull.size());
    double plate_radius = 0.0;
    for (Complex p : hull) {
        plate_radius = std::max(plate_radius, std::abs(p - centroid));
    }
    plate_radius += 0.05 * plate.diameter() + eps;  // hull is sampled, pad it

    const long batch = std::max<long>(1, options.batch_size);
    const long n_batches = (n_samples + batch - 1) / batch;
    std::vector<long> hits(n_batches, 0), discards(n_batches, 0);

    auto run_batch = [&](long b) {
        std::mt19937_64 gen = make_stream(seed, static_cast<std::uint64_t>(b));
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        const long count = std::min(batch, n_samples - b * batch);
        long h = 0, d = 0;
        for (long s = 0; s < count; ++s) {
            Complex p = z;
            int steps = 0;
            for (;; ++steps) {
                if (steps >= options.max_steps) {
                    ++d;
                    break;
                }
                const double d_circle = 1.0 - std::abs(p);
                if (d_circle < eps) {
                    break;  // absorbed on the unit circle
                }
                double d_plate = std::abs(p - centroid) - plate_radius;
                if (d_plate < d_circle) {
                    d_plate = plate.distance(p);
                    if (d_plate < eps) {
                        ++h;
                        break;  // absorbed on the plate
                    }
                }
                const double r = std::min(d_plate, d_circle);
                p += std::polar(r, angle(gen));
            }
        }
        hits[b] = h;
        discards[b] = d;
    };

    const int threads = worker_count(options.threads);
    if (threads <= 1 || n_batches == 1) {
        for (long b = 0; b < n_batches; ++b) {
            run_batch(b);
        }
    } else {
        std::atomic<long> next{0};
        std::vector<std::future<void>> pool;
        for (int t = 0; t < threads; ++t) {
            pool.push_back(std::async(std::launch::async, [&]() {
                for (long b = next.fetch_add(1); b < n_batches; b = next.fetch_add(1)) {
                    run_batch(b);
                }
            }));
        }
        for (auto& fut : pool) {
            fut.get();
        }
    }

    long total_hits = 0, total_discards = 0;
    for (long b = 0; b < n_batches; ++b) {
        total_hits += hits[b];
        total_discards += discards[b];
    }
    if (total_discards * 1000 > n_samples) {
        throw SolverError("more than 0.1% of walkers exceeded the step cap");
    }
    const long completed = n_samples - total_discards;
    HarmonicMeasureEstimate est;
    est.method = HarmonicMeasureEstimate::Method::WoS;
    est.samples = completed;
    est.discarded = total_discards;
    est.seed = seed;
    est.value = static_cast<double>(total_hits) / completed;
    est.std_error = std::sqrt(std::max(0.0, est.value * (1.0 - est.value) / completed));
    return est;
}

FieldSolution harmonic_measure_grid_field(const CompactSet& plate, double spacing,
                                          const SolverOptions& options) {
    plate.require_disk_plate();
    const double gap = 1.0 - plate.max_boundary_modulus();
    if (gap < 4.0 * spacing) {
        throw std::invalid_argument("spacing does not resolve the gap between plate and circle");
    }
    const int half = static_cast<int>(std::ceil(1.0 / spacing)) + 1;
    GridSpec g;
    g.nx = g.ny = 2 * half + 1;
    g.spacing = spacing;
    g.origin = Complex(-half * spacing, -half * spacing);

    std::vector<NodeTag> tags(static_cast<std::size_t>(g.nx) * g.ny, NodeTag::Interior);
    const PlateSpec ps = PlateSpec::from_compact_set(plate);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Complex p = g.node(i, j);
            if (std::norm(p) >= 1.0) {
                tags[g.index(i, j)] = NodeTag::PlateZero;
            } else if (ps.covers(p, spacing)) {
                tags[g.index(i, j)] = NodeTag::PlateOne;
            }
        }
    }
    return solve_field(g, std::move(tags), options);
}

HarmonicMeasureEstimate harmonic_measure_grid(Complex z, const CompactSet& plate, double spacing,
                                              const SolverOptions& options) {
    if (!in_unit_disk(z)) {
        throw std::domain_error("evaluation point must lie in the disk");
    }
    const FieldSolution f = harmonic_measure_grid_field(plate, spacing, options);
    HarmonicMeasureEstimate est;
    est.method = HarmonicMeasureEstimate::Method::Grid;
    est.value = bilinear_at(f, z);
    return est;
}

CondenserDomain CondenserDomain::unit_disk() {
    CondenserDomain d;
    d.type = Type::UnitDisk;
    return d;
}

CondenserDomain CondenserDomain::koenigs_window(const OmegaGeometry& omega, double x0, double x1,
                                                double y0, double y1) {
    CondenserDomain d;
    d.type = Type::KoenigsImage;
    d.omega = omega;
    d.x0 = x0;
    d.x1 = x1;
    d.y0 = y0;
    d.y1 = y1;
    return d;
}

namespace {

FieldSolution solve_condenser_once(const CondenserDomain& domain, const PlateSpec& plate_zero,
                                   const PlateSpec& plate_one, double spacing,
                                   SolverOptions options) {
    options.mode = SolverMode::NeumannFarField;
    GridSpec g;
    if (domain.type == CondenserDomain::Type::UnitDisk) {
        const int half = static_cast<int>(std::ceil(1.0 / spacing)) + 1;
        g.nx = g.ny = 2 * half + 1;
        g.spacing = spacing;
        g.origin = Complex(-half * spacing, -half * spacing);
    } else {
        g.spacing = spacing;
        g.nx = static_cast<int>(std::round((domain.x1 - domain.x0) / spacing)) + 1;
        g.ny = static_cast<int>(std::round((domain.y1 - domain.y0) / spacing)) + 1;
        g.origin = Complex(domain.x0, domain.y0);
    }
    std::vector<NodeTag> tags(static_cast<std::size_t>(g.nx) * g.ny, NodeTag::Interior);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Complex p = g.node(i, j);
            if (domain.type == CondenserDomain::Type::UnitDisk && std::norm(p) >= 1.0) {
                tags[g.index(i, j)] = NodeTag::NeumannOuter;
            } else if (plate_zero.covers(p, spacing)) {
                tags[g.index(i, j)] = NodeTag::PlateZero;
            } else if (plate_one.covers(p, spacing)) {
                tags[g.index(i, j)] = NodeTag::PlateOne;
            }
        }
    }
    require_plates_resolved(g, tags);
    return solve_field(g, std::move(tags), options);
}

}  // namespace

CondenserResult condenser_capacity(const CondenserDomain& domain, const PlateSpec& plate_zero,
                                   const PlateSpec& plate_one, double spacing,
                                   const SolverOptions& options) {
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("condenser_capacity requires spacing > 0");
    }
    CondenserResult result;
    const FieldSolution coarse =
        solve_condenser_once(domain, plate_zero, plate_one, spacing, options);
    result.cap_coarse = coarse.energy;
    result.field = solve_condenser_once(domain, plate_zero, plate_one, spacing / 2.0, options);
    result.cap = result.field.energy;
    return result;
}

double extremal_distance(double cap) {
    if (!(cap > 0.0)) {
        throw std::domain_error("extremal_distance requires cap > 0");
    }
    return 1.0 / cap;
}

namespace {

struct KoenigsLayout {
    double spacing = 0.0;
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    bool wall_bottom = false, wall_top = false, wall_left = false;  // true domain walls
};

// Window around h(K) and h(K)+t inside the image domain. The spacing is
// snapped so that true walls land exactly on node rows/columns.
KoenigsLayout koenigs_layout(const KoenigsModel& model, const PlateSpec& base, double t,
                             const KoenigsFieldConfig& config) {
    const OmegaGeometry& om = model.omega();
    if (om.type == OmegaGeometry::Type::Unknown) {
        throw SolverError("model has no usable image-domain geometry");
    }
    double bx0, bx1, by0, by1;
    base.bounding_box(bx0, bx1, by0, by1);
    const double plate_diam = std::max(bx1 - bx0, by1 - by0);

    KoenigsLayout lay;
    switch (om.type) {
        case OmegaGeometry::Type::HorizontalStrip: {
            const double width = 2.0 * om.param;
            const int rows = std::max(8, static_cast<int>(std::round(width / config.spacing)));
            lay.spacing = width / rows;
            lay.y0 = -om.param;
            lay.y1 = om.param;
            lay.wall_bottom = lay.wall_top = true;
            lay.x0 = bx0 - config.margin;
            lay.x1 = bx1 + t + config.margin;
            break;
        }
        case OmegaGeometry::Type::RightHalfPlane: {
            const double margin = std::max(3.0 * plate_diam, 1.0);
            lay.spacing = config.spacing;
            lay.x0 = om.param;
            lay.wall_left = true;
            lay.x1 = bx1 + t + margin;
            lay.y0 = by0 - margin;
            lay.y1 = by1 + margin;
            break;
        }
        case OmegaGeometry::Type::UpperHalfPlane: {
            const double margin = std::max(3.0 * plate_diam, 1.0);
            lay.spacing = config.spacing;
            lay.y0 = 0.0;
            lay.wall_bottom = true;
            lay.y1 = by1 + margin;  // plates drift along Re only
            lay.x0 = bx0 - margin;
            lay.x1 = bx1 + t + margin;
            break;
        }
        case OmegaGeometry::Type::Unknown:
            break;
    }
    // Align the window to the spacing lattice so identical plates rasterize
    // identically for every t that is a lattice multiple.
    lay.x0 = lay.wall_left ? lay.x0 : lay.spacing * std::floor(lay.x0 / lay.spacing);
    lay.x1 = lay.spacing * std::ceil(lay.x1 / lay.spacing);
    if (!lay.wall_bottom && !lay.wall_top) {
        lay.y0 = lay.spacing * std::floor(lay.y0 / lay.spacing);
        lay.y1 = lay.spacing * std::ceil(lay.y1 / lay.spacing);
    }
    return lay;
}

PlateSpec map_plate(const KoenigsModel& model, const CompactSet& set, int boundary_samples,
                    Complex shift) {
    set.require_disk_plate();
    PlateSpec p;
    std::vector<Complex> loop;
    loop.reserve(boundary_samples);
    for (Complex b : set.boundary_samples(boundary_samples)) {
        loop.push_back(model.h(b) + shift);
    }
    p.loops.push_back(std::move(loop));
    return p;
}

}  // namespace

double koenigs_lattice_spacing(const KoenigsModel& model, double requested) {
    if (model.omega().type == OmegaGeometry::Type::HorizontalStrip) {
        const double width = 2.0 * model.omega().param;
        const int rows = std::max(8, static_cast<int>(std::round(width / requested)));
        return width / rows;
    }
    return requested;
}

double harmonic_measure_koenigs(const KoenigsModel& model, const CompactSet& set, Complex z,
                                double t, const KoenigsFieldConfig& config) {
    const PlateSpec base = map_plate(model, set, config.boundary_samples, Complex(0.0));
    const KoenigsLayout lay = koenigs_layout(model, base, t, config);
    const PlateSpec plate = map_plate(model, set, config.boundary_samples, Complex(t, 0.0));

    GridSpec g;
    g.spacing = lay.spacing;
    g.nx = static_cast<int>(std::round((lay.x1 - lay.x0) / lay.spacing)) + 1;
    g.ny = static_cast<int>(std::round((lay.y1 - lay.y0) / lay.spacing)) + 1;
    g.origin = Complex(lay.x0, lay.y0);

    // Dirichlet-zero on the image of the unit circle and on the far-field
    // window edges, where the measure is exponentially small.
    std::vector<NodeTag> tags(static_cast<std::size_t>(g.nx) * g.ny, NodeTag::Interior);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i == 0 || i == g.nx - 1 || j == 0 || j == g.ny - 1) {
                tags[g.index(i, j)] = NodeTag::PlateZero;
            } else if (plate.covers(g.node(i, j), g.spacing)) {
                tags[g.index(i, j)] = NodeTag::PlateOne;
            }
        }
    }
    require_plates_resolved(g, tags);
    const FieldSolution f = solve_field(g, std::move(tags), config.solver);
    return bilinear_at(f, model.h(z));
}

CondenserResult condenser_capacity_koenigs(const KoenigsModel& model, const CompactSet& set,
                                           double t, const KoenigsFieldConfig& config) {
    const PlateSpec base = map_plate(model, set, config.boundary_samples, Complex(0.0));
    const KoenigsLayout lay = koenigs_layout(model, base, t, config);
    const PlateSpec moved = map_plate(model, set, config.boundary_samples, Complex(t, 0.0));
    const CondenserDomain domain = CondenserDomain::koenigs_window(
        model.omega(), lay.x0, lay.x1, lay.y0, lay.y1);
    SolverOptions opts = config.solver;
    // The fine solve runs at lay.spacing/2; keep the pair as specified.
    CondenserResult res = condenser_capacity(domain, base, moved, lay.spacing, opts);
    return res;
}

BeurlingCheck beurling_slope_check(const KoenigsModel& model, const CompactSet& set, Complex z,
                                   const std::vector<double>& t_grid,
                                   const KoenigsFieldConfig& omega_config,
                                   const KoenigsFieldConfig* condenser_config) {
    if (set.distance(z) > 0.0) {
        throw std::domain_error("beurling_slope_check requires z in the plate set");
    }
    const KoenigsFieldConfig& cap_config =
        condenser_config != nullptr ? *condenser_config : omega_config;
    BeurlingCheck check;
    check.bound = -std::numeric_limits<double>::infinity();
    for (double t : t_grid) {
        BoundSeriesRow row;
        row.t = t;
        row.log_omega = std::log(harmonic_measure_koenigs(model, set, z, t, omega_config));
        const CondenserResult cap = condenser_capacity_koenigs(model, set, t, cap_config);
        row.pi_lambda_d = kPi * extremal_distance(cap.cap);
        row.sum = row.log_omega + row.pi_lambda_d;
        if (!std::isfinite(row.sum)) {
            throw SolverError("bound series produced a non-finite entry");
        }
        check.bound = std::max(check.bound, row.sum);
        check.rows.push_back(row);
    }
    return check;
}

}  // namespace diskflow
