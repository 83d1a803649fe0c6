#include "diskflow/study.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "diskflow/capacity.hpp"
#include "diskflow/estimators.hpp"
#include "diskflow/expression.hpp"
#include "diskflow/field.hpp"
#include "diskflow/study.hpp"

namespace diskflow {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

KoenigsModel model_from_config(const StudyConfig& cfg) {
    if (!cfg.custom_h.empty() || !cfg.custom_h_inverse.empty()) {
        if (cfg.custom_h.empty() || cfg.custom_h_inverse.empty()) {
            throw std::invalid_argument("custom models need both h and h_inverse expressions");
        }
        return KoenigsModel::custom(compile_expression(cfg.custom_h),
                                    compile_expression(cfg.custom_h_inverse),
                                    "custom: h = " + cfg.custom_h);
    }
    return KoenigsModel::by_id(cfg.model);
}

json fit_to_json(const ConvergenceReport& r) {
    json j;
    j["fitted_lambda"] = r.fitted_lambda;
    j["fit_kind"] = r.fit_kind == FitKind::RatioTail ? "ratio_tail" : "slope_regression";
    j["slope"] = r.fit.slope;
    j["intercept"] = r.fit.intercept;
    j["slope_stderr"] = r.fit.slope_stderr;
    j["residual_rms"] = r.fit.residual_rms;
    j["fit_points"] = r.fit.points;
    j["tainted"] = r.tainted;
    if (r.estimator == EstimatorId::CondenserCapacity) {
        j["verdict"] = r.divergent ? "divergent" : "convergent";
    }
    std::uint32_t any = 0;
    for (std::uint32_t f : r.flags) {
        any |= f;
    }
    j["flags_union"] = any;
    return j;
}

void write_csv(const std::filesystem::path& path, const ConvergenceReport& r,
               std::uint64_t cfg_hash, std::uint64_t seed) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    char head[64];
    std::snprintf(head, sizeof head, "# config=%016llx seed=%llu\n",
                  static_cast<unsigned long long>(cfg_hash),
                  static_cast<unsigned long long>(seed));
    out << head << "t,raw_value,flag\n";
    for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
        out << fmt(r.t_grid[i]) << ',' << fmt(r.raw_values[i]) << ',' << r.flags[i] << '\n';
    }
}

class WallTimer {
public:
    WallTimer(std::ostream& log, std::string label) : log_(log), label_(std::move(label)) {
        start_ = std::chrono::steady_clock::now();
    }
    ~WallTimer() {
        const auto dt = std::chrono::steady_clock::now() - start_;
        log_ << "[timing] " << label_ << ": "
             << std::chrono::duration<double>(dt).count() << " s\n";
    }

private:
    std::ostream& log_;
    std::string label_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace

std::vector<double> parse_grid_spec(const std::string& spec) {
    std::vector<std::string> parts = split(spec, ':');
    bool geometric = false;
    if (!parts.empty() && parts[0] == "geom") {
        geometric = true;
        parts.erase(parts.begin());
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("grid spec must be a:b:n or geom:a:b:n, got: " + spec);
    }
    const double a = std::stod(parts[0]);
    const double b = std::stod(parts[1]);
    const int n = std::stoi(parts[2]);
    return geometric ? geometric_grid(a, b, n) : arithmetic_grid(a, b, n);
}

CompactSet parse_set_spec(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("set spec needs shape:args, got: " + spec);
    }
    const std::string shape = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (shape == "disk") {
        const std::vector<std::string> parts = split(args, ',');
        if (parts.size() != 2) {
            throw std::invalid_argument("disk spec is disk:<center>,<radius>");
        }
        return CompactSet::disk(parse_complex(parts[0]), std::stod(parts[1]));
    }
    if (shape == "polygon") {
        std::vector<Complex> vertices;
        for (const std::string& v : split(args, ';')) {
            vertices.push_back(parse_complex(v));
        }
        return CompactSet::polygon(std::move(vertices));
    }
    if (shape == "segment") {
        const std::vector<std::string> parts = split(args, ';');
        if (parts.size() != 2) {
            throw std::invalid_argument("segment spec is segment:<a>;<b>");
        }
        return CompactSet::segment(parse_complex(parts[0]), parse_complex(parts[1]));
    }
    throw std::invalid_argument("unknown set shape: " + shape);
}

namespace {

json config_to_json(const StudyConfig& c) {
    json j;
    j["model"] = c.model;
    j["custom_h"] = c.custom_h;
    j["custom_h_inverse"] = c.custom_h_inverse;
    j["set"] = c.set;
    j["z"] = c.z;
    j["w"] = c.w;
    j["t_grid"] = c.t_grid;
    j["u_grid"] = c.u_grid;
    j["t_grid_solver"] = c.t_grid_solver;
    j["r_max"] = c.r_max;
    j["spacing"] = c.spacing;
    j["eps"] = c.eps;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["omega_floor"] = c.omega_floor;
    j["estimators"] = c.estimators;
    j["residual_series"] = c.residual_series;
    j["beurling_series"] = c.beurling_series;
    return j;
}

}  // namespace

StudyConfig study_config_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    StudyConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) {
            j.at(key).get_to(field);
        }
    };
    get("model", c.model);
    get("custom_h", c.custom_h);
    get("custom_h_inverse", c.custom_h_inverse);
    get("set", c.set);
    get("z", c.z);
    get("w", c.w);
    get("t_grid", c.t_grid);
    get("u_grid", c.u_grid);
    get("t_grid_solver", c.t_grid_solver);
    get("r_max", c.r_max);
    get("spacing", c.spacing);
    get("eps", c.eps);
    get("samples", c.samples);
    get("seed", c.seed);
    get("omega_floor", c.omega_floor);
    get("threads", c.threads);
    get("estimators", c.estimators);
    get("residual_series", c.residual_series);
    get("beurling_series", c.beurling_series);
    get("out_dir", c.out_dir);
    return c;
}

StudyConfig study_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file: " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return study_config_from_json_text(buf.str());
}

std::string study_config_to_json_text(const StudyConfig& config) {
    return config_to_json(config).dump(2);
}

std::uint64_t config_hash(const StudyConfig& config) {
    const std::string canon = config_to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

int run_study(const StudyConfig& cfg, std::ostream& log) {
    namespace fs = std::filesystem;
    try {
        const KoenigsModel model = model_from_config(cfg);
        const CompactSet set = parse_set_spec(cfg.set);
        const Complex z = parse_complex(cfg.z);
        const Complex w = parse_complex(cfg.w);
        const std::uint64_t hash = config_hash(cfg);

        EstimatorConfig est_cfg;
        est_cfg.spacing = cfg.spacing;
        est_cfg.condenser_spacing = 2.0 * cfg.spacing;
        est_cfg.omega_floor = cfg.omega_floor;
        est_cfg.sor_tolerance = 1e-10;
        est_cfg.threads = cfg.threads;
        est_cfg.seed = cfg.seed;

        fs::create_directories(cfg.out_dir);

        std::map<std::string, ConvergenceReport> reports;
        const std::vector<double> t_closed = parse_grid_spec(cfg.t_grid);
        const std::vector<double> u_grid = parse_grid_spec(cfg.u_grid);
        const double lattice = koenigs_lattice_spacing(model, 2.0 * cfg.spacing);
        std::vector<double> t_solver = parse_grid_spec(cfg.t_grid_solver);
        t_solver = snap_to_lattice(t_solver, lattice);

        auto wants = [&](const char* name) {
            for (const std::string& e : cfg.estimators) {
                if (e == name) {
                    return true;
                }
            }
            return false;
        };

        if (wants("hyp_dist")) {
            WallTimer timer(log, "hyp_dist");
            reports["hyp_dist"] = lambda_via_hyp_dist(model, z, w, t_closed);
        }
        if (wants("green")) {
            WallTimer timer(log, "green");
            reports["green"] = lambda_via_green(model, z, w, t_closed);
        }
        if (wants("step")) {
            WallTimer timer(log, "step");
            reports["step"] = lambda_via_step(model, z, u_grid, cfg.r_max);
        }
        if (wants("harmonic")) {
            WallTimer timer(log, "harmonic");
            reports["harmonic"] = lambda_via_harmonic(model, set, z, t_solver, est_cfg);
        }
        if (wants("extremal") || wants("condenser")) {
            WallTimer timer(log, "condenser");
            auto [ext, cond] = lambda_via_extremal_and_condenser(model, set, t_solver, est_cfg);
            if (wants("extremal")) {
                reports["extremal"] = std::move(ext);
            }
            if (wants("condenser")) {
                reports["condenser"] = std::move(cond);
            }
        }

        json summary;
        summary["config"] = config_to_json(cfg);
        char hash_text[24];
        std::snprintf(hash_text, sizeof hash_text, "%016llx",
                      static_cast<unsigned long long>(hash));
        summary["config_hash"] = hash_text;
        summary["seed"] = cfg.seed;

        bool tainted = false;
        for (const auto& [name, report] : reports) {
            write_csv(fs::path(cfg.out_dir) / (name + ".csv"), report, hash, cfg.seed);
            summary["estimators"][name] = fit_to_json(report);
            tainted = tainted || report.tainted;
        }

        {
            const Classification cls = classify(model);
            json jc;
            switch (cls.kind) {
                case Classification::Kind::Hyperbolic:
                    jc["kind"] = "hyperbolic";
                    break;
                case Classification::Kind::ParabolicPositiveStep:
                    jc["kind"] = "parabolic-positive-step";
                    break;
                case Classification::Kind::ParabolicZeroStep:
                    jc["kind"] = "parabolic-zero-step";
                    break;
                case Classification::Kind::Ambiguous:
                    jc["kind"] = "ambiguous";
                    break;
            }
            jc["lambda_hat"] = cls.lambda_hat;
            summary["classification"] = jc;
        }

        if (cfg.residual_series) {
            WallTimer timer(log, "residual");
            std::vector<double> u_solver = snap_to_lattice(parse_grid_spec(cfg.t_grid_solver),
                                                           lattice);
            const auto rows =
                proposition_residual(model, set, z, u_solver, cfg.r_max, est_cfg);
            json series = json::array();
            std::ofstream out(fs::path(cfg.out_dir) / "residual.csv", std::ios::binary);
            out << "# config=" << hash_text << " seed=" << cfg.seed << "\n";
            out << "u,step,half_pi_lambda_d,residual\n";
            for (const ResidualRow& row : rows) {
                out << fmt(row.u) << ',' << fmt(row.step) << ',' << fmt(row.half_pi_lambda_d)
                    << ',' << fmt(row.residual) << '\n';
                series.push_back({{"u", row.u}, {"residual", row.residual}});
            }
            summary["residual_series"] = series;
        }
        if (cfg.beurling_series) {
            WallTimer timer(log, "beurling");
            std::vector<double> grid = snap_to_lattice(parse_grid_spec(cfg.t_grid_solver),
                                                       lattice);
            const KoenigsFieldConfig cap_cfg = est_cfg.condenser_field_config();
            const BeurlingCheck check =
                beurling_slope_check(model, set, z, grid, est_cfg.field_config(), &cap_cfg);
            std::ofstream out(fs::path(cfg.out_dir) / "beurling.csv", std::ios::binary);
            out << "# config=" << hash_text << " seed=" << cfg.seed << "\n";
            out << "t,log_omega,pi_lambda_d,sum\n";
            for (const BoundSeriesRow& row : check.rows) {
                out << fmt(row.t) << ',' << fmt(row.log_omega) << ',' << fmt(row.pi_lambda_d)
                    << ',' << fmt(row.sum) << '\n';
            }
            summary["beurling_bound"] = check.bound;
        }

        std::ofstream out(fs::path(cfg.out_dir) / "summary.json", std::ios::binary);
        out << summary.dump(2) << '\n';

        return tainted ? 3 : 0;
    } catch (const std::invalid_argument& e) {
        log << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        log << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace diskflow
