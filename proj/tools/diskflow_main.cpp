#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "diskflow/capacity.hpp"
#include "diskflow/estimators.hpp"
#include "diskflow/expression.hpp"
#include "diskflow/field.hpp"
#include "diskflow/study.hpp"

namespace {

using namespace diskflow;

void print_value(const char* label, double value) {
    std::printf("%s = %.17g\n", label, value);
}

int cmd_catalog() {
    for (const KoenigsModel& m : KoenigsModel::catalog()) {
        const char* kind = "";
        switch (m.kind()) {
            case SemigroupKind::HyperbolicStrip:
                kind = "hyperbolic";
                break;
            case SemigroupKind::ParabolicPositiveStep:
                kind = "parabolic-positive-step";
                break;
            case SemigroupKind::ParabolicZeroStep:
                kind = "parabolic-zero-step";
                break;
            case SemigroupKind::Custom:
                kind = "custom";
                break;
        }
        std::printf("%-24s kind=%-24s lambda=%-8.6g %s\n", m.id().c_str(), kind,
                    m.nominal_lambda().value_or(-1.0), m.domain_note().c_str());
    }
    return 0;
}

struct EvalArgs {
    std::string quantity;
    std::vector<std::string> args;
    std::string set_spec;
    std::string set2_spec;
    std::string z_text = "0";
    std::string method = "grid";
    double spacing = 1.0 / 256.0;
    double eps = 1e-4;
    long samples = 200000;
    std::uint64_t seed = 1;
    int n_max = 64;
};

int cmd_eval(const EvalArgs& a) {
    auto arg_complex = [&](std::size_t i) {
        if (i >= a.args.size()) {
            throw std::invalid_argument("missing argument for " + a.quantity);
        }
        return parse_complex(a.args[i]);
    };
    auto echo_pair = [&](const char* name, Complex z, Complex w, double v) {
        std::printf("%s(%s, %s)", name, a.args[0].c_str(), a.args[1].c_str());
        print_value("", v);
        (void)z;
        (void)w;
    };

    if (a.quantity == "hyp-dist") {
        const Complex z = arg_complex(0), w = arg_complex(1);
        echo_pair("hyp-dist", z, w, hyperbolic_distance(z, w));
    } else if (a.quantity == "rho") {
        const Complex z = arg_complex(0), w = arg_complex(1);
        echo_pair("rho", z, w, pseudo_hyperbolic(z, w));
    } else if (a.quantity == "green") {
        const Complex z = arg_complex(0), w = arg_complex(1);
        echo_pair("green", z, w, green_disk(z, w));
    } else if (a.quantity == "sigma") {
        if (a.args.empty()) {
            throw std::invalid_argument("sigma needs one real argument");
        }
        const double x = std::stod(a.args[0]);
        std::printf("sigma(%s)", a.args[0].c_str());
        print_value("", sigma(x));
    } else if (a.quantity == "extremal") {
        if (a.args.empty()) {
            throw std::invalid_argument("extremal needs the capacity value");
        }
        const double cap = std::stod(a.args[0]);
        std::printf("extremal(%s)", a.args[0].c_str());
        print_value("", extremal_distance(cap));
    } else if (a.quantity == "logcap" || a.quantity == "caph") {
        if (a.set_spec.empty()) {
            throw std::invalid_argument(a.quantity + " needs --set");
        }
        const CompactSet set = parse_set_spec(a.set_spec);
        const CapacityEstimate est = a.quantity == "logcap"
                                         ? logarithmic_capacity(set, a.n_max)
                                         : hyperbolic_capacity(set, a.n_max);
        std::printf("%s(%s) nmax=%d", a.quantity.c_str(), a.set_spec.c_str(), a.n_max);
        print_value("", est.value);
        for (const auto& [n, d] : est.ladder) {
            std::printf("  d_%d = %.17g\n", n, d);
        }
    } else if (a.quantity == "harmonic") {
        if (a.set_spec.empty()) {
            throw std::invalid_argument("harmonic needs --set");
        }
        const CompactSet set = parse_set_spec(a.set_spec);
        const Complex z = parse_complex(a.z_text);
        if (a.method == "grid") {
            const HarmonicMeasureEstimate est = harmonic_measure_grid(z, set, a.spacing);
            std::printf("harmonic(z=%s, %s, grid, spacing=%g)", a.z_text.c_str(),
                        a.set_spec.c_str(), a.spacing);
            print_value("", est.value);
        } else if (a.method == "wos") {
            const HarmonicMeasureEstimate est =
                harmonic_measure_wos(z, set, a.eps, a.samples, a.seed);
            std::printf("harmonic(z=%s, %s, wos, samples=%ld, seed=%llu)", a.z_text.c_str(),
                        a.set_spec.c_str(), est.samples,
                        static_cast<unsigned long long>(est.seed));
            print_value("", est.value);
            print_value("std_error", est.std_error);
        } else if (a.method == "equilibrium") {
            const double v = harmonic_measure_via_equilibrium(z, set, a.n_max);
            std::printf("harmonic(z=%s, %s, equilibrium, n=%d)", a.z_text.c_str(),
                        a.set_spec.c_str(), a.n_max);
            print_value("", v);
        } else {
            throw std::invalid_argument("unknown method: " + a.method);
        }
    } else if (a.quantity == "capacitance") {
        if (a.set_spec.empty() || a.set2_spec.empty()) {
            throw std::invalid_argument("capacitance needs --set and --set2");
        }
        auto plate = [&](const std::string& spec) -> PlateSpec {
            if (spec.rfind("annulus:", 0) == 0) {
                const std::string args = spec.substr(8);
                std::vector<std::string> parts;
                std::string cur;
                for (char c : args) {
                    if (c == ',') {
                        parts.push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                parts.push_back(cur);
                if (parts.size() != 3) {
                    throw std::invalid_argument("annulus spec is annulus:<center>,<r1>,<r2>");
                }
                return PlateSpec::annulus(parse_complex(parts[0]), std::stod(parts[1]),
                                          std::stod(parts[2]));
            }
            return PlateSpec::from_compact_set(parse_set_spec(spec));
        };
        const CondenserResult res = condenser_capacity(CondenserDomain::unit_disk(),
                                                       plate(a.set_spec), plate(a.set2_spec),
                                                       a.spacing);
        std::printf("capacitance(%s | %s, spacing=%g)", a.set_spec.c_str(), a.set2_spec.c_str(),
                    a.spacing);
        print_value("", res.cap);
        print_value("richardson_pair", res.cap_coarse);
    } else {
        throw std::invalid_argument("unknown quantity: " + a.quantity);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical potential theory for holomorphic semigroup flows on the disk"};
    app.require_subcommand(1);

    auto* catalog = app.add_subcommand("catalog", "list the built-in semigroup models");

    EvalArgs eval_args;
    auto* eval = app.add_subcommand("eval", "evaluate a single quantity");
    eval->add_option("quantity", eval_args.quantity,
                     "hyp-dist|green|rho|sigma|caph|logcap|harmonic|capacitance|extremal")
        ->required();
    eval->add_option("args", eval_args.args, "positional arguments of the quantity");
    eval->add_option("--set", eval_args.set_spec, "compact set, e.g. disk:0,0.3");
    eval->add_option("--set2", eval_args.set2_spec, "second plate for capacitance");
    eval->add_option("--z", eval_args.z_text, "evaluation point");
    eval->add_option("--method", eval_args.method, "grid|wos|equilibrium");
    eval->add_option("--spacing", eval_args.spacing, "grid spacing");
    eval->add_option("--eps", eval_args.eps, "walk-on-spheres absorption shell");
    eval->add_option("--samples", eval_args.samples, "walk-on-spheres sample count");
    eval->add_option("--seed", eval_args.seed, "random seed");
    eval->add_option("--nmax", eval_args.n_max, "capacity ladder top");

    std::string study_config_path;
    std::string study_out;
    std::uint64_t study_seed = 0;
    int study_threads = -1;
    auto* study = app.add_subcommand("study", "run a convergence study from a JSON config");
    study->add_option("--config", study_config_path, "path to the study config")->required();
    study->add_option("--out", study_out, "override the output directory");
    study->add_option("--seed", study_seed, "override the seed");
    study->add_option("--threads", study_threads, "worker count (0 = hardware)");

    std::string dump_set, dump_set2, dump_out;
    double dump_spacing = 1.0 / 256.0;
    auto* dump = app.add_subcommand("dump-field", "solve a disk field and write the grid file");
    dump->add_option("--set", dump_set, "plate (harmonic measure) or zero-plate (condenser)")
        ->required();
    dump->add_option("--set2", dump_set2, "one-plate; switches to the condenser problem");
    dump->add_option("--spacing", dump_spacing, "grid spacing");
    dump->add_option("--out", dump_out, "output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog->parsed()) {
            return cmd_catalog();
        }
        if (eval->parsed()) {
            return cmd_eval(eval_args);
        }
        if (study->parsed()) {
            diskflow::StudyConfig cfg = diskflow::study_config_from_file(study_config_path);
            if (!study_out.empty()) {
                cfg.out_dir = study_out;
            }
            if (study_seed != 0) {
                cfg.seed = study_seed;
            }
            if (study_threads >= 0) {
                cfg.threads = study_threads;
            }
            return diskflow::run_study(cfg, std::cerr);
        }
        if (dump->parsed()) {
            using namespace diskflow;
            FieldSolution field;
            if (dump_set2.empty()) {
                field = harmonic_measure_grid_field(parse_set_spec(dump_set), dump_spacing);
            } else {
                const CondenserResult res = condenser_capacity(
                    CondenserDomain::unit_disk(), PlateSpec::from_compact_set(parse_set_spec(dump_set)),
                    PlateSpec::from_compact_set(parse_set_spec(dump_set2)), dump_spacing);
                field = res.field;
            }
            std::ofstream out(dump_out, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot write " + dump_out);
            }
            write_field(field, out);
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 2;
    }
    return 1;
}
