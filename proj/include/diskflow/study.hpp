#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "diskflow/compact_set.hpp"
#include "diskflow/disk_geometry.hpp"

namespace diskflow {

/// Batch-study description, loadable from JSON. Grid specs are strings:
/// "a:b:n" for arithmetic and "geom:a:b:n" for geometric grids.
struct StudyConfig {
    std::string model = "hyperbolic-strip";
    std::string custom_h;          // expression in z; enables a custom model
    std::string custom_h_inverse;  // required together with custom_h
    std::string set = "disk:0,0.2";
    std::string z = "0";
    std::string w = "0";
    std::string t_grid = "geom:1:200:40";        // closed-form estimators
    std::string u_grid = "geom:1:200:40";        // step estimator
    std::string t_grid_solver = "2:10:9";        // field-solver estimators
    double r_max = 100.0;
    double spacing = kPi / 256.0;
    double eps = 1e-4;
    long samples = 200000;
    std::uint64_t seed = 1;
    double omega_floor = 1e-6;
    int threads = 0;
    std::vector<std::string> estimators = {"hyp_dist", "green",     "harmonic",
                                           "extremal", "condenser", "step"};
    bool residual_series = false;
    bool beurling_series = false;
    std::string out_dir = "study-out";
};

StudyConfig study_config_from_json_text(const std::string& text);
StudyConfig study_config_from_file(const std::string& path);
std::string study_config_to_json_text(const StudyConfig& config);

std::vector<double> parse_grid_spec(const std::string& spec);
CompactSet parse_set_spec(const std::string& spec);

/// Runs the configured study, writing one CSV per estimator plus
/// summary.json under out_dir. Timings go to the log stream; the files are
/// byte-reproducible for a fixed config and seed. Returns the process exit
/// code: 0 ok, 2 numerical failure, 3 tainted fit.
int run_study(const StudyConfig& config, std::ostream& log);

/// FNV-1a hash of the canonical config serialization, echoed in outputs.
std::uint64_t config_hash(const StudyConfig& config);

}  // namespace diskflow
