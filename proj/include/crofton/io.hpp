#pragma once

#include <map>
#include <string>
#include <vector>

#include "crofton/engine.hpp"

namespace crofton::io {

/// Body descriptor as it appears in config files: a catalog name plus numeric
/// parameters (axis indices are stored as doubles and validated on build).
struct BodyDescriptor {
  std::string kind;  // cap | band | equator | cone-orthant | circle | ellipse | ball
  std::map<std::string, double> params;

  bool operator==(const BodyDescriptor&) const = default;
};

struct ExperimentConfig {
  std::string kind;  // coeffs | table | mc-sphere | mc-flat | sweep | verify
  std::string form = "sphere";  // sphere | hyperbolic | flat
  BodyDescriptor body;
  int p = 0, q = 0, k = 1;
  cplx zeta{1.0, 0.0};
  std::vector<double> eps_list;
  long n_samples = 0;
  uint64_t seed = 0;
  bool has_seed = false;
  int workers = 0;
  bool stratified = false;
  double window_radius = 0.0;
  std::string out_path;
  std::string suite = "all";
  int coeff_k = 1, coeff_n = 2;
  double coeff_sigma = 1.0;
  int table_k_max = 4, table_n_max = 6;
  std::map<std::string, double> tolerances;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Canonical text form: sorted dotted keys, `key = value` per line.
std::string serialize(const ExperimentConfig& config);

/// Inverse of serialize; unknown keys and malformed values are errors.
/// MC kinds require an explicit seed.
ExperimentConfig parse(const std::string& text);

ExperimentConfig load_config(const std::string& path);

/// 64-bit FNV-1a over a canonical rendering; used as the report content hash.
uint64_t content_hash(const std::string& text);

struct RunReport {
  ExperimentConfig config;
  uint64_t input_hash = 0;
  std::string results_json;  // ordered, full precision
  bool pass = true;
  double wall_seconds = 0.0;
};

/// Dispatch a config to the engine / table writers / acceptance suites.
/// Writes the JSON report (and CSV tables where applicable) under
/// config.out_path when set.
RunReport run(const ExperimentConfig& config);

std::string report_json(const RunReport& report);

/// Per-eps sweep rows: epsilon,re,im,stderr_re,stderr_im (17 significant digits).
std::string sweep_csv(const mc::SweepResult& sweep);

body::SphereBody build_sphere_body(const BodyDescriptor& desc, int ambient_dim);
body::FlatBody build_flat_body(const BodyDescriptor& desc, int ambient_dim);

}  // namespace crofton::io
