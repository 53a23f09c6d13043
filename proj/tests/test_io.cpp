#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "crofton/io.hpp"

using namespace crofton;

namespace {
io::ExperimentConfig sample_config() {
  io::ExperimentConfig c;
  c.kind = "sweep";
  c.form = "sphere";
  c.body.kind = "band";
  c.body.params["theta"] = 0.5;
  c.body.params["time_axis"] = 2;
  c.p = 2;
  c.q = 1;
  c.k = 1;
  c.eps_list = {0.2, 0.1, 0.05};
  c.n_samples = 100000;
  c.seed = 7;
  c.has_seed = true;
  c.workers = 2;
  c.window_radius = 1.5;
  c.tolerances["rel"] = 0.02;
  return c;
}
}  // namespace

TEST_CASE("config round-trip") {
  auto c = sample_config();
  auto text = io::serialize(c);
  auto back = io::parse(text);
  CHECK(back == c);
  CHECK(io::serialize(back) == text);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(io::parse("kind = dance\n"), std::invalid_argument);
  CHECK_THROWS_AS(io::parse("kind = sweep\nunknown.key = 1\n"), std::invalid_argument);
  // seed mandatory for MC kinds
  CHECK_THROWS_AS(io::parse("kind = sweep\nspace.p = 2\nspace.q = 1\n"),
                  std::invalid_argument);
  CHECK_NOTHROW(io::parse("kind = coeffs\ncoeffs.k = 1\ncoeffs.n = 2\n"));
  CHECK_THROWS_AS(io::parse("kind = sweep\nseed = 1\nn = nan\n"),
                  std::invalid_argument);
}

TEST_CASE("coeffs run emits the expected rows") {
  io::ExperimentConfig c;
  c.kind = "coeffs";
  c.coeff_k = 2;
  c.coeff_n = 4;
  c.coeff_sigma = 1.0;
  auto report = io::run(c);
  CHECK(report.results_json.find("coefficients") != std::string::npos);
  // c_1 = -3/(2 pi) = -0.477...
  CHECK(report.results_json.find("-0.477") != std::string::npos);
}

TEST_CASE("reports are reproducible byte for byte") {
  auto c = sample_config();
  c.kind = "mc-sphere";
  c.zeta = {0.0, 0.1};
  c.n_samples = 50000;
  auto r1 = io::run(c);
  auto r2 = io::run(c);
  CHECK(r1.results_json == r2.results_json);
  CHECK(r1.input_hash == r2.input_hash);
}

TEST_CASE("sweep run writes csv rows") {
  auto c = sample_config();
  c.n_samples = 60000;
  c.out_path = std::filesystem::temp_directory_path() / "crofton_io_test";
  auto report = io::run(c);
  CHECK(report.results_json.find("extrapolated_re") != std::string::npos);
  std::ifstream csv(c.out_path + "/sweep.csv");
  REQUIRE(csv.good());
  std::string header;
  std::getline(csv, header);
  CHECK(header == "epsilon,re,im,stderr_re,stderr_im");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove_all(c.out_path);
}

TEST_CASE("flat run and body builders") {
  io::ExperimentConfig c;
  c.kind = "mc-flat";
  c.form = "flat";
  c.body.kind = "circle";
  c.p = 2;
  c.q = 0;
  c.k = 1;
  c.zeta = {0.0, 0.02};
  c.n_samples = 100000;
  c.seed = 5;
  c.has_seed = true;
  c.workers = 2;
  auto report = io::run(c);
  CHECK(report.results_json.find("value_re") != std::string::npos);

  CHECK_THROWS_AS(io::build_flat_body({"circle", {}}, 3), std::invalid_argument);
  CHECK_THROWS_AS(io::build_sphere_body({"hexagon", {}}, 3), std::invalid_argument);
  auto band = io::build_sphere_body({"band", {{"theta", 0.4}, {"time_axis", 2}}}, 3);
  CHECK(std::get<body::Band>(band).time_axis == 2);
}
