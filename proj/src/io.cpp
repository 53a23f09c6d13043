#include "crofton/io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "crofton/acceptance.hpp"

namespace crofton::io {

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

const std::vector<std::string> kValidKinds = {"coeffs", "table",  "mc-sphere",
                                              "mc-flat", "sweep", "verify"};
const std::vector<std::string> kValidForms = {"sphere", "hyperbolic", "flat"};

}  // namespace

std::string serialize(const ExperimentConfig& c) {
  std::map<std::string, std::string> kv;
  kv["kind"] = c.kind;
  kv["form"] = c.form;
  if (!c.body.kind.empty()) kv["body.kind"] = c.body.kind;
  for (const auto& [name, value] : c.body.params) kv["body." + name] = fmt_double(value);
  kv["space.p"] = std::to_string(c.p);
  kv["space.q"] = std::to_string(c.q);
  kv["space.k"] = std::to_string(c.k);
  kv["zeta.re"] = fmt_double(c.zeta.real());
  kv["zeta.im"] = fmt_double(c.zeta.imag());
  if (!c.eps_list.empty()) {
    std::ostringstream os;
    for (size_t i = 0; i < c.eps_list.size(); ++i)
      os << (i ? "," : "") << fmt_double(c.eps_list[i]);
    kv["eps"] = os.str();
  }
  kv["n"] = std::to_string(c.n_samples);
  if (c.has_seed) kv["seed"] = std::to_string(c.seed);
  kv["workers"] = std::to_string(c.workers);
  kv["stratified"] = c.stratified ? "1" : "0";
  kv["window"] = fmt_double(c.window_radius);
  if (!c.out_path.empty()) kv["out"] = c.out_path;
  kv["suite"] = c.suite;
  kv["coeffs.k"] = std::to_string(c.coeff_k);
  kv["coeffs.n"] = std::to_string(c.coeff_n);
  kv["coeffs.sigma"] = fmt_double(c.coeff_sigma);
  kv["table.k_max"] = std::to_string(c.table_k_max);
  kv["table.n_max"] = std::to_string(c.table_n_max);
  for (const auto& [name, value] : c.tolerances) kv["tol." + name] = fmt_double(value);

  std::ostringstream os;
  for (const auto& [key, value] : kv) os << key << " = " << value << "\n";
  return os.str();
}

ExperimentConfig parse(const std::string& text) {
  ExperimentConfig c;
  std::istringstream is(text);
  std::string line;
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto to_double = [&](const std::string& key, const std::string& s) {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v))
      throw std::invalid_argument("config: non-finite or malformed value for " + key);
    return v;
  };

  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: missing '=' at line " + std::to_string(line_no));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));

    if (key == "kind") c.kind = value;
    else if (key == "form") c.form = value;
    else if (key == "body.kind") c.body.kind = value;
    else if (key.rfind("body.", 0) == 0) c.body.params[key.substr(5)] = to_double(key, value);
    else if (key == "space.p") c.p = static_cast<int>(to_double(key, value));
    else if (key == "space.q") c.q = static_cast<int>(to_double(key, value));
    else if (key == "space.k") c.k = static_cast<int>(to_double(key, value));
    else if (key == "zeta.re") c.zeta.real(to_double(key, value));
    else if (key == "zeta.im") c.zeta.imag(to_double(key, value));
    else if (key == "eps") {
      c.eps_list.clear();
      std::istringstream es(value);
      std::string item;
      while (std::getline(es, item, ',')) c.eps_list.push_back(to_double(key, trim(item)));
    } else if (key == "n") c.n_samples = static_cast<long>(to_double(key, value));
    else if (key == "seed") {
      c.seed = std::stoull(value);
      c.has_seed = true;
    } else if (key == "workers") c.workers = static_cast<int>(to_double(key, value));
    else if (key == "stratified") c.stratified = value == "1" || value == "true";
    else if (key == "window") c.window_radius = to_double(key, value);
    else if (key == "out") c.out_path = value;
    else if (key == "suite") c.suite = value;
    else if (key == "coeffs.k") c.coeff_k = static_cast<int>(to_double(key, value));
    else if (key == "coeffs.n") c.coeff_n = static_cast<int>(to_double(key, value));
    else if (key == "coeffs.sigma") c.coeff_sigma = to_double(key, value);
    else if (key == "table.k_max") c.table_k_max = static_cast<int>(to_double(key, value));
    else if (key == "table.n_max") c.table_n_max = static_cast<int>(to_double(key, value));
    else if (key.rfind("tol.", 0) == 0) c.tolerances[key.substr(4)] = to_double(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  if (std::find(kValidKinds.begin(), kValidKinds.end(), c.kind) == kValidKinds.end())
    throw std::invalid_argument("config: unknown kind '" + c.kind + "'");
  if (std::find(kValidForms.begin(), kValidForms.end(), c.form) == kValidForms.end())
    throw std::invalid_argument("config: unknown form '" + c.form + "'");
  bool is_mc = c.kind == "mc-sphere" || c.kind == "mc-flat" || c.kind == "sweep";
  if (is_mc && !c.has_seed)
    throw std::invalid_argument("config: seed is mandatory for Monte Carlo runs");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str());
}

uint64_t content_hash(const std::string& text) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

body::SphereBody build_sphere_body(const BodyDescriptor& desc, int ambient_dim) {
  auto param = [&](const std::string& name, double dflt,
                   bool required = false) -> double {
    auto it = desc.params.find(name);
    if (it == desc.params.end()) {
      if (required) throw std::invalid_argument("body: missing parameter " + name);
      return dflt;
    }
    return it->second;
  };
  if (desc.kind == "cap") {
    body::Cap cap;
    cap.radius = param("radius", 0.0, true);
    cap.axis = lin::VecD::Zero(ambient_dim);
    int axis = static_cast<int>(param("axis", ambient_dim - 1));
    cap.axis(axis) = 1.0;
    return cap;
  }
  if (desc.kind == "band") {
    body::Band band;
    band.theta = param("theta", 0.0, true);
    band.time_axis = static_cast<int>(param("time_axis", ambient_dim - 1));
    return band;
  }
  if (desc.kind == "equator")
    return body::Equator{static_cast<int>(param("axis", ambient_dim - 1))};
  if (desc.kind == "cone-orthant") {
    // The positive orthant cone; mainly a catalog example.
    lin::MatD g = lin::MatD::Identity(ambient_dim, ambient_dim);
    return body::make_cone_body(g);
  }
  throw std::invalid_argument("unknown sphere body kind: " + desc.kind);
}

body::FlatBody build_flat_body(const BodyDescriptor& desc, int ambient_dim) {
  auto param = [&](const std::string& name, double dflt) {
    auto it = desc.params.find(name);
    return it == desc.params.end() ? dflt : it->second;
  };
  if (desc.kind == "circle") {
    if (ambient_dim != 2) throw std::invalid_argument("circle body needs dimension 2");
    return body::make_circle(param("radius", 1.0),
                             {param("center_x", 0.0), param("center_y", 0.0)});
  }
  if (desc.kind == "ellipse") {
    if (ambient_dim != 2) throw std::invalid_argument("ellipse body needs dimension 2");
    return body::make_ellipse(param("a", 1.0), param("b", 0.5));
  }
  if (desc.kind == "ball") {
    body::FlatBall ball;
    ball.radius = param("radius", 1.0);
    ball.center = lin::VecD::Zero(ambient_dim);
    return ball;
  }
  throw std::invalid_argument("unknown flat body kind: " + desc.kind);
}

namespace {

nlohmann::ordered_json estimate_json(const ExperimentConfig& c,
                                     const mc::CroftonEstimate& est, bool flat) {
  nlohmann::ordered_json j;
  j["body"] = c.body.kind;
  j["p"] = c.p;
  j["q"] = c.q;
  j["k"] = c.k;
  if (flat)
    j["epsilon"] = est.epsilon;
  else {
    j["zeta_re"] = est.zeta.real();
    j["zeta_im"] = est.zeta.imag();
  }
  j["N"] = est.samples;
  j["seed"] = c.seed;
  j["value_re"] = est.value.real();
  j["value_im"] = est.value.imag();
  j["stderr"] = est.stderr_;
  j["rejected"] = est.rejected;
  j["flagged"] = est.flagged;
  return j;
}

void write_file(const std::string& path, const std::string& data) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << data;
}

}  // namespace

std::string sweep_csv(const mc::SweepResult& sweep) {
  std::ostringstream os;
  os << "epsilon,re,im,stderr_re,stderr_im\n";
  os << std::setprecision(17);
  for (const auto& est : sweep.estimates)
    os << est.epsilon << ',' << est.value.real() << ',' << est.value.imag() << ','
       << est.se_re << ',' << est.se_im << "\n";
  return os.str();
}

RunReport run(const ExperimentConfig& config) {
  RunReport report;
  report.config = config;
  report.input_hash = content_hash(serialize(config));
  auto t0 = std::chrono::steady_clock::now();

  nlohmann::ordered_json results;
  mc::McOptions opts;
  opts.workers = config.workers;
  opts.stratified = config.stratified;

  if (config.kind == "coeffs") {
    auto t = iv::crofton_coeffs(config.coeff_k, config.coeff_n, config.coeff_sigma);
    std::ostringstream csv;
    csv << "k,n,sigma,j,c_j_real,c_j_imag\n" << std::setprecision(17);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int j = 0; j < t.c.size(); ++j) {
      csv << t.k << ',' << t.n << ',' << t.sigma << ',' << j << ',' << t.c(j) << ",0\n";
      rows.push_back({{"j", j}, {"c", t.c(j)}});
    }
    results["coefficients"] = rows;
    if (!config.out_path.empty()) write_file(config.out_path + "/coeffs.csv", csv.str());
  } else if (config.kind == "table") {
    std::string csv = iv::coeff_table_csv(config.table_k_max, config.table_n_max);
    results["rows"] = std::count(csv.begin(), csv.end(), '\n') - 1;
    if (!config.out_path.empty()) write_file(config.out_path + "/table.csv", csv);
  } else if (config.kind == "mc-sphere") {
    body::SpaceForm form = config.form == "hyperbolic"
                               ? body::SpaceForm{body::SpaceForm::Kind::PseudoHyperbolic,
                                                 {config.p, config.q}}
                               : body::SpaceForm{body::SpaceForm::Kind::Pseudosphere,
                                                 {config.p, config.q}};
    auto bdy = build_sphere_body(config.body, config.p + config.q);
    auto est = mc::estimate_sphere(form, bdy, config.k, config.zeta, config.n_samples,
                                   config.seed, opts);
    results["estimate"] = estimate_json(config, est, false);
  } else if (config.kind == "mc-flat") {
    auto space = lin::standard_form({config.p, config.q});
    auto bdy = build_flat_body(config.body, config.p + config.q);
    auto est = mc::estimate_flat(space, bdy, config.k, config.zeta.imag(),
                                 config.n_samples, config.window_radius, config.seed,
                                 opts);
    results["estimate"] = estimate_json(config, est, true);
  } else if (config.kind == "sweep") {
    mc::SweepResult sweep;
    if (config.form == "flat") {
      auto space = lin::standard_form({config.p, config.q});
      auto bdy = build_flat_body(config.body, config.p + config.q);
      sweep = mc::epsilon_sweep_flat(space, bdy, config.k, config.eps_list,
                                     config.n_samples, config.window_radius,
                                     config.seed, opts);
    } else {
      body::SpaceForm form =
          config.form == "hyperbolic"
              ? body::SpaceForm{body::SpaceForm::Kind::PseudoHyperbolic,
                                {config.p, config.q}}
              : body::SpaceForm{body::SpaceForm::Kind::Pseudosphere,
                                {config.p, config.q}};
      auto bdy = build_sphere_body(config.body, config.p + config.q);
      sweep = mc::epsilon_sweep_sphere(form, bdy, config.k, config.eps_list,
                                       config.n_samples, config.seed, opts);
    }
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& est : sweep.estimates)
      rows.push_back(estimate_json(config, est, config.form == "flat"));
    results["sweep"] = rows;
    results["extrapolated_re"] = sweep.extrapolated.real();
    results["extrapolated_im"] = sweep.extrapolated.imag();
    results["extrapolation_error"] = sweep.extrapolation_error;
    results["order_used"] = sweep.order_used;
    results["monotone"] = sweep.monotone;
    if (!config.out_path.empty())
      write_file(config.out_path + "/sweep.csv", sweep_csv(sweep));
  } else if (config.kind == "verify") {
    auto checks = acceptance::run_suite(config.suite, config.workers);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& check : checks) {
      rows.push_back({{"id", check.id},
                      {"name", check.name},
                      {"pass", check.pass},
                      {"detail", check.detail},
                      {"seconds", check.wall_seconds}});
      if (!check.pass) report.pass = false;
    }
    results["checks"] = rows;
  } else {
    throw std::invalid_argument("run: unknown kind " + config.kind);
  }

  auto t1 = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  report.results_json = results.dump(2);
  if (!config.out_path.empty())
    write_file(config.out_path + "/report.json", report_json(report));
  return report;
}

std::string report_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["config"] = serialize(report.config);
  j["input_hash"] = report.input_hash;
  j["results"] = nlohmann::ordered_json::parse(report.results_json);
  j["pass"] = report.pass;
  j["wall_seconds"] = report.wall_seconds;
  return j.dump(2);
}

}  // namespace crofton::io
