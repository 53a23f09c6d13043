#include "crofton/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace crofton::oracle {

bool sphere_body_contains(const body::SphereBody& bdy, const lin::VecD& x) {
  return std::visit(
      [&](const auto& b) -> bool {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, body::Cap>) {
          return b.axis.dot(x) >= std::cos(b.radius);
        } else if constexpr (std::is_same_v<T, body::Band>) {
          double rest = x.squaredNorm() - x(b.time_axis) * x(b.time_axis);
          return x(b.time_axis) * x(b.time_axis) <=
                 std::tan(b.theta) * std::tan(b.theta) * rest;
        } else if constexpr (std::is_same_v<T, body::Equator>) {
          return std::abs(x(b.axis)) < 1e-9;
        } else {
          return body::cone_contains(b, x);
        }
      },
      bdy);
}

namespace {

// Icosphere triangulation cache, one per subdivision level.
struct IcoMesh {
  std::vector<Eigen::Vector3d> verts;
  std::vector<std::array<int, 3>> faces;
  std::vector<std::array<int, 2>> edges;
};

IcoMesh build_icosphere(int level) {
  IcoMesh mesh;
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Eigen::Vector3d> v = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : v) p.normalize();
  std::vector<std::array<int, 3>> f = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Eigen::Vector3d m = (v[a] + v[b]).normalized();
      v.push_back(m);
      int idx = static_cast<int>(v.size()) - 1;
      midpoint[key] = idx;
      return idx;
    };
    std::vector<std::array<int, 3>> nf;
    nf.reserve(4 * f.size());
    for (auto [a, b, c] : f) {
      int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
      nf.push_back({a, ab, ca});
      nf.push_back({b, bc, ab});
      nf.push_back({c, ca, bc});
      nf.push_back({ab, bc, ca});
    }
    f = std::move(nf);
  }
  mesh.verts = std::move(v);
  mesh.faces = std::move(f);
  std::map<std::pair<int, int>, bool> seen;
  for (auto [a, b, c] : mesh.faces)
    for (auto [x, y] : {std::pair{a, b}, {b, c}, {c, a}}) {
      auto key = std::minmax(x, y);
      if (!seen.count(key)) {
        seen[key] = true;
        mesh.edges.push_back({key.first, key.second});
      }
    }
  return mesh;
}

const IcoMesh& icosphere() {
  static IcoMesh mesh = build_icosphere(5);  // 10242 verts, 20480 faces
  return mesh;
}

}  // namespace

int chi_brute_sphere(const body::SphereBody& bdy, const gr::Subspace& e) {
  const int m = e.dim();
  if (m == 1) {
    lin::VecD x = e.frame.col(0);
    return (sphere_body_contains(bdy, x) ? 1 : 0) +
           (sphere_body_contains(bdy, lin::VecD(-x)) ? 1 : 0);
  }
  if (m == 2) {
    const int grid = 8192;
    std::vector<bool> in(grid);
    for (int i = 0; i < grid; ++i) {
      double phi = 2.0 * kPi * i / grid;
      lin::VecD x = std::cos(phi) * e.frame.col(0) + std::sin(phi) * e.frame.col(1);
      in[i] = sphere_body_contains(bdy, x);
    }
    int arcs = 0;
    for (int i = 0; i < grid; ++i)
      if (in[i] && !in[(i + grid - 1) % grid]) ++arcs;
    if (arcs == 0) return 0;  // empty or the whole circle: chi = 0 either way
    return arcs;
  }
  if (m == 3) {
    const IcoMesh& mesh = icosphere();
    std::vector<bool> in(mesh.verts.size());
    for (size_t i = 0; i < mesh.verts.size(); ++i) {
      lin::VecD x = e.frame * lin::VecD(mesh.verts[i]);
      in[i] = sphere_body_contains(bdy, x);
    }
    long V = 0, E = 0, F = 0;
    for (size_t i = 0; i < in.size(); ++i) V += in[i];
    for (auto [a, b] : mesh.edges) E += in[a] && in[b];
    for (auto [a, b, c] : mesh.faces) F += in[a] && in[b] && in[c];
    return static_cast<int>(V - E + F);
  }
  throw std::invalid_argument("chi_brute_sphere: dim E must be 1, 2 or 3");
}

double ks_p_value(std::vector<double> samples, const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - (i + 1) / n));
    d = std::max(d, std::abs(f - i / n));
  }
  double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0.0;
  for (int j = 1; j <= 100; ++j)
    p += 2.0 * (j % 2 == 1 ? 1.0 : -1.0) * std::exp(-2.0 * j * j * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

double gamma_q(double a, double x) {
  // Regularized upper incomplete gamma via series / continued fraction.
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // lower series
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - gln);
    return 1.0 - p;
  }
  // Lentz continued fraction for the upper tail.
  double b = x + 1.0 - a, c = 1e308, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < 1e-300) d = 1e-300;
    c = b + an / c;
    if (std::abs(c) < 1e-300) c = 1e-300;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}

double chi2_uniform_p_value(const std::vector<double>& samples, double lo, double hi,
                            int bins) {
  std::vector<long> counts(bins, 0);
  for (double s : samples) {
    int b = static_cast<int>((s - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++counts[b];
  }
  double expected = static_cast<double>(samples.size()) / bins;
  double t = 0.0;
  for (long c : counts) t += (c - expected) * (c - expected) / expected;
  return gamma_q(0.5 * (bins - 1), 0.5 * t);
}

namespace {

// Composite Simpson on [a, b].
cplx simpson(const std::function<cplx(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  cplx sum = f(a) + f(b);
  for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * (h / 3.0);
}

}  // namespace

cplx pairing_abs_power(cplx lambda) {
  if (lambda.real() <= -3.0)
    throw std::domain_error("pairing_abs_power: valid for Re(lambda) > -3 only");
  // int |x|^l e^{-x^2} dx = 2 int_0^1 x^l (e^{-x^2} - 1) dx + 2/(l+1)
  //                        + 2 int_1^6 x^l e^{-x^2} dx
  auto near = [&](double x) {
    return 2.0 * std::pow(cplx(x, 0.0), lambda) * (std::exp(-x * x) - 1.0);
  };
  auto far = [&](double x) {
    return 2.0 * std::pow(cplx(x, 0.0), lambda) * std::exp(-x * x);
  };
  return simpson(near, 1e-12, 1.0, 4000) + 2.0 / (lambda + 1.0) +
         simpson(far, 1.0, 6.0, 2000);
}

cplx pairing_residue(double s, double radius, int points) {
  KahanSumC sum;
  for (int j = 0; j < points; ++j) {
    double th = 2.0 * kPi * j / points;
    cplx z = radius * std::exp(cplx(0.0, th));
    sum.add(pairing_abs_power(cplx(s, 0.0) + z) * z);
  }
  return sum.value() / static_cast<double>(points);
}

}  // namespace crofton::oracle
