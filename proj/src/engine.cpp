#include "crofton/engine.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace crofton::mc {

namespace {

constexpr long kBlock = 16384;

cplx i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

int resolve_workers(const McOptions& opts) {
  if (opts.workers > 0) return opts.workers;
  if (const char* env = std::getenv("CROFTON_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Closed-form eigenvalues for the 1x1/2x2 hot path, Eigen elsewhere.
void sym_eigs(const lin::MatD& m, lin::VecD& out) {
  const int n = static_cast<int>(m.rows());
  out.resize(n);
  if (n == 1) {
    out(0) = m(0, 0);
  } else if (n == 2) {
    double half_tr = 0.5 * (m(0, 0) + m(1, 1));
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double disc = std::sqrt(std::max(0.0, half_tr * half_tr - det));
    out(0) = half_tr - disc;
    out(1) = half_tr + disc;
  } else if (n == 3) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
    es.computeDirect(Eigen::Matrix3d(m), Eigen::EigenvaluesOnly);
    out = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<lin::MatD> es(m, Eigen::EigenvaluesOnly);
    out = es.eigenvalues();
  }
}

struct Sample {
  lin::VecD mu;      // eigenvalues of the restricted form
  int chi = 0;
  bool generic = true;
  double aux = 1.0;  // lebesgue factor in the flat case
};

// One Monte Carlo job: a per-sample drawer, a per-zeta weight from the
// eigenvalues, and optional gap stratification (sphere runs only).
struct Job {
  std::function<void(rng::Stream&, Sample&)> draw;
  std::function<cplx(const lin::VecD&, int)> weight;  // (mu, zeta index)
  int n_zeta = 1;
  std::vector<double> singular_guard;  // real 2*zeta values to keep away from -mu
  int n_strata = 1;
  double low_gap_boost = 1.0;
  std::vector<double> bounds;  // stratum boundaries on the gap (n_strata - 1)
};

struct BlockData {
  std::vector<cplx> sum;        // per zeta
  std::vector<double> re2, im2; // per zeta
  long n_acc = 0;
  long flagged = 0;
  long rejected = 0;
  long draws = 0;
  std::vector<long> landings;
};

int stratum_of(double gap, const std::vector<double>& bounds) {
  int s = 0;
  while (s < static_cast<int>(bounds.size()) && gap >= bounds[s]) ++s;
  return s;
}

BlockData process_block(const Job& job, uint64_t seed, long block_index, long block_len,
                        int want_stratum) {
  rng::Stream stream(seed, static_cast<uint64_t>(block_index));
  BlockData out;
  out.sum.assign(job.n_zeta, cplx{});
  out.re2.assign(job.n_zeta, 0.0);
  out.im2.assign(job.n_zeta, 0.0);
  out.landings.assign(job.n_strata, 0);
  std::vector<KahanSumC> sums(job.n_zeta);
  std::vector<KahanSum> re2(job.n_zeta), im2(job.n_zeta);

  Sample s;
  for (long i = 0; i < block_len; ++i) {
    // Draw within the block's stratum; count every landing for p-hat.
    for (long tries = 0;; ++tries) {
      if (tries > 100000)
        throw std::runtime_error("stratified sampler: stratum appears empty");
      job.draw(stream, s);
      ++out.draws;
      bool singular = false;
      for (double two_zeta : job.singular_guard)
        for (Eigen::Index j = 0; j < s.mu.size(); ++j)
          if (std::abs(s.mu(j) + two_zeta) < 1e-14) singular = true;
      if (singular) {
        ++out.rejected;
        continue;
      }
      if (job.n_strata == 1) break;
      int t = stratum_of(s.mu.cwiseAbs().minCoeff(), job.bounds);
      ++out.landings[t];
      if (t == want_stratum) break;
    }
    if (!s.generic) {
      ++out.flagged;
      continue;
    }
    for (int j = 0; j < job.n_zeta; ++j) {
      cplx f = static_cast<double>(s.chi) * job.weight(s.mu, j) * s.aux;
      sums[j].add(f);
      re2[j].add(f.real() * f.real());
      im2[j].add(f.imag() * f.imag());
    }
    ++out.n_acc;
  }
  for (int j = 0; j < job.n_zeta; ++j) {
    out.sum[j] = sums[j].value();
    out.re2[j] = re2[j].value();
    out.im2[j] = im2[j].value();
  }
  return out;
}

// Pairwise fixed-order reduction of block partials; identical for any worker
// count and any completion order.
template <typename T, typename Combine>
T pairwise_reduce(std::vector<T>& v, Combine comb) {
  size_t n = v.size();
  while (n > 1) {
    size_t half = (n + 1) / 2;
    for (size_t i = 0; i + half < n; ++i) comb(v[i], v[i + half]);
    n = half;
  }
  return v[0];
}

struct RunResult {
  std::vector<CroftonEstimate> per_zeta;
};

RunResult run_blocks(const Job& job, long n_samples, uint64_t seed,
                     const McOptions& opts) {
  if (n_samples < 1) throw std::invalid_argument("run_blocks: need n_samples >= 1");
  const int ns = job.n_strata;

  // Block layout: per stratum, blocks of kBlock samples; proportional
  // allocation with the boost already folded into the target fractions.
  std::vector<double> frac(ns, 1.0);
  if (ns > 1) {
    frac.assign(ns, 1.0);
    frac[0] = job.low_gap_boost;
    double tot = 0.0;
    for (double f : frac) tot += f;
    for (double& f : frac) f /= tot;
  } else {
    frac[0] = 1.0;
  }

  std::vector<long> stratum_samples(ns);
  long assigned = 0;
  for (int s = 0; s < ns; ++s) {
    stratum_samples[s] = std::max<long>(1, static_cast<long>(frac[s] * n_samples));
    assigned += stratum_samples[s];
  }
  stratum_samples[ns - 1] += n_samples - assigned;  // absorb rounding

  struct BlockSpec {
    long len;
    int stratum;
    int group;
  };
  std::vector<BlockSpec> blocks;
  int n_groups = 1 << 30;
  for (int s = 0; s < ns; ++s) {
    long remaining = stratum_samples[s];
    long b_in_stratum = (remaining + kBlock - 1) / kBlock;
    n_groups = std::min<int>(n_groups, static_cast<int>(b_in_stratum));
    long idx = 0;
    while (remaining > 0) {
      long len = std::min(remaining, kBlock);
      blocks.push_back({len, s, static_cast<int>(idx)});
      remaining -= len;
      ++idx;
    }
  }
  n_groups = std::min(n_groups, 64);
  for (auto& b : blocks) b.group %= n_groups;

  const long n_blocks = static_cast<long>(blocks.size());
  std::vector<BlockData> results(n_blocks);
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      long b = next.fetch_add(1);
      if (b >= n_blocks || failed.load()) break;
      try {
        results[b] = process_block(job, seed, b, blocks[b].len, blocks[b].stratum);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed.store(true);
        error_message = e.what();
      }
    }
  };
  int n_workers = std::min<long>(resolve_workers(opts), n_blocks);
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error(error_message);

  // Stratum probabilities from all landings.
  std::vector<double> p_hat(ns, 1.0);
  if (ns > 1) {
    std::vector<double> landed(ns, 0.0);
    double draws = 0.0;
    for (const auto& r : results) {
      draws += static_cast<double>(r.draws);
      for (int s = 0; s < ns; ++s) landed[s] += static_cast<double>(r.landings[s]);
    }
    for (int s = 0; s < ns; ++s) p_hat[s] = landed[s] / draws;
  }

  RunResult run;
  run.per_zeta.resize(job.n_zeta);
  for (int j = 0; j < job.n_zeta; ++j) {
    CroftonEstimate est;

    // Per-stratum totals via fixed-order pairwise reduction.
    struct Partial {
      cplx sum{};
      double re2 = 0.0, im2 = 0.0;
      double n = 0.0;
    };
    cplx value{};
    double var_total = 0.0;
    bool moments_ok = true;
    for (int s = 0; s < ns; ++s) {
      std::vector<Partial> parts;
      for (long b = 0; b < n_blocks; ++b) {
        if (blocks[b].stratum != s) continue;
        parts.push_back({results[b].sum[j], results[b].re2[j], results[b].im2[j],
                         static_cast<double>(results[b].n_acc)});
      }
      Partial tot = pairwise_reduce(parts, [](Partial& a, const Partial& b) {
        a.sum += b.sum;
        a.re2 += b.re2;
        a.im2 += b.im2;
        a.n += b.n;
      });
      if (tot.n < 1) {
        moments_ok = false;
        continue;
      }
      cplx mean = tot.sum / tot.n;
      value += p_hat[s] * mean;
      double vr = std::max(0.0, tot.re2 / tot.n - mean.real() * mean.real());
      double vi = std::max(0.0, tot.im2 / tot.n - mean.imag() * mean.imag());
      var_total += p_hat[s] * p_hat[s] * std::max(vr, vi) / tot.n;
    }
    (void)moments_ok;
    est.value = value;

    // Group means: one stratified estimate per group, used for sweep
    // extrapolation and for the quoted standard error.
    est.group_means.assign(n_groups, cplx{});
    std::vector<cplx> gsum(n_groups, cplx{});
    std::vector<double> gn;
    for (int g = 0; g < n_groups; ++g) {
      cplx ge{};
      for (int s = 0; s < ns; ++s) {
        cplx sum{};
        double n = 0.0;
        for (long b = 0; b < n_blocks; ++b)
          if (blocks[b].stratum == s && blocks[b].group == g) {
            sum += results[b].sum[j];
            n += static_cast<double>(results[b].n_acc);
          }
        if (n > 0) ge += p_hat[s] * (sum / n);
      }
      est.group_means[g] = ge;
    }
    if (n_groups >= 8) {
      cplx gmean{};
      for (cplx g : est.group_means) gmean += g;
      gmean /= static_cast<double>(n_groups);
      double sr = 0.0, si = 0.0;
      for (cplx g : est.group_means) {
        sr += (g.real() - gmean.real()) * (g.real() - gmean.real());
        si += (g.imag() - gmean.imag()) * (g.imag() - gmean.imag());
      }
      est.se_re = std::sqrt(sr / (n_groups * (n_groups - 1.0)));
      est.se_im = std::sqrt(si / (n_groups * (n_groups - 1.0)));
    } else {
      est.se_re = est.se_im = std::sqrt(var_total);
    }
    est.stderr_ = std::max(est.se_re, est.se_im);

    for (const auto& r : results) {
      est.samples += r.n_acc;
      est.flagged += r.flagged;
      est.rejected += r.rejected;
    }
    run.per_zeta[j] = std::move(est);
  }
  return run;
}

// Pilot pass for stratification boundaries: gap quantiles from dedicated
// substreams past the main block range.
std::vector<double> pilot_gap_bounds(const std::function<void(rng::Stream&, Sample&)>& draw,
                                     uint64_t seed, int n_strata) {
  const long pilot = 65536;
  std::vector<double> gaps;
  gaps.reserve(pilot);
  rng::Stream stream(seed ^ 0x5352415455ULL, 1u << 30);
  Sample s;
  for (long i = 0; i < pilot; ++i) {
    draw(stream, s);
    gaps.push_back(s.mu.cwiseAbs().minCoeff());
  }
  std::sort(gaps.begin(), gaps.end());
  std::vector<double> bounds;
  for (int s2 = 1; s2 < n_strata; ++s2)
    bounds.push_back(gaps[gaps.size() * s2 / n_strata]);
  return bounds;
}

struct SphereRun {
  lin::QuadraticSpace space;
  const body::SphereBody* bdy;  // nullptr: chi == 1
  int k;
};

RunResult run_sphere(const SphereRun& sr, const std::vector<cplx>& zetas, long n_samples,
                     uint64_t seed, const McOptions& opts) {
  const int d = sr.space.dim();
  const int m = d - sr.k;
  if (m < 1 || m >= d) throw std::invalid_argument("estimate_sphere: need 1 <= k <= n");
  for (cplx z : zetas)
    if (!lin::in_domain(z)) throw std::domain_error("estimate_sphere: zeta outside U_C");

  Job job;
  job.n_zeta = static_cast<int>(zetas.size());
  for (cplx z : zetas)
    if (z.imag() == 0.0) job.singular_guard.push_back(2.0 * z.real());

  // Prefactor logs depend only on zeta.
  std::vector<cplx> pref(zetas.size());
  std::vector<cplx> two_zeta(zetas.size());
  const cplx lambda(-0.5 * d, 0.0);
  for (size_t j = 0; j < zetas.size(); ++j) {
    pref[j] = 0.5 * sr.space.sig.p * m * log_upper(2.0 * zetas[j] + 1.0) +
              0.5 * sr.space.sig.q * m * log_upper(2.0 * zetas[j] - 1.0);
    two_zeta[j] = 2.0 * zetas[j];
  }
  job.weight = [pref, two_zeta, lambda](const lin::VecD& mu, int j) {
    cplx logw = pref[j];
    for (Eigen::Index i = 0; i < mu.size(); ++i)
      logw += lambda * log_upper(mu(i) + two_zeta[j]);
    return std::exp(logw);
  };

  const body::SphereBody* bdy = sr.bdy;
  lin::VecD qdiag = sr.space.q_diag;
  int mm = m, dd = d;
  job.draw = [bdy, qdiag, mm, dd](rng::Stream& stream, Sample& s) {
    gr::Subspace e = gr::sample_linear(dd, mm, stream);
    lin::MatD x0 = e.frame.transpose() * qdiag.asDiagonal() * e.frame;
    sym_eigs(x0, s.mu);
    s.aux = 1.0;
    if (bdy) {
      body::ChiValue cv = body::chi_sphere(*bdy, e);
      s.chi = cv.chi;
      s.generic = cv.generic;
    } else {
      s.chi = 1;
      s.generic = true;
    }
  };

  if (opts.stratified) {
    job.n_strata = opts.n_strata;
    job.low_gap_boost = opts.low_gap_boost;
    job.bounds = pilot_gap_bounds(job.draw, seed, opts.n_strata);
  }

  RunResult run = run_blocks(job, n_samples, seed, opts);
  for (size_t j = 0; j < zetas.size(); ++j) {
    run.per_zeta[j].zeta = zetas[j];
    run.per_zeta[j].epsilon = zetas[j].imag();
  }
  return run;
}

struct FlatRun {
  lin::QuadraticSpace space;
  const body::FlatBody* bdy;
  int k;
  double window;
};

RunResult run_flat(const FlatRun& fr, const std::vector<double>& eps_list, long n_samples,
                   uint64_t seed, const McOptions& opts) {
  const int d = fr.space.dim();
  const int m = d - fr.k;
  if (m < 1) throw std::invalid_argument("estimate_flat: need k <= p+q-1");
  for (double e : eps_list)
    if (e <= 0.0) throw std::domain_error("estimate_flat: eps must be positive");

  Job job;
  job.n_zeta = static_cast<int>(eps_list.size());
  const cplx lambda(-0.5 * (d + 1), 0.0);
  std::vector<double> eps = eps_list;
  job.weight = [eps, lambda](const lin::VecD& mu, int j) {
    cplx logw{};
    for (Eigen::Index i = 0; i < mu.size(); ++i)
      logw += lambda * log_upper(cplx(mu(i), 2.0 * eps[j]));
    return std::exp(logw);
  };

  const body::FlatBody* bdy = fr.bdy;
  lin::QuadraticSpace space = fr.space;
  int k = fr.k;
  double window = fr.window;
  job.draw = [bdy, space, k, window](rng::Stream& stream, Sample& s) {
    gr::AffineSample a = gr::sample_affine(space, k, window, stream);
    lin::MatD x0 = a.plane.direction.frame.transpose() * space.q_diag.asDiagonal() *
                   a.plane.direction.frame;
    sym_eigs(x0, s.mu);
    s.aux = a.lebesgue_factor;
    body::ChiValue cv = body::chi_flat(*bdy, a.plane);
    s.chi = cv.chi;
    s.generic = cv.generic;
  };

  RunResult run = run_blocks(job, n_samples, seed, opts);
  for (size_t j = 0; j < eps_list.size(); ++j) run.per_zeta[j].epsilon = eps_list[j];
  return run;
}

// Componentwise extrapolation to eps -> 0.  The last three points are fitted
// with L + a*eps + b*eps^{3/2} (the empirically observed ladder); components
// already converged below noise keep their final value.  All stages are
// linear in the data, so group means propagate to an honest standard error.
void extrapolate_sweep(SweepResult& sweep) {
  const int L = static_cast<int>(sweep.estimates.size());
  if (L < 3) {
    sweep.extrapolated = sweep.estimates.back().value;
    sweep.extrapolation_error = sweep.estimates.back().stderr_;
    return;
  }
  const auto& eps = sweep.epsilons;
  const int G = static_cast<int>(sweep.estimates.back().group_means.size());

  auto comp = [](cplx z, int c) { return c == 0 ? z.real() : z.imag(); };

  // Basis-fit weights over the last three points.
  auto fit_weights = [&](double power) {
    Eigen::Matrix3d a;
    for (int r = 0; r < 3; ++r) {
      double e = eps[L - 3 + r];
      a(r, 0) = 1.0;
      a(r, 1) = e;
      a(r, 2) = std::pow(e, power);
    }
    Eigen::Vector3d e0(1.0, 0.0, 0.0);
    Eigen::Vector3d w = a.transpose().colPivHouseholderQr().solve(e0);
    return w;
  };
  Eigen::Vector3d w_main = fit_weights(1.5);
  Eigen::Vector3d w_alt = fit_weights(2.0);

  double extrap[2], err[2], se[2];
  double order[2] = {1.0, 1.0};
  Eigen::Vector3d w_used[2];
  for (int c = 0; c < 2; ++c) {
    double v1 = comp(sweep.estimates[L - 3].value, c);
    double v2 = comp(sweep.estimates[L - 2].value, c);
    double v3 = comp(sweep.estimates[L - 1].value, c);
    double d1 = v2 - v1, d2 = v3 - v2;

    // Noise on d2 from group differences (common random numbers).
    double se_d2 = 0.0;
    if (G >= 8) {
      double mean = 0.0;
      std::vector<double> dg(G);
      for (int g = 0; g < G; ++g) {
        dg[g] = comp(sweep.estimates[L - 1].group_means[g], c) -
                comp(sweep.estimates[L - 2].group_means[g], c);
        mean += dg[g];
      }
      mean /= G;
      double s2 = 0.0;
      for (double x : dg) s2 += (x - mean) * (x - mean);
      se_d2 = std::sqrt(s2 / (G * (G - 1.0)));
    } else {
      se_d2 = sweep.estimates[L - 1].stderr_;
    }

    if (std::abs(d2) <= 3.0 * se_d2 || std::abs(d1) <= std::abs(d2)) {
      // Converged to noise level (or not decaying): keep the last value.
      w_used[c] = Eigen::Vector3d(0.0, 0.0, 1.0);
      extrap[c] = v3;
      err[c] = std::abs(d2);
    } else {
      w_used[c] = w_main;
      extrap[c] = w_main(0) * v1 + w_main(1) * v2 + w_main(2) * v3;
      double alt = w_alt(0) * v1 + w_alt(1) * v2 + w_alt(2) * v3;
      double rho = eps[L - 3] / eps[L - 2];
      double mhat = std::log(std::abs(d1) / std::abs(d2)) / std::log(rho);
      mhat = std::clamp(mhat, 0.3, 3.0);
      order[c] = mhat;
      double rho2 = eps[L - 2] / eps[L - 1];
      double rich = v3 + d2 / (std::pow(rho2, mhat) - 1.0);
      err[c] = std::max(std::abs(extrap[c] - alt), std::abs(extrap[c] - rich));
    }

    if (G >= 8) {
      std::vector<double> lg(G);
      double mean = 0.0;
      for (int g = 0; g < G; ++g) {
        lg[g] = 0.0;
        for (int r = 0; r < 3; ++r)
          lg[g] += w_used[c](r) * comp(sweep.estimates[L - 3 + r].group_means[g], c);
        mean += lg[g];
      }
      mean /= G;
      double s2 = 0.0;
      for (double x : lg) s2 += (x - mean) * (x - mean);
      se[c] = std::sqrt(s2 / (G * (G - 1.0)));
    } else {
      se[c] = sweep.estimates[L - 1].stderr_;
    }
  }

  sweep.extrapolated = cplx(extrap[0], extrap[1]);
  sweep.extrap_se_re = se[0];
  sweep.extrap_se_im = se[1];
  sweep.order_used =
      std::abs(comp(sweep.estimates[L - 1].value, 0) - extrap[0]) >
              std::abs(comp(sweep.estimates[L - 1].value, 1) - extrap[1])
          ? order[0]
          : order[1];

  // Non-monotone approach to the limit inflates the quoted error.
  sweep.monotone = true;
  double prev = std::abs(sweep.estimates[0].value - sweep.extrapolated);
  for (int i = 1; i < L; ++i) {
    double cur = std::abs(sweep.estimates[i].value - sweep.extrapolated);
    double slack = 2.0 * (sweep.estimates[i].stderr_ + sweep.estimates[i - 1].stderr_);
    if (cur > prev + slack) sweep.monotone = false;
    prev = cur;
  }
  double model_err = std::max(err[0], err[1]) + std::max(se[0], se[1]);
  if (!sweep.monotone) model_err *= 3.0;
  sweep.extrapolation_error = model_err;
}

}  // namespace

cplx normalization_prefactor(int k, double sigma) {
  cplx base = kPi * iv::omega(k - 1);
  if (sigma > 0) return base;
  if (sigma < 0) return base * i_pow(k);
  return base;
}

cplx flat_phase(const lin::Signature& sig, int k) {
  return i_pow(sig.q * (sig.p + sig.q + 1 - k));
}

double flat_calibration(int n, int k) {
  // The factorized affine sampler integrates chi * vol_k(window ball) with
  // P(hit unit ball) = R^{-k}; the Euclidean requirement Cr_k(B^n) = mu_k(B^n)
  // pins the constant.
  return iv::mu_ball_euclidean(n, k, 1.0) / (kPi * iv::omega(k - 1) * iv::omega(k));
}

CroftonEstimate estimate_sphere(const body::SpaceForm& form, const body::SphereBody& bdy,
                                int k, cplx zeta, long n_samples, uint64_t seed,
                                const McOptions& opts) {
  if (form.kind == body::SpaceForm::Kind::Flat)
    throw std::invalid_argument("estimate_sphere: flat space uses estimate_flat");
  SphereRun sr{lin::standard_form(form.ambient), &bdy, k};
  body::SphereBody projected = body::radial_project(bdy, form);
  sr.bdy = &projected;
  RunResult run = run_sphere(sr, {zeta}, n_samples, seed, opts);
  CroftonEstimate est = run.per_zeta[0];
  cplx pref = normalization_prefactor(k, form.curvature());
  est.value *= pref;
  est.se_re *= std::abs(pref);
  est.se_im *= std::abs(pref);
  est.stderr_ *= std::abs(pref);
  for (auto& g : est.group_means) g *= pref;
  return est;
}

CroftonEstimate weight_mean(const lin::QuadraticSpace& space, int k, cplx zeta,
                            long n_samples, uint64_t seed, const McOptions& opts) {
  SphereRun sr{space, nullptr, k};
  RunResult run = run_sphere(sr, {zeta}, n_samples, seed, opts);
  return run.per_zeta[0];
}

CroftonEstimate estimate_flat(const lin::QuadraticSpace& space, const body::FlatBody& bdy,
                              int k, double epsilon, long n_samples,
                              double window_radius, uint64_t seed,
                              const McOptions& opts) {
  double window = window_radius > 0.0 ? window_radius : 1.5 * body::circumradius(bdy);
  FlatRun fr{space, &bdy, k, window};
  RunResult run = run_flat(fr, {epsilon}, n_samples, seed, opts);
  CroftonEstimate est = run.per_zeta[0];
  cplx pref = kPi * iv::omega(k - 1) * flat_phase(space.sig, k) *
              flat_calibration(space.dim(), k);
  est.value *= pref;
  est.se_re *= std::abs(pref);
  est.se_im *= std::abs(pref);
  est.stderr_ *= std::abs(pref);
  for (auto& g : est.group_means) g *= pref;
  return est;
}

SweepResult epsilon_sweep_sphere(const body::SpaceForm& form, const body::SphereBody& bdy,
                                 int k, const std::vector<double>& eps_list,
                                 long n_samples, uint64_t seed, const McOptions& opts) {
  if (eps_list.size() < 3)
    throw std::invalid_argument("epsilon_sweep: need at least 3 eps values");
  for (size_t i = 1; i < eps_list.size(); ++i)
    if (eps_list[i] >= eps_list[i - 1])
      throw std::invalid_argument("epsilon_sweep: eps must strictly decrease");

  SphereRun sr{lin::standard_form(form.ambient), nullptr, k};
  body::SphereBody projected = body::radial_project(bdy, form);
  sr.bdy = &projected;
  std::vector<cplx> zetas;
  for (double e : eps_list) zetas.emplace_back(0.0, e);
  RunResult run = run_sphere(sr, zetas, n_samples, seed, opts);

  SweepResult sweep;
  sweep.epsilons = eps_list;
  cplx pref = normalization_prefactor(k, form.curvature());
  for (auto& est : run.per_zeta) {
    est.value *= pref;
    est.se_re *= std::abs(pref);
    est.se_im *= std::abs(pref);
    est.stderr_ *= std::abs(pref);
    for (auto& g : est.group_means) g *= pref;
    sweep.estimates.push_back(std::move(est));
  }
  extrapolate_sweep(sweep);
  return sweep;
}

SweepResult epsilon_sweep_flat(const lin::QuadraticSpace& space,
                               const body::FlatBody& bdy, int k,
                               const std::vector<double>& eps_list, long n_samples,
                               double window_radius, uint64_t seed,
                               const McOptions& opts) {
  if (eps_list.size() < 3)
    throw std::invalid_argument("epsilon_sweep: need at least 3 eps values");
  for (size_t i = 1; i < eps_list.size(); ++i)
    if (eps_list[i] >= eps_list[i - 1])
      throw std::invalid_argument("epsilon_sweep: eps must strictly decrease");

  double window = window_radius > 0.0 ? window_radius : 1.5 * body::circumradius(bdy);
  FlatRun fr{space, &bdy, k, window};
  RunResult run = run_flat(fr, eps_list, n_samples, seed, opts);

  SweepResult sweep;
  sweep.epsilons = eps_list;
  cplx pref = kPi * iv::omega(k - 1) * flat_phase(space.sig, k) *
              flat_calibration(space.dim(), k);
  for (auto& est : run.per_zeta) {
    est.value *= pref;
    est.se_re *= std::abs(pref);
    est.se_im *= std::abs(pref);
    est.stderr_ *= std::abs(pref);
    for (auto& g : est.group_means) g *= pref;
    sweep.estimates.push_back(std::move(est));
  }
  extrapolate_sweep(sweep);
  return sweep;
}

cplx rhs_prediction(const iv::MuVector& mu, int k, int n, double sigma) {
  iv::CoeffTable t = iv::crofton_coeffs(k, n, sigma);
  std::vector<int> missing;
  cplx out{};
  for (int j = 0; j < t.c.size(); ++j) {
    int idx = k + 2 * j;
    if (!mu.has(idx)) {
      missing.push_back(idx);
      continue;
    }
    out += t.c(j) * mu.values(idx);
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "rhs_prediction: missing mu entries:";
    for (int i : missing) os << ' ' << i;
    throw std::runtime_error(os.str());
  }
  return out;
}

}  // namespace crofton::mc
