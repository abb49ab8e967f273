#include "weylchar/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "weylchar/error.hpp"
#include "weylchar/parallel.hpp"

namespace weylchar {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kImagTolerance = 1e-8;
constexpr int kReunitarizeEvery = 16;

UnitaryMatrix polar(const UnitaryMatrix& m) {
  Eigen::JacobiSVD<UnitaryMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the stream position (seed, sample, letter).
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t letter) {
  std::uint64_t x = splitmix(splitmix(seed) ^ sample);
  x = splitmix(x ^ (letter * 0xD1B54A32D192ED03ULL));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

void require_type_a(const RootSystem& rs, const GeneratorSet& S) {
  if (rs.spec().family != Family::A) {
    fail(ErrorKind::Domain, "spectral moments use the defining representation of SU(N) (type A)", "group");
  }
  if (S.dimension() != rs.ambient_dim()) {
    fail(ErrorKind::Domain,
         "generators are " + std::to_string(S.dimension()) + "x" + std::to_string(S.dimension()) +
             " but " + rs.name() + " needs " + std::to_string(rs.ambient_dim()),
         "gens");
  }
}

std::vector<double> nu_of(const GeneratorSet& S) {
  if (S.weights.empty()) return std::vector<double>(S.size(), 1.0 / static_cast<double>(S.size()));
  return S.weights;
}

double normalized_character(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                            double dim, const UnitaryMatrix& g, double* imag) {
  TorusPoint h = conjugacy_phases(g);
  CharacterValue v = character(rs, W, lambda, h, 1);
  *imag = v.value.imag() / dim;
  return v.value.real() / dim;
}

}  // namespace

bool GeneratorSet::uniform() const {
  if (weights.empty()) return true;
  for (double w : weights) {
    if (std::fabs(w - weights[0]) > 1e-15) return false;
  }
  return true;
}

void GeneratorSet::validate() const {
  if (elements.empty()) fail(ErrorKind::Config, "generator set is empty", "gens");
  if (labels.size() != elements.size()) fail(ErrorKind::Config, "one label per generator required", "gens");
  const auto n = elements[0].rows();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& g = elements[i];
    if (g.rows() != n || g.cols() != n) fail(ErrorKind::Config, "generators must be square of equal size", "gens");
    const double unit = (g.adjoint() * g - UnitaryMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (unit > kUnitaryTolerance) {
      fail(ErrorKind::Domain, "generator " + labels[i] + " is not unitary (defect " + std::to_string(unit) + ")", "gens");
    }
    if (std::abs(g.determinant() - std::complex<double>(1.0)) > kUnitaryTolerance) {
      fail(ErrorKind::Domain, "generator " + labels[i] + " does not have determinant 1", "gens");
    }
  }
  if (!weights.empty()) {
    if (weights.size() != elements.size()) fail(ErrorKind::Config, "one weight per generator required", "gens");
    double total = 0;
    for (double w : weights) {
      if (!(w >= 0)) fail(ErrorKind::Config, "weights must be nonnegative", "gens");
      total += w;
    }
    if (std::fabs(total - 1) > 1e-12) fail(ErrorKind::Config, "weights must sum to 1", "gens");
  }
  if (symmetric) {
    for (std::size_t i = 0; i < elements.size(); ++i) {
      const UnitaryMatrix inv = elements[i].adjoint();
      bool found = false;
      for (const auto& h : elements) {
        if ((h - inv).cwiseAbs().maxCoeff() <= kUnitaryTolerance) {
          found = true;
          break;
        }
      }
      if (!found) fail(ErrorKind::Domain, "set marked symmetric lacks the inverse of " + labels[i], "gens");
    }
  }
}

GeneratorSet GeneratorSet::from_json(const nlohmann::json& j) {
  GeneratorSet S;
  try {
    for (const auto& m : j.at("elements")) {
      const auto rows = static_cast<Eigen::Index>(m.size());
      UnitaryMatrix g(rows, rows);
      for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = m.at(r);
        if (static_cast<Eigen::Index>(row.size()) != rows) fail(ErrorKind::Config, "generator matrix is not square", "gens");
        for (Eigen::Index c = 0; c < rows; ++c) {
          g(r, c) = {row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>()};
        }
      }
      S.elements.push_back(g);
    }
    if (j.contains("labels")) {
      S.labels = j.at("labels").get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < S.elements.size(); ++i) S.labels.push_back("g" + std::to_string(i));
    }
    S.symmetric = j.value("symmetric", true);
    if (j.contains("weights")) S.weights = j.at("weights").get<std::vector<double>>();
    S.provenance = j.value("provenance", std::string{});
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Config, std::string("malformed generator file: ") + e.what(), "gens");
  }
  S.validate();
  return S;
}

nlohmann::json GeneratorSet::to_json() const {
  nlohmann::json j;
  j["labels"] = labels;
  j["symmetric"] = symmetric;
  if (!weights.empty()) j["weights"] = weights;
  if (!provenance.empty()) j["provenance"] = provenance;
  nlohmann::json els = nlohmann::json::array();
  for (const auto& g : elements) {
    nlohmann::json m = nlohmann::json::array();
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back({g(r, c).real() + 0.0, g(r, c).imag() + 0.0});
      m.push_back(row);
    }
    els.push_back(m);
  }
  j["elements"] = els;
  return j;
}

GeneratorSet catalog_free_pair() {
  const double s = 1.0 / std::sqrt(5.0);
  using C = std::complex<double>;
  auto quaternion = [](double a, double b, double c, double d) {
    UnitaryMatrix g(2, 2);
    g << C(a, b), C(c, d), C(-c, d), C(a, -b);
    return g;
  };
  GeneratorSet S;
  S.elements = {quaternion(s, 2 * s, 0, 0), quaternion(s, -2 * s, 0, 0), quaternion(s, 0, 2 * s, 0),
                quaternion(s, 0, -2 * s, 0)};
  S.labels = {"a", "A", "b", "B"};
  S.symmetric = true;
  S.provenance = "free: asserted";
  return S;
}

TorusPoint conjugacy_phases(const UnitaryMatrix& g) {
  const auto n = g.rows();
  if (g.cols() != n || n == 0) fail(ErrorKind::Domain, "matrix is not square", "matrix");
  const double unit = (g.adjoint() * g - UnitaryMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (unit > kUnitaryTolerance) {
    fail(ErrorKind::Domain, "matrix is not unitary (defect " + std::to_string(unit) + ")", "matrix");
  }
  // Schur form of a normal matrix is diagonal.
  Eigen::ComplexSchur<UnitaryMatrix> schur(g, false);
  std::vector<double> phases(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = std::arg(schur.matrixT()(i, i));
    if (p <= -std::numbers::pi) p += 2 * std::numbers::pi;
    phases[static_cast<std::size_t>(i)] = p;
  }
  std::sort(phases.begin(), phases.end(), std::greater<>());
  double sum = std::accumulate(phases.begin(), phases.end(), 0.0);
  const long k = std::lround(sum / (2 * std::numbers::pi));
  if (k > 0) {
    for (long t = 0; t < k; ++t) phases[static_cast<std::size_t>(t)] -= 2 * std::numbers::pi;
  } else if (k < 0) {
    for (long t = 0; t < -k; ++t) phases[phases.size() - 1 - static_cast<std::size_t>(t)] += 2 * std::numbers::pi;
  }
  if (k != 0) std::sort(phases.begin(), phases.end(), std::greater<>());
  sum = std::accumulate(phases.begin(), phases.end(), 0.0);
  for (auto& p : phases) p -= sum / static_cast<double>(n);
  return TorusPoint::floating(phases);
}

MomentValue moment_exact(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                         const GeneratorSet& S, int m, std::uint64_t word_cap, int threads) {
  if (m < 0) fail(ErrorKind::Config, "moment order must be nonnegative", "moments");
  require_type_a(rs, S);
  MomentValue out;
  out.m = m;
  if (m == 0) {
    out.value = 1.0;
    return out;
  }
  const std::size_t s = S.size();
  long double words = 1;
  for (int i = 0; i < m; ++i) words *= static_cast<long double>(s);
  if (words > static_cast<long double>(word_cap)) {
    fail(ErrorKind::Capacity,
         std::to_string(s) + "^" + std::to_string(m) + " words exceed the cap " + std::to_string(word_cap) +
             "; use moment_sampled",
         "moments");
  }
  const std::size_t total = static_cast<std::size_t>(words);
  const double dim = dim_irrep(rs, lambda).get_d();
  const auto nu = nu_of(S);
  // Enumeration order: generators sorted by label.
  std::vector<std::size_t> order(s);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return S.labels[a] < S.labels[b]; });

  std::vector<double> re(total), im(total);
  // Each task owns the words with a fixed first letter.
  parallel_for(s, threads, [&](std::size_t first, int) {
    const std::size_t block = total / s;
    std::vector<UnitaryMatrix> prefix(static_cast<std::size_t>(m) + 1);
    std::vector<double> weight(static_cast<std::size_t>(m) + 1);
    std::vector<std::size_t> digits(static_cast<std::size_t>(m), 0);
    const auto n = static_cast<Eigen::Index>(S.dimension());
    prefix[0] = UnitaryMatrix::Identity(n, n);
    weight[0] = 1.0;
    digits[0] = first;
    for (std::size_t w = 0; w < block; ++w) {
      // Digits 1..m-1 of w in base s; recompute prefixes from the first changed one.
      std::size_t rem = w;
      int changed = m;
      for (int d = m - 1; d >= 1; --d) {
        const std::size_t digit = rem % s;
        rem /= s;
        if (w == 0 || digits[static_cast<std::size_t>(d)] != digit) changed = d;
        digits[static_cast<std::size_t>(d)] = digit;
      }
      if (w == 0) changed = 0;
      for (int d = changed; d < m; ++d) {
        const std::size_t g = order[digits[static_cast<std::size_t>(d)]];
        UnitaryMatrix next = prefix[static_cast<std::size_t>(d)] * S.elements[g];
        if ((d + 1) % kReunitarizeEvery == 0) next = polar(next);
        prefix[static_cast<std::size_t>(d) + 1] = std::move(next);
        weight[static_cast<std::size_t>(d) + 1] = weight[static_cast<std::size_t>(d)] * nu[g];
      }
      double imag = 0;
      const double real = normalized_character(rs, W, lambda, dim, prefix[static_cast<std::size_t>(m)], &imag);
      const std::size_t index = first * block + w;
      re[index] = weight[static_cast<std::size_t>(m)] * real;
      im[index] = weight[static_cast<std::size_t>(m)] * imag;
    }
  });
  out.value = pairwise_sum(re);
  out.imag_residue = pairwise_sum(im);
  if (S.symmetric && std::fabs(out.imag_residue) > kImagTolerance) {
    fail(ErrorKind::Domain,
         "imaginary residue " + std::to_string(out.imag_residue) + " on a symmetric set exceeds 1e-8", "gens");
  }
  return out;
}

MomentValue moment_sampled(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                           const GeneratorSet& S, int m, std::uint64_t n_samples, std::uint64_t seed,
                           int threads) {
  if (m < 0) fail(ErrorKind::Config, "moment order must be nonnegative", "moments");
  if (n_samples < 100) fail(ErrorKind::Config, "sampling needs at least 100 samples", "samples");
  require_type_a(rs, S);
  MomentValue out;
  out.m = m;
  out.exact = false;
  if (m == 0) {
    out.value = 1.0;
    return out;
  }
  const double dim = dim_irrep(rs, lambda).get_d();
  const auto nu = nu_of(S);
  std::vector<double> cumulative(nu.size());
  std::partial_sum(nu.begin(), nu.end(), cumulative.begin());
  const auto n = static_cast<Eigen::Index>(S.dimension());
  std::vector<double> values(n_samples), imags(n_samples);
  const std::size_t chunks = std::min<std::size_t>(n_samples, 256);
  parallel_for(chunks, threads, [&](std::size_t c, int) {
    const std::uint64_t lo = n_samples * c / chunks, hi = n_samples * (c + 1) / chunks;
    for (std::uint64_t i = lo; i < hi; ++i) {
      UnitaryMatrix g = UnitaryMatrix::Identity(n, n);
      for (int t = 0; t < m; ++t) {
        const double u = counter_uniform(seed, i, static_cast<std::uint64_t>(t));
        std::size_t pick = static_cast<std::size_t>(
            std::upper_bound(cumulative.begin(), cumulative.end(), u * cumulative.back()) - cumulative.begin());
        pick = std::min(pick, nu.size() - 1);
        g = g * S.elements[pick];
        if ((t + 1) % kReunitarizeEvery == 0) g = polar(g);
      }
      values[i] = normalized_character(rs, W, lambda, dim, g, &imags[i]);
    }
  });
  const double N = static_cast<double>(n_samples);
  out.value = pairwise_sum(values) / N;
  out.imag_residue = pairwise_sum(imags) / N;
  std::vector<double> sq(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) sq[i] = (values[i] - out.value) * (values[i] - out.value);
  const double var = pairwise_sum(sq) / (N - 1);
  out.stderr_ = std::sqrt(var / N);
  return out;
}

Rational km_moment(std::int64_t s, int m) {
  if (s < 2) fail(ErrorKind::Domain, "Kesten-McKay law needs s >= 2", "s");
  if (m < 0) fail(ErrorKind::Domain, "moment order must be nonnegative", "moments");
  if (m % 2 == 1) return 0;
  std::vector<BigInt> count(static_cast<std::size_t>(m) + 2);
  count[0] = 1;
  const BigInt out(static_cast<long>(s)), on(static_cast<long>(s - 1));
  for (int step = 0; step < m; ++step) {
    std::vector<BigInt> next(count.size());
    for (std::size_t d = 0; d + 1 < count.size(); ++d) {
      if (sgn(count[d]) == 0) continue;
      if (d == 0) {
        next[1] += count[0] * out;
      } else {
        next[d - 1] += count[d];
        next[d + 1] += count[d] * on;
      }
    }
    count.swap(next);
  }
  BigInt denom;
  mpz_pow_ui(denom.get_mpz_t(), out.get_mpz_t(), static_cast<unsigned long>(m));
  Rational r(count[0], denom);
  r.canonicalize();
  return r;
}

double delta_opt(std::int64_t s) {
  if (s < 2) fail(ErrorKind::Domain, "delta_opt needs s >= 2", "s");
  return 2.0 * std::sqrt(static_cast<double>(s - 1)) / static_cast<double>(s);
}

double norm_estimate(const std::vector<double>& mu) {
  if (mu.size() < 3) fail(ErrorKind::Domain, "norm estimate needs moments up to order 2", "moments");
  if (!(mu[0] > 0)) fail(ErrorKind::Domain, "zeroth moment must be positive", "moments");
  const int M = static_cast<int>(mu.size()) - 1;
  // Chebyshev algorithm: sigma_{k,l} for l = k..M-k.
  std::vector<long double> a, b;
  std::vector<long double> prev(mu.size(), 0.0L), cur(mu.begin(), mu.end());
  a.push_back(static_cast<long double>(mu[1]) / mu[0]);
  b.push_back(mu[0]);
  bool breakdown = false;
  for (int k = 1; 2 * k <= M; ++k) {
    std::vector<long double> next(mu.size(), 0.0L);
    for (int l = k; l <= M - k; ++l) {
      next[l] = cur[l + 1] - a[k - 1] * cur[l] - b[k - 1] * prev[l];
    }
    const long double bk = next[k] / cur[k - 1];
    if (!(bk > 1e-14L * std::max<long double>(1, b.back()))) {
      breakdown = true;
      break;
    }
    b.push_back(bk);
    if (2 * k + 1 <= M) {
      a.push_back(next[k + 1] / next[k] - cur[k] / cur[k - 1]);
    }
    prev.swap(cur);
    cur.swap(next);
  }
  const std::size_t K = a.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  for (std::size_t i = 0; i < K; ++i) {
    J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = static_cast<double>(a[i]);
    if (i + 1 < K) {
      const double off = std::sqrt(static_cast<double>(b[i + 1]));
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i) + 1) = off;
      J(static_cast<Eigen::Index>(i) + 1, static_cast<Eigen::Index>(i)) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J, Eigen::EigenvaluesOnly);
  double est = eig.eigenvalues().cwiseAbs().maxCoeff();
  // Even-moment root: a lower bound for the radius of any symmetric measure.
  const int even = M - (M % 2);
  if (mu[even] > 0) est = std::max(est, std::pow(mu[even] / mu[0], 1.0 / even));
  if (!breakdown && b.size() >= 3) {
    const double edge = std::fabs(static_cast<double>(a.back())) + 2 * std::sqrt(static_cast<double>(b.back()));
    est = std::max(est, edge);
  }
  return std::clamp(est, 0.0, 1.0);
}

double norm_estimate(const SpectrumEstimate& e) {
  std::vector<double> mu;
  for (const auto& m : e.moments) mu.push_back(m.value);
  return norm_estimate(mu);
}

SpectrumEstimate spectrum_estimate(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                                   const GeneratorSet& S, int max_m, std::uint64_t word_cap,
                                   std::uint64_t n_samples, std::uint64_t seed, int threads) {
  if (max_m < 2) fail(ErrorKind::Config, "need moments up to order at least 2", "moments");
  S.validate();
  SpectrumEstimate e;
  e.lambda = lambda;
  e.s = S.size();
  for (int m = 0; m <= max_m; ++m) {
    long double words = std::pow(static_cast<long double>(S.size()), m);
    if (words <= static_cast<long double>(word_cap)) {
      e.moments.push_back(moment_exact(rs, W, lambda, S, m, word_cap, threads));
    } else if (n_samples > 0) {
      e.moments.push_back(moment_sampled(rs, W, lambda, S, m, n_samples, seed, threads));
    } else {
      fail(ErrorKind::Capacity,
           "moment " + std::to_string(m) + " needs more than " + std::to_string(word_cap) +
               " words; pass a sample count and seed",
           "moments");
    }
    e.km_reference.push_back(km_moment(static_cast<std::int64_t>(S.size()), m));
  }
  if (!S.uniform()) e.warnings.push_back("non-uniform weights: the Kesten-McKay comparison assumes uniform nu");
  if (!S.symmetric) e.warnings.push_back("non-symmetric set: the Kesten-McKay comparison assumes a symmetric set");
  e.norm_estimate = norm_estimate(e);
  return e;
}

}  // namespace weylchar
