#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "weylchar/charcalc.hpp"

namespace weylchar {

using UnitaryMatrix = Eigen::MatrixXcd;

/// Finite generator set in the defining representation of SU(N).
struct GeneratorSet {
  std::vector<UnitaryMatrix> elements;
  std::vector<std::string> labels;
  bool symmetric = true;
  /// Probability weights nu; empty means uniform.
  std::vector<double> weights;
  /// Catalog provenance, e.g. "free: asserted".
  std::string provenance;

  std::size_t size() const { return elements.size(); }
  std::size_t dimension() const { return elements.empty() ? 0 : static_cast<std::size_t>(elements[0].rows()); }
  bool uniform() const;

  /// Unitarity and det 1 within 1e-10; closure under inverses when symmetric.
  void validate() const;

  /// {"labels": [...], "elements": [[[ [re, im], ...], ...], ...],
  ///  "symmetric": bool, "weights": [...], "provenance": "..."}.
  static GeneratorSet from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Two free rotations of SU(2), the unit quaternions (1+2i)/sqrt5 and
/// (1+2j)/sqrt5, and their inverses: labels a, A, b, B.
GeneratorSet catalog_free_pair();

/// Eigenphases of g in (-pi, pi], sorted descending, shifted onto the
/// sum-zero hyperplane by moving the k = round(sum / 2 pi) largest phases
/// down by 2 pi.
TorusPoint conjugacy_phases(const UnitaryMatrix& g);

struct MomentValue {
  int m = 0;
  double value = 0.0;
  double stderr_ = 0.0;
  bool exact = true;
  double imag_residue = 0.0;
};

inline constexpr std::uint64_t kDefaultWordCap = 1'000'000;

/// sigma^(m) = sum over words nu(g_1)...nu(g_m) chi(g_1...g_m) / dim.
MomentValue moment_exact(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                         const GeneratorSet& S, int m, std::uint64_t word_cap = kDefaultWordCap,
                         int threads = 1);

/// Monte-Carlo estimate over n_samples random words; seed-reproducible.
MomentValue moment_sampled(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                           const GeneratorSet& S, int m, std::uint64_t n_samples, std::uint64_t seed,
                           int threads = 1);

/// Return probability of the simple random walk on the s-regular tree.
Rational km_moment(std::int64_t s, int m);

/// 2 sqrt(s - 1) / s.
double delta_opt(std::int64_t s);

struct SpectrumEstimate {
  std::vector<MomentValue> moments;  // indexed by m, starting at 0
  Dynkin lambda;
  std::size_t s = 0;
  std::vector<Rational> km_reference;
  double norm_estimate = 0.0;
  std::vector<std::string> warnings;
};

/// Spectral-radius estimate from moments mu_0..mu_M: recurrence coefficients
/// by the Chebyshev algorithm, then the larger of the extreme Gauss node and
/// |a_K| + 2 sqrt(b_K), clipped to [0, 1]. Exact on Kesten-McKay moments.
double norm_estimate(const std::vector<double>& moments);
double norm_estimate(const SpectrumEstimate& estimate);

/// Moments 0..max_m (exact enumeration under the word cap, sampling above
/// it when n_samples > 0) plus Kesten-McKay references.
SpectrumEstimate spectrum_estimate(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                                   const GeneratorSet& S, int max_m,
                                   std::uint64_t word_cap = kDefaultWordCap, std::uint64_t n_samples = 0,
                                   std::uint64_t seed = 0, int threads = 1);

}  // namespace weylchar
