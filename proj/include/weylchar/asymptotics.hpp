#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weylchar/charcalc.hpp"

namespace weylchar {

/// Weights k * base for k in schedule, or an explicit list.
struct WeightPath {
  Dynkin base;
  std::vector<std::int64_t> schedule;
  std::vector<Dynkin> explicit_weights;

  static WeightPath multiples(Dynkin base, std::int64_t k_min, std::int64_t k_max);
  std::vector<Dynkin> weights() const;
};

struct DecayEntry {
  std::int64_t k = 0;  // 0 for explicit weights
  Dynkin weight;
  BigInt dim;
  std::complex<double> character;
  double ratio = 0.0;  // |chi| / dim
  double norm = 0.0;   // |weight|_inf (ambient max-abs)
  double shifted_norm = 0.0;  // |weight + rho|_inf
  double bound = 0.0;  // bound_constant / norm
};

struct DecayReport {
  std::vector<DecayEntry> entries;
  double fitted_slope = 0.0;
  /// max ratio * |weight + rho|_inf over the first half of the entries.
  double bound_constant = 0.0;
  /// Every entry satisfies ratio <= bound_constant / |weight|_inf.
  bool envelope_holds = true;
  /// Non-degenerate positive roots not orthogonal to the base weight.
  std::size_t decay_roots = 0;
  std::size_t degenerate_roots = 0;
  /// Set when every root is degenerate (central point): the ratio is constant 1.
  bool central = false;
  bool slope_valid = false;
};

/// |chi_{k lambda0}(h0)| / dim along the path.
DecayReport normalized_char_sweep(const RootSystem& rs, const WeylGroup& W, const WeightPath& path,
                                  const TorusPoint& h0, int threads = 1);

/// Least-squares slope of log ratio against log |k lambda0 + rho|_inf (which
/// is log(k + 1) up to a constant for lambda0 = rho) over the last half of a
/// k-schedule. NaN when some ratio in that half is exactly zero. Throws
/// Error(Domain) for fewer than 5 entries.
double decay_exponent(const DecayReport& report);

/// Max-abs ambient norm of a Dynkin-label weight.
double weight_inf_norm(const RootSystem& rs, const Dynkin& mu);

/// Number of roots in ndeg with (lambda0 | alpha) != 0.
std::size_t decay_root_count(const RootSystem& rs, const DegenerateSplit& split, const Dynkin& lambda0);

struct DivergenceCertificate {
  std::size_t root = 0;  // index into positive_roots()
  WeightVec root_vector;
  /// (lambda0 | alpha), the growth coefficient of (k lambda0 + rho | alpha).
  Rational pairing;
  Rational rho_pairing;
  /// "direct", "chain" or "search".
  std::string construction;
  /// Dynkin chain (0-based simple-root indices) when construction == "chain".
  std::vector<int> chain;

  Rational growth_at(std::int64_t k) const { return Rational(static_cast<long>(k)) * pairing + rho_pairing; }
};

/// A non-degenerate positive root with (lambda0 | alpha) != 0, found directly
/// among simple roots, else by a shortest Dynkin chain from a simple root in
/// the support of lambda0 to a non-degenerate simple root.
DivergenceCertificate divergence_certificate(const RootSystem& rs, const DegenerateSplit& split,
                                             const Dynkin& lambda0);

/// Product-group harness. The carrier factor carries g and the trivial
/// representation; every other factor carries k (2 rho) at the identity, so
/// chi / dim = 1 exactly while the dimension grows. With grow_all the carrier
/// also carries k (2 rho) and the ratio decays.
DecayReport nonsimple_counterexample(const std::vector<RootSystem>& factors, std::size_t carrier,
                                     const TorusPoint& g, std::int64_t k_max, bool grow_all = false);

/// Exact point in the open face of the fundamental alcove where exactly the
/// simple roots in J (0-based) vanish.
TorusPoint stratum_representative(const RootSystem& rs, const std::vector<int>& J);

struct Stratum {
  std::vector<int> simple_roots;
  TorusPoint point;
};

/// One representative per proper nonempty subset of simple roots.
std::vector<Stratum> singular_strata(const RootSystem& rs);

}  // namespace weylchar
