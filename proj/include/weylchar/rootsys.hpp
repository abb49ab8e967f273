#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "weylchar/rational.hpp"
#include "weylchar/torus.hpp"

namespace weylchar {

enum class Family { A, B, C, D, E, F, G };

struct RootSystemSpec {
  Family family = Family::A;
  int rank = 1;

  /// "A2", "E6", ... Throws Error(Config) on unknown families.
  static RootSystemSpec parse(std::string_view name);
  std::string name() const;

  /// Rank bounds per family; D2 is accepted (it is flagged non-simple).
  bool valid() const;

  friend bool operator==(const RootSystemSpec&, const RootSystemSpec&) = default;
};

/// Classification counts used to validate constructions and caps: number of
/// positive roots and Weyl-group order (saturating).
std::uint64_t classification_root_count(const RootSystemSpec& spec);
std::uint64_t classification_weyl_order(const RootSystemSpec& spec);

/// Numerators of (fundamental weight | h) / pi over a common denominator, so
/// that (mu | h) / pi = (sum_j mu_j * numerators[j]) / denominator for any
/// weight mu given in Dynkin labels.
struct PiPairing {
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  /// Numerator of (mu | h) / pi; throws Error(Capacity) on int64 overflow.
  std::int64_t pair(const std::int64_t* mu) const;
  std::int64_t pair(const Dynkin& mu) const { return pair(mu.data()); }
};

struct DegenerateSplit {
  TorusPoint point;
  /// Indices into RootSystem::positive_roots().
  std::vector<std::size_t> deg;
  std::vector<std::size_t> ndeg;
  /// For exact points: (alpha | h) / (2 pi) for each entry of deg.
  std::vector<std::int64_t> windings;

  bool regular() const { return deg.empty(); }
};

/// Root system of a compact simple (or D2) Lie algebra with exact geometry.
///
/// Classical families use the L-basis realization (type A in the sum-zero
/// hyperplane of R^N with the trace form, B/C/D in R^n with the Euclidean
/// form). Exceptional families use the simple-root basis with the Gram
/// matrix induced by the Cartan matrix and long roots of norm 2.
class RootSystem {
 public:
  static RootSystem build(const RootSystemSpec& spec);

  const RootSystemSpec& spec() const { return spec_; }
  std::string name() const { return spec_.name(); }
  int rank() const { return spec_.rank; }
  std::size_t ambient_dim() const { return gram_.size(); }
  /// False for D2 (= A1 x A1).
  bool is_simple() const { return simple_; }

  const std::vector<WeightVec>& simple_roots() const { return simple_roots_; }
  const std::vector<WeightVec>& positive_roots() const { return positive_roots_; }
  std::size_t num_positive_roots() const { return positive_roots_.size(); }
  /// Cartan matrix with entries 2(alpha_i|alpha_j)/(alpha_j|alpha_j).
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<std::vector<Rational>>& gram() const { return gram_; }
  const WeightVec& weyl_vector() const { return rho_; }
  const std::vector<WeightVec>& fundamental_weights() const { return fundamental_; }

  /// Simple-root coefficients of positive root k.
  const std::vector<int>& root_coefficients(std::size_t k) const { return coeffs_[k]; }
  /// Simple-coroot coefficients of the coroot of positive root k.
  const std::vector<std::int64_t>& coroot_coefficients(std::size_t k) const {
    return coroot_coeffs_[k];
  }
  /// Dynkin labels of positive root k.
  const Dynkin& root_dynkin(std::size_t k) const { return root_dynkin_[k]; }
  const Rational& root_norm2(std::size_t k) const { return norm2_[k]; }
  /// Index of the simple root i inside positive_roots().
  std::size_t simple_root_index(int i) const { return simple_index_[i]; }
  std::optional<std::size_t> find_positive_root(const WeightVec& v) const;
  /// Index of the highest root.
  std::size_t highest_root() const { return positive_roots_.size() - 1; }

  Rational inner(const WeightVec& x, const WeightVec& y) const;
  void check_ambient(const WeightVec& x, const char* field = "weight") const;

  /// <mu, alpha_k^vee> for mu in Dynkin labels.
  std::int64_t coroot_pairing(const Dynkin& mu, std::size_t k) const;

  std::vector<Rational> dynkin_labels(const WeightVec& lambda) const;
  /// Integral Dynkin labels; throws Error(Domain) if lambda is not integral.
  Dynkin to_dynkin(const WeightVec& lambda) const;
  WeightVec from_dynkin(const Dynkin& labels) const;

  bool is_integral_weight(const WeightVec& lambda) const;
  bool is_dominant_integral(const WeightVec& lambda) const;
  /// Throws Error(Domain) naming `field` unless lambda is dominant integral.
  Dynkin require_dominant(const WeightVec& lambda, const char* field = "weight") const;

  /// (alpha_k | h) / pi for exact h.
  Rational root_pairing_over_pi(std::size_t k, const TorusPoint& h) const;
  double root_pairing(std::size_t k, const TorusPoint& h) const;
  PiPairing pi_pairing(const TorusPoint& h) const;
  std::vector<double> float_pairing(const TorusPoint& h) const;
  void check_point(const TorusPoint& h) const;

  /// Positive roots with (alpha | h) in 2 pi Z. Floating points use the
  /// snap tolerance.
  DegenerateSplit degenerate_split(const TorusPoint& h) const;

  /// Shortest chain of simple roots from i to j (0-based) in the Dynkin
  /// diagram, consecutive entries non-orthogonal. Throws Error(Structural)
  /// for non-simple systems.
  std::vector<int> dynkin_path(int i, int j) const;
  /// Sum of the simple roots on a Dynkin path; returns its positive-root index.
  std::size_t chain_sum_root(const std::vector<int>& chain) const;

  /// Apply the reflection in root `alpha` to x.
  WeightVec reflect(const WeightVec& alpha, const WeightVec& x) const;

  nlohmann::json to_json() const;

 private:
  RootSystemSpec spec_;
  bool simple_ = true;
  std::vector<std::vector<Rational>> gram_;
  bool euclidean_ = true;
  std::vector<WeightVec> simple_roots_;
  std::vector<WeightVec> positive_roots_;
  std::vector<std::vector<int>> coeffs_;
  std::vector<std::vector<std::int64_t>> coroot_coeffs_;
  std::vector<Dynkin> root_dynkin_;
  std::vector<Rational> norm2_;
  std::vector<std::size_t> simple_index_;
  std::vector<std::vector<int>> cartan_;
  WeightVec rho_;
  std::vector<WeightVec> fundamental_;
  std::vector<double> fundamental_double_;  // row-major rank x ambient, Gram applied
  std::map<WeightVec, std::size_t> root_lookup_;
};

/// Snap tolerance for floating torus points (radians).
inline constexpr double kSnapTolerance = 1e-9;
/// Largest denominator accepted by the snap's rational reconstruction.
inline constexpr std::int64_t kSnapMaxDenominator = 1'000'000;

}  // namespace weylchar
