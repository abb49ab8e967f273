#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylchar/rootsys.hpp"
#include "weylchar/weylgroup.hpp"

namespace weylchar {

struct CharacterValue {
  std::complex<double> value;
  /// Estimated absolute error bound.
  double condition = 0.0;
  /// Number of degenerate positive roots at the evaluation point.
  std::size_t degenerate_roots = 0;
  /// The exact point actually used (after snapping), if any.
  std::optional<TorusPoint> snapped;
};

/// Default cap on dim V for the weight-multiplicity oracle.
inline constexpr std::uint64_t kDefaultOracleCap = 100'000;

/// Weyl dimension formula; lambda must be dominant integral.
BigInt dim_irrep(const RootSystem& rs, const Dynkin& lambda);
BigInt dim_irrep(const RootSystem& rs, const WeightVec& lambda);

/// Weyl character formula at a regular point. Throws Error(Singular) if
/// some positive root pairs with h into 2 pi Z.
CharacterValue char_regular(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                            const TorusPoint& h, int threads = 1);

/// Character at an exact point through the stabilizer factorization
///   chi = sum_b sgn(b) e^{i(b^{-1} eta | h0)} prod_{deg} <b^{-1} eta, a^vee> / <rho_deg, a^vee>
///         / (prod_{deg} (-1)^{k_a} prod_{ndeg} 2i sin((a|h0)/2)),
/// b over minimal representatives of W / W(R_deg), eta = lambda + rho.
/// `transversal`, when given, replaces the minimal representatives.
CharacterValue char_singular(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                             const TorusPoint& h0, int threads = 1,
                             const std::vector<std::size_t>* transversal = nullptr);

/// Dispatch: floating points are snapped when singular and evaluated by the
/// floating Weyl formula otherwise; exact points go through char_singular.
CharacterValue character(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                         const TorusPoint& h, int threads = 1);

/// Floating point -> exact point on the same singular stratum; nullopt for
/// regular points. Throws Error(Snap) if the coordinates do not rationalize
/// within kSnapTolerance or the exact degenerate set differs.
std::optional<TorusPoint> snap_to_stratum(const RootSystem& rs, const TorusPoint& h);

struct SubsystemComponent {
  RootSystemSpec type;
  std::vector<WeightVec> simple_roots;
  std::vector<WeightVec> positive_roots;
  WeightVec rho;
  std::uint64_t weyl_order = 1;
};

/// A root subsystem given by one of its positive systems, split into
/// irreducible components.
struct EffectiveSubsystem {
  std::vector<WeightVec> positive_roots;
  std::vector<SubsystemComponent> components;
  WeightVec rho;

  std::uint64_t weyl_order() const;
  /// e.g. "A2xA1"; empty string for the empty subsystem.
  std::string name() const;
};

/// Throws Error(Domain) if the roots are not closed under their reflections.
EffectiveSubsystem effective_subsystem(const RootSystem& rs, const std::vector<WeightVec>& image_roots);

struct EffectiveWeightData {
  std::size_t coset_rep = 0;
  std::vector<WeightVec> image_roots;
  WeightVec lambda_prime;
  WeightVec rho_prime;
  /// Signed: the Weyl formula for the subsystem applied to lambda'.
  BigInt subdim;
};

/// lambda' + rho' = projection of lambda + rho onto span(b R_deg).
EffectiveWeightData effective_weight(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                                     std::size_t b, const std::vector<std::size_t>& deg);

struct WeightMultiplicity {
  Dynkin weight;
  std::int64_t multiplicity = 0;
};

/// Freudenthal recursion on dominant weights; returns dominant weights only.
std::vector<WeightMultiplicity> dominant_multiplicities(const RootSystem& rs, const Dynkin& lambda,
                                                        std::uint64_t cap = kDefaultOracleCap);
/// All weights (Weyl orbits of the dominant ones), sorted by Dynkin labels.
std::vector<WeightMultiplicity> weight_multiplicities(const RootSystem& rs, const Dynkin& lambda,
                                                      std::uint64_t cap = kDefaultOracleCap);

/// sum_mu mult(mu) e^{i(mu|h)}; valid at every torus point.
CharacterValue char_weightsum_oracle(const RootSystem& rs, const Dynkin& lambda, const TorusPoint& h,
                                     std::uint64_t cap = kDefaultOracleCap);

/// Dominant conjugate of a Dynkin-label weight.
Dynkin dominant_conjugate(const RootSystem& rs, Dynkin mu);

}  // namespace weylchar
