#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "weylchar/parallel.hpp"
#include "weylchar/rootsys.hpp"

namespace weylchar {

/// Default cap on the Weyl-group order; admits E7, rejects E8.
inline constexpr std::uint64_t kDefaultWeylCap = 3'000'000;

/// kDefaultWeylCap unless WEYLCHAR_CAP_WEYL is set.
std::uint64_t default_weyl_cap();

/// Materialized group element: exact matrix on the ambient space.
struct WeylElement {
  std::vector<std::vector<Rational>> matrix;
  int sign = 1;
  /// Reduced word in simple reflections (0-based), w = s_{word[0]} ... s_{word[l-1]}.
  std::vector<int> word;

  WeightVec apply(const WeightVec& x) const;
  std::size_t length() const { return word.size(); }
};

/// The Weyl group as an indexed tree of reduced words.
///
/// Elements are numbered breadth-first by length, ties broken by the
/// lexicographically smallest reduced word. Element i is identified by the
/// Dynkin labels of w_i^{-1} rho; element i = parent(i) * s_{generator(i)}.
class WeylGroup {
 public:
  /// Throws Error(Capacity) when the classification order exceeds cap.
  static WeylGroup generate(const RootSystem& rs, std::uint64_t cap = default_weyl_cap());

  std::size_t order() const { return keys_.size(); }
  int rank() const { return rank_; }
  int length(std::size_t i) const { return length_[i]; }
  int sign(std::size_t i) const { return (length_[i] & 1) ? -1 : 1; }
  std::size_t parent(std::size_t i) const { return parent_[i]; }
  int generator(std::size_t i) const { return gen_[i]; }
  std::vector<int> word(std::size_t i) const;

  /// Index of the element with w^{-1} rho = key (Dynkin labels).
  std::optional<std::size_t> find(const Dynkin& key) const;
  Dynkin key(std::size_t i) const;

  std::size_t identity() const { return 0; }
  std::size_t multiply(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;
  /// Index of the reflection in positive root k of rs.
  std::size_t reflection(const RootSystem& rs, std::size_t k) const;

  /// w mu and w^{-1} mu for Dynkin-label weights.
  Dynkin act(std::size_t i, Dynkin mu) const;
  Dynkin act_inverse(std::size_t i, Dynkin mu) const;

  WeylElement element(const RootSystem& rs, std::size_t i) const;

  /// Visits every element with w^{-1} applied to each of the stacked start
  /// vectors (count = starts.size() / rank). f(index, const int64_t* data).
  template <class F>
  void traverse(const std::vector<std::int64_t>& starts, F&& f) const;

  /// Parallel traversal; f(tid, index, data) may run concurrently on
  /// distinct indices.
  template <class F>
  void traverse_parallel(const std::vector<std::int64_t>& starts, int threads, F&& f) const;

 private:
  void reflect_block(int g, const std::int64_t* in, std::int64_t* out, std::size_t count) const;
  template <class F>
  void dfs(std::size_t root, const std::int64_t* root_data, std::size_t count, F&& f) const;

  int rank_ = 0;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> gen_;
  std::vector<std::uint16_t> length_;
  std::vector<std::uint32_t> first_child_;  // CSR, size order()+1
  std::vector<std::uint32_t> by_key_;       // indices sorted by key
};

enum class StabilizerMethod { Auto, FixedPoint, ReflectionClosure, CrossCheck };

struct Stabilizer {
  /// Element indices into the parent group, ascending.
  std::vector<std::size_t> elements;
  /// Positive-root indices whose reflections generate the subgroup.
  std::vector<std::size_t> generating_reflections;

  std::size_t order() const { return elements.size(); }
};

/// {w : w h0 = h0 on the torus}, i.e. w h0 - h0 in 2 pi (coroot lattice).
Stabilizer stabilizer(const RootSystem& rs, const WeylGroup& W, const TorusPoint& h0,
                      StabilizerMethod method = StabilizerMethod::Auto);

/// Subgroup generated by the reflections in the given positive roots.
Stabilizer reflection_subgroup(const RootSystem& rs, const WeylGroup& W,
                               const std::vector<std::size_t>& roots);

struct CosetTransversal {
  /// One element index per left coset b W0.
  std::vector<std::size_t> reps;
};

/// Minimal-length representatives of the left cosets b W0. Throws
/// Error(Domain) if the element list is not a subgroup.
CosetTransversal coset_transversal(const WeylGroup& W, const Stabilizer& W0);

/// Same cosets, longest element of each coset instead.
CosetTransversal maximal_coset_transversal(const WeylGroup& W, const Stabilizer& W0);

/// Minimal representatives of W / W(R'), R' the given positive roots, via
/// b(alpha) > 0 for alpha in R'. Needs no stabilizer enumeration.
bool is_minimal_coset_rep(const RootSystem& rs, const WeylGroup& W, std::size_t b,
                          const std::vector<std::size_t>& roots);

// ---------------------------------------------------------------------------

template <class F>
void WeylGroup::dfs(std::size_t root, const std::int64_t* root_data, std::size_t count,
                    F&& f) const {
  const std::size_t width = count * static_cast<std::size_t>(rank_);
  const int base = length_[root];
  std::vector<std::vector<std::int64_t>> buffers;
  buffers.emplace_back(root_data, root_data + width);
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    std::size_t node = stack.back();
    stack.pop_back();
    const int depth = length_[node] - base;
    if (depth > 0) {
      if (buffers.size() <= static_cast<std::size_t>(depth)) buffers.emplace_back(width);
      reflect_block(gen_[node], buffers[depth - 1].data(), buffers[depth].data(), count);
    }
    f(node, static_cast<const std::int64_t*>(buffers[depth].data()));
    for (std::uint32_t c = first_child_[node + 1]; c > first_child_[node]; --c) stack.push_back(c - 1);
  }
}

template <class F>
void WeylGroup::traverse(const std::vector<std::int64_t>& starts, F&& f) const {
  const std::size_t count = starts.size() / static_cast<std::size_t>(rank_);
  dfs(0, starts.data(), count, f);
}

template <class F>
void WeylGroup::traverse_parallel(const std::vector<std::int64_t>& starts, int threads,
                                  F&& f) const {
  threads = resolve_threads(threads);
  const std::size_t count = starts.size() / static_cast<std::size_t>(rank_);
  if (threads <= 1 || order() < 4096) {
    dfs(0, starts.data(), count, [&](std::size_t i, const std::int64_t* d) { f(0, i, d); });
    return;
  }
  // Expand breadth-first until the frontier is wide enough, visiting the
  // interior serially; each frontier subtree becomes one task.
  const std::size_t width = count * static_cast<std::size_t>(rank_);
  std::vector<std::size_t> frontier{0};
  std::vector<std::vector<std::int64_t>> data{starts};
  while (frontier.size() < static_cast<std::size_t>(8 * threads)) {
    std::vector<std::size_t> next;
    std::vector<std::vector<std::int64_t>> next_data;
    for (std::size_t t = 0; t < frontier.size(); ++t) {
      f(0, frontier[t], static_cast<const std::int64_t*>(data[t].data()));
      for (std::uint32_t c = first_child_[frontier[t]]; c < first_child_[frontier[t] + 1]; ++c) {
        next.push_back(c);
        next_data.emplace_back(width);
        reflect_block(gen_[c], data[t].data(), next_data.back().data(), count);
      }
    }
    frontier = std::move(next);
    data = std::move(next_data);
    if (frontier.empty()) return;
  }
  parallel_for(frontier.size(), threads, [&](std::size_t t, int tid) {
    dfs(frontier[t], data[t].data(), count,
        [&](std::size_t i, const std::int64_t* d) { f(tid, i, d); });
  });
}

}  // namespace weylchar
