#include "weylchar/weylgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>

#include "weylchar/error.hpp"

namespace weylchar {

namespace {

constexpr int kMaxRank = 8;

std::uint64_t pack(const std::int64_t* v, int rank) {
  std::uint64_t k = 0;
  for (int j = 0; j < rank; ++j) {
    k |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(static_cast<std::int8_t>(v[j]))) << (8 * j);
  }
  return k;
}

void unpack(std::uint64_t k, int rank, std::int64_t* v) {
  for (int j = 0; j < rank; ++j) v[j] = static_cast<std::int8_t>((k >> (8 * j)) & 0xff);
}

}  // namespace

std::uint64_t default_weyl_cap() {
  if (const char* env = std::getenv("WEYLCHAR_CAP_WEYL")) {
    try {
      std::size_t used = 0;
      unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    fail(ErrorKind::Config, std::string("WEYLCHAR_CAP_WEYL is not a positive integer: ") + env,
         "WEYLCHAR_CAP_WEYL");
  }
  return kDefaultWeylCap;
}

WeightVec WeylElement::apply(const WeightVec& x) const {
  WeightVec out(x.size());
  for (std::size_t r = 0; r < matrix.size(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (sgn(matrix[r][c]) != 0 && sgn(x[c]) != 0) acc += matrix[r][c] * x[c];
    }
    out[r] = acc;
  }
  return out;
}

void WeylGroup::reflect_block(int g, const std::int64_t* in, std::int64_t* out,
                              std::size_t count) const {
  const auto& row = cartan_[g];
  for (std::size_t b = 0; b < count; ++b) {
    const std::int64_t* x = in + b * rank_;
    std::int64_t* y = out + b * rank_;
    const std::int64_t xg = x[g];
    for (int j = 0; j < rank_; ++j) y[j] = x[j] - xg * row[j];
  }
}

WeylGroup WeylGroup::generate(const RootSystem& rs, std::uint64_t cap) {
  const std::uint64_t expected = classification_weyl_order(rs.spec());
  if (expected > cap) {
    fail(ErrorKind::Capacity,
         "Weyl group of " + rs.name() + " has order " +
             (expected == UINT64_MAX ? std::string("> 1.8e19") : std::to_string(expected)) +
             ", above the cap " + std::to_string(cap) + " (set WEYLCHAR_CAP_WEYL to raise it)",
         "group");
  }
  if (rs.rank() > kMaxRank) {
    fail(ErrorKind::Capacity, "Weyl group enumeration supports rank <= 8", "group");
  }
  WeylGroup W;
  W.rank_ = rs.rank();
  W.cartan_ = rs.cartan_matrix();
  const int n = W.rank_;
  W.keys_.reserve(expected);
  W.parent_.reserve(expected);
  W.gen_.reserve(expected);
  W.length_.reserve(expected);
  W.first_child_.reserve(expected + 1);

  std::vector<std::int64_t> rho(n, 1);
  W.keys_.push_back(pack(rho.data(), n));
  W.parent_.push_back(0);
  W.gen_.push_back(0);
  W.length_.push_back(0);

  std::size_t level_begin = 0;
  std::size_t level_end = 1;
  std::vector<std::int64_t> x(n), y(n);
  struct Candidate {
    std::uint64_t key;
    std::uint32_t parent;
    std::uint8_t gen;
  };
  std::vector<Candidate> cand;
  std::vector<std::uint32_t> order;
  std::uint16_t len = 0;
  while (level_begin < level_end) {
    cand.clear();
    for (std::size_t p = level_begin; p < level_end; ++p) {
      unpack(W.keys_[p], n, x.data());
      for (int g = 0; g < n; ++g) {
        if (x[g] <= 0) continue;
        W.reflect_block(g, x.data(), y.data(), 1);
        cand.push_back({pack(y.data(), n), static_cast<std::uint32_t>(p), static_cast<std::uint8_t>(g)});
      }
    }
    // Keep the first occurrence of each key in generation order.
    order.resize(cand.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return cand[a].key < cand[b].key; });
    std::vector<std::uint32_t> keep;
    for (std::size_t t = 0; t < order.size(); ++t) {
      if (t == 0 || cand[order[t]].key != cand[order[t - 1]].key) keep.push_back(order[t]);
    }
    std::sort(keep.begin(), keep.end());
    ++len;
    for (std::uint32_t c : keep) {
      W.keys_.push_back(cand[c].key);
      W.parent_.push_back(cand[c].parent);
      W.gen_.push_back(cand[c].gen);
      W.length_.push_back(len);
    }
    level_begin = level_end;
    level_end = W.keys_.size();
    if (W.keys_.size() > expected) break;
  }
  if (W.keys_.size() != expected) {
    fail(ErrorKind::Domain, "Weyl group closure produced order " + std::to_string(W.keys_.size()) +
                                ", expected " + std::to_string(expected));
  }

  // Children are contiguous because elements are ordered by parent.
  const std::size_t N = W.keys_.size();
  W.first_child_.assign(N + 1, 0);
  std::vector<std::uint32_t> counts(N, 0);
  for (std::size_t i = 1; i < N; ++i) ++counts[W.parent_[i]];
  W.first_child_[0] = 1;
  for (std::size_t i = 0; i < N; ++i) {
    W.first_child_[i + 1] = W.first_child_[i] + counts[i];
  }
  for (std::size_t i = 1; i < N; ++i) {
    if (i + 1 < N && W.parent_[i] > W.parent_[i + 1]) {
      fail(ErrorKind::Domain, "internal: parents not monotone");
    }
  }

  W.by_key_.resize(N);
  std::iota(W.by_key_.begin(), W.by_key_.end(), 0u);
  std::sort(W.by_key_.begin(), W.by_key_.end(),
            [&](std::uint32_t a, std::uint32_t b) { return W.keys_[a] < W.keys_[b]; });
  return W;
}

std::vector<int> WeylGroup::word(std::size_t i) const {
  std::vector<int> w(length_[i]);
  for (std::size_t t = w.size(); t > 0; --t) {
    w[t - 1] = gen_[i];
    i = parent_[i];
  }
  return w;
}

Dynkin WeylGroup::key(std::size_t i) const {
  Dynkin k(rank_);
  unpack(keys_[i], rank_, k.data());
  return k;
}

std::optional<std::size_t> WeylGroup::find(const Dynkin& key) const {
  if (key.size() != static_cast<std::size_t>(rank_)) return std::nullopt;
  for (auto v : key) {
    if (v < -128 || v > 127) return std::nullopt;
  }
  const std::uint64_t k = pack(key.data(), rank_);
  auto it = std::lower_bound(by_key_.begin(), by_key_.end(), k,
                             [&](std::uint32_t a, std::uint64_t v) { return keys_[a] < v; });
  if (it == by_key_.end() || keys_[*it] != k) return std::nullopt;
  return *it;
}

Dynkin WeylGroup::act_inverse(std::size_t i, Dynkin mu) const {
  // w^{-1} = s_{word[l-1]} ... s_{word[0]}: apply word[0] first.
  Dynkin tmp(rank_);
  for (int g : word(i)) {
    reflect_block(g, mu.data(), tmp.data(), 1);
    mu.swap(tmp);
  }
  return mu;
}

Dynkin WeylGroup::act(std::size_t i, Dynkin mu) const {
  Dynkin tmp(rank_);
  auto w = word(i);
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    reflect_block(*it, mu.data(), tmp.data(), 1);
    mu.swap(tmp);
  }
  return mu;
}

std::size_t WeylGroup::multiply(std::size_t i, std::size_t j) const {
  // (ij)^{-1} rho = j^{-1} (i^{-1} rho).
  auto idx = find(act_inverse(j, key(i)));
  if (!idx) fail(ErrorKind::Domain, "internal: product not found");
  return *idx;
}

std::size_t WeylGroup::inverse(std::size_t i) const {
  auto idx = find(act(i, Dynkin(rank_, 1)));
  if (!idx) fail(ErrorKind::Domain, "internal: inverse not found");
  return *idx;
}

std::size_t WeylGroup::reflection(const RootSystem& rs, std::size_t k) const {
  // s_beta rho = rho - <rho, beta^vee> beta.
  const auto& co = rs.coroot_coefficients(k);
  std::int64_t height = std::accumulate(co.begin(), co.end(), std::int64_t{0});
  Dynkin key(rank_, 1);
  const Dynkin& beta = rs.root_dynkin(k);
  for (int j = 0; j < rank_; ++j) key[j] -= height * beta[j];
  auto idx = find(key);
  if (!idx) fail(ErrorKind::Domain, "internal: reflection not found");
  return *idx;
}

WeylElement WeylGroup::element(const RootSystem& rs, std::size_t i) const {
  const std::size_t dim = rs.ambient_dim();
  WeylElement e;
  e.word = word(i);
  e.sign = sign(i);
  e.matrix.assign(dim, std::vector<Rational>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    WeightVec col(dim);
    col[c] = 1;
    for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) {
      col = rs.reflect(rs.simple_roots()[*it], col);
    }
    for (std::size_t r = 0; r < dim; ++r) e.matrix[r][c] = col[r];
  }
  return e;
}

namespace {

Stabilizer fixed_point_stabilizer(const RootSystem& rs, const WeylGroup& W, const TorusPoint& h0,
                                  const std::vector<std::size_t>& deg) {
  const int n = rs.rank();
  PiPairing p = rs.pi_pairing(h0);
  const std::int64_t mod = 2 * p.denominator;
  std::vector<std::int64_t> starts(static_cast<std::size_t>(n) * n, 0);
  for (int j = 0; j < n; ++j) starts[j * n + j] = 1;
  std::vector<std::int64_t> base(n);
  for (int j = 0; j < n; ++j) base[j] = p.numerators[j];
  Stabilizer s;
  s.generating_reflections = deg;
  W.traverse(starts, [&](std::size_t i, const std::int64_t* d) {
    for (int j = 0; j < n; ++j) {
      // (omega_j | w h0) = (w^{-1} omega_j | h0).
      std::int64_t diff = p.pair(d + j * n) - base[j];
      if (diff % mod != 0) return;
    }
    s.elements.push_back(i);
  });
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

}  // namespace

Stabilizer reflection_subgroup(const RootSystem& rs, const WeylGroup& W,
                               const std::vector<std::size_t>& roots) {
  Stabilizer s;
  s.generating_reflections = roots;
  std::vector<std::size_t> gens;
  for (auto k : roots) gens.push_back(W.reflection(rs, k));
  std::vector<char> seen(W.order(), 0);
  std::deque<std::size_t> queue{W.identity()};
  seen[W.identity()] = 1;
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop_front();
    s.elements.push_back(u);
    for (auto g : gens) {
      std::size_t v = W.multiply(u, g);
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  std::sort(s.elements.begin(), s.elements.end());
  return s;
}

Stabilizer stabilizer(const RootSystem& rs, const WeylGroup& W, const TorusPoint& h0,
                      StabilizerMethod method) {
  if (!h0.is_exact()) fail(ErrorKind::Domain, "stabilizer needs an exact torus point", "point");
  auto split = rs.degenerate_split(h0);
  if (method == StabilizerMethod::Auto) {
    method = W.order() <= 100'000 ? StabilizerMethod::FixedPoint : StabilizerMethod::ReflectionClosure;
  }
  switch (method) {
    case StabilizerMethod::FixedPoint:
      return fixed_point_stabilizer(rs, W, h0, split.deg);
    case StabilizerMethod::ReflectionClosure:
      return reflection_subgroup(rs, W, split.deg);
    case StabilizerMethod::CrossCheck: {
      auto a = fixed_point_stabilizer(rs, W, h0, split.deg);
      auto b = reflection_subgroup(rs, W, split.deg);
      if (a.elements != b.elements) {
        fail(ErrorKind::Domain,
             "point stabilizer (order " + std::to_string(a.order()) +
                 ") differs from the degenerate-reflection group (order " +
                 std::to_string(b.order()) + "); the point is not in the fundamental alcove",
             "point");
      }
      return a;
    }
    default:
      break;
  }
  return fixed_point_stabilizer(rs, W, h0, split.deg);
}

namespace {

CosetTransversal transversal_impl(const WeylGroup& W, const Stabilizer& W0, bool minimal) {
  if (W0.elements.empty() || W0.elements.front() != W.identity()) {
    fail(ErrorKind::Domain, "stabilizer does not contain the identity");
  }
  std::vector<char> marked(W.order(), 0);
  CosetTransversal t;
  std::size_t covered = 0;
  auto visit = [&](std::size_t b) {
    if (marked[b]) return;
    t.reps.push_back(b);
    for (auto s : W0.elements) {
      std::size_t x = W.multiply(b, s);
      if (marked[x]) fail(ErrorKind::Domain, "element list is not a subgroup");
      marked[x] = 1;
      ++covered;
    }
  };
  if (minimal) {
    for (std::size_t b = 0; b < W.order(); ++b) visit(b);
  } else {
    for (std::size_t b = W.order(); b > 0; --b) visit(b - 1);
  }
  if (covered != W.order()) fail(ErrorKind::Domain, "element list is not a subgroup");
  if (!minimal) std::sort(t.reps.begin(), t.reps.end());
  return t;
}

}  // namespace

CosetTransversal coset_transversal(const WeylGroup& W, const Stabilizer& W0) {
  return transversal_impl(W, W0, true);
}

CosetTransversal maximal_coset_transversal(const WeylGroup& W, const Stabilizer& W0) {
  return transversal_impl(W, W0, false);
}

bool is_minimal_coset_rep(const RootSystem& rs, const WeylGroup& W, std::size_t b,
                          const std::vector<std::size_t>& roots) {
  // b(alpha) > 0  <=>  (alpha | b^{-1} rho) > 0  <=>  <b^{-1} rho, alpha^vee> > 0.
  Dynkin k = W.key(b);
  for (auto r : roots) {
    if (rs.coroot_pairing(k, r) <= 0) return false;
  }
  return true;
}

}  // namespace weylchar
