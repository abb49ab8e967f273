#include "weylchar/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <set>

#include "weylchar/error.hpp"

namespace weylchar {

namespace {

char family_letter(Family f) {
  return "ABCDEFG"[static_cast<int>(f)];
}

std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

RationalMatrix invert(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) fail(ErrorKind::Domain, "singular matrix");
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Gram matrix of the simple roots for the exceptional families (simple-root
// basis, long roots of norm 2, Bourbaki numbering).
RationalMatrix exceptional_gram(const RootSystemSpec& spec) {
  const int n = spec.rank;
  RationalMatrix g(n, std::vector<Rational>(n));
  auto link = [&](int i, int j, Rational v) {
    g[i][j] = v;
    g[j][i] = v;
  };
  switch (spec.family) {
    case Family::G:
      g[0][0] = Rational(2, 3);
      g[1][1] = 2;
      link(0, 1, -1);
      break;
    case Family::F:
      g[0][0] = 2;
      g[1][1] = 2;
      g[2][2] = 1;
      g[3][3] = 1;
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, Rational(-1, 2));
      break;
    case Family::E:
      for (int i = 0; i < n; ++i) g[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    default:
      fail(ErrorKind::Config, "not an exceptional family");
  }
  return g;
}

}  // namespace

RootSystemSpec RootSystemSpec::parse(std::string_view name) {
  std::string s;
  for (char c : name) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.size() < 2) fail(ErrorKind::Config, "malformed group name '" + std::string(name) + "'", "group");
  RootSystemSpec spec;
  switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'A': spec.family = Family::A; break;
    case 'B': spec.family = Family::B; break;
    case 'C': spec.family = Family::C; break;
    case 'D': spec.family = Family::D; break;
    case 'E': spec.family = Family::E; break;
    case 'F': spec.family = Family::F; break;
    case 'G': spec.family = Family::G; break;
    default: fail(ErrorKind::Config, "unknown family in '" + std::string(name) + "'", "group");
  }
  std::string digits = s.substr(1);
  if (digits.empty() || digits.size() > 3 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail(ErrorKind::Config, "malformed rank in '" + std::string(name) + "'", "group");
  }
  spec.rank = std::stoi(digits);
  if (!spec.valid()) {
    fail(ErrorKind::Config, "rank out of bounds for '" + std::string(name) + "'", "group");
  }
  return spec;
}

std::string RootSystemSpec::name() const {
  return std::string(1, family_letter(family)) + std::to_string(rank);
}

bool RootSystemSpec::valid() const {
  switch (family) {
    case Family::A: return rank >= 1 && rank <= 64;
    case Family::B:
    case Family::C: return rank >= 2 && rank <= 64;
    case Family::D: return rank >= 2 && rank <= 64;
    case Family::E: return rank >= 6 && rank <= 8;
    case Family::F: return rank == 4;
    case Family::G: return rank == 2;
  }
  return false;
}

std::uint64_t classification_root_count(const RootSystemSpec& spec) {
  const std::uint64_t n = static_cast<std::uint64_t>(spec.rank);
  switch (spec.family) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return n == 6 ? 36 : n == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

std::uint64_t classification_weyl_order(const RootSystemSpec& spec) {
  const int n = spec.rank;
  // Saturate rather than overflow for large classical ranks.
  auto sat_fact = [](int m, std::uint64_t mult) -> std::uint64_t {
    long double v = static_cast<long double>(mult);
    for (int i = 2; i <= m; ++i) v *= i;
    if (v > 1.8e19L) return UINT64_MAX;
    return static_cast<std::uint64_t>(mult * factorial(m));
  };
  switch (spec.family) {
    case Family::A: return sat_fact(n + 1, 1);
    case Family::B:
    case Family::C: return n >= 63 ? UINT64_MAX : sat_fact(n, std::uint64_t{1} << n);
    case Family::D: return n >= 64 ? UINT64_MAX : sat_fact(n, std::uint64_t{1} << (n - 1));
    case Family::E: return n == 6 ? 51840ULL : n == 7 ? 2903040ULL : 696729600ULL;
    case Family::F: return 1152;
    case Family::G: return 12;
  }
  return 0;
}

std::int64_t PiPairing::pair(const std::int64_t* mu) const {
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < numerators.size(); ++j) {
    std::int64_t term = 0;
    if (__builtin_mul_overflow(mu[j], numerators[j], &term) ||
        __builtin_add_overflow(acc, term, &acc)) {
      fail(ErrorKind::Capacity, "phase numerator overflows 64 bits");
    }
  }
  return acc;
}

RootSystem RootSystem::build(const RootSystemSpec& spec) {
  if (!spec.valid()) fail(ErrorKind::Config, "rank out of bounds for " + spec.name(), "group");
  RootSystem rs;
  rs.spec_ = spec;
  const int n = spec.rank;

  // Ambient space, Gram matrix and simple roots.
  std::size_t dim = 0;
  switch (spec.family) {
    case Family::A: dim = static_cast<std::size_t>(n + 1); break;
    case Family::B:
    case Family::C:
    case Family::D: dim = static_cast<std::size_t>(n); break;
    default: dim = static_cast<std::size_t>(n); break;
  }
  if (spec.family == Family::E || spec.family == Family::F || spec.family == Family::G) {
    rs.gram_ = exceptional_gram(spec);
    rs.euclidean_ = false;
    for (int i = 0; i < n; ++i) {
      WeightVec v(dim);
      v[i] = 1;
      rs.simple_roots_.push_back(v);
    }
  } else {
    rs.gram_.assign(dim, std::vector<Rational>(dim));
    for (std::size_t i = 0; i < dim; ++i) rs.gram_[i][i] = 1;
    rs.euclidean_ = true;
    const int chain = spec.family == Family::A ? n : n - 1;
    for (int i = 0; i < chain; ++i) {
      WeightVec v(dim);
      v[i] = 1;
      v[i + 1] = -1;
      rs.simple_roots_.push_back(v);
    }
    if (spec.family != Family::A) {
      WeightVec last(dim);
      switch (spec.family) {
        case Family::B: last[n - 1] = 1; break;
        case Family::C: last[n - 1] = 2; break;
        case Family::D:
          last[n - 2] = 1;
          last[n - 1] = 1;
          break;
        default: break;
      }
      rs.simple_roots_.push_back(last);
    }
  }

  // Cartan matrix.
  rs.cartan_.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rational v = 2 * rs.inner(rs.simple_roots_[i], rs.simple_roots_[j]) /
                   rs.inner(rs.simple_roots_[j], rs.simple_roots_[j]);
      rs.cartan_[i][j] = static_cast<int>(to_integer(v).get_si());
    }
  }

  // Positive roots by closure under simple-root strings, height by height.
  std::set<std::vector<int>> all;
  std::vector<std::vector<std::vector<int>>> by_height;
  {
    std::vector<std::vector<int>> level;
    for (int i = 0; i < n; ++i) {
      std::vector<int> c(n);
      c[i] = 1;
      level.push_back(c);
      all.insert(c);
    }
    while (!level.empty()) {
      std::sort(level.begin(), level.end(), std::greater<>());
      by_height.push_back(level);
      std::set<std::vector<int>> next;
      for (const auto& c : level) {
        for (int i = 0; i < n; ++i) {
          int pairing = 0;  // <beta, alpha_i^vee>
          for (int k = 0; k < n; ++k) pairing += c[k] * rs.cartan_[k][i];
          int p = 0;
          std::vector<int> down = c;
          while (true) {
            down[i] -= 1;
            if (down[i] < 0 || !all.count(down)) break;
            ++p;
          }
          const int q = p - pairing;
          if (q > 0) {
            std::vector<int> up = c;
            up[i] += 1;
            if (!all.count(up)) next.insert(up);
          }
        }
      }
      level.assign(next.begin(), next.end());
      for (const auto& c : level) all.insert(c);
    }
  }
  for (const auto& level : by_height) {
    for (const auto& c : level) {
      WeightVec v(dim);
      for (int i = 0; i < n; ++i) {
        if (c[i]) v += Rational(c[i]) * rs.simple_roots_[i];
      }
      rs.root_lookup_[v] = rs.positive_roots_.size();
      rs.positive_roots_.push_back(v);
      rs.coeffs_.push_back(c);
    }
  }
  if (rs.positive_roots_.size() != classification_root_count(spec)) {
    fail(ErrorKind::Domain, "positive-root closure produced a wrong count for " + spec.name());
  }
  rs.simple_index_.resize(n);
  for (int i = 0; i < n; ++i) rs.simple_index_[i] = rs.root_lookup_.at(rs.simple_roots_[i]);

  for (std::size_t k = 0; k < rs.positive_roots_.size(); ++k) {
    const auto& c = rs.coeffs_[k];
    Rational norm2 = rs.inner(rs.positive_roots_[k], rs.positive_roots_[k]);
    rs.norm2_.push_back(norm2);
    Dynkin dyn(n, 0);
    std::vector<std::int64_t> co(n, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) dyn[j] += static_cast<std::int64_t>(c[i]) * rs.cartan_[i][j];
      Rational d = Rational(c[i]) * rs.inner(rs.simple_roots_[i], rs.simple_roots_[i]) / norm2;
      co[i] = to_integer(d).get_si();
    }
    rs.root_dynkin_.push_back(dyn);
    rs.coroot_coeffs_.push_back(co);
  }

  rs.rho_ = WeightVec(dim);
  for (const auto& r : rs.positive_roots_) rs.rho_ += r;
  rs.rho_ *= Rational(1, 2);

  RationalMatrix cart(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cart[i][j] = rs.cartan_[i][j];
  RationalMatrix x = invert(cart);
  for (int j = 0; j < n; ++j) {
    WeightVec w(dim);
    for (int k = 0; k < n; ++k) {
      if (sgn(x[j][k]) != 0) w += x[j][k] * rs.simple_roots_[k];
    }
    rs.fundamental_.push_back(w);
    for (std::size_t a = 0; a < dim; ++a) {
      Rational g = 0;
      for (std::size_t b = 0; b < dim; ++b) g += rs.gram_[a][b] * w[b];
      rs.fundamental_double_.push_back(g.get_d());
    }
  }

  // Connectivity of the Dynkin diagram.
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      if (!seen[j] && rs.cartan_[i][j] != 0) {
        seen[j] = true;
        queue.push_back(j);
      }
    }
  }
  rs.simple_ = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  return rs;
}

std::optional<std::size_t> RootSystem::find_positive_root(const WeightVec& v) const {
  auto it = root_lookup_.find(v);
  if (it == root_lookup_.end()) return std::nullopt;
  return it->second;
}

Rational RootSystem::inner(const WeightVec& x, const WeightVec& y) const {
  const std::size_t dim = gram_.size();
  if (x.size() != dim || y.size() != dim) {
    fail(ErrorKind::Domain, "dimension mismatch: " + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + " in a " + std::to_string(dim) +
                                "-dimensional ambient space");
  }
  Rational acc = 0;
  if (euclidean_) {
    for (std::size_t i = 0; i < dim; ++i) acc += x[i] * y[i];
    return acc;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (sgn(gram_[i][j]) != 0) acc += x[i] * gram_[i][j] * y[j];
    }
  }
  return acc;
}

void RootSystem::check_ambient(const WeightVec& x, const char* field) const {
  if (x.size() != ambient_dim()) {
    fail(ErrorKind::Domain,
         std::string(field) + " has " + std::to_string(x.size()) + " coordinates, expected " +
             std::to_string(ambient_dim()) + " for " + name(),
         field);
  }
  if (spec_.family == Family::A && sgn(x.sum()) != 0) {
    fail(ErrorKind::Domain, std::string(field) + " must have zero coordinate sum for type A", field);
  }
}

std::int64_t RootSystem::coroot_pairing(const Dynkin& mu, std::size_t k) const {
  const auto& c = coroot_coeffs_[k];
  std::int64_t acc = 0;
  for (std::size_t j = 0; j < c.size(); ++j) acc += mu[j] * c[j];
  return acc;
}

std::vector<Rational> RootSystem::dynkin_labels(const WeightVec& lambda) const {
  check_ambient(lambda);
  std::vector<Rational> out;
  for (const auto& a : simple_roots_) out.push_back(2 * inner(lambda, a) / inner(a, a));
  return out;
}

Dynkin RootSystem::to_dynkin(const WeightVec& lambda) const {
  Dynkin out;
  for (const auto& q : dynkin_labels(lambda)) {
    if (q.get_den() != 1) fail(ErrorKind::Domain, "weight is not integral", "weight");
    out.push_back(to_int64(q.get_num()));
  }
  return out;
}

WeightVec RootSystem::from_dynkin(const Dynkin& labels) const {
  if (labels.size() != static_cast<std::size_t>(rank())) {
    fail(ErrorKind::Domain,
         "expected " + std::to_string(rank()) + " Dynkin labels, got " + std::to_string(labels.size()),
         "weight");
  }
  WeightVec w(ambient_dim());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    if (labels[j] != 0) w += Rational(static_cast<long>(labels[j])) * fundamental_[j];
  }
  return w;
}

bool RootSystem::is_integral_weight(const WeightVec& lambda) const {
  for (const auto& q : dynkin_labels(lambda)) {
    if (q.get_den() != 1) return false;
  }
  return true;
}

bool RootSystem::is_dominant_integral(const WeightVec& lambda) const {
  for (const auto& q : dynkin_labels(lambda)) {
    if (q.get_den() != 1 || sgn(q) < 0) return false;
  }
  return true;
}

Dynkin RootSystem::require_dominant(const WeightVec& lambda, const char* field) const {
  auto labels = dynkin_labels(lambda);
  Dynkin out;
  for (const auto& q : labels) {
    if (q.get_den() != 1) fail(ErrorKind::Domain, "weight is not integral", field);
    if (sgn(q) < 0) fail(ErrorKind::Domain, "weight is not dominant", field);
    out.push_back(to_int64(q.get_num()));
  }
  return out;
}

void RootSystem::check_point(const TorusPoint& h) const {
  if (h.dim() != ambient_dim()) {
    fail(ErrorKind::Domain,
         "torus point has " + std::to_string(h.dim()) + " coordinates, expected " +
             std::to_string(ambient_dim()) + " for " + name(),
         "point");
  }
  if (h.is_exact() && spec_.family == Family::A) {
    Rational s = 0;
    for (const auto& c : h.coords_over_pi()) s += c;
    if (sgn(s) != 0) fail(ErrorKind::Domain, "type-A torus points must have zero coordinate sum", "point");
  }
}

Rational RootSystem::root_pairing_over_pi(std::size_t k, const TorusPoint& h) const {
  check_point(h);
  return inner(positive_roots_[k], WeightVec(h.coords_over_pi()));
}

double RootSystem::root_pairing(std::size_t k, const TorusPoint& h) const {
  check_point(h);
  if (h.is_exact()) return root_pairing_over_pi(k, h).get_d() * std::numbers::pi;
  auto fw = float_pairing(h);
  const auto& d = root_dynkin_[k];
  double acc = 0;
  for (std::size_t j = 0; j < fw.size(); ++j) acc += static_cast<double>(d[j]) * fw[j];
  return acc;
}

PiPairing RootSystem::pi_pairing(const TorusPoint& h) const {
  check_point(h);
  WeightVec q(h.coords_over_pi());
  std::vector<Rational> c;
  BigInt den = 1;
  for (const auto& w : fundamental_) {
    c.push_back(inner(w, q));
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.back().get_den_mpz_t());
  }
  PiPairing out;
  out.denominator = to_int64(den);
  for (const auto& v : c) out.numerators.push_back(to_int64(to_integer(v * den)));
  return out;
}

std::vector<double> RootSystem::float_pairing(const TorusPoint& h) const {
  check_point(h);
  auto x = h.radians();
  const std::size_t dim = ambient_dim();
  std::vector<double> out(rank(), 0.0);
  for (int j = 0; j < rank(); ++j) {
    long double acc = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      acc += static_cast<long double>(fundamental_double_[j * dim + a]) * x[a];
    }
    out[j] = static_cast<double>(acc);
  }
  return out;
}

DegenerateSplit RootSystem::degenerate_split(const TorusPoint& h) const {
  check_point(h);
  DegenerateSplit split;
  split.point = h;
  if (h.is_exact()) {
    PiPairing p = pi_pairing(h);
    for (std::size_t k = 0; k < positive_roots_.size(); ++k) {
      std::int64_t num = p.pair(root_dynkin_[k]);
      // (alpha|h)/pi = num/den; degenerate iff it is an even integer.
      if (num % (2 * p.denominator) == 0) {
        split.deg.push_back(k);
        split.windings.push_back(num / (2 * p.denominator));
      } else {
        split.ndeg.push_back(k);
      }
    }
    return split;
  }
  auto fw = float_pairing(h);
  for (std::size_t k = 0; k < positive_roots_.size(); ++k) {
    long double acc = 0;
    for (std::size_t j = 0; j < fw.size(); ++j) acc += static_cast<long double>(root_dynkin_[k][j]) * fw[j];
    double x = static_cast<double>(acc);
    if (distance_to_2pi_lattice(x) < kSnapTolerance) {
      split.deg.push_back(k);
      split.windings.push_back(static_cast<std::int64_t>(std::llround(x / (2 * std::numbers::pi))));
    } else {
      split.ndeg.push_back(k);
    }
  }
  return split;
}

std::vector<int> RootSystem::dynkin_path(int i, int j) const {
  if (!simple_) {
    fail(ErrorKind::Structural,
         name() + " is not simple: its Dynkin diagram is disconnected",
         "group");
  }
  const int n = rank();
  if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::Domain, "simple-root index out of range");
  std::vector<int> parent(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<int> queue{i};
  seen[i] = true;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == j) break;
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && v != u && cartan_[u][v] != 0) {
        seen[v] = true;
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  std::vector<int> path;
  for (int v = j; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t RootSystem::chain_sum_root(const std::vector<int>& chain) const {
  if (chain.empty()) fail(ErrorKind::Domain, "empty chain");
  std::set<int> distinct(chain.begin(), chain.end());
  if (distinct.size() != chain.size()) fail(ErrorKind::Domain, "chain repeats a simple root");
  WeightVec sum(ambient_dim());
  for (std::size_t t = 0; t < chain.size(); ++t) {
    int i = chain[t];
    if (i < 0 || i >= rank()) fail(ErrorKind::Domain, "simple-root index out of range");
    if (t + 1 < chain.size() && sgn(inner(simple_roots_[i], simple_roots_[chain[t + 1]])) >= 0) {
      fail(ErrorKind::Domain, "chain is not a Dynkin path: consecutive roots are orthogonal");
    }
    sum += simple_roots_[i];
  }
  auto idx = find_positive_root(sum);
  if (!idx) fail(ErrorKind::Domain, "chain sum is not a root");
  return *idx;
}

WeightVec RootSystem::reflect(const WeightVec& alpha, const WeightVec& x) const {
  Rational n2 = inner(alpha, alpha);
  if (sgn(n2) == 0) fail(ErrorKind::Domain, "cannot reflect in the zero vector");
  return x - (2 * inner(x, alpha) / n2) * alpha;
}

nlohmann::json RootSystem::to_json() const {
  nlohmann::json j;
  j["family"] = std::string(1, family_letter(spec_.family));
  j["rank"] = spec_.rank;
  j["name"] = name();
  j["simple"] = simple_;
  j["ambient_dim"] = ambient_dim();
  auto vecs = [](const std::vector<WeightVec>& vs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs) arr.push_back(v.to_strings());
    return arr;
  };
  j["simple_roots"] = vecs(simple_roots_);
  j["positive_roots"] = vecs(positive_roots_);
  j["cartan_matrix"] = cartan_;
  j["weyl_vector"] = rho_.to_strings();
  nlohmann::json gram = nlohmann::json::array();
  for (const auto& row : gram_) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    gram.push_back(r);
  }
  j["gram"] = gram;
  return j;
}

}  // namespace weylchar
