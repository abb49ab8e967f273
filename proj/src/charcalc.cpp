#include "weylchar/charcalc.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "weylchar/error.hpp"
#include "weylchar/parallel.hpp"

namespace weylchar {

namespace {

using i128 = __int128;
using cld = std::complex<long double>;

BigInt from_i128(i128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  BigInt hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  BigInt lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  BigInt r = (hi << 64) + lo;
  return neg ? BigInt(-r) : r;
}

long double to_ld(const BigInt& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return static_cast<long double>(z.get_si());
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
}

/// Integer coefficients keyed by the residue of the phase numerator.
class PhaseSum {
 public:
  void add(std::int64_t r, i128 c) {
    if (c == 0) return;
    i128& slot = small_[r];
    i128 next;
    if (__builtin_add_overflow(slot, c, &next)) {
      big_[r] += from_i128(slot) + from_i128(c);
      slot = 0;
    } else {
      slot = next;
    }
  }
  void add(std::int64_t r, const BigInt& c) { big_[r] += c; }

  void merge_into(std::map<std::int64_t, BigInt>& out) const {
    for (const auto& [r, c] : small_) {
      if (c != 0) out[r] += from_i128(c);
    }
    for (const auto& [r, c] : big_) out[r] += c;
  }

 private:
  std::unordered_map<std::int64_t, i128> small_;
  std::map<std::int64_t, BigInt> big_;
};

struct PhaseTotal {
  cld value;
  long double abs_sum = 0;
  std::size_t residues = 0;
  bool wide = false;  // some coefficient exceeded 64 bits
};

/// sum_r c_r e^{i pi r / den}, pairwise over ascending residues.
PhaseTotal evaluate_phases(const std::map<std::int64_t, BigInt>& coeffs, std::int64_t den) {
  std::vector<cld> terms;
  PhaseTotal t;
  for (const auto& [r, c] : coeffs) {
    if (sgn(c) == 0) continue;
    long double a = to_ld(c);
    if (!mpz_fits_slong_p(c.get_mpz_t())) t.wide = true;
    terms.emplace_back(a * cos_pi_frac(r, den), a * sin_pi_frac(r, den));
    t.abs_sum += std::fabs(a);
  }
  t.residues = terms.size();
  t.value = pairwise_sum(terms);
  return t;
}

std::int64_t residue(std::int64_t num, std::int64_t mod) {
  std::int64_t r = num % mod;
  return r < 0 ? r + mod : r;
}

void require_dominant_dynkin(const RootSystem& rs, const Dynkin& lambda) {
  if (lambda.size() != static_cast<std::size_t>(rs.rank())) {
    fail(ErrorKind::Domain,
         "expected " + std::to_string(rs.rank()) + " Dynkin labels, got " + std::to_string(lambda.size()),
         "weight");
  }
  for (auto v : lambda) {
    if (v < 0) fail(ErrorKind::Domain, "weight is not dominant", "weight");
  }
}

bool is_zero_weight(const Dynkin& lambda) {
  return std::all_of(lambda.begin(), lambda.end(), [](std::int64_t v) { return v == 0; });
}

double condition_of(const PhaseTotal& t, long double scale, double magnitude) {
  const long double eps = t.wide ? DBL_EPSILON : LDBL_EPSILON;
  const long double spread = 32 * eps * (1 + std::log2(static_cast<long double>(t.residues) + 1));
  return static_cast<double>(DBL_EPSILON * magnitude + spread * t.abs_sum / scale);
}

CharacterValue exact_character(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                               const TorusPoint& h0, int threads,
                               const std::vector<std::size_t>* transversal) {
  require_dominant_dynkin(rs, lambda);
  if (W.rank() != rs.rank()) fail(ErrorKind::Domain, "Weyl group does not belong to " + rs.name());
  const DegenerateSplit split = rs.degenerate_split(h0);
  CharacterValue out;
  out.degenerate_roots = split.deg.size();
  if (is_zero_weight(lambda)) {
    out.value = 1.0;
    return out;
  }
  if (split.ndeg.empty()) {
    // Every root is degenerate: h0 is central and chi = dim * e^{i(lambda|h0)}.
    BigInt d = dim_irrep(rs, lambda);
    PiPairing p = rs.pi_pairing(h0);
    std::int64_t mod = 0;
    if (__builtin_mul_overflow(p.denominator, std::int64_t{2}, &mod)) {
      fail(ErrorKind::Capacity, "phase denominator overflows 64 bits", "point");
    }
    std::int64_t r = residue(p.pair(lambda), mod);
    const double dd = d.get_d();
    if (r == 0) {
      out.value = dd;
    } else {
      out.value = {static_cast<double>(dd * cos_pi_frac(r, p.denominator)),
                   static_cast<double>(dd * sin_pi_frac(r, p.denominator))};
    }
    out.condition = DBL_EPSILON * dd;
    return out;
  }

  const int n = rs.rank();
  PiPairing p = rs.pi_pairing(h0);
  std::int64_t mod = 0;
  if (__builtin_mul_overflow(p.denominator, std::int64_t{2}, &mod)) {
    fail(ErrorKind::Capacity, "phase denominator overflows 64 bits", "point");
  }
  std::vector<std::int64_t> starts(2 * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    starts[j] = lambda[j] + 1;
    starts[n + j] = 1;
  }
  std::vector<std::vector<std::int64_t>> co;
  for (auto k : split.deg) co.push_back(rs.coroot_coefficients(k));

  auto contribute = [&](PhaseSum& acc, int sign, const std::int64_t* xi, const std::int64_t* key) {
    if (key) {
      for (const auto& c : co) {
        std::int64_t s = 0;
        for (int j = 0; j < n; ++j) s += c[j] * key[j];
        if (s <= 0) return;
      }
    }
    i128 prod = sign;
    bool big = false;
    BigInt bprod;
    for (const auto& c : co) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += c[j] * xi[j];
      if (s == 0) return;
      if (!big) {
        i128 next;
        if (__builtin_mul_overflow(prod, static_cast<i128>(s), &next)) {
          big = true;
          bprod = from_i128(prod) * BigInt(static_cast<long>(s));
        } else {
          prod = next;
        }
      } else {
        bprod *= BigInt(static_cast<long>(s));
      }
    }
    const std::int64_t r = residue(p.pair(xi), mod);
    if (big) {
      acc.add(r, bprod);
    } else {
      acc.add(r, prod);
    }
  };

  std::map<std::int64_t, BigInt> coeffs;
  if (transversal) {
    PhaseSum acc;
    Dynkin eta(starts.begin(), starts.begin() + n);
    for (auto b : *transversal) {
      Dynkin xi = W.act_inverse(b, eta);
      contribute(acc, W.sign(b), xi.data(), nullptr);
    }
    acc.merge_into(coeffs);
  } else {
    const int t = std::max(1, resolve_threads(threads));
    std::vector<PhaseSum> accs(static_cast<std::size_t>(t));
    W.traverse_parallel(starts, t, [&](int tid, std::size_t i, const std::int64_t* d) {
      contribute(accs[tid], W.sign(i), d, split.deg.empty() ? nullptr : d + n);
    });
    for (const auto& a : accs) a.merge_into(coeffs);
  }
  PhaseTotal total = evaluate_phases(coeffs, p.denominator);

  // Denominator: prod_deg <rho_deg, a^vee> * (-1)^{sum k_a} * prod_ndeg 2i sin((a|h0)/2).
  WeightVec rho_deg(rs.ambient_dim());
  for (auto k : split.deg) rho_deg += rs.positive_roots()[k];
  rho_deg *= Rational(1, 2);
  Rational dprod = 1;
  for (auto k : split.deg) {
    dprod *= 2 * rs.inner(rho_deg, rs.positive_roots()[k]) / rs.root_norm2(k);
  }
  std::int64_t windings = 0;
  for (auto w : split.windings) windings += w;
  long double scale = static_cast<long double>(dprod.get_d());
  if (windings & 1) scale = -scale;
  long double sines = 1;
  for (auto k : split.ndeg) {
    const std::int64_t num = p.pair(rs.root_dynkin(k));
    sines *= 2 * sin_pi_frac(num, mod);
  }
  scale *= sines;
  cld denom = scale;
  switch (split.ndeg.size() % 4) {
    case 1: denom = cld(0, scale); break;
    case 2: denom = -scale; break;
    case 3: denom = cld(0, -scale); break;
    default: break;
  }
  cld v = total.value / denom;
  out.value = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  out.condition = condition_of(total, std::fabs(scale), std::abs(out.value));
  return out;
}

CharacterValue floating_regular(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                                const TorusPoint& h, int threads) {
  require_dominant_dynkin(rs, lambda);
  CharacterValue out;
  if (is_zero_weight(lambda)) {
    out.value = 1.0;
    return out;
  }
  const int n = rs.rank();
  const auto fw = rs.float_pairing(h);
  std::vector<std::int64_t> eta(n);
  for (int j = 0; j < n; ++j) eta[j] = lambda[j] + 1;
  std::vector<std::complex<double>> terms(W.order());
  W.traverse_parallel(eta, threads, [&](int, std::size_t i, const std::int64_t* xi) {
    long double theta = 0;
    for (int j = 0; j < n; ++j) theta += static_cast<long double>(xi[j]) * fw[j];
    const double s = W.sign(i);
    terms[i] = {s * static_cast<double>(std::cos(theta)), s * static_cast<double>(std::sin(theta))};
  });
  std::complex<double> num = pairwise_sum(terms);
  long double maxphase = 0;
  for (int j = 0; j < n; ++j) maxphase += std::fabs(static_cast<long double>(eta[j]) * fw[j]);
  long double scale = 1;
  for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
    long double a = 0;
    for (int j = 0; j < n; ++j) a += static_cast<long double>(rs.root_dynkin(k)[j]) * fw[j];
    scale *= 2 * std::sin(a / 2);
  }
  cld denom = scale;
  switch (rs.num_positive_roots() % 4) {
    case 1: denom = cld(0, scale); break;
    case 2: denom = -scale; break;
    case 3: denom = cld(0, -scale); break;
    default: break;
  }
  cld v = cld(num.real(), num.imag()) / denom;
  out.value = {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  // Phase rounding grows with |theta|; summation error with log2 |W|.
  const double per_term = DBL_EPSILON * (4 + std::log2(static_cast<double>(W.order()) + 1)) +
                          DBL_EPSILON * static_cast<double>(maxphase) * 4;
  out.condition = DBL_EPSILON * std::abs(out.value) +
                  per_term * static_cast<double>(W.order()) / std::fabs(static_cast<double>(scale));
  return out;
}

}  // namespace

BigInt dim_irrep(const RootSystem& rs, const Dynkin& lambda) {
  require_dominant_dynkin(rs, lambda);
  BigInt num = 1, den = 1;
  for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
    const auto& c = rs.coroot_coefficients(k);
    std::int64_t a = 0, b = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      a += c[j] * (lambda[j] + 1);
      b += c[j];
    }
    num *= BigInt(static_cast<long>(a));
    den *= BigInt(static_cast<long>(b));
  }
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    fail(ErrorKind::Domain, "Weyl dimension product is not integral", "weight");
  }
  return num / den;
}

BigInt dim_irrep(const RootSystem& rs, const WeightVec& lambda) {
  return dim_irrep(rs, rs.require_dominant(lambda));
}

CharacterValue char_regular(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                            const TorusPoint& h, int threads) {
  const DegenerateSplit split = rs.degenerate_split(h);
  if (!split.regular()) {
    fail(ErrorKind::Singular,
         "point is singular (" + std::to_string(split.deg.size()) +
             " degenerate positive roots); use char_singular",
         "point");
  }
  if (h.is_exact()) return exact_character(rs, W, lambda, h, threads, nullptr);
  return floating_regular(rs, W, lambda, h, threads);
}

CharacterValue char_singular(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                             const TorusPoint& h0, int threads,
                             const std::vector<std::size_t>* transversal) {
  if (!h0.is_exact()) {
    auto snapped = snap_to_stratum(rs, h0);
    if (!snapped) return floating_regular(rs, W, lambda, h0, threads);
    CharacterValue v = exact_character(rs, W, lambda, *snapped, threads, transversal);
    v.snapped = snapped;
    return v;
  }
  return exact_character(rs, W, lambda, h0, threads, transversal);
}

CharacterValue character(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                         const TorusPoint& h, int threads) {
  return char_singular(rs, W, lambda, h, threads, nullptr);
}

std::optional<TorusPoint> snap_to_stratum(const RootSystem& rs, const TorusPoint& h) {
  rs.check_point(h);
  const DegenerateSplit fsplit = rs.degenerate_split(h);
  if (fsplit.regular()) return std::nullopt;
  if (h.is_exact()) return h;
  std::vector<double> x = h.radians();
  const bool type_a = rs.spec().family == Family::A;
  if (type_a) {
    long double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<long double>(x.size());
    for (double& v : x) v = static_cast<double>(v - mean);
  }
  const long double pi = 3.141592653589793238462643383279502884L;
  std::vector<Rational> q(x.size());
  const std::size_t free = type_a ? x.size() - 1 : x.size();
  for (std::size_t i = 0; i < free; ++i) {
    q[i] = best_rational_approximation(static_cast<long double>(x[i]) / pi, kSnapMaxDenominator);
    long double err = std::fabs(static_cast<long double>(x[i]) - static_cast<long double>(q[i].get_d()) * pi);
    if (err > kSnapTolerance) {
      fail(ErrorKind::Snap,
           "coordinate " + std::to_string(i) + " of a singular point is not within " +
               "1e-9 of a rational multiple of pi with denominator <= 1000000",
           "point");
    }
  }
  if (type_a) {
    Rational s = 0;
    for (std::size_t i = 0; i < free; ++i) s -= q[i];
    q.back() = s;
    long double err = std::fabs(static_cast<long double>(x.back()) - static_cast<long double>(s.get_d()) * pi);
    if (err > kSnapTolerance * static_cast<double>(x.size())) {
      fail(ErrorKind::Snap, "snapped type-A point drifts from the input", "point");
    }
  }
  TorusPoint exact = TorusPoint::exact(q);
  const DegenerateSplit esplit = rs.degenerate_split(exact);
  if (esplit.deg != fsplit.deg) {
    fail(ErrorKind::Snap,
         "snapped point has " + std::to_string(esplit.deg.size()) +
             " degenerate roots but the floating point has " + std::to_string(fsplit.deg.size()) +
             "; refusing to change stratum",
         "point");
  }
  return exact;
}

// ---------------------------------------------------------------------------
// Effective subsystem and effective weight.

namespace {

RootSystemSpec classify_component(const RootSystem& rs, const std::vector<WeightVec>& simple,
                                  const std::vector<WeightVec>& positive) {
  const int r = static_cast<int>(simple.size());
  const std::size_t N = positive.size();
  Rational longest = 0;
  for (const auto& b : positive) longest = std::max(longest, rs.inner(b, b));
  std::size_t long_count = 0;
  for (const auto& b : positive) long_count += rs.inner(b, b) == longest ? 1 : 0;
  const bool laced = long_count == N;
  auto sized = [&](Family f) { return RootSystemSpec{f, r}; };
  if (r == 1) return sized(Family::A);
  if (laced) {
    if (N == static_cast<std::size_t>(r * (r + 1) / 2)) return sized(Family::A);
    if (N == static_cast<std::size_t>(r * (r - 1))) return sized(Family::D);
    return sized(Family::E);
  }
  if (r == 2 && N == 6) return sized(Family::G);
  if (r == 4 && N == 24) return sized(Family::F);
  if (r == 2) return sized(Family::B);
  // B_n has n short positive roots, C_n has n long ones.
  return long_count == static_cast<std::size_t>(r) ? sized(Family::C) : sized(Family::B);
}

std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(a[p][c]) == 0) ++p;
    if (p == n) fail(ErrorKind::Domain, "singular Gram matrix");
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

}  // namespace

std::uint64_t EffectiveSubsystem::weyl_order() const {
  std::uint64_t o = 1;
  for (const auto& c : components) o *= c.weyl_order;
  return o;
}

std::string EffectiveSubsystem::name() const {
  std::string s;
  for (const auto& c : components) {
    if (!s.empty()) s += "x";
    s += c.type.name();
  }
  return s;
}

EffectiveSubsystem effective_subsystem(const RootSystem& rs, const std::vector<WeightVec>& image_roots) {
  EffectiveSubsystem sub;
  sub.rho = WeightVec(rs.ambient_dim());
  std::set<WeightVec> pos(image_roots.begin(), image_roots.end());
  if (pos.size() != image_roots.size()) fail(ErrorKind::Domain, "subsystem roots repeat");
  for (const auto& a : image_roots) {
    rs.check_ambient(a, "root");
    if (a.is_zero()) fail(ErrorKind::Domain, "zero vector is not a root");
    if (pos.count(-a)) fail(ErrorKind::Domain, "subsystem list contains a root and its negative");
  }
  for (const auto& a : image_roots) {
    for (const auto& b : image_roots) {
      WeightVec r = rs.reflect(a, b);
      if (!pos.count(r) && !pos.count(-r)) {
        fail(ErrorKind::Domain, "subsystem roots are not closed under their reflections");
      }
    }
  }
  sub.positive_roots = image_roots;
  if (image_roots.empty()) return sub;

  // Simple roots: positive roots that are not sums of two positive roots.
  std::set<WeightVec> decomposable;
  for (std::size_t i = 0; i < image_roots.size(); ++i) {
    for (std::size_t j = i + 1; j < image_roots.size(); ++j) {
      WeightVec s = image_roots[i] + image_roots[j];
      if (pos.count(s)) decomposable.insert(s);
    }
  }
  std::vector<WeightVec> simple;
  for (const auto& a : image_roots) {
    if (!decomposable.count(a)) simple.push_back(a);
  }
  // A positive system that is not closed under addition has too many
  // indecomposables; its simple roots would be dependent.
  std::vector<std::vector<Rational>> gram(simple.size(), std::vector<Rational>(simple.size()));
  for (std::size_t i = 0; i < simple.size(); ++i)
    for (std::size_t j = 0; j < simple.size(); ++j) gram[i][j] = rs.inner(simple[i], simple[j]);
  for (std::size_t i = 0; i < simple.size(); ++i)
    for (std::size_t j = 0; j < simple.size(); ++j)
      if (i != j && sgn(gram[i][j]) > 0) fail(ErrorKind::Domain, "roots do not form a positive system");

  // Components by connectivity of mutual non-orthogonality.
  std::vector<int> comp(simple.size(), -1);
  int ncomp = 0;
  for (std::size_t s = 0; s < simple.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < simple.size(); ++v) {
        if (comp[v] < 0 && sgn(gram[u][v]) != 0) {
          comp[v] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  sub.components.resize(ncomp);
  for (std::size_t s = 0; s < simple.size(); ++s) sub.components[comp[s]].simple_roots.push_back(simple[s]);
  for (const auto& a : image_roots) {
    int owner = -1;
    for (std::size_t s = 0; s < simple.size(); ++s) {
      if (sgn(rs.inner(a, simple[s])) != 0) {
        owner = comp[s];
        break;
      }
    }
    if (owner < 0) fail(ErrorKind::Domain, "root orthogonal to every simple root of its subsystem");
    sub.components[owner].positive_roots.push_back(a);
  }
  for (auto& c : sub.components) {
    c.rho = WeightVec(rs.ambient_dim());
    for (const auto& a : c.positive_roots) c.rho += a;
    c.rho *= Rational(1, 2);
    sub.rho += c.rho;
    c.type = classify_component(rs, c.simple_roots, c.positive_roots);
    if (classification_root_count(c.type) != c.positive_roots.size()) {
      fail(ErrorKind::Domain, "could not classify subsystem component");
    }
    c.weyl_order = classification_weyl_order(c.type);
  }
  std::stable_sort(sub.components.begin(), sub.components.end(), [](const auto& a, const auto& b) {
    return a.positive_roots.size() > b.positive_roots.size();
  });
  return sub;
}

EffectiveWeightData effective_weight(const RootSystem& rs, const WeylGroup& W, const Dynkin& lambda,
                                     std::size_t b, const std::vector<std::size_t>& deg) {
  require_dominant_dynkin(rs, lambda);
  EffectiveWeightData data;
  data.coset_rep = b;
  for (auto k : deg) data.image_roots.push_back(rs.from_dynkin(W.act(b, rs.root_dynkin(k))));
  EffectiveSubsystem sub = effective_subsystem(rs, data.image_roots);
  data.rho_prime = sub.rho;
  Dynkin eta_d = lambda;
  for (auto& v : eta_d) v += 1;
  const WeightVec eta = rs.from_dynkin(eta_d);
  std::vector<WeightVec> basis;
  for (const auto& c : sub.components)
    for (const auto& s : c.simple_roots) basis.push_back(s);
  WeightVec proj(rs.ambient_dim());
  if (!basis.empty()) {
    std::vector<std::vector<Rational>> g(basis.size(), std::vector<Rational>(basis.size()));
    std::vector<Rational> rhs(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) g[i][j] = rs.inner(basis[i], basis[j]);
      rhs[i] = rs.inner(eta, basis[i]);
    }
    auto c = solve(g, rhs);
    for (std::size_t i = 0; i < basis.size(); ++i) proj += c[i] * basis[i];
  }
  data.lambda_prime = proj - data.rho_prime;
  for (const auto& s : basis) {
    Rational label = 2 * rs.inner(data.lambda_prime, s) / rs.inner(s, s);
    if (label.get_den() != 1) fail(ErrorKind::Domain, "effective weight is not integral");
  }
  Rational d = 1;
  for (const auto& a : sub.positive_roots) d *= rs.inner(proj, a) / rs.inner(data.rho_prime, a);
  data.subdim = to_integer(d);
  return data;
}

// ---------------------------------------------------------------------------
// Freudenthal multiplicities and the weight-sum oracle.

Dynkin dominant_conjugate(const RootSystem& rs, Dynkin mu) {
  const auto& cartan = rs.cartan_matrix();
  const int n = rs.rank();
  while (true) {
    int j = 0;
    while (j < n && mu[j] >= 0) ++j;
    if (j == n) return mu;
    const std::int64_t m = mu[j];
    for (int k = 0; k < n; ++k) mu[k] -= m * cartan[j][k];
  }
}

std::vector<WeightMultiplicity> dominant_multiplicities(const RootSystem& rs, const Dynkin& lambda,
                                                        std::uint64_t cap) {
  require_dominant_dynkin(rs, lambda);
  const BigInt d = dim_irrep(rs, lambda);
  if (d > BigInt(static_cast<unsigned long>(cap))) {
    fail(ErrorKind::Capacity,
         "dim " + d.get_str() + " exceeds the multiplicity-oracle cap " + std::to_string(cap), "weight");
  }
  const int n = rs.rank();
  // Integer Gram matrix of fundamental weights, scaled by a common factor.
  std::vector<std::vector<Rational>> fr(n, std::vector<Rational>(n));
  BigInt L = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      fr[i][j] = rs.inner(rs.fundamental_weights()[i], rs.fundamental_weights()[j]);
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), fr[i][j].get_den_mpz_t());
    }
  std::vector<std::vector<i128>> F(n, std::vector<i128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) F[i][j] = to_int64(to_integer(fr[i][j] * L));
  auto form = [&](const Dynkin& a, const Dynkin& b) {
    i128 s = 0;
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < n; ++j) s += static_cast<i128>(a[i]) * F[i][j] * b[j];
    }
    return s;
  };

  std::vector<std::int64_t> heights(rs.num_positive_roots());
  for (std::size_t k = 0; k < heights.size(); ++k) {
    const auto& c = rs.root_coefficients(k);
    heights[k] = std::accumulate(c.begin(), c.end(), std::int64_t{0});
  }
  std::map<Dynkin, std::int64_t> height_of{{lambda, 0}};
  std::vector<Dynkin> queue{lambda};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Dynkin mu = queue[q];
    const std::int64_t h = height_of[mu];
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
      Dynkin nu = mu;
      bool dominant = true;
      for (int j = 0; j < n; ++j) {
        nu[j] -= rs.root_dynkin(k)[j];
        if (nu[j] < 0) dominant = false;
      }
      if (!dominant || height_of.count(nu)) continue;
      height_of[nu] = h + heights[k];
      queue.push_back(nu);
    }
  }
  std::vector<Dynkin> order = queue;
  std::stable_sort(order.begin(), order.end(),
                   [&](const Dynkin& a, const Dynkin& b) { return height_of[a] < height_of[b]; });

  Dynkin rho(n, 1);
  auto plus = [&](const Dynkin& a, const Dynkin& b) {
    Dynkin c = a;
    for (int j = 0; j < n; ++j) c[j] += b[j];
    return c;
  };
  const Dynkin lr = plus(lambda, rho);
  const i128 top = form(lr, lr);
  std::map<Dynkin, std::int64_t> mult;
  mult[lambda] = 1;
  for (const auto& mu : order) {
    if (mu == lambda) continue;
    i128 rhs = 0;
    for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
      const Dynkin& a = rs.root_dynkin(k);
      Dynkin nu = mu;
      while (true) {
        for (int j = 0; j < n; ++j) nu[j] += a[j];
        auto it = mult.find(dominant_conjugate(rs, nu));
        if (it == mult.end()) break;
        rhs += static_cast<i128>(it->second) * form(nu, a);
      }
    }
    const Dynkin mr = plus(mu, rho);
    const i128 lhs = top - form(mr, mr);
    rhs *= 2;
    if (lhs <= 0 || rhs % lhs != 0) fail(ErrorKind::Domain, "Freudenthal recursion produced a non-integer");
    mult[mu] = static_cast<std::int64_t>(rhs / lhs);
  }
  std::vector<WeightMultiplicity> out;
  for (const auto& [w, m] : mult) out.push_back({w, m});
  return out;
}

std::vector<WeightMultiplicity> weight_multiplicities(const RootSystem& rs, const Dynkin& lambda,
                                                      std::uint64_t cap) {
  const auto& cartan = rs.cartan_matrix();
  const int n = rs.rank();
  std::vector<WeightMultiplicity> out;
  for (const auto& dom : dominant_multiplicities(rs, lambda, cap)) {
    std::set<Dynkin> orbit{dom.weight};
    std::vector<Dynkin> queue{dom.weight};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int g = 0; g < n; ++g) {
        if (queue[q][g] <= 0) continue;
        Dynkin nu = queue[q];
        const std::int64_t m = nu[g];
        for (int k = 0; k < n; ++k) nu[k] -= m * cartan[g][k];
        if (orbit.insert(nu).second) queue.push_back(nu);
      }
    }
    for (const auto& w : orbit) out.push_back({w, dom.multiplicity});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.weight < b.weight; });
  return out;
}

CharacterValue char_weightsum_oracle(const RootSystem& rs, const Dynkin& lambda, const TorusPoint& h,
                                     std::uint64_t cap) {
  const auto weights = weight_multiplicities(rs, lambda, cap);
  CharacterValue out;
  out.degenerate_roots = rs.degenerate_split(h).deg.size();
  if (h.is_exact()) {
    PiPairing p = rs.pi_pairing(h);
    std::int64_t mod = 0;
    if (__builtin_mul_overflow(p.denominator, std::int64_t{2}, &mod)) {
      fail(ErrorKind::Capacity, "phase denominator overflows 64 bits", "point");
    }
    PhaseSum acc;
    for (const auto& w : weights) acc.add(residue(p.pair(w.weight), mod), static_cast<i128>(w.multiplicity));
    std::map<std::int64_t, BigInt> coeffs;
    acc.merge_into(coeffs);
    PhaseTotal t = evaluate_phases(coeffs, p.denominator);
    out.value = {static_cast<double>(t.value.real()), static_cast<double>(t.value.imag())};
    out.condition = condition_of(t, 1.0L, std::abs(out.value));
    return out;
  }
  const auto fw = rs.float_pairing(h);
  std::vector<std::complex<double>> terms;
  long double total = 0, maxphase = 0;
  for (const auto& w : weights) {
    long double theta = 0, absphase = 0;
    for (std::size_t j = 0; j < fw.size(); ++j) {
      theta += static_cast<long double>(w.weight[j]) * fw[j];
      absphase += std::fabs(static_cast<long double>(w.weight[j]) * fw[j]);
    }
    maxphase = std::max(maxphase, absphase);
    const double m = static_cast<double>(w.multiplicity);
    terms.emplace_back(m * static_cast<double>(std::cos(theta)), m * static_cast<double>(std::sin(theta)));
    total += m;
  }
  out.value = pairwise_sum(terms);
  out.condition = static_cast<double>(total) *
                  (DBL_EPSILON * (4 + std::log2(static_cast<double>(terms.size()) + 1)) +
                   4 * DBL_EPSILON * static_cast<double>(maxphase));
  return out;
}

}  // namespace weylchar
