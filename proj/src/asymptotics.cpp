#include "weylchar/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "weylchar/error.hpp"
#include "weylchar/parallel.hpp"

namespace weylchar {

namespace {

const std::int64_t kStratumBase[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59};

bool is_zero(const Dynkin& d) {
  return std::all_of(d.begin(), d.end(), [](std::int64_t v) { return v == 0; });
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

WeightPath WeightPath::multiples(Dynkin base, std::int64_t k_min, std::int64_t k_max) {
  WeightPath p;
  p.base = std::move(base);
  for (std::int64_t k = k_min; k <= k_max; ++k) p.schedule.push_back(k);
  return p;
}

std::vector<Dynkin> WeightPath::weights() const {
  if (!explicit_weights.empty()) return explicit_weights;
  std::vector<Dynkin> out;
  for (auto k : schedule) {
    if (k <= 0) fail(ErrorKind::Domain, "schedule entries must be positive", "schedule");
    Dynkin w = base;
    for (auto& v : w) v *= k;
    out.push_back(w);
  }
  return out;
}

double weight_inf_norm(const RootSystem& rs, const Dynkin& mu) {
  double m = 0;
  for (double v : rs.from_dynkin(mu).to_doubles()) m = std::max(m, std::fabs(v));
  return m;
}

std::size_t decay_root_count(const RootSystem& rs, const DegenerateSplit& split, const Dynkin& lambda0) {
  std::size_t m = 0;
  for (auto k : split.ndeg) m += rs.coroot_pairing(lambda0, k) != 0 ? 1 : 0;
  return m;
}

DecayReport normalized_char_sweep(const RootSystem& rs, const WeylGroup& W, const WeightPath& path,
                                  const TorusPoint& h0, int threads) {
  const auto weights = path.weights();
  if (weights.empty()) fail(ErrorKind::Domain, "empty weight path", "schedule");
  for (const auto& w : weights) rs.require_dominant(rs.from_dynkin(w));
  DecayReport report;
  const DegenerateSplit split = rs.degenerate_split(h0);
  report.degenerate_roots = split.deg.size();
  report.central = split.ndeg.empty();
  if (!path.base.empty()) report.decay_roots = decay_root_count(rs, split, path.base);

  report.entries.resize(weights.size());
  parallel_for(weights.size(), threads, [&](std::size_t i, int) {
    DecayEntry& e = report.entries[i];
    e.k = path.explicit_weights.empty() ? path.schedule[i] : 0;
    e.weight = weights[i];
    e.dim = dim_irrep(rs, weights[i]);
    e.character = character(rs, W, weights[i], h0, 1).value;
    e.ratio = std::abs(e.character) / e.dim.get_d();
  });
  // Identity contributes exactly 1; keep it bit-exact.
  if (h0.is_exact() && h0.is_zero()) {
    for (auto& e : report.entries) e.ratio = 1.0;
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const DecayEntry& a, const DecayEntry& b) { return a.dim < b.dim; });
  Dynkin rho(rs.rank(), 1);
  for (auto& e : report.entries) {
    e.norm = weight_inf_norm(rs, e.weight);
    Dynkin shifted = e.weight;
    for (int j = 0; j < rs.rank(); ++j) shifted[j] += 1;
    e.shifted_norm = weight_inf_norm(rs, shifted);
  }
  // Fit C against |k lambda0 + rho|_inf on the first half (it dominates
  // |k lambda0|_inf for dominant weights), then test ratio <= C / |k lambda0|_inf
  // on every entry.
  const std::size_t half = std::max<std::size_t>(1, (report.entries.size() + 1) / 2);
  for (std::size_t i = 0; i < half; ++i) {
    const auto& e = report.entries[i];
    if (e.norm > 0) report.bound_constant = std::max(report.bound_constant, e.ratio * e.shifted_norm);
  }
  for (auto& e : report.entries) {
    if (e.norm == 0) continue;
    e.bound = report.bound_constant / e.norm;
    if (e.ratio > e.bound * (1 + 1e-12)) report.envelope_holds = false;
  }
  if (path.explicit_weights.empty() && report.entries.size() >= 5 && !report.central) {
    report.fitted_slope = decay_exponent(report);
    report.slope_valid = std::isfinite(report.fitted_slope);
  }
  return report;
}

double decay_exponent(const DecayReport& report) {
  const auto& e = report.entries;
  if (e.size() < 5) fail(ErrorKind::Domain, "decay fit needs at least 5 entries", "schedule");
  for (const auto& x : e) {
    if (x.k <= 0 || x.shifted_norm <= 0) {
      fail(ErrorKind::Domain, "decay fit needs a k-multiple schedule", "schedule");
    }
  }
  std::vector<double> lx, ly;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = e.size() / 2; i < e.size(); ++i) {
    lx.push_back(std::log(e[i].shifted_norm));
    if (!(e[i].ratio > 0)) return nan;
    ly.push_back(std::log(e[i].ratio));
  }
  return slope(lx, ly);
}

DivergenceCertificate divergence_certificate(const RootSystem& rs, const DegenerateSplit& split,
                                             const Dynkin& lambda0) {
  if (!rs.is_simple()) {
    fail(ErrorKind::Structural,
         rs.name() + " is not simple: its Dynkin diagram is disconnected, a factor can carry the "
                     "trivial representation and the normalized character need not vanish",
         "group");
  }
  if (lambda0.size() != static_cast<std::size_t>(rs.rank())) {
    fail(ErrorKind::Domain, "lambda0 has the wrong number of Dynkin labels", "weight");
  }
  for (auto v : lambda0) {
    if (v < 0) fail(ErrorKind::Domain, "lambda0 is not dominant", "weight");
  }
  if (is_zero(lambda0)) fail(ErrorKind::Domain, "lambda0 must be nonzero", "weight");
  if (split.ndeg.empty()) {
    fail(ErrorKind::Domain, "every root is degenerate (central point): the character ratio is constant",
         "point");
  }
  const WeightVec l0 = rs.from_dynkin(lambda0);
  const WeightVec& rho = rs.weyl_vector();
  auto is_ndeg = [&](std::size_t k) {
    return std::find(split.ndeg.begin(), split.ndeg.end(), k) != split.ndeg.end();
  };
  auto make = [&](std::size_t k, std::string how, std::vector<int> chain) {
    DivergenceCertificate c;
    c.root = k;
    c.root_vector = rs.positive_roots()[k];
    c.pairing = rs.inner(l0, c.root_vector);
    c.rho_pairing = rs.inner(rho, c.root_vector);
    c.construction = std::move(how);
    c.chain = std::move(chain);
    return c;
  };
  const int n = rs.rank();
  for (int i = 0; i < n; ++i) {
    if (lambda0[i] != 0 && is_ndeg(rs.simple_root_index(i))) return make(rs.simple_root_index(i), "direct", {});
  }
  // Shortest chain from the support of lambda0 to a non-degenerate simple root.
  std::vector<int> best;
  for (int i = 0; i < n; ++i) {
    if (lambda0[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (!is_ndeg(rs.simple_root_index(j))) continue;
      auto path = rs.dynkin_path(i, j);
      if (best.empty() || path.size() < best.size()) best = path;
    }
  }
  if (!best.empty()) {
    std::size_t k = rs.chain_sum_root(best);
    if (is_ndeg(k) && sgn(rs.inner(l0, rs.positive_roots()[k])) != 0) return make(k, "chain", best);
  }
  // Off the alcove a chain sum can itself be degenerate; fall back to a search.
  for (auto k : split.ndeg) {
    if (rs.coroot_pairing(lambda0, k) != 0) return make(k, "search", {});
  }
  fail(ErrorKind::Domain, "no non-degenerate root pairs with lambda0", "weight");
}

DecayReport nonsimple_counterexample(const std::vector<RootSystem>& factors, std::size_t carrier,
                                     const TorusPoint& g, std::int64_t k_max, bool grow_all) {
  if (factors.size() < 2) fail(ErrorKind::Domain, "the counterexample needs at least two factors", "group");
  if (carrier >= factors.size()) fail(ErrorKind::Domain, "carrier index out of range", "carrier");
  if (k_max < 1) fail(ErrorKind::Domain, "k_max must be positive", "k_max");
  const RootSystem& c = factors[carrier];
  c.check_point(g);
  if (g.is_exact() && c.degenerate_split(g).ndeg.empty()) {
    fail(ErrorKind::Domain, "g must not be central on the carrier factor", "point");
  }
  std::vector<WeylGroup> groups;
  if (grow_all) groups.push_back(WeylGroup::generate(c));
  DecayReport report;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    DecayEntry e;
    e.k = k;
    BigInt dim = 1;
    std::complex<double> chi = 1.0;
    for (std::size_t f = 0; f < factors.size(); ++f) {
      Dynkin w(factors[f].rank(), 2 * k);
      if (f == carrier && !grow_all) w.assign(factors[f].rank(), 0);
      for (auto v : w) e.weight.push_back(v);
      BigInt d = dim_irrep(factors[f], w);
      dim *= d;
      if (f == carrier && grow_all) {
        chi *= character(factors[f], groups[0], w, g).value;
      } else {
        // Non-carrier factors sit at the identity; the carrier carries the
        // trivial representation. Both contribute chi = dim exactly.
        chi *= d.get_d();
      }
    }
    e.dim = dim;
    e.character = chi;
    e.ratio = grow_all ? std::abs(chi) / dim.get_d() : (chi.real() == dim.get_d() ? 1.0 : std::abs(chi) / dim.get_d());
    report.entries.push_back(e);
  }
  report.central = false;
  return report;
}

TorusPoint stratum_representative(const RootSystem& rs, const std::vector<int>& J) {
  const int n = rs.rank();
  if (n > static_cast<int>(std::size(kStratumBase))) fail(ErrorKind::Domain, "rank too large for strata");
  std::vector<bool> in_j(n, false);
  for (int j : J) {
    if (j < 0 || j >= n) fail(ErrorKind::Domain, "simple-root index out of range");
    in_j[j] = true;
  }
  // (alpha_i | h0)/pi = t * base_i * |alpha_i|^2 / 2 off J; t keeps (theta|h0) < pi.
  const auto& theta = rs.root_coefficients(rs.highest_root());
  Rational top = 1;
  for (int i = 0; i < n; ++i) {
    if (in_j[i]) continue;
    top += Rational(static_cast<long>(kStratumBase[i] * theta[i])) * rs.inner(rs.simple_roots()[i], rs.simple_roots()[i]) / 2;
  }
  const Rational t = 1 / top;
  WeightVec h(rs.ambient_dim());
  for (int i = 0; i < n; ++i) {
    if (!in_j[i]) h += Rational(static_cast<long>(kStratumBase[i])) * t * rs.fundamental_weights()[i];
  }
  return TorusPoint::exact(h.coords());
}

std::vector<Stratum> singular_strata(const RootSystem& rs) {
  const int n = rs.rank();
  std::vector<Stratum> out;
  // Subsets ordered by size, then lexicographically.
  for (int size = 1; size < n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
      std::vector<int> J;
      for (int i = 0; i < n; ++i)
        if (pick[i]) J.push_back(i);
      out.push_back({J, stratum_representative(rs, J)});
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

}  // namespace weylchar
