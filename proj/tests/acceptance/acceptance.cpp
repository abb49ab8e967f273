// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "weylchar/asymptotics.hpp"
#include "weylchar/charcalc.hpp"
#include "weylchar/error.hpp"
#include "weylchar/spectral.hpp"

using namespace weylchar;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

RootSystem make(const std::string& name) { return RootSystem::build(RootSystemSpec::parse(name)); }

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(3);
  o << x;
  return o.str();
}

Dynkin random_weight(const RootSystem& rs, std::mt19937_64& rng, int max_label, double max_dim) {
  while (true) {
    Dynkin w(rs.rank());
    for (auto& v : w) v = static_cast<std::int64_t>(rng() % (max_label + 1));
    if (dim_irrep(rs, w).get_d() <= max_dim) return w;
  }
}

// Exact point with coordinates (r / den) * pi, summing to zero for type A.
TorusPoint random_exact_point(const RootSystem& rs, std::mt19937_64& rng, long den, long spread) {
  std::vector<Rational> c(rs.ambient_dim());
  for (auto& x : c) x = Rational(static_cast<long>(rng() % (2 * spread + 1)) - spread, den);
  if (rs.spec().family == Family::A) c.back() = -std::accumulate(c.begin(), c.end() - 1, Rational(0));
  for (auto& x : c) x.canonicalize();
  return TorusPoint::exact(c);
}

// Strata with J proper and nonempty, plus J = all simple roots (the identity).
std::vector<TorusPoint> singular_points(const RootSystem& rs) {
  std::vector<TorusPoint> out;
  for (const auto& s : singular_strata(rs)) out.push_back(s.point);
  std::vector<int> all(rs.rank());
  std::iota(all.begin(), all.end(), 0);
  out.push_back(stratum_representative(rs, all));
  return out;
}

// Kesten-McKay moment of A/s by the midpoint rule in y = R cos t.
double km_quadrature(int s, int m) {
  const int nodes = 4000;
  const double R = 2 * std::sqrt(s - 1.0) / s;
  double acc = 0;
  for (int i = 0; i < nodes; ++i) {
    const double t = kPi * (i + 0.5) / nodes;
    const double y = R * std::cos(t);
    const double x = s * y;
    const double density = s * std::sqrt(std::max(0.0, 4.0 * (s - 1) - x * x)) / (2 * kPi * (s * s - x * x));
    acc += std::pow(y, m) * s * density * R * std::sin(t);
  }
  return acc * kPi / nodes;
}

std::string run_cli(const std::string& args) {
  const std::string cmd = std::string(WEYLCHAR_CLI_PATH) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  return out;
}

// ---------------------------------------------------------------------------

Outcome su2_closed_form() {
  auto rs = make("A1");
  auto W = WeylGroup::generate(rs);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> theta_dist(1e-3, 2 * kPi - 1e-3);
  double worst = 0;
  for (int l = 0; l <= 50; ++l) {
    for (int t = 0; t < 25; ++t) {
      const double theta = theta_dist(rng);
      const cd v = char_regular(rs, W, {2 * l}, TorusPoint::floating({theta / 2, -theta / 2})).value;
      const double expected = std::sin((l + 0.5) * theta) / std::sin(theta / 2);
      worst = std::max(worst, std::abs(v - expected) / (2 * l + 1));
    }
  }
  return {worst <= 1e-9, "max |err|/(2l+1) = " + fmt(worst) + " over 51 x 25 points"};
}

Outcome singular_su3_adjoint() {
  auto rs = make("A2");
  auto W = WeylGroup::generate(rs);
  double worst = 0;
  for (auto [p, q] : {std::pair{1L, 7L}, std::pair{1L, 5L}}) {
    const Rational a(p, q);
    const cd v = char_singular(rs, W, {1, 1}, TorusPoint::exact({a, a, -2 * a})).value;
    worst = std::max(worst, std::abs(v - (4 + 4 * std::cos(3 * a.get_d() * kPi))));
  }
  const auto snapped = character(rs, W, {1, 1}, TorusPoint::floating({1.0, 1.0, -2.0}));
  worst = std::max(worst, std::abs(snapped.value - (4 + 4 * std::cos(3.0))));
  bool refused = false;
  try {
    character(rs, W, {1, 1}, TorusPoint::floating({1.0, 1.0 + 5e-10, -2.0 - 5e-10}));
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::Snap;
  }
  return {worst <= 1e-9 && snapped.snapped.has_value() && refused,
          "max err = " + fmt(worst) + ", a = 1 snapped to " + snapped.snapped->to_string() +
              ", split degenerate set refused: " + (refused ? "yes" : "no")};
}

struct OracleInstance {
  std::string group;
  Dynkin lambda;
};

Outcome oracle_equivalence(std::vector<OracleInstance>& instances) {
  std::mt19937_64 rng(303);
  double worst = 0;
  std::size_t evaluations = 0;
  for (const char* name : {"A1", "A2", "A3", "B2", "C3", "G2"}) {
    auto rs = make(name);
    auto W = WeylGroup::generate(rs);
    for (int i = 0; i < 10; ++i) {
      const Dynkin lam = random_weight(rs, rng, rs.rank() <= 2 ? 12 : 5, 5000);
      instances.push_back({name, lam});
      const double dim = dim_irrep(rs, lam).get_d();
      std::vector<TorusPoint> points = singular_points(rs);
      while (true) {
        std::uniform_real_distribution<double> u(-kPi, kPi);
        std::vector<double> h(rs.ambient_dim());
        for (auto& x : h) x = u(rng);
        if (rs.spec().family == Family::A) {
          const double mean = std::accumulate(h.begin(), h.end(), 0.0) / h.size();
          for (auto& x : h) x -= mean;
        }
        auto p = TorusPoint::floating(h);
        bool far = true;
        for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) far = far && distance_to_2pi_lattice(rs.root_pairing(k, p)) > 1e-3;
        if (far) {
          points.push_back(p);
          break;
        }
      }
      for (const auto& h : points) {
        const cd a = h.is_exact() ? char_singular(rs, W, lam, h).value : char_regular(rs, W, lam, h).value;
        const cd b = char_weightsum_oracle(rs, lam, h).value;
        worst = std::max(worst, std::abs(a - b) / dim);
        ++evaluations;
      }
    }
  }
  return {worst <= 1e-8, std::to_string(evaluations) + " evaluations, max |err|/dim = " + fmt(worst)};
}

Outcome richardson() {
  std::mt19937_64 rng(404);
  const std::vector<std::string> groups{"A2", "A3", "B2", "C3", "G2"};
  double worst = 0;
  for (int inst = 0; inst < 20; ++inst) {
    auto rs = make(groups[rng() % groups.size()]);
    auto W = WeylGroup::generate(rs);
    const Dynkin lam = random_weight(rs, rng, 2, 1000);
    const auto strata = singular_strata(rs);
    const auto h0 = strata[rng() % strata.size()].point;
    const double dim = dim_irrep(rs, lam).get_d();
    // Direction with |delta|_inf <= 1/10 (units of pi), regular along the path.
    std::function<cd(const Rational&)> f;
    std::vector<Rational> delta;
    while (true) {
      delta = random_exact_point(rs, rng, 97, 9).coords_over_pi();
      bool ok = true;
      for (const Rational eps : {Rational(1, 1000), Rational(1, 2000), Rational(1, 4000)}) {
        std::vector<Rational> c(h0.coords_over_pi());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += eps * delta[i];
        ok = ok && rs.degenerate_split(TorusPoint::exact(c)).regular();
      }
      if (ok) break;
    }
    f = [&](const Rational& eps) {
      std::vector<Rational> c(h0.coords_over_pi());
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += eps * delta[i];
      return char_regular(rs, W, lam, TorusPoint::exact(c)).value;
    };
    const Rational e(1, 1000);
    const cd r = (8.0 * f(e / 4) - 6.0 * f(e / 2) + f(e)) / 3.0;
    const cd s = char_singular(rs, W, lam, h0).value;
    worst = std::max(worst, std::abs(r - s) / dim);
  }
  return {worst <= 1e-6, "20 instances, max |extrapolated - singular|/dim = " + fmt(worst)};
}

Outcome dimension_checks(const std::vector<OracleInstance>& instances) {
  std::size_t groups = 0;
  bool ok = true;
  std::string bad;
  auto check = [&](const std::string& name) {
    auto rs = make(name);
    if (classification_weyl_order(rs.spec()) > 3'000'000) return;
    ++groups;
    const BigInt d = dim_irrep(rs, rs.root_dynkin(rs.highest_root()));
    if (d != BigInt(2 * rs.num_positive_roots() + rs.rank())) {
      ok = false;
      bad += " " + name;
    }
  };
  for (int n = 1; n <= 9; ++n) check("A" + std::to_string(n));
  for (int n = 2; n <= 8; ++n) check("B" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) check("C" + std::to_string(n));
  for (int n = 3; n <= 8; ++n) check("D" + std::to_string(n));
  for (const char* e : {"E6", "E7", "E8", "F4", "G2"}) check(e);
  const bool g2 = dim_irrep(make("G2"), make("G2").root_dynkin(5)) == 14;
  std::size_t sums = 0;
  for (const auto& inst : instances) {
    auto rs = make(inst.group);
    BigInt total = 0;
    for (const auto& wm : weight_multiplicities(rs, inst.lambda)) total += wm.multiplicity;
    if (total != dim_irrep(rs, inst.lambda)) {
      ok = false;
      bad += " freudenthal:" + inst.group;
    }
    ++sums;
  }
  return {ok && g2, std::to_string(groups) + " root systems with |W| <= 3e6 (G2 adjoint = 14), " + std::to_string(sums) +
                        " multiplicity sums" + (bad.empty() ? "" : "; mismatches:" + bad)};
}

Outcome stabilizer_structure() {
  std::size_t checked = 0;
  bool ok = true;
  for (const char* name : {"A1", "A2", "A3", "A4"}) {
    auto rs = make(name);
    auto W = WeylGroup::generate(rs);
    for (const auto& h : singular_points(rs)) {
      const auto st = stabilizer(rs, W, h, StabilizerMethod::CrossCheck);
      std::vector<WeightVec> roots;
      for (auto k : rs.degenerate_split(h).deg) roots.push_back(rs.positive_roots()[k]);
      ok = ok && st.order() == effective_subsystem(rs, roots).weyl_order();
      ++checked;
    }
  }
  auto a4 = make("A4");
  auto W = WeylGroup::generate(a4);
  const auto h = TorusPoint::parse("pi/5:pi/5:pi/5:-3/10*pi:-3/10*pi");
  const auto st = stabilizer(a4, W, h, StabilizerMethod::CrossCheck);
  std::vector<WeightVec> roots;
  for (auto k : a4.degenerate_split(h).deg) roots.push_back(a4.positive_roots()[k]);
  const auto sub = effective_subsystem(a4, roots);
  const bool example = st.order() == 12 && sub.name() == "A2xA1";
  return {ok && example, std::to_string(checked) + " strata of A1..A4 match; (a,a,a,b,b) -> |W0| = " +
                             std::to_string(st.order()) + ", subsystem " + sub.name()};
}

struct SweepRecord {
  std::string label;
  double slope = 0;
  std::size_t m = 0;
  bool envelope = false;
};

std::vector<SweepRecord> decay_sweeps() {
  std::vector<SweepRecord> out;
  for (const char* name : {"A2", "A3", "B2", "C3", "G2"}) {
    auto rs = make(name);
    auto W = WeylGroup::generate(rs);
    std::vector<std::pair<std::string, TorusPoint>> strata{{"J={}", stratum_representative(rs, {})}};
    for (const auto& s : singular_strata(rs)) {
      std::string j = "J={";
      for (std::size_t i = 0; i < s.simple_roots.size(); ++i) j += (i ? "," : "") + std::to_string(s.simple_roots[i] + 1);
      strata.emplace_back(j + "}", s.point);
    }
    for (const auto& [j, h] : strata) {
      const auto rep = normalized_char_sweep(rs, W, WeightPath::multiples(Dynkin(rs.rank(), 1), 1, 20), h);
      out.push_back({std::string(name) + " " + j, decay_exponent(rep), rep.decay_roots, rep.envelope_holds});
    }
  }
  return out;
}

Outcome decay_exponents(const std::vector<SweepRecord>& sweeps) {
  std::size_t good = 0, nan = 0;
  std::string worst;
  double worst_dev = -1;
  for (const auto& s : sweeps) {
    if (std::isnan(s.slope)) {
      ++nan;
      continue;
    }
    const double dev = std::fabs(s.slope + static_cast<double>(s.m));
    if (dev <= 0.1) ++good;
    if (dev > worst_dev) {
      worst_dev = dev;
      worst = s.label + " slope " + fmt(s.slope) + " vs -" + std::to_string(s.m);
    }
  }
  return {good == sweeps.size(), std::to_string(good) + "/" + std::to_string(sweeps.size()) +
                                     " sweeps within 0.1 of -m; " + std::to_string(nan) +
                                     " with an exact zero ratio in the fit window; worst: " + worst};
}

Outcome envelope(const std::vector<SweepRecord>& sweeps) {
  std::size_t good = 0;
  std::string bad;
  for (const auto& s : sweeps) {
    if (s.envelope) {
      ++good;
    } else if (bad.empty()) {
      bad = "; first violation: " + s.label;
    }
  }
  return {good == sweeps.size(), std::to_string(good) + "/" + std::to_string(sweeps.size()) + " sweeps bounded" + bad};
}

Outcome certificates() {
  std::mt19937_64 rng(909);
  std::size_t issued = 0;
  bool ok = true;
  std::string bad;
  for (const char* name : {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "D3", "D4", "G2", "F4"}) {
    auto rs = make(name);
    std::vector<Dynkin> bases{Dynkin(rs.rank(), 1)};
    while (bases.size() < 6) {
      Dynkin w(rs.rank());
      for (auto& v : w) v = static_cast<std::int64_t>(rng() % 4);
      if (std::any_of(w.begin(), w.end(), [](auto v) { return v != 0; })) bases.push_back(w);
    }
    for (const auto& s : singular_strata(rs)) {
      const auto split = rs.degenerate_split(s.point);
      for (const auto& base : bases) {
        try {
          const auto cert = divergence_certificate(rs, split, base);
          const WeightVec lam0 = rs.from_dynkin(base);
          const WeightVec& alpha = rs.positive_roots()[cert.root];
          const bool nondeg = std::find(split.ndeg.begin(), split.ndeg.end(), cert.root) != split.ndeg.end();
          Rational prev;
          bool increasing = nondeg;
          for (long k = 1; k <= 50; ++k) {
            const Rational g = rs.inner(Rational(k) * lam0 + rs.weyl_vector(), alpha);
            if (g != cert.growth_at(k) || (k > 1 && !(g > prev))) increasing = false;
            prev = g;
          }
          if (!increasing) {
            ok = false;
            bad += " " + std::string(name);
          }
          ++issued;
        } catch (const Error& e) {
          ok = false;
          bad += " " + std::string(name) + ":" + e.what();
        }
      }
    }
  }
  bool refused = false;
  try {
    auto d2 = make("D2");
    divergence_certificate(d2, d2.degenerate_split(TorusPoint::parse("pi/2:-pi/2")), {1, 1});
  } catch (const Error& e) {
    refused = e.kind() == ErrorKind::Structural;
  }
  return {ok && refused, std::to_string(issued) + " certificates, all strictly increasing; D2 refused: " +
                             (refused ? "yes" : "no") + (bad.empty() ? "" : "; failures:" + bad)};
}

Outcome nonsimple_harness() {
  std::vector<RootSystem> f{make("A1"), make("A1")};
  const auto g = TorusPoint::parse("pi/4:-pi/4");
  const auto flat = nonsimple_counterexample(f, 0, g, 50);
  bool ones = true, growing = true;
  for (std::size_t i = 0; i < flat.entries.size(); ++i) {
    ones = ones && flat.entries[i].ratio == 1.0;
    if (i > 0) growing = growing && flat.entries[i].dim > flat.entries[i - 1].dim;
  }
  const auto grown = nonsimple_counterexample(f, 0, g, 50, true);
  const double last = grown.entries.back().ratio;
  return {ones && growing && last < 1e-2, std::string("ratio == 1 exactly for k <= 50: ") + (ones ? "yes" : "no") +
                                              ", dim at k=50 = " + flat.entries.back().dim.get_str() +
                                              ", grown ratio at k=50 = " + fmt(last)};
}

Outcome kesten_mckay() {
  double worst = 0;
  for (int m = 0; m <= 12; ++m) worst = std::max(worst, std::fabs(km_moment(4, m).get_d() - km_quadrature(4, m)));
  const double derr = std::fabs(delta_opt(4) - std::sqrt(3.0) / 2);
  Eigen::MatrixXd H(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) H(i, j) = km_moment(4, i + j).get_d();
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(H).eigenvalues().minCoeff();
  return {worst <= 1e-8 && derr <= 1e-12 && min_eig >= -1e-14,
          "max quadrature gap " + fmt(worst) + ", delta_opt err " + fmt(derr) + ", Hankel min eigenvalue " + fmt(min_eig)};
}

Outcome spectral_convergence() {
  auto rs = make("A1");
  auto W = WeylGroup::generate(rs);
  const auto S = catalog_free_pair();
  const std::vector<int> ls{5, 10, 20, 40};
  std::vector<std::array<double, 3>> gaps;
  std::vector<double> last_moments;
  for (int l : ls) {
    std::array<double, 3> g{};
    std::vector<double> mom;
    for (int m = 0; m <= 6; ++m) {
      const double v = moment_exact(rs, W, {2 * l}, S, m).value;
      mom.push_back(v);
      if (m >= 2 && m % 2 == 0) g[m / 2 - 1] = std::fabs(v - km_moment(4, m).get_d());
    }
    gaps.push_back(g);
    last_moments = mom;
  }
  bool decreasing = true;
  std::ostringstream detail;
  for (int j = 0; j < 3; ++j) {
    detail << "m=" << 2 * (j + 1) << ":";
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      detail << (i ? "," : "") << fmt(gaps[i][j]);
      if (i > 0 && !(gaps[i][j] < gaps[i - 1][j])) decreasing = false;
    }
    detail << " ";
  }
  const double est = norm_estimate(last_moments);
  const bool near = std::fabs(est - delta_opt(4)) <= 0.1;
  detail << "| strictly decreasing: " << (decreasing ? "yes" : "no") << ", norm_estimate(l=40) = " << fmt(est)
         << " vs delta_opt " << fmt(delta_opt(4));
  return {decreasing && near, detail.str()};
}

Outcome determinism() {
  const std::vector<std::string> runs{
      "char --group G2 --weight 2,1 --point pi/7:pi/3",
      "char --group A2 --weight 3,1 --point 1:1:-2 --format csv",
      "sweep --group B2 --point pi/3:0 --k-max 12",
      "sweep --group A1xA1 --point pi/2|0 --k-max 10 --grow-all --format csv",
      "certificate --group A3 --point 0:0:pi/2:-pi/2 --k-max 6",
      "spectral --group A1 --l 10 --moments 6 --format csv",
      "spectral --group A1 --l 10 --moments 6 --samples 2000 --seed 11 --cap-words 100",
      "weyl --group F4 --format table",
  };
  std::size_t same = 0;
  std::string bad;
  for (const auto& r : runs) {
    const auto quoted = [&](std::string s) {
      std::string out;
      for (char c : s) out += (c == '|') ? std::string("'|'") : std::string(1, c);
      return out;
    }(r);
    const auto a = run_cli(quoted + " --threads 1");
    const auto b = run_cli(quoted + " --threads 4");
    const auto c = run_cli(quoted + " --threads 3");
    if (a == b && b == c && !a.empty() && a.find("\"error\"") == std::string::npos) {
      ++same;
    } else if (bad.empty()) {
      bad = "; differs: " + r;
    }
  }
  return {same == runs.size(), std::to_string(same) + "/" + std::to_string(runs.size()) +
                                   " runs byte-identical across --threads 1, 3, 4" + bad};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
      o.pass = false;
      o.detail += "; runtime limit " + fmt(limit_s) + " s exceeded";
    }
    if (!o.pass) ++failures;
    std::printf("criterion %2d %s  %s: %s (%.2f s)\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  std::vector<OracleInstance> instances;
  std::vector<SweepRecord> sweeps;
  report(1, "SU(2) closed form", 1.0, su2_closed_form);
  report(2, "singular SU(3) adjoint", 1.0, singular_su3_adjoint);
  report(3, "oracle equivalence", 300.0, [&] { return oracle_equivalence(instances); });
  report(4, "Richardson extrapolation", 0, richardson);
  report(5, "dimension cross-checks", 0, [&] { return dimension_checks(instances); });
  report(6, "stabilizer structure", 0, stabilizer_structure);
  report(7, "decay exponents", 600.0, [&] {
    sweeps = decay_sweeps();
    return decay_exponents(sweeps);
  });
  report(8, "universal envelope", 0, [&] { return envelope(sweeps); });
  report(9, "divergence certificates", 0, certificates);
  report(10, "non-simple counterexample", 0, nonsimple_harness);
  report(11, "Kesten-McKay engine", 0, kesten_mckay);
  report(12, "spectral convergence", 600.0, spectral_convergence);
  report(13, "determinism", 0, determinism);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
