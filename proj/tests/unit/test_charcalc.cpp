#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <numbers>
#include <random>

#include "weylchar/asymptotics.hpp"
#include "weylchar/charcalc.hpp"
#include "weylchar/error.hpp"

using namespace weylchar;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

RootSystem make(const char* name) { return RootSystem::build(RootSystemSpec::parse(name)); }

TorusPoint point_over_pi(std::vector<Rational> c) { return TorusPoint::exact(std::move(c)); }

// tr of diag(e^{i h_j}) for the defining representation of SU(N).
cd trace_defining(const std::vector<double>& h) {
  cd t = 0;
  for (double x : h) t += std::polar(1.0, x);
  return t;
}

}  // namespace

TEST_CASE("SU(2) closed form at regular points") {
  auto rs = make("A1");
  auto W = WeylGroup::generate(rs);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> theta_dist(0.05, 2 * kPi - 0.05);
  for (int l2 = 0; l2 <= 20; ++l2) {
    for (int t = 0; t < 5; ++t) {
      const double theta = theta_dist(rng);
      const auto h = TorusPoint::floating({theta / 2, -theta / 2});
      const cd v = char_regular(rs, W, {l2}, h).value;
      const double l = l2 / 2.0;
      CHECK(std::abs(v - std::sin((l + 0.5) * theta) / std::sin(theta / 2)) < 1e-9 * (2 * l + 1));
    }
  }
}

TEST_CASE("char_regular refuses singular points") {
  auto rs = make("A2");
  auto W = WeylGroup::generate(rs);
  try {
    char_regular(rs, W, {1, 1}, TorusPoint::parse("pi/5:pi/5:-2pi/5"));
    FAIL("expected a singular error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
}

TEST_CASE("SU(3) adjoint equals |tr g|^2 - 1 on the singular line") {
  auto rs = make("A2");
  auto W = WeylGroup::generate(rs);
  for (auto [p, q] : {std::pair{1, 7}, std::pair{1, 5}, std::pair{3, 11}}) {
    const Rational a(p, q);
    const auto h = point_over_pi({a, a, -2 * a});
    const auto v = char_singular(rs, W, {1, 1}, h);
    const double x = a.get_d() * kPi;
    CHECK(v.degenerate_roots == 1);
    CHECK(std::abs(v.value - cd(4 + 4 * std::cos(3 * x), 0)) < 1e-9);
    CHECK(std::abs(v.value - (std::norm(trace_defining({x, x, -2 * x})) - 1.0)) < 1e-9);
  }
}

TEST_CASE("snap accepts a = 1 and rejects a split degenerate set") {
  auto rs = make("A2");
  auto W = WeylGroup::generate(rs);
  const auto v = character(rs, W, {1, 1}, TorusPoint::floating({1.0, 1.0, -2.0}));
  REQUIRE(v.snapped.has_value());
  CHECK(v.snapped->coords_over_pi()[0] == Rational(265381, 833719));
  CHECK(std::abs(v.value.real() - (4 + 4 * std::cos(3.0))) < 1e-9);

  // Float-degenerate within 1e-9 but the coordinates rationalize apart.
  try {
    character(rs, W, {1, 1}, TorusPoint::floating({1.0, 1.0 + 5e-10, -2.0 - 5e-10}));
    FAIL("expected a snap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Snap);
  }
}

TEST_CASE("defining and vector representations") {
  auto a3 = make("A3");
  auto Wa = WeylGroup::generate(a3);
  const std::vector<Rational> h{Rational(1, 3), Rational(1, 3), Rational(-1, 7), Rational(-11, 21)};
  std::vector<double> hr;
  for (const auto& c : h) hr.push_back(c.get_d() * kPi);
  CHECK(std::abs(char_singular(a3, Wa, {1, 0, 0}, point_over_pi(h)).value - trace_defining(hr)) < 1e-12);

  auto b2 = make("B2");
  auto Wb = WeylGroup::generate(b2);
  for (const auto& pt : {std::vector<Rational>{Rational(1, 3), Rational(1, 5)},
                         std::vector<Rational>{Rational(1, 2), Rational(0)}}) {
    const double h1 = pt[0].get_d() * kPi, h2 = pt[1].get_d() * kPi;
    const cd v = char_singular(b2, Wb, {1, 0}, point_over_pi(pt)).value;
    CHECK(std::abs(v - cd(1 + 2 * std::cos(h1) + 2 * std::cos(h2), 0)) < 1e-12);
  }
}

TEST_CASE("trivial representation and central points") {
  auto rs = make("C3");
  auto W = WeylGroup::generate(rs);
  CHECK(char_singular(rs, W, {0, 0, 0}, TorusPoint::parse("pi/3:pi/7:pi/9")).value == cd(1, 0));
  CHECK(char_singular(rs, W, {2, 1, 1}, TorusPoint::zero(3)).value.real() == dim_irrep(rs, Dynkin{2, 1, 1}).get_d());
  // -1 in Sp(6) acts by (-1)^(sum of coordinates of lambda).
  const auto minus_one = TorusPoint::parse("pi:pi:pi");
  const auto v = char_singular(rs, W, {1, 0, 0}, minus_one);
  CHECK(v.degenerate_roots == rs.num_positive_roots());
  CHECK(std::abs(v.value - cd(-6, 0)) < 1e-12);
}

TEST_CASE("oracle equivalence at regular and singular points") {
  std::mt19937_64 rng(17);
  for (const char* name : {"B2", "G2", "C3", "A3"}) {
    CAPTURE(name);
    auto rs = make(name);
    auto W = WeylGroup::generate(rs);
    for (int trial = 0; trial < 3; ++trial) {
      Dynkin lam(rs.rank());
      for (auto& v : lam) v = static_cast<std::int64_t>(rng() % 3);
      const double dim = dim_irrep(rs, lam).get_d();
      std::vector<Rational> c(rs.ambient_dim());
      for (auto& x : c) x = Rational(static_cast<long>(rng() % 97), 61);
      if (rs.spec().family == Family::A) c.back() = -std::accumulate(c.begin(), c.end() - 1, Rational(0));
      for (const auto& h : {TorusPoint::exact(c), singular_strata(rs)[trial % singular_strata(rs).size()].point}) {
        const cd a = character(rs, W, lam, h).value;
        const cd b = char_weightsum_oracle(rs, lam, h).value;
        CHECK(std::abs(a - b) < 1e-8 * dim);
      }
    }
  }
}

TEST_CASE("any coset transversal gives the same value") {
  auto rs = make("B3");
  auto W = WeylGroup::generate(rs);
  const auto h = TorusPoint::parse("pi/3:pi/3:0");
  const auto maximal = maximal_coset_transversal(W, stabilizer(rs, W, h)).reps;
  for (const Dynkin& lam : {Dynkin{1, 0, 0}, Dynkin{2, 1, 1}, Dynkin{0, 3, 2}}) {
    const cd a = char_singular(rs, W, lam, h).value;
    const cd b = char_singular(rs, W, lam, h, 1, &maximal).value;
    CHECK(std::abs(a - b) < 1e-9 * dim_irrep(rs, lam).get_d());
  }
}

TEST_CASE("Richardson extrapolation of the regular formula reaches the singular value") {
  auto rs = make("A2");
  auto W = WeylGroup::generate(rs);
  const std::vector<Rational> h0{Rational(1, 5), Rational(1, 5), Rational(-2, 5)};
  const std::vector<Rational> delta{Rational(1, 10), Rational(-1, 30), Rational(-1, 15)};
  const Dynkin lam{2, 1};
  auto f = [&](const Rational& eps) {
    std::vector<Rational> c(3);
    for (int i = 0; i < 3; ++i) c[i] = h0[i] + eps * delta[i];
    return char_regular(rs, W, lam, TorusPoint::exact(c)).value;
  };
  const Rational e(1, 1000);
  const cd r = (8.0 * f(e / 4) - 6.0 * f(e / 2) + f(e)) / 3.0;
  const cd s = char_singular(rs, W, lam, TorusPoint::exact(h0)).value;
  CHECK(std::abs(r - s) < 1e-6 * 15);
}

TEST_CASE("dimensions") {
  for (const char* name : {"A1", "A4", "B3", "C4", "D4", "D5", "E6", "F4", "G2"}) {
    CAPTURE(name);
    auto rs = make(name);
    const Dynkin adj = rs.root_dynkin(rs.highest_root());
    CHECK(dim_irrep(rs, adj) == BigInt(2 * rs.num_positive_roots() + rs.rank()));
  }
  CHECK(dim_irrep(make("A2"), Dynkin{1, 1}) == 8);
  CHECK(dim_irrep(make("A2"), Dynkin{0, 0}) == 1);
  CHECK(dim_irrep(make("E7"), Dynkin{0, 0, 0, 0, 0, 0, 1}) == 56);
  CHECK(dim_irrep(make("E8"), Dynkin{0, 0, 0, 0, 0, 0, 0, 1}) == 248);
}

TEST_CASE("Freudenthal multiplicities sum to the dimension") {
  auto rs = make("G2");
  for (const Dynkin& lam : {Dynkin{1, 0}, Dynkin{0, 1}, Dynkin{2, 1}, Dynkin{1, 3}}) {
    BigInt total = 0;
    for (const auto& wm : weight_multiplicities(rs, lam)) total += wm.multiplicity;
    CHECK(total == dim_irrep(rs, lam));
  }
  // The zero weight of the G2 adjoint has multiplicity equal to the rank.
  for (const auto& wm : dominant_multiplicities(rs, rs.root_dynkin(rs.highest_root()))) {
    if (wm.weight == Dynkin{0, 0}) CHECK(wm.multiplicity == 2);
  }
  CHECK_THROWS_AS(weight_multiplicities(make("A3"), Dynkin{9, 9, 9}, 1000), Error);
}

TEST_CASE("effective weight of the A2 adjoint on the singular line") {
  auto rs = make("A2");
  auto W = WeylGroup::generate(rs);
  const auto split = rs.degenerate_split(TorusPoint::parse("pi/5:pi/5:-2pi/5"));
  const auto ew = effective_weight(rs, W, {1, 1}, W.identity(), split.deg);
  CHECK(ew.image_roots.size() == 1);
  // rho + lambda = (2, 0, -2) projects to (1, -1, 0) on span(e1 - e2): the doublet.
  CHECK(ew.lambda_prime + ew.rho_prime == WeightVec{Rational(1), Rational(-1), Rational(0)});
  CHECK(ew.subdim == 2);
}

TEST_CASE("D2 with lambda = (m, m) on the degenerate stratum keeps ratio 1") {
  // Ambient lambda = m (e1 + e2) has Dynkin labels (0, 2m); e1 + e2 is degenerate.
  auto rs = make("D2");
  auto W = WeylGroup::generate(rs);
  const auto h = TorusPoint::parse("pi/2:-pi/2");
  for (std::int64_t m = 1; m <= 10; ++m) {
    const Dynkin lam{0, 2 * m};
    const double dim = dim_irrep(rs, lam).get_d();
    const double ratio = std::abs(char_singular(rs, W, lam, h).value) / dim;
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-12));
  }
}
