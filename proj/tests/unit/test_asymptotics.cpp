#include <doctest.h>

#include <cmath>

#include "weylchar/asymptotics.hpp"
#include "weylchar/error.hpp"

using namespace weylchar;

namespace {

RootSystem make(const char* name) { return RootSystem::build(RootSystemSpec::parse(name)); }

}  // namespace

TEST_CASE("stratum representatives vanish exactly on J") {
  for (const char* name : {"A3", "B3", "C3", "G2", "F4"}) {
    CAPTURE(name);
    auto rs = make(name);
    const auto strata = singular_strata(rs);
    CHECK(strata.size() == (std::size_t{1} << rs.rank()) - 2);
    for (const auto& s : strata) {
      const auto split = rs.degenerate_split(s.point);
      for (int i = 0; i < rs.rank(); ++i) {
        const bool in_j = std::find(s.simple_roots.begin(), s.simple_roots.end(), i) != s.simple_roots.end();
        const Rational x = rs.root_pairing_over_pi(rs.simple_root_index(i), s.point);
        CHECK((sgn(x) == 0) == in_j);
        CHECK(sgn(x) >= 0);
      }
      // Inside the alcove: the highest root pairs below pi.
      CHECK(rs.root_pairing_over_pi(rs.highest_root(), s.point) < 1);
      CHECK_FALSE(split.ndeg.empty());
    }
  }
}

TEST_CASE("sweep at the identity is exactly 1") {
  auto rs = make("B2");
  auto W = WeylGroup::generate(rs);
  const auto rep = normalized_char_sweep(rs, W, WeightPath::multiples({1, 1}, 1, 6), TorusPoint::zero(2));
  for (const auto& e : rep.entries) CHECK(e.ratio == 1.0);
  CHECK(rep.central);
}

TEST_CASE("sweep ratios match the SU(2) closed form") {
  auto rs = make("A1");
  auto W = WeylGroup::generate(rs);
  const auto rep = normalized_char_sweep(rs, W, WeightPath::multiples({1}, 1, 30), TorusPoint::parse("pi/3:-pi/3"));
  REQUIRE(rep.entries.size() == 30);
  for (const auto& e : rep.entries) {
    const double l = e.k / 2.0, theta = 2 * M_PI / 3;
    const double closed = std::abs(std::sin((l + 0.5) * theta) / std::sin(theta / 2)) / (2 * l + 1);
    CHECK(e.ratio == doctest::Approx(closed).epsilon(1e-12));
  }
  CHECK(rep.decay_roots == 1);
  CHECK(rep.envelope_holds);
}

TEST_CASE("decay exponent needs five entries and ignores exact zeros gracefully") {
  DecayReport short_report;
  short_report.entries.resize(3);
  CHECK_THROWS_AS(decay_exponent(short_report), Error);
}

TEST_CASE("divergence certificate growth is strictly increasing") {
  for (const char* name : {"A4", "B3", "C3", "D4", "G2", "F4"}) {
    CAPTURE(name);
    auto rs = make(name);
    for (const auto& s : singular_strata(rs)) {
      const auto split = rs.degenerate_split(s.point);
      const Dynkin rho(rs.rank(), 1);
      const auto cert = divergence_certificate(rs, split, rho);
      CHECK(std::find(split.ndeg.begin(), split.ndeg.end(), cert.root) != split.ndeg.end());
      CHECK(sgn(cert.pairing) > 0);
      for (std::int64_t k = 1; k < 20; ++k) CHECK(cert.growth_at(k + 1) > cert.growth_at(k));
    }
  }
}

TEST_CASE("certificate falls back to a Dynkin chain") {
  // lambda0 = omega_1 on a stratum where alpha_1 is degenerate.
  auto rs = make("A4");
  const auto h = stratum_representative(rs, {0, 1});
  const auto cert = divergence_certificate(rs, rs.degenerate_split(h), {1, 0, 0, 0});
  CHECK(cert.construction == "chain");
  CHECK(cert.chain.front() == 0);
  CHECK(sgn(cert.pairing) > 0);
}

TEST_CASE("certificate refuses D2 and central points") {
  auto d2 = make("D2");
  try {
    divergence_certificate(d2, d2.degenerate_split(TorusPoint::parse("pi/2:-pi/2")), {1, 1});
    FAIL("expected a structural error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Structural);
  }
  auto a2 = make("A2");
  CHECK_THROWS_AS(divergence_certificate(a2, a2.degenerate_split(TorusPoint::zero(3)), {1, 1}), Error);
  CHECK_THROWS_AS(divergence_certificate(a2, a2.degenerate_split(TorusPoint::parse("pi/5:pi/5:-2pi/5")), {0, 0}),
                  Error);
}

TEST_CASE("non-simple harness") {
  std::vector<RootSystem> f{make("A1"), make("A1")};
  const auto g = TorusPoint::parse("pi/4:-pi/4");
  const auto flat = nonsimple_counterexample(f, 0, g, 30);
  for (const auto& e : flat.entries) {
    CHECK(e.ratio == 1.0);
    CHECK(e.dim == BigInt(2 * e.k + 1));
  }
  const auto grown = nonsimple_counterexample(f, 0, g, 50, true);
  CHECK(grown.entries.back().ratio < 1e-2);
  CHECK_THROWS_AS(nonsimple_counterexample({make("A2")}, 0, TorusPoint::zero(3), 5), Error);
}
