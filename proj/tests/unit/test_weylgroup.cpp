#include <doctest.h>

#include <cstdlib>
#include <set>

#include "weylchar/charcalc.hpp"
#include "weylchar/error.hpp"
#include "weylchar/weylgroup.hpp"

using namespace weylchar;

namespace {

RootSystem make(const char* name) { return RootSystem::build(RootSystemSpec::parse(name)); }

// Poincare polynomial prod_i (1 + q + ... + q^{d_i - 1}) from the degrees.
std::vector<std::uint64_t> poincare(const std::vector<int>& degrees) {
  std::vector<std::uint64_t> p{1};
  for (int d : degrees) {
    std::vector<std::uint64_t> next(p.size() + d - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (int j = 0; j < d; ++j) next[i + j] += p[i];
    }
    p = next;
  }
  return p;
}

std::vector<std::uint64_t> length_counts(const WeylGroup& W) {
  std::vector<std::uint64_t> c;
  for (std::size_t i = 0; i < W.order(); ++i) {
    const auto len = static_cast<std::size_t>(W.length(i));
    if (c.size() <= len) c.resize(len + 1, 0);
    ++c[len];
  }
  return c;
}

}  // namespace

TEST_CASE("group orders match the classification") {
  for (const char* name : {"A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "D3", "D4", "G2", "F4", "E6"}) {
    CAPTURE(name);
    auto rs = make(name);
    auto W = WeylGroup::generate(rs);
    CHECK(W.order() == classification_weyl_order(rs.spec()));
  }
}

TEST_CASE("length distribution is the Poincare polynomial") {
  CHECK(length_counts(WeylGroup::generate(make("A3"))) == poincare({2, 3, 4}));
  CHECK(length_counts(WeylGroup::generate(make("B3"))) == poincare({2, 4, 6}));
  CHECK(length_counts(WeylGroup::generate(make("G2"))) == poincare({2, 6}));
  CHECK(length_counts(WeylGroup::generate(make("F4"))) == poincare({2, 6, 8, 12}));
}

TEST_CASE("multiplication, inverses and words agree with matrices") {
  auto rs = make("B3");
  auto W = WeylGroup::generate(rs);
  const WeightVec x{Rational(3), Rational(-1, 2), Rational(5, 7)};
  for (std::size_t i = 0; i < W.order(); i += 5) {
    const auto inv = W.inverse(i);
    CHECK(W.multiply(i, inv) == W.identity());
    const auto wi = W.element(rs, i);
    CHECK(static_cast<int>(wi.length()) == W.length(i));
    CHECK(wi.sign == W.sign(i));
    for (std::size_t j = 1; j < W.order(); j += 7) {
      const auto wj = W.element(rs, j);
      const auto wij = W.element(rs, W.multiply(i, j));
      CHECK(wij.apply(x) == wi.apply(wj.apply(x)));
    }
  }
}

TEST_CASE("reflection index maps to the root reflection") {
  auto rs = make("G2");
  auto W = WeylGroup::generate(rs);
  const WeightVec x{Rational(2), Rational(3)};
  for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
    const auto r = W.reflection(rs, k);
    CHECK(W.element(rs, r).apply(x) == rs.reflect(rs.positive_roots()[k], x));
    CHECK(W.sign(r) == -1);
  }
}

TEST_CASE("capacity cap rejects E8 by default") {
  auto e8 = make("E8");
  try {
    WeylGroup::generate(e8);
    FAIL("expected a capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
  CHECK_THROWS_AS(WeylGroup::generate(make("B4"), 100), Error);
}

TEST_CASE("cap override from the environment") {
  ::setenv("WEYLCHAR_CAP_WEYL", "50", 1);
  CHECK(default_weyl_cap() == 50);
  ::setenv("WEYLCHAR_CAP_WEYL", "many", 1);
  CHECK_THROWS_AS(default_weyl_cap(), Error);
  ::unsetenv("WEYLCHAR_CAP_WEYL");
  CHECK(default_weyl_cap() == kDefaultWeylCap);
}

TEST_CASE("A4 stabilizer of (a,a,a,b,b) is S3 x S2") {
  auto rs = make("A4");
  auto W = WeylGroup::generate(rs);
  const auto h = TorusPoint::parse("pi/5:pi/5:pi/5:-3/10*pi:-3/10*pi");
  const auto st = stabilizer(rs, W, h, StabilizerMethod::CrossCheck);
  CHECK(st.order() == 12);
  const auto split = rs.degenerate_split(h);
  std::vector<WeightVec> roots;
  for (auto k : split.deg) roots.push_back(rs.positive_roots()[k]);
  const auto sub = effective_subsystem(rs, roots);
  CHECK(sub.name() == "A2xA1");
  CHECK(sub.weyl_order() == 12);
}

TEST_CASE("stabilizer counts off-alcove torus identifications") {
  // On the torus -pi/2 and 3pi/2 coincide, so the swap below fixes the point.
  auto rs = make("A1");
  auto W = WeylGroup::generate(rs);
  const auto st = stabilizer(rs, W, TorusPoint::parse("pi:-pi"), StabilizerMethod::CrossCheck);
  CHECK(st.order() == 2);
}

TEST_CASE("coset transversals") {
  auto rs = make("B3");
  auto W = WeylGroup::generate(rs);
  const auto h = TorusPoint::parse("pi/3:pi/3:0");
  const auto st = stabilizer(rs, W, h);
  const auto minimal = coset_transversal(W, st);
  const auto maximal = maximal_coset_transversal(W, st);
  CHECK(minimal.reps.size() * st.order() == W.order());
  CHECK(maximal.reps.size() == minimal.reps.size());
  const auto split = rs.degenerate_split(h);
  std::set<std::size_t> seen;
  for (auto b : minimal.reps) {
    CHECK(is_minimal_coset_rep(rs, W, b, split.deg));
    seen.insert(b);
  }
  CHECK(seen.size() == minimal.reps.size());
  std::size_t not_minimal = 0;
  for (auto b : maximal.reps) not_minimal += is_minimal_coset_rep(rs, W, b, split.deg) ? 0 : 1;
  CHECK(not_minimal > 0);
}
