#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "doctest.h"
#include "pv/picard.hpp"
#include "pv/scenario.hpp"

using namespace pv;

namespace {

IntVec vec(std::initializer_list<std::int64_t> xs) {
  IntVec v(static_cast<int>(xs.size()));
  int i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

DivisorClass random_class(const SurfacePtr& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coeff(-50, 50);
  IntVec v(s->rank());
  for (int i = 0; i < s->rank(); ++i) v[i] = coeff(rng);
  return s->make(v);
}

void check_involution_properties(const SurfacePtr& s, const Involution& inv,
                                 int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const DivisorClass k = s->canonical();
  REQUIRE(inv.apply(k) == k);
  for (int t = 0; t < trials; ++t) {
    const DivisorClass d = random_class(s, rng);
    const DivisorClass e = random_class(s, rng);
    const DivisorClass id = inv.apply(d), ie = inv.apply(e);
    CHECK(inv.apply(id) == d);                // involution
    CHECK(pair(id, ie) == pair(d, e));        // isometry
    CHECK(pair(id, k) == pair(d, k));         // K-degree preserved
    CHECK(chi(id - ie) == chi(d - e));        // chi of differences invariant
  }
}

}  // namespace

TEST_CASE("lattice shapes and intersection numbers") {
  const SurfacePtr p2 = SurfaceLattice::blowup_p2(11);
  CHECK(p2->rank() == 12);
  CHECK(p2->describe() == "p2:11");
  const DivisorClass h = p2->basis(0);
  CHECK(self_intersection(h) == 1);
  CHECK(self_intersection(p2->exceptional(0)) == -1);
  CHECK(pair(h, p2->exceptional(3)) == 0);
  const DivisorClass k = p2->canonical();
  // [DERIVED] K = -3H + sum E, K^2 = 9 - 11 = -2.
  CHECK(k.coeffs() == vec({-3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(self_intersection(k) == -2);

  const SurfacePtr f2 = SurfaceLattice::blowup_hirzebruch(2, 9);
  CHECK(f2->rank() == 11);
  CHECK(f2->describe() == "f2:9");
  const DivisorClass c = f2->basis(0), f = f2->basis(1);
  CHECK(self_intersection(c) == -2);
  CHECK(pair(c, f) == 1);
  CHECK(self_intersection(f) == 0);
  // [DERIVED] K = -2C - 4F + sum E on Bl_9 F_2; K^2 = 8 - 9 = -1.
  CHECK(f2->canonical().coeffs() ==
        vec({-2, -4, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
  CHECK(self_intersection(f2->canonical()) == -1);

  // [DERIVED] K^2 = 8 - 9 = -1 on Bl_9 F_4 as well.
  const SurfacePtr f4 = SurfaceLattice::blowup_hirzebruch(4, 9);
  CHECK(self_intersection(f4->canonical()) == -1);
}

TEST_CASE("Riemann-Roch values") {
  const SurfacePtr p2 = SurfaceLattice::blowup_p2(11);
  CHECK(chi(p2->zero()) == 1);
  CHECK(chi(p2->make(vec({1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}))) == 3);
  CHECK(chi(p2->exceptional(0)) == 1);
  // [DERIVED] chi(-K) = 1 + K.2K/2 = 1 + K^2 = -1 when K^2 = -2.
  CHECK(chi(-p2->canonical()) == -1);
}

TEST_CASE("canonical reflection golden values") {
  const SurfacePtr p2 = SurfaceLattice::blowup_p2(11);
  const Involution inv = Involution::canonical_reflection(p2);
  const DivisorClass h = p2->basis(0);
  // [PAPER: Lemma 3.1] iota(H) = -10H + 3 sum E on the blowup at 11 points.
  CHECK(inv.apply(h).coeffs() ==
        vec({-10, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3}));
  // [PAPER: Thm 1.1] iota(E_1) = K - E_1 = -3H + sum E - E_1.
  CHECK(inv.apply(p2->exceptional(0)).coeffs() ==
        vec({-3, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));

  const SurfacePtr f2 = SurfaceLattice::blowup_hirzebruch(2, 9);
  const Involution invf = Involution::canonical_reflection(f2);
  // [PAPER: Thm 1.5] iota(F) = 4K - F = -8C - 17F + 4 sum E.
  CHECK(invf.apply(f2->basis(1)).coeffs() ==
        vec({-8, -17, 4, 4, 4, 4, 4, 4, 4, 4, 4}));
  // [DERIVED] iota(E_1) = 2K - E_1 on Bl_9 F_2 since E_1.K = -1, K^2 = -1.
  CHECK(invf.apply(f2->exceptional(0)).coeffs() ==
        vec({-4, -8, 1, 2, 2, 2, 2, 2, 2, 2, 2}));
}

TEST_CASE("canonical reflection rejects other K^2") {
  CHECK_THROWS_AS(Involution::canonical_reflection(SurfaceLattice::blowup_p2(5)),
                  NonIntegralReflection);
}

TEST_CASE("canonical reflection properties (random)") {
  check_involution_properties(SurfaceLattice::blowup_p2(11),
                              Involution::canonical_reflection(
                                  SurfaceLattice::blowup_p2(11)),
                              5000, 0xC0FFEE);
  check_involution_properties(
      SurfaceLattice::blowup_hirzebruch(2, 9),
      Involution::canonical_reflection(SurfaceLattice::blowup_hirzebruch(2, 9)),
      5000, 0xBEEF);
}

TEST_CASE("plane reflection golden values and properties") {
  const ScenarioArtifacts art = build_scenario("p2-10-alt");
  REQUIRE(art.involution.has_value());
  const SurfacePtr s = art.surface;
  const DivisorClass h = s->basis(0);
  const DivisorClass v = s->make(vec({-3, 2, 2, 1, 1, 1, 1, 1, 0, 0, 0}));
  const DivisorClass w = s->make(vec({-1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1}));
  // [PAPER: Thm 3.3] iota(H) = H + 18v + 26w.
  CHECK(art.involution->apply(h) == h + v * 18 + w * 26);
  // [PAPER: Thm 3.3] iota(E_1) = E_1 + 8v + 12w.
  CHECK(art.involution->apply(s->exceptional(0)) ==
        s->exceptional(0) + v * 8 + w * 12);
  // [DERIVED] iota(E_3) = E_3 + 4v + 6w, iota(E_8) = E_8 + 6v + 8w.
  CHECK(art.involution->apply(s->exceptional(2)) ==
        s->exceptional(2) + v * 4 + w * 6);
  CHECK(art.involution->apply(s->exceptional(7)) ==
        s->exceptional(7) + v * 6 + w * 8);
  check_involution_properties(s, *art.involution, 5000, 0xA17);
}

TEST_CASE("plane reflection rejects degenerate planes") {
  const SurfacePtr s = SurfaceLattice::blowup_p2(10);
  const DivisorClass e1 = s->exceptional(0);
  CHECK_THROWS_AS(Involution::plane_reflection(e1, e1 * 2), SingularPlane);
}

TEST_CASE("numerical exceptionality") {
  const SurfacePtr s = SurfaceLattice::blowup_p2(11);
  std::vector<DivisorClass> coll = {s->zero()};
  for (int i = 0; i < 11; ++i) coll.push_back(s->exceptional(i));
  coll.push_back(s->basis(0));
  coll.push_back(s->basis(0) * 2);
  CHECK(is_numerically_exceptional(coll).ok);

  // Swapping H in front of the E_i breaks exceptionality: chi(E_i - H) != 0.
  std::vector<DivisorClass> bad = {s->zero(), s->basis(0),
                                   s->exceptional(0)};
  const ExceptionalityVerdict v = is_numerically_exceptional(bad);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.witnesses.empty());
}

TEST_CASE("overflow is detected, not wrapped") {
  const SurfacePtr s = SurfaceLattice::blowup_p2(10);
  IntVec big = IntVec::Zero(11);
  big[0] = std::int64_t(1) << 62;
  const DivisorClass d = s->make(big);
  CHECK_THROWS_AS((void)pair(d, d), OverflowError);
}

TEST_CASE("surface mismatch is rejected") {
  const SurfacePtr a = SurfaceLattice::blowup_p2(10);
  const SurfacePtr b = SurfaceLattice::blowup_p2(11);
  CHECK_THROWS_AS((void)(a->basis(0) + b->basis(0)), SurfaceMismatch);
}
