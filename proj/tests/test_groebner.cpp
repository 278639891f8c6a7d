#include <gtest/gtest.h>

#include <random>

#include "bundlekit/groebner.hpp"
#include "bundlekit/hilbert.hpp"
#include "oracle/row_reduction.hpp"

using namespace bundlekit;

namespace {

Poly P(const RingPtr& R, const char* s) { return Poly::parse(R, s); }

std::vector<Vec> as_vecs(const std::vector<Poly>& ps)
{
  std::vector<Vec> v;
  for (auto& p : ps) v.push_back(Vec::from_poly(p, 0));
  return v;
}

// Random homogeneous polynomial of degree d with a few terms.
Poly random_form(const RingPtr& R, std::mt19937_64& rng, int d, int nterms)
{
  auto monos = monomials_of_degree(R->nvars, d);
  std::vector<PolyTerm> terms;
  for (int i = 0; i < nterms; ++i)
    terms.push_back({monos[rng() % monos.size()], static_cast<std::uint32_t>(1 + rng() % (R->p() - 1))});
  return Poly(R, terms);
}

Vec random_vec(const GradedFreeModule& F, std::mt19937_64& rng, int d)
{
  std::vector<Poly> entries;
  for (int c = 0; c < F.rank(); ++c)
    entries.push_back(d - F.degrees[c] >= 0 ? random_form(F.ring, rng, d - F.degrees[c], 2) : Poly(F.ring));
  return Vec::from_polys(F.ring, entries);
}

} // namespace

TEST(Groebner, CurveIdealHilbertFunctionOverF2)
{
  auto R = p3_ring(2);
  std::vector<Poly> gens{P(R, "x^2"), P(R, "y^2"), P(R, "x*z^2 + y*t^2")};
  auto gb = groebner_basis(ideal(R, gens));
  auto hd = hilbert(gb);
  EXPECT_EQ(hd.hilbert_function(2), 8);
  EXPECT_EQ(hd.hilbert_function(3), 11);
  EXPECT_TRUE(gb.spairs_reduce_to_zero());
  GradedFreeModule S(R, {0});
  for (int d = 0; d <= 9; ++d) EXPECT_EQ(hd.hilbert_function(d), oracle::quotient_dim(S, as_vecs(gens), d)) << d;
  EXPECT_EQ(hd.krull_dimension(), 2);
}

TEST(Groebner, RandomIdealsMatchOracle)
{
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    std::uint32_t p = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5;
    auto R = p3_ring(p);
    std::vector<Poly> gens;
    int ngens = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < ngens; ++i) gens.push_back(random_form(R, rng, 1 + static_cast<int>(rng() % 3), 3));
    auto gb = groebner_basis(ideal(R, gens));
    ASSERT_TRUE(gb.spairs_reduce_to_zero());
    auto hd = hilbert(gb);
    GradedFreeModule S(R, {0});
    for (int d = 0; d <= 5; ++d) ASSERT_EQ(hd.hilbert_function(d), oracle::quotient_dim(S, as_vecs(gens), d));
    // membership agrees with the oracle, and normal forms are idempotent
    for (int k = 0; k < 3; ++k) {
      auto f = random_form(R, rng, 3, 4);
      auto v = Vec::from_poly(f, 0);
      auto nf = gb.normal_form(v);
      EXPECT_EQ(gb.normal_form(nf), nf);
      EXPECT_EQ(nf.is_zero(), oracle::member(S, as_vecs(gens), v));
      auto g = gens[rng() % gens.size()] * random_form(R, rng, 1, 2);
      EXPECT_TRUE(gb.contains(Vec::from_poly(g, 0)));
    }
  }
}

TEST(Groebner, RandomModulesMatchOracle)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto R = p3_ring(trial % 2 ? 3 : 2);
    GradedFreeModule F(R, {0, 1, static_cast<int>(rng() % 3) - 1});
    std::vector<Vec> gens;
    int ngens = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < ngens; ++i) gens.push_back(random_vec(F, rng, 1 + static_cast<int>(rng() % 3)));
    auto gb = groebner_basis(F, gens);
    ASSERT_TRUE(gb.spairs_reduce_to_zero());
    auto hd = hilbert(gb);
    for (int d = -1; d <= 4; ++d) ASSERT_EQ(hd.hilbert_function(d), oracle::quotient_dim(F, gens, d)) << trial << " " << d;
    // the minimal generators generate the same module
    std::vector<Vec> minimal;
    for (int i : gb.minimal_generators()) minimal.push_back(gens[i]);
    EXPECT_TRUE(groebner_basis(F, minimal).same_submodule(gb));
    // syzygies really are relations
    auto syz = syzygies(F, gens);
    for (auto& s : syz.cols) {
      Vec combo(R);
      for (auto& t : s.terms()) combo = combo + gens[t.comp].times_monomial(t.mono, t.coef);
      EXPECT_TRUE(combo.is_zero());
    }
  }
}

TEST(Groebner, KoszulSyzygies)
{
  auto R = p3_ring(3);
  auto syz = syzygies(GradedFreeModule(R, {0}), as_vecs({P(R, "x"), P(R, "y"), P(R, "z")}));
  EXPECT_EQ(syz.ncols(), 3);
  for (int d : syz.source.degrees) EXPECT_EQ(d, 2);
  auto syz2 = syzygies(GradedFreeModule(R, {0}), as_vecs({P(R, "x^2"), P(R, "y^3")}));
  ASSERT_EQ(syz2.ncols(), 1);
  EXPECT_EQ(syz2.source.degrees, std::vector<int>{5});
}

TEST(Groebner, TrackedLiftReproducesTarget)
{
  auto R = p3_ring(5);
  std::vector<Vec> gens = as_vecs({P(R, "x^2 + y*z"), P(R, "y^2 - t*x"), P(R, "z*t")});
  TrackedBasis tb(GradedFreeModule(R, {0}), gens);
  auto target = Vec::from_poly(P(R, "x^3 + x*y*z + 3*z*t^2 - y^2*t + x*t*t"), 0);
  auto c = tb.lift(target);
  ASSERT_TRUE(c.has_value());
  Vec combo(R);
  for (auto& t : c->terms()) combo = combo + gens[t.comp].times_monomial(t.mono, t.coef);
  EXPECT_EQ(combo, target);
  EXPECT_FALSE(tb.lift(Vec::from_poly(P(R, "x^3"), 0)).has_value());
}

TEST(Groebner, ColonAndSaturation)
{
  auto R = p3_ring(2);
  GradedFreeModule S(R, {0});
  auto q = colon_saturate({P(R, "x*y"), P(R, "x*z")}, P(R, "x"), ColonMode::colon);
  EXPECT_TRUE(groebner_basis(S, as_vecs(q.generators)).same_submodule(groebner_basis(S, as_vecs({P(R, "y"), P(R, "z")}))));
  auto s = colon_saturate({P(R, "x^3*y"), P(R, "x^2*z")}, P(R, "x"), ColonMode::saturation);
  EXPECT_TRUE(groebner_basis(S, as_vecs(s.generators)).same_submodule(groebner_basis(S, as_vecs({P(R, "y"), P(R, "z")}))));
  EXPECT_EQ(s.stabilization_exponent, 3);
  EXPECT_THROW(colon_saturate({P(R, "x")}, Poly(R), ColonMode::colon), ZeroDivisorArgument);
}

TEST(Hilbert, PolynomialOfTwistedCubicStyleCurve)
{
  // complete intersection of two quadrics: Hilbert polynomial 4t
  auto R = p3_ring(3);
  auto hd = hilbert(groebner_basis(ideal(R, {P(R, "x*y - z*t"), P(R, "x^2 + y^2 - t^2")})));
  EXPECT_EQ(hd.krull_dimension(), 2);
  EXPECT_EQ(hd.multiplicity(), 4);
  EXPECT_EQ(hd.hilbert_polynomial(), RationalPoly({Rational(0), Rational(4)}));
  for (int d = hd.regularity_index(); d < hd.regularity_index() + 5; ++d)
    EXPECT_EQ(Rational(hd.hilbert_function(d)), hd.hilbert_polynomial()(Rational(d)));
}

TEST(Groebner, NotHomogeneousIsRejected)
{
  auto R = p3_ring(2);
  EXPECT_THROW(groebner_basis(ideal(R, {P(R, "x^2 + y")})), NotHomogeneous);
}
