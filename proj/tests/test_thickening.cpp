#include <gtest/gtest.h>

#include "bundlekit/pipeline.hpp"
#include "bundlekit/thickening.hpp"
#include "oracle/module_check.hpp"

using namespace bundlekit;

namespace {

// O + O(-1) on P^3 with phi(e0) = e1, phi(e1) = 0, and psi = the given columns.
ExtensionInput block_shift(const RingPtr& R, int psi_rank)
{
  auto M = GradedModule::free(GradedFreeModule(R, {0, 1}));
  ExtensionInput in;
  in.M = M;
  in.phi = ModuleMap(M, M, {Vec::unit(R, 1), Vec(R)}, 1);
  std::vector<int> gdeg{0, 1};
  gdeg.resize(psi_rank);
  std::vector<Vec> im;
  for (int j = 0; j < psi_rank; ++j) im.push_back(Vec::unit(R, j));
  in.psi = ModuleMap(GradedModule::free(GradedFreeModule(R, gdeg)), M, im, 0);
  return in;
}

void expect_same_hilbert(const GradedModule& a, const GradedModule& b, int lo, int hi)
{
  for (int d = lo; d <= hi; ++d) EXPECT_EQ(a.hilbert().hilbert_function(d), b.hilbert().hilbert_function(d)) << d;
}

} // namespace

TEST(Thicken, ZeroShiftGivesTheHyperplane)
{
  auto R = p3_ring(2);
  auto M = GradedModule::free(GradedFreeModule(R, {0}));
  ExtensionInput in{M, ModuleMap(M, M, {Vec(R)}, 1), ModuleMap::identity(M)};
  auto t = thicken(in);
  EXPECT_EQ(t.order, 1);
  EXPECT_TRUE(all_passed(t.checks));
  const auto& S = t.big_ring;
  expect_same_hilbert(t.F, GradedModule::cyclic_quotient(S, {Poly::variable(S, 4)}), 0, 8);

  // the section S' -> S'/(w) has kernel (w) = O(-1)
  auto s = section_map(t, in);
  EXPECT_EQ(s.cokernel_dim, -1);
  auto k = kernel_bundle(s);
  EXPECT_TRUE(all_passed(k.checks));
  EXPECT_EQ(k.rank, 1);
  expect_same_hilbert(k.E, GradedModule::free(GradedFreeModule(S, {1})), -1, 8);
}

TEST(Thicken, BlockShiftGivesDoubleHyperplane)
{
  auto R = p3_ring(3);
  auto in = block_shift(R, 1);
  auto t = thicken(in);
  EXPECT_EQ(t.order, 2);
  EXPECT_TRUE(all_passed(t.checks));
  const auto& S = t.big_ring;
  auto w2 = Poly::variable(S, 4).pow(2);
  expect_same_hilbert(t.F, GradedModule::cyclic_quotient(S, {w2}), 0, 8);
  auto pr = prune(t.F).module;
  EXPECT_EQ(pr.ngens(), 1);

  auto k = kernel_bundle(section_map(t, in));
  EXPECT_TRUE(all_passed(k.checks));
  expect_same_hilbert(k.E, GradedModule::free(GradedFreeModule(S, {2})), -1, 8);
}

TEST(Thicken, SplitInputGivesSplitBundle)
{
  auto R = p3_ring(2);
  auto in = block_shift(R, 2);
  auto t = thicken(in);
  auto k = kernel_bundle(section_map(t, in));
  EXPECT_EQ(k.rank, 2);
  EXPECT_TRUE(all_passed(k.checks));
  auto tr = cohomology_transfer(k, t);
  EXPECT_TRUE(all_passed(tr.checks));
  EXPECT_FALSE(tr.M_scan.witness.has_value());
  EXPECT_FALSE(tr.E_scan.witness.has_value());
}

TEST(Thicken, RejectsNonNilpotentShift)
{
  auto R = p3_ring(2);
  auto M = GradedModule::free(GradedFreeModule(R, {0}));
  ExtensionInput in{M, ModuleMap(M, M, {Vec::unit(R, 0, Monomial::variable(2))}, 1), ModuleMap::identity(M)};
  EXPECT_THROW(thicken(in), NotNilpotent);
}

TEST(Thicken, RejectsNonSurjectiveSection)
{
  auto R = p3_ring(2);
  auto in = block_shift(R, 1);
  in.psi = ModuleMap(in.psi.source, in.M, {Vec(R)}, 0);
  auto t = thicken(in);
  try {
    section_map(t, in);
    FAIL() << "expected NotSurjective";
  } catch (const NotSurjective& e) {
    EXPECT_GT(e.dimension, 0);
    EXPECT_GE(e.witness_degree, 0);
  }
}

TEST(Extension, DefaultInstanceTransfer)
{
  RunConfig cfg;
  auto r = run_pipeline(cfg);
  ASSERT_TRUE(r.all_passed());
  ASSERT_TRUE(r.thick && r.kernel && r.transfer);
  EXPECT_EQ(r.kernel->rank, 2);
  EXPECT_EQ(r.thick->order, 3);
  // h^i(M(l)) = h^{i+1}(E(l)) for 0 < i < 3 across the whole window
  SheafCohomology cM(r.thick->base), cE(r.kernel->E);
  int compared = 0;
  for (int i = 1; i < 3; ++i)
    for (int l = r.transfer->lo; l <= r.transfer->hi; ++l) {
      EXPECT_EQ(cM.h(i, l), cE.h(i + 1, l)) << i << " " << l;
      ++compared;
    }
  EXPECT_GT(compared, 10);
  ASSERT_TRUE(r.transfer->E_scan.witness.has_value());
  EXPECT_EQ(*r.transfer->E_scan.witness, std::make_pair(1, 2));
  EXPECT_EQ(r.stats.at("E").generators, 12);
  EXPECT_EQ(oracle::compare_module(r.kernel->E, oracle::default_dmax(r.kernel->E), 4), "");
  EXPECT_EQ(oracle::compare_module(r.thick->F, oracle::default_dmax(r.thick->F), 5), "");
}
