#ifndef BUNDLEKIT_THICKENING_HPP
#define BUNDLEKIT_THICKENING_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "checks.hpp"
#include "cohomology.hpp"
#include "freeness.hpp"

namespace bundlekit {

/// A module M on P^n with a nilpotent phi : M -> M(1) and psi : G -> M, G free.
struct ExtensionInput {
  GradedModule M;
  ModuleMap phi;  // shift 1
  ModuleMap psi;  // G -> M, shift 0
};

class NotNilpotent : public std::runtime_error {
public:
  explicit NotNilpotent(int bound) : std::runtime_error("phi^m != 0 for all m <= " + std::to_string(bound)) {}
};

class NotSurjective : public std::runtime_error {
public:
  NotSurjective(int dim, int degree)
      : std::runtime_error("section map is not surjective as sheaves: cokernel has Krull dimension " + std::to_string(dim) +
                           " and is nonzero in degree " + std::to_string(degree)),
        dimension(dim), witness_degree(degree)
  {
  }
  int dimension;
  int witness_degree;
};

/// The sheaf on the order-m thickening of P^n in P^{n+1} (new variable w,
/// last) given by (M, phi): same generators, extra relations w e_j - phi(e_j).
struct ThickenedModule {
  GradedModule base;  // over R
  ModuleMap phi;
  int order = 0;      // least m with phi^m = 0
  RingPtr big_ring;   // R[w]
  GradedModule F;     // over R[w]
  std::vector<Check> checks;
};

/// Ring with one more variable "w", same characteristic.
inline RingPtr add_variable(const RingPtr& R)
{
  auto names = R->names;
  names.push_back("w");
  return make_ring(R->p(), names);
}

inline ThickenedModule thicken(const ExtensionInput& in)
{
  const GradedModule& M = in.M;
  const RingPtr& R = M.ring();
  if (in.phi.shift != 1) throw std::invalid_argument("thicken: phi must have twist 1");
  ThickenedModule t;
  t.base = M;
  t.phi = in.phi;
  const int bound = M.ngens() + 1;
  {
    ModuleMap acc = ModuleMap::identity(M);
    int m = 0;
    while (!acc.is_zero()) {
      if (m >= bound) throw NotNilpotent(bound);
      acc = compose(in.phi, acc);
      ++m;
    }
    t.order = m;
  }
  t.big_ring = add_variable(R);
  const RingPtr& S = t.big_ring;
  const int w = R->nvars;
  GradedMatrix pres = embed(M.presentation(), S);
  for (int j = 0; j < M.ngens(); ++j) {
    pres.cols.push_back(Vec::unit(S, j, Monomial::variable(w)) - in.phi.images[j].embed(S));
    pres.source.degrees.push_back(M.generators().degrees[j] + 1);
  }
  t.F = GradedModule(std::move(pres));

  Check c{"thickening.pushforward", "w^m kills F and F has the Hilbert function of M", false, {}};
  bool killed = true;
  Poly wm = Poly::variable(S, w).pow(t.order);
  for (int j = 0; j < M.ngens(); ++j)
    if (!t.F.is_zero_element(Vec::unit(S, j).times(wm))) killed = false;
  // HS_F = HS_M exactly: numerators differ by the factor (1 - t)
  LaurentPoly lifted = M.hilbert().numerator();
  LaurentPoly expected;
  expected.add_shifted(lifted.c, lifted.low);
  std::vector<long long> neg(lifted.c.size());
  for (std::size_t i = 0; i < lifted.c.size(); ++i) neg[i] = -lifted.c[i];
  expected.add_shifted(neg, lifted.low + 1);
  expected.trim();
  bool same = t.F.hilbert().numerator() == expected;
  c.passed = killed && same;
  c.add("order", t.order).add("w^m kills F", killed).add("hilbert series equal", same);
  t.checks.push_back(c);
  return t;
}

/// The R[w]-map F -> the thickened module induced by psi on the generators of F.
struct SectionMap {
  ModuleMap map;  // free module over R[w] with G's twists -> thick.F
  int cokernel_dim = -1;
};

inline SectionMap section_map(const ThickenedModule& t, const ExtensionInput& in)
{
  const RingPtr& S = t.big_ring;
  if (in.psi.source.nrelations() != 0) throw std::invalid_argument("section_map: G must be free");
  GradedFreeModule Ff(S, in.psi.source.generators().degrees);
  std::vector<Vec> im;
  for (auto& v : in.psi.images) im.push_back(v.embed(S));
  SectionMap s{ModuleMap(GradedModule::free(Ff), t.F, std::move(im), 0), -1};
  auto Q = cokernel(s.map).target;
  auto h = Q.hilbert();
  s.cokernel_dim = h.krull_dimension();
  if (s.cokernel_dim > 0) {
    int deg = h.regularity_index();
    while (h.hilbert_function(deg) == 0) ++deg;
    throw NotSurjective(s.cokernel_dim, deg);
  }
  return s;
}

/// E = ker(F -> thickened module), a rank r bundle on P^{n+1}.
struct KernelBundle {
  GradedModule E;
  int rank = 0;
  LocalFreenessCertificate certificate;
  std::vector<Check> checks;
};

inline KernelBundle kernel_bundle(const SectionMap& s, std::uint64_t seed = 1)
{
  KernelBundle k;
  k.rank = s.map.source.ngens();
  k.E = prune(kernel(s.map).source).module;
  k.certificate = local_freeness(k.E, k.rank, seed);
  Check c{"extension.bundle", "E = ker(F -> F_X) is locally free of rank r with HP_F = HP_E + HP_{F_X}", false, {}};
  auto hpF = s.map.source.hilbert().hilbert_polynomial();
  auto hpE = k.E.hilbert().hilbert_polynomial();
  auto hpX = s.map.target.hilbert().hilbert_polynomial();
  bool additive = hpF == hpE + hpX;
  c.passed = k.certificate.locally_free && additive;
  c.add("rank", k.rank)
      .add("generators", k.certificate.generators)
      .add("relations", k.certificate.relations)
      .add("minors_used", k.certificate.minors_used)
      .add("minor_ideal_dim", k.certificate.minor_ideal_dim)
      .add("method", k.certificate.method)
      .add("locally_free", k.certificate.locally_free)
      .add("hilbert polynomial additivity", additive);
  k.checks.push_back(c);
  return k;
}

/// h^i(F_X(l)) = h^{i+1}(E(l)) and h^i(F_X(l)) = h^i(M(l)) over a window, plus
/// agreement of the Horrocks verdicts for M and E.
struct TransferReport {
  int lo = 0, hi = 0;
  // rows[i - 1][l - lo] = {h^i(M(l)), h^i(F_X(l)), h^{i+1}(E(l))} for 0 < i < n
  std::vector<std::vector<std::array<long long, 3>>> rows;
  HorrocksScan M_scan, E_scan;
  std::vector<Check> checks;
};

inline TransferReport cohomology_transfer(const KernelBundle& k, const ThickenedModule& t)
{
  TransferReport r;
  SheafCohomology cM(t.base), cF(t.F), cE(k.E);
  const int n = cM.dimension_of_space();
  auto [a0, b0] = cM.window();
  auto [a1, b1] = cE.window();
  r.lo = std::min(a0, a1);
  r.hi = std::max(b0, b1);
  bool ok = true;
  std::optional<std::pair<int, int>> bad;
  for (int i = 1; i < n; ++i) {
    r.rows.emplace_back();
    for (int l = r.lo; l <= r.hi; ++l) {
      std::array<long long, 3> v{cM.h(i, l), cF.h(i, l), cE.h(i + 1, l)};
      if (v[0] != v[1] || v[1] != v[2]) {
        ok = false;
        if (!bad) bad = {i, l};
      }
      r.rows.back().push_back(v);
    }
  }
  Check c{"extension.transfer", "h^i(M(l)) = h^i(F_X(l)) = h^{i+1}(E(l)) for 0 < i < n", ok, {}};
  c.add("window", std::to_string(r.lo) + ".." + std::to_string(r.hi));
  if (bad) c.add("first mismatch i", bad->first).add("first mismatch l", bad->second);
  r.checks.push_back(c);

  r.M_scan = horrocks_scan(cM);
  r.E_scan = horrocks_scan(cE);
  Check h{"extension.nonsplit", "M and E are both split or both non-split", false, {}};
  h.passed = r.M_scan.witness.has_value() == r.E_scan.witness.has_value();
  h.add("M witness", r.M_scan.witness.has_value()).add("E witness", r.E_scan.witness.has_value());
  if (r.E_scan.witness) {
    auto [i, l] = *r.E_scan.witness;
    h.add("E witness i", i).add("E witness l", l).add("E h^i(l)", r.E_scan.table[i][l - r.E_scan.lo]);
  }
  r.checks.push_back(h);
  return r;
}

} // namespace bundlekit

#endif // BUNDLEKIT_THICKENING_HPP
