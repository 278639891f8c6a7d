#ifndef BUNDLEKIT_ASSEMBLY_HPP
#define BUNDLEKIT_ASSEMBLY_HPP

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "construction.hpp"

namespace bundlekit {

/// f : L -> M over the ladder, its cokernel M (the rank p+1 bundle), the
/// shift endomorphism theta of M and its descent phibar, and psi : M_p -> M.
/// Component c of the sums holds the rung j = p - c, twisted by -d(p - j).
struct AssembledBundle {
  ConstructionParams params;
  GradedModule Lsum;   // L_p + L_{p-1}(-d) + ... + L_2(-d(p-2)), free
  GradedModule Msum;   // M_p + M_{p-1}(-d) + ... + M_1(-d(p-1))
  std::vector<int> offsets;  // first generator of each component of Msum
  ModuleMap f;         // Lsum -> Msum
  ModuleMap theta;     // Msum -> Msum, shift d
  GradedModule M;      // coker f
  ModuleMap projection;  // Msum -> M
  ModuleMap phibar;    // M -> M, shift d
  ModuleMap psi;       // M_p -> M
  LocalFreenessCertificate certificate;
  std::vector<Check> checks;
};

namespace detail {

inline ModuleMap power(const ModuleMap& m, int k)
{
  ModuleMap acc = ModuleMap::identity(m.source);
  for (int i = 0; i < k; ++i) acc = compose(m, acc);
  return acc;
}

} // namespace detail

/// Builds f, theta, M, phibar and psi, and checks claims 7-9 together with
/// nilpotency and the first Chern class bookkeeping. Throws ClaimFailed when
/// one of claims 7-9 fails.
inline AssembledBundle assemble_bundle(const SerreLadder& lad, std::uint64_t seed = 1)
{
  const auto& pr = lad.params;
  const int p = static_cast<int>(pr.p);
  const int d = pr.d;
  const RingPtr& R = lad.curves.ring;
  const Poly& A = lad.curves.A;
  AssembledBundle b;
  b.params = pr;
  auto comp_of = [&](int j) { return p - j; };
  auto twist_of = [&](int j) { return d * (p - j); };

  GradedFreeModule Lf(R, {});
  for (int j = p; j >= 2; --j) Lf.degrees.push_back(lad.rungs[j].L_degree + twist_of(j));
  b.Lsum = GradedModule::free(Lf);
  std::vector<GradedModule> parts;
  for (int j = p; j >= 1; --j) {
    b.offsets.push_back(parts.empty() ? 0 : b.offsets.back() + parts.back().ngens());
    parts.push_back(lad.M(j).twist(-twist_of(j)));
  }
  b.Msum = direct_sum(parts);
  auto at = [&](int j, const Vec& v) { return v.shifted(static_cast<std::uint32_t>(b.offsets[comp_of(j)])); };

  // f(x_j) = -alpha_j(x_j) + g_{j-1}(x_j)
  std::vector<Vec> fim;
  for (int j = p; j >= 2; --j) fim.push_back(at(j, -lad.rungs[j].alpha.images[0]) + at(j - 1, lad.g[j - 1].images[0]));
  b.f = ModuleMap(b.Lsum, b.Msum, fim, 0);

  // theta(x_j) = eta_j(x_j) in component j-1, theta(x_1) = phi(x_1)
  std::vector<Vec> thim;
  for (int j = p; j >= 1; --j) {
    const ModuleMap& m = j >= 2 ? lad.eta[j] : lad.phi;
    int tgt = j >= 2 ? j - 1 : 1;
    for (auto& v : m.images) thim.push_back(at(tgt, v));
  }
  b.theta = ModuleMap(b.Msum, b.Msum, thim, d);

  b.projection = cokernel(b.f);
  b.M = b.projection.target;
  b.phibar = ModuleMap(b.M, b.M, thim, d);
  std::vector<Vec> psim;
  for (int u = 0; u < lad.M(p).ngens(); ++u) psim.push_back(Vec::unit(R, u));
  b.psi = ModuleMap(lad.M(p), b.M, psim, 0);

  // claim 7
  {
    Check c{"claim7.bundle", "M = coker f is locally free of rank p+1 and f is injective", false, {}};
    bool wd = b.f.is_well_defined() && b.theta.is_well_defined();
    bool injective = kernel(b.f).source.is_zero();
    long long rank_M = b.M.hilbert().rank();
    bool free_ok = false;
    try {
      b.certificate = local_freeness(b.M, p + 1, seed);
      free_ok = b.certificate.locally_free;
    } catch (const RankMismatch& e) {
      c.add("rank mismatch", e.what());
    }
    c.passed = wd && injective && free_ok && rank_M == p + 1;
    c.add("f and theta well defined", wd)
        .add("ker f = 0", injective)
        .add("rank", rank_M)
        .add("generators", b.certificate.generators)
        .add("relations", b.certificate.relations)
        .add("minors_used", b.certificate.minors_used)
        .add("minor_ideal_dim", b.certificate.minor_ideal_dim)
        .add("method", b.certificate.method)
        .add("locally_free", free_ok);
    b.checks.push_back(c);
    if (!c.passed) throw ClaimFailed(c);
  }

  // claim 8: theta f(x_j) = f(A x_{j-1}) for j >= 3 and theta f(x_2) = 0
  {
    Check c{"claim8.descent", "theta o f factors through f, so theta descends to phibar on M", false, {}};
    auto tf = compose(b.theta, b.f);
    bool identity = true;
    int witness = -1;
    for (int j = p; j >= 2 && identity; --j) {
      int idx = comp_of(j);
      Vec expected = j >= 3 ? b.f.images[idx + 1].times(A) : Vec(R);
      if (!b.Msum.is_zero_element(tf.images[idx] - expected)) {
        identity = false;
        witness = j;
      }
    }
    bool wd = b.phibar.is_well_defined();
    c.passed = identity && wd;
    c.add("theta f(x_j) = f(A x_{j-1})", identity).add("phibar well defined", wd);
    if (witness >= 0) c.add("failing x_j", witness);
    b.checks.push_back(c);
    if (!c.passed) throw ClaimFailed(c);
  }

  // claim 9: M / (psi(M_p) + phibar(M(-d))) has empty support
  {
    Check c{"claim9.generation", "psi(M_p) + phibar(M(-d)) = M as sheaves", false, {}};
    std::vector<Vec> rels = b.M.presentation().cols;
    std::vector<int> degs = b.M.presentation().source.degrees;
    for (std::size_t u = 0; u < psim.size(); ++u) {
      rels.push_back(psim[u]);
      degs.push_back(lad.M(p).generators().degrees[u]);
    }
    for (std::size_t u = 0; u < thim.size(); ++u) {
      rels.push_back(thim[u]);
      degs.push_back(b.M.generators().degrees[u] + d);
    }
    GradedModule Q(GradedMatrix(GradedFreeModule(R, degs), b.M.generators(), rels));
    int dim = Q.hilbert().krull_dimension();
    c.passed = dim <= 0;
    c.add("krull dimension of cokernel", dim);
    if (!c.passed) {
      c.add("cokernel hilbert polynomial", Q.hilbert().hilbert_polynomial().to_string());
      // a generator of M whose class spans a positive-dimensional piece of the cokernel
      for (int j = 0; j < Q.ngens(); ++j) {
        auto sub = submodule(Q, {Vec::unit(R, j)}).source;
        if (sub.hilbert().krull_dimension() > 0) {
          std::string coeffs = "[";
          for (int u = 0; u < Q.ngens(); ++u) coeffs += std::string(u ? ", " : "") + (u == j ? "1" : "0");
          c.add("witness generator", j).add("witness coefficients", coeffs + "]");
          break;
        }
      }
    }
    b.checks.push_back(c);
    if (!c.passed) throw ClaimFailed(c);
  }

  {
    Check c{"nilpotency", "theta^{p+1} = 0 and phibar^{p+1} = 0 (phibar^p != 0 recorded)", false, {}};
    bool theta0 = detail::power(b.theta, p + 1).is_zero();
    bool phibar0 = detail::power(b.phibar, p + 1).is_zero();
    bool phibar_p = !detail::power(b.phibar, p).is_zero();
    int order = 0;
    for (ModuleMap acc = ModuleMap::identity(b.M); !acc.is_zero() && order <= p + 1; acc = compose(b.phibar, acc)) ++order;
    c.passed = theta0 && phibar0;
    c.add("theta^{p+1} = 0", theta0).add("phibar^{p+1} = 0", phibar0).add("phibar^p != 0", phibar_p).add("phibar order", order);
    b.checks.push_back(c);
  }

  {
    Check c{"determinant", "c1(M) = c1(Msum) - c1(Lsum), and matches the ladder degrees", false, {}};
    Rational cM = b.M.hilbert().first_chern_class();
    Rational cMs = b.Msum.hilbert().first_chern_class();
    Rational cLs = b.Lsum.hilbert().first_chern_class();
    long long closed = 0;
    for (int j = 1; j <= p; ++j) closed += -lad.rungs[j].L_degree - 2LL * twist_of(j);
    for (int j = 2; j <= p; ++j) closed += lad.rungs[j].L_degree + twist_of(j);
    c.passed = cM == cMs - cLs && cM == Rational(closed);
    c.add("c1(M)", cM.to_string()).add("c1(Msum) - c1(Lsum)", (cMs - cLs).to_string()).add("from ladder degrees", closed);
    b.checks.push_back(c);
  }
  return b;
}

/// Non-splitting evidence for M_1 and M: the numeric obstruction 4pkl > d^2
/// and a Horrocks witness (0 < i < n with h^i(l) != 0) for each module.
struct NonsplitReport {
  std::vector<Check> checks;
  HorrocksScan M1_scan;
  HorrocksScan M_scan;
};

inline Check horrocks_check(const std::string& id, const std::string& name, const HorrocksScan& s)
{
  Check c{id, name + " is not a sum of line bundles (Horrocks witness)", s.witness.has_value(), {}};
  c.add("window", std::to_string(s.lo) + ".." + std::to_string(s.hi));
  if (s.witness) {
    auto [i, l] = *s.witness;
    c.add("i", i).add("l", l).add("h^i(l)", s.table[i][l - s.lo]);
  }
  return c;
}

/// With threads > 1 the two scans run concurrently (they share no module state).
inline NonsplitReport verify_nonsplit(const AssembledBundle& b, const SerreLadder& lad, int threads = 1)
{
  NonsplitReport r;
  const auto& pr = b.params;
  Check num{"claim10.obstruction", "4pkl > d^2, so C_1 is not a complete intersection of degrees summing to d", false, {}};
  long long lhs = 4LL * pr.p * pr.k * pr.l, rhs = 1LL * pr.d * pr.d;
  num.passed = lhs > rhs;
  num.add("4pkl", lhs).add("d^2", rhs);
  r.checks.push_back(num);
  if (threads > 1) {
    auto m1 = std::async(std::launch::async, [&] { return horrocks_scan(SheafCohomology(lad.M(1))); });
    r.M_scan = horrocks_scan(SheafCohomology(b.M));
    r.M1_scan = m1.get();
  } else {
    r.M1_scan = horrocks_scan(SheafCohomology(lad.M(1)));
    r.M_scan = horrocks_scan(SheafCohomology(b.M));
  }
  r.checks.push_back(horrocks_check("claim10.horrocks.M1", "M_1", r.M1_scan));
  r.checks.push_back(horrocks_check("claim10.horrocks.M", "M", r.M_scan));
  return r;
}

} // namespace bundlekit

#endif // BUNDLEKIT_ASSEMBLY_HPP
