#ifndef BUNDLEKIT_RESOLUTION_HPP
#define BUNDLEKIT_RESOLUTION_HPP

#include <stdexcept>
#include <vector>

#include "module.hpp"

namespace bundlekit {

/// Minimal free resolution F_0 <- F_1 <- ... ; maps[i] : F_{i+1} -> F_i.
struct FreeResolution {
  std::vector<GradedMatrix> maps;
  /// Set when the resolution stopped because the next syzygy module is zero.
  bool complete = false;

  int length() const { return static_cast<int>(maps.size()); }
  /// Generator degrees of F_i.
  const std::vector<int>& degrees(int i) const
  {
    return i == 0 ? maps.at(0).target.degrees : maps.at(i - 1).source.degrees;
  }
  GradedFreeModule free_module(int i) const { return i == 0 ? maps.at(0).target : maps.at(i - 1).source; }
  /// Betti numbers rank F_0, rank F_1, ...
  std::vector<int> betti() const
  {
    std::vector<int> b{maps.empty() ? 0 : maps[0].target.rank()};
    for (auto& m : maps) b.push_back(m.source.rank());
    return b;
  }
  /// Largest absolute generator degree over all F_i.
  int max_abs_degree() const
  {
    int t = 0;
    for (int i = 0; i <= length(); ++i)
      for (int d : degrees(i)) t = std::max(t, d < 0 ? -d : d);
    return t;
  }
  bool composites_vanish() const
  {
    for (std::size_t i = 0; i + 1 < maps.size(); ++i)
      for (auto& c : compose(maps[i], maps[i + 1]).cols)
        if (!c.is_zero()) return false;
    return true;
  }
};

/// Resolution of length up to `length` of m. A module whose presentation has
/// redundant generators is pruned first, so F_0 is the pruned generator set.
inline FreeResolution free_resolution(const GradedModule& m, int length)
{
  if (length < 1) throw std::invalid_argument("free_resolution: length must be >= 1");
  auto pruned = prune(m).module;
  FreeResolution res;
  res.maps.push_back(pruned.presentation());
  while (res.length() < length) {
    const auto& last = res.maps.back();
    if (last.ncols() == 0) {
      // only possible for the presentation of a free module
      res.complete = true;
      break;
    }
    auto next = syzygies(last.target, last.cols, last.source.degrees);
    if (next.ncols() == 0) {
      res.complete = true;
      break;
    }
    res.maps.push_back(std::move(next));
  }
  return res;
}

/// Homology ker(outgoing) / im(incoming) at the middle free module B, with
/// representatives in B for the generators.
struct Homology {
  GradedModule module;
  std::vector<Vec> representatives;
};

inline Homology homology(const GradedMatrix& incoming, const GradedMatrix& outgoing)
{
  const GradedFreeModule& B = outgoing.source;
  std::vector<Vec> cycles;
  if (outgoing.rows() == 0) {
    for (int i = 0; i < B.rank(); ++i) cycles.push_back(Vec::unit(B.ring, i));
  } else {
    auto z = syzygies(outgoing.target, outgoing.cols, B.degrees);
    cycles = z.cols;
  }
  auto sub = submodule(GradedModule(incoming), cycles);
  auto pruned = prune(sub.source);
  std::vector<Vec> reps;
  for (auto& g : pruned.from_pruned.images) reps.push_back(sub.apply(g));
  return {pruned.module, std::move(reps)};
}

/// Ext^i(m, n) as a graded module, for n free. Generators come with cocycle
/// representatives in Hom(F_i, n), encoded as vectors over the dual basis
/// (index = generator of n * rank F_i + generator of F_i).
struct ExtModule {
  GradedModule module;
  std::vector<Vec> cocycles;
  FreeResolution resolution;
};

namespace detail {

// Hom(F_a -> F_b, n) for free n, as a matrix Hom(F_b, n) -> Hom(F_a, n).
inline GradedMatrix hom_dual(const GradedMatrix& d, const GradedFreeModule& n)
{
  std::vector<GradedMatrix> blocks;
  for (int j = 0; j < n.rank(); ++j) blocks.push_back(dual(d, -n.degrees[j]));
  GradedMatrix acc = blocks.at(0);
  for (std::size_t j = 1; j < blocks.size(); ++j) acc = direct_sum(acc, blocks[j]);
  return acc;
}

inline GradedFreeModule hom_free(const GradedFreeModule& f, const GradedFreeModule& n)
{
  GradedFreeModule out(f.ring, {});
  for (int b : n.degrees)
    for (int t : f.degrees) out.degrees.push_back(b - t);
  return out;
}

} // namespace detail

/// Ext^i from an existing resolution (which must reach F_{i+1} or be complete).
inline ExtModule ext_from_resolution(const FreeResolution& res, const GradedFreeModule& N, int i)
{
  if (i < 0) throw std::invalid_argument("ext_module: negative index");
  if (N.rank() == 0) throw std::invalid_argument("ext_module: second argument must be a nonzero free module");
  if (!res.complete && res.length() < i + 1) throw std::invalid_argument("ext_module: resolution too short");
  const RingPtr& R = N.ring;
  const GradedFreeModule empty(R, {});
  if (i > res.length()) return {GradedModule::free(empty), {}, res};
  auto hom_i = detail::hom_free(res.free_module(i), N);
  if (hom_i.rank() == 0) return {GradedModule::free(empty), {}, res};
  // incoming: Hom(F_{i-1}) -> Hom(F_i); outgoing: Hom(F_i) -> Hom(F_{i+1})
  GradedMatrix incoming = i == 0 ? GradedMatrix::zero(empty, hom_i) : detail::hom_dual(res.maps[i - 1], N);
  GradedMatrix outgoing = i < res.length() ? detail::hom_dual(res.maps[i], N) : GradedMatrix::zero(hom_i, empty);
  auto h = homology(incoming, outgoing);
  return {h.module, h.representatives, res};
}

inline ExtModule ext_module(const GradedModule& m, const GradedModule& n, int i)
{
  if (n.nrelations() != 0) throw std::invalid_argument("ext_module: second argument must be free");
  return ext_from_resolution(free_resolution(m, i + 1), n.generators(), i);
}

/// Ext^i(m, S(a)).
inline ExtModule ext_module(const GradedModule& m, int i, int a)
{
  return ext_module(m, GradedModule::free(GradedFreeModule(m.ring(), {-a})), i);
}

} // namespace bundlekit

#endif // BUNDLEKIT_RESOLUTION_HPP
