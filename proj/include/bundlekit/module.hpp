#ifndef BUNDLEKIT_MODULE_HPP
#define BUNDLEKIT_MODULE_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "hilbert.hpp"

namespace bundlekit {

/// Finitely presented graded module: the cokernel of a homogeneous matrix whose
/// columns are the relations, written in the free module on the generators.
class GradedModule {
public:
  GradedModule() = default;
  explicit GradedModule(GradedMatrix presentation) : pres_(std::move(presentation))
  {
    if (!check_homogeneous(pres_)) throw NotHomogeneous();
  }

  /// The free module itself (no relations).
  static GradedModule free(const GradedFreeModule& f) { return GradedModule(GradedMatrix::zero(GradedFreeModule(f.ring, {}), f)); }

  /// Generators are the vectors, relations their syzygies: the submodule of F they span.
  static GradedModule submodule_of_free(const GradedFreeModule& f, const std::vector<Vec>& gens)
  {
    return GradedModule(syzygies(f, gens));
  }

  /// S/I for the ideal generated by polys.
  static GradedModule cyclic_quotient(const RingPtr& ring, const std::vector<Poly>& polys)
  {
    GradedFreeModule s(ring, {0});
    std::vector<Vec> rels;
    for (auto& f : polys)
      if (!f.is_zero()) rels.push_back(Vec::from_poly(f, 0));
    GradedFreeModule src(ring, {});
    for (auto& r : rels) src.degrees.push_back(*r.homogeneous_degree(s.degrees));
    return GradedModule(GradedMatrix(src, s, rels));
  }

  const GradedMatrix& presentation() const { return pres_; }
  const GradedFreeModule& generators() const { return pres_.target; }
  const RingPtr& ring() const { return pres_.target.ring; }
  int ngens() const { return pres_.target.rank(); }
  int nrelations() const { return pres_.source.rank(); }

  /// M(s): every degree lowered by s.
  GradedModule twist(int s) const
  {
    return GradedModule(GradedMatrix(pres_.source.twist(s), pres_.target.twist(s), pres_.cols));
  }

  const GroebnerBasis& relation_basis() const
  {
    auto& c = cache();
    std::call_once(c.gb_once, [&] { c.gb = groebner_basis(pres_.target, pres_.cols); });
    return c.gb;
  }
  const HilbertData& hilbert() const
  {
    auto& c = cache();
    std::call_once(c.hd_once, [&] { c.hd = bundlekit::hilbert(relation_basis()); });
    return c.hd;
  }

  Vec normal_form(const Vec& v) const { return relation_basis().normal_form(v); }
  bool is_zero_element(const Vec& v) const { return normal_form(v).is_zero(); }
  bool is_zero() const { return hilbert().krull_dimension() < 0; }

private:
  struct Cache {
    std::once_flag gb_once, hd_once;
    GroebnerBasis gb;
    HilbertData hd;
  };
  Cache& cache() const { return *cache_; }

  GradedMatrix pres_;
  // shared by copies, which present the same module
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline GradedModule direct_sum(const std::vector<GradedModule>& ms)
{
  if (ms.empty()) throw std::invalid_argument("direct_sum: no summands");
  GradedMatrix acc = ms[0].presentation();
  for (std::size_t i = 1; i < ms.size(); ++i) acc = direct_sum(acc, ms[i].presentation());
  return GradedModule(std::move(acc));
}

/// Map of graded modules given by the images of the source generators.
/// A generator of degree a goes to an element of degree a + shift in the target.
struct ModuleMap {
  GradedModule source;
  GradedModule target;
  std::vector<Vec> images;  // one per source generator, in the target's generator module
  int shift = 0;

  ModuleMap() = default;
  ModuleMap(GradedModule s, GradedModule t, std::vector<Vec> im, int sh)
      : source(std::move(s)), target(std::move(t)), images(std::move(im)), shift(sh)
  {
    if (static_cast<int>(images.size()) != source.ngens()) throw std::invalid_argument("ModuleMap: wrong number of images");
    for (auto& v : images)
      if (v.ring() == nullptr) v = Vec(target.ring());
  }

  static ModuleMap identity(const GradedModule& m)
  {
    std::vector<Vec> im;
    for (int i = 0; i < m.ngens(); ++i) im.push_back(Vec::unit(m.ring(), i));
    return ModuleMap(m, m, std::move(im), 0);
  }

  /// The generator images as a matrix between the free covers (source twisted by -shift).
  GradedMatrix matrix() const { return GradedMatrix(source.generators().twist(-shift), target.generators(), images); }

  Vec apply(const Vec& v) const
  {
    Vec r(target.ring());
    for (auto& t : v.terms()) r = r.axpy(images.at(t.comp), t.coef, t.mono);
    return r;
  }

  bool is_homogeneous() const
  {
    for (int j = 0; j < source.ngens(); ++j) {
      if (images[j].is_zero()) continue;
      auto d = images[j].homogeneous_degree(target.generators().degrees);
      if (!d || *d != source.generators().degrees[j] + shift) return false;
    }
    return true;
  }

  /// Relations of the source land in the relations of the target.
  bool is_well_defined() const
  {
    if (!is_homogeneous()) return false;
    for (auto& r : source.presentation().cols)
      if (!target.is_zero_element(apply(r))) return false;
    return true;
  }

  bool is_zero() const
  {
    for (auto& v : images)
      if (!target.is_zero_element(v)) return false;
    return true;
  }

  /// Equality as maps (images agree modulo the target relations).
  bool equals(const ModuleMap& o) const
  {
    if (images.size() != o.images.size()) return false;
    for (std::size_t j = 0; j < images.size(); ++j)
      if (!target.is_zero_element(images[j] - o.images[j])) return false;
    return true;
  }
};

/// g after f.
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f)
{
  std::vector<Vec> im;
  for (auto& v : f.images) im.push_back(g.apply(v));
  return ModuleMap(f.source, g.target, std::move(im), f.shift + g.shift);
}

inline ModuleMap scaled(const ModuleMap& f, const Poly& a)
{
  int deg = a.is_zero() ? 0 : *a.homogeneous_degree();
  std::vector<Vec> im;
  for (auto& v : f.images) im.push_back(v.times(a));
  return ModuleMap(f.source, f.target, std::move(im), f.shift + deg);
}

inline ModuleMap operator+(const ModuleMap& a, const ModuleMap& b)
{
  if (a.shift != b.shift || a.images.size() != b.images.size()) throw std::invalid_argument("ModuleMap +: incompatible maps");
  std::vector<Vec> im;
  for (std::size_t j = 0; j < a.images.size(); ++j) im.push_back(a.images[j] + b.images[j]);
  return ModuleMap(a.source, a.target, std::move(im), a.shift);
}

namespace detail {

// Vectors in F whose image under cols lies in the span of rels: the F-part of
// the syzygies of [cols | rels].
inline std::vector<Vec> preimage_of_relations(const GradedFreeModule& ambient, const std::vector<Vec>& cols,
                                              const std::vector<int>& col_degrees, const GradedMatrix& rels)
{
  std::vector<Vec> gens = cols;
  gens.insert(gens.end(), rels.cols.begin(), rels.cols.end());
  std::vector<int> degrees = col_degrees;
  degrees.insert(degrees.end(), rels.source.degrees.begin(), rels.source.degrees.end());
  TrackedBasis tb(ambient, gens, degrees);
  std::vector<Vec> out;
  const auto k = static_cast<std::uint32_t>(cols.size());
  for (auto& s : tb.syzygy_basis()) {
    std::vector<VecTerm> t;
    for (auto& x : s.terms())
      if (x.comp < k) t.push_back(x);
    Vec v(ambient.ring, std::move(t));
    if (!v.is_zero()) out.push_back(std::move(v));
  }
  return out;
}

} // namespace detail

/// Submodule of m generated by the given elements, with its inclusion map.
inline ModuleMap submodule(const GradedModule& m, const std::vector<Vec>& elements)
{
  std::vector<Vec> gens;
  GradedFreeModule gf(m.ring(), {});
  for (auto& e : elements) {
    auto nf = m.normal_form(e);
    if (nf.is_zero()) continue;
    gens.push_back(e);
    gf.degrees.push_back(*e.homogeneous_degree(m.generators().degrees));
  }
  auto rels = detail::preimage_of_relations(m.generators(), gens, gf.degrees, m.presentation());
  if (!rels.empty()) rels = minimal_generators(gf, rels);
  GradedFreeModule src(m.ring(), {});
  for (auto& r : rels) src.degrees.push_back(*r.homogeneous_degree(gf.degrees));
  GradedModule sub(GradedMatrix(src, gf, std::move(rels)));
  return ModuleMap(sub, m, gens, 0);
}

/// Kernel of f with its inclusion into the source.
inline ModuleMap kernel(const ModuleMap& f)
{
  std::vector<int> degs;
  for (int d : f.source.generators().degrees) degs.push_back(d + f.shift);
  auto gens = detail::preimage_of_relations(f.target.generators(), f.images, degs, f.target.presentation());
  if (!gens.empty()) gens = minimal_generators(f.source.generators(), gens);
  return submodule(f.source, gens);
}

/// Cokernel of f with the projection from the target.
inline ModuleMap cokernel(const ModuleMap& f)
{
  auto& t = f.target;
  std::vector<Vec> rels = t.presentation().cols;
  GradedFreeModule src = t.presentation().source;
  for (std::size_t j = 0; j < f.images.size(); ++j) {
    if (t.is_zero_element(f.images[j])) continue;
    rels.push_back(f.images[j]);
    src.degrees.push_back(f.source.generators().degrees[j] + f.shift);
  }
  GradedModule c(GradedMatrix(src, t.generators(), std::move(rels)));
  std::vector<Vec> im;
  for (int i = 0; i < t.ngens(); ++i) im.push_back(Vec::unit(t.ring(), i));
  return ModuleMap(t, c, std::move(im), 0);
}

/// Image of f as a submodule of the target (in the target's grading).
inline ModuleMap image(const ModuleMap& f) { return submodule(f.target, f.images); }

enum class Part { kernel, cokernel, image };

inline GradedModule kernel_cokernel_image(const ModuleMap& f, Part which)
{
  switch (which) {
  case Part::kernel: return kernel(f).source;
  case Part::cokernel: return cokernel(f).target;
  case Part::image: return image(f).source;
  }
  throw std::invalid_argument("kernel_cokernel_image: bad selector");
}

/// Minimal presentation together with mutually inverse generator maps.
struct PrunedModule {
  GradedModule module;
  ModuleMap to_pruned;    // original -> pruned
  ModuleMap from_pruned;  // pruned -> original
};

/// Removes generators that are eliminated by relations with a unit entry and
/// reduces the relations to a minimal set.
inline PrunedModule prune(const GradedModule& m)
{
  const RingPtr& R = m.ring();
  const auto& F = R->field;
  const int n = m.ngens();
  std::vector<Vec> rels = m.presentation().cols;
  std::vector<Vec> express(n);  // original generator -> combination of surviving generators
  for (int i = 0; i < n; ++i) express[i] = Vec::unit(R, i);
  std::vector<bool> alive(n, true);

  auto find_unit = [&](int& col, int& comp) {
    for (std::size_t j = 0; j < rels.size(); ++j)
      for (auto& t : rels[j].terms())
        if (t.mono.is_one()) {
          col = static_cast<int>(j);
          comp = static_cast<int>(t.comp);
          return true;
        }
    return false;
  };
  auto eliminate = [&](Vec v, int comp, const Vec& r, std::uint32_t inv_c) {
    Poly q = v.component(comp);
    if (q.is_zero()) return v;
    for (auto& t : q.terms()) v = v.axpy(r, F.neg(F.mul(t.coef, inv_c)), t.mono);
    return v;
  };

  int col, comp;
  while (find_unit(col, comp)) {
    Vec r = rels[col];
    std::uint32_t inv_c = F.inv(r.component(comp).coefficient(Monomial{}));
    rels.erase(rels.begin() + col);
    for (auto& other : rels) other = eliminate(other, comp, r, inv_c);
    for (auto& e : express) e = eliminate(e, comp, r, inv_c);
    alive[comp] = false;
    rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Vec& v) { return v.is_zero(); }), rels.end());
  }

  std::vector<int> new_index(n, -1);
  GradedFreeModule gens(R, {});
  std::vector<Vec> back;
  for (int i = 0; i < n; ++i)
    if (alive[i]) {
      new_index[i] = gens.rank();
      gens.degrees.push_back(m.generators().degrees[i]);
      back.push_back(Vec::unit(R, i));
    }
  for (auto& r : rels) r = r.remap(new_index);
  for (auto& e : express) e = e.remap(new_index);
  if (!rels.empty()) rels = minimal_generators(gens, rels);
  GradedFreeModule src(R, {});
  for (auto& r : rels) src.degrees.push_back(*r.homogeneous_degree(gens.degrees));
  GradedModule pruned(GradedMatrix(src, gens, std::move(rels)));
  return {pruned, ModuleMap(m, pruned, std::move(express), 0), ModuleMap(pruned, m, std::move(back), 0)};
}

class NoLift : public std::runtime_error {
public:
  explicit NoLift(const std::string& what) : std::runtime_error("no lift: " + what) {}
};

/// h with along o h = target_map, solved generator by generator modulo the
/// relations of the common target.
inline ModuleMap lift_map(const ModuleMap& target_map, const ModuleMap& along)
{
  const auto& N = along.target;
  if (!(N.generators() == target_map.target.generators())) throw std::invalid_argument("lift_map: maps have different targets");
  std::vector<Vec> gens = along.images;
  const auto k = static_cast<std::uint32_t>(gens.size());
  gens.insert(gens.end(), N.presentation().cols.begin(), N.presentation().cols.end());
  std::vector<int> degs;
  for (int d : along.source.generators().degrees) degs.push_back(d + along.shift);
  degs.insert(degs.end(), N.presentation().source.degrees.begin(), N.presentation().source.degrees.end());
  TrackedBasis tb(N.generators(), gens, degs);
  std::vector<Vec> im;
  for (std::size_t j = 0; j < target_map.images.size(); ++j) {
    auto c = tb.lift(target_map.images[j]);
    if (!c) throw NoLift("generator " + std::to_string(j) + " is not in the image");
    std::vector<VecTerm> t;
    for (auto& x : c->terms())
      if (x.comp < k) t.push_back(x);
    im.emplace_back(N.ring(), std::move(t));
  }
  return ModuleMap(target_map.source, along.source, std::move(im), target_map.shift - along.shift);
}

/// dim M_d for each d in [lo, hi].
inline std::vector<long long> hilbert_values(const GradedModule& m, int lo, int hi)
{
  std::vector<long long> out;
  for (int d = lo; d <= hi; ++d) out.push_back(m.hilbert().hilbert_function(d));
  return out;
}

} // namespace bundlekit

#endif // BUNDLEKIT_MODULE_HPP
