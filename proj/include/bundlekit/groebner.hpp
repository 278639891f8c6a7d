#ifndef BUNDLEKIT_GROEBNER_HPP
#define BUNDLEKIT_GROEBNER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "free_module.hpp"

namespace bundlekit {

/// A homogeneous submodule given by generators inside a graded free module.
struct SubmodulePresentation {
  GradedFreeModule ambient;
  std::vector<Vec> generators;
};

class NotHomogeneous : public std::invalid_argument {
public:
  NotHomogeneous() : std::invalid_argument("input is not homogeneous") {}
};

namespace detail {

using Terms = std::vector<VecTerm>;

/// Buchberger's algorithm for homogeneous submodules of a free module, processed
/// degree by degree. Components may be split into blocks: every term in a lower
/// block dominates every term in a higher block, which gives the elimination
/// order used for syzygies and lifting. Within a block the order is grevlex on
/// the monomial, then lower component first.
class Buchberger {
public:
  Buchberger(const PrimeField& field, std::vector<int> comp_degrees, std::vector<int> comp_block)
      : f_(field), comp_deg_(std::move(comp_degrees)), block_(std::move(comp_block))
  {
    if (block_.empty()) block_.assign(comp_deg_.size(), 0);
    single_component_ = comp_deg_.size() == 1;
    by_comp_.resize(comp_deg_.size());
  }

  bool greater(const VecTerm& a, const VecTerm& b) const
  {
    int ba = block_[a.comp], bb = block_[b.comp];
    if (ba != bb) return ba < bb;
    auto ka = a.mono.grevlex_key(), kb = b.mono.grevlex_key();
    if (ka != kb) return ka > kb;
    return a.comp < b.comp;
  }

  void sort_terms(Terms& t) const
  {
    std::sort(t.begin(), t.end(), [this](const VecTerm& a, const VecTerm& b) { return greater(a, b); });
  }

  int term_degree(const VecTerm& t) const { return t.mono.degree() + comp_deg_[t.comp]; }
  int block_of(std::uint32_t comp) const { return block_[comp]; }

  /// Runs the algorithm on the inputs (already sorted in this order). Returns,
  /// for each input, whether it was a minimal generator.
  std::vector<bool> run(std::vector<Terms> inputs)
  {
    std::vector<std::pair<int, int>> order;  // (degree, index)
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (inputs[i].empty()) continue;
      int d = term_degree(inputs[i].front());
      for (auto& t : inputs[i])
        if (term_degree(t) != d) throw NotHomogeneous();
      order.push_back({d, static_cast<int>(i)});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<bool> minimal(inputs.size(), false);
    std::size_t next_input = 0;
    while (next_input < order.size() || !pairs_.empty()) {
      int deg = next_input < order.size() ? order[next_input].first : 1 << 30;
      for (auto& pr : pairs_) deg = std::min(deg, pr.degree);
      // S-pairs of this degree first, so that input generators reducing to zero
      // afterwards are exactly the non-minimal ones.
      std::vector<Pair> now;
      std::vector<Pair> later;
      for (auto& pr : pairs_) (pr.degree == deg ? now : later).push_back(pr);
      pairs_ = std::move(later);
      std::sort(now.begin(), now.end(), [](const Pair& a, const Pair& b) {
        if (a.lcm.grevlex_key() != b.lcm.grevlex_key()) return a.lcm.grevlex_key() < b.lcm.grevlex_key();
        return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
      });
      for (auto& pr : now) {
        Terms s = spoly(pr);
        s = reduce(std::move(s), true);
        if (!s.empty()) add(std::move(s));
      }
      while (next_input < order.size() && order[next_input].first == deg) {
        int idx = order[next_input].second;
        Terms r = reduce(inputs[idx], true);
        if (!r.empty()) {
          minimal[idx] = true;
          add(std::move(r));
        }
        ++next_input;
      }
    }
    interreduce();
    return minimal;
  }

  const std::vector<Terms>& basis() const { return basis_; }

  /// Reduces t modulo the current basis. With full = false, stops as soon as the
  /// leading term is irreducible; with stop_block >= 0, also stops once the
  /// leading term lies in a block >= stop_block.
  Terms reduce(Terms t, bool full, int stop_block = -1) const
  {
    Terms done;
    Terms next;
    std::size_t pos = 0;
    while (pos < t.size()) {
      const VecTerm& lt = t[pos];
      if (stop_block >= 0 && block_[lt.comp] >= stop_block) break;
      int g = find_divisor(lt);
      if (g < 0) {
        if (!full) break;
        done.push_back(lt);
        ++pos;
        continue;
      }
      const Terms& b = basis_[g];
      Monomial q = b.front().mono.quotient_of(lt.mono);
      std::uint32_t c = f_.neg(lt.coef);  // basis elements are monic
      // next = t[pos+1..] + c*q*b[1..]
      next.clear();
      next.reserve(t.size() - pos + b.size());
      std::size_t i = pos + 1, j = 1;
      while (i < t.size() || j < b.size()) {
        if (j == b.size()) {
          next.push_back(t[i++]);
          continue;
        }
        VecTerm bt{b[j].mono * q, b[j].comp, b[j].coef};
        if (i == t.size() || greater(bt, t[i])) {
          next.push_back({bt.mono, bt.comp, f_.mul(bt.coef, c)});
          ++j;
        } else if (greater(t[i], bt)) {
          next.push_back(t[i++]);
        } else {
          auto v = f_.add(t[i].coef, f_.mul(bt.coef, c));
          if (v) next.push_back({bt.mono, bt.comp, v});
          ++i;
          ++j;
        }
      }
      t.swap(next);
      pos = 0;
    }
    done.insert(done.end(), t.begin() + static_cast<std::ptrdiff_t>(pos), t.end());
    return done;
  }

  Terms spoly_of(int i, int j) const { return spoly(Pair{i, j, 0, basis_[i].front().mono.lcm(basis_[j].front().mono)}); }

private:
  struct Pair {
    int i, j;
    int degree;
    Monomial lcm;
  };

  int find_divisor(const VecTerm& t) const
  {
    for (int g : by_comp_[t.comp])
      if (basis_[g].front().mono.divides(t.mono)) return g;
    return -1;
  }

  Terms spoly(const Pair& pr) const
  {
    const Terms& a = basis_[pr.i];
    const Terms& b = basis_[pr.j];
    Monomial qa = a.front().mono.quotient_of(pr.lcm), qb = b.front().mono.quotient_of(pr.lcm);
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 1, j = 1;
    const std::uint32_t minus_one = f_.neg(1);
    while (i < a.size() || j < b.size()) {
      VecTerm at{}, bt{};
      if (i < a.size()) at = {a[i].mono * qa, a[i].comp, a[i].coef};
      if (j < b.size()) bt = {b[j].mono * qb, b[j].comp, b[j].coef};
      if (j == b.size() || (i < a.size() && greater(at, bt))) {
        out.push_back(at);
        ++i;
      } else if (i == a.size() || greater(bt, at)) {
        out.push_back({bt.mono, bt.comp, f_.mul(bt.coef, minus_one)});
        ++j;
      } else {
        auto v = f_.sub(at.coef, bt.coef);
        if (v) out.push_back({at.mono, at.comp, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  void make_monic(Terms& t) const
  {
    auto inv = f_.inv(t.front().coef);
    if (inv == 1) return;
    for (auto& x : t) x.coef = f_.mul(x.coef, inv);
  }

  void add(Terms t)
  {
    make_monic(t);
    const int k = static_cast<int>(basis_.size());
    const VecTerm lead = t.front();
    basis_.push_back(std::move(t));

    // Gebauer-Moeller update. Chain criterion on the old pairs:
    std::vector<Pair> kept;
    kept.reserve(pairs_.size());
    for (auto& pr : pairs_) {
      if (basis_[pr.i].front().comp == lead.comp && lead.mono.divides(pr.lcm)) {
        Monomial li = basis_[pr.i].front().mono.lcm(lead.mono);
        Monomial lj = basis_[pr.j].front().mono.lcm(lead.mono);
        if (li != pr.lcm && lj != pr.lcm) continue;
      }
      kept.push_back(pr);
    }
    pairs_ = std::move(kept);

    // New pairs, keeping only those with lcm minimal among the new ones and one per lcm.
    std::vector<Pair> fresh;
    for (int g : by_comp_[lead.comp]) {
      Monomial l = basis_[g].front().mono.lcm(lead.mono);
      fresh.push_back({g, k, l.degree() + comp_deg_[lead.comp], l});
    }
    std::vector<bool> drop(fresh.size(), false);
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      for (std::size_t b = 0; b < fresh.size() && !drop[a]; ++b) {
        if (a == b || drop[b]) continue;
        if (fresh[b].lcm.divides(fresh[a].lcm) && (fresh[b].lcm != fresh[a].lcm || b < a)) drop[a] = true;
      }
    }
    if (single_component_) {
      // product criterion (valid for ideals only); a coprime pair also removes the
      // other pairs sharing its lcm, which were already collapsed above.
      std::map<std::uint64_t, bool> coprime_lcm;
      for (auto& g : by_comp_[lead.comp]) {
        Monomial m = basis_[g].front().mono;
        if (m.coprime(lead.mono)) coprime_lcm[m.lcm(lead.mono).bits()] = true;
      }
      for (std::size_t a = 0; a < fresh.size(); ++a)
        if (coprime_lcm.count(fresh[a].lcm.bits())) drop[a] = true;
    }
    for (std::size_t a = 0; a < fresh.size(); ++a)
      if (!drop[a]) pairs_.push_back(fresh[a]);
    by_comp_[lead.comp].push_back(k);
  }

  void interreduce()
  {
    // Leads are already pairwise non-divisible; reduce tails.
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      Terms& e = basis_[k];
      Terms tail(e.begin() + 1, e.end());
      Terms head{e.front()};
      // no tail term is divisible by its own lead
      Terms red = reduce(std::move(tail), true);
      head.insert(head.end(), red.begin(), red.end());
      e = std::move(head);
    }
  }

  PrimeField f_;
  std::vector<int> comp_deg_;
  std::vector<int> block_;
  bool single_component_ = false;
  std::vector<Terms> basis_;
  std::vector<std::vector<int>> by_comp_;
  std::vector<Pair> pairs_;
};

inline Terms to_terms(const Vec& v, const Buchberger& engine)
{
  Terms t = v.terms();
  engine.sort_terms(t);
  return t;
}

} // namespace detail

/// Reduced Groebner basis of a homogeneous submodule (grevlex, term over position).
class GroebnerBasis {
public:
  GroebnerBasis() = default;

  const GradedFreeModule& ambient() const { return ambient_; }
  const std::vector<Vec>& elements() const { return elements_; }
  /// Indices (into the original generator list) of a minimal generating set.
  const std::vector<int>& minimal_generators() const { return minimal_; }
  std::size_t size() const { return elements_.size(); }

  Vec normal_form(const Vec& v) const
  {
    if (v.ring()) require_same_ring(v.ring(), ambient_.ring);
    for (auto& t : v.terms())
      if (static_cast<int>(t.comp) >= ambient_.rank()) throw std::invalid_argument("normal_form: ambient mismatch");
    auto r = engine_.reduce(v.terms(), true);
    return Vec(ambient_.ring, std::move(r));
  }
  bool contains(const Vec& v) const { return normal_form(v).is_zero(); }

  /// Leading terms of the basis, grouped by component (the initial module).
  std::vector<std::vector<Monomial>> leading_monomials() const
  {
    std::vector<std::vector<Monomial>> out(ambient_.rank());
    for (auto& e : elements_) out[e.lead().comp].push_back(e.lead().mono);
    return out;
  }

  /// Buchberger's criterion: every S-pair reduces to zero.
  bool spairs_reduce_to_zero() const
  {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      for (std::size_t j = i + 1; j < elements_.size(); ++j) {
        if (elements_[i].lead().comp != elements_[j].lead().comp) continue;
        auto s = engine_.spoly_of(static_cast<int>(i), static_cast<int>(j));
        if (!engine_.reduce(std::move(s), true).empty()) return false;
      }
    return true;
  }

  /// Equality of the generated submodules (reduced bases are unique).
  bool same_submodule(const GroebnerBasis& o) const
  {
    if (elements_.size() != o.elements_.size()) return false;
    auto by_lead = [](const Vec& a, const Vec& b) { return term_greater(a.lead(), b.lead()); };
    auto a = elements_, b = o.elements_;
    std::sort(a.begin(), a.end(), by_lead);
    std::sort(b.begin(), b.end(), by_lead);
    return a == b;
  }

  friend GroebnerBasis groebner_basis(const SubmodulePresentation& s);

private:
  GradedFreeModule ambient_;
  std::vector<Vec> elements_;
  std::vector<int> minimal_;
  detail::Buchberger engine_{PrimeField(2), {}, {}};
};

inline GroebnerBasis groebner_basis(const SubmodulePresentation& s)
{
  GroebnerBasis gb;
  gb.ambient_ = s.ambient;
  gb.engine_ = detail::Buchberger(s.ambient.ring->field, s.ambient.degrees, {});
  std::vector<detail::Terms> inputs;
  for (auto& g : s.generators) {
    if (g.ring()) require_same_ring(g.ring(), s.ambient.ring);
    if (!g.is_homogeneous(s.ambient.degrees)) throw NotHomogeneous();
    inputs.push_back(detail::to_terms(g, gb.engine_));
  }
  auto minimal = gb.engine_.run(std::move(inputs));
  for (std::size_t i = 0; i < minimal.size(); ++i)
    if (minimal[i]) gb.minimal_.push_back(static_cast<int>(i));
  for (auto& b : gb.engine_.basis()) gb.elements_.emplace_back(s.ambient.ring, b);
  return gb;
}

inline GroebnerBasis groebner_basis(const GradedFreeModule& ambient, const std::vector<Vec>& gens)
{
  return groebner_basis(SubmodulePresentation{ambient, gens});
}

/// Ideal generated by polynomials, as a submodule of S.
inline SubmodulePresentation ideal(const RingPtr& ring, const std::vector<Poly>& gens)
{
  SubmodulePresentation s{GradedFreeModule(ring, {0}), {}};
  for (auto& g : gens) s.generators.push_back(Vec::from_poly(g, 0));
  return s;
}

/// Groebner basis of (generators | identity) under the elimination order; it
/// yields both the syzygy module and representations of members.
class TrackedBasis {
public:
  /// degrees: optional degrees for the generators; needed when some of them are zero.
  TrackedBasis(GradedFreeModule ambient, std::vector<Vec> gens, std::vector<int> degrees = {})
      : ambient_(std::move(ambient)), gens_(std::move(gens)),
        engine_(ambient_.ring->field, {}, {})
  {
    const int r = ambient_.rank();
    const int k = static_cast<int>(gens_.size());
    if (!degrees.empty() && static_cast<int>(degrees.size()) != k) throw std::invalid_argument("TrackedBasis: wrong number of degrees");
    std::vector<int> degs = ambient_.degrees, blocks(r, 0);
    for (int i = 0; i < k; ++i) {
      auto d = gens_[i].homogeneous_degree(ambient_.degrees);
      if (!gens_[i].is_zero() && !d) throw NotHomogeneous();
      if (!degrees.empty() && d && *d != degrees[i]) throw NotHomogeneous();
      gen_degrees_.push_back(!degrees.empty() ? degrees[i] : d ? *d : 0);
      degs.push_back(gen_degrees_.back());
      blocks.push_back(1);
    }
    engine_ = detail::Buchberger(ambient_.ring->field, degs, blocks);
    std::vector<detail::Terms> inputs;
    for (int i = 0; i < k; ++i) {
      detail::Terms t = gens_[i].terms();
      t.push_back({Monomial{}, static_cast<std::uint32_t>(r + i), 1});
      engine_.sort_terms(t);
      inputs.push_back(std::move(t));
    }
    engine_.run(std::move(inputs));
  }

  const GradedFreeModule& ambient() const { return ambient_; }
  const std::vector<Vec>& generators() const { return gens_; }
  /// Free module on the generators (degrees of the generators).
  GradedFreeModule generator_module() const { return GradedFreeModule(ambient_.ring, gen_degrees_); }

  /// Coefficients c with sum c_i g_i = v, or nullopt if v is not in the submodule.
  std::optional<Vec> lift(const Vec& v) const
  {
    const auto r = static_cast<std::uint32_t>(ambient_.rank());
    detail::Terms t = v.terms();
    engine_.sort_terms(t);
    auto rem = engine_.reduce(std::move(t), false, 1);
    if (!rem.empty() && engine_.block_of(rem.front().comp) == 0) return std::nullopt;
    // finish: the remainder lives in the tracking block
    std::vector<VecTerm> coeffs;
    for (auto& x : rem) {
      if (x.comp < r) return std::nullopt;
      coeffs.push_back({x.mono, x.comp - r, ambient_.ring->field.neg(x.coef)});
    }
    return Vec(ambient_.ring, std::move(coeffs));
  }

  bool contains(const Vec& v) const { return lift(v).has_value(); }

  /// Generators of the syzygy module (a Groebner basis of it, not minimized).
  std::vector<Vec> syzygy_basis() const
  {
    const auto r = static_cast<std::uint32_t>(ambient_.rank());
    std::vector<Vec> out;
    for (auto& b : engine_.basis()) {
      if (engine_.block_of(b.front().comp) == 0) continue;
      std::vector<VecTerm> t;
      for (auto& x : b) t.push_back({x.mono, x.comp - r, x.coef});
      out.emplace_back(ambient_.ring, std::move(t));
    }
    return out;
  }

private:
  GradedFreeModule ambient_;
  std::vector<Vec> gens_;
  std::vector<int> gen_degrees_;
  detail::Buchberger engine_;
};

/// Minimal homogeneous generators of the submodule generated by gens (a subset, in input order).
inline std::vector<Vec> minimal_generators(const GradedFreeModule& ambient, const std::vector<Vec>& gens)
{
  auto gb = groebner_basis(ambient, gens);
  std::vector<Vec> out;
  for (int i : gb.minimal_generators()) out.push_back(gens[i]);
  return out;
}

/// Minimal generators of the syzygy module of gens, as a matrix from a free module onto the generators.
inline GradedMatrix syzygies(const GradedFreeModule& ambient, const std::vector<Vec>& gens,
                             std::vector<int> degrees = {})
{
  TrackedBasis tb(ambient, gens, std::move(degrees));
  GradedFreeModule src = tb.generator_module();
  auto syz = tb.syzygy_basis();
  syz = minimal_generators(src, syz);
  GradedFreeModule relmod(ambient.ring, {});
  for (auto& s : syz) relmod.degrees.push_back(*s.homogeneous_degree(src.degrees));
  return GradedMatrix(relmod, src, std::move(syz));
}

/// Syzygies of the generators of a Groebner basis.
inline SubmodulePresentation syzygies(const GroebnerBasis& gb)
{
  auto m = syzygies(gb.ambient(), gb.elements());
  return SubmodulePresentation{m.target, m.cols};
}

enum class ColonMode { colon, saturation };

class ZeroDivisorArgument : public std::invalid_argument {
public:
  ZeroDivisorArgument() : std::invalid_argument("colon/saturation by the zero polynomial") {}
};

/// (I : f), generators minimal.
inline std::vector<Poly> ideal_quotient(const std::vector<Poly>& ideal_gens, const Poly& f)
{
  if (f.is_zero()) throw ZeroDivisorArgument();
  const RingPtr& R = f.ring();
  std::vector<Vec> gens{Vec::from_poly(f, 0)};
  for (auto& g : ideal_gens)
    if (!g.is_zero()) gens.push_back(Vec::from_poly(g, 0));
  TrackedBasis tb(GradedFreeModule(R, {0}), gens);
  std::vector<Vec> quotient;
  for (auto& s : tb.syzygy_basis()) {
    Poly c = s.component(0);
    if (!c.is_zero()) quotient.push_back(Vec::from_poly(c, 0));
  }
  quotient = minimal_generators(GradedFreeModule(R, {0}), quotient);
  std::vector<Poly> out;
  for (auto& q : quotient) out.push_back(q.component(0));
  return out;
}

struct SaturationResult {
  std::vector<Poly> generators;
  int stabilization_exponent;  // m with (I : f^m) = (I : f^infinity)
};

/// (I : f) or (I : f^infinity) by iterated quotients until the reduced bases agree.
inline SaturationResult colon_saturate(const std::vector<Poly>& ideal_gens, const Poly& f, ColonMode mode)
{
  if (f.is_zero()) throw ZeroDivisorArgument();
  const RingPtr& R = f.ring();
  const GradedFreeModule S(R, {0});
  auto as_vecs = [](const std::vector<Poly>& ps) {
    std::vector<Vec> v;
    for (auto& p : ps) v.push_back(Vec::from_poly(p, 0));
    return v;
  };
  std::vector<Poly> cur = ideal_gens;
  auto cur_gb = groebner_basis(S, as_vecs(cur));
  int m = 0;
  while (true) {
    auto next = ideal_quotient(cur, f);
    auto next_gb = groebner_basis(S, as_vecs(next));
    ++m;
    if (mode == ColonMode::colon) return {next, 1};
    if (next_gb.same_submodule(cur_gb)) return {cur, m - 1};
    cur = std::move(next);
    cur_gb = std::move(next_gb);
  }
}

} // namespace bundlekit

#endif // BUNDLEKIT_GROEBNER_HPP
