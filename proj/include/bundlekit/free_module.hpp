#ifndef BUNDLEKIT_FREE_MODULE_HPP
#define BUNDLEKIT_FREE_MODULE_HPP

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "poly.hpp"

namespace bundlekit {

/// Free module sum_j S(-a_j), stored by its generator degrees a_j. Under this
/// convention O(-n) has its generator in degree n and O(a) in degree -a.
struct GradedFreeModule {
  RingPtr ring;
  std::vector<int> degrees;

  GradedFreeModule() = default;
  GradedFreeModule(RingPtr r, std::vector<int> degs) : ring(std::move(r)), degrees(std::move(degs)) {}

  int rank() const { return static_cast<int>(degrees.size()); }

  /// The module twisted by s: M(s) has every generator degree lowered by s.
  GradedFreeModule twist(int s) const
  {
    GradedFreeModule r = *this;
    for (auto& d : r.degrees) d -= s;
    return r;
  }

  bool operator==(const GradedFreeModule& o) const
  {
    return degrees == o.degrees && (ring == o.ring || (ring && o.ring && *ring == *o.ring));
  }
};

inline GradedFreeModule direct_sum(const GradedFreeModule& a, const GradedFreeModule& b)
{
  require_same_ring(a.ring, b.ring);
  GradedFreeModule r = a;
  r.degrees.insert(r.degrees.end(), b.degrees.begin(), b.degrees.end());
  return r;
}

struct VecTerm {
  Monomial mono;
  std::uint32_t comp;
  std::uint32_t coef;
  bool operator==(const VecTerm&) const = default;
};

/// Canonical module term order: grevlex on the monomial, then lower component first.
inline bool term_greater(const VecTerm& a, const VecTerm& b)
{
  auto ka = a.mono.grevlex_key(), kb = b.mono.grevlex_key();
  if (ka != kb) return ka > kb;
  return a.comp < b.comp;
}

/// Element of a free module: a sparse vector of polynomials kept as a sorted term list.
class Vec {
public:
  Vec() = default;
  explicit Vec(RingPtr ring) : ring_(std::move(ring)) {}
  Vec(RingPtr ring, std::vector<VecTerm> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { normalize(); }

  static Vec unit(RingPtr ring, std::uint32_t comp, Monomial m = Monomial{}, std::uint32_t c = 1)
  {
    Vec v(ring);
    c %= v.ring_->p();
    if (c) v.terms_.push_back({m, comp, c});
    return v;
  }
  static Vec from_poly(const Poly& f, std::uint32_t comp)
  {
    Vec v(f.ring());
    v.terms_.reserve(f.size());
    for (auto& t : f.terms()) v.terms_.push_back({t.mono, comp, t.coef});
    return v;
  }
  /// Builds a vector from a list of entries (entry i goes to component i).
  static Vec from_polys(RingPtr ring, const std::vector<Poly>& entries)
  {
    std::vector<VecTerm> terms;
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (auto& t : entries[i].terms()) terms.push_back({t.mono, static_cast<std::uint32_t>(i), t.coef});
    return Vec(std::move(ring), std::move(terms));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<VecTerm>& terms() const { return terms_; }
  std::vector<VecTerm>& mutable_terms() { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const VecTerm& lead() const { return terms_.front(); }

  Poly component(std::uint32_t comp) const
  {
    std::vector<PolyTerm> t;
    for (auto& x : terms_)
      if (x.comp == comp) t.push_back({x.mono, x.coef});
    return Poly(ring_, std::move(t));
  }

  /// Degree w.r.t. the given generator degrees, if homogeneous and nonzero.
  std::optional<int> homogeneous_degree(const std::vector<int>& gen_degrees) const
  {
    if (terms_.empty()) return std::nullopt;
    std::optional<int> d;
    for (auto& t : terms_) {
      if (t.comp >= gen_degrees.size()) throw std::out_of_range("Vec: component outside the ambient module");
      int td = t.mono.degree() + gen_degrees[t.comp];
      if (d && *d != td) return std::nullopt;
      d = td;
    }
    return d;
  }
  bool is_homogeneous(const std::vector<int>& gen_degrees) const
  {
    return terms_.empty() || homogeneous_degree(gen_degrees).has_value();
  }

  Vec operator+(const Vec& o) const { return axpy(o, 1, Monomial{}); }
  Vec operator-(const Vec& o) const { return axpy(o, ring_ ? ring_->p() - 1 : o.ring_->p() - 1, Monomial{}); }
  Vec operator-() const { return scaled(ring_ ? ring_->p() - 1 : 0); }

  Vec scaled(std::uint32_t c) const
  {
    Vec r(ring_);
    if (!ring_) return r;
    c %= ring_->p();
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono, t.comp, ring_->field.mul(t.coef, c)});
    return r;
  }
  Vec times_monomial(Monomial m, std::uint32_t c = 1) const
  {
    Vec r(ring_);
    if (!ring_) return r;
    c %= ring_->p();
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono * m, t.comp, ring_->field.mul(t.coef, c)});
    return r;
  }
  Vec times(const Poly& f) const
  {
    Vec r(ring_ ? ring_ : f.ring());
    for (auto& t : f.terms()) r = r.axpy(*this, t.coef, t.mono);
    return r;
  }
  /// this + c*m*o
  Vec axpy(const Vec& o, std::uint32_t c, Monomial m) const
  {
    const RingPtr& R = ring_ ? ring_ : o.ring_;
    if (!R) return Vec();
    if (ring_ && o.ring_) require_same_ring(ring_, o.ring_);
    const auto& f = R->field;
    c %= R->p();
    Vec r(R);
    if (!c) {
      r.terms_ = terms_;
      return r;
    }
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      VecTerm ot{o.terms_[j].mono * m, o.terms_[j].comp, o.terms_[j].coef};
      if (i == terms_.size() || term_greater(ot, terms_[i])) {
        auto v = f.mul(ot.coef, c);
        if (v) r.terms_.push_back({ot.mono, ot.comp, v});
        ++j;
      } else if (term_greater(terms_[i], ot)) {
        r.terms_.push_back(terms_[i++]);
      } else {
        auto v = f.add(terms_[i].coef, f.mul(ot.coef, c));
        if (v) r.terms_.push_back({ot.mono, ot.comp, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  /// Relabels components through the map comp -> new_comp[comp] (entries < 0 drop the term).
  Vec remap(const std::vector<int>& new_comp, RingPtr target_ring = nullptr) const
  {
    std::vector<VecTerm> t;
    t.reserve(terms_.size());
    for (auto& x : terms_) {
      int c = x.comp < new_comp.size() ? new_comp[x.comp] : -1;
      if (c >= 0) t.push_back({x.mono, static_cast<std::uint32_t>(c), x.coef});
    }
    return Vec(target_ring ? target_ring : ring_, std::move(t));
  }
  /// Shifts every component index by offset.
  Vec shifted(std::uint32_t offset) const
  {
    Vec r = *this;
    for (auto& t : r.terms_) t.comp += offset;
    return r;
  }
  /// Same vector viewed in a ring with more variables.
  Vec embed(const RingPtr& target) const
  {
    Vec r(target);
    r.terms_ = terms_;
    return r;
  }

  std::string to_string(int rank) const
  {
    std::string s = "(";
    for (int i = 0; i < rank; ++i) {
      if (i) s += ", ";
      s += component(i).to_string();
    }
    return s + ")";
  }

  bool operator==(const Vec& o) const { return terms_ == o.terms_; }

private:
  void normalize()
  {
    std::sort(terms_.begin(), terms_.end(), term_greater);
    std::vector<VecTerm> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      std::uint32_t c = t.coef % ring_->p();
      if (!out.empty() && out.back().mono == t.mono && out.back().comp == t.comp) {
        out.back().coef = ring_->field.add(out.back().coef, c);
        if (!out.back().coef) out.pop_back();
      } else if (c) {
        out.push_back({t.mono, t.comp, c});
      }
    }
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<VecTerm> terms_;
};

/// Homogeneous map between graded free modules. Column j is the image of
/// source generator j, an element of the target.
struct GradedMatrix {
  GradedFreeModule source;
  GradedFreeModule target;
  std::vector<Vec> cols;

  GradedMatrix() = default;
  GradedMatrix(GradedFreeModule src, GradedFreeModule tgt, std::vector<Vec> c)
      : source(std::move(src)), target(std::move(tgt)), cols(std::move(c))
  {
    if (static_cast<int>(cols.size()) != source.rank())
      throw std::invalid_argument("GradedMatrix: column count differs from source rank");
    for (auto& v : cols)
      if (!v.ring()) v = Vec(target.ring);
  }

  /// Builds a matrix from row-major entries.
  static GradedMatrix from_entries(GradedFreeModule src, GradedFreeModule tgt,
                                   const std::vector<std::vector<Poly>>& rows)
  {
    std::vector<Vec> cols;
    for (int j = 0; j < src.rank(); ++j) {
      std::vector<Poly> col;
      for (int i = 0; i < tgt.rank(); ++i) col.push_back(rows.at(i).at(j));
      cols.push_back(Vec::from_polys(tgt.ring, col));
    }
    return GradedMatrix(std::move(src), std::move(tgt), std::move(cols));
  }

  static GradedMatrix zero(GradedFreeModule src, GradedFreeModule tgt)
  {
    std::vector<Vec> cols(src.rank(), Vec(tgt.ring));
    return GradedMatrix(std::move(src), std::move(tgt), std::move(cols));
  }

  static GradedMatrix identity(const GradedFreeModule& f)
  {
    std::vector<Vec> cols;
    for (int j = 0; j < f.rank(); ++j) cols.push_back(Vec::unit(f.ring, j));
    return GradedMatrix(f, f, std::move(cols));
  }

  int rows() const { return target.rank(); }
  int ncols() const { return source.rank(); }
  const RingPtr& ring() const { return target.ring; }

  Poly entry(int i, int j) const { return cols.at(j).component(i); }

  /// Image of a source element.
  Vec apply(const Vec& v) const
  {
    Vec r(target.ring);
    for (auto& t : v.terms()) r = r.axpy(cols.at(t.comp), t.coef, t.mono);
    return r;
  }

  bool operator==(const GradedMatrix& o) const { return source == o.source && target == o.target && cols == o.cols; }
};

/// a o b (apply b first).
inline GradedMatrix compose(const GradedMatrix& a, const GradedMatrix& b)
{
  if (a.source.rank() != b.target.rank()) throw std::invalid_argument("compose: dimension mismatch");
  std::vector<Vec> cols;
  cols.reserve(b.cols.size());
  for (auto& c : b.cols) cols.push_back(a.apply(c));
  return GradedMatrix(b.source, a.target, std::move(cols));
}

/// True iff every nonzero entry (i,j) is homogeneous of degree source_j - target_i.
inline bool check_homogeneous(const GradedMatrix& m)
{
  for (int j = 0; j < m.ncols(); ++j) {
    for (auto& t : m.cols[j].terms()) {
      if (static_cast<int>(t.comp) >= m.rows()) return false;
      if (t.mono.degree() != m.source.degrees[j] - m.target.degrees[t.comp]) return false;
    }
  }
  return true;
}

/// Block-diagonal sum.
inline GradedMatrix direct_sum(const GradedMatrix& a, const GradedMatrix& b)
{
  std::vector<Vec> cols = a.cols;
  for (auto& c : b.cols) cols.push_back(c.shifted(a.rows()));
  return GradedMatrix(direct_sum(a.source, b.source), direct_sum(a.target, b.target), std::move(cols));
}

/// [a | b] with a common target.
inline GradedMatrix concat_columns(const GradedMatrix& a, const GradedMatrix& b)
{
  if (!(a.target == b.target)) throw std::invalid_argument("concat_columns: target mismatch");
  std::vector<Vec> cols = a.cols;
  cols.insert(cols.end(), b.cols.begin(), b.cols.end());
  return GradedMatrix(direct_sum(a.source, b.source), a.target, std::move(cols));
}

/// Transpose as a map of duals: Hom(target, S(shift)) -> Hom(source, S(shift)).
inline GradedMatrix dual(const GradedMatrix& m, int shift)
{
  GradedFreeModule src(m.ring(), {}), tgt(m.ring(), {});
  for (int d : m.target.degrees) src.degrees.push_back(-d - shift);
  for (int d : m.source.degrees) tgt.degrees.push_back(-d - shift);
  std::vector<std::vector<VecTerm>> cols(m.rows());
  for (int j = 0; j < m.ncols(); ++j)
    for (auto& t : m.cols[j].terms()) cols[t.comp].push_back({t.mono, static_cast<std::uint32_t>(j), t.coef});
  std::vector<Vec> out;
  for (auto& c : cols) out.emplace_back(m.ring(), std::move(c));
  return GradedMatrix(std::move(src), std::move(tgt), std::move(out));
}

/// Same matrix over a ring with more variables (new variables unused).
inline GradedMatrix embed(const GradedMatrix& m, const RingPtr& target)
{
  GradedFreeModule s(target, m.source.degrees), t(target, m.target.degrees);
  std::vector<Vec> cols;
  for (auto& c : m.cols) cols.push_back(c.embed(target));
  return GradedMatrix(std::move(s), std::move(t), std::move(cols));
}

template <class Field>
using NumericMatrix = std::vector<std::vector<typename Field::Elem>>;

/// Evaluates every entry at a point of affine (n+1)-space over an extension field.
template <class Field>
NumericMatrix<Field> evaluate_at_point(const GradedMatrix& m, const Field& field,
                                       const std::vector<typename Field::Elem>& point)
{
  const int n = m.ring()->nvars;
  if (static_cast<int>(point.size()) != n) throw std::invalid_argument("evaluate_at_point: wrong number of coordinates");
  if (std::all_of(point.begin(), point.end(), [&](const auto& c) { return field.is_zero(c); }))
    throw std::invalid_argument("evaluate_at_point: the zero vector is not a projective point");
  // powers[i][e] = point[i]^e
  std::vector<std::vector<typename Field::Elem>> powers(n);
  auto power = [&](int i, int e) -> const typename Field::Elem& {
    auto& pw = powers[i];
    if (pw.empty()) pw.push_back(field.one());
    while (static_cast<int>(pw.size()) <= e) pw.push_back(field.mul(pw.back(), point[i]));
    return pw[e];
  };
  NumericMatrix<Field> out(m.rows(), std::vector<typename Field::Elem>(m.ncols(), field.zero()));
  for (int j = 0; j < m.ncols(); ++j) {
    for (auto& t : m.cols[j].terms()) {
      auto v = field.embed(t.coef);
      for (int i = 0; i < n; ++i) {
        int e = t.mono.exponent(i);
        if (e) v = field.mul(v, power(i, e));
      }
      out[t.comp][j] = field.add(out[t.comp][j], v);
    }
  }
  return out;
}

} // namespace bundlekit

#endif // BUNDLEKIT_FREE_MODULE_HPP
