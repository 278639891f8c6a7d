// Brute-force degreewise linear algebra used as an independent check on the
// Groebner machinery: a graded piece of a submodule is spanned by all monomial
// multiples of its generators, so its dimension is a plain matrix rank over F_p.
#ifndef BUNDLEKIT_TEST_ORACLE_ROW_REDUCTION_HPP
#define BUNDLEKIT_TEST_ORACLE_ROW_REDUCTION_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "bundlekit/free_module.hpp"

namespace oracle {

using bundlekit::GradedFreeModule;
using bundlekit::Monomial;
using bundlekit::Vec;

class DegreePiece {
public:
  DegreePiece(const GradedFreeModule& ambient, int degree) : ambient_(ambient), degree_(degree), p_(ambient.ring->p())
  {
    const int n = ambient.ring->nvars;
    for (int c = 0; c < ambient.rank(); ++c) {
      int e = degree - ambient.degrees[c];
      if (e < 0) continue;
      for (auto m : bundlekit::monomials_of_degree(n, e)) index_[{c, m.bits()}] = static_cast<int>(index_.size());
    }
  }

  int ambient_dim() const { return static_cast<int>(index_.size()); }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Adds v (must be homogeneous of this degree); returns true if it enlarged the span.
  bool insert(const Vec& v) { return reduce_and_store(dense(v), true); }
  bool in_span(const Vec& v) const
  {
    auto r = dense(v);
    reduce(r);
    for (auto x : r)
      if (x) return false;
    return true;
  }

  /// Inserts every monomial multiple of each generator landing in this degree.
  void insert_generated(const std::vector<Vec>& gens)
  {
    const int n = ambient_.ring->nvars;
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      auto dg = g.homogeneous_degree(ambient_.degrees);
      if (!dg || *dg > degree_) continue;
      for (auto m : bundlekit::monomials_of_degree(n, degree_ - *dg)) insert(g.times_monomial(m));
    }
  }

private:
  std::vector<std::uint32_t> dense(const Vec& v) const
  {
    std::vector<std::uint32_t> r(index_.size(), 0);
    for (auto& t : v.terms()) {
      auto it = index_.find({static_cast<int>(t.comp), t.mono.bits()});
      if (it == index_.end()) throw std::invalid_argument("oracle: vector not in this degree");
      r[it->second] = t.coef % p_;
    }
    return r;
  }
  std::uint32_t inv(std::uint32_t a) const
  {
    std::uint64_t r = 1, b = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
  void reduce(std::vector<std::uint32_t>& r) const
  {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      int pc = pivots_[i];
      if (!r[pc]) continue;
      std::uint64_t f = r[pc];
      for (std::size_t c = pc; c < r.size(); ++c)
        if (rows_[i][c]) r[c] = static_cast<std::uint32_t>((r[c] + (p_ - f) * rows_[i][c]) % p_);
    }
  }
  bool reduce_and_store(std::vector<std::uint32_t> r, bool store)
  {
    reduce(r);
    std::size_t pc = 0;
    while (pc < r.size() && !r[pc]) ++pc;
    if (pc == r.size()) return false;
    if (store) {
      std::uint64_t s = inv(r[pc]);
      for (auto& x : r) x = static_cast<std::uint32_t>(x * s % p_);
      // keep previous rows reduced against the new pivot
      for (auto& row : rows_) {
        if (!row[pc]) continue;
        std::uint64_t f = row[pc];
        for (std::size_t c = 0; c < r.size(); ++c)
          if (r[c]) row[c] = static_cast<std::uint32_t>((row[c] + (p_ - f) * r[c]) % p_);
      }
      rows_.push_back(std::move(r));
      pivots_.push_back(static_cast<int>(pc));
    }
    return true;
  }

  GradedFreeModule ambient_;
  int degree_;
  std::uint64_t p_;
  std::map<std::pair<int, std::uint64_t>, int> index_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<int> pivots_;
};

/// dim_F (ambient / <gens>) in the given degree.
inline long long quotient_dim(const GradedFreeModule& ambient, const std::vector<Vec>& gens, int degree)
{
  DegreePiece piece(ambient, degree);
  piece.insert_generated(gens);
  return piece.ambient_dim() - piece.rank();
}

/// Is v (homogeneous) in the submodule generated by gens?
inline bool member(const GradedFreeModule& ambient, const std::vector<Vec>& gens, const Vec& v)
{
  if (v.is_zero()) return true;
  auto d = v.homogeneous_degree(ambient.degrees);
  if (!d) return false;
  DegreePiece piece(ambient, *d);
  piece.insert_generated(gens);
  return piece.in_span(v);
}

} // namespace oracle

#endif // BUNDLEKIT_TEST_ORACLE_ROW_REDUCTION_HPP
