#ifndef BUNDLEKIT_POLY_SYSTEM_HPP
#define BUNDLEKIT_POLY_SYSTEM_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <optional>
#include <vector>

#include "linalg.hpp"
#include "poly.hpp"

namespace bundlekit {

/// Linear equations whose unknowns are the coefficients of homogeneous
/// polynomials of prescribed degrees. Each equation is a polynomial identity
/// sum_b (multiplier_b * unknown_b) + constant = 0, split by monomial.
class PolySystem {
public:
  explicit PolySystem(RingPtr ring) : ring_(std::move(ring)) {}

  /// Registers an unknown homogeneous polynomial of the given degree; returns its id.
  int add_unknown(int degree)
  {
    Block b;
    b.offset = nunknowns_;
    if (degree >= 0) b.monomials = monomials_of_degree(ring_->nvars, degree);
    nunknowns_ += static_cast<int>(b.monomials.size());
    blocks_.push_back(std::move(b));
    return static_cast<int>(blocks_.size()) - 1;
  }

  int new_equation()
  {
    equations_.emplace_back();
    return static_cast<int>(equations_.size()) - 1;
  }

  /// equation += multiplier * unknown(block)
  void add_term(int eq, int block, const Poly& multiplier)
  {
    auto& e = equations_.at(eq);
    const auto& b = blocks_.at(block);
    for (std::size_t k = 0; k < b.monomials.size(); ++k)
      for (auto& t : multiplier.terms()) {
        auto& row = e[(b.monomials[k] * t.mono).bits()];
        auto& c = row.coef[b.offset + static_cast<int>(k)];
        c = ring_->field.add(c, t.coef);
      }
  }

  /// equation += constant
  void add_constant(int eq, const Poly& constant)
  {
    auto& e = equations_.at(eq);
    for (auto& t : constant.terms()) {
      auto& row = e[t.mono.bits()];
      row.constant = ring_->field.add(row.constant, t.coef);
    }
  }

  int unknowns() const { return nunknowns_; }

  /// Affine solution set: a particular solution plus a basis of the homogeneous solutions.
  struct Solution {
    std::vector<std::uint32_t> particular;
    std::vector<std::vector<std::uint32_t>> directions;
  };

  std::optional<Solution> solve() const
  {
    const auto& f = ring_->field;
    DenseMatrix<PrimeField> m;
    std::vector<std::uint32_t> rhs;
    for (auto& e : equations_)
      for (auto& [mono, row] : e) {
        std::vector<std::uint32_t> r(nunknowns_, 0);
        for (auto& [idx, c] : row.coef) r[idx] = c;
        m.push_back(std::move(r));
        rhs.push_back(f.neg(row.constant));
      }
    if (m.empty()) {
      Solution s{std::vector<std::uint32_t>(nunknowns_, 0), {}};
      for (int i = 0; i < nunknowns_; ++i) {
        std::vector<std::uint32_t> v(nunknowns_, 0);
        v[i] = 1;
        s.directions.push_back(std::move(v));
      }
      return s;
    }
    auto x = bundlekit::solve(f, m, rhs, nunknowns_);
    if (!x) return std::nullopt;
    return Solution{*x, nullspace(f, m, nunknowns_)};
  }

  /// The polynomial of an unknown block under a given assignment.
  Poly value(int block, const std::vector<std::uint32_t>& assignment) const
  {
    const auto& b = blocks_.at(block);
    std::vector<PolyTerm> terms;
    for (std::size_t k = 0; k < b.monomials.size(); ++k) {
      auto c = assignment.at(b.offset + k);
      if (c) terms.push_back({b.monomials[k], c});
    }
    return Poly(ring_, std::move(terms));
  }

  /// Writes the coefficients of f (homogeneous of the block's degree) into the block's coordinates.
  void encode(int block, const Poly& f, std::vector<std::uint32_t>& into) const
  {
    const auto& b = blocks_.at(block);
    for (auto& t : f.terms()) {
      auto it = std::find(b.monomials.begin(), b.monomials.end(), t.mono);
      if (it == b.monomials.end()) throw std::invalid_argument("PolySystem::encode: degree mismatch");
      into.at(b.offset + (it - b.monomials.begin())) = t.coef;
    }
  }

  /// Coordinates [offset, offset + size) of a block.
  std::pair<int, int> range(int block) const
  {
    const auto& b = blocks_.at(block);
    return {b.offset, b.offset + static_cast<int>(b.monomials.size())};
  }

private:
  struct Block {
    int offset = 0;
    std::vector<Monomial> monomials;
  };
  struct Row {
    std::map<int, std::uint32_t> coef;
    std::uint32_t constant = 0;
  };

  RingPtr ring_;
  int nunknowns_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::map<std::uint64_t, Row>> equations_;
};

} // namespace bundlekit

#endif // BUNDLEKIT_POLY_SYSTEM_HPP
