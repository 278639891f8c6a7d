#ifndef BUNDLEKIT_POLY_HPP
#define BUNDLEKIT_POLY_HPP

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace bundlekit {

/// Standard-graded polynomial ring F_p[x_0, ..., x_{n-1}].
struct Ring {
  int nvars;
  PrimeField field;
  std::vector<std::string> names;

  std::uint32_t p() const { return field.characteristic(); }
  bool operator==(const Ring& o) const { return nvars == o.nvars && field == o.field; }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::uint32_t p, std::vector<std::string> names)
{
  if (names.empty() || static_cast<int>(names.size()) > kMaxVars)
    throw std::invalid_argument("make_ring: unsupported number of variables");
  const int n = static_cast<int>(names.size());
  return std::make_shared<const Ring>(Ring{n, PrimeField(p), std::move(names)});
}

/// Coordinate ring of P^3 (x,y,z,t).
inline RingPtr p3_ring(std::uint32_t p) { return make_ring(p, {"x", "y", "z", "t"}); }
/// Coordinate ring of P^4 (x,y,z,t,w).
inline RingPtr p4_ring(std::uint32_t p) { return make_ring(p, {"x", "y", "z", "t", "w"}); }

class RingMismatch : public std::invalid_argument {
public:
  RingMismatch() : std::invalid_argument("operands live in different rings") {}
};

inline void require_same_ring(const RingPtr& a, const RingPtr& b)
{
  if (a != b && !(a && b && *a == *b)) throw RingMismatch();
}

struct PolyTerm {
  Monomial mono;
  std::uint32_t coef;
  bool operator==(const PolyTerm&) const = default;
};

/// Polynomial over F_p with terms stored in strictly decreasing grevlex order
/// and no zero coefficients, so equality is representation equality.
class Poly {
public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, std::vector<PolyTerm> terms) : ring_(std::move(ring)), terms_(std::move(terms)) { normalize(); }

  static Poly constant(RingPtr ring, long long c)
  {
    Poly r(ring);
    auto v = ring->field.from_int(c);
    if (v) r.terms_.push_back({Monomial{}, v});
    return r;
  }
  static Poly monomial(RingPtr ring, Monomial m, std::uint32_t c = 1)
  {
    Poly r(std::move(ring));
    if (c % r.ring_->p()) r.terms_.push_back({m, c % r.ring_->p()});
    return r;
  }
  static Poly variable(RingPtr ring, int i) { return monomial(std::move(ring), Monomial::variable(i)); }

  /// Parses expressions like "x^2*z + 3*y*t^2 - 1" using the ring's variable names.
  static Poly parse(RingPtr ring, const std::string& text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const PolyTerm& lead() const { return terms_.front(); }

  /// Degree of a homogeneous polynomial; nullopt for zero or inhomogeneous input.
  std::optional<int> homogeneous_degree() const
  {
    if (terms_.empty()) return std::nullopt;
    int d = terms_.front().mono.degree();
    for (auto& t : terms_)
      if (t.mono.degree() != d) return std::nullopt;
    return d;
  }
  bool is_homogeneous() const { return terms_.empty() || homogeneous_degree().has_value(); }

  Poly operator+(const Poly& o) const { return combine(o, 1); }
  Poly operator-(const Poly& o) const { return combine(o, ring_ ? ring_->p() - 1 : 0); }
  Poly operator-() const
  {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = ring_->field.neg(t.coef);
    return r;
  }
  Poly operator*(const Poly& o) const;
  Poly scaled(std::uint32_t c) const
  {
    Poly r(ring_);
    c %= ring_->p();
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono, ring_->field.mul(t.coef, c)});
    return r;
  }
  Poly times_monomial(Monomial m, std::uint32_t c = 1) const
  {
    Poly r(ring_);
    c %= ring_->p();
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (auto& t : terms_) r.terms_.push_back({t.mono * m, ring_->field.mul(t.coef, c)});
    return r;
  }
  Poly pow(unsigned n) const
  {
    Poly r = constant(ring_, 1), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }
  /// Coefficient of the given monomial (0 if absent).
  std::uint32_t coefficient(Monomial m) const
  {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const PolyTerm& t, Monomial x) { return grevlex_greater(t.mono, x); });
    return (it != terms_.end() && it->mono == m) ? it->coef : 0;
  }
  /// Image under the ring inclusion R -> R' that keeps variables 0..n-1 (R' has at least as many variables).
  Poly embed(const RingPtr& target) const
  {
    if (target->p() != ring_->p() || target->nvars < ring_->nvars)
      throw std::invalid_argument("Poly::embed: incompatible target ring");
    Poly r(target);
    r.terms_ = terms_;
    return r;
  }

  std::string to_string() const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

private:
  void normalize()
  {
    std::sort(terms_.begin(), terms_.end(),
              [](const PolyTerm& a, const PolyTerm& b) { return grevlex_greater(a.mono, b.mono); });
    std::vector<PolyTerm> out;
    out.reserve(terms_.size());
    const std::uint32_t p = ring_->p();
    for (auto& t : terms_) {
      std::uint32_t c = t.coef % p;
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coef = ring_->field.add(out.back().coef, c);
        if (!out.back().coef) out.pop_back();
      } else if (c) {
        out.push_back({t.mono, c});
      }
    }
    terms_ = std::move(out);
  }

  // this + c*o
  Poly combine(const Poly& o, std::uint32_t c) const
  {
    if (!ring_) return o.scaled(c);
    if (!o.ring_) return *this;
    require_same_ring(ring_, o.ring_);
    const auto& f = ring_->field;
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && grevlex_greater(terms_[i].mono, o.terms_[j].mono))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || grevlex_greater(o.terms_[j].mono, terms_[i].mono)) {
        auto v = f.mul(o.terms_[j].coef, c);
        if (v) r.terms_.push_back({o.terms_[j].mono, v});
        ++j;
      } else {
        auto v = f.add(terms_[i].coef, f.mul(o.terms_[j].coef, c));
        if (v) r.terms_.push_back({terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<PolyTerm> terms_;
};

inline Poly Poly::operator*(const Poly& o) const
{
  if (!ring_ || !o.ring_) return Poly(ring_ ? ring_ : o.ring_);
  require_same_ring(ring_, o.ring_);
  if (terms_.empty() || o.terms_.empty()) return Poly(ring_);
  const auto& f = ring_->field;
  std::vector<PolyTerm> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (auto& a : terms_)
    for (auto& b : o.terms_) prod.push_back({a.mono * b.mono, f.mul(a.coef, b.coef)});
  return Poly(ring_, std::move(prod));
}

inline std::string monomial_to_string(Monomial m, const Ring& ring)
{
  if (m.is_one()) return "1";
  std::string s;
  for (int i = 0; i < ring.nvars; ++i) {
    int e = m.exponent(i);
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += ring.names[i];
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string Poly::to_string() const
{
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i) s += "+";
    if (t.mono.is_one()) {
      s += std::to_string(t.coef);
    } else {
      if (t.coef != 1) s += std::to_string(t.coef) + "*";
      s += monomial_to_string(t.mono, *ring_);
    }
  }
  return s;
}

inline Poly Poly::parse(RingPtr ring, const std::string& text)
{
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> long long {
    long long v = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos++] - '0');
      any = true;
    }
    if (!any) throw std::invalid_argument("Poly::parse: expected number in '" + text + "'");
    return v;
  };
  std::vector<PolyTerm> terms;
  skip();
  if (pos == text.size()) throw std::invalid_argument("Poly::parse: empty input");
  while (pos < text.size()) {
    int sign = 1;
    skip();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    }
    long long coef = 1;
    std::vector<int> e(ring->nvars, 0);
    bool first = true;
    while (true) {
      skip();
      if (!first) {
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          skip();
        } else {
          break;
        }
      }
      first = false;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        coef *= number();
        continue;
      }
      std::size_t start = pos;
      while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
      std::string name = text.substr(start, pos - start);
      auto it = std::find(ring->names.begin(), ring->names.end(), name);
      if (name.empty() || it == ring->names.end())
        throw std::invalid_argument("Poly::parse: unknown variable '" + name + "'");
      int exp = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        exp = static_cast<int>(number());
      }
      e[it - ring->names.begin()] += exp;
    }
    terms.push_back({Monomial::from_exponents(e), ring->field.from_int(sign * coef)});
    skip();
    if (pos < text.size() && text[pos] != '+' && text[pos] != '-')
      throw std::invalid_argument("Poly::parse: unexpected character in '" + text + "'");
  }
  return Poly(std::move(ring), std::move(terms));
}

} // namespace bundlekit

#endif // BUNDLEKIT_POLY_HPP
