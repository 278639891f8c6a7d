#ifndef BUNDLEKIT_RATIONAL_HPP
#define BUNDLEKIT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bundlekit {

/// Exact rational with 64-bit numerator and denominator (128-bit intermediates).
class Rational {
public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d) { set(n, d); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const { return make((__int128)num_ * o.den_ + (__int128)o.num_ * den_, (__int128)den_ * o.den_); }
  Rational operator-(const Rational& o) const { return make((__int128)num_ * o.den_ - (__int128)o.num_ * den_, (__int128)den_ * o.den_); }
  Rational operator*(const Rational& o) const { return make((__int128)num_ * o.num_, (__int128)den_ * o.den_); }
  Rational operator/(const Rational& o) const
  {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make((__int128)num_ * o.den_, (__int128)den_ * o.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator<(const Rational& o) const { return (__int128)num_ * o.den_ < (__int128)o.num_ * den_; }

  std::string to_string() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

private:
  static Rational make(__int128 n, __int128 d)
  {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    const __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("Rational: overflow");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }
  void set(long long n, long long d) { *this = make(n, d); }

  long long num_ = 0;
  long long den_ = 1;
};

/// Polynomial in one variable with rational coefficients (index = power).
class RationalPoly {
public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  const std::vector<Rational>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rational coefficient(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  bool is_zero() const { return c_.empty(); }

  Rational operator()(const Rational& x) const
  {
    Rational r = 0;
    for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
    return r;
  }

  RationalPoly operator+(const RationalPoly& o) const
  {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coefficient(static_cast<int>(i)) + o.coefficient(static_cast<int>(i));
    return RationalPoly(r);
  }
  RationalPoly operator-(const RationalPoly& o) const
  {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = coefficient(static_cast<int>(i)) - o.coefficient(static_cast<int>(i));
    return RationalPoly(r);
  }
  RationalPoly operator*(const RationalPoly& o) const
  {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return RationalPoly(r);
  }
  RationalPoly scaled(const Rational& s) const
  {
    auto r = c_;
    for (auto& x : r) x *= s;
    return RationalPoly(r);
  }

  bool operator==(const RationalPoly& o) const { return c_ == o.c_; }

  std::string to_string(const std::string& var = "t") const
  {
    if (c_.empty()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].to_string() + ")";
      if (i) s += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
  }

private:
  void trim()
  {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// binom(t + a, k) as a polynomial in t.
inline RationalPoly binomial_poly(long long a, int k)
{
  RationalPoly r(std::vector<Rational>{Rational(1)});
  for (int i = 0; i < k; ++i) r = r * RationalPoly(std::vector<Rational>{Rational(a - i, i + 1), Rational(1, i + 1)});
  return r;
}

} // namespace bundlekit

#endif // BUNDLEKIT_RATIONAL_HPP
