#ifndef BUNDLEKIT_HILBERT_HPP
#define BUNDLEKIT_HILBERT_HPP

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "rational.hpp"

namespace bundlekit {

/// Integer Laurent polynomial sum_i c_i t^(low + i).
struct LaurentPoly {
  int low = 0;
  std::vector<long long> c;

  bool is_zero() const
  {
    return std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
  }
  long long coefficient(int e) const
  {
    int i = e - low;
    return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : 0;
  }
  int high() const { return low + static_cast<int>(c.size()) - 1; }

  void add_shifted(const std::vector<long long>& p, int shift)
  {
    if (p.empty()) return;
    if (c.empty()) {
      low = shift;
      c = p;
      return;
    }
    int new_low = std::min(low, shift);
    int new_high = std::max(high(), shift + static_cast<int>(p.size()) - 1);
    std::vector<long long> r(new_high - new_low + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) r[low - new_low + i] += c[i];
    for (std::size_t i = 0; i < p.size(); ++i) r[shift - new_low + i] += p[i];
    low = new_low;
    c = std::move(r);
  }
  void trim()
  {
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::size_t k = 0;
    while (k < c.size() && c[k] == 0) ++k;
    c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
    low += static_cast<int>(k);
    if (c.empty()) low = 0;
  }
  bool operator==(const LaurentPoly& o) const
  {
    LaurentPoly a = *this, b = o;
    a.trim();
    b.trim();
    return a.low == b.low && a.c == b.c;
  }
  std::string to_string() const
  {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i]) continue;
      if (!s.empty()) s += c[i] > 0 ? " + " : " - ";
      else if (c[i] < 0) s += "-";
      long long a = c[i] < 0 ? -c[i] : c[i];
      int e = low + static_cast<int>(i);
      if (a != 1 || e == 0) s += std::to_string(a);
      if (e != 0) s += (a != 1 ? "*t" : "t") + (e != 1 ? "^" + std::to_string(e) : std::string());
    }
    return s.empty() ? "0" : s;
  }
};

namespace detail {

inline std::vector<Monomial> minimalize(std::vector<Monomial> g)
{
  std::sort(g.begin(), g.end(), [](Monomial a, Monomial b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a.bits() < b.bits();
  });
  g.erase(std::unique(g.begin(), g.end()), g.end());
  std::vector<Monomial> out;
  for (auto m : g) {
    bool redundant = false;
    for (auto o : out)
      if (o.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(m);
  }
  return out;
}

inline std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b)
{
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

/// Numerator N with HS(S/J) = N(t)/(1-t)^n for the monomial ideal J.
inline std::vector<long long> monomial_numerator(std::vector<Monomial> gens, int nvars)
{
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  for (auto m : gens)
    if (m.is_one()) return {0};
  bool coprime = true;
  for (std::size_t i = 0; i < gens.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!gens[i].coprime(gens[j])) {
        coprime = false;
        break;
      }
  if (coprime) {
    std::vector<long long> r{1};
    for (auto m : gens) {
      std::vector<long long> f(m.degree() + 1, 0);
      f[0] = 1;
      f[m.degree()] -= 1;
      r = poly_mul(r, f);
    }
    return r;
  }
  // pivot on the variable occurring in the most generators
  int best = -1, best_count = -1;
  for (int v = 0; v < nvars; ++v) {
    int cnt = 0;
    for (auto m : gens)
      if (m.exponent(v)) ++cnt;
    if (cnt > best_count) {
      best = v;
      best_count = cnt;
    }
  }
  Monomial x = Monomial::variable(best);
  std::vector<Monomial> plus{x}, colon;
  for (auto m : gens) {
    if (!m.exponent(best)) plus.push_back(m);
    colon.push_back(m.exponent(best) ? x.quotient_of(m) : m);
  }
  auto a = monomial_numerator(std::move(plus), nvars);
  auto b = monomial_numerator(std::move(colon), nvars);
  std::vector<long long> r(std::max(a.size(), b.size() + 1), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i + 1] += b[i];
  return r;
}

inline long long binomial(long long n, int k)
{
  if (k < 0 || n < k) return 0;
  if (n < 0) return 0;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<long long>(r);
}

} // namespace detail

/// Hilbert series HS(t) = numerator(t) / (1-t)^nvars of a graded module, with the
/// invariants derived from it.
class HilbertData {
public:
  HilbertData() = default;
  HilbertData(LaurentPoly numerator, int nvars) : num_(std::move(numerator)), n_(nvars)
  {
    num_.trim();
    reduce();
  }

  const LaurentPoly& numerator() const { return num_; }
  int nvars() const { return n_; }

  /// Dimension of the degree-d piece.
  long long hilbert_function(int d) const
  {
    long long s = 0;
    for (std::size_t i = 0; i < num_.c.size(); ++i) {
      int j = num_.low + static_cast<int>(i);
      if (d - j < 0) continue;
      s += num_.c[i] * detail::binomial(d - j + n_ - 1, n_ - 1);
    }
    return s;
  }

  /// Krull dimension of the module (-1 for the zero module).
  int krull_dimension() const { return dim_; }
  /// Dimension of the support in projective space (-1 when empty).
  int projective_dimension() const { return dim_ - 1; }
  /// Degree of the module: the reduced numerator evaluated at 1.
  long long multiplicity() const
  {
    long long s = 0;
    for (auto v : reduced_.c) s += v;
    return dim_ < 0 ? 0 : s;
  }

  /// Polynomial agreeing with the Hilbert function in large degrees.
  RationalPoly hilbert_polynomial() const
  {
    RationalPoly r;
    if (dim_ <= 0) return r;
    for (std::size_t i = 0; i < reduced_.c.size(); ++i) {
      long long j = reduced_.low + static_cast<long long>(i);
      r = r + binomial_poly(dim_ - 1 - j, dim_ - 1).scaled(Rational(reduced_.c[i]));
    }
    return r;
  }

  /// Rank of the module: the unreduced numerator at t = 1.
  long long rank() const
  {
    long long s = 0;
    for (auto v : num_.c) s += v;
    return s;
  }

  /// First Chern class of the sheaf on P^{nvars-1}, read off the two top
  /// coefficients of the Hilbert polynomial:
  /// HP(t) = r t^n / n! + (c1 + r(n+1)/2) t^{n-1} / (n-1)! + ...
  Rational first_chern_class() const
  {
    const int n = n_ - 1;
    Rational fact(1);
    for (int i = 2; i <= n - 1; ++i) fact = fact * Rational(i);
    Rational top = hilbert_polynomial().coefficient(n - 1);
    return top * fact - Rational(rank() * (n + 1), 2);
  }

  /// Smallest degree from which the Hilbert function agrees with the polynomial.
  int regularity_index() const
  {
    if (num_.c.empty()) return 0;
    return std::max(reduced_.high() - dim_ + 1, num_.low);
  }

private:
  void reduce()
  {
    reduced_ = num_;
    dim_ = n_;
    if (reduced_.is_zero()) {
      dim_ = -1;
      return;
    }
    // divide by (1 - t) while the value at 1 vanishes
    while (dim_ > 0) {
      long long s = 0;
      for (auto v : reduced_.c) s += v;
      if (s != 0) break;
      // q(t) with p(t) = (1 - t) q(t): q_i = sum_{k<=i} p_k
      std::vector<long long> q(reduced_.c.size() - 1);
      long long acc = 0;
      for (std::size_t i = 0; i + 1 < reduced_.c.size(); ++i) {
        acc += reduced_.c[i];
        q[i] = acc;
      }
      reduced_.c = std::move(q);
      reduced_.trim();
      --dim_;
    }
  }

  LaurentPoly num_;
  LaurentPoly reduced_;
  int n_ = 0;
  int dim_ = -1;
};

/// Hilbert series of ambient / submodule, read off the leading terms of a Groebner basis.
inline HilbertData hilbert(const GroebnerBasis& gb)
{
  const int n = gb.ambient().ring->nvars;
  LaurentPoly num;
  auto leads = gb.leading_monomials();
  for (int c = 0; c < gb.ambient().rank(); ++c)
    num.add_shifted(detail::monomial_numerator(leads[c], n), gb.ambient().degrees[c]);
  return HilbertData(std::move(num), n);
}

} // namespace bundlekit

#endif // BUNDLEKIT_HILBERT_HPP
