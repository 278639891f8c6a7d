#ifndef BUNDLEKIT_CHERN_HPP
#define BUNDLEKIT_CHERN_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "construction.hpp"
#include "hilbert.hpp"
#include "rational.hpp"

namespace bundlekit {

/// A class in K_0(P^m) written as sum of multiplicity * [O(twist)].
struct KClass {
  int ambient = 2;
  std::map<int, long long> terms;  // twist -> multiplicity, zeros dropped

  KClass() = default;
  explicit KClass(int m) : ambient(m) {}

  static KClass line(int m, int twist, long long mult = 1)
  {
    KClass k(m);
    k.add(twist, mult);
    return k;
  }

  KClass& add(int twist, long long mult)
  {
    long long& v = terms[twist];
    v += mult;
    if (v == 0) terms.erase(twist);
    return *this;
  }

  long long rank() const
  {
    long long r = 0;
    for (auto& [a, m] : terms) r += m;
    return r;
  }

  KClass operator+(const KClass& o) const
  {
    KClass r = *this;
    for (auto& [a, m] : o.terms) r.add(a, m);
    return r;
  }
  KClass operator-() const
  {
    KClass r(ambient);
    for (auto& [a, m] : terms) r.add(a, -m);
    return r;
  }
  KClass operator-(const KClass& o) const { return *this + (-o); }
  bool operator==(const KClass& o) const { return ambient == o.ambient && terms == o.terms; }

  /// Tensor with O(l).
  KClass twist(int l) const
  {
    KClass r(ambient);
    for (auto& [a, m] : terms) r.add(a + l, m);
    return r;
  }

  /// Same data read in K_0(P^m') (restriction to or from a linear subspace).
  KClass on(int m) const
  {
    KClass r = *this;
    r.ambient = m;
    return r;
  }

  /// On P^1 a class is fixed by rank and degree: (r - 1)[O] + [O(deg)].
  KClass canonical_on_line() const
  {
    if (ambient != 1) throw std::invalid_argument("canonical_on_line: class is not on P^1");
    long long deg = 0;
    for (auto& [a, m] : terms) deg += a * m;
    KClass r(1);
    r.add(0, rank() - 1);
    r.add(static_cast<int>(deg), 1);
    return r;
  }

  std::string to_string() const
  {
    std::string s;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
      auto [a, m] = *it;
      if (!s.empty()) s += m < 0 ? " - " : " + ";
      else if (m < 0) s += "-";
      long long am = m < 0 ? -m : m;
      if (am != 1) s += std::to_string(am);
      s += "[O(" + std::to_string(a) + ")]";
    }
    return s.empty() ? "0" : s;
  }
};

class NonIntegralChern : public std::runtime_error {
public:
  explicit NonIntegralChern(int i) : std::runtime_error("Chern class c" + std::to_string(i) + " is not an integer") {}
};

struct ChernData {
  long long rank = 0;
  long long c1 = 0;
  long long c2 = 0;
  std::vector<long long> higher;  // c3, c4, ... up to the ambient dimension
  long long discriminant() const { return c1 * c1 - 4 * c2; }
  bool operator==(const ChernData& o) const { return rank == o.rank && c1 == o.c1 && c2 == o.c2; }
};

namespace detail {

// Chern classes c_0..c_m from Chern character components ch_1..ch_m (Newton's identities).
inline std::vector<Rational> chern_from_character(const std::vector<Rational>& ch, int m)
{
  // power sums p_k = k! ch_k; k c_k = sum_{i=1}^{k} (-1)^{i-1} c_{k-i} p_i
  std::vector<Rational> pk(m + 1), c(m + 1);
  Rational fact(1);
  for (int k = 1; k <= m; ++k) {
    fact = fact * Rational(k);
    pk[k] = ch[k] * fact;
  }
  c[0] = Rational(1);
  for (int k = 1; k <= m; ++k) {
    Rational s(0);
    for (int i = 1; i <= k; ++i) s = (i % 2 == 1) ? s + c[k - i] * pk[i] : s - c[k - i] * pk[i];
    c[k] = s * Rational(1, k);
  }
  return c;
}

inline ChernData to_chern_data(long long rank, const std::vector<Rational>& c, int m)
{
  ChernData out;
  out.rank = rank;
  for (int i = 1; i <= m; ++i)
    if (!c[i].is_integer()) throw NonIntegralChern(i);
  out.c1 = m >= 1 ? c[1].num() : 0;
  out.c2 = m >= 2 ? c[2].num() : 0;
  for (int i = 3; i <= m; ++i) out.higher.push_back(c[i].num());
  return out;
}

} // namespace detail

/// Chern classes through the truncated Chern character sum_a mult e^{aH}.
inline ChernData chern_from_kclass(const KClass& k)
{
  const int m = k.ambient;
  if (m < 2) throw std::invalid_argument("chern_from_kclass: need ambient dimension >= 2");
  std::vector<Rational> ch(m + 1, Rational(0));
  for (auto& [a, mult] : k.terms) {
    Rational pw(1), fact(1);
    for (int j = 1; j <= m; ++j) {
      pw = pw * Rational(a);
      fact = fact * Rational(j);
      ch[j] = ch[j] + Rational(mult) * pw / fact;
    }
  }
  auto c = detail::chern_from_character(ch, m);
  return detail::to_chern_data(k.rank(), c, m);
}

/// The classes of the construction restricted to general linear subspaces
/// missing the curve: [M] on P^1, [F] and [E] on P^2.
struct ConstructionClasses {
  KClass M_on_line;   // as assembled, before simplification
  KClass M_canonical; // p[O] + [O(-p(p+1)/2)]
  KClass F_on_plane;
  KClass E_on_plane;
};

inline ConstructionClasses kclass_of_construction(const ConstructionParams& pr)
{
  if (pr.d != 1) throw std::invalid_argument("the K-class computation needs d = 1");
  const int p = static_cast<int>(pr.p);
  ConstructionClasses out;
  // away from C every I_{C_i} is trivial, so [M_j] = [O] + [L_j]; M = Msum - Lsum
  KClass M(1);
  for (int j = 1; j <= p; ++j) M.add(-(p - j), 1);
  M.add(-pr.d - (p - 1), 1);  // L_1(-(p-1))
  out.M_on_line = M;
  out.M_canonical = M.canonical_on_line();
  // F is M pushed into the plane: [O_line(a)] = [O(a)] - [O(a-1)]
  KClass onP2 = out.M_canonical.on(2);
  out.F_on_plane = onP2 - onP2.twist(-1);
  KClass G(2);
  G.add(-p * pr.k, 1).add(-p * pr.l, 1);
  out.E_on_plane = G - out.F_on_plane;
  return out;
}

inline ChernData closed_form_chern(const ConstructionParams& pr)
{
  if (pr.d != 1) throw std::invalid_argument("the closed forms are stated for d = 1");
  const long long p = pr.p, k = pr.k, l = pr.l;
  ChernData c;
  c.rank = 2;
  c.c1 = -1 - p * (k + l + 1);
  c.c2 = p * (p + 1) * (k + l) + p * p * k * l;
  return c;
}

class TemplateMismatch : public std::runtime_error {
public:
  explicit TemplateMismatch(const std::string& what) : std::runtime_error("Hilbert polynomial does not match a rank-2 bundle: " + what) {}
};

namespace detail {

// Coefficients of H^0..H^n in the Todd class of P^n, (H / (1 - e^{-H}))^{n+1}.
inline std::vector<Rational> todd_projective(int n)
{
  // x / (1 - e^{-x}) = sum B_k^+ x^k / k!: 1, 1/2, 1/12, 0, -1/720, 0, 1/30240
  std::vector<Rational> base{Rational(1), Rational(1, 2), Rational(1, 12), Rational(0), Rational(-1, 720), Rational(0),
                             Rational(1, 30240)};
  if (n >= static_cast<int>(base.size())) throw std::invalid_argument("todd_projective: dimension too large");
  std::vector<Rational> acc(n + 1, Rational(0));
  acc[0] = Rational(1);
  for (int f = 0; f <= n; ++f) {
    std::vector<Rational> next(n + 1, Rational(0));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; i + j <= n; ++j) next[i + j] = next[i + j] + acc[i] * base[j];
    acc = std::move(next);
  }
  return acc;
}

// chi(E(t)) on P^n from ch_0..ch_n: sum_j t^j / j! * [H^{n-j}](ch * td).
inline RationalPoly hilbert_polynomial_from_character(const std::vector<Rational>& ch, int n)
{
  auto td = todd_projective(n);
  std::vector<Rational> prod(n + 1, Rational(0));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) prod[i + j] = prod[i + j] + ch[i] * td[j];
  std::vector<Rational> coeffs(n + 1, Rational(0));
  Rational fact(1);
  for (int j = 0; j <= n; ++j) {
    if (j > 0) fact = fact * Rational(j);
    coeffs[j] = prod[n - j] / fact;
  }
  return RationalPoly(coeffs);
}

// ch_0..ch_n of a bundle of rank r with Chern classes c_1..c_n (inverse Newton).
inline std::vector<Rational> character_from_chern(long long r, const std::vector<Rational>& c, int n)
{
  // solve k c_k = sum_{i=1}^{k} (-1)^{i-1} c_{k-i} p_i for p_k
  std::vector<Rational> pk(n + 1, Rational(0)), ch(n + 1, Rational(0));
  ch[0] = Rational(r);
  Rational fact(1);
  for (int k = 1; k <= n; ++k) {
    Rational s = Rational(k) * c[k];
    for (int i = 1; i < k; ++i) s = (i % 2 == 1) ? s - c[k - i] * pk[i] : s + c[k - i] * pk[i];
    // the i = k term is (-1)^{k-1} c_0 p_k
    pk[k] = (k % 2 == 1) ? s : -s;
    fact = fact * Rational(k);
    ch[k] = pk[k] / fact;
  }
  return ch;
}

} // namespace detail

/// (c1, c2) of a rank-2 bundle on P^n (n >= 2) from the Hilbert polynomial of
/// a module representing it, checked against the full Riemann-Roch template
/// with c_i = 0 for i > 2.
inline ChernData chern_from_hilbert_polynomial(const HilbertData& h)
{
  const int n = h.nvars() - 1;
  if (n < 2) throw std::invalid_argument("chern_from_hilbert_polynomial: need P^n with n >= 2");
  RationalPoly hp = h.hilbert_polynomial();
  Rational nfact(1);
  for (int i = 2; i <= n; ++i) nfact = nfact * Rational(i);
  Rational r = hp.coefficient(n) * nfact;
  if (!(r == Rational(2))) throw TemplateMismatch("rank " + r.to_string() + " is not 2");
  auto td = detail::todd_projective(n);
  // [t^{n-1}] = (r td_1 + ch_1) / (n-1)!,  [t^{n-2}] = (r td_2 + ch_1 td_1 + ch_2) / (n-2)!
  Rational f1 = nfact / Rational(n), f2 = n >= 2 ? f1 / Rational(n - 1) : Rational(1);
  Rational ch1 = hp.coefficient(n - 1) * f1 - r * td[1];
  Rational ch2 = hp.coefficient(n - 2) * f2 - r * td[2] - ch1 * td[1];
  Rational c1 = ch1;
  Rational c2 = (c1 * c1 - Rational(2) * ch2) / Rational(2);
  if (!c1.is_integer()) throw NonIntegralChern(1);
  if (!c2.is_integer()) throw NonIntegralChern(2);
  std::vector<Rational> c(n + 1, Rational(0));
  c[0] = Rational(1);
  c[1] = c1;
  c[2] = c2;
  auto ch = detail::character_from_chern(2, c, n);
  if (!(detail::hilbert_polynomial_from_character(ch, n) == hp))
    throw TemplateMismatch("lower coefficients disagree with c_i = 0 for i > 2");
  ChernData out;
  out.rank = 2;
  out.c1 = c1.num();
  out.c2 = c2.num();
  out.higher.assign(n - 2, 0);
  return out;
}

/// The family k = 1, l = (p-1)s, d = 1 (so N = ps + 1).
struct DiscriminantRow {
  int s = 0;
  ConstructionParams params;
  ChernData chern;
};

struct DiscriminantScan {
  std::uint32_t p = 2;
  std::vector<DiscriminantRow> rows;
  std::optional<Rational> alpha, beta, gamma;  // from the first three rows
  std::optional<int> first_positive;           // least s with c1^2 > 4 c2
};

inline DiscriminantScan discriminant_scan(std::uint32_t p, int s_min, int s_max)
{
  if (s_min < 1 || s_max < s_min) throw std::invalid_argument("discriminant_scan: need 1 <= s_min <= s_max");
  DiscriminantScan out;
  out.p = p;
  for (int s = s_min; s <= s_max; ++s) {
    auto pr = validate_params(p, 1, static_cast<long long>(p - 1) * s, 1);
    auto classes = kclass_of_construction(pr);
    DiscriminantRow row{s, pr, chern_from_kclass(classes.E_on_plane)};
    if (!out.first_positive && row.chern.discriminant() > 0) out.first_positive = s;
    out.rows.push_back(row);
  }
  if (out.rows.size() >= 3) {
    // D(s) = alpha s^2 + beta s + gamma through three consecutive values
    Rational d0(out.rows[0].chern.discriminant()), d1(out.rows[1].chern.discriminant()), d2(out.rows[2].chern.discriminant());
    Rational s0(out.rows[0].s);
    Rational a = (d2 - Rational(2) * d1 + d0) / Rational(2);
    Rational b = (d1 - d0) - a * (Rational(2) * s0 + Rational(1));
    Rational c = d0 - a * s0 * s0 - b * s0;
    out.alpha = a;
    out.beta = b;
    out.gamma = c;
  }
  return out;
}

} // namespace bundlekit

#endif // BUNDLEKIT_CHERN_HPP
