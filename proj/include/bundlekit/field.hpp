#ifndef BUNDLEKIT_FIELD_HPP
#define BUNDLEKIT_FIELD_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bundlekit {

inline bool is_prime(std::uint64_t n)
{
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in F_p for a word-sized prime p. Elements are residues in [0, p).
class PrimeField {
public:
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t p) : p_(p)
  {
    if (!is_prime(p) || p >= (1u << 31))
      throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t characteristic() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(long long v) const
  {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

  Elem add(Elem a, Elem b) const
  {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const
  {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem pow(Elem a, std::uint64_t e) const
  {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elem inv(Elem a) const
  {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return pow(a, p_ - 2);
  }
  bool is_zero(Elem a) const { return a == 0; }

  bool operator==(const PrimeField&) const = default;

private:
  std::uint32_t p_;
};

/// F_{p^e} as F_p[u]/(m(u)) with m monic irreducible of degree e.
/// Elements are coefficient vectors of length e (low degree first).
class ExtensionField {
public:
  using Elem = std::vector<std::uint32_t>;

  ExtensionField(std::uint32_t p, int degree) : base_(p), e_(degree)
  {
    if (degree < 1) throw std::invalid_argument("ExtensionField: degree must be >= 1");
    modulus_ = find_irreducible();
  }

  const PrimeField& base() const { return base_; }
  int degree() const { return e_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  /// Number of elements, saturating at 2^62.
  std::uint64_t order() const
  {
    std::uint64_t q = 1;
    for (int i = 0; i < e_; ++i) {
      if (q > (std::uint64_t{1} << 62) / base_.characteristic()) return std::uint64_t{1} << 62;
      q *= base_.characteristic();
    }
    return q;
  }

  Elem zero() const { return Elem(e_, 0); }
  Elem one() const
  {
    Elem r(e_, 0);
    r[0] = 1;
    return r;
  }
  Elem embed(std::uint32_t a) const
  {
    Elem r(e_, 0);
    r[0] = a % base_.characteristic();
    return r;
  }
  bool is_zero(const Elem& a) const
  {
    for (auto c : a)
      if (c) return false;
    return true;
  }
  Elem add(const Elem& a, const Elem& b) const
  {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_.add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const
  {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_.sub(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const
  {
    Elem r(e_);
    for (int i = 0; i < e_; ++i) r[i] = base_.neg(a[i]);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const
  {
    std::vector<std::uint32_t> prod(2 * e_ - 1, 0);
    for (int i = 0; i < e_; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < e_; ++j)
        prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
    }
    reduce(prod);
    return Elem(prod.begin(), prod.begin() + e_);
  }
  Elem pow(Elem a, std::uint64_t k) const
  {
    Elem r = one();
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  Elem inv(const Elem& a) const
  {
    if (is_zero(a)) throw std::domain_error("ExtensionField: inverse of zero");
    // a^(q-2); q fits comfortably for the degrees used here.
    std::uint64_t q = 1;
    for (int i = 0; i < e_; ++i) q *= base_.characteristic();
    return pow(a, q - 2);
  }
  Elem random(std::mt19937_64& rng) const
  {
    std::uniform_int_distribution<std::uint32_t> dist(0, base_.characteristic() - 1);
    Elem r(e_);
    for (auto& c : r) c = dist(rng);
    return r;
  }

private:
  // prod has length >= e; reduce modulo the monic modulus in place
  void reduce(std::vector<std::uint32_t>& prod) const
  {
    for (int k = static_cast<int>(prod.size()) - 1; k >= e_; --k) {
      std::uint32_t c = prod[k];
      if (!c) continue;
      prod[k] = 0;
      for (int i = 0; i < e_; ++i)
        prod[k - e_ + i] = base_.sub(prod[k - e_ + i], base_.mul(c, modulus_[i]));
    }
    if (static_cast<int>(prod.size()) < e_) prod.resize(e_, 0);
  }

  // Monic polynomial of degree e_ with no factor of degree <= e_/2, found by
  // enumerating candidates in a fixed order.
  std::vector<std::uint32_t> find_irreducible() const
  {
    const std::uint32_t p = base_.characteristic();
    std::vector<std::uint32_t> cand(e_ + 1, 0);
    cand[e_] = 1;
    if (e_ == 1) return cand;
    while (true) {
      // advance the low coefficients as a base-p counter
      int i = 0;
      while (i < e_) {
        if (++cand[i] < p) break;
        cand[i] = 0;
        ++i;
      }
      if (i == e_) throw std::runtime_error("ExtensionField: no irreducible polynomial found");
      if (cand[0] != 0 && irreducible(cand)) return cand;
    }
  }

  static std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b,
                                             const PrimeField& f)
  {
    int db = static_cast<int>(b.size()) - 1;
    while (db >= 0 && b[db] == 0) --db;
    std::uint32_t lead_inv = f.inv(b[db]);
    for (int k = static_cast<int>(a.size()) - 1; k >= db; --k) {
      if (!a[k]) continue;
      std::uint32_t c = f.mul(a[k], lead_inv);
      for (int i = 0; i <= db; ++i) a[k - db + i] = f.sub(a[k - db + i], f.mul(c, b[i]));
    }
    a.resize(db > 0 ? db : 1);
    return a;
  }

  bool irreducible(const std::vector<std::uint32_t>& m) const
  {
    const std::uint32_t p = base_.characteristic();
    for (int dd = 1; 2 * dd <= e_; ++dd) {
      std::vector<std::uint32_t> div(dd + 1, 0);
      div[dd] = 1;
      while (true) {
        auto r = poly_mod(m, div, base_);
        bool zero = true;
        for (auto c : r)
          if (c) zero = false;
        if (zero) return false;
        int i = 0;
        while (i < dd) {
          if (++div[i] < p) break;
          div[i] = 0;
          ++i;
        }
        if (i == dd) break;
      }
    }
    return true;
  }

  PrimeField base_;
  int e_;
  std::vector<std::uint32_t> modulus_;
};

} // namespace bundlekit

#endif // BUNDLEKIT_FIELD_HPP
