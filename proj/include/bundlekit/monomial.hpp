#ifndef BUNDLEKIT_MONOMIAL_HPP
#define BUNDLEKIT_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace bundlekit {

inline constexpr int kMaxVars = 7;

/// Exponent vector packed into one word: variable i lives in byte i, the total
/// degree in byte 7. Every byte stays below 128 so the top bit of each byte can
/// serve as a borrow guard for divisibility tests.
class Monomial {
public:
  static constexpr std::uint64_t kGuard = 0x8080808080808080ULL;
  static constexpr std::uint64_t kLow = 0x00FFFFFFFFFFFFFFULL;

  constexpr Monomial() = default;
  static constexpr Monomial from_bits(std::uint64_t bits) { return Monomial(bits); }

  static Monomial from_exponents(const std::vector<int>& e)
  {
    if (e.size() > kMaxVars) throw std::invalid_argument("Monomial: too many variables");
    std::uint64_t bits = 0;
    int deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < 0 || e[i] > 127) throw std::out_of_range("Monomial: exponent out of range");
      bits |= static_cast<std::uint64_t>(e[i]) << (8 * i);
      deg += e[i];
    }
    if (deg > 127) throw std::out_of_range("Monomial: degree out of range");
    return Monomial(bits | (static_cast<std::uint64_t>(deg) << 56));
  }

  static Monomial variable(int i) { return Monomial((1ULL << (8 * i)) | (1ULL << 56)); }

  std::uint64_t bits() const { return bits_; }
  int degree() const { return static_cast<int>(bits_ >> 56); }
  int exponent(int i) const { return static_cast<int>((bits_ >> (8 * i)) & 0xFF); }
  bool is_one() const { return bits_ == 0; }

  std::vector<int> exponents(int nvars) const
  {
    std::vector<int> e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = exponent(i);
    return e;
  }

  Monomial operator*(Monomial o) const
  {
    std::uint64_t s = bits_ + o.bits_;
    if (s & kGuard) throw std::overflow_error("Monomial: exponent overflow");
    return Monomial(s);
  }

  /// True iff this divides o.
  bool divides(Monomial o) const { return (((o.bits_ | kGuard) - bits_) & kGuard) == kGuard; }

  /// o / this; caller guarantees divisibility.
  Monomial quotient_of(Monomial o) const { return Monomial(o.bits_ - bits_); }

  Monomial lcm(Monomial o) const
  {
    std::uint64_t r = 0;
    int deg = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      std::uint64_t a = (bits_ >> (8 * i)) & 0xFF, b = (o.bits_ >> (8 * i)) & 0xFF;
      std::uint64_t m = a > b ? a : b;
      r |= m << (8 * i);
      deg += static_cast<int>(m);
    }
    if (deg > 127) throw std::overflow_error("Monomial: degree overflow");
    return Monomial(r | (static_cast<std::uint64_t>(deg) << 56));
  }

  bool coprime(Monomial o) const
  {
    for (int i = 0; i < kMaxVars; ++i)
      if (((bits_ >> (8 * i)) & 0xFF) && ((o.bits_ >> (8 * i)) & 0xFF)) return false;
    return true;
  }

  /// Integer key monotone in graded reverse lexicographic order (x_0 > x_1 > ...).
  std::uint64_t grevlex_key() const { return (bits_ & ~kLow) | (~bits_ & kLow); }

  friend bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }
  friend bool operator!=(Monomial a, Monomial b) { return a.bits_ != b.bits_; }

private:
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

/// Graded reverse lexicographic comparison: true iff a > b.
inline bool grevlex_greater(Monomial a, Monomial b) { return a.grevlex_key() > b.grevlex_key(); }

/// All monomials of the given degree in nvars variables, in decreasing grevlex order.
inline std::vector<Monomial> monomials_of_degree(int nvars, int degree)
{
  std::vector<Monomial> out;
  if (degree < 0 || nvars <= 0) return out;
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      e[var] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[var] = a;
      rec(var + 1, left - a);
    }
    e[var] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), grevlex_greater);
  return out;
}

} // namespace bundlekit

template <>
struct std::hash<bundlekit::Monomial> {
  std::size_t operator()(bundlekit::Monomial m) const noexcept
  {
    return std::hash<std::uint64_t>{}(m.bits() * 0x9E3779B97F4A7C15ULL);
  }
};

#endif // BUNDLEKIT_MONOMIAL_HPP
