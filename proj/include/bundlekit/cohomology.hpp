#ifndef BUNDLEKIT_COHOMOLOGY_HPP
#define BUNDLEKIT_COHOMOLOGY_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "resolution.hpp"

namespace bundlekit {

/// Sheaf cohomology of the sheaf of a graded module on P^n (n = nvars - 1),
/// through graded local duality: H^i_m(M)_l is dual to Ext^{n+1-i}(M, S(-n-1))_{-l}.
class SheafCohomology {
public:
  explicit SheafCohomology(const GradedModule& m) : m_(m), n_(m.ring()->nvars - 1)
  {
    res_ = free_resolution(m, n_ + 2);
    const GradedFreeModule omega(m.ring(), {n_ + 1});
    for (int j = 0; j <= n_ + 1; ++j) ext_.push_back(ext_from_resolution(res_, omega, j).module);
  }

  int dimension_of_space() const { return n_; }
  const FreeResolution& resolution() const { return res_; }
  const GradedModule& ext(int j) const { return ext_.at(j); }

  /// h^i(P^n, M~(l)).
  long long h(int i, int l) const
  {
    if (i < 0 || i > n_) throw std::invalid_argument("sheaf cohomology index out of range");
    if (i >= 1) return ext_dim(n_ - i, -l);
    // 0 -> H^0_m(M) -> M -> sum_l H^0(M(l)) -> H^1_m(M) -> 0
    return m_.hilbert().hilbert_function(l) - ext_dim(n_ + 1, -l) + ext_dim(n_, -l);
  }

  /// Twists outside [-(T + n + 1), T] have no intermediate cohomology, T being
  /// the largest absolute degree in the resolution.
  std::pair<int, int> window() const
  {
    int t = res_.max_abs_degree();
    return {-(t + n_ + 1), t};
  }

private:
  long long ext_dim(int j, int degree) const
  {
    if (j < 0 || j >= static_cast<int>(ext_.size())) return 0;
    return ext_[j].hilbert().hilbert_function(degree);
  }

  GradedModule m_;
  int n_;
  FreeResolution res_;
  std::vector<GradedModule> ext_;
};

inline long long sheaf_cohomology_dim(const GradedModule& m, int i, int l) { return SheafCohomology(m).h(i, l); }

/// Intermediate cohomology table over the certified window, with the first
/// nonvanishing entry (a witness that the bundle does not split).
struct HorrocksScan {
  int lo = 0, hi = 0;
  std::vector<std::vector<long long>> table;  // table[i][l - lo] for 0 <= i <= n
  std::optional<std::pair<int, int>> witness;  // (i, l)
};

inline HorrocksScan horrocks_scan(const SheafCohomology& c)
{
  HorrocksScan s;
  std::tie(s.lo, s.hi) = c.window();
  const int n = c.dimension_of_space();
  s.table.assign(n + 1, {});
  for (int i = 0; i <= n; ++i)
    for (int l = s.lo; l <= s.hi; ++l) {
      s.table[i].push_back(c.h(i, l));
      if (i > 0 && i < n && s.table[i].back() != 0 && !s.witness) s.witness = {i, l};
    }
  return s;
}

} // namespace bundlekit

#endif // BUNDLEKIT_COHOMOLOGY_HPP
