#ifndef BUNDLEKIT_FREENESS_HPP
#define BUNDLEKIT_FREENESS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "resolution.hpp"

namespace bundlekit {

struct LocalFreenessCertificate {
  int expected_rank = 0;
  int generators = 0;          // after pruning
  int relations = 0;           // after pruning
  int generic_rank = 0;        // rank of the presentation matrix at a random point
  int generic_rank_exact = 0;  // generators minus the rank of the module (from its Hilbert series)
  int extension_degree = 0;    // evaluation field is F_{p^e}
  int minors_used = 0;         // nonzero q-minors fed to the ideal
  int minor_ideal_dim = 0;     // Krull dimension of S/(minors used), an upper bound when sampled; -1 for the unit ideal
  bool locally_free = false;
  // "fitting" when the minors decided; "ext" when sampled minors were
  // inconclusive and Ext^i(m, S) for 1 <= i <= nvars were checked instead
  std::string method = "fitting";
  std::vector<int> ext_dims;  // Krull dimensions of Ext^i(m, S), i = 1..nvars, when method is "ext"
};

class RankMismatch : public std::runtime_error {
public:
  RankMismatch(int expected, int found)
      : std::runtime_error("module has generic rank " + std::to_string(found) + ", expected " + std::to_string(expected)),
        expected_rank(expected), found_rank(found)
  {
  }
  int expected_rank;
  int found_rank;
};

namespace detail {

// det of the square submatrix rows x cols by expansion over column subsets.
inline Poly minor(const GradedMatrix& a, const std::vector<int>& rows, const std::vector<int>& cols)
{
  const int q = static_cast<int>(rows.size());
  const RingPtr& R = a.ring();
  std::vector<std::vector<Poly>> entry(q, std::vector<Poly>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) entry[i][j] = a.entry(rows[i], cols[j]);
  // d[S] = det of rows 0..|S|-1 against the columns in S
  std::vector<Poly> d(std::size_t{1} << q, Poly(R));
  d[0] = Poly::constant(R, 1);
  for (unsigned s = 1; s < (1u << q); ++s) {
    int k = __builtin_popcount(s) - 1;
    Poly acc(R);
    int sign_pos = 0;
    for (int j = 0; j < q; ++j) {
      if (!(s & (1u << j))) continue;
      const Poly& e = entry[k][j];
      const Poly& rest = d[s & ~(1u << j)];
      if (!e.is_zero() && !rest.is_zero()) {
        Poly term = e * rest;
        acc = ((k + sign_pos) % 2 == 0) ? acc + term : acc - term;
      }
      ++sign_pos;
    }
    d[s] = acc;
  }
  return d.back();
}

} // namespace detail

/// Certifies that the sheaf of m is locally free of rank r: the presentation has
/// generic rank q = generators - r and its q-minors cut out nothing in projective space.
/// Too many minors to enumerate: a sample is tried first, then the Ext criterion.
/// Throws RankMismatch when m has generic rank above r.
inline LocalFreenessCertificate local_freeness(const GradedModule& m, int r, std::uint64_t seed = 1)
{
  LocalFreenessCertificate cert;
  cert.expected_rank = r;
  auto pruned = prune(m).module;
  const GradedMatrix& a = pruned.presentation();
  const RingPtr& R = a.ring();
  cert.generators = a.rows();
  cert.relations = a.ncols();

  // exact generic rank: the rank of a module is its Hilbert numerator at t = 1
  long long module_rank = 0;
  for (auto c : pruned.hilbert().numerator().c) module_rank += c;
  cert.generic_rank_exact = cert.generators - static_cast<int>(module_rank);

  // numeric generic rank over an extension large enough that a nonzero minor
  // of degree <= D survives a random point with probability >= 1 - D / p^e
  const int target_bits = 24;
  int e = std::max(1, static_cast<int>(std::ceil(target_bits / std::log2(static_cast<double>(R->p())))));
  ExtensionField big(R->p(), e);
  cert.extension_degree = e;
  std::mt19937_64 rng(seed);
  int numeric = 0;
  for (int attempt = 0; attempt < 4 && numeric != cert.generic_rank_exact; ++attempt) {
    std::vector<ExtensionField::Elem> point;
    for (int i = 0; i < R->nvars; ++i) point.push_back(big.random(rng));
    if (std::all_of(point.begin(), point.end(), [&](const auto& c) { return big.is_zero(c); })) continue;
    numeric = std::max(numeric, a.ncols() == 0 ? 0 : rank(big, evaluate_at_point(a, big, point)));
  }
  cert.generic_rank = numeric;
  if (numeric != cert.generic_rank_exact)
    throw std::runtime_error("local_freeness: random evaluation and Hilbert series disagree on the generic rank");
  // a module of larger generic rank cannot be a rank-r bundle anywhere; a
  // smaller one (torsion, say) still gets its minor ideal recorded
  const int q = numeric;
  if (cert.generators - q > r) throw RankMismatch(r, cert.generators - q);
  const bool rank_ok = cert.generators - q == r;

  if (q == 0) {
    cert.minor_ideal_dim = -1;
    cert.locally_free = rank_ok;
    return cert;
  }

  // feed nonzero q-minors in batches until S/(minors) has dimension <= 0
  std::vector<int> all_rows(a.rows()), all_cols(a.ncols());
  for (int i = 0; i < a.rows(); ++i) all_rows[i] = i;
  for (int j = 0; j < a.ncols(); ++j) all_cols[j] = j;
  std::set<std::pair<std::vector<int>, std::vector<int>>> tried;
  std::vector<Poly> minors;
  const double total = std::exp(std::lgamma(a.rows() + 1.0) - std::lgamma(q + 1.0) - std::lgamma(a.rows() - q + 1.0) +
                                std::lgamma(a.ncols() + 1.0) - std::lgamma(q + 1.0) - std::lgamma(a.ncols() - q + 1.0));
  const bool exhaustive = total <= 200000;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> order;
  if (exhaustive) {
    std::vector<bool> rs(a.rows(), false), cs(a.ncols(), false);
    std::fill(rs.begin(), rs.begin() + q, true);
    do {
      std::vector<int> rows;
      for (int i = 0; i < a.rows(); ++i)
        if (rs[i]) rows.push_back(i);
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + q, true);
      do {
        std::vector<int> cols;
        for (int j = 0; j < a.ncols(); ++j)
          if (cs[j]) cols.push_back(j);
        order.emplace_back(rows, cols);
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::size_t next = 0;
  auto draw = [&](std::vector<int>& rows, std::vector<int>& cols) {
    if (exhaustive) {
      if (next >= order.size()) return false;
      rows = order[next].first;
      cols = order[next].second;
      ++next;
      return true;
    }
    for (int tries = 0; tries < 1000; ++tries) {
      std::shuffle(all_rows.begin(), all_rows.end(), rng);
      std::shuffle(all_cols.begin(), all_cols.end(), rng);
      rows.assign(all_rows.begin(), all_rows.begin() + q);
      cols.assign(all_cols.begin(), all_cols.begin() + q);
      std::sort(rows.begin(), rows.end());
      std::sort(cols.begin(), cols.end());
      if (tried.insert({rows, cols}).second) return true;
    }
    return false;
  };

  int batch = 4;
  bool more = true;
  cert.minor_ideal_dim = R->nvars;
  std::optional<GroebnerBasis> current;
  bool overflowed = false;
  // the minor expansion costs 2^q polynomial products
  const bool feasible = q <= 12;
  if (!feasible) more = false;
  try {
  while (more) {
    int added = 0;
    std::vector<int> rows, cols;
    while (added < batch && (more = draw(rows, cols))) {
      auto d = detail::minor(a, rows, cols);
      // minors already in the ideal do not shrink the vanishing locus
      if (d.is_zero() || (current && current->contains(Vec::from_poly(d, 0)))) continue;
      minors.push_back(std::move(d));
      ++added;
    }
    if (added == 0) break;
    current = groebner_basis(ideal(R, minors));
    auto hd = hilbert(*current);
    cert.minor_ideal_dim = hd.krull_dimension();
    cert.minors_used = static_cast<int>(minors.size());
    if (cert.minor_ideal_dim <= 0) break;
    // sampling cap for presentations with astronomically many minors
    if (!exhaustive && minors.size() >= 1000) break;
    batch *= 2;
  }
  } catch (const std::overflow_error&) {
    // minor degrees beyond the monomial exponent range
    overflowed = true;
  }
  cert.locally_free = rank_ok && !overflowed && cert.minor_ideal_dim <= 0;
  if (rank_ok && (!exhaustive || overflowed || !feasible) && !cert.locally_free) {
    // a sample of minors only bounds the Fitting locus from above; decide
    // exactly: the sheaf is locally free iff every Ext^i(m, S), i >= 1, has finite length
    cert.method = "ext";
    const int n = R->nvars;
    auto res = free_resolution(pruned, n + 1);
    const GradedFreeModule S(R, {0});
    cert.locally_free = true;
    for (int i = 1; i <= n; ++i) {
      int dim = ext_from_resolution(res, S, i).module.hilbert().krull_dimension();
      cert.ext_dims.push_back(dim);
      if (dim > 0) cert.locally_free = false;
    }
  }
  return cert;
}

} // namespace bundlekit

#endif // BUNDLEKIT_FREENESS_HPP
