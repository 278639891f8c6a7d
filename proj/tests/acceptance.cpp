// Prints one pass/fail line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "bundlekit/pipeline.hpp"
#include "oracle/module_check.hpp"
#include "report.hpp"

using namespace bundlekit;

namespace {

struct Outcome {
  bool passed = false;
  std::string note;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RunConfig config(long long p, long long k, long long l, long long d)
{
  RunConfig c;
  c.p = p;
  c.k = k;
  c.l = l;
  c.d = d;
  return c;
}

const PipelineResult& default_run()
{
  static const PipelineResult r = run_pipeline(config(2, 1, 1, 1));
  return r;
}

Outcome criterion_chern_reproduction()
{
  auto t0 = std::chrono::steady_clock::now();
  const auto& r = default_run();
  double secs = seconds_since(t0);
  if (!r.chern || !r.chern->hilbert) return {false, "Chern block missing"};
  const auto& k = r.chern->kclass;
  const auto& h = *r.chern->hilbert;
  bool ok = k.c1 == -7 && k.c2 == 16 && h.c1 == -7 && h.c2 == 16 && secs < 300;
  return {ok, "K-class (" + std::to_string(k.c1) + ", " + std::to_string(k.c2) + "), Hilbert polynomial (" + std::to_string(h.c1) +
                  ", " + std::to_string(h.c2) + ")"};
}

Outcome criterion_closed_form_agreement()
{
  int n = 0, bad = 0;
  for (long long p : {2, 3, 5})
    for (long long k : {1, 2})
      for (long long l : {1, 2, 3}) {
        ConstructionParams pr;
        try {
          pr = validate_params(p, k, l, 1);
        } catch (const InvalidParams&) {
          continue;
        }
        ++n;
        if (!(closed_form_chern(pr) == chern_from_kclass(kclass_of_construction(pr).E_on_plane))) ++bad;
      }
  return {n > 0 && bad == 0, std::to_string(n) + " admissible triples, " + std::to_string(bad) + " disagreements"};
}

Outcome criterion_discriminant_family()
{
  std::string note;
  bool ok = true;
  for (std::uint32_t p : {2u, 3u}) {
    auto s = discriminant_scan(p, 1, 3);
    Rational expected(1LL * p * p * (p - 1) * (p - 1));
    ok = ok && s.alpha && *s.alpha == expected;
    note += "p=" + std::to_string(p) + " alpha=" + (s.alpha ? s.alpha->to_string() : "none") + " ";
  }
  return {ok, note};
}

Outcome criterion_claim_suite()
{
  auto t0 = std::chrono::steady_clock::now();
  std::string note;
  bool ok = true;
  for (auto cfg : {config(2, 1, 1, 1), config(3, 1, 2, 1)}) {
    auto r = cfg.p == 2 ? default_run() : run_pipeline(cfg);
    std::set<int> passed_claims;
    bool claims_ok = true;
    for (auto& s : r.stages)
      for (auto& c : s.checks) {
        int n = claim_number(c.id);
        if (n == 0) continue;
        if (c.passed) passed_claims.insert(n);
        else claims_ok = false;
      }
    bool bundle = r.bundle && r.bundle->certificate.locally_free && r.bundle->M.hilbert().rank() == cfg.p + 1;
    bool e_bundle = r.kernel && r.kernel->certificate.locally_free && r.kernel->rank == 2;
    bool witnesses = r.nonsplit && r.nonsplit->M1_scan.witness && r.nonsplit->M_scan.witness && r.transfer && r.transfer->E_scan.witness;
    bool this_ok = claims_ok && passed_claims.size() == 10 && bundle && e_bundle && witnesses && r.all_passed();
    ok = ok && this_ok;
    note += "N=" + std::to_string(r.params.N) + (this_ok ? " ok " : " FAILED ");
  }
  double secs = seconds_since(t0);
  ok = ok && secs < 1800;
  return {ok, note};
}

Outcome criterion_cohomology_transfer()
{
  const auto& r = default_run();
  if (!r.transfer) return {false, "no transfer table"};
  int entries = 0;
  for (auto& row : r.transfer->rows)
    for (auto& v : row) {
      if (v[0] != v[2] || v[1] != v[2]) return {false, "table mismatch"};
      ++entries;
    }
  return {r.transfer->rows.size() == 2 && entries > 0,
          std::to_string(entries) + " entries over l = " + std::to_string(r.transfer->lo) + ".." + std::to_string(r.transfer->hi)};
}

Outcome criterion_oracle_equivalence()
{
  const auto& r = default_run();
  if (!r.ladder || !r.bundle || !r.kernel || !r.thick) return {false, "pipeline incomplete"};
  const auto& lad = *r.ladder;
  std::vector<std::pair<std::string, GradedModule>> mods;
  for (int i = 1; i <= 2; ++i) mods.emplace_back("S/I_C" + std::to_string(i), lad.curves.quotient(i));
  for (int i = 1; i <= 2; ++i) mods.emplace_back("M" + std::to_string(i), lad.M(i));
  mods.emplace_back("Msum", r.bundle->Msum);
  mods.emplace_back("M", r.bundle->M);
  mods.emplace_back("F", r.thick->F);
  mods.emplace_back("E", r.kernel->E);
  std::uint64_t seed = 1;
  for (auto& [name, m] : mods) {
    auto why = oracle::compare_module(m, oracle::default_dmax(m), seed++);
    if (!why.empty()) return {false, name + ": " + why};
  }
  auto h = lad.curves.quotient(1).hilbert();
  bool values = h.hilbert_function(2) == 8 && h.hilbert_function(3) == 11;
  return {values, std::to_string(mods.size()) + " modules; h(2)=" + std::to_string(h.hilbert_function(2)) +
                      " h(3)=" + std::to_string(h.hilbert_function(3))};
}

// Compact reruns of the property suites, 100 cases each.
Outcome criterion_property_suites()
{
  std::mt19937_64 rng(42);
  int failures = 0;
  auto random_form = [&](const RingPtr& R, int d, int nterms) {
    auto monos = monomials_of_degree(R->nvars, d);
    std::vector<PolyTerm> terms;
    for (int i = 0; i < nterms; ++i)
      terms.push_back({monos[rng() % monos.size()], static_cast<std::uint32_t>(1 + rng() % (R->p() - 1))});
    return Poly(R, terms);
  };
  // Frobenius, S-pair reduction, normal form idempotence
  for (int trial = 0; trial < 100; ++trial) {
    std::uint32_t p = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5;
    auto R = p3_ring(p);
    auto a = random_form(R, 2, 3), b = random_form(R, 2, 3);
    if (!((a + b).pow(p) == a.pow(p) + b.pow(p))) ++failures;
    std::vector<Vec> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(Vec::from_poly(random_form(R, 1 + static_cast<int>(rng() % 3), 3), 0));
    auto gb = groebner_basis(GradedFreeModule(R, {0}), gens);
    if (!gb.spairs_reduce_to_zero()) ++failures;
    auto v = Vec::from_poly(random_form(R, 4, 5), 0);
    auto nf = gb.normal_form(v);
    if (!(gb.normal_form(nf) == nf)) ++failures;
  }
  // Hilbert additivity on 0 -> ker f -> F -> G -> coker f -> 0
  for (int trial = 0; trial < 100; ++trial) {
    auto R = p3_ring(trial % 2 ? 3 : 2);
    GradedFreeModule F(R, {2, 2, 3}), G(R, {0, 1});
    std::vector<Vec> im;
    for (int j = 0; j < 3; ++j) im.push_back(Vec::from_polys(R, {random_form(R, F.degrees[j], 2), random_form(R, F.degrees[j] - 1, 2)}));
    ModuleMap f(GradedModule::free(F), GradedModule::free(G), im, 0);
    auto K = kernel(f).source;
    auto C = cokernel(f).target;
    for (int d = 0; d <= 6; ++d)
      if (K.hilbert().hilbert_function(d) + GradedModule::free(G).hilbert().hilbert_function(d) !=
          GradedModule::free(F).hilbert().hilbert_function(d) + C.hilbert().hilbert_function(d))
        ++failures;
  }
  // Whitney and twist covariance
  for (int trial = 0; trial < 100; ++trial) {
    KClass a(4), b(4);
    for (int i = 0; i < 3; ++i) {
      a.add(static_cast<int>(rng() % 9) - 4, static_cast<long long>(rng() % 5) - 2);
      b.add(static_cast<int>(rng() % 9) - 4, static_cast<long long>(rng() % 5) - 2);
    }
    auto ca = chern_from_kclass(a), cb = chern_from_kclass(b), cab = chern_from_kclass(a + b);
    if (cab.c1 != ca.c1 + cb.c1 || cab.c2 != ca.c2 + ca.c1 * cb.c1 + cb.c2) ++failures;
    int t = static_cast<int>(rng() % 7) - 3;
    auto ct = chern_from_kclass(a.twist(t));
    long long r = a.rank();
    if (ct.c1 != ca.c1 + r * t || ct.c2 != ca.c2 + (r - 1) * t * ca.c1 + r * (r - 1) / 2 * t * t) ++failures;
  }
  // h^i(O(a)) on P^3 against the closed forms
  auto binom = [](long long n, long long k) {
    if (k < 0 || n < k) return 0LL;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  auto R = p3_ring(2);
  for (int trial = 0; trial < 100; ++trial) {
    int a = static_cast<int>(rng() % 13) - 6;
    SheafCohomology c(GradedModule::free(GradedFreeModule(R, {0})));
    for (int i = 0; i <= 3; ++i) {
      long long expect = i == 0 ? binom(a + 3, 3) : i == 3 ? binom(-a - 1, 3) : 0;
      if (c.h(i, a) != expect) ++failures;
    }
  }
  return {failures == 0, "600 cases, " + std::to_string(failures) + " failures"};
}

Outcome criterion_determinism()
{
  report::Options opt;
  auto a = report::build(run_pipeline(config(2, 1, 1, 1)), opt).dump(2);
  auto b = report::build(run_pipeline(config(2, 1, 1, 1)), opt).dump(2);
  return {a == b, std::to_string(a.size()) + " bytes"};
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"chern reproduction", criterion_chern_reproduction},
      {"closed-form agreement", criterion_closed_form_agreement},
      {"discriminant family", criterion_discriminant_family},
      {"claim suite", criterion_claim_suite},
      {"cohomology transfer", criterion_cohomology_transfer},
      {"oracle equivalence", criterion_oracle_equivalence},
      {"property suites", criterion_property_suites},
      {"determinism", criterion_determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::cout << "criterion " << i + 1 << " " << criteria[i].first << ": " << (o.passed ? "pass" : "FAIL") << " (" << o.note << ")"
              << std::endl;
  }
  return all ? 0 : 1;
}
