#ifndef BUNDLEKIT_PIPELINE_HPP
#define BUNDLEKIT_PIPELINE_HPP

#include <cctype>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "chern.hpp"
#include "thickening.hpp"

namespace bundlekit {

/// (M, phibar, psi) from the assembled bundle on pruned presentations, with
/// G the two line bundles of M_p. Needs d = 1 so that phibar has twist 1.
inline ExtensionInput extension_input(const AssembledBundle& b)
{
  if (b.params.d != 1) throw std::invalid_argument("the extension to P^4 needs d = 1");
  auto pm = prune(b.M);
  auto pg = prune(b.psi.source);
  if (pg.module.nrelations() != 0) throw std::logic_error("M_p is expected to be free");
  ExtensionInput in;
  in.M = pm.module;
  in.phi = compose(pm.to_pruned, compose(b.phibar, pm.from_pruned));
  in.psi = compose(pm.to_pruned, compose(b.psi, pg.from_pruned));
  return in;
}

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s)
{
  switch (s) {
  case Status::pass: return "pass";
  case Status::fail: return "fail";
  default: return "skipped";
  }
}

struct StageRecord {
  std::string name;
  Status status = Status::skipped;
  std::vector<Check> checks;
  std::string error;  // set when the stage stopped on an exception
  double seconds = 0;
};

struct ChernBlock {
  KClass M_class;  // on P^1
  KClass E_class;  // on P^2
  ChernData kclass;
  ChernData closed_form;
  std::optional<ChernData> hilbert;  // from the computed E
  bool routes_agree = false;
};

/// Both Chern routes that need no module computation, plus the
/// Hilbert-polynomial route when E is supplied. Needs d = 1.
inline ChernBlock chern_block(const ConstructionParams& pr, const GradedModule* E = nullptr)
{
  ChernBlock c;
  auto classes = kclass_of_construction(pr);
  c.M_class = classes.M_canonical;
  c.E_class = classes.E_on_plane;
  c.kclass = chern_from_kclass(classes.E_on_plane);
  c.closed_form = closed_form_chern(pr);
  if (E) c.hilbert = chern_from_hilbert_polynomial(E->hilbert());
  c.routes_agree = c.kclass == c.closed_form && (!c.hilbert || *c.hilbert == c.kclass);
  return c;
}

struct RunConfig {
  long long p = 2, k = 1, l = 1, d = 1;
  std::uint64_t seed = 1;
  std::set<int> claims;  // empty: all
  bool extension = true;  // thickening, E and the Chern block
  int threads = 1;
};

struct ModuleStats {
  int generators = 0;
  int relations = 0;
  std::vector<int> betti;
  int gb_size = 0;        // Groebner basis of the relations
  int gb_max_degree = 0;  // largest degree of a basis element
};

/// Everything computed by one run, stage by stage. Later stages are skipped
/// after a stage fails.
struct PipelineResult {
  RunConfig config;
  ConstructionParams params;
  std::vector<StageRecord> stages;
  std::optional<SerreLadder> ladder;
  std::optional<AssembledBundle> bundle;
  std::optional<NonsplitReport> nonsplit;
  std::optional<ThickenedModule> thick;
  std::optional<KernelBundle> kernel;
  std::optional<TransferReport> transfer;
  std::optional<ChernBlock> chern;
  std::map<std::string, ModuleStats> stats;

  bool all_passed() const
  {
    for (auto& s : stages)
      if (s.status == Status::fail) return false;
    return true;
  }
};

/// Claim number of a check id "claimN.xxx", 0 for other checks.
inline int claim_number(const std::string& id)
{
  if (id.rfind("claim", 0) != 0) return 0;
  std::size_t i = 5;
  int n = 0;
  while (i < id.size() && std::isdigit(static_cast<unsigned char>(id[i]))) n = n * 10 + (id[i++] - '0');
  return n;
}

namespace detail {

inline ModuleStats module_stats(const GradedModule& m)
{
  auto pruned = prune(m).module;
  ModuleStats s{pruned.ngens(), pruned.nrelations(), {}};
  s.betti = free_resolution(pruned, m.ring()->nvars + 1).betti();
  const auto& gb = pruned.relation_basis();
  s.gb_size = static_cast<int>(gb.size());
  for (auto& v : gb.elements())
    if (auto deg = v.homogeneous_degree(gb.ambient().degrees)) s.gb_max_degree = std::max(s.gb_max_degree, *deg);
  return s;
}

} // namespace detail

/// Runs validate -> curves -> ladder -> assemble -> nonsplit -> extension -> chern.
/// InvalidParams and OutOfRange propagate (configuration errors); every other
/// failure is recorded on its stage.
inline PipelineResult run_pipeline(const RunConfig& cfg)
{
  PipelineResult r;
  r.config = cfg;
  r.params = validate_params(cfg.p, cfg.k, cfg.l, cfg.d);
  const auto& pr = r.params;
  if (static_cast<long long>(pr.p) * pr.N > kMaxCurveDegree)
    throw OutOfRange("p*N = " + std::to_string(static_cast<long long>(pr.p) * pr.N) + " exceeds the supported degree range");

  int last_claim = cfg.claims.empty() ? 10 : *cfg.claims.rbegin();
  const bool want_extension = cfg.extension && cfg.claims.empty();
  bool stopped = false;
  std::optional<CurveFamily> curves;

  auto stage = [&](const std::string& name, bool wanted, auto&& body) {
    StageRecord s;
    s.name = name;
    if (!wanted || stopped) {
      r.stages.push_back(s);
      return;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      body(s.checks);
      s.status = all_passed(s.checks) ? Status::pass : Status::fail;
    } catch (const ClaimFailed& e) {
      s.checks.push_back(e.check);
      s.status = Status::fail;
      s.error = e.what();
      stopped = true;
    } catch (const std::exception& e) {
      s.status = Status::fail;
      s.error = e.what();
      stopped = true;
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.stages.push_back(std::move(s));
  };
  auto append = [](std::vector<Check>& to, const std::vector<Check>& from) { to.insert(to.end(), from.begin(), from.end()); };

  stage("curves", true, [&](std::vector<Check>& out) {
    curves = build_curves(pr);
    append(out, curves->checks);
  });
  stage("ladder", last_claim >= 2, [&](std::vector<Check>& out) {
    r.ladder = build_serre_ladder(*curves, LadderOptions{cfg.seed, 4096});
    append(out, verify_ladder(*r.ladder));
  });
  stage("assembly", last_claim >= 7, [&](std::vector<Check>& out) {
    r.bundle = assemble_bundle(*r.ladder, cfg.seed);
    append(out, r.bundle->checks);
  });
  stage("nonsplit", last_claim >= 10, [&](std::vector<Check>& out) {
    r.nonsplit = verify_nonsplit(*r.bundle, *r.ladder, cfg.threads);
    append(out, r.nonsplit->checks);
  });
  stage("extension", want_extension && pr.d == 1, [&](std::vector<Check>& out) {
    auto in = extension_input(*r.bundle);
    r.thick = thicken(in);
    append(out, r.thick->checks);
    auto sm = section_map(*r.thick, in);
    r.kernel = kernel_bundle(sm, cfg.seed);
    append(out, r.kernel->checks);
    r.transfer = cohomology_transfer(*r.kernel, *r.thick);
    append(out, r.transfer->checks);
    Check h = horrocks_check("extension.horrocks.E", "E", r.transfer->E_scan);
    out.push_back(h);
  });
  stage("chern", want_extension && pr.d == 1, [&](std::vector<Check>& out) {
    r.chern = chern_block(pr, r.kernel ? &r.kernel->E : nullptr);
    const auto& c = *r.chern;
    Check k{"chern.routes", "K-class, closed-form and Hilbert-polynomial Chern classes agree", c.routes_agree, {}};
    k.add("c1", c.kclass.c1).add("c2", c.kclass.c2).add("discriminant", c.kclass.discriminant());
    if (c.hilbert) k.add("hilbert c1", c.hilbert->c1).add("hilbert c2", c.hilbert->c2);
    out.push_back(k);
  });

  if (r.bundle) {
    r.stats["M"] = detail::module_stats(r.bundle->M);
    r.stats["M1"] = detail::module_stats(r.ladder->M(1));
  }
  if (r.kernel) r.stats["E"] = detail::module_stats(r.kernel->E);
  return r;
}

/// Plain-text presentation dump: the generator degrees, the relation
/// degrees, then one line per row with entries separated by " | ".
inline std::string dump_presentation(const GradedModule& m)
{
  const auto& a = m.presentation();
  std::string s = "# ring";
  for (auto& n : m.ring()->names) s += " " + n;
  s += " over F_" + std::to_string(m.ring()->p()) + "\n# generator degrees";
  for (int d : a.target.degrees) s += " " + std::to_string(d);
  s += "\n# relation degrees";
  for (int d : a.source.degrees) s += " " + std::to_string(d);
  s += "\n";
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.ncols(); ++j) {
      if (j) s += " | ";
      s += a.entry(i, j).to_string();
    }
    s += "\n";
  }
  return s;
}

} // namespace bundlekit

#endif // BUNDLEKIT_PIPELINE_HPP
