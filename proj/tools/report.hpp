#ifndef BUNDLEKIT_TOOLS_REPORT_HPP
#define BUNDLEKIT_TOOLS_REPORT_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <bundlekit/pipeline.hpp>

namespace bundlekit::report {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct Options {
  std::string command = "construct";
  bool timings = false;
};

inline json to_json(const DetailValue& v)
{
  if (auto* b = std::get_if<bool>(&v)) return *b;
  if (auto* n = std::get_if<long long>(&v)) return *n;
  const auto& s = std::get<std::string>(v);
  // coefficient lists are stored as "[a, b, ...]"
  if (!s.empty() && s.front() == '[') {
    auto parsed = json::parse(s, nullptr, false);
    if (!parsed.is_discarded()) return parsed;
  }
  return s;
}

inline json to_json(const Check& c)
{
  json details = json::object();
  for (auto& d : c.details) details[d.key] = to_json(d.value);
  return json{{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"details", details}};
}

inline json to_json(const ChernData& c)
{
  json j{{"rank", c.rank}, {"c1", c.c1}, {"c2", c.c2}, {"discriminant", c.discriminant()}};
  if (!c.higher.empty()) j["higher"] = c.higher;
  return j;
}

inline json to_json(const HorrocksScan& s)
{
  json j{{"window", {s.lo, s.hi}}};
  j["witness"] = s.witness ? json{{"i", s.witness->first}, {"l", s.witness->second}} : json(nullptr);
  json table = json::object();
  for (std::size_t i = 0; i < s.table.size(); ++i) table["h" + std::to_string(i)] = s.table[i];
  j["table"] = table;
  return j;
}

inline json witness_of(const std::vector<Check>& checks)
{
  for (auto& c : checks)
    if (!c.passed) return to_json(c);
  return nullptr;
}

inline json params_json(const ConstructionParams& pr)
{
  return json{{"p", pr.p}, {"k", pr.k}, {"l", pr.l}, {"d", pr.d}, {"N", pr.N}};
}

namespace detail {

inline const char* stage_of_claim(int claim)
{
  if (claim == 1) return "curves";
  if (claim <= 6) return "ladder";
  if (claim <= 9) return "assembly";
  return "nonsplit";
}

inline const StageRecord* find_stage(const PipelineResult& r, const std::string& name)
{
  for (auto& s : r.stages)
    if (s.name == name) return &s;
  return nullptr;
}

} // namespace detail

/// The full report for a pipeline run. Wall times are only present with
/// opt.timings, so that the default output is reproducible byte for byte.
inline json build(const PipelineResult& r, const Options& opt)
{
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = opt.command;
  out["params"] = params_json(r.params);
  out["seed"] = r.config.seed;
  out["status"] = r.all_passed() ? "pass" : "fail";

  json claims = json::array();
  json invariants = json::array();
  std::map<int, std::vector<Check>> by_claim;
  for (auto& s : r.stages)
    for (auto& c : s.checks) {
      int n = claim_number(c.id);
      if (n > 0) by_claim[n].push_back(c);
      else if (c.id == "nilpotency" || c.id == "determinant") invariants.push_back(to_json(c));
    }
  for (int n = 1; n <= 10; ++n) {
    const bool requested = r.config.claims.empty() || r.config.claims.count(n);
    const StageRecord* stage = detail::find_stage(r, detail::stage_of_claim(n));
    json c{{"claim", n}};
    auto it = by_claim.find(n);
    if (!requested || it == by_claim.end()) {
      bool stage_failed = requested && stage && stage->status == Status::fail;
      c["status"] = stage_failed ? "fail" : "skipped";
      if (stage_failed) c["witness"] = json{{"error", stage->error}};
    } else {
      bool ok = all_passed(it->second);
      c["status"] = ok ? "pass" : "fail";
      json checks = json::array();
      for (auto& ch : it->second) checks.push_back(to_json(ch));
      c["checks"] = checks;
      if (!ok) c["witness"] = witness_of(it->second);
    }
    if (opt.timings && stage) c["seconds"] = stage->seconds;
    claims.push_back(c);
  }
  out["claims"] = claims;
  out["invariants"] = invariants;

  json lemmas = json::object();
  if (const StageRecord* ext = detail::find_stage(r, "extension"); ext && ext->status != Status::skipped) {
    json e{{"status", to_string(ext->status)}};
    json checks = json::array();
    for (auto& c : ext->checks) checks.push_back(to_json(c));
    e["checks"] = checks;
    if (ext->status == Status::fail) e["witness"] = ext->error.empty() ? witness_of(ext->checks) : json{{"error", ext->error}};
    if (r.thick) e["thickening_order"] = r.thick->order;
    if (r.kernel) e["rank"] = r.kernel->rank;
    lemmas["extension"] = e;
  }
  if (r.nonsplit) {
    json n = json::object();
    for (auto& c : r.nonsplit->checks) n[c.id] = c.passed ? "pass" : "fail";
    lemmas["nonsplit"] = n;
  }
  if (r.transfer) {
    json t{{"window", {r.transfer->lo, r.transfer->hi}}, {"columns", {"h^i(M(l))", "h^i(F_X(l))", "h^{i+1}(E(l))"}}};
    json rows = json::object();
    for (std::size_t i = 0; i < r.transfer->rows.size(); ++i) {
      json row = json::array();
      for (auto& v : r.transfer->rows[i]) row.push_back(v);
      rows["i" + std::to_string(i + 1)] = row;
    }
    t["rows"] = rows;
    t["status"] = all_passed(r.transfer->checks) ? "pass" : "fail";
    lemmas["transfer"] = t;
  }
  out["lemmas"] = lemmas;

  if (r.chern) {
    const auto& c = *r.chern;
    json ch{{"c1", c.kclass.c1}, {"c2", c.kclass.c2}, {"discriminant", c.kclass.discriminant()}};
    ch["M_class"] = c.M_class.to_string();
    ch["E_class"] = c.E_class.to_string();
    ch["kclass"] = to_json(c.kclass);
    ch["closed_form"] = to_json(c.closed_form);
    ch["hilbert_polynomial"] = c.hilbert ? to_json(*c.hilbert) : json(nullptr);
    ch["routes_agree"] = c.routes_agree;
    out["chern"] = ch;
  }

  json coh = json::object();
  if (r.nonsplit) {
    coh["M1"] = to_json(r.nonsplit->M1_scan);
    coh["M"] = to_json(r.nonsplit->M_scan);
  }
  if (r.transfer) coh["E"] = to_json(r.transfer->E_scan);
  out["cohomology"] = coh;

  json stages = json::array();
  for (auto& s : r.stages) {
    json j{{"name", s.name}, {"status", to_string(s.status)}};
    if (!s.error.empty()) j["error"] = s.error;
    if (opt.timings) j["seconds"] = s.seconds;
    stages.push_back(j);
  }
  out["stages"] = stages;

  json stats = json::object();
  for (auto& [name, s] : r.stats)
    stats[name] = json{{"generators", s.generators},
                       {"relations", s.relations},
                       {"betti", s.betti},
                       {"gb_size", s.gb_size},
                       {"gb_max_degree", s.gb_max_degree}};
  if (r.bundle) {
    const auto& cert = r.bundle->certificate;
    stats["M_certificate"] = json{{"method", cert.method}, {"minors_used", cert.minors_used}, {"minor_ideal_dim", cert.minor_ideal_dim},
                                  {"extension_degree", cert.extension_degree}};
  }
  if (r.kernel) {
    const auto& cert = r.kernel->certificate;
    json e{{"method", cert.method}, {"minors_used", cert.minors_used}, {"minor_ideal_dim", cert.minor_ideal_dim},
           {"extension_degree", cert.extension_degree}};
    if (!cert.ext_dims.empty()) e["ext_dims"] = cert.ext_dims;
    stats["E_certificate"] = e;
  }
  out["statistics"] = stats;
  return out;
}

/// Report for the scan subcommand.
inline json build_scan(const DiscriminantScan& s)
{
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "scan";
  out["p"] = s.p;
  json rows = json::array();
  for (auto& r : s.rows) rows.push_back(json{{"s", r.s}, {"params", params_json(r.params)}, {"chern", to_json(r.chern)}});
  out["rows"] = rows;
  auto rat = [](const std::optional<Rational>& q) { return q ? json(q->to_string()) : json(nullptr); };
  out["fit"] = json{{"alpha", rat(s.alpha)}, {"beta", rat(s.beta)}, {"gamma", rat(s.gamma)}};
  out["first_positive"] = s.first_positive ? json(*s.first_positive) : json(nullptr);
  out["status"] = "pass";
  return out;
}

/// Report for the chern subcommand (closed forms and the K-class route, plus
/// the Hilbert-polynomial route when a pipeline result is supplied).
inline json build_chern(const ConstructionParams& pr, const ChernBlock& c, std::uint64_t seed)
{
  json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "chern";
  out["params"] = params_json(pr);
  out["seed"] = seed;
  out["status"] = c.routes_agree ? "pass" : "fail";
  json ch{{"c1", c.kclass.c1}, {"c2", c.kclass.c2}, {"discriminant", c.kclass.discriminant()}};
  ch["M_class"] = c.M_class.to_string();
  ch["E_class"] = c.E_class.to_string();
  ch["kclass"] = to_json(c.kclass);
  ch["closed_form"] = to_json(c.closed_form);
  ch["hilbert_polynomial"] = c.hilbert ? to_json(*c.hilbert) : json(nullptr);
  ch["routes_agree"] = c.routes_agree;
  out["chern"] = ch;
  return out;
}

inline std::string table_text(const json& scan, const std::string& name)
{
  std::ostringstream o;
  auto lo = scan["window"][0].get<int>();
  auto hi = scan["window"][1].get<int>();
  o << "cohomology of " << name << " over l = " << lo << ".." << hi << "\n";
  o << "  l   ";
  for (int l = lo; l <= hi; ++l) o << ' ' << l;
  o << "\n";
  for (auto& [key, row] : scan["table"].items()) {
    o << "  " << key << "  ";
    for (auto& v : row) o << ' ' << v.get<long long>();
    o << "\n";
  }
  if (scan["witness"].is_null()) o << "  no intermediate cohomology\n";
  else o << "  witness: h^" << scan["witness"]["i"].get<int>() << "(" << scan["witness"]["l"].get<int>() << ") != 0\n";
  return o.str();
}

inline std::string chern_text(const json& ch)
{
  std::ostringstream o;
  o << "chern: c1 = " << ch["c1"].get<long long>() << ", c2 = " << ch["c2"].get<long long>()
    << ", discriminant = " << ch["discriminant"].get<long long>() << "\n";
  o << "  [M] = " << ch["M_class"].get<std::string>() << "\n";
  o << "  [E] = " << ch["E_class"].get<std::string>() << "\n";
  o << "  closed form c1 = " << ch["closed_form"]["c1"].get<long long>() << ", c2 = " << ch["closed_form"]["c2"].get<long long>() << "\n";
  if (ch["hilbert_polynomial"].is_null()) o << "  hilbert polynomial route: not run\n";
  else
    o << "  hilbert polynomial c1 = " << ch["hilbert_polynomial"]["c1"].get<long long>()
      << ", c2 = " << ch["hilbert_polynomial"]["c2"].get<long long>() << "\n";
  o << "  routes agree: " << (ch["routes_agree"].get<bool>() ? "yes" : "no") << "\n";
  return o.str();
}

/// Human-readable rendering of any report built above.
inline std::string text(const json& j)
{
  std::ostringstream o;
  o << "bundlekit " << j["command"].get<std::string>() << ": " << j["status"].get<std::string>() << "\n";
  if (j.contains("params")) {
    const auto& p = j["params"];
    o << "params p=" << p["p"] << " k=" << p["k"] << " l=" << p["l"] << " d=" << p["d"] << " N=" << p["N"] << "\n";
  }
  if (j.contains("claims")) {
    for (auto& c : j["claims"]) {
      o << "claim " << c["claim"].get<int>() << ": " << c["status"].get<std::string>();
      if (c.contains("seconds")) o << " (" << c["seconds"].get<double>() << " s)";
      o << "\n";
      if (c.contains("checks"))
        for (auto& ch : c["checks"]) o << "  [" << (ch["passed"].get<bool>() ? "ok" : "FAIL") << "] " << ch["id"].get<std::string>() << "\n";
      if (c.contains("witness")) o << "  witness: " << c["witness"].dump() << "\n";
    }
  }
  if (j.contains("invariants"))
    for (auto& c : j["invariants"]) o << "[" << (c["passed"].get<bool>() ? "ok" : "FAIL") << "] " << c["id"].get<std::string>() << "\n";
  if (j.contains("lemmas")) {
    const auto& l = j["lemmas"];
    if (l.contains("extension")) {
      o << "extension: " << l["extension"]["status"].get<std::string>() << "\n";
      for (auto& ch : l["extension"]["checks"]) o << "  [" << (ch["passed"].get<bool>() ? "ok" : "FAIL") << "] " << ch["id"].get<std::string>() << "\n";
    }
    if (l.contains("transfer")) {
      const auto& t = l["transfer"];
      o << "transfer (h^i(M(l)), h^i(F_X(l)), h^{i+1}(E(l))) over l = " << t["window"][0] << ".." << t["window"][1] << ": "
        << t["status"].get<std::string>() << "\n";
      for (auto& [key, row] : t["rows"].items()) {
        o << "  " << key << " ";
        for (auto& v : row) o << " " << v[0] << "/" << v[1] << "/" << v[2];
        o << "\n";
      }
    }
  }
  if (j.contains("chern")) o << chern_text(j["chern"]);
  if (j.contains("cohomology"))
    for (auto& [name, scan] : j["cohomology"].items()) o << table_text(scan, name);
  if (j.contains("rows") && j["command"] == "scan") {
    o << "discriminant scan for p = " << j["p"] << "\n";
    for (auto& r : j["rows"])
      o << "  s=" << r["s"] << " l=" << r["params"]["l"] << " c1=" << r["chern"]["c1"] << " c2=" << r["chern"]["c2"]
        << " disc=" << r["chern"]["discriminant"] << "\n";
    o << "  fit alpha=" << j["fit"]["alpha"] << " beta=" << j["fit"]["beta"] << " gamma=" << j["fit"]["gamma"] << "\n";
    if (!j["first_positive"].is_null()) o << "  first s with positive discriminant: " << j["first_positive"] << "\n";
  }
  if (j.contains("stages"))
    for (auto& s : j["stages"]) {
      o << "stage " << s["name"].get<std::string>() << ": " << s["status"].get<std::string>();
      if (s.contains("seconds")) o << " (" << s["seconds"].get<double>() << " s)";
      if (s.contains("error")) o << " error: " << s["error"].get<std::string>();
      o << "\n";
    }
  return o.str();
}

} // namespace bundlekit::report

#endif // BUNDLEKIT_TOOLS_REPORT_HPP
