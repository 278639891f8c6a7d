// bundlekit: runs the construction and prints a verification report.
// Exit codes: 0 all checks pass, 1 a check failed, 2 configuration or I/O error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

namespace {

using bundlekit::report::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int threads_from_env()
{
  const char* v = std::getenv("BUNDLEKIT_THREADS");
  if (!v || !*v) return 1;
  try {
    std::size_t pos = 0;
    int n = std::stoi(v, &pos);
    if (pos != std::string(v).size() || n < 1) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ConfigError(std::string("BUNDLEKIT_THREADS must be a positive integer, got '") + v + "'");
  }
}

std::pair<int, int> parse_window(const std::string& s)
{
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ConfigError("window must look like a..b, got '" + s + "'");
  int a = std::stoi(m[1]), b = std::stoi(m[2]);
  if (a > b) throw ConfigError("window " + s + " is empty");
  return {a, b};
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
  f << content;
  if (!f) throw ConfigError("write failed: " + path.string());
}

void emit(const json& j, const std::string& format, const std::string& output)
{
  std::string body = format == "text" ? bundlekit::report::text(j) : j.dump(2) + "\n";
  if (output.empty() || output == "-") std::cout << body;
  else write_file(output, body);
}

void dump_modules(const bundlekit::PipelineResult& r, const std::string& dir)
{
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create " + dir + ": " + ec.message());
  std::filesystem::path d(dir);
  if (r.ladder) write_file(d / "M1.txt", bundlekit::dump_presentation(r.ladder->M(1)));
  if (r.bundle) write_file(d / "M.txt", bundlekit::dump_presentation(r.bundle->M));
  if (r.kernel) write_file(d / "E.txt", bundlekit::dump_presentation(r.kernel->E));
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Rank-2 bundles on P^4 in characteristic p: construction and verification"};
  app.set_config("--config", "", "TOML-style key = value file; flags override it");
  app.require_subcommand(1);

  bundlekit::RunConfig cfg;
  std::string format = "json", output, dump_dir;
  bool timings = false;
  app.add_option("-p", cfg.p, "characteristic (prime)")->capture_default_str();
  app.add_option("-k", cfg.k, "exponent k")->capture_default_str();
  app.add_option("-l", cfg.l, "exponent l")->capture_default_str();
  app.add_option("-d", cfg.d, "twist d")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for random point sampling")->capture_default_str();
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("-o,--output", output, "write the report here instead of stdout");
  app.add_flag("--timings", timings, "include wall times (the report is then not reproducible)");
  app.add_option("--dump-dir", dump_dir, "write plain-text presentations of M1, M and E here");

  auto* construct = app.add_subcommand("construct", "run the full pipeline")->fallthrough();
  auto* verify = app.add_subcommand("verify", "check a subset of claims 1-10")->fallthrough();
  std::vector<int> claims;
  verify->add_option("--claims", claims, "claim numbers, comma separated")->delimiter(',')->required()->check(CLI::Range(1, 10));
  auto* chern = app.add_subcommand("chern", "Chern classes of E by the closed forms and the K-class route")->fallthrough();
  bool with_hilbert = false;
  chern->add_flag("--hilbert", with_hilbert, "also build E and read c1, c2 off its Hilbert polynomial");
  auto* scan = app.add_subcommand("scan", "discriminant of the family k = 1, l = (p-1)s, d = 1")->fallthrough();
  long long scan_p = 2;
  int s_min = 1, s_max = 5;
  scan->add_option("--p", scan_p, "characteristic")->capture_default_str();
  scan->add_option("--s-min", s_min, "first s")->capture_default_str();
  scan->add_option("--s-max", s_max, "last s")->capture_default_str();
  auto* cohomology = app.add_subcommand("cohomology", "sheaf cohomology table of M1, M or E")->fallthrough();
  std::string module = "M", window;
  cohomology->add_option("--module", module, "module")->check(CLI::IsMember({"M", "M1", "E"}))->capture_default_str();
  cohomology->add_option("--window", window, "twists a..b (default: the certified window)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.threads = threads_from_env();
    bundlekit::report::Options opt;
    opt.timings = timings;
    json j;

    if (*construct || *verify) {
      opt.command = *construct ? "construct" : "verify";
      if (*verify) cfg.claims = std::set<int>(claims.begin(), claims.end());
      auto r = bundlekit::run_pipeline(cfg);
      dump_modules(r, dump_dir);
      j = bundlekit::report::build(r, opt);
    } else if (*chern) {
      auto pr = bundlekit::validate_params(cfg.p, cfg.k, cfg.l, cfg.d);
      if (pr.d != 1) throw ConfigError("the chern subcommand needs d = 1");
      if (with_hilbert) {
        auto r = bundlekit::run_pipeline(cfg);
        dump_modules(r, dump_dir);
        if (!r.chern) {
          opt.command = "chern";
          j = bundlekit::report::build(r, opt);
        } else {
          j = bundlekit::report::build_chern(pr, *r.chern, cfg.seed);
        }
      } else {
        j = bundlekit::report::build_chern(pr, bundlekit::chern_block(pr), cfg.seed);
      }
    } else if (*scan) {
      if (scan_p < 2 || scan_p > 1000000) throw ConfigError("--p out of range");
      j = bundlekit::report::build_scan(bundlekit::discriminant_scan(static_cast<std::uint32_t>(scan_p), s_min, s_max));
    } else {
      opt.command = "cohomology";
      if (module == "E" && cfg.d != 1) throw ConfigError("E is only built for d = 1");
      std::optional<std::pair<int, int>> requested;
      if (!window.empty()) requested = parse_window(window);
      auto r = bundlekit::run_pipeline(cfg);
      dump_modules(r, dump_dir);
      const bundlekit::GradedModule* m = nullptr;
      if (module == "M1" && r.ladder) m = &r.ladder->M(1);
      if (module == "M" && r.bundle) m = &r.bundle->M;
      if (module == "E" && r.kernel) m = &r.kernel->E;
      if (!m) {
        j = bundlekit::report::build(r, opt);
      } else {
        bundlekit::SheafCohomology c(*m);
        bundlekit::HorrocksScan s;
        std::tie(s.lo, s.hi) = requested ? *requested : c.window();
        const int n = c.dimension_of_space();
        s.table.assign(n + 1, {});
        for (int i = 0; i <= n; ++i)
          for (int l = s.lo; l <= s.hi; ++l) {
            s.table[i].push_back(c.h(i, l));
            if (i > 0 && i < n && s.table[i].back() != 0 && !s.witness) s.witness = {i, l};
          }
        j["schema_version"] = bundlekit::report::kSchemaVersion;
        j["command"] = "cohomology";
        j["params"] = bundlekit::report::params_json(r.params);
        j["seed"] = cfg.seed;
        j["status"] = r.all_passed() ? "pass" : "fail";
        j["module"] = module;
        j["cohomology"] = json{{module, bundlekit::report::to_json(s)}};
      }
    }
    emit(j, format, output);
    return j["status"] == "pass" ? 0 : 1;
  } catch (const bundlekit::InvalidParams& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const bundlekit::OutOfRange& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
