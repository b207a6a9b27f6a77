// Command-line front end: construct / analyze / verify / report.
//
// Exit codes: 0 success, 2 usage or config error, 3 empty result,
// 4 internal invariant violation, 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "pf/checks.hpp"
#include "pf/lseries.hpp"
#include "pf/pipeline.hpp"

namespace {

struct CliOptions {
  pf::RunConfig config;
  std::string x_text = "1000000000";
  std::string small_ceiling;
  std::string symbol_ceiling;
  std::string z_ceiling;
  std::string mode = "direct";
  std::string manifest_path;
  std::string reports_path;
};

void resolve(CliOptions& cli) {
  cli.config.x = pf::parse_int(cli.x_text);
  if (!cli.small_ceiling.empty())
    cli.config.overrides.small_prime_ceiling = pf::parse_int(cli.small_ceiling);
  if (!cli.symbol_ceiling.empty())
    cli.config.overrides.symbol_prime_ceiling = pf::parse_int(cli.symbol_ceiling);
  if (!cli.z_ceiling.empty()) cli.config.overrides.z = pf::parse_int(cli.z_ceiling);
  cli.config.mode = pf::sieve_mode_from_string(cli.mode);
}

void add_run_flags(CLI::App* cmd, CliOptions& cli) {
  cmd->add_option("--l", cli.config.l, "field degree, an odd prime >= 3");
  cmd->add_option("--k", cli.config.k, "length of the consecutive run");
  cmd->add_option("--epsilon", cli.config.epsilon, "exponent in (0,1) for the ceilings");
  cmd->add_option("--x", cli.x_text, "search ceiling for Delta(m) = (mP)^l");
  cmd->add_option("--small-ceiling", cli.small_ceiling,
                  "override: zero-class primes up to this bound");
  cmd->add_option("--symbol-ceiling", cli.symbol_ceiling,
                  "override: symbol-range primes up to this bound");
  cmd->add_option("--z-ceiling", cli.z_ceiling, "override: staged-sieve bound z");
  cmd->add_option("--mode", cli.mode, "sieve mode: direct|staged");
  cmd->add_option("--proxy-cutoff", cli.config.proxy_cutoff,
                  "Euler proxy prime cutoff X (0: derive (log D)^epsilon)");
  cmd->add_option("--precision", cli.config.precision,
                  "decimal digits for unit log computations");
  cmd->add_option("--jobs", cli.config.jobs, "worker threads for field analyses");
  cmd->add_option("--q-max-bits", cli.config.q_max_bits, "bit-length cap for q");
  cmd->add_option("--budget", cli.config.factor_budget,
                  "factorization effort budget (operations)");
  cmd->add_option("--out", cli.config.out_dir, "output directory");
  cmd->add_option("--cache", cli.config.cache_path, "factorization cache CSV path");
  cmd->add_flag("--validate,!--no-validate", cli.config.validate_fields,
                "toggle Dedekind cross-validation of discriminants");
  cmd->configurable(true);
  cmd->fallthrough();
}

int cmd_construct(CliOptions& cli) {
  resolve(cli);
  pf::FactorCache cache;
  pf::FactorCache* cache_ptr = nullptr;
  if (!cli.config.cache_path.empty()) {
    cache.load(cli.config.cache_path);
    cache_ptr = &cache;
  }
  pf::RunManifest manifest = pf::run_construct(cli.config, cache_ptr);
  std::filesystem::create_directories(cli.config.out_dir);
  std::string path = cli.config.out_dir + "/manifest.json";
  pf::write_text_file(path, pf::manifest_to_json(manifest));
  if (cache_ptr) cache.save(cli.config.cache_path);
  std::cout << "admissible m: " << manifest.sieve.admissible.size() << " of "
            << (manifest.sieve.admissible.size() + manifest.sieve.rejected.size() +
                manifest.sieve.skipped.size())
            << " candidates; manifest: " << path << "\n";
  for (const auto& w : manifest.target.warnings) std::cout << "warning: " << w << "\n";
  return manifest.sieve.admissible.empty() ? 3 : 0;
}

int cmd_analyze(CliOptions& cli) {
  resolve(cli);
  if (cli.manifest_path.empty())
    cli.manifest_path = cli.config.out_dir + "/manifest.json";
  pf::RunManifest manifest =
      pf::manifest_from_json(pf::read_text_file(cli.manifest_path));
  // flags not given on the analyze command line fall back to the manifest's
  cli.config.l = manifest.config.l;
  cli.config.k = manifest.config.k;
  cli.config.epsilon = manifest.config.epsilon;
  cli.config.x = manifest.config.x;
  pf::FactorCache cache;
  pf::FactorCache* cache_ptr = nullptr;
  if (!cli.config.cache_path.empty()) {
    cache.load(cli.config.cache_path);
    cache_ptr = &cache;
  }
  pf::AnalyzeResult result = pf::run_analyze(manifest, cli.config, cache_ptr);
  std::filesystem::create_directories(cli.config.out_dir);
  std::string path = cli.config.out_dir + "/reports.json";
  pf::write_text_file(path, pf::analyze_to_json(result));
  if (cache_ptr) cache.save(cli.config.cache_path);
  std::cout << "field reports: " << result.reports.size() << ", failures: "
            << result.failures.size() << "; reports: " << path << "\n";
  for (const auto& f : result.failures)
    std::cout << "failure: m=" << f.m.get_str() << " j=" << f.j << ": " << f.error
              << "\n";
  return result.reports.empty() ? 3 : 0;
}

int cmd_verify(const std::string& suite) {
  std::vector<pf::CheckResult> results = pf::checks::run_suite(suite);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %-22s %6.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.seconds, r.detail.c_str());
    all = all && r.passed;
  }
  return all ? 0 : 1;
}

int cmd_report(CliOptions& cli) {
  resolve(cli);
  if (cli.reports_path.empty()) cli.reports_path = cli.config.out_dir + "/reports.json";
  pf::AnalyzeResult result =
      pf::analyze_from_json(pf::read_text_file(cli.reports_path));
  std::printf("%-14s %-3s %-10s %-12s %-12s %-12s %-12s\n", "m", "j", "lambda-sum",
              "hR-estimate", "h-estimate", "landau", "hypothesis1");
  for (const auto& r : result.reports) {
    std::string m = r.m.get_str();
    if (m.size() > 13) m = m.substr(0, 10) + "...";
    std::printf("%-14s %-3u %-10.4f %-12.5g %-12s %-12s %-12s\n", m.c_str(), r.j,
                r.proxy.sum, r.hr_estimate,
                r.h_estimate ? std::to_string(*r.h_estimate).c_str() : "-",
                r.landau_ratio ? std::to_string(*r.landau_ratio).c_str() : "-",
                r.hypothesis1_ratio ? std::to_string(*r.hypothesis1_ratio).c_str()
                                    : "-");
  }
  std::filesystem::create_directories(cli.config.out_dir);
  std::uint64_t cutoff = cli.config.proxy_cutoff ? cli.config.proxy_cutoff : 10000;
  for (std::size_t i = 0; i < result.reports.size(); ++i) {
    const auto& r = result.reports[i];
    std::string csv_path =
        cli.config.out_dir + "/lambda_field" + std::to_string(i) + ".csv";
    std::ofstream csv(csv_path, std::ios::trunc);
    pf::write_lambda_csv(csv, r.field.radicand, r.field.l, cutoff);
  }
  std::cout << "lambda-series CSVs written to " << cli.config.out_dir << "\n";
  return result.reports.empty() ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions cli;
  std::string suite = "all";

  CLI::App app{"consecutive pure fields Q(a^{1/l}) with large class-number proxies"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "",
                 "key=value file; subcommand options live in a [construct] or "
                 "[analyze] section");

  CLI::App* construct = app.add_subcommand(
      "construct", "derive params, build the congruence target, sieve admissible m");
  add_run_flags(construct, cli);

  CLI::App* analyze =
      app.add_subcommand("analyze", "per-field reports for a construct manifest");
  add_run_flags(analyze, cli);
  analyze->add_option("--manifest", cli.manifest_path, "manifest.json path");

  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("suite", suite, "suite name (see --list)");
  bool list_suites = false;
  verify->add_flag("--list", list_suites, "list suite names");

  CLI::App* report =
      app.add_subcommand("report", "render reports.json and export lambda CSVs");
  add_run_flags(report, cli);
  report->add_option("--reports", cli.reports_path, "reports.json path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (construct->parsed()) return cmd_construct(cli);
    if (analyze->parsed()) return cmd_analyze(cli);
    if (verify->parsed()) {
      if (list_suites) {
        for (const auto& n : pf::checks::suite_names()) std::cout << n << "\n";
        return 0;
      }
      return cmd_verify(suite);
    }
    if (report->parsed()) return cmd_report(cli);
  } catch (const pf::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const pf::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
