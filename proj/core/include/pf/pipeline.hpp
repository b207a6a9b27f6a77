#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pf/classnum.hpp"
#include "pf/construction.hpp"
#include "pf/lseries.hpp"
#include "pf/purefield.hpp"

namespace pf {

// One self-describing configuration drives the whole pipeline; every
// default is echoed into the manifest so runs are reproducible.
struct RunConfig {
  unsigned l = 3;
  unsigned k = 1;
  double epsilon = 0.9;
  Int x = 1000000000;
  CeilingOverrides overrides;
  unsigned q_max_bits = 4096;
  SieveMode mode = SieveMode::Direct;
  std::uint64_t proxy_cutoff = 0;  // 0: derive floor((log D)^epsilon) per field
  unsigned precision = 30;         // decimal digits for unit logs
  unsigned jobs = 1;
  std::uint64_t factor_budget = 50'000'000;
  std::string out_dir = ".";
  std::string cache_path;          // empty: no on-disk factor cache
  bool validate_fields = true;

  void validate() const;  // throws InvalidArgument
};

struct RunManifest {
  std::string schema = "purefields.manifest.v1";
  RunConfig config;
  ConstructionParams params;
  CongruenceTarget target;
  SieveResult sieve;
};

// derive_params -> build_congruence_target -> sieve_admissible.
RunManifest run_construct(const RunConfig& config, FactorCache* cache = nullptr);

struct SymbolCheck {
  std::uint64_t p = 0;
  unsigned j = 0;
  // The Eq. 3.1 condition the congruence construction guarantees:
  // Delta(m)+j is an l-th power residue mod p. Asserted.
  bool radicand_condition = true;
  // Residue class of the discriminant D_j mod p (0 = residue). The lemma
  // statement names this form but the construction does not force it;
  // recorded, never asserted.
  unsigned discriminant_class = 0;
};

struct FieldReport {
  std::string schema = "purefields.report.v1";
  Int m;
  unsigned j = 0;
  PureField field;
  EulerProxy proxy;
  ResidueConstants constants;

  struct UnitData {
    Int n;
    Int r;
    std::vector<double> log_vector;
    std::optional<double> regulator_estimate;  // l = 3 only
  };
  std::optional<UnitData> unit;

  double hr_estimate = 0.0;
  std::optional<double> h_estimate;        // l = 3 with unit
  std::optional<double> landau_ratio;      // need regulator estimate
  std::optional<double> hypothesis1_ratio;
  std::optional<double> size_ratio;
  std::optional<double> stender_log_ratio;  // R_hat / log D
  std::vector<SymbolCheck> symbol_checks;
  // Estimates are valid up to the Euler-truncation factor and a possible
  // unit-index factor; never integrality claims.
  std::vector<std::string> notes;
};

struct AnalyzeFailure {
  Int m;
  unsigned j = 0;
  std::string error;
};

struct AnalyzeResult {
  std::string schema = "purefields.reports.v1";
  std::vector<FieldReport> reports;
  std::vector<AnalyzeFailure> failures;
};

// Per admissible m and j: field, proxy, unit data where r | l n^{l-1},
// class-number assembly, symbol re-verification. Failures are isolated
// per field and logged, never abort the batch.
AnalyzeResult run_analyze(const RunManifest& manifest, const RunConfig& config,
                          FactorCache* cache = nullptr);

// JSON (de)serialization; Int fields as decimal strings, key order fixed,
// so identical inputs give byte-identical bytes.
std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);
std::string analyze_to_json(const AnalyzeResult& result);
AnalyzeResult analyze_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace pf
