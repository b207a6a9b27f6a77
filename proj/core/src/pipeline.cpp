#include "pf/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pf/symbols.hpp"

namespace pf {
namespace {

using Json = nlohmann::ordered_json;

Json int_json(const Int& v) { return v.get_str(); }
Int int_from(const Json& j) { return parse_int(j.get_ref<const std::string&>()); }

Json overrides_json(const CeilingOverrides& o) {
  Json j;
  j["small_prime_ceiling"] =
      o.small_prime_ceiling ? Json(o.small_prime_ceiling->get_str()) : Json(nullptr);
  j["symbol_prime_ceiling"] =
      o.symbol_prime_ceiling ? Json(o.symbol_prime_ceiling->get_str()) : Json(nullptr);
  j["z"] = o.z ? Json(o.z->get_str()) : Json(nullptr);
  return j;
}

CeilingOverrides overrides_from(const Json& j) {
  CeilingOverrides o;
  if (!j.at("small_prime_ceiling").is_null())
    o.small_prime_ceiling = int_from(j.at("small_prime_ceiling"));
  if (!j.at("symbol_prime_ceiling").is_null())
    o.symbol_prime_ceiling = int_from(j.at("symbol_prime_ceiling"));
  if (!j.at("z").is_null()) o.z = int_from(j.at("z"));
  return o;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["l"] = c.l;
  j["k"] = c.k;
  j["epsilon"] = c.epsilon;
  j["x"] = int_json(c.x);
  j["overrides"] = overrides_json(c.overrides);
  j["q_max_bits"] = c.q_max_bits;
  j["mode"] = to_string(c.mode);
  j["proxy_cutoff"] = c.proxy_cutoff;
  j["precision"] = c.precision;
  j["jobs"] = c.jobs;
  j["factor_budget"] = c.factor_budget;
  j["out_dir"] = c.out_dir;
  j["cache_path"] = c.cache_path;
  j["validate_fields"] = c.validate_fields;
  return j;
}

RunConfig config_from(const Json& j) {
  RunConfig c;
  c.l = j.at("l").get<unsigned>();
  c.k = j.at("k").get<unsigned>();
  c.epsilon = j.at("epsilon").get<double>();
  c.x = int_from(j.at("x"));
  c.overrides = overrides_from(j.at("overrides"));
  c.q_max_bits = j.at("q_max_bits").get<unsigned>();
  c.mode = sieve_mode_from_string(j.at("mode").get<std::string>());
  c.proxy_cutoff = j.at("proxy_cutoff").get<std::uint64_t>();
  c.precision = j.at("precision").get<unsigned>();
  c.jobs = j.at("jobs").get<unsigned>();
  c.factor_budget = j.at("factor_budget").get<std::uint64_t>();
  c.out_dir = j.at("out_dir").get<std::string>();
  c.cache_path = j.at("cache_path").get<std::string>();
  c.validate_fields = j.at("validate_fields").get<bool>();
  return c;
}

Json params_json(const ConstructionParams& p) {
  Json j;
  j["l"] = p.l;
  j["k"] = p.k;
  j["epsilon"] = p.epsilon;
  j["x"] = int_json(p.x);
  j["P"] = int_json(p.P);
  j["M"] = int_json(p.M);
  j["small_prime_ceiling"] = int_json(p.small_prime_ceiling);
  j["symbol_prime_ceiling"] = int_json(p.symbol_prime_ceiling);
  j["z"] = int_json(p.z);
  j["q"] = int_json(p.q);
  j["overrides"] = overrides_json(p.overrides);
  j["override_regime"] = p.override_regime;
  j["q_max_bits"] = p.q_max_bits;
  return j;
}

ConstructionParams params_from(const Json& j) {
  ConstructionParams p;
  p.l = j.at("l").get<unsigned>();
  p.k = j.at("k").get<unsigned>();
  p.epsilon = j.at("epsilon").get<double>();
  p.x = int_from(j.at("x"));
  p.P = int_from(j.at("P"));
  p.M = int_from(j.at("M"));
  p.small_prime_ceiling = int_from(j.at("small_prime_ceiling"));
  p.symbol_prime_ceiling = int_from(j.at("symbol_prime_ceiling"));
  p.z = int_from(j.at("z"));
  p.q = int_from(j.at("q"));
  p.overrides = overrides_from(j.at("overrides"));
  p.override_regime = j.at("override_regime").get<bool>();
  p.q_max_bits = j.at("q_max_bits").get<unsigned>();
  return p;
}

Json target_json(const CongruenceTarget& t) {
  Json j;
  j["m0"] = int_json(t.m0);
  j["q"] = int_json(t.q);
  Json per = Json::array();
  for (const auto& pp : t.per_prime) {
    Json e;
    e["p"] = pp.p;
    e["residue"] = pp.residue;
    e["provenance"] = to_string(pp.provenance);
    per.push_back(e);
  }
  j["per_prime"] = per;
  j["warnings"] = t.warnings;
  return j;
}

ResidueProvenance provenance_from(const std::string& s) {
  if (s == "zero-class") return ResidueProvenance::ZeroClass;
  if (s == "lemma-search") return ResidueProvenance::LemmaSearch;
  if (s == "fallback-zero") return ResidueProvenance::FallbackZero;
  throw InvalidArgument("unknown provenance \"" + s + "\"");
}

CongruenceTarget target_from(const Json& j) {
  CongruenceTarget t;
  t.m0 = int_from(j.at("m0"));
  t.q = int_from(j.at("q"));
  for (const auto& e : j.at("per_prime")) {
    PerPrimeResidue pp;
    pp.p = e.at("p").get<std::uint64_t>();
    pp.residue = e.at("residue").get<std::uint64_t>();
    pp.provenance = provenance_from(e.at("provenance").get<std::string>());
    t.per_prime.push_back(pp);
  }
  t.warnings = j.at("warnings").get<std::vector<std::string>>();
  return t;
}

Json sieve_json(const SieveResult& s) {
  Json j;
  j["mode"] = to_string(s.mode);
  j["staged_covers_power_free"] = s.staged_covers_power_free;
  Json adm = Json::array();
  for (const auto& a : s.admissible) {
    Json e;
    e["m"] = int_json(a.m);
    e["delta"] = int_json(a.delta);
    Json per = Json::array();
    for (const auto& pj : a.per_j) {
      Json pe;
      pe["j"] = pj.j;
      pe["a"] = int_json(pj.a);
      pe["free_part"] = int_json(pj.free_part);
      pe["stripped_power"] = int_json(pj.stripped_power);
      pe["discriminant"] = int_json(pj.discriminant);
      pe["wild"] = pj.wild;
      per.push_back(pe);
    }
    e["per_j"] = per;
    adm.push_back(e);
  }
  j["admissible"] = adm;
  Json rej = Json::array();
  for (const auto& r : s.rejected) {
    Json e;
    e["m"] = int_json(r.m);
    e["j"] = r.j;
    e["reason"] = r.reason;
    rej.push_back(e);
  }
  j["rejected"] = rej;
  Json skip = Json::array();
  for (const auto& sk : s.skipped) {
    Json e;
    e["m"] = int_json(sk.m);
    e["j"] = sk.j;
    e["reason"] = sk.reason;
    skip.push_back(e);
  }
  j["skipped"] = skip;
  return j;
}

SieveResult sieve_from(const Json& j) {
  SieveResult s;
  s.mode = sieve_mode_from_string(j.at("mode").get<std::string>());
  s.staged_covers_power_free = j.at("staged_covers_power_free").get<bool>();
  for (const auto& e : j.at("admissible")) {
    AdmissibleM a;
    a.m = int_from(e.at("m"));
    a.delta = int_from(e.at("delta"));
    for (const auto& pe : e.at("per_j")) {
      AdmissiblePerJ pj;
      pj.j = pe.at("j").get<unsigned>();
      pj.a = int_from(pe.at("a"));
      pj.free_part = int_from(pe.at("free_part"));
      pj.stripped_power = int_from(pe.at("stripped_power"));
      pj.discriminant = int_from(pe.at("discriminant"));
      pj.wild = pe.at("wild").get<bool>();
      a.per_j.push_back(pj);
    }
    s.admissible.push_back(a);
  }
  for (const auto& e : j.at("rejected"))
    s.rejected.push_back(
        {int_from(e.at("m")), e.at("j").get<unsigned>(), e.at("reason")});
  for (const auto& e : j.at("skipped"))
    s.skipped.push_back(
        {int_from(e.at("m")), e.at("j").get<unsigned>(), e.at("reason")});
  return s;
}

Json proxy_json(const EulerProxy& p) {
  Json j;
  j["a"] = int_json(p.a);
  j["l"] = p.l;
  j["cutoff"] = p.cutoff;
  j["sum"] = p.sum;
  Json t;
  t["split_complete"] = p.tallies.split_complete;
  t["one_linear"] = p.tallies.one_linear;
  t["no_linear"] = p.tallies.no_linear;
  t["skipped_ramified"] = p.tallies.skipped_ramified;
  j["tallies"] = t;
  return j;
}

Json optional_double_json(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::optional<double> optional_double_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json report_json(const FieldReport& r) {
  Json j;
  j["schema"] = r.schema;
  j["m"] = int_json(r.m);
  j["j"] = r.j;
  Json f;
  f["l"] = r.field.l;
  f["radicand"] = int_json(r.field.radicand);
  f["radical"] = int_json(r.field.radical);
  f["discriminant"] = int_json(r.field.discriminant);
  f["wild"] = r.field.wild;
  f["stripped_power"] = int_json(r.field.stripped_power);
  j["field"] = f;
  j["proxy"] = proxy_json(r.proxy);
  Json c;
  c["r1"] = r.constants.r1;
  c["r2"] = r.constants.r2;
  c["w"] = r.constants.w;
  j["constants"] = c;
  if (r.unit) {
    Json u;
    u["n"] = int_json(r.unit->n);
    u["r"] = int_json(r.unit->r);
    u["log_vector"] = r.unit->log_vector;
    u["regulator_estimate"] = optional_double_json(r.unit->regulator_estimate);
    j["unit"] = u;
  } else {
    j["unit"] = nullptr;
  }
  j["hr_estimate"] = r.hr_estimate;
  j["h_estimate"] = optional_double_json(r.h_estimate);
  j["landau_ratio"] = optional_double_json(r.landau_ratio);
  j["hypothesis1_ratio"] = optional_double_json(r.hypothesis1_ratio);
  j["size_ratio"] = optional_double_json(r.size_ratio);
  j["stender_log_ratio"] = optional_double_json(r.stender_log_ratio);
  Json sc = Json::array();
  for (const auto& s : r.symbol_checks) {
    Json e;
    e["p"] = s.p;
    e["j"] = s.j;
    e["radicand_condition"] = s.radicand_condition;
    e["discriminant_class"] = s.discriminant_class;
    sc.push_back(e);
  }
  j["symbol_checks"] = sc;
  j["notes"] = r.notes;
  return j;
}

FieldReport report_from(const Json& j) {
  FieldReport r;
  r.schema = j.at("schema").get<std::string>();
  r.m = int_from(j.at("m"));
  r.j = j.at("j").get<unsigned>();
  const Json& f = j.at("field");
  r.field.l = f.at("l").get<unsigned>();
  r.field.radicand = int_from(f.at("radicand"));
  r.field.radical = int_from(f.at("radical"));
  r.field.discriminant = int_from(f.at("discriminant"));
  r.field.wild = f.at("wild").get<bool>();
  r.field.stripped_power = int_from(f.at("stripped_power"));
  const Json& p = j.at("proxy");
  r.proxy.a = int_from(p.at("a"));
  r.proxy.l = p.at("l").get<unsigned>();
  r.proxy.cutoff = p.at("cutoff").get<std::uint64_t>();
  r.proxy.sum = p.at("sum").get<double>();
  r.proxy.tallies.split_complete = p.at("tallies").at("split_complete").get<std::uint64_t>();
  r.proxy.tallies.one_linear = p.at("tallies").at("one_linear").get<std::uint64_t>();
  r.proxy.tallies.no_linear = p.at("tallies").at("no_linear").get<std::uint64_t>();
  r.proxy.tallies.skipped_ramified =
      p.at("tallies").at("skipped_ramified").get<std::uint64_t>();
  r.constants.r1 = j.at("constants").at("r1").get<unsigned>();
  r.constants.r2 = j.at("constants").at("r2").get<unsigned>();
  r.constants.w = j.at("constants").at("w").get<unsigned>();
  if (!j.at("unit").is_null()) {
    FieldReport::UnitData u;
    u.n = int_from(j.at("unit").at("n"));
    u.r = int_from(j.at("unit").at("r"));
    u.log_vector = j.at("unit").at("log_vector").get<std::vector<double>>();
    u.regulator_estimate = optional_double_from(j.at("unit").at("regulator_estimate"));
    r.unit = u;
  }
  r.hr_estimate = j.at("hr_estimate").get<double>();
  r.h_estimate = optional_double_from(j.at("h_estimate"));
  r.landau_ratio = optional_double_from(j.at("landau_ratio"));
  r.hypothesis1_ratio = optional_double_from(j.at("hypothesis1_ratio"));
  r.size_ratio = optional_double_from(j.at("size_ratio"));
  r.stender_log_ratio = optional_double_from(j.at("stender_log_ratio"));
  for (const auto& e : j.at("symbol_checks")) {
    SymbolCheck s;
    s.p = e.at("p").get<std::uint64_t>();
    s.j = e.at("j").get<unsigned>();
    s.radicand_condition = e.at("radicand_condition").get<bool>();
    s.discriminant_class = e.at("discriminant_class").get<unsigned>();
    r.symbol_checks.push_back(s);
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

}  // namespace

void RunConfig::validate() const {
  if (l < 3 || l % 2 == 0 || !is_prime(Int(l)))
    throw InvalidArgument("config: l must be an odd prime >= 3");
  if (k < 1) throw InvalidArgument("config: k must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw InvalidArgument("config: epsilon must lie in (0, 1)");
  if (x < 1) throw InvalidArgument("config: x must be positive");
  if (precision == 0) throw InvalidArgument("config: precision must be positive");
  if (jobs == 0) throw InvalidArgument("config: jobs must be >= 1");
}

RunManifest run_construct(const RunConfig& config, FactorCache* cache) {
  config.validate();
  RunManifest manifest;
  manifest.config = config;
  manifest.params =
      derive_params(config.l, config.k, config.epsilon, config.x, config.overrides,
                    config.q_max_bits);
  manifest.target = build_congruence_target(manifest.params);
  SieveOptions opts;
  opts.factorize.budget_ops = config.factor_budget;
  opts.factorize.cache = cache;
  opts.jobs = config.jobs;
  opts.validate_fields = config.validate_fields;
  manifest.sieve =
      sieve_admissible(manifest.target, manifest.params, config.mode, opts);
  return manifest;
}

AnalyzeResult run_analyze(const RunManifest& manifest, const RunConfig& config,
                          FactorCache* cache) {
  config.validate();
  AnalyzeResult result;
  const ConstructionParams& params = manifest.params;
  std::vector<std::uint64_t> lemma_primes = manifest.target.lemma_primes();

  struct Task {
    const AdmissibleM* adm;
    const AdmissiblePerJ* pj;
  };
  std::vector<Task> tasks;
  for (const auto& adm : manifest.sieve.admissible)
    for (const auto& pj : adm.per_j) tasks.push_back({&adm, &pj});

  struct Slot {
    std::optional<FieldReport> report;
    std::optional<AnalyzeFailure> failure;
  };
  std::vector<Slot> slots(tasks.size());

  parallel_for(tasks.size(), config.jobs, [&](std::size_t idx) {
    const AdmissibleM& adm = *tasks[idx].adm;
    const AdmissiblePerJ& pj = *tasks[idx].pj;
    try {
      FieldReport report;
      report.m = adm.m;
      report.j = pj.j;

      FieldOptions fopts;
      fopts.validate = config.validate_fields;
      fopts.factorize.budget_ops = config.factor_budget;
      fopts.factorize.cache = cache;
      report.field = make_pure_field(pj.a, params.l, fopts);
      report.constants = residue_constants(params.l);

      std::uint64_t cutoff = config.proxy_cutoff;
      if (cutoff == 0) {
        // the derived default floor((log D)^epsilon); tiny at desk scale
        ScopedPrecision scope(40);
        Real t = boost::multiprecision::pow(log_int(report.field.discriminant),
                                            Real(params.epsilon));
        Int c = floor_to_int(t);
        cutoff = std::max<std::uint64_t>(2, mpz_get_ui(c.get_mpz_t()));
        report.notes.push_back("proxy cutoff derived as floor((log D)^epsilon)");
      }
      report.proxy = log_l1_proxy(report.field.radicand, params.l, cutoff);
      report.hr_estimate = hr_from_proxy(report.field, report.proxy);
      report.notes.push_back(
          "estimates valid up to the Euler-truncation factor and a possible "
          "unit-index factor; no integrality claims");

      // Stender unit exists when r = j divides l * n^{l-1}, n = mP
      Int n = adm.m * params.P;
      Int r(pj.j);
      Int divisor_bound = Int(params.l);
      {
        Int npow;
        mpz_pow_ui(npow.get_mpz_t(), n.get_mpz_t(), params.l - 1);
        divisor_bound *= npow;
      }
      if (mpz_divisible_p(divisor_bound.get_mpz_t(), r.get_mpz_t())) {
        StenderUnit unit = make_stender_unit(n, r, params.l);
        Rat norm = stender_unit_norm(n, r, params.l);
        if (norm != 1)
          throw InvariantViolation("Stender unit norm != 1 for n = " + n.get_str());
        UnitLogVector ulv = unit_log_vector(unit, config.precision);
        FieldReport::UnitData data;
        data.n = n;
        data.r = r;
        for (const Real& e : ulv.entries)
          data.log_vector.push_back(e.convert_to<double>());
        if (params.l == 3) {
          Real reg = regulator_rank1(unit, config.precision);
          double reg_d = reg.convert_to<double>();
          data.regulator_estimate = reg_d;
          report.h_estimate = h_estimate_l3(report.field, report.proxy, reg_d);
          BoundRatios ratios = bound_ratios(report.field, reg_d);
          report.landau_ratio = ratios.landau;
          report.hypothesis1_ratio = ratios.hypothesis1;
          report.size_ratio = size_ratio(report.field, *report.h_estimate);
          ScopedPrecision scope(40);
          report.stender_log_ratio =
              reg_d / log_int(report.field.discriminant).convert_to<double>();
        }
        report.unit = std::move(data);
      } else {
        report.notes.push_back("no Stender unit: j does not divide l*(mP)^{l-1}");
      }

      // re-verify the Lemma 3.1 conditions at every lemma-search prime
      for (std::uint64_t p : lemma_primes) {
        SymbolCheck check;
        check.p = p;
        check.j = pj.j;
        check.radicand_condition = is_lth_power_residue(pj.a, Int(p), params.l);
        if (!check.radicand_condition)
          throw InvariantViolation(
              "Delta(m)+j is not an l-th power residue mod lemma prime " +
              std::to_string(p));
        check.discriminant_class =
            residue_class_index(report.field.discriminant, p, params.l);
        report.symbol_checks.push_back(check);
      }
      slots[idx].report = std::move(report);
    } catch (const Error& e) {
      slots[idx].failure = AnalyzeFailure{adm.m, pj.j, e.what()};
    }
  });

  for (auto& slot : slots) {
    if (slot.report) result.reports.push_back(std::move(*slot.report));
    if (slot.failure) result.failures.push_back(std::move(*slot.failure));
  }
  return result;
}

std::string manifest_to_json(const RunManifest& manifest) {
  Json j;
  j["schema"] = manifest.schema;
  j["config"] = config_json(manifest.config);
  j["params"] = params_json(manifest.params);
  j["target"] = target_json(manifest.target);
  j["sieve"] = sieve_json(manifest.sieve);
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  Json j = Json::parse(text);
  RunManifest m;
  m.schema = j.at("schema").get<std::string>();
  if (m.schema != "purefields.manifest.v1")
    throw InvalidArgument("unsupported manifest schema: " + m.schema);
  m.config = config_from(j.at("config"));
  m.params = params_from(j.at("params"));
  m.target = target_from(j.at("target"));
  m.sieve = sieve_from(j.at("sieve"));
  return m;
}

std::string analyze_to_json(const AnalyzeResult& result) {
  Json j;
  j["schema"] = result.schema;
  Json reports = Json::array();
  for (const auto& r : result.reports) reports.push_back(report_json(r));
  j["reports"] = reports;
  Json failures = Json::array();
  for (const auto& f : result.failures) {
    Json e;
    e["m"] = int_json(f.m);
    e["j"] = f.j;
    e["error"] = f.error;
    failures.push_back(e);
  }
  j["failures"] = failures;
  return j.dump(2) + "\n";
}

AnalyzeResult analyze_from_json(const std::string& text) {
  Json j = Json::parse(text);
  AnalyzeResult r;
  r.schema = j.at("schema").get<std::string>();
  if (r.schema != "purefields.reports.v1")
    throw InvalidArgument("unsupported reports schema: " + r.schema);
  for (const auto& e : j.at("reports")) r.reports.push_back(report_from(e));
  for (const auto& e : j.at("failures"))
    r.failures.push_back(
        {int_from(e.at("m")), e.at("j").get<unsigned>(), e.at("error")});
  return r;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

}  // namespace pf
