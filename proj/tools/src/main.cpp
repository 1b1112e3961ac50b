#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "dieudonne/errors.hpp"
#include "dieudonne/io.hpp"
#include "reports.hpp"
#include "selftest.hpp"

namespace {

using namespace dieudonne;
using reports::json;

enum ExitCode { kOk = 0, kInputError = 2, kPrecisionError = 3, kPropertyFailure = 4 };

struct JobConfig {
  std::string command;
  std::string input_path;
  int p = 0;
  int k_max = 0;
  int precision = 0;
  std::string format = "json";
  std::uint64_t seed = 1;
  bool audit = true;
  bool table = true;
  // point
  int m = 0;
  int a = 1;
  int b_log = -1;
  // harness
  int h = 4;
  int samples = 100;
  int depth = 2;
  bool supersingular = false;
};

// Report stage reached when an error escapes, for the error document.
std::string g_stage = "setup";

void emit(const JobConfig& cfg, const json& report, const std::string& csv) {
  if (cfg.format == "csv") {
    std::cout << csv;
  } else {
    std::cout << report.dump(2) << '\n';
  }
}

DieudonneModule load(const JobConfig& cfg, int precision) {
  g_stage = "load";
  LoadOptions opt;
  opt.precision = precision;
  return load_module_file(cfg.input_path, opt);
}

// Runs a per-module report at the working precision and again at four more digits.
int module_command(const JobConfig& cfg, json (*make)(const DieudonneModule&), std::string (*csv)(const json&)) {
  DieudonneModule M = load(cfg, cfg.precision);
  g_stage = cfg.command;
  json report = make(M);
  int code = kOk;
  if (cfg.audit) {
    g_stage = "audit";
    const int audit_precision = M.ring()->precision() + 4;
    try {
      DieudonneModule high = load(cfg, audit_precision);
      g_stage = "audit";
      const bool agrees = make(high).at("headline") == report.at("headline");
      report["audit"] = {{"precision", audit_precision}, {"agrees", agrees}};
      if (!agrees) code = kPropertyFailure;
    } catch (const CapacityError& e) {
      report["audit"] = {{"precision", audit_precision}, {"skipped", e.what()}};
    }
  }
  emit(cfg, report, csv(report));
  return code;
}

json endo_with_table(const DieudonneModule& M) { return reports::endo_report(M, true); }
json endo_without_table(const DieudonneModule& M) { return reports::endo_report(M, false); }

int run_stratify(const JobConfig& cfg) {
  g_stage = "stratify";
  StratumTable t = stratification(cfg.p, cfg.k_max, cfg.precision);
  json report = reports::stratify_report(t);
  bool ok = t.ok();
  if (cfg.audit) {
    g_stage = "audit";
    const int audit_precision = t.precision + 4;
    try {
      StratumTable high = stratification(cfg.p, cfg.k_max, audit_precision);
      json other = reports::stratify_report(high);
      const bool agrees = other.at("headline") == report.at("headline");
      report["audit"] = {{"precision", audit_precision}, {"agrees", agrees}};
      ok = ok && agrees;
    } catch (const CapacityError& e) {
      report["audit"] = {{"precision", audit_precision}, {"skipped", e.what()}};
    }
  }
  emit(cfg, report, t.to_csv());
  return ok ? kOk : kPropertyFailure;
}

int run_selftest(const JobConfig& cfg) {
  g_stage = "selftest";
  selftest::Options opt;
  opt.seed = cfg.seed;
  opt.precision = cfg.precision;
  auto suites = selftest::run_all(opt);
  json report = selftest::report(opt, suites);
  std::string csv = "suite,cases,passed,failed,precision_errors\n";
  for (const auto& s : suites) {
    csv += s.name + "," + std::to_string(s.cases) + "," + std::to_string(s.passed) + "," + std::to_string(s.failed) +
           "," + std::to_string(s.precision_errors) + "\n";
  }
  emit(cfg, report, csv);
  for (const auto& s : suites) {
    for (const auto& f : s.failures) std::cerr << "selftest: " << s.name << " failed: " << f << '\n';
  }
  return selftest::exit_code(suites);
}

int run_point(const JobConfig& cfg) {
  g_stage = "point";
  const int N = cfg.precision > 0 ? cfg.precision : default_precision(cfg.p, 4);
  RingPtr ring = make_witt_ring(cfg.p, cfg.m, N);
  SuperspecialBase base = superspecial_base(ring);
  const WittRing& R = *ring;
  if (cfg.a != 0 && cfg.a != 1) throw ArgumentError("--a must be 0 or 1");
  const Elem a = cfg.a == 1 ? R.one() : R.zero();
  const Elem b = cfg.b_log < 0 ? R.zero() : R.pow(R.generator(), static_cast<u128>(cfg.b_log));
  FamilyPoint x = point_module(base, a, b);
  SaveOptions so;
  so.small_integers = true;
  std::cout << save_module(x.module, so) << '\n';
  return kOk;
}

int run_harness(const JobConfig& cfg) {
  g_stage = "harness";
  HarnessOptions opt;
  opt.p = cfg.p;
  opt.h = cfg.h;
  opt.samples = cfg.samples;
  opt.seed = cfg.seed;
  opt.depth = cfg.depth;
  opt.supersingular_only = cfg.supersingular;
  ManinBoundReport r = manin_bound_harness(opt);
  emit(cfg, reports::harness_report(r), r.to_csv());
  return r.stable() && r.coindex_bound_holds ? kOk : kPropertyFailure;
}

int dispatch(const JobConfig& cfg) {
  if (cfg.command == "classify") return module_command(cfg, reports::classify_report, reports::classify_csv);
  if (cfg.command == "endo") {
    return module_command(cfg, cfg.table ? endo_with_table : endo_without_table, reports::endo_csv);
  }
  if (cfg.command == "minimal") return module_command(cfg, reports::minimal_report, reports::minimal_csv);
  if (cfg.command == "stratify") return run_stratify(cfg);
  if (cfg.command == "selftest") return run_selftest(cfg);
  if (cfg.command == "point") return run_point(cfg);
  if (cfg.command == "harness") return run_harness(cfg);
  throw ArgumentError("unknown command");
}

int fail(const JobConfig& cfg, int code, const std::string& kind, const std::string& message) {
  std::cerr << "dieudonne: " << kind << " error in stage '" << g_stage << "': " << message << '\n';
  if (cfg.format != "csv") {
    json doc{{"schema_version", reports::kSchemaVersion},
             {"command", cfg.command},
             {"error", {{"kind", kind}, {"stage", g_stage}, {"message", message}}}};
    std::cout << doc.dump(2) << '\n';
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dieudonne modules over W(F_{p^m}): classification, minimal modules, endomorphism rings"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--precision", cfg.precision, "Absolute p-adic precision override")->check(CLI::Range(8, 1000));
  };
  auto add_file_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", cfg.input_path, "Module file (JSON)")->required();
    add_common(sub);
    sub->add_flag("--no-audit", [&cfg](std::int64_t) { cfg.audit = false; }, "Skip the recomputation at N + 4");
    return sub;
  };
  add_file_command("classify", "Newton polygon, isotypic ranks and minimality certificate");
  CLI::App* endo = add_file_command("endo", "Endomorphism ring: structure, co-index, multiplication table");
  endo->add_flag("--no-table", [&cfg](std::int64_t) { cfg.table = false; }, "Omit the multiplication table");
  add_file_command("minimal", "Minimal sub- and overmodules and the minimal isogeny");

  CLI::App* stratify = app.add_subcommand("stratify", "c_p over P^1(F_{p^{2k}}) for the supersingular family");
  stratify->add_option("--p", cfg.p, "Prime")->required();
  stratify->add_option("--k-max", cfg.k_max, "Field level bound k (P^1 over F_{p^{2k}})")->required();
  stratify->add_flag("--no-audit", [&cfg](std::int64_t) { cfg.audit = false; }, "Skip the recomputation at N + 4");
  add_common(stratify);

  CLI::App* self = app.add_subcommand("selftest", "Invariant and oracle suites");
  self->add_option("--seed", cfg.seed, "Seed for the randomized suites");
  add_common(self);

  CLI::App* point = app.add_subcommand("point", "Module of the family point [a : t^j] as a module file");
  point->add_option("--p", cfg.p, "Prime")->required();
  point->add_option("--m", cfg.m, "Residue degree (even)")->required();
  point->add_option("--a", cfg.a, "First coordinate, 0 or 1");
  point->add_option("--b-log", cfg.b_log, "Exponent j of b = t^j; negative for b = 0");
  point->add_option("--precision", cfg.precision, "Absolute precision")->check(CLI::Range(8, 1000));

  CLI::App* harness = app.add_subcommand("harness", "Minimal-isogeny and co-index maxima over random lattices");
  harness->add_option("--p", cfg.p, "Prime")->required();
  harness->add_option("--height", cfg.h, "Height");
  harness->add_option("--samples", cfg.samples, "Base sample count n (2n are drawn)");
  harness->add_option("--seed", cfg.seed, "Seed");
  harness->add_option("--depth", cfg.depth, "Walk length below the standard module");
  harness->add_flag("--supersingular", cfg.supersingular, "Only the polygon (1,1) x h/2");
  harness->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();

  try {
    return dispatch(cfg);
  } catch (const PrecisionError& e) {
    return fail(cfg, kPrecisionError, "precision", e.what());
  } catch (const ExtensionError& e) {
    return fail(cfg, kPrecisionError, "extension", e.what());
  } catch (const InternalError& e) {
    return fail(cfg, kPropertyFailure, "internal", e.what());
  } catch (const Error& e) {
    return fail(cfg, kInputError, "input", e.what());
  }
}
