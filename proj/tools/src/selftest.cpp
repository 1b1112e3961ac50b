#include "selftest.hpp"

#include <functional>
#include <random>

#include "dieudonne/errors.hpp"
#include "dieudonne/io.hpp"
#include "dieudonne/oracle.hpp"
#include "dieudonne/random.hpp"
#include "reports.hpp"

namespace dieudonne::selftest {

namespace {

using Case = std::function<std::string(std::mt19937_64&)>;

SuiteResult run_suite(const Options& options, const std::string& name, int cases, const Case& body) {
  SuiteResult r;
  r.name = name;
  // FNV-1a keeps the per-suite streams identical across standard libraries.
  std::uint64_t salt = 1469598103934665603ull;
  for (unsigned char ch : name) salt = (salt ^ ch) * 1099511628211ull;
  for (int i = 0; i < cases; ++i) {
    std::mt19937_64 rng(options.seed * 1000003u + salt + static_cast<std::uint64_t>(i));
    std::string failure;
    bool precision = false;
    try {
      failure = body(rng);
    } catch (const PrecisionError& e) {
      failure = std::string("precision error: ") + e.what();
      precision = true;
    } catch (const Error& e) {
      failure = std::string("error: ") + e.what();
    }
    ++r.cases;
    if (failure.empty()) {
      ++r.passed;
      continue;
    }
    ++r.failed;
    if (precision) ++r.precision_errors;
    if (r.failures.size() < 3) r.failures.push_back("case " + std::to_string(i) + ": " + failure);
  }
  return r;
}

struct Shape {
  NewtonPolygon polygon;
  int degree;
};

const std::vector<Shape>& shapes() {
  static const std::vector<Shape> all = {
      {NewtonPolygon{{{1, 1, 2}}}, 4},
      {NewtonPolygon{{{1, 1, 1}}}, 2},
      {NewtonPolygon{{{2, 1, 1}}}, 2},
      {NewtonPolygon{{{1, 0, 1}, {1, 1, 1}}}, 2},
      {NewtonPolygon{{{1, 0, 1}, {1, 1, 1}, {0, 1, 1}}}, 2},
      {NewtonPolygon{{{1, 0, 1}, {2, 1, 1}}}, 2},
  };
  return all;
}

int precision_for(const Options& o, int p) { return o.precision > 0 ? o.precision : default_precision(p, 4); }

DieudonneModule sample_module(const Options& o, std::mt19937_64& rng, int extra_precision = 0) {
  const int p = std::bernoulli_distribution(0.5)(rng) ? 2 : 3;
  const Shape& s = shapes()[std::uniform_int_distribution<size_t>(0, shapes().size() - 1)(rng)];
  RingPtr ring = make_witt_ring(p, s.degree, precision_for(o, p) + extra_precision);
  return random_frame(random_submodule(standard_module(s.polygon, ring), 2, rng), rng);
}

std::string check(bool ok, const std::string& what) { return ok ? std::string() : what; }

std::string snf_case(const Options& o, std::mt19937_64& rng) {
  const int p = std::bernoulli_distribution(0.5)(rng) ? 2 : 3;
  const int m = std::uniform_int_distribution<int>(1, 2)(rng);
  RingPtr ring = make_witt_ring(p, m, o.precision > 0 ? o.precision : 24);
  const int rows = 4, cols = std::uniform_int_distribution<int>(2, 4)(rng);
  PadicMatrix A = random_integral_matrix(ring, rows, cols, rng);
  // Push some columns into p-power multiples so that nontrivial divisors occur.
  PadicMatrix D(ring, cols, cols);
  for (int j = 0; j < cols; ++j) D.at(j, j) = ring->mul_pow(ring->one(), std::uniform_int_distribution<int>(0, 3)(rng));
  A = A * D;
  SmithForm S = smith_normal_form(A);
  PadicMatrix diag = S.U * A * S.V;
  PadicMatrix expect(ring, rows, cols);
  for (int i = 0; i < S.rank; ++i) expect.at(i, i) = ring->mul_pow(ring->one(), S.exponents[static_cast<size_t>(i)]);
  expect.normalize();
  if (!diag.equals(expect)) return "U A V is not the diagonal of elementary divisors";
  if (!S.U.inverse().is_integral() || !S.V.inverse().is_integral()) return "transforms are not unimodular";
  if (S.rank != std::min(rows, cols)) return "random matrix lost rank";
  return {};
}

std::string duality_case(const Options& o, std::mt19937_64& rng) {
  const int p = std::bernoulli_distribution(0.5)(rng) ? 2 : 3;
  RingPtr ring = make_witt_ring(p, 2, o.precision > 0 ? o.precision : 24);
  auto random_lattice = [&]() {
    PadicMatrix G = random_integral_matrix(ring, 3, 3, rng);
    PadicMatrix D(ring, 3, 3);
    for (int j = 0; j < 3; ++j) D.at(j, j) = ring->mul_pow(ring->one(), std::uniform_int_distribution<int>(0, 3)(rng));
    return Lattice::from_generators(PadicMatrix::hcat(G * D, PadicMatrix::identity(ring, 3).scaled(5)));
  };
  Lattice L1 = random_lattice(), L2 = random_lattice();
  if (!(L1.dual().dual() == L1)) return "double dual differs";
  if (L1.dual().length() != -L1.length()) return "dual length is not the negative length";
  if (!((L1 + L2).dual() == L1.dual().intersect(L2.dual()))) return "dual of a sum is not the intersection of duals";
  return {};
}

std::string io_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule M = sample_module(o, rng);
  const std::string text = save_module(M);
  DieudonneModule back = load_module(text);
  if (!(back == M)) return "load(save(M)) differs from M";
  if (save_module(back) != text) return "second save is not byte-identical";
  return {};
}

std::string minimal_duality_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule M = sample_module(o, rng);
  DieudonneModule over = minimal_overmodule(M);
  DieudonneModule sub = minimal_submodule_fixpoint(M);
  if (!(dual_module(over).lattice() == minimal_submodule_fixpoint(dual_module(M)).lattice())) {
    return "dual of the overmodule is not the submodule of the dual";
  }
  if (!(sub == minimal_submodule(M))) return "fixpoint and dual routes disagree on the submodule";
  if (!over.lattice().contains(M.lattice()) || !M.lattice().contains(sub.lattice())) return "sandwich fails";
  return {};
}

std::string skeleton_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule M = sample_module(o, rng);
  SkeletonRoute s = minimal_modules_by_skeleton(M);
  RingEmbedding emb(M.ring(), s.ring);
  if (!(s.sub == minimal_submodule_fixpoint(M).base_change(emb))) return "skeleton submodule differs";
  if (!(s.over == minimal_overmodule(M).base_change(emb))) return "skeleton overmodule differs";
  return {};
}

std::string exhaustive_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule M = sample_module(o, rng);
  MinimalIsogenyData d = minimal_isogeny(M);
  ExhaustiveMinimal ex = exhaustive_minimal_modules(M, 2);
  if (!ex.sub_dominates || !ex.over_dominates) return "minimal candidates are not nested";
  if (d.length_sub <= 2 ? !(ex.sub && *ex.sub == d.sub.lattice()) : ex.sub.has_value()) {
    return "exhaustive submodule differs";
  }
  if (d.length_over <= 2 ? !(ex.over && *ex.over == d.over.lattice()) : ex.over.has_value()) {
    return "exhaustive overmodule differs";
  }
  return {};
}

std::string kernel_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule M = sample_module(o, rng);
  EndoOrder E = endomorphism_ring(M);
  PadicMatrix oracle = endomorphisms_by_kernel(M, E.maximal.ring);
  PadicMatrix ours = vectorized_on_module(E, M);
  if (oracle.cols() != ours.cols()) return "ranks differ";
  PadicMatrix Y = left_inverse(oracle) * ours;
  if (!(oracle * Y).equals(ours)) return "order leaves the oracle span";
  if (!Y.is_integral()) return "order is not inside the oracle lattice";
  if (Lattice::from_generators(Y).length() != 0) return "order has positive index in the oracle lattice";
  return check(E.coindex_exponent == 0 || !is_minimal(M).is_minimal, "minimal module with positive co-index");
}

std::string conjugation_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule M = sample_module(o, rng);
  EndoOrder E = endomorphism_ring(M);
  const int c = coindex(E);
  for (int k = 0; k < 4; ++k) {
    MaximalOrder other = random_conjugate_maximal_order(E, rng);
    if (coindex_against(E, other) != c) return "co-index changes under a conjugate maximal order";
  }
  return {};
}

std::string audit_case(const Options& o, std::mt19937_64& rng) {
  DieudonneModule high = sample_module(o, rng, 4);
  DieudonneModule low = load_module(save_module(high), {high.ring()->precision() - 4});
  if (reports::classify_report(low).at("headline") != reports::classify_report(high).at("headline")) {
    return "classification changes at N + 4";
  }
  if (reports::minimal_report(low).at("headline") != reports::minimal_report(high).at("headline")) {
    return "minimal modules change at N + 4";
  }
  if (reports::endo_report(low, false).at("headline") != reports::endo_report(high, false).at("headline")) {
    return "endomorphism ring changes at N + 4";
  }
  return {};
}

}  // namespace

std::vector<SuiteResult> run_all(const Options& o) {
  std::vector<SuiteResult> out;
  auto with = [&o](std::string (*f)(const Options&, std::mt19937_64&)) {
    return [&o, f](std::mt19937_64& rng) { return f(o, rng); };
  };
  out.push_back(run_suite(o, "snf_roundtrip", 16, with(snf_case)));
  out.push_back(run_suite(o, "lattice_duality", 16, with(duality_case)));
  out.push_back(run_suite(o, "io_roundtrip", 8, with(io_case)));
  out.push_back(run_suite(o, "minimal_duality", 10, with(minimal_duality_case)));
  out.push_back(run_suite(o, "fixpoint_vs_skeleton", 10, with(skeleton_case)));
  out.push_back(run_suite(o, "fixpoint_vs_exhaustive", 10, with(exhaustive_case)));
  out.push_back(run_suite(o, "endo_vs_kernel_oracle", 8, with(kernel_case)));
  out.push_back(run_suite(o, "coindex_conjugation", 6, with(conjugation_case)));
  out.push_back(run_suite(o, "precision_audit", 6, with(audit_case)));
  const std::vector<std::pair<int, int>> tables = {{2, 1}, {3, 1}, {2, 2}};
  out.push_back(run_suite(o, "stratification", static_cast<int>(tables.size()), [&o, &tables, i = 0](std::mt19937_64&) mutable {
    auto [p, k] = tables[static_cast<size_t>(i++)];
    StratumTable t = stratification(p, k, o.precision);
    return check(t.ok(), "stratification assertions fail for p = " + std::to_string(p) + ", k = " + std::to_string(k));
  }));
  return out;
}

nlohmann::json report(const Options& o, const std::vector<SuiteResult>& suites) {
  nlohmann::json js = nlohmann::json::array();
  int cases = 0, failed = 0;
  for (const auto& s : suites) {
    js.push_back({{"name", s.name},
                  {"cases", s.cases},
                  {"passed", s.passed},
                  {"failed", s.failed},
                  {"precision_errors", s.precision_errors},
                  {"failures", s.failures}});
    cases += s.cases;
    failed += s.failed;
  }
  nlohmann::json precision = o.precision > 0 ? nlohmann::json(o.precision) : nlohmann::json("default");
  return {{"schema_version", reports::kSchemaVersion},
          {"command", "selftest"},
          {"seed", o.seed},
          {"precision", precision},
          {"suites", js},
          {"total_cases", cases},
          {"total_failed", failed},
          {"ok", failed == 0}};
}

int exit_code(const std::vector<SuiteResult>& suites) {
  bool other = false, precision = false;
  for (const auto& s : suites) {
    other = other || s.failed > s.precision_errors;
    precision = precision || s.precision_errors > 0;
  }
  return other ? 4 : precision ? 3 : 0;
}

}  // namespace dieudonne::selftest
