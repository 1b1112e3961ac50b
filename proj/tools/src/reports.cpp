#include "reports.hpp"

#include <sstream>

#include "dieudonne/errors.hpp"
#include "dieudonne/io.hpp"

namespace dieudonne::reports {

namespace {

std::string slope_label(int a, int b) { return std::to_string(b) + "/" + std::to_string(a + b); }

json run_fields(const std::string& command, const RingPtr& ring) {
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"p", ring->p()},
              {"base_degree", ring->degree()},
              {"precision", ring->precision()}};
}

}  // namespace

json lattice_json(const Lattice& L) {
  const PadicMatrix& H = L.hermite();
  const WittRing& R = *L.ring();
  json rows = json::array();
  for (int i = 0; i < H.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < H.cols(); ++j) row.push_back(element_digits(R, H.at(i, j), H.prec()));
    rows.push_back(row);
  }
  return json{{"shift", L.shift()}, {"pivots", L.pivots()}, {"hermite", rows}};
}

json classify_report(const DieudonneModule& M) {
  json out = run_fields("classify", M.ring());
  out["field_degree"] = M.ring()->degree();
  out["rank"] = M.rank();
  json head;
  const NewtonPolygon beta = newton_polygon(M);
  json poly = json::array();
  for (const auto& part : beta.parts) {
    poly.push_back({{"a", part.a}, {"b", part.b}, {"r", part.r}, {"slope", slope_label(part.a, part.b)}});
  }
  head["polygon"] = poly;
  head["polygon_string"] = beta.to_string();
  const IsotypicDecomposition dec = isotypic_decomposition(M);
  json iso = json::array();
  for (const auto& c : dec.components) {
    iso.push_back({{"slope", slope_label(c.slope.a, c.slope.b)},
                   {"a", c.slope.a},
                   {"b", c.slope.b},
                   {"multiplicity", c.multiplicity},
                   {"rank", c.rank}});
  }
  head["isotypic"] = iso;
  const MinimalityCertificate cert = is_minimal(M);
  head["minimal"] = cert.is_minimal;
  head["split"] = cert.split;
  json comps = json::array();
  for (const auto& c : cert.components) {
    comps.push_back({{"slope", slope_label(c.slope.a, c.slope.b)},
                     {"frobenius_condition", c.frobenius_condition},
                     {"pi0_condition", c.pi0_condition}});
  }
  head["components"] = comps;
  out["headline"] = head;
  return out;
}

json endo_report(const DieudonneModule& M, bool with_table) {
  json out = run_fields("endo", M.ring());
  const EndoOrder E = endomorphism_ring(M);
  out["field_degree"] = E.maximal.ring->degree();
  out["rank"] = M.rank();
  json head;
  head["structure"] = E.maximal.structure.to_string();
  json factors = json::array();
  for (const auto& f : E.maximal.structure.factors) {
    factors.push_back({{"r", f.r}, {"n", f.n}, {"b", f.b}, {"invariant", std::to_string(f.b) + "/" + std::to_string(f.n)}});
  }
  head["factors"] = factors;
  head["dimension"] = E.dimension();
  head["coindex_exponent"] = E.coindex_exponent;
  head["is_maximal"] = E.coindex_exponent == 0;
  head["annihilator_exponent"] = E.annihilator_exponent;
  out["headline"] = head;
  if (with_table) {
    json labels = json::array();
    for (const auto& l : E.maximal.labels) {
      labels.push_back({{"component", l.component}, {"i", l.i}, {"k", l.k}, {"t", l.t}, {"s", l.s}});
    }
    out["maximal_order_labels"] = labels;
    out["multiplication_table_mod_p"] = E.multiplication_table_mod_p();
  }
  return out;
}

json minimal_report(const DieudonneModule& M) {
  json out = run_fields("minimal", M.ring());
  out["field_degree"] = M.ring()->degree();
  out["rank"] = M.rank();
  const MinimalIsogenyData d = minimal_isogeny(M);
  json head;
  head["is_minimal"] = d.length_sub == 0;
  head["length_sub"] = d.length_sub;
  head["length_over"] = d.length_over;
  head["annihilator_exponent"] = d.annihilator_exponent;
  head["isogeny_degree_exponent"] = d.length_sub;
  head["sub"] = lattice_json(d.sub.lattice());
  head["over"] = lattice_json(d.over.lattice());
  try {
    const SkeletonRoute s = minimal_modules_by_skeleton(M);
    const RingEmbedding emb(M.ring(), s.ring);
    head["skeleton_route_agrees"] = s.sub == d.sub.base_change(emb) && s.over == d.over.base_change(emb);
    out["skeleton_field_degree"] = s.ring->degree();
  } catch (const ExtensionError& e) {
    // The cross-check needs a larger residue field than the cap allows.
    head["skeleton_route_agrees"] = nullptr;
    out["skeleton_route_note"] = e.what();
  }
  out["headline"] = head;
  return out;
}

json stratify_report(const StratumTable& t) {
  json out{{"schema_version", kSchemaVersion},
           {"command", "stratify"},
           {"p", t.p},
           {"k_max", t.k_max},
           {"field_degree", t.field_degree},
           {"precision", t.precision}};
  json head;
  json counts;
  for (int m = 0; m <= 6; ++m) counts["V" + std::to_string(m)] = t.counts[static_cast<size_t>(m)];
  head["counts"] = counts;
  head["points"] = t.rows.size();
  head["expected_v0"] = t.expected_v0;
  head["expected_v4"] = t.expected_v4;
  head["filtration_holds"] = t.filtration_holds;
  head["counts_hold"] = t.counts_hold;
  head["points_hold"] = t.points_hold;
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"a", r.a},
                    {"b", r.b_label()},
                    {"field_level", r.field_level},
                    {"c_p", r.profile.c_p},
                    {"shape_dimension", r.profile.shape.dimension},
                    {"shape_matches", r.profile.shape_matches}});
  }
  head["rows"] = rows;
  out["headline"] = head;
  return out;
}

json harness_report(const ManinBoundReport& r) {
  const HarnessOptions& o = r.options;
  json out{{"schema_version", kSchemaVersion},
           {"command", "harness"},
           {"p", o.p},
           {"h", o.h},
           {"samples", o.samples},
           {"seed", o.seed},
           {"depth", o.depth},
           {"supersingular_only", o.supersingular_only},
           {"field_degree", o.degree},
           {"supersingular_field_degree", o.supersingular_degree},
           {"precision", r.precision}};
  json head;
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"h", row.h},
                    {"polygon", row.polygon},
                    {"samples", row.samples},
                    {"max_length_sub", row.max_length_sub},
                    {"max_annihilator", row.max_annihilator},
                    {"max_coindex", row.max_coindex},
                    {"coindex_bound_holds", row.coindex_bound_holds}});
  }
  head["rows"] = rows;
  head["max_length_sub"] = {r.max_length_sub, r.max_length_sub_doubled};
  head["max_annihilator"] = {r.max_annihilator, r.max_annihilator_doubled};
  head["max_coindex"] = {r.max_coindex, r.max_coindex_doubled};
  head["stable"] = r.stable();
  head["coindex_bound_holds"] = r.coindex_bound_holds;
  out["headline"] = head;
  return out;
}

std::string classify_csv(const json& report) {
  std::ostringstream os;
  os << "slope_a,slope_b,multiplicity,rank,frobenius_condition,pi0_condition,minimal\n";
  const json& head = report.at("headline");
  const json& iso = head.at("isotypic");
  const json& comps = head.at("components");
  for (size_t i = 0; i < iso.size(); ++i) {
    os << iso[i].at("a").get<int>() << ',' << iso[i].at("b").get<int>() << ',' << iso[i].at("multiplicity").get<int>()
       << ',' << iso[i].at("rank").get<int>() << ',' << (i < comps.size() && comps[i].at("frobenius_condition").get<bool>())
       << ',' << (i < comps.size() && comps[i].at("pi0_condition").get<bool>()) << ',' << head.at("minimal").get<bool>()
       << '\n';
  }
  return os.str();
}

std::string endo_csv(const json& report) {
  const json& head = report.at("headline");
  std::ostringstream os;
  os << "structure,dimension,coindex_exponent,is_maximal,annihilator_exponent\n";
  os << '"' << head.at("structure").get<std::string>() << "\"," << head.at("dimension").get<int>() << ','
     << head.at("coindex_exponent").get<int>() << ',' << head.at("is_maximal").get<bool>() << ','
     << head.at("annihilator_exponent").get<int>() << '\n';
  return os.str();
}

std::string minimal_csv(const json& report) {
  const json& head = report.at("headline");
  std::ostringstream os;
  os << "is_minimal,length_sub,length_over,annihilator_exponent,skeleton_route_agrees\n";
  const json& agree = head.at("skeleton_route_agrees");
  os << head.at("is_minimal").get<bool>() << ',' << head.at("length_sub").get<int>() << ','
     << head.at("length_over").get<int>() << ',' << head.at("annihilator_exponent").get<int>() << ','
     << (agree.is_null() ? std::string("NA") : std::to_string(agree.get<bool>() ? 1 : 0)) << '\n';
  return os.str();
}

}  // namespace dieudonne::reports
