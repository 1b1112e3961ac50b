#include "dieudonne/harness.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "dieudonne/errors.hpp"
#include "dieudonne/minimal.hpp"
#include "dieudonne/random.hpp"

namespace dieudonne {

std::string ManinBoundReport::to_csv() const {
  std::ostringstream os;
  os << "h,polygon,samples,max_length_sub,max_annihilator,max_coindex\n";
  for (const auto& r : rows) {
    os << r.h << ",\"" << r.polygon << "\"," << r.samples << ',' << r.max_length_sub << ',' << r.max_annihilator
       << ',' << r.max_coindex << '\n';
  }
  return os.str();
}

ManinBoundReport manin_bound_harness(const HarnessOptions& options) {
  const int h = options.h;
  if (h < 1 || h > options.max_height) {
    throw ArgumentError("harness height must lie in [1, " + std::to_string(options.max_height) + "]");
  }
  if (options.samples < 1) throw ArgumentError("harness needs a positive sample count");
  if (options.depth < 0) throw ArgumentError("harness depth must be nonnegative");
  if (options.supersingular_only && h % 2 != 0) throw ArgumentError("supersingular lattices need even height");

  ManinBoundReport report;
  report.options = options;
  report.precision = default_precision(options.p, h);
  RingPtr ring = make_witt_ring(options.p, options.degree, report.precision);
  RingPtr ss_ring = make_witt_ring(options.p, options.supersingular_degree, report.precision);
  const NewtonPolygon supersingular{{{1, 1, h / 2}}};
  std::mt19937_64 rng(options.seed);

  std::map<std::string, ManinBoundRow> rows;
  const int total = 2 * options.samples;
  for (int i = 0; i < total; ++i) {
    NewtonPolygon poly = options.supersingular_only ? supersingular : random_polygon(h, rng);
    const RingPtr& R = poly == supersingular ? ss_ring : ring;
    DieudonneModule M = random_frame(random_submodule(standard_module(poly, R), options.depth, rng), rng);
    MinimalIsogenyData d = minimal_isogeny(M);
    EndoOrder E = endomorphism_ring(M);

    HarnessSample s;
    s.polygon = poly.to_string();
    s.length_sub = d.length_sub;
    s.length_over = d.length_over;
    s.annihilator = d.annihilator_exponent;
    s.coindex = E.coindex_exponent;
    s.dimension = E.dimension();
    const bool bound = s.coindex <= s.annihilator * s.dimension;

    ManinBoundRow& row = rows[s.polygon];
    row.h = h;
    row.polygon = s.polygon;
    ++row.samples;
    row.max_length_sub = std::max(row.max_length_sub, s.length_sub);
    row.max_annihilator = std::max(row.max_annihilator, s.annihilator);
    row.max_coindex = std::max(row.max_coindex, s.coindex);
    row.coindex_bound_holds = row.coindex_bound_holds && bound;
    report.coindex_bound_holds = report.coindex_bound_holds && bound;

    if (i < options.samples) {
      report.max_length_sub = std::max(report.max_length_sub, s.length_sub);
      report.max_annihilator = std::max(report.max_annihilator, s.annihilator);
      report.max_coindex = std::max(report.max_coindex, s.coindex);
    }
    report.max_length_sub_doubled = std::max(report.max_length_sub_doubled, s.length_sub);
    report.max_annihilator_doubled = std::max(report.max_annihilator_doubled, s.annihilator);
    report.max_coindex_doubled = std::max(report.max_coindex_doubled, s.coindex);
    report.samples.push_back(std::move(s));
  }
  for (auto& [key, row] : rows) report.rows.push_back(row);
  return report;
}

}  // namespace dieudonne
