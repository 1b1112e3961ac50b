#include "dieudonne/conway.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

using Table = std::map<std::pair<int, int>, std::vector<int>>;

void load_override(const char* path, Table& table) {
  std::ifstream in(path);
  if (!in) throw ConwayError(std::string("cannot open Conway table override '") + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    int p = 0, m = 0;
    if (!(is >> p)) continue;
    if (!(is >> m) || m < 1) {
      throw ConwayError("Conway table override line " + std::to_string(lineno) + ": bad degree");
    }
    std::vector<int> coeffs;
    int c = 0;
    while (is >> c) coeffs.push_back(c);
    if (static_cast<int>(coeffs.size()) != m + 1 || coeffs.back() != 1) {
      throw ConwayError("Conway table override line " + std::to_string(lineno) +
                        ": expected m + 1 coefficients ending in 1");
    }
    table[{p, m}] = std::move(coeffs);
  }
}

const Table& table() {
  static const Table t = [] {
    Table out;
    for (const auto& e : detail::builtin_conway_table()) out[{e.p, e.m}] = e.coeffs;
    if (const char* path = std::getenv("DIEUDONNE_CONWAY_TABLE"); path != nullptr && *path != '\0') {
      load_override(path, out);
    }
    return out;
  }();
  return t;
}

}  // namespace

bool has_conway_polynomial(int p, int m) { return table().count({p, m}) != 0; }

const std::vector<int>& conway_polynomial(int p, int m) {
  auto it = table().find({p, m});
  if (it == table().end()) {
    throw ConwayError("no Conway polynomial for p = " + std::to_string(p) + ", m = " + std::to_string(m));
  }
  return it->second;
}

}  // namespace dieudonne
