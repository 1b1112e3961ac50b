#include "dieudonne/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

using nlohmann::json;

int get_int(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

// An entry with its own shift: value p^{-shift} * integral.
struct RawEntry {
  Elem integral{};
  int shift = 0;
};

RawEntry parse_entry(const WittRing& R, const json& e, const std::string& where) {
  RawEntry out;
  if (e.is_number_integer()) {
    out.integral = R.from_int(e.get<std::int64_t>());
    return out;
  }
  if (e.is_array()) {
    if (static_cast<int>(e.size()) > R.degree()) throw FormatError(where + ": more coefficients than m");
    for (size_t i = 0; i < e.size(); ++i) {
      if (!e[i].is_number_integer()) throw FormatError(where + ": coefficients must be integers");
      Elem c = R.from_int(e[i].get<std::int64_t>());
      out.integral.c[i] = c.c[0];
    }
    return out;
  }
  if (e.is_object()) {
    if (e.contains("shift")) {
      if (!e.at("shift").is_number_integer()) throw FormatError(where + ": 'shift' must be an integer");
      out.shift = e.at("shift").get<int>();
    }
    if (e.contains("coefficients")) {
      out.integral = parse_entry(R, e.at("coefficients"), where).integral;
      return out;
    }
    if (!e.contains("digits") || !e.at("digits").is_array()) throw FormatError(where + ": missing 'digits'");
    std::vector<std::vector<int>> digits;
    for (const json& coeff : e.at("digits")) {
      if (!coeff.is_array()) throw FormatError(where + ": 'digits' must hold one list per coefficient");
      std::vector<int> d;
      for (const json& x : coeff) {
        if (!x.is_number_integer()) throw FormatError(where + ": digits must be integers");
        d.push_back(x.get<int>());
      }
      digits.push_back(std::move(d));
    }
    try {
      out.integral = element_from_digits(R, digits);
    } catch (const FormatError& err) {
      throw FormatError(where + ": " + err.what());
    }
    return out;
  }
  throw FormatError(where + ": entry must be an integer, a coefficient array or a digit object");
}

PadicMatrix parse_matrix(const RingPtr& ring, const json& doc, const char* key, int h, int prec) {
  const json& rows = doc.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != h) {
    throw FormatError(std::string("'") + key + "' must have h rows");
  }
  std::vector<RawEntry> raw;
  int shift = 0;
  for (int i = 0; i < h; ++i) {
    const json& row = rows[static_cast<size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != h) {
      throw FormatError(std::string("'") + key + "' row " + std::to_string(i) + " must have h entries");
    }
    for (int j = 0; j < h; ++j) {
      raw.push_back(parse_entry(*ring, row[static_cast<size_t>(j)],
                                std::string(key) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
      shift = std::max(shift, raw.back().shift);
    }
  }
  PadicMatrix M(ring, h, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      const RawEntry& r = raw[static_cast<size_t>(i * h + j)];
      M.at(i, j) = ring->mul_pow(r.integral, shift - r.shift);
    }
  }
  M.set_shift(shift);
  M.set_prec(std::min(prec, ring->precision()));
  M.normalize();
  return M;
}

// Centered lifts of the coefficients modulo p^prec, if all of them fit in an int64.
std::optional<json> small_coefficients(const WittRing& R, const Elem& a, int prec) {
  const Elem r = R.reduce(a, prec);
  u128 q = 1;
  for (int i = 0; i < prec; ++i) q *= static_cast<u128>(R.p());
  const u128 limit = u128{1} << 62;
  json coeffs = json::array();
  int last = -1;
  for (int i = 0; i < R.degree(); ++i) {
    const u128 v = r.c[i];
    std::int64_t c = 0;
    const u128 neg = v == 0 ? 0 : q - v;
    if (v <= neg && v < limit) {
      c = static_cast<std::int64_t>(v);
    } else if (neg < limit) {
      c = -static_cast<std::int64_t>(neg);
    } else {
      return std::nullopt;
    }
    if (c != 0) last = i;
    coeffs.push_back(c);
  }
  coeffs.erase(coeffs.begin() + (last + 1), coeffs.end());
  return coeffs;
}

json entry_json(const WittRing& R, const Elem& a, int shift, int prec, bool small) {
  if (small) {
    if (auto coeffs = small_coefficients(R, a, prec)) {
      json value = coeffs->size() <= 1 ? (coeffs->empty() ? json(0) : (*coeffs)[0]) : *coeffs;
      if (shift == 0) return value;
      return json{{"coefficients", value}, {"shift", shift}};
    }
  }
  json digits = json::array();
  for (const auto& d : element_digits(R, a, prec)) digits.push_back(d);
  return json{{"digits", digits}, {"shift", shift}};
}

json matrix_json(const PadicMatrix& A, bool small) {
  const WittRing& R = *A.ring();
  json rows = json::array();
  for (int i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < A.cols(); ++j) row.push_back(entry_json(R, A.at(i, j), A.shift(), A.prec(), small));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<std::vector<int>> element_digits(const WittRing& ring, const Elem& a, int prec) {
  const Elem r = ring.reduce(a, prec);
  const u128 p = static_cast<u128>(ring.p());
  std::vector<std::vector<int>> out(static_cast<size_t>(ring.degree()));
  for (int i = 0; i < ring.degree(); ++i) {
    u128 v = r.c[i];
    while (v != 0) {
      out[static_cast<size_t>(i)].push_back(static_cast<int>(v % p));
      v /= p;
    }
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

Elem element_from_digits(const WittRing& ring, const std::vector<std::vector<int>>& digits) {
  if (static_cast<int>(digits.size()) > ring.degree()) throw FormatError("more coefficients than the residue degree");
  const int p = ring.p();
  const int N = ring.precision();
  Elem out{};
  for (size_t i = 0; i < digits.size(); ++i) {
    u128 v = 0;
    u128 place = 1;
    for (size_t k = 0; k < digits[i].size(); ++k) {
      const int d = digits[i][k];
      if (d < 0 || d >= p) throw FormatError("digit " + std::to_string(d) + " outside [0, p)");
      if (static_cast<int>(k) >= N) continue;
      v += static_cast<u128>(d) * place;
      place *= static_cast<u128>(p);
    }
    out.c[i] = v;
  }
  return out;
}

namespace {

DieudonneModule load_document(const std::string& json_text, const LoadOptions& options) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("module document must be a JSON object");
  const int p = get_int(doc, "p");
  const int m = get_int(doc, "m");
  const int h = get_int(doc, "h");
  int N = get_int(doc, "N");
  if (p < 2) throw FormatError("p must be a prime");
  if (m < 1 || m > kMaxDegree) throw FormatError("m must lie in [1, " + std::to_string(kMaxDegree) + "]");
  if (h < 1) throw FormatError("h must be positive");
  if (N < 1) throw FormatError("N must be positive");
  if (!doc.contains("F")) throw FormatError("missing field 'F'");
  if (options.precision > 0) N = options.precision;
  int f_prec = N;
  if (doc.contains("F_precision")) {
    f_prec = get_int(doc, "F_precision");
    if (f_prec < 1) throw FormatError("F_precision must be positive");
    f_prec = std::min(f_prec, N);
  }
  RingPtr ring = make_witt_ring(p, m, N);
  PadicMatrix A = parse_matrix(ring, doc, "F", h, f_prec);
  AmbientPtr amb = Ambient::make(A);
  if (!doc.contains("basis") || doc.at("basis").is_null()) {
    return DieudonneModule(amb, Lattice::standard(ring, h));
  }
  PadicMatrix B = parse_matrix(ring, doc, "basis", h, N);
  return DieudonneModule::from_basis(amb, B);
}

}  // namespace

DieudonneModule load_module(const std::string& json_text, const LoadOptions& options) {
  try {
    return load_document(json_text, options);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed module document: ") + e.what());
  }
}

DieudonneModule load_module_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_module(ss.str(), options);
}

std::string save_module(const DieudonneModule& M, const SaveOptions& options) {
  const RingPtr& R = M.ring();
  const PadicMatrix& A = M.ambient()->frobenius_matrix();
  json doc;
  doc["p"] = R->p();
  doc["m"] = R->degree();
  doc["N"] = R->precision();
  doc["h"] = M.rank();
  doc["F"] = matrix_json(A, options.small_integers);
  if (A.prec() < R->precision()) doc["F_precision"] = A.prec();
  doc["basis"] = matrix_json(M.basis(), options.small_integers);
  return doc.dump(options.indent);
}

}  // namespace dieudonne
