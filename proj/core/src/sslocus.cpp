#include "dieudonne/sslocus.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

// Small dense linear algebra over F_p on int vectors.
int rank_fp(std::vector<std::vector<int>> rows, int p) {
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  auto inv = [p](int x) {
    for (int y = 1; y < p; ++y) {
      if (x * y % p == 1) return y;
    }
    return 0;
  };
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c] % p) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    const int iv = inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = x * iv % p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const int f = rows[r][c];
      for (int k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// 2 x 2 matrix over F_{p^2}, row-major.
using Mat2 = std::array<Elem, 4>;

struct Fq {
  RingPtr F;  // W(F_{p^2}) / p
  int p;

  Mat2 mul(const Mat2& x, const Mat2& y) const {
    const WittRing& R = *F;
    return {R.add(R.mul(x[0], y[0]), R.mul(x[1], y[2])), R.add(R.mul(x[0], y[1]), R.mul(x[1], y[3])),
            R.add(R.mul(x[2], y[0]), R.mul(x[3], y[2])), R.add(R.mul(x[2], y[1]), R.mul(x[3], y[3]))};
  }
  Mat2 scale(const Elem& c, const Mat2& x) const {
    const WittRing& R = *F;
    return {R.mul(c, x[0]), R.mul(c, x[1]), R.mul(c, x[2]), R.mul(c, x[3])};
  }
  Mat2 add(const Mat2& x, const Mat2& y) const {
    const WittRing& R = *F;
    return {R.add(x[0], y[0]), R.add(x[1], y[1]), R.add(x[2], y[2]), R.add(x[3], y[3])};
  }
  // F_p coordinates: entry-major, power basis inside each entry.
  std::vector<int> flat(const Mat2& x) const {
    std::vector<int> v;
    for (const auto& e : x) {
      v.push_back(static_cast<int>(e.c[0]));
      v.push_back(static_cast<int>(e.c[1]));
    }
    return v;
  }
  std::vector<Elem> elements() const {
    std::vector<Elem> all;
    for (int u = 0; u < p; ++u) {
      for (int v = 0; v < p; ++v) {
        Elem e{};
        e.c[0] = static_cast<u128>(u);
        e.c[1] = static_cast<u128>(v);
        all.push_back(e);
      }
    }
    return all;
  }
  bool char_poly_irreducible(const Mat2& x) const {
    const WittRing& R = *F;
    Elem tr = R.add(x[0], x[3]);
    Elem det = R.sub(R.mul(x[0], x[3]), R.mul(x[1], x[2]));
    for (const Elem& r : elements()) {
      if (R.is_zero(R.add(R.sub(R.mul(r, r), R.mul(tr, r)), det))) return false;
    }
    return true;
  }
};

}  // namespace

SuperspecialBase superspecial_base(const RingPtr& ring) {
  if (ring->degree() % 2 != 0) throw ArgumentError("superspecial base needs F_{p^2} inside the residue field");
  const int p = ring->p();
  PadicMatrix A = PadicMatrix::from_ints(ring, 4, 4, {0, -p, 0, 0, 1, 0, 0, 0, 0, 0, 0, -p, 0, 0, 1, 0});
  return SuperspecialBase{DieudonneModule(Ambient::make(A), Lattice::standard(ring, 4))};
}

int field_level(const RingPtr& ring, const Elem& a, const Elem& b) {
  const WittRing& R = *ring;
  if (R.is_zero(a) && R.is_zero(b)) throw ArgumentError("zero point");
  if (R.is_zero(a) || R.is_zero(b)) return 1;
  const Elem r = R.mul(b, R.inverse(a));
  for (int k = 1; 2 * k <= R.degree(); ++k) {
    if (R.degree() % (2 * k) == 0 && R.frobenius(r, 2 * k) == r) return k;
  }
  // Only reachable when the residue degree is not even.
  throw ArgumentError("point is not defined over an even-degree subfield");
}

FamilyPoint point_module(const SuperspecialBase& base, const Elem& a, const Elem& b) {
  const RingPtr& ring = base.M1.ring();
  const WittRing& R = *ring;
  if (R.is_zero(a) && R.is_zero(b)) throw ArgumentError("zero point");
  if (!(R.is_zero(a) ? b == R.one() : a == R.one())) {
    throw ArgumentError("point must be normalized: first nonzero coordinate 1");
  }
  if (R.teichmuller(a) != a || R.teichmuller(b) != b) throw ArgumentError("point coordinates must be Teichmüller");
  PadicMatrix g(ring, 4, 1);
  g.at(1, 0) = a;
  g.at(3, 0) = b;
  g.set_shift(1);
  g.normalize();
  Lattice L = Lattice::from_generators(PadicMatrix::hcat(base.M1.basis(), g));
  FamilyPoint x{a, b, field_level(ring, a, b), DieudonneModule(base.M1.ambient(), L)};
  if (index_exponent(x.module.lattice(), base.M1.lattice()) != 1) throw InternalError("M_x / M1 is not of length 1");
  return x;
}

ReductionShape reduction_shape(const EndoOrder& O) {
  const MaximalOrder& R = O.maximal;
  if (R.structure.factors.size() != 1 || !(R.structure.factors[0] == AlgebraFactor{2, 2, 1})) {
    throw ArgumentError("reduction shape needs an order in M_2 of the quaternion order");
  }
  const int p = R.ring->p();
  Fq fq{make_witt_ring(p, 2, 1), p};
  const WittRing& F = *fq.F;
  const Elem gbar = F.generator();
  // Residue map: E_ik phi_{g^t} Pi^s -> (s == 0) * gbar^t E_ik.
  auto image = [&](int col) {
    Mat2 m{F.zero(), F.zero(), F.zero(), F.zero()};
    PadicMatrix y = O.coords.column(col);
    const int s = y.shift();
    for (int r = 0; r < y.rows(); ++r) {
      const auto& l = R.labels[r];
      if (l.s != 0) continue;
      Elem e = s >= 0 ? R.zp->div_pow(y.at(r, 0), s) : R.zp->mul_pow(y.at(r, 0), -s);
      Elem c = F.from_int(static_cast<std::int64_t>(e.c[0] % static_cast<u128>(p)));
      c = F.mul(c, F.pow(gbar, static_cast<u128>(l.t)));
      m[l.i * 2 + l.k] = F.add(m[l.i * 2 + l.k], c);
    }
    return m;
  };
  std::vector<Mat2> images;
  std::vector<std::vector<int>> rows;
  for (int j = 0; j < O.coords.cols(); ++j) {
    Mat2 m = image(j);
    std::vector<int> v = fq.flat(m);
    rows.push_back(v);
    if (rank_fp(rows, p) == static_cast<int>(images.size()) + 1) {
      images.push_back(m);
    } else {
      rows.pop_back();
    }
  }
  ReductionShape shape;
  shape.dimension = static_cast<int>(images.size());
  auto in_span = [&](const Mat2& m) {
    auto r = rows;
    r.push_back(fq.flat(m));
    return rank_fp(r, p) == shape.dimension;
  };
  const Mat2 one{F.one(), F.zero(), F.zero(), F.one()};
  shape.contains_scalars = in_span(one) && in_span(fq.scale(gbar, one));
  if (shape.dimension == 4 && shape.contains_scalars) {
    // Brute force over the p^4 elements of the image.
    const int total = p * p * p * p;
    for (int code = 1; code < total && !shape.quadratic_generator; ++code) {
      Mat2 X{F.zero(), F.zero(), F.zero(), F.zero()};
      int c = code;
      for (const auto& b : images) {
        X = fq.add(X, fq.scale(F.from_int(c % p), b));
        c /= p;
      }
      if (!fq.char_poly_irreducible(X)) continue;
      std::vector<std::vector<int>> gen = {fq.flat(one), fq.flat(fq.scale(gbar, one)), fq.flat(X),
                                           fq.flat(fq.scale(gbar, X))};
      bool inside = in_span(fq.mul(X, X));
      shape.quadratic_generator = inside && rank_fp(gen, p) == 4;
    }
  }
  bool scalar_only = shape.dimension == 2 && shape.contains_scalars;
  if (shape.dimension == 8) {
    shape.detected_case = 1;
  } else if (shape.dimension == 4 && shape.quadratic_generator) {
    shape.detected_case = 2;
  } else if (scalar_only) {
    shape.detected_case = 3;
  }
  return shape;
}

int expected_case(int level) { return level <= 1 ? 1 : (level == 2 ? 2 : 3); }

int expected_coindex(int level) { return level <= 1 ? 0 : (level == 2 ? 4 : 6); }

PointProfile c_p_profile(const SuperspecialBase& base, const FamilyPoint& x) {
  EndoOrder E = endomorphism_ring(x.module);
  PointProfile prof;
  prof.c_p = coindex(E);
  prof.shape = reduction_shape(E);
  prof.shape_matches = prof.shape.detected_case == expected_case(x.field_level);
  prof.is_minimal = is_minimal(x.module).is_minimal;
  DieudonneModule sub = minimal_submodule(x.module);
  prof.length_sub = index_exponent(x.module.lattice(), sub.lattice());
  prof.sub_is_base = sub.lattice() == base.M1.lattice();
  prof.field_degree = E.maximal.ring->degree();
  prof.precision = E.maximal.ring->precision();
  return prof;
}

std::string StratumRow::b_label() const {
  if (b_log < 0) return "0";
  if (b_log == 0) return "1";
  return "t^" + std::to_string(b_log);
}

void summarize(StratumTable& t) {
  t.counts.fill(0);
  bool points = true;
  for (const auto& r : t.rows) {
    for (int m = 0; m <= 6; ++m) t.counts[m] += r.profile.c_p <= m ? 1 : 0;
    const bool superspecial = r.field_level == 1;
    points = points && r.profile.c_p == expected_coindex(r.field_level) && r.profile.shape_matches;
    points = points && r.profile.is_minimal == superspecial && (r.profile.c_p == 0) == superspecial;
    if (!superspecial) points = points && r.profile.sub_is_base && r.profile.length_sub == 1;
  }
  const auto& c = t.counts;
  const int n = static_cast<int>(t.rows.size());
  t.filtration_holds = c[0] == c[1] && c[1] == c[2] && c[2] == c[3] && c[4] == c[5] && c[6] == n;
  for (int m = 1; m <= 6; ++m) t.filtration_holds = t.filtration_holds && c[m - 1] <= c[m];
  t.counts_hold = c[0] == t.expected_v0 && c[4] == t.expected_v4;
  t.points_hold = points;
}

StratumTable stratification(int p, int k_max, int precision) {
  if (k_max < 1 || k_max > 4) throw ArgumentError("k_max must be between 1 and 4");
  const int m = 2 * k_max;
  const int N = precision > 0 ? precision : default_precision(p, 4);
  RingPtr ring = make_witt_ring(p, m, N);
  const WittRing& R = *ring;
  SuperspecialBase base = superspecial_base(ring);
  StratumTable t;
  t.p = p;
  t.k_max = k_max;
  t.field_degree = m;
  t.precision = N;
  long long q = 1;
  for (int i = 0; i < m; ++i) q *= p;
  long long p2 = static_cast<long long>(p) * p;
  t.expected_v0 = static_cast<int>(p2 + 1);
  t.expected_v4 = static_cast<int>(k_max % 2 == 0 ? p2 * p2 + 1 : p2 + 1);

  auto add = [&](int a, int b_log) {
    Elem ea = a ? R.one() : R.zero();
    Elem eb = b_log < 0 ? R.zero() : R.pow(R.generator(), static_cast<u128>(b_log));
    FamilyPoint x = point_module(base, ea, eb);
    StratumRow row{a, b_log, x.field_level, c_p_profile(base, x)};
    t.rows.push_back(row);
  };
  add(0, 0);
  add(1, -1);
  for (long long j = 0; j < q - 1; ++j) add(1, static_cast<int>(j));
  summarize(t);
  return t;
}

std::string StratumTable::to_csv() const {
  std::ostringstream os;
  os << "a,b,field_level,c_p\n";
  for (const auto& r : rows) os << r.a << "," << r.b_label() << "," << r.field_level << "," << r.profile.c_p << "\n";
  return os.str();
}

std::vector<FamilyPoint> sample_points(const SuperspecialBase& base, int level, int count, std::uint64_t seed) {
  const RingPtr& ring = base.M1.ring();
  const WittRing& R = *ring;
  if (R.degree() % (2 * level) != 0) throw ArgumentError("base field does not contain F_{p^{2 level}}");
  long long q = 1;
  for (int i = 0; i < R.degree(); ++i) q *= R.p();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> pick(0, q - 2);
  std::vector<FamilyPoint> out;
  for (int guard = 0; static_cast<int>(out.size()) < count; ++guard) {
    if (guard > 1000 * count) throw InternalError("no point of the requested level found");
    Elem b = R.pow(R.generator(), static_cast<u128>(pick(rng)));
    if (field_level(ring, R.one(), b) != level) continue;
    out.push_back(point_module(base, R.one(), b));
  }
  return out;
}

}  // namespace dieudonne
