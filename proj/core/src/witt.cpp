#include "dieudonne/witt.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "dieudonne/conway.hpp"
#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

// Minimal polynomial arithmetic over Z/p^N used only while building a ring.
struct NaiveRing {
  const ResidueRing& res;
  int m;
  std::vector<u128> f;  // monic, m + 1 coefficients

  std::vector<u128> mul(const std::vector<u128>& a, const std::vector<u128>& b) const {
    std::vector<u128> prod(static_cast<size_t>(2 * m - 1), 0);
    for (int i = 0; i < m; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < m; ++j) prod[i + j] = res.add(prod[i + j], res.mul(a[i], b[j]));
    }
    for (int d = 2 * m - 2; d >= m; --d) {
      u128 top = prod[d];
      if (top == 0) continue;
      for (int i = 0; i < m; ++i) prod[d - m + i] = res.sub(prod[d - m + i], res.mul(top, f[i]));
    }
    prod.resize(static_cast<size_t>(m));
    return prod;
  }

  std::vector<u128> pow(std::vector<u128> a, u128 e) const {
    std::vector<u128> r(static_cast<size_t>(m), 0);
    r[0] = 1;
    while (e != 0) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e != 0) a = mul(a, a);
    }
    return r;
  }
};

u128 ipow(u128 b, int e) {
  u128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

RingPtr WittRing::make(int p, int m, int N) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, RingPtr> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, m, N});
    if (it != cache.end()) return it->second;
  }
  auto ring = std::make_shared<const WittRing>(p, m, N);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_tuple(p, m, N), ring).first->second;
}

RingPtr make_witt_ring(int p, int m, int N) { return WittRing::make(p, m, N); }

int default_precision(int p, int h) {
  int n = 2 * h * h + 16;
  return std::min(n, ResidueRing::max_precision(p) - 4);
}

WittRing::WittRing(int p, int m, int N) : m_(m), res_(p, N) {
  if (m < 1 || m > kMaxDegree) {
    throw ArgumentError("residue degree " + std::to_string(m) + " outside 1.." + std::to_string(kMaxDegree));
  }
  for (int d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw ArgumentError(std::to_string(p) + " is not prime");
  }
  const std::vector<int>& conway = conway_polynomial(p, m);

  NaiveRing naive{res_, m, {}};
  for (int c : conway) naive.f.push_back(res_.from_int(c));

  // Teichmüller lift of the class of t: limit of t^{p^{mk}}.
  std::vector<u128> zeta(static_cast<size_t>(m), 0);
  if (m == 1) {
    zeta[0] = res_.neg(naive.f[0]);
  } else {
    zeta[1] = 1;
  }
  for (int it = 0; it < N; ++it) {
    for (int k = 0; k < m; ++k) zeta = naive.pow(zeta, static_cast<u128>(p));
  }

  // f = prod_{i<m} (X - zeta^{p^i}); coefficients live in Z/p^N.
  std::vector<std::vector<u128>> poly(1, std::vector<u128>(static_cast<size_t>(m), 0));
  poly[0][0] = 1;
  std::vector<u128> root = zeta;
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<u128>> next(poly.size() + 1, std::vector<u128>(static_cast<size_t>(m), 0));
    for (size_t d = 0; d < poly.size(); ++d) {
      for (int j = 0; j < m; ++j) next[d + 1][j] = res_.add(next[d + 1][j], poly[d][j]);
      std::vector<u128> t = naive.mul(poly[d], root);
      for (int j = 0; j < m; ++j) next[d][j] = res_.sub(next[d][j], t[j]);
    }
    poly = std::move(next);
    root = naive.pow(root, static_cast<u128>(p));
  }
  modulus_.assign(static_cast<size_t>(m) + 1, 0);
  for (int d = 0; d <= m; ++d) {
    for (int j = 1; j < m; ++j) {
      if (poly[d][j] != 0) throw InternalError("Teichmüller modulus has non-constant coefficients");
    }
    modulus_[d] = poly[d][0];
    if (modulus_[d] % static_cast<u128>(p) != naive.f[d] % static_cast<u128>(p)) {
      throw InternalError("Teichmüller modulus does not reduce to the Conway polynomial");
    }
  }

  // Frobenius matrices: sigma(t^j) = t^{pj}.
  sigma_.assign(static_cast<size_t>(m), std::vector<u128>(static_cast<size_t>(m * m), 0));
  Elem t = generator();
  for (int k = 0; k < m; ++k) {
    Elem col = one();
    Elem step = k == 0 ? one() : pow(t, ipow(static_cast<u128>(p), k));
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) sigma_[k][i * m + j] = col.c[i];
      col = mul(col, step);
    }
  }
}

Elem WittRing::generator() const noexcept {
  Elem e;
  if (m_ == 1) {
    e.c[0] = res_.neg(modulus_[0]);
  } else {
    e.c[1] = 1;
  }
  return e;
}

Elem WittRing::add(const Elem& a, const Elem& b) const noexcept {
  Elem r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.add(a.c[i], b.c[i]);
  return r;
}

Elem WittRing::sub(const Elem& a, const Elem& b) const noexcept {
  Elem r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.sub(a.c[i], b.c[i]);
  return r;
}

Elem WittRing::neg(const Elem& a) const noexcept {
  Elem r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.neg(a.c[i]);
  return r;
}

void WittRing::reduce_product(std::array<u128, 2 * kMaxDegree>& prod, Elem& out) const noexcept {
  for (int d = 2 * m_ - 2; d >= m_; --d) {
    u128 top = prod[d];
    if (top == 0) continue;
    for (int i = 0; i < m_; ++i) prod[d - m_ + i] = res_.sub(prod[d - m_ + i], res_.mul(top, modulus_[i]));
  }
  for (int i = 0; i < m_; ++i) out.c[i] = prod[i];
}

Elem WittRing::mul(const Elem& a, const Elem& b) const noexcept {
  if (m_ == 1) return scalar(res_.mul(a.c[0], b.c[0]));
  std::array<u128, 2 * kMaxDegree> prod{};
  for (int i = 0; i < m_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < m_; ++j) {
      if (b.c[j] == 0) continue;
      prod[i + j] = res_.add(prod[i + j], res_.mul(a.c[i], b.c[j]));
    }
  }
  Elem r;
  reduce_product(prod, r);
  return r;
}

Elem WittRing::mul_scalar(const Elem& a, u128 s) const noexcept {
  Elem r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.mul(a.c[i], s);
  return r;
}

Elem WittRing::pow(Elem a, u128 e) const noexcept {
  Elem r = one();
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    e >>= 1;
    if (e != 0) a = mul(a, a);
  }
  return r;
}

Elem WittRing::frobenius(const Elem& a, int k) const noexcept {
  k %= m_;
  if (k < 0) k += m_;
  if (k == 0) return a;
  const std::vector<u128>& s = sigma_[static_cast<size_t>(k)];
  Elem r;
  for (int j = 0; j < m_; ++j) {
    if (a.c[j] == 0) continue;
    for (int i = 0; i < m_; ++i) r.c[i] = res_.add(r.c[i], res_.mul(s[i * m_ + j], a.c[j]));
  }
  return r;
}

bool WittRing::is_zero(const Elem& a) const noexcept {
  for (int i = 0; i < m_; ++i) {
    if (a.c[i] != 0) return false;
  }
  return true;
}

int WittRing::valuation(const Elem& a) const noexcept {
  int v = precision();
  for (int i = 0; i < m_; ++i) v = std::min(v, res_.valuation(a.c[i]));
  return v;
}

bool WittRing::is_scalar(const Elem& a) const noexcept {
  for (int i = 1; i < m_; ++i) {
    if (a.c[i] != 0) return false;
  }
  return true;
}

Elem WittRing::div_pow(const Elem& a, int e) const noexcept {
  if (e <= 0) return e == 0 ? a : mul_pow(a, -e);
  if (e >= precision()) return Elem{};
  Elem r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.div_pow(a.c[i], e);
  return r;
}

Elem WittRing::mul_pow(const Elem& a, int e) const noexcept {
  if (e == 0) return a;
  Elem r;
  if (e >= precision()) return r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.mul_pow(a.c[i], e);
  return r;
}

Elem WittRing::reduce(const Elem& a, int e) const noexcept {
  if (e >= precision()) return a;
  Elem r;
  if (e <= 0) return r;
  for (int i = 0; i < m_; ++i) r.c[i] = res_.mod_pow(a.c[i], e);
  return r;
}

bool WittRing::equal_mod(const Elem& a, const Elem& b, int e) const noexcept {
  return valuation(sub(a, b)) >= std::min(e, precision());
}

Elem WittRing::inverse(const Elem& a) const {
  if (valuation(a) != 0) throw ArgumentError("inverse of a non-unit Witt vector");
  if (m_ == 1) return scalar(res_.inverse(a.c[0]));
  // a^{p^m - 2} inverts a modulo p; Newton steps double the correct digits.
  u128 q = ipow(static_cast<u128>(p()), m_);
  Elem y = pow(a, q - 2);
  Elem two = from_int(2);
  for (int known = 1; known < precision(); known *= 2) y = mul(y, sub(two, mul(a, y)));
  return y;
}

Elem WittRing::teichmuller(const Elem& a) const noexcept {
  Elem x = a;
  u128 q = ipow(static_cast<u128>(p()), m_);
  for (int it = 0; it < precision(); ++it) x = pow(x, q);
  return x;
}

Elem WittRing::random(std::mt19937_64& rng) const noexcept {
  Elem r;
  for (int i = 0; i < m_; ++i) {
    u128 hi = rng();
    u128 lo = rng();
    r.c[i] = ((hi << 64) | lo) % res_.modulus();
  }
  return r;
}

std::string WittRing::to_string(const Elem& a) const {
  std::string s = "(";
  for (int i = 0; i < m_; ++i) {
    if (i) s += ", ";
    std::int64_t v = 0;
    s += res_.to_int64(a.c[i], v) ? std::to_string(v) : dieudonne::to_string(a.c[i]);
  }
  return s + ")";
}

RingEmbedding::RingEmbedding(RingPtr from, RingPtr to) : from_(std::move(from)), to_(std::move(to)) {
  if (from_->p() != to_->p() || from_->precision() != to_->precision()) {
    throw ArgumentError("ring embedding needs equal p and precision");
  }
  const int m = from_->degree(), L = to_->degree();
  if (L % m != 0) throw ArgumentError("ring embedding needs m | L");
  const u128 p = static_cast<u128>(from_->p());
  u128 num = ipow(p, L) - 1, den = ipow(p, m) - 1;
  Elem zeta = to_->pow(to_->generator(), num / den);
  images_.resize(static_cast<size_t>(m));
  images_[0] = to_->one();
  for (int j = 1; j < m; ++j) images_[j] = to_->mul(images_[j - 1], zeta);
  // zeta must be a root of the source modulus.
  Elem acc = to_->zero();
  Elem power = to_->one();
  for (int d = 0; d <= m; ++d) {
    acc = to_->add(acc, to_->mul_scalar(power, from_->modulus()[d]));
    power = to_->mul(power, zeta);
  }
  if (!to_->is_zero(acc)) throw InternalError("Conway tower embedding failed");
}

Elem RingEmbedding::operator()(const Elem& a) const noexcept {
  const int m = from_->degree();
  Elem r = to_->zero();
  for (int j = 0; j < m; ++j) {
    if (a.c[j] != 0) r = to_->add(r, to_->mul_scalar(images_[j], a.c[j]));
  }
  return r;
}

WittElement::WittElement(RingPtr ring, const Elem& integral, int shift)
    : ring_(std::move(ring)), v_(integral), shift_(shift), prec_(ring_->precision()) {
  normalize();
}

WittElement WittElement::from_int(RingPtr ring, std::int64_t v) {
  Elem e = ring->from_int(v);
  return WittElement(std::move(ring), e, 0);
}

void WittElement::normalize() {
  int v = ring_->valuation(v_);
  if (v >= prec_ || v == 0) return;
  v_ = ring_->div_pow(v_, v);
  prec_ -= v;
  shift_ -= v;
}

bool WittElement::is_zero() const { return ring_->valuation(v_) >= prec_; }

int WittElement::valuation() const {
  int v = ring_->valuation(v_);
  return std::min(v, prec_) - shift_;
}

int WittElement::known_precision() const { return prec_ - shift_; }

WittElement WittElement::operator+(const WittElement& o) const {
  if (ring_ != o.ring_) throw ArgumentError("Witt elements from different rings");
  int s = std::max(shift_, o.shift_);
  WittElement r;
  r.ring_ = ring_;
  r.shift_ = s;
  r.v_ = ring_->add(ring_->mul_pow(v_, s - shift_), ring_->mul_pow(o.v_, s - o.shift_));
  r.prec_ = std::min({ring_->precision(), prec_ + s - shift_, o.prec_ + s - o.shift_});
  r.normalize();
  return r;
}

WittElement WittElement::operator-() const {
  WittElement r = *this;
  r.v_ = ring_->neg(v_);
  return r;
}

WittElement WittElement::operator-(const WittElement& o) const { return *this + (-o); }

WittElement WittElement::operator*(const WittElement& o) const {
  if (ring_ != o.ring_) throw ArgumentError("Witt elements from different rings");
  WittElement r;
  r.ring_ = ring_;
  r.shift_ = shift_ + o.shift_;
  r.v_ = ring_->mul(v_, o.v_);
  int va = std::min(ring_->valuation(v_), prec_);
  int vb = std::min(ring_->valuation(o.v_), o.prec_);
  r.prec_ = std::min({ring_->precision(), prec_ + vb, o.prec_ + va});
  r.normalize();
  return r;
}

WittElement WittElement::inverse() const {
  int v = ring_->valuation(v_);
  if (v >= prec_) throw PrecisionError("inverse of an element indistinguishable from zero");
  Elem unit = ring_->div_pow(v_, v);
  WittElement r;
  r.ring_ = ring_;
  r.v_ = ring_->inverse(unit);
  r.prec_ = prec_ - v;
  r.shift_ = -(shift_ - v);
  r.v_ = ring_->reduce(r.v_, r.prec_);
  return r;
}

WittElement WittElement::frobenius(int k) const {
  WittElement r = *this;
  r.v_ = ring_->frobenius(v_, k);
  return r;
}

bool WittElement::equals(const WittElement& o) const {
  WittElement d = *this - o;
  return d.is_zero();
}

}  // namespace dieudonne
