#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "dieudonne/residue.hpp"

namespace dieudonne {

/// Largest residue degree m supported for W(F_{p^m}).
inline constexpr int kMaxDegree = 12;

/// Raw element of W(F_{p^m}) / p^N: coefficients on the power basis 1, t, ..., t^{m-1}.
/// Unused trailing coefficients are zero.
struct Elem {
  std::array<u128, kMaxDegree> c{};
  friend bool operator==(const Elem& a, const Elem& b) = default;
};

class WittRing;
using RingPtr = std::shared_ptr<const WittRing>;

/// W(F_{p^m}) truncated at p^N, presented as (Z/p^N)[t]/(f), where f is the lift of the
/// Conway polynomial whose roots are Teichmüller representatives. With that choice t is
/// itself a Teichmüller element and the Frobenius is the substitution t -> t^p.
class WittRing {
 public:
  /// Builds (or returns a cached copy of) the ring for (p, m, N).
  static RingPtr make(int p, int m, int N);

  int p() const noexcept { return res_.p(); }
  int degree() const noexcept { return m_; }
  int precision() const noexcept { return res_.precision(); }
  const ResidueRing& residues() const noexcept { return res_; }
  /// Monic modulus, coefficients low degree first (m + 1 entries).
  const std::vector<u128>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return Elem{}; }
  Elem one() const noexcept { return scalar(1); }
  Elem scalar(u128 r) const noexcept {
    Elem e;
    e.c[0] = r;
    return e;
  }
  Elem from_int(std::int64_t v) const noexcept { return scalar(res_.from_int(v)); }
  /// The class of t; a Teichmüller lift of a primitive element of F_{p^m}.
  Elem generator() const noexcept;

  Elem add(const Elem& a, const Elem& b) const noexcept;
  Elem sub(const Elem& a, const Elem& b) const noexcept;
  Elem neg(const Elem& a) const noexcept;
  Elem mul(const Elem& a, const Elem& b) const noexcept;
  Elem mul_scalar(const Elem& a, u128 s) const noexcept;
  /// a + b * c
  Elem fma(const Elem& a, const Elem& b, const Elem& c) const noexcept { return add(a, mul(b, c)); }
  Elem pow(Elem a, u128 e) const noexcept;
  /// sigma^k(a); k may be negative.
  Elem frobenius(const Elem& a, int k) const noexcept;

  bool is_zero(const Elem& a) const noexcept;
  /// Minimum coefficient valuation; precision() for zero.
  int valuation(const Elem& a) const noexcept;
  /// Element lies in Z/p^N (all higher coefficients vanish).
  bool is_scalar(const Elem& a) const noexcept;
  /// a / p^e for a divisible by p^e; the top e digits of the result are unknown and set to 0.
  Elem div_pow(const Elem& a, int e) const noexcept;
  Elem mul_pow(const Elem& a, int e) const noexcept;
  /// Coefficientwise reduction into [0, p^e).
  Elem reduce(const Elem& a, int e) const noexcept;
  bool equal_mod(const Elem& a, const Elem& b, int e) const noexcept;
  /// Inverse of a unit; throws ArgumentError otherwise.
  Elem inverse(const Elem& a) const;
  /// Teichmüller representative of the residue class of a.
  Elem teichmuller(const Elem& a) const noexcept;
  /// Uniform element of W/p^N.
  Elem random(std::mt19937_64& rng) const noexcept;

  std::string to_string(const Elem& a) const;

  WittRing(int p, int m, int N);

 private:
  int m_;
  ResidueRing res_;
  std::vector<u128> modulus_;
  // sigma_[k][i * m + j]: coefficient of t^i in sigma^k(t^j), 0 <= k < m.
  std::vector<std::vector<u128>> sigma_;

  void reduce_product(std::array<u128, 2 * kMaxDegree>& prod, Elem& out) const noexcept;
};

/// Embedding W(F_{p^m}) -> W(F_{p^L}) for m | L, compatible with the Conway tower:
/// t_m maps to t_L^{(p^L - 1) / (p^m - 1)}.
class RingEmbedding {
 public:
  RingEmbedding(RingPtr from, RingPtr to);
  const RingPtr& source() const noexcept { return from_; }
  const RingPtr& target() const noexcept { return to_; }
  Elem operator()(const Elem& a) const noexcept;

 private:
  RingPtr from_;
  RingPtr to_;
  std::vector<Elem> images_;
};

/// Element of the fraction field B(F_{p^m}): the value p^{-shift} * unit_part.
/// The integral part is known modulo p^N, so the value is known modulo p^{N - shift}.
class WittElement {
 public:
  WittElement() = default;
  WittElement(RingPtr ring, const Elem& integral, int shift = 0);
  static WittElement from_int(RingPtr ring, std::int64_t v);

  const RingPtr& ring() const noexcept { return ring_; }
  const Elem& integral() const noexcept { return v_; }
  int shift() const noexcept { return shift_; }
  bool is_zero() const;
  /// Valuation of the value; precision window end for zero.
  int valuation() const;
  /// Value modulo p^{known_precision()} is exact.
  int known_precision() const;

  WittElement operator+(const WittElement& o) const;
  WittElement operator-(const WittElement& o) const;
  WittElement operator*(const WittElement& o) const;
  WittElement operator-() const;
  WittElement inverse() const;
  WittElement frobenius(int k) const;
  /// Same value, equal coefficients within the common precision window.
  bool equals(const WittElement& o) const;

 private:
  RingPtr ring_;
  Elem v_{};
  int shift_ = 0;
  int prec_ = 0;  // v_ known modulo p^prec_
  void normalize();
};

/// Builds a W(F_{p^m}) ring (free function form of WittRing::make).
RingPtr make_witt_ring(int p, int m, int N);

/// Default absolute precision for ambient rank h: 2 h^2 + 16, clamped so that four extra
/// audit digits still fit the residue width for p.
int default_precision(int p, int h);

}  // namespace dieudonne
