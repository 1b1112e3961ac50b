#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dieudonne {

using u128 = unsigned __int128;
using i128 = __int128;

/// Largest supported bit length of p^N. Barrett reduction needs two spare bits.
inline constexpr int kMaxModulusBits = 125;

std::string to_string(u128 x);
u128 parse_u128(const std::string& s);

/// Arithmetic in Z/p^N for a prime p, with p^N below 2^125.
///
/// Residues are canonical representatives in [0, p^N). Multiplication uses
/// Barrett reduction on a 256-bit product.
class ResidueRing {
 public:
  ResidueRing(int p, int N);

  int p() const noexcept { return p_; }
  int precision() const noexcept { return N_; }
  u128 modulus() const noexcept { return q_; }
  /// p^e for 0 <= e <= N.
  u128 pow_p(int e) const { return ppow_[static_cast<size_t>(e)]; }

  /// Largest N with p^N < 2^kMaxModulusBits.
  static int max_precision(int p);

  u128 add(u128 a, u128 b) const noexcept {
    u128 s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  u128 sub(u128 a, u128 b) const noexcept { return a >= b ? a - b : a + (q_ - b); }
  u128 neg(u128 a) const noexcept { return a == 0 ? 0 : q_ - a; }
  u128 mul(u128 a, u128 b) const noexcept;
  u128 from_int(std::int64_t v) const noexcept;
  /// Symmetric lift in (-p^N/2, p^N/2], when it fits in 64 bits.
  bool to_int64(u128 a, std::int64_t& out) const noexcept;

  /// p-adic valuation; N for zero.
  int valuation(u128 a) const noexcept;
  /// a / p^e for a divisible by p^e (as an integer representative).
  u128 div_pow(u128 a, int e) const noexcept { return a / ppow_[static_cast<size_t>(e)]; }
  u128 mod_pow(u128 a, int e) const noexcept { return a % ppow_[static_cast<size_t>(e)]; }
  u128 mul_pow(u128 a, int e) const noexcept;
  /// Inverse of a p-adic unit.
  u128 inverse(u128 a) const;

 private:
  int p_;
  int N_;
  u128 q_;
  int k_;    // bit length of q
  u128 mu_;  // floor(2^(2k) / q)
  std::vector<u128> ppow_;
};

}  // namespace dieudonne
