#include "dieudonne/residue.hpp"

#include <algorithm>

#include "dieudonne/errors.hpp"

namespace dieudonne {

namespace {

struct U256 {
  u128 hi;
  u128 lo;
};

U256 mul_wide(u128 a, u128 b) noexcept {
  const u128 mask = ~std::uint64_t{0};
  u128 a0 = a & mask, a1 = a >> 64;
  u128 b0 = b & mask, b1 = b >> 64;
  u128 p00 = a0 * b0;
  u128 p01 = a0 * b1;
  u128 p10 = a1 * b0;
  u128 p11 = a1 * b1;
  u128 mid = (p00 >> 64) + (p01 & mask) + (p10 & mask);
  U256 r;
  r.lo = (p00 & mask) | (mid << 64);
  r.hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  return r;
}

// (hi:lo) >> s for 1 <= s <= 127, assuming the result fits 128 bits.
u128 shr(const U256& x, int s) noexcept { return (x.hi << (128 - s)) | (x.lo >> s); }

int bit_length(u128 x) noexcept {
  int n = 0;
  while (x != 0) {
    ++n;
    x >>= 1;
  }
  return n;
}

}  // namespace

std::string to_string(u128 x) {
  if (x == 0) return "0";
  std::string s;
  while (x != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 parse_u128(const std::string& s) {
  if (s.empty()) throw FormatError("empty integer literal");
  u128 x = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw FormatError("invalid integer literal '" + s + "'");
    u128 next = x * 10 + static_cast<u128>(c - '0');
    if (next / 10 != x) throw FormatError("integer literal out of range '" + s + "'");
    x = next;
  }
  return x;
}

int ResidueRing::max_precision(int p) {
  int n = 0;
  u128 q = 1;
  while (bit_length(q * static_cast<u128>(p)) <= kMaxModulusBits) {
    q *= static_cast<u128>(p);
    ++n;
  }
  return n;
}

ResidueRing::ResidueRing(int p, int N) : p_(p), N_(N) {
  if (p < 2) throw ArgumentError("residue ring needs a prime p >= 2");
  if (N < 1) throw ArgumentError("precision must be at least 1");
  if (N > max_precision(p)) {
    throw CapacityError("precision " + std::to_string(N) + " exceeds the residue width for p = " +
                        std::to_string(p) + " (max " + std::to_string(max_precision(p)) + ")");
  }
  ppow_.resize(static_cast<size_t>(N) + 1);
  ppow_[0] = 1;
  for (int i = 1; i <= N; ++i) ppow_[static_cast<size_t>(i)] = ppow_[static_cast<size_t>(i) - 1] * static_cast<u128>(p);
  q_ = ppow_[static_cast<size_t>(N)];
  k_ = bit_length(q_);
  // floor(2^(2k) / q) by binary long division; the remainder stays below q.
  u128 rem = 0, quo = 0;
  for (int bit = 2 * k_; bit >= 0; --bit) {
    rem = (rem << 1) | (bit == 2 * k_ ? 1 : 0);
    quo <<= 1;
    if (rem >= q_) {
      rem -= q_;
      quo |= 1;
    }
  }
  mu_ = quo;
}

u128 ResidueRing::mul(u128 a, u128 b) const noexcept {
  U256 x = mul_wide(a, b);
  u128 t = shr(x, k_ - 1);
  U256 y = mul_wide(t, mu_);
  u128 qhat = shr(y, k_ + 1);
  u128 r = x.lo - qhat * q_;
  while (r >= q_) r -= q_;
  return r;
}

u128 ResidueRing::from_int(std::int64_t v) const noexcept {
  if (v >= 0) return static_cast<u128>(v) % q_;
  u128 m = static_cast<u128>(-(v + 1)) + 1;
  m %= q_;
  return m == 0 ? 0 : q_ - m;
}

bool ResidueRing::to_int64(u128 a, std::int64_t& out) const noexcept {
  const u128 limit = static_cast<u128>(INT64_MAX);
  if (a <= q_ / 2) {
    if (a > limit) return false;
    out = static_cast<std::int64_t>(a);
    return true;
  }
  u128 m = q_ - a;
  if (m > limit) return false;
  out = -static_cast<std::int64_t>(m);
  return true;
}

int ResidueRing::valuation(u128 a) const noexcept {
  if (a == 0) return N_;
  int v = 0;
  while (a % static_cast<u128>(p_) == 0) {
    a /= static_cast<u128>(p_);
    ++v;
  }
  return v;
}

u128 ResidueRing::mul_pow(u128 a, int e) const noexcept {
  if (e >= N_) return 0;
  return mul(a, ppow_[static_cast<size_t>(e)]);
}

u128 ResidueRing::inverse(u128 a) const {
  if (a % static_cast<u128>(p_) == 0) throw ArgumentError("inverse of a non-unit residue");
  // Inverse mod p by Fermat, then Newton lifting y <- y (2 - a y).
  u128 base = a % static_cast<u128>(p_);
  u128 y = 1;
  for (int e = p_ - 2; e > 0; e >>= 1) {
    if (e & 1) y = (y * base) % static_cast<u128>(p_);
    base = (base * base) % static_cast<u128>(p_);
  }
  for (int known = 1; known < N_; known *= 2) {
    y = mul(y, sub(2, mul(a, y)));
  }
  return y;
}

}  // namespace dieudonne
