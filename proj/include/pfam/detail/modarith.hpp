#pragma once

#include <cstdint>

namespace pf::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) noexcept {
  u64 s = a + b;  // m < 2^62, no overflow
  return s >= m ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + m - b; }

inline u64 powmod(u64 base, u64 exp, u64 m) noexcept {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

/// Reduces a signed value into [0, m).
inline u64 reduce_signed(std::int64_t v, u64 m) noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(m);
  if (r < 0) r += static_cast<std::int64_t>(m);
  return static_cast<u64>(r);
}

/// p-adic valuation of a nonzero integer.
inline int valuation_u64(u64 x, u64 p) noexcept {
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace pf::detail
