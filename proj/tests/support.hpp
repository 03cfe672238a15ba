#pragma once

// Helpers shared by the unit and acceptance tests: a seeded RNG, random
// elements, and an independent pi-adic digit oracle.

#include <cstdint>
#include <random>
#include <vector>

#include "pfam/formal_series.hpp"
#include "pfam/ok_element.hpp"

namespace pftest {

using pf::FormalSeries;
using pf::OkElement;
using pf::RingParams;

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen);
  }
  bool coin() { return below(2) == 1; }
  std::mt19937_64 gen;
};

inline std::vector<std::uint32_t> random_digits(Rng& rng, const RingParams& ring, int count) {
  std::vector<std::uint32_t> d(static_cast<std::size_t>(count));
  for (auto& x : d) x = static_cast<std::uint32_t>(rng.below(ring.p()));
  return d;
}

inline OkElement random_element(Rng& rng, const RingParams& ring) {
  const auto d = random_digits(rng, ring, ring.precision());
  return OkElement::from_digits(ring, d, ring.precision());
}

inline OkElement random_unit(Rng& rng, const RingParams& ring) {
  auto d = random_digits(rng, ring, ring.precision());
  d[0] = static_cast<std::uint32_t>(1 + rng.below(ring.p() - 1));
  return OkElement::from_digits(ring, d, ring.precision());
}

/// Random element of valuation >= v (in pi-digits).
inline OkElement random_of_valuation_at_least(Rng& rng, const RingParams& ring, int v) {
  auto d = random_digits(rng, ring, ring.precision());
  for (int t = 0; t < v && t < ring.precision(); ++t) d[static_cast<std::size_t>(t)] = 0;
  return OkElement::from_digits(ring, d, ring.precision());
}

inline FormalSeries random_series(Rng& rng, const RingParams& ring, int d,
                                  pf::Variable var = pf::Variable::U) {
  std::vector<OkElement> c;
  for (int i = 0; i < d; ++i) c.push_back(random_element(rng, ring));
  return FormalSeries::from_coefficients(ring, d, c, false, var);
}

/// Digits of sum_t c_t pi^t (integer c_t, possibly negative) modulo pi^n,
/// using pi^e = p and base-p carrying digit by digit. Independent of the
/// component representation used by OkElement.
inline std::vector<std::uint32_t> digits_of(std::vector<__int128> c, std::uint32_t p,
                                            std::uint32_t e, int n) {
  c.resize(static_cast<std::size_t>(n) + e + 1, 0);
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    __int128 v = c[static_cast<std::size_t>(t)];
    __int128 d = v % p;
    if (d < 0) d += p;
    out[static_cast<std::size_t>(t)] = static_cast<std::uint32_t>(d);
    const __int128 carry = (v - d) / p;
    if (static_cast<std::size_t>(t) + e < c.size()) c[static_cast<std::size_t>(t) + e] += carry;
  }
  return out;
}

/// Schoolbook product of digit vectors as pi-polynomials, then carried.
inline std::vector<std::uint32_t> oracle_mul_digits(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b,
                                                    std::uint32_t p, std::uint32_t e, int n) {
  std::vector<__int128> c(static_cast<std::size_t>(2 * n + 2), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j)
      c[static_cast<std::size_t>(i + j)] +=
          static_cast<__int128>(a[static_cast<std::size_t>(i)]) * b[static_cast<std::size_t>(j)];
  return digits_of(c, p, e, n);
}

inline std::vector<std::uint32_t> oracle_add_digits(const std::vector<std::uint32_t>& a,
                                                    const std::vector<std::uint32_t>& b,
                                                    std::uint32_t p, std::uint32_t e, int n,
                                                    int sign = 1) {
  std::vector<__int128> c(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    c[static_cast<std::size_t>(i)] = static_cast<__int128>(a[static_cast<std::size_t>(i)]) +
                                     sign * static_cast<__int128>(b[static_cast<std::size_t>(i)]);
  // Negative carries are fine for the oracle as long as we borrow through
  // digits_of; a final negative carry beyond n is dropped (mod pi^n).
  return digits_of(c, p, e, n);
}

}  // namespace pftest
