#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace pf {

using Rational = boost::rational<std::int64_t>;

inline constexpr std::uint32_t kMaxRamification = 8;

namespace detail {
struct RingData;
}

/// Handle to an interned ring O_K / pi^N where K = Q_p(pi), pi^e = p.
///
/// Elements are stored as e integer components modulo p^M with
/// M = ceil(N / e); x = sum_j pi^j X_j. Construction validates the
/// parameters once and interns them, so copying a handle is a pointer copy
/// and equality is identity.
class RingParams {
 public:
  /// Throws Error(InvalidParams) unless p is an odd prime, e in [1, 8],
  /// N >= 1 and p^ceil(N/e) < 2^62.
  static RingParams make(std::uint32_t p, std::uint32_t e, int precision);

  RingParams();  // Z_3 at precision 20

  std::uint32_t p() const noexcept;
  std::uint32_t e() const noexcept;
  int precision() const noexcept;

  /// M = ceil(N / e): how many p-adic digits each component carries.
  int component_digits() const noexcept;
  /// p^M, the modulus every component is reduced by before canonicalising.
  std::uint64_t modulus() const noexcept;
  /// p^k for 0 <= k <= M.
  std::uint64_t p_power(int k) const noexcept;
  /// Number of pi-adic digit positions t < prec with t = j (mod e).
  int digits_in_component(std::uint32_t j, int prec) const noexcept;

  std::string describe() const;

  friend bool operator==(RingParams a, RingParams b) noexcept { return a.d_ == b.d_; }
  friend bool operator!=(RingParams a, RingParams b) noexcept { return a.d_ != b.d_; }

 private:
  explicit RingParams(const detail::RingData* d) : d_(d) {}
  const detail::RingData* d_;
};

bool is_prime(std::uint64_t n);

/// Valuation of a rational number at p; returns INT64_MAX for zero.
std::int64_t rational_valuation(const Rational& q, std::uint32_t p);

}  // namespace pf
