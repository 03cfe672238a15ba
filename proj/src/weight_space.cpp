#include "pfam/weight_space.hpp"

#include <string>

namespace pf {

int integer_valuation(std::int64_t n, std::uint32_t p) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  int v = 0;
  while (n % static_cast<std::int64_t>(p) == 0) {
    n /= static_cast<std::int64_t>(p);
    ++v;
  }
  return v;
}

OkElement WeightPoint::gamma_image(RingParams ring) const {
  if (ring.p() != p) throw Error(ErrorCode::MismatchedParams, "weight and ring primes differ");
  const OkElement gamma = OkElement::from_int(ring, 1 + static_cast<std::int64_t>(p));
  const OkElement power = gamma.pow(static_cast<std::uint64_t>(k < 0 ? -k : k));
  return k < 0 ? power.inverse() : power;
}

bool ClassicalPointSet::admits(std::int64_t k) const {
  if (Rational(k) <= alpha + 1 || k > bound) return false;
  if (k == k0) return true;
  const int need = kind == DiskKind::Open ? m : m - 1;
  return integer_valuation(k - k0, p) >= need;
}

ClassicalPointSet classical_points(std::uint32_t p, std::int64_t k0, int m, const Rational& alpha,
                                   std::int64_t bound, DiskKind kind) {
  if (!is_prime(p) || p < 3) throw Error(ErrorCode::InvalidParams, "p must be an odd prime");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "radius exponent must be >= 1");
  if (alpha < 0) throw Error(ErrorCode::InvalidArgument, "slope must be non-negative");
  if (bound < k0) throw Error(ErrorCode::InvalidArgument, "bound must be >= k0");
  ClassicalPointSet set{p, k0, m, alpha, bound, kind, {}};
  const int need = kind == DiskKind::Open ? m : m - 1;
  std::int64_t step = 1;
  for (int i = 0; i < need; ++i) step *= p;
  // Smallest k = k0 (mod step) with k > alpha + 1.
  const auto floor_alpha = alpha.numerator() / alpha.denominator();
  const std::int64_t lowest = floor_alpha + 2;
  std::int64_t k = k0 - ((k0 - lowest) / step) * step;
  while (k < lowest) k += step;
  while (k - step >= lowest) k -= step;
  for (; k <= bound; k += step) set.points.push_back(k);
  if (set.points.empty()) {
    throw Error(ErrorCode::EmptyWindow, "no classical weight in (" + std::to_string(lowest - 1) +
                                            ", " + std::to_string(bound) + "] near " +
                                            std::to_string(k0));
  }
  return set;
}

Rational slope_from_up_eigenvalue(const OkElement& a_p) {
  if (a_p.is_zero()) {
    throw Error(ErrorCode::ZeroAtPrecision,
                "a_p vanishes modulo pi^" + std::to_string(a_p.precision()) + "; slope unbounded");
  }
  return a_p.valuation();
}

CharacterTag neben_decompose(std::uint32_t p, std::int64_t k, std::int64_t i, std::string tame) {
  if (i < 0 || i > static_cast<std::int64_t>(p) - 1) {
    throw Error(ErrorCode::InvalidArgument, "i must lie in [0, p-1]");
  }
  const auto q = static_cast<std::int64_t>(p) - 1;
  return {((i - k) % q + q) % q, std::move(tame)};
}

OkElement weight_coordinate(RingParams ring, std::int64_t k, const SeriesChart& chart) {
  if (chart.scale == 0) throw Error(ErrorCode::InvalidArgument, "chart scale is zero");
  const Rational u(k - chart.center, chart.scale);
  if (u.numerator() != 0 && u.denominator() % ring.p() == 0) {
    throw Error(ErrorCode::OutsideDomain, "weight " + std::to_string(k) +
                                              " lies outside the unit disk of the chart");
  }
  const OkElement x = OkElement::from_rational(ring, u);
  if (x.valuation_digits() == 0) {
    throw Error(ErrorCode::OutsideDomain,
                "weight " + std::to_string(k) + " maps to a unit; the point must lie in the open disk");
  }
  return x;
}

}  // namespace pf
