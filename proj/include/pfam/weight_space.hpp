#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfam/formal_series.hpp"

namespace pf {

/// Character epsilon_N * omega^exponent: a tame tag plus an exponent mod p-1.
struct CharacterTag {
  std::int64_t exponent = 0;
  std::string tame = "eps_N";
  friend bool operator==(const CharacterTag&, const CharacterTag&) = default;
};

/// Accessible weight (chi, k); chi is recorded by its residue class i mod p-1.
struct WeightPoint {
  std::uint32_t p = 3;
  std::int64_t neben_index = 0;
  std::string tame = "eps_N";
  std::int64_t k = 2;

  /// The image (1+p)^k of the topological generator.
  OkElement gamma_image(RingParams ring) const;
};

enum class DiskKind { Open, Closed };

/// Integers k <= bound with k > alpha + 1 and k in the disk around k0.
///
/// Open (the default): val(k - k0) > m - 1, i.e. k = k0 mod p^m.
/// Closed: val(k - k0) >= m - 1, the closed disk of the same radius p^-(m-1).
struct ClassicalPointSet {
  std::uint32_t p = 3;
  std::int64_t k0 = 2;
  int m = 1;
  Rational alpha{0};
  std::int64_t bound = 0;
  DiskKind kind = DiskKind::Open;
  std::vector<std::int64_t> points;

  /// The defining predicate, applied to any integer.
  bool admits(std::int64_t k) const;
};

/// Throws InvalidArgument for m < 1, alpha < 0 or bound < k0, and
/// EmptyWindow when no integer qualifies.
ClassicalPointSet classical_points(std::uint32_t p, std::int64_t k0, int m, const Rational& alpha,
                                   std::int64_t bound, DiskKind kind = DiskKind::Open);

/// val(a_p); ZeroAtPrecision when a_p vanishes at its precision.
Rational slope_from_up_eigenvalue(const OkElement& a_p);

/// epsilon_N * omega^(i - k): exponent reduced into [0, p-1).
CharacterTag neben_decompose(std::uint32_t p, std::int64_t k, std::int64_t i,
                             std::string tame = "eps_N");

/// u_k = (k - k0) / e0 as an element of O_K. Throws OutsideDomain unless
/// the quotient is integral with positive valuation.
OkElement weight_coordinate(RingParams ring, std::int64_t k, const SeriesChart& chart);

/// p-adic valuation of a nonzero integer.
int integer_valuation(std::int64_t n, std::uint32_t p);

}  // namespace pf
