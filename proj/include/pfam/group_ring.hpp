#pragma once

#include <vector>

#include "pfam/formal_series.hpp"

namespace pf {

/// Element sum_a x_a delta_a of O_K[Delta], Delta = (Z/pZ)^x, indexed by
/// a = 1..p-1 (slot a-1).
class GroupRingElement {
 public:
  explicit GroupRingElement(RingParams ring);
  static GroupRingElement delta(RingParams ring, std::uint32_t a);
  static GroupRingElement one(RingParams ring) { return delta(ring, 1); }

  RingParams ring() const noexcept { return ring_; }
  const OkElement& operator[](std::uint32_t a) const { return c_.at(a - 1); }
  OkElement& operator[](std::uint32_t a) { return c_.at(a - 1); }

  friend GroupRingElement operator+(const GroupRingElement& x, const GroupRingElement& y);
  friend GroupRingElement operator-(const GroupRingElement& x, const GroupRingElement& y);
  friend GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);
  friend GroupRingElement operator*(const OkElement& s, const GroupRingElement& x);
  friend bool operator==(const GroupRingElement& x, const GroupRingElement& y);

 private:
  RingParams ring_;
  std::vector<OkElement> c_;
};

/// e_j = (p-1)^-1 sum_a omega(a)^-j delta_a, for the character eta = omega^j.
GroupRingElement idempotent(RingParams ring, std::uint32_t j);
/// e_j * x.
GroupRingElement idempotent_decompose(const GroupRingElement& x, std::uint32_t j);

/// omega(a)^j.
OkElement character_value(RingParams ring, std::uint32_t a, std::int64_t j);

/// x = sum_a delta_a x_a(S) in O_K[Delta][[S]] maps to the p-1 series
/// sum_a omega(a)^j x_a(S), j = 0..p-2. Input slot a-1 holds x_a.
std::vector<FormalSeries> cyclotomic_split(const std::vector<FormalSeries>& x);
/// Inverse of cyclotomic_split.
std::vector<FormalSeries> cyclotomic_recombine(const std::vector<FormalSeries>& components);

/// f((1+S)^-1 - 1), truncated at the series' own truncation.
FormalSeries iota_involution(const FormalSeries& f);

}  // namespace pf
