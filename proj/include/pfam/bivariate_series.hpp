#pragma once

#include <vector>

#include "pfam/formal_series.hpp"

namespace pf {

/// Truncated element of O_K[[U, S]], stored as a series in S whose
/// coefficients are series in U (row j is the coefficient of S^j).
class BivariateSeries {
 public:
  BivariateSeries() : BivariateSeries(RingParams{}, kDefaultTruncation, kDefaultTruncation) {}
  BivariateSeries(RingParams ring, int trunc_u, int trunc_s);
  /// rows[j] is the U-series multiplying S^j; missing rows are zero.
  static BivariateSeries from_rows(std::vector<FormalSeries> rows, int trunc_s,
                                   bool polynomial_in_s = false);

  RingParams ring() const noexcept { return ring_; }
  int truncation_u() const noexcept { return trunc_u_; }
  int truncation_s() const noexcept { return static_cast<int>(rows_.size()); }
  int precision() const noexcept;
  bool is_polynomial_in_s() const noexcept { return poly_s_; }
  BivariateSeries& set_polynomial_in_s(bool poly) {
    poly_s_ = poly;
    return *this;
  }

  const FormalSeries& row(int j) const { return rows_.at(static_cast<std::size_t>(j)); }
  void set_row(int j, FormalSeries f);
  OkElement coefficient(int i, int j) const { return row(j).coefficient(i); }
  void set_coefficient(int i, int j, const OkElement& value);

  bool is_zero() const noexcept;

  BivariateSeries operator-() const;
  BivariateSeries& operator+=(const BivariateSeries& rhs);
  BivariateSeries& operator-=(const BivariateSeries& rhs);
  friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
  friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) { return a -= b; }
  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b);
  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b);

  /// U -> u: a series in S over O_K. Every row must admit evaluation at u.
  FormalSeries substitute_u(const OkElement& u) const;

  /// First S-index whose U-series has a unit constant term, i.e. the
  /// S-Weierstrass degree over O_K[[U]]; -1 when every S-coefficient lies
  /// in the maximal ideal (pi, U).
  int s_weierstrass_degree() const;

 private:
  void check_compatible(const BivariateSeries& rhs) const;

  RingParams ring_;
  int trunc_u_ = 0;
  bool poly_s_ = false;
  std::vector<FormalSeries> rows_;
};

}  // namespace pf
