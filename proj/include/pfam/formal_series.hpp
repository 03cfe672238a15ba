#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "pfam/ok_element.hpp"

namespace pf {

inline constexpr int kDefaultTruncation = 32;

enum class Variable { U, S };

/// Metadata identifying U = (T - center) / scale on weight space.
struct SeriesChart {
  std::int64_t center = 0;
  std::int64_t scale = 1;
  friend bool operator==(const SeriesChart&, const SeriesChart&) = default;
};

/// Value of a series at a point together with the truncation-tail bound.
struct Evaluation {
  OkElement value;
  /// Valuation (in pi-digits) guaranteed for the omitted tail; -1 when the
  /// series is an exact polynomial and there is no tail.
  int tail_bound_digits = -1;
};

/// Truncated power series in one variable over O_K (or over K, with a
/// pi-power denominator during interpolation).
///
/// Coefficients are known modulo U^truncation() and, uniformly, modulo
/// pi^precision() (numerator precision). Storage is component-major: for each
/// of the e components of O_K a contiguous array of truncation() residues.
class FormalSeries {
 public:
  FormalSeries() : FormalSeries(RingParams{}, kDefaultTruncation) {}
  FormalSeries(RingParams ring, int truncation, Variable var = Variable::U);

  static FormalSeries constant(const OkElement& c, int truncation, Variable var = Variable::U);
  /// The series U (or S); an exact polynomial.
  static FormalSeries variable(RingParams ring, int truncation, Variable var = Variable::U);
  static FormalSeries from_coefficients(RingParams ring, int truncation,
                                        std::span<const OkElement> coeffs, bool polynomial,
                                        Variable var = Variable::U);
  static FormalSeries from_integers(RingParams ring, int truncation,
                                    std::initializer_list<std::int64_t> coeffs,
                                    bool polynomial = true, Variable var = Variable::U);
  /// Coefficients in K; the result carries the common pi-power denominator.
  static FormalSeries from_k_coefficients(RingParams ring, int truncation,
                                          std::span<const KElement> coeffs, bool polynomial,
                                          Variable var = Variable::U);

  RingParams ring() const noexcept { return ring_; }
  int truncation() const noexcept { return trunc_; }
  int precision() const noexcept { return prec_; }
  Variable variable() const noexcept { return var_; }
  bool is_polynomial() const noexcept { return poly_; }
  int denominator_exponent() const noexcept { return den_; }
  bool is_integral() const noexcept { return den_ == 0; }
  const SeriesChart& chart() const noexcept { return chart_; }

  FormalSeries& set_chart(const SeriesChart& chart) {
    chart_ = chart;
    return *this;
  }
  FormalSeries& set_variable(Variable var) {
    var_ = var;
    return *this;
  }
  /// Declares (or revokes) that all coefficients past the truncation vanish.
  FormalSeries& set_polynomial(bool poly) {
    poly_ = poly;
    return *this;
  }

  /// Numerator coefficient; equals the coefficient when the series is integral.
  OkElement coefficient(int i) const;
  KElement coefficient_k(int i) const;
  /// Replaces coefficient i; the series precision drops to the element's if lower.
  void set_coefficient(int i, const OkElement& value);

  std::span<const std::uint64_t> component(std::uint32_t j) const;

  bool is_zero() const noexcept;
  /// Minimum coefficient valuation in pi-digits, denominator included;
  /// precision() - denominator_exponent() for an inexact zero.
  int valuation_digits() const noexcept;
  /// First index attaining valuation_digits(); -1 for an inexact zero.
  int lambda_index() const noexcept;
  /// Highest index with a nonzero coefficient; -1 for an inexact zero.
  int degree() const noexcept;

  FormalSeries with_precision(int prec) const;
  /// Drops coefficients at and past d (d <= truncation()).
  FormalSeries truncated(int d) const;
  /// Extends to truncation d with an explicit zero tail; the result is a polynomial.
  FormalSeries padded(int d) const;

  /// Multiplies every coefficient by pi^k (k may be negative: exact division).
  FormalSeries shift_pi(int k) const;
  /// f * U^k, truncated.
  FormalSeries multiply_by_variable_power(int k) const;
  /// (f - (f mod U^k)) / U^k.
  FormalSeries drop_low_terms(int k) const;

  FormalSeries operator-() const;
  FormalSeries& operator+=(const FormalSeries& rhs);
  FormalSeries& operator-=(const FormalSeries& rhs);
  FormalSeries& operator*=(const FormalSeries& rhs);
  FormalSeries& operator*=(const OkElement& c);
  friend FormalSeries operator+(FormalSeries a, const FormalSeries& b) { return a += b; }
  friend FormalSeries operator-(FormalSeries a, const FormalSeries& b) { return a -= b; }
  friend FormalSeries operator*(FormalSeries a, const FormalSeries& b) { return a *= b; }
  friend FormalSeries operator*(FormalSeries a, const OkElement& c) { return a *= c; }
  friend FormalSeries operator*(const OkElement& c, FormalSeries a) { return a *= c; }

  /// Coefficient-wise comparison at the shared precision; truncations must agree.
  friend bool operator==(const FormalSeries& a, const FormalSeries& b);
  friend bool operator!=(const FormalSeries& a, const FormalSeries& b) { return !(a == b); }

  /// Throws NonUnitConstantTerm unless the constant term is a unit.
  FormalSeries inverse() const;

  /// Ring homomorphism to O_K, U -> u. Requires val(u) > 0 unless the series
  /// is a polynomial (OutsideDomain otherwise).
  Evaluation evaluate(const OkElement& u) const;
  /// Same, allowing a pi-power denominator on the series.
  KElement evaluate_k(const OkElement& u) const;

  /// f(inner); inner must have zero constant term and the same truncation.
  FormalSeries compose(const FormalSeries& inner) const;
  /// g(U) = f(c U).
  FormalSeries rescale(const OkElement& c) const;

 private:
  void canonicalize();
  void normalize_denominator();
  void check_compatible(const FormalSeries& rhs) const;
  std::uint64_t* comp(std::uint32_t j) { return data_.data() + static_cast<std::size_t>(j) * trunc_; }
  const std::uint64_t* comp(std::uint32_t j) const {
    return data_.data() + static_cast<std::size_t>(j) * trunc_;
  }
  int numerator_valuation() const noexcept;

  RingParams ring_;
  int trunc_ = 0;
  int prec_ = 0;
  int den_ = 0;
  bool poly_ = false;
  Variable var_ = Variable::U;
  SeriesChart chart_{};
  std::vector<std::uint64_t> data_;
};

/// Result of power_bounded_check: whether every coefficient is integral and
/// the largest pi-power denominator found (0 when integral).
struct IntegralityReport {
  bool power_bounded = true;
  int max_denominator_digits = 0;
  std::vector<int> offending_indices;
};

IntegralityReport power_bounded_check(const FormalSeries& f);

/// Reduction modulo P_k = (U - u_k): the same map as evaluate, named for its
/// role as the quotient A/P_k -> O_K.
OkElement reduce_mod_Pk(const FormalSeries& f, const OkElement& u_k);

FormalSeries rescale(const FormalSeries& f, const OkElement& c);
Evaluation evaluate(const FormalSeries& f, const OkElement& u);

}  // namespace pf
