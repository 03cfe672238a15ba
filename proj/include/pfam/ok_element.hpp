#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "pfam/errors.hpp"
#include "pfam/ring_params.hpp"

namespace pf {

/// Finite-precision element of O_K, known modulo pi^precision().
///
/// Components are kept canonical: component j is reduced modulo
/// p^{n_j} where n_j counts the digit positions below the precision that
/// belong to it, so two elements are equal iff their pi-adic digits agree.
class OkElement {
 public:
  OkElement() = default;  // zero in the default ring

  static OkElement zero(RingParams ring);
  static OkElement one(RingParams ring);
  static OkElement from_int(RingParams ring, std::int64_t value);
  /// Embeds a rational whose denominator is prime to p.
  static OkElement from_rational(RingParams ring, const Rational& value);
  /// Builds sum d_t pi^t from canonical digits (each in [0, p)).
  static OkElement from_digits(RingParams ring, std::span<const std::uint32_t> digits,
                               int precision);
  static OkElement uniformizer(RingParams ring);
  /// pi^k; zero at precision when k >= N.
  static OkElement uniformizer_power(RingParams ring, int k);

  RingParams ring() const noexcept { return ring_; }
  int precision() const noexcept { return prec_; }

  /// True when every digit below the precision vanishes.
  bool is_zero() const noexcept;
  /// Valuation in pi-adic digits; returns precision() for an inexact zero.
  int valuation_digits() const noexcept;
  /// Valuation normalised so that val(p) = 1.
  Rational valuation() const noexcept;
  bool is_unit() const noexcept { return valuation_digits() == 0 && prec_ > 0; }

  std::vector<std::uint32_t> digits() const;
  std::uint32_t residue() const noexcept;
  std::uint64_t component(std::uint32_t j) const noexcept { return c_[j]; }

  /// Lowers the precision (never raises it).
  OkElement with_precision(int prec) const;
  /// Multiplies by pi^k.
  OkElement shift_up(int k) const;
  /// Exact division by pi^k; throws NotIntegral unless valuation >= k.
  OkElement shift_down(int k) const;

  OkElement inverse() const;
  OkElement pow(std::uint64_t n) const;

  OkElement operator-() const;
  OkElement& operator+=(const OkElement& rhs);
  OkElement& operator-=(const OkElement& rhs);
  OkElement& operator*=(const OkElement& rhs);
  friend OkElement operator+(OkElement a, const OkElement& b) { return a += b; }
  friend OkElement operator-(OkElement a, const OkElement& b) { return a -= b; }
  friend OkElement operator*(OkElement a, const OkElement& b) { return a *= b; }

  /// Digit-wise comparison at the shared precision.
  friend bool operator==(const OkElement& a, const OkElement& b);
  friend bool operator!=(const OkElement& a, const OkElement& b) { return !(a == b); }

  /// Raw construction from components modulo p^M; canonicalises.
  static OkElement from_components(RingParams ring, std::span<const std::uint64_t> comps,
                                   int precision);

 private:
  void canonicalize() noexcept;
  void check_same_ring(const OkElement& rhs) const;

  RingParams ring_{};
  int prec_ = 0;
  std::array<std::uint64_t, kMaxRamification> c_{};
};

/// Teichmueller representative of the residue class a mod pi.
OkElement teichmuller(RingParams ring, std::int64_t a);

/// p^mu as pi^(e * mu); throws DenominatorMismatch if e * mu is not an integer.
OkElement pow_p_rational(RingParams ring, const Rational& mu);

/// Element of K = Frac(O_K): numerator / pi^denominator_exponent.
///
/// Normalised so that the denominator exponent is zero or the numerator is
/// a unit (or an inexact zero).
class KElement {
 public:
  KElement() = default;
  KElement(OkElement integral);  // NOLINT(google-explicit-constructor)
  KElement(OkElement numerator, int denominator_exponent);

  static KElement from_rational(RingParams ring, const Rational& value);

  RingParams ring() const noexcept { return num_.ring(); }
  const OkElement& numerator() const noexcept { return num_; }
  int denominator_exponent() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_integral() const noexcept { return den_ == 0; }
  /// Valuation in pi-adic digits (may be negative).
  int valuation_digits() const noexcept { return num_.valuation_digits() - den_; }
  /// The value is known modulo pi^absolute_precision().
  int absolute_precision() const noexcept { return num_.precision() - den_; }
  /// Number of significant digits still carried by the numerator.
  int relative_precision() const noexcept { return num_.precision() - num_.valuation_digits(); }

  /// Throws NotIntegral when the value has a denominator.
  OkElement to_integral() const;

  KElement operator-() const { return {-num_, den_}; }
  friend KElement operator+(const KElement& a, const KElement& b);
  friend KElement operator-(const KElement& a, const KElement& b) { return a + (-b); }
  friend KElement operator*(const KElement& a, const KElement& b);
  /// Throws PrecisionExhausted when the divisor is an inexact zero.
  friend KElement operator/(const KElement& a, const KElement& b);
  friend bool operator==(const KElement& a, const KElement& b);

 private:
  void normalize();

  OkElement num_{};
  int den_ = 0;
};

}  // namespace pf
