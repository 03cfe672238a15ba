#pragma once

#include "pfam/formal_series.hpp"

namespace pf {

/// f = p^mu * distinguished * unit.
struct WeierstrassFactorization {
  Rational mu;
  int lambda = 0;
  /// Monic polynomial of degree lambda, lower coefficients of positive valuation.
  FormalSeries distinguished;
  /// Constant term of valuation zero.
  FormalSeries unit;

  /// p^mu * distinguished * unit, for round-trip checks.
  FormalSeries product() const;
};

/// mu = min_i val(c_i). Throws ZeroAtPrecision for an inexact zero.
Rational mu_invariant(const FormalSeries& f);
/// Least index attaining the minimal valuation.
int lambda_invariant(const FormalSeries& f);

/// Weierstrass preparation of an integral series.
///
/// The truncated series is identified with the polynomial it stores (zero
/// tail), so p^mu * P * unit reproduces f exactly modulo (pi^N, U^d). The
/// distinguished factor is found by Weierstrass division of U^lambda by
/// f / p^mu, iterated until the update is zero at precision.
WeierstrassFactorization weierstrass_prep(const FormalSeries& f);

struct WeierstrassDivision {
  FormalSeries quotient;
  /// Polynomial of degree < lambda(divisor).
  FormalSeries remainder;
};

/// h = q g + r with deg r < lambda(g), for g with mu(g) = 0.
///
/// Throws NonUnit when g has positive mu and InsufficientTruncation when
/// lambda(g) is not below the truncation of h.
WeierstrassDivision weierstrass_divide(const FormalSeries& h, const FormalSeries& g);

}  // namespace pf
