#include "pfam/weierstrass.hpp"

#include <string>

namespace pf {

namespace {

void require_nonzero(const FormalSeries& f) {
  if (f.is_zero()) {
    throw Error(ErrorCode::ZeroAtPrecision,
                "series vanishes at precision " + std::to_string(f.precision()));
  }
}

}  // namespace

Rational mu_invariant(const FormalSeries& f) {
  require_nonzero(f);
  return {f.valuation_digits(), static_cast<std::int64_t>(f.ring().e())};
}

int lambda_invariant(const FormalSeries& f) {
  require_nonzero(f);
  return f.lambda_index();
}

FormalSeries WeierstrassFactorization::product() const {
  const OkElement scale = pow_p_rational(distinguished.ring(), mu);
  return scale * (distinguished * unit);
}

WeierstrassDivision weierstrass_divide(const FormalSeries& h, const FormalSeries& g) {
  require_nonzero(g);
  if (g.valuation_digits() != 0) {
    throw Error(ErrorCode::NonUnit, "Weierstrass division needs a divisor with mu = 0");
  }
  const int d = h.truncation();
  const int lambda = g.lambda_index();
  if (lambda >= d) {
    throw Error(ErrorCode::InsufficientTruncation,
                "lambda = " + std::to_string(lambda) + " is not below truncation " +
                    std::to_string(d));
  }
  if (lambda == 0) {
    FormalSeries q = h * g.inverse();
    q.set_polynomial(false);
    FormalSeries r = FormalSeries(h.ring(), d, h.variable()).with_precision(q.precision());
    r.set_polynomial(true);
    return {std::move(q), std::move(r)};
  }
  const int wide = d + lambda;
  // g = low + U^lambda * high, low with coefficients in the maximal ideal.
  const FormalSeries low = g.truncated(lambda).padded(wide);
  const FormalSeries high = g.padded(wide).drop_low_terms(lambda).truncated(d);
  const FormalSeries high_inv = high.inverse().set_polynomial(false);
  const FormalSeries h_high = h.padded(wide).drop_low_terms(lambda).truncated(d);

  auto step = [&](const FormalSeries& q) {
    const FormalSeries qb = (q.padded(wide) * low).drop_low_terms(lambda).truncated(d);
    FormalSeries next = high_inv * (h_high - qb);
    next.set_polynomial(false);
    return next;
  };

  FormalSeries q = high_inv * h_high;
  q.set_polynomial(false);
  const int max_iter = h.precision() + g.precision() + 8;
  bool converged = false;
  for (int iter = 0; iter < max_iter && !converged; ++iter) {
    FormalSeries next = step(q);
    converged = next == q && next.precision() == q.precision();
    q = std::move(next);
  }
  if (!converged) {
    throw Error(ErrorCode::PrecisionExhausted, "Weierstrass division did not reach a fixed point");
  }

  FormalSeries rem = h - q * g.padded(d).set_polynomial(false);
  std::vector<OkElement> low_coeffs;
  for (int i = 0; i < lambda; ++i) low_coeffs.push_back(rem.coefficient(i));
  FormalSeries r = FormalSeries::from_coefficients(h.ring(), d, low_coeffs, true, h.variable());
  r = r.with_precision(rem.precision());
  r.set_chart(h.chart());
  q.set_chart(h.chart());
  return {std::move(q), std::move(r)};
}

WeierstrassFactorization weierstrass_prep(const FormalSeries& f) {
  if (!f.is_integral()) {
    throw Error(ErrorCode::NotIntegral, "Weierstrass preparation needs an integral series");
  }
  require_nonzero(f);
  const int v = f.valuation_digits();
  const FormalSeries g = f.shift_pi(-v);
  const int lambda = g.lambda_index();
  const int d = f.truncation();
  if (lambda >= d) {
    throw Error(ErrorCode::InsufficientTruncation,
                "lambda = " + std::to_string(lambda) + " needs truncation above " +
                    std::to_string(d));
  }
  WeierstrassFactorization out;
  out.mu = Rational(v, static_cast<std::int64_t>(f.ring().e()));
  out.lambda = lambda;
  if (lambda == 0) {
    out.distinguished =
        FormalSeries::constant(OkElement::one(f.ring()).with_precision(g.precision()), d, f.variable());
    out.unit = g;
    out.unit.set_polynomial(f.is_polynomial());
  } else {
    const FormalSeries u_lambda = FormalSeries::constant(OkElement::one(f.ring()), d, f.variable())
                                     .multiply_by_variable_power(lambda)
                                     .with_precision(g.precision());
    const WeierstrassDivision div = weierstrass_divide(u_lambda, g);
    out.distinguished = u_lambda - div.remainder;
    out.distinguished.set_polynomial(true);
    out.unit = div.quotient.inverse();
    out.unit.set_polynomial(false);
  }
  out.distinguished.set_chart(f.chart());
  out.unit.set_chart(f.chart());
  return out;
}

}  // namespace pf
