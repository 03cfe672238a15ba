#include "pfam/formal_series.hpp"

#include <algorithm>
#include <string>

#include "pfam/detail/modarith.hpp"
#include "pfam/kernels.hpp"

namespace pf {

using detail::u64;

FormalSeries::FormalSeries(RingParams ring, int truncation, Variable var)
    : ring_(ring), trunc_(truncation), prec_(ring.precision()), var_(var) {
  if (truncation < 1) {
    throw Error(ErrorCode::InvalidArgument, "truncation order must be >= 1");
  }
  data_.assign(static_cast<std::size_t>(ring.e()) * truncation, 0);
}

FormalSeries FormalSeries::constant(const OkElement& c, int truncation, Variable var) {
  FormalSeries f(c.ring(), truncation, var);
  f.set_coefficient(0, c);
  f.poly_ = true;
  return f;
}

FormalSeries FormalSeries::variable(RingParams ring, int truncation, Variable var) {
  FormalSeries f(ring, truncation, var);
  if (truncation > 1) f.set_coefficient(1, OkElement::one(ring));
  f.poly_ = truncation > 1;
  return f;
}

FormalSeries FormalSeries::from_coefficients(RingParams ring, int truncation,
                                             std::span<const OkElement> coeffs, bool polynomial,
                                             Variable var) {
  FormalSeries f(ring, truncation, var);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (static_cast<int>(i) >= truncation) {
      if (polynomial && !coeffs[i].is_zero()) {
        throw Error(ErrorCode::InsufficientTruncation,
                    "polynomial of degree " + std::to_string(i) + " does not fit truncation " +
                        std::to_string(truncation));
      }
      continue;
    }
    f.set_coefficient(static_cast<int>(i), coeffs[i]);
  }
  f.poly_ = polynomial;
  return f;
}

FormalSeries FormalSeries::from_integers(RingParams ring, int truncation,
                                         std::initializer_list<std::int64_t> coeffs,
                                         bool polynomial, Variable var) {
  std::vector<OkElement> elems;
  elems.reserve(coeffs.size());
  for (auto c : coeffs) elems.push_back(OkElement::from_int(ring, c));
  return from_coefficients(ring, truncation, elems, polynomial, var);
}

FormalSeries FormalSeries::from_k_coefficients(RingParams ring, int truncation,
                                               std::span<const KElement> coeffs, bool polynomial,
                                               Variable var) {
  int den = 0;
  for (const auto& c : coeffs) den = std::max(den, c.denominator_exponent());
  std::vector<OkElement> nums;
  nums.reserve(coeffs.size());
  int prec = ring.precision();
  for (const auto& c : coeffs) {
    nums.push_back(c.numerator().shift_up(den - c.denominator_exponent()));
    // Absolute precision of the coefficient, expressed on the common numerator.
    prec = std::min(prec, c.absolute_precision() + den);
  }
  FormalSeries f = from_coefficients(ring, truncation, nums, polynomial, var);
  f.prec_ = std::min(f.prec_, std::max(prec, 0));
  f.den_ = den;
  f.canonicalize();
  f.normalize_denominator();
  return f;
}

void FormalSeries::canonicalize() {
  const int top = ring_.component_digits();
  for (std::uint32_t j = 0; j < ring_.e(); ++j) {
    const int n = ring_.digits_in_component(j, prec_);
    if (n >= top) continue;
    const u64 pw = ring_.p_power(n);
    u64* c = comp(j);
    for (int i = 0; i < trunc_; ++i) c[i] %= pw;
  }
}

int FormalSeries::numerator_valuation() const noexcept {
  int best = prec_;
  const std::uint32_t e = ring_.e();
  for (std::uint32_t j = 0; j < e; ++j) {
    const u64* c = comp(j);
    for (int i = 0; i < trunc_; ++i) {
      if (c[i] == 0) continue;
      const int v = static_cast<int>(j) + static_cast<int>(e) * detail::valuation_u64(c[i], ring_.p());
      best = std::min(best, v);
    }
  }
  return best;
}

void FormalSeries::normalize_denominator() {
  if (den_ == 0) return;
  const int s = std::min(den_, numerator_valuation());
  if (s <= 0) return;
  FormalSeries g = shift_pi(-s);
  g.den_ -= s;
  *this = std::move(g);
}

void FormalSeries::check_compatible(const FormalSeries& rhs) const {
  if (ring_ != rhs.ring_) {
    throw Error(ErrorCode::MismatchedParams,
                "series over " + ring_.describe() + " and " + rhs.ring_.describe());
  }
  if (trunc_ != rhs.trunc_) {
    throw Error(ErrorCode::MismatchedParams, "truncation orders " + std::to_string(trunc_) +
                                                 " and " + std::to_string(rhs.trunc_) + " differ");
  }
}

OkElement FormalSeries::coefficient(int i) const {
  std::array<u64, kMaxRamification> c{};
  if (i >= 0 && i < trunc_) {
    for (std::uint32_t j = 0; j < ring_.e(); ++j) c[j] = comp(j)[i];
  }
  return OkElement::from_components(ring_, std::span<const u64>(c.data(), ring_.e()), prec_);
}

KElement FormalSeries::coefficient_k(int i) const { return {coefficient(i), den_}; }

void FormalSeries::set_coefficient(int i, const OkElement& value) {
  if (value.ring() != ring_) {
    throw Error(ErrorCode::MismatchedParams, "coefficient from a different ring");
  }
  if (i < 0 || i >= trunc_) {
    throw Error(ErrorCode::InsufficientTruncation,
                "index " + std::to_string(i) + " outside truncation " + std::to_string(trunc_));
  }
  for (std::uint32_t j = 0; j < ring_.e(); ++j) comp(j)[i] = value.component(j);
  if (value.precision() < prec_) {
    prec_ = value.precision();
    canonicalize();
  } else {
    // The element may carry digits the series precision cannot hold.
    const int top = ring_.component_digits();
    for (std::uint32_t j = 0; j < ring_.e(); ++j) {
      const int n = ring_.digits_in_component(j, prec_);
      if (n < top) comp(j)[i] %= ring_.p_power(n);
    }
  }
}

std::span<const u64> FormalSeries::component(std::uint32_t j) const {
  return {comp(j), static_cast<std::size_t>(trunc_)};
}

bool FormalSeries::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](u64 v) { return v == 0; });
}

int FormalSeries::valuation_digits() const noexcept { return numerator_valuation() - den_; }

int FormalSeries::lambda_index() const noexcept {
  if (is_zero()) return -1;
  const int v = numerator_valuation();
  for (int i = 0; i < trunc_; ++i) {
    if (coefficient(i).valuation_digits() == v && !coefficient(i).is_zero()) return i;
  }
  return -1;
}

int FormalSeries::degree() const noexcept {
  for (int i = trunc_ - 1; i >= 0; --i) {
    for (std::uint32_t j = 0; j < ring_.e(); ++j) {
      if (comp(j)[i] != 0) return i;
    }
  }
  return -1;
}

FormalSeries FormalSeries::with_precision(int prec) const {
  FormalSeries f = *this;
  f.prec_ = std::clamp(prec, 0, prec_);
  f.canonicalize();
  return f;
}

FormalSeries FormalSeries::truncated(int d) const {
  if (d > trunc_) {
    throw Error(ErrorCode::InsufficientTruncation,
                "cannot raise truncation " + std::to_string(trunc_) + " to " + std::to_string(d) +
                    " without declaring a zero tail");
  }
  FormalSeries f(ring_, d, var_);
  f.prec_ = prec_;
  f.den_ = den_;
  f.chart_ = chart_;
  for (std::uint32_t j = 0; j < ring_.e(); ++j) std::copy_n(comp(j), d, f.comp(j));
  f.poly_ = poly_ && degree() < d;
  return f;
}

FormalSeries FormalSeries::padded(int d) const {
  if (d <= trunc_) return truncated(d);
  FormalSeries f(ring_, d, var_);
  f.prec_ = prec_;
  f.den_ = den_;
  f.chart_ = chart_;
  for (std::uint32_t j = 0; j < ring_.e(); ++j) std::copy_n(comp(j), trunc_, f.comp(j));
  f.poly_ = true;
  return f;
}

FormalSeries FormalSeries::shift_pi(int k) const {
  FormalSeries f = *this;
  if (k == 0) return f;
  if (k > 0) {
    const int absorbed = std::min(f.den_, k);
    f.den_ -= absorbed;
    k -= absorbed;
    if (k == 0) return f;
    const int e = static_cast<int>(ring_.e());
    const int top = ring_.component_digits();
    const u64 m = ring_.modulus();
    std::fill(f.data_.begin(), f.data_.end(), 0);
    for (int j = 0; j < e; ++j) {
      const int target = (j + k % e) % e;
      const int extra = k / e + ((j + k % e) >= e ? 1 : 0);
      if (extra > top) continue;
      kernels::scale(ring_.p_power(extra), component(static_cast<std::uint32_t>(j)),
                     {f.comp(static_cast<std::uint32_t>(target)), static_cast<std::size_t>(trunc_)},
                     m);
    }
    f.prec_ = std::min(prec_ + k, ring_.precision());
    f.canonicalize();
    return f;
  }
  // Division by pi^|k|: divide the numerator as far as it allows, the rest
  // becomes denominator.
  k = -k;
  const int s = std::min(k, numerator_valuation());
  f.den_ += k - s;
  if (s == 0) return f;
  const int e = static_cast<int>(ring_.e());
  std::fill(f.data_.begin(), f.data_.end(), 0);
  for (int j = 0; j < e; ++j) {
    const int target = j - s % e >= 0 ? j - s % e : j - s % e + e;
    const int drop = s / e + (j - s % e < 0 ? 1 : 0);
    const u64 pw = ring_.p_power(drop);
    const u64* src = comp(static_cast<std::uint32_t>(j));
    u64* dst = f.comp(static_cast<std::uint32_t>(target));
    for (int i = 0; i < trunc_; ++i) dst[i] = src[i] / pw;
  }
  f.prec_ = prec_ - s;
  f.canonicalize();
  return f;
}

FormalSeries FormalSeries::multiply_by_variable_power(int k) const {
  FormalSeries f(ring_, trunc_, var_);
  f.prec_ = prec_;
  f.den_ = den_;
  f.chart_ = chart_;
  for (std::uint32_t j = 0; j < ring_.e(); ++j) {
    for (int i = 0; i + k < trunc_; ++i) f.comp(j)[i + k] = comp(j)[i];
  }
  f.poly_ = poly_ && (degree() + k < trunc_);
  return f;
}

FormalSeries FormalSeries::drop_low_terms(int k) const {
  FormalSeries f(ring_, trunc_, var_);
  f.prec_ = prec_;
  f.den_ = den_;
  f.chart_ = chart_;
  for (std::uint32_t j = 0; j < ring_.e(); ++j) {
    for (int i = k; i < trunc_; ++i) f.comp(j)[i - k] = comp(j)[i];
  }
  // The top k coefficients of the quotient come from unknown terms; they are
  // only known to vanish when the series is a polynomial.
  f.poly_ = poly_;
  return f;
}

FormalSeries FormalSeries::operator-() const {
  FormalSeries f = *this;
  const u64 m = ring_.modulus();
  for (auto& v : f.data_) v = detail::submod(0, v, m);
  f.canonicalize();
  return f;
}

FormalSeries& FormalSeries::operator+=(const FormalSeries& rhs) {
  check_compatible(rhs);
  if (den_ != rhs.den_) {
    const int common = std::max(den_, rhs.den_);
    FormalSeries a = *this;
    a.den_ = 0;
    a = a.shift_pi(common - den_);
    FormalSeries b = rhs;
    b.den_ = 0;
    b = b.shift_pi(common - rhs.den_);
    a += b;
    a.den_ = common;
    a.normalize_denominator();
    *this = std::move(a);
    return *this;
  }
  kernels::add(data_, rhs.data_, data_, ring_.modulus());
  prec_ = std::min(prec_, rhs.prec_);
  poly_ = poly_ && rhs.poly_;
  canonicalize();
  normalize_denominator();
  return *this;
}

FormalSeries& FormalSeries::operator-=(const FormalSeries& rhs) { return *this += -rhs; }

FormalSeries& FormalSeries::operator*=(const FormalSeries& rhs) {
  check_compatible(rhs);
  const int va = numerator_valuation();
  const int vb = rhs.numerator_valuation();
  const int new_prec = std::min({prec_ + vb, rhs.prec_ + va, ring_.precision()});
  const bool poly = poly_ && rhs.poly_ && (degree() + rhs.degree() < trunc_);
  const int e = static_cast<int>(ring_.e());
  const u64 m = ring_.modulus();
  std::vector<u64> out(data_.size(), 0);
  if (e == 1) {
    kernels::conv(component(0), rhs.component(0), out, m);
  } else {
    std::vector<u64> tmp(static_cast<std::size_t>(trunc_));
    for (int i = 0; i < e; ++i) {
      for (int j = 0; j < e; ++j) {
        kernels::conv(component(static_cast<std::uint32_t>(i)),
                      rhs.component(static_cast<std::uint32_t>(j)), tmp, m);
        int slot = i + j;
        u64 factor = 1;
        if (slot >= e) {
          slot -= e;
          factor = ring_.p();
        }
        kernels::axpy(factor, tmp,
                      {out.data() + static_cast<std::size_t>(slot) * trunc_,
                       static_cast<std::size_t>(trunc_)},
                      m);
      }
    }
  }
  data_ = std::move(out);
  prec_ = new_prec;
  den_ += rhs.den_;
  poly_ = poly;
  canonicalize();
  normalize_denominator();
  return *this;
}

FormalSeries& FormalSeries::operator*=(const OkElement& c) {
  return *this *= FormalSeries::constant(c, trunc_, var_);
}

bool operator==(const FormalSeries& a, const FormalSeries& b) {
  a.check_compatible(b);
  return (a - b).is_zero();
}

FormalSeries FormalSeries::inverse() const {
  if (den_ != 0) throw Error(ErrorCode::NotIntegral, "inverse of a non-integral series");
  const OkElement c0 = coefficient(0);
  if (!c0.is_unit()) {
    throw Error(ErrorCode::NonUnitConstantTerm, "constant term has positive valuation");
  }
  FormalSeries g = constant(c0.inverse(), trunc_, var_);
  g.chart_ = chart_;
  const FormalSeries two = constant(OkElement::from_int(ring_, 2), trunc_, var_);
  // Newton iteration: the error 1 - f g squares each step, in U and in pi.
  for (int iter = 0; iter < 2 * (trunc_ + ring_.precision()) + 8; ++iter) {
    FormalSeries next = g * (two - *this * g);
    next = next.with_precision(prec_);
    next.poly_ = false;
    if (next == g) {
      g = next;
      break;
    }
    g = next;
  }
  g.poly_ = poly_ && degree() == 0;
  return g.with_precision(prec_);
}

Evaluation FormalSeries::evaluate(const OkElement& u) const {
  if (den_ != 0) {
    throw Error(ErrorCode::NotIntegral, "evaluate on a series with denominator; use evaluate_k");
  }
  if (u.ring() != ring_) throw Error(ErrorCode::MismatchedParams, "evaluation point ring");
  const int vu = u.valuation_digits();
  if (!poly_ && vu == 0 && u.precision() > 0) {
    throw Error(ErrorCode::OutsideDomain,
                "series with unknown tail evaluated at a unit; the point must lie in the open disk");
  }
  OkElement acc = coefficient(trunc_ - 1);
  for (int i = trunc_ - 2; i >= 0; --i) acc = acc * u + coefficient(i);
  Evaluation out;
  if (!poly_) {
    const long bound = static_cast<long>(vu) * trunc_;
    out.tail_bound_digits = static_cast<int>(std::min<long>(bound, ring_.precision()));
    acc = acc.with_precision(out.tail_bound_digits);
  }
  out.value = acc;
  return out;
}

KElement FormalSeries::evaluate_k(const OkElement& u) const {
  FormalSeries num = *this;
  num.den_ = 0;
  return {num.evaluate(u).value, den_};
}

FormalSeries FormalSeries::compose(const FormalSeries& inner) const {
  check_compatible(inner);
  if (!inner.coefficient(0).is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "composition needs an inner series with zero constant term");
  }
  FormalSeries acc = constant(coefficient(trunc_ - 1), trunc_, var_);
  for (int i = trunc_ - 2; i >= 0; --i) {
    acc = acc * inner + constant(coefficient(i), trunc_, var_);
  }
  acc.den_ = den_;
  acc.poly_ = poly_ && degree() <= 0;
  acc.chart_ = chart_;
  acc.normalize_denominator();
  return acc.with_precision(std::min(acc.prec_, prec_));
}

FormalSeries FormalSeries::rescale(const OkElement& c) const {
  if (c.ring() != ring_) throw Error(ErrorCode::MismatchedParams, "rescale factor ring");
  FormalSeries f = *this;
  OkElement power = OkElement::one(ring_);
  int prec = prec_;
  for (int i = 0; i < trunc_; ++i) {
    const OkElement term = coefficient(i) * power;
    prec = std::min(prec, term.precision());
    for (std::uint32_t j = 0; j < ring_.e(); ++j) f.comp(j)[i] = term.component(j);
    power *= c;
  }
  f.prec_ = prec;
  f.canonicalize();
  f.normalize_denominator();
  return f;
}

IntegralityReport power_bounded_check(const FormalSeries& f) {
  IntegralityReport report;
  if (f.is_integral()) return report;
  report.power_bounded = false;
  for (int i = 0; i < f.truncation(); ++i) {
    const KElement c = f.coefficient_k(i);
    if (c.is_zero()) continue;
    const int v = c.valuation_digits();
    if (v < 0) {
      report.offending_indices.push_back(i);
      report.max_denominator_digits = std::max(report.max_denominator_digits, -v);
    }
  }
  return report;
}

OkElement reduce_mod_Pk(const FormalSeries& f, const OkElement& u_k) {
  if (u_k.valuation_digits() == 0) {
    throw Error(ErrorCode::OutsideDomain, "P_k requires val(u_k) > 0");
  }
  return f.evaluate(u_k).value;
}

FormalSeries rescale(const FormalSeries& f, const OkElement& c) { return f.rescale(c); }

Evaluation evaluate(const FormalSeries& f, const OkElement& u) { return f.evaluate(u); }

}  // namespace pf
