#include "pfam/ok_element.hpp"

#include <algorithm>
#include <string>

#include "pfam/detail/modarith.hpp"

namespace pf {

using detail::addmod;
using detail::mulmod;
using detail::submod;
using detail::u64;

void OkElement::canonicalize() noexcept {
  const std::uint32_t e = ring_.e();
  for (std::uint32_t j = 0; j < kMaxRamification; ++j) {
    if (j >= e) {
      c_[j] = 0;
      continue;
    }
    const int n = ring_.digits_in_component(j, prec_);
    c_[j] = n == 0 ? 0 : c_[j] % ring_.p_power(n);
  }
}

void OkElement::check_same_ring(const OkElement& rhs) const {
  if (ring_ != rhs.ring_) {
    throw Error(ErrorCode::MismatchedParams,
                "operands live in " + ring_.describe() + " and " + rhs.ring_.describe());
  }
}

OkElement OkElement::from_components(RingParams ring, std::span<const std::uint64_t> comps,
                                     int precision) {
  OkElement x;
  x.ring_ = ring;
  x.prec_ = std::clamp(precision, 0, ring.precision());
  const u64 m = ring.modulus();
  for (std::size_t j = 0; j < comps.size() && j < ring.e(); ++j) x.c_[j] = comps[j] % m;
  x.canonicalize();
  return x;
}

OkElement OkElement::zero(RingParams ring) {
  OkElement x;
  x.ring_ = ring;
  x.prec_ = ring.precision();
  return x;
}

OkElement OkElement::one(RingParams ring) { return from_int(ring, 1); }

OkElement OkElement::from_int(RingParams ring, std::int64_t value) {
  OkElement x = zero(ring);
  x.c_[0] = detail::reduce_signed(value, ring.modulus());
  x.canonicalize();
  return x;
}

OkElement OkElement::from_rational(RingParams ring, const Rational& value) {
  const auto den = value.denominator();
  if (den % ring.p() == 0) {
    throw Error(ErrorCode::NotIntegral, "denominator divisible by p");
  }
  return from_int(ring, value.numerator()) * from_int(ring, den).inverse();
}

OkElement OkElement::from_digits(RingParams ring, std::span<const std::uint32_t> digits,
                                 int precision) {
  OkElement x = zero(ring);
  x.prec_ = std::clamp(precision, 0, ring.precision());
  const std::uint32_t e = ring.e();
  const u64 m = ring.modulus();
  for (std::size_t t = 0; t < digits.size() && static_cast<int>(t) < x.prec_; ++t) {
    if (digits[t] >= ring.p()) {
      throw Error(ErrorCode::InvalidArgument, "digit out of range: " + std::to_string(digits[t]));
    }
    const auto j = static_cast<std::uint32_t>(t % e);
    const int s = static_cast<int>(t / e);
    x.c_[j] = addmod(x.c_[j], mulmod(digits[t], ring.p_power(s), m), m);
  }
  x.canonicalize();
  return x;
}

OkElement OkElement::uniformizer(RingParams ring) { return uniformizer_power(ring, 1); }

OkElement OkElement::uniformizer_power(RingParams ring, int k) {
  OkElement x = zero(ring);
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "negative uniformizer power");
  if (k >= ring.precision()) return x;
  const int e = static_cast<int>(ring.e());
  x.c_[k % e] = ring.p_power(k / e);
  x.canonicalize();
  return x;
}

bool OkElement::is_zero() const noexcept {
  return std::all_of(c_.begin(), c_.end(), [](u64 v) { return v == 0; });
}

int OkElement::valuation_digits() const noexcept {
  int best = prec_;
  const std::uint32_t e = ring_.e();
  for (std::uint32_t j = 0; j < e; ++j) {
    if (c_[j] == 0) continue;
    const int v = static_cast<int>(j) + static_cast<int>(e) * detail::valuation_u64(c_[j], ring_.p());
    best = std::min(best, v);
  }
  return best;
}

Rational OkElement::valuation() const noexcept {
  return {valuation_digits(), static_cast<std::int64_t>(ring_.e())};
}

std::vector<std::uint32_t> OkElement::digits() const {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(prec_), 0);
  const std::uint32_t e = ring_.e();
  const u64 p = ring_.p();
  for (std::uint32_t j = 0; j < e; ++j) {
    u64 v = c_[j];
    for (std::size_t t = j; t < out.size() && v != 0; t += e) {
      out[t] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
  }
  return out;
}

std::uint32_t OkElement::residue() const noexcept {
  return prec_ == 0 ? 0 : static_cast<std::uint32_t>(c_[0] % ring_.p());
}

OkElement OkElement::with_precision(int prec) const {
  OkElement x = *this;
  x.prec_ = std::clamp(prec, 0, prec_);
  x.canonicalize();
  return x;
}

OkElement OkElement::shift_up(int k) const {
  if (k < 0) return shift_down(-k);
  if (k == 0) return *this;
  const int e = static_cast<int>(ring_.e());
  const u64 m = ring_.modulus();
  const int q = k / e;
  const int r = k % e;
  OkElement x = zero(ring_);
  const int top = ring_.component_digits();
  for (int j = 0; j < e; ++j) {
    const int target = (j + r) % e;
    const int extra = q + ((j + r) >= e ? 1 : 0);
    x.c_[target] = extra > top ? 0 : mulmod(c_[j], ring_.p_power(extra), m);
  }
  x.prec_ = std::min(prec_ + k, ring_.precision());
  x.canonicalize();
  return x;
}

OkElement OkElement::shift_down(int k) const {
  if (k < 0) return shift_up(-k);
  if (k == 0) return *this;
  if (k > prec_) {
    throw Error(ErrorCode::PrecisionExhausted,
                "cannot divide by pi^" + std::to_string(k) + " an element known to pi^" +
                    std::to_string(prec_));
  }
  if (valuation_digits() < k) {
    throw Error(ErrorCode::NotIntegral, "element is not divisible by pi^" + std::to_string(k));
  }
  const int e = static_cast<int>(ring_.e());
  const int q = k / e;
  const int r = k % e;
  OkElement x = zero(ring_);
  for (int j = 0; j < e; ++j) {
    const int target = j - r >= 0 ? j - r : j - r + e;
    const int drop = q + (j - r < 0 ? 1 : 0);
    x.c_[target] = c_[j] / ring_.p_power(drop);
  }
  x.prec_ = prec_ - k;
  x.canonicalize();
  return x;
}

OkElement OkElement::inverse() const {
  if (prec_ == 0 || residue() == 0) {
    throw Error(ErrorCode::NonUnit, "inverse of an element with positive valuation");
  }
  const u64 p = ring_.p();
  const u64 d0 = residue();
  OkElement y = from_int(ring_, static_cast<std::int64_t>(detail::powmod(d0, p - 2, p)));
  const OkElement two = from_int(ring_, 2);
  for (int iter = 0; iter < 80; ++iter) {
    OkElement next = y * (two - *this * y);
    next = next.with_precision(prec_);
    if (next == y && next.prec_ == y.prec_) break;
    y = next;
  }
  return y.with_precision(prec_);
}

OkElement OkElement::pow(std::uint64_t n) const {
  OkElement result = one(ring_);
  OkElement base = *this;
  while (n != 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

OkElement OkElement::operator-() const {
  OkElement x = *this;
  const u64 m = ring_.modulus();
  for (std::uint32_t j = 0; j < ring_.e(); ++j) x.c_[j] = submod(0, c_[j], m);
  x.canonicalize();
  return x;
}

OkElement& OkElement::operator+=(const OkElement& rhs) {
  check_same_ring(rhs);
  const u64 m = ring_.modulus();
  for (std::uint32_t j = 0; j < ring_.e(); ++j) c_[j] = addmod(c_[j], rhs.c_[j], m);
  prec_ = std::min(prec_, rhs.prec_);
  canonicalize();
  return *this;
}

OkElement& OkElement::operator-=(const OkElement& rhs) {
  check_same_ring(rhs);
  const u64 m = ring_.modulus();
  for (std::uint32_t j = 0; j < ring_.e(); ++j) c_[j] = submod(c_[j], rhs.c_[j], m);
  prec_ = std::min(prec_, rhs.prec_);
  canonicalize();
  return *this;
}

OkElement& OkElement::operator*=(const OkElement& rhs) {
  check_same_ring(rhs);
  const int e = static_cast<int>(ring_.e());
  const u64 m = ring_.modulus();
  const u64 p = ring_.p();
  const int new_prec =
      std::min({prec_ + rhs.valuation_digits(), rhs.prec_ + valuation_digits(), ring_.precision()});
  std::array<u64, kMaxRamification> out{};
  for (int i = 0; i < e; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < e; ++j) {
      if (rhs.c_[j] == 0) continue;
      u64 t = mulmod(c_[i], rhs.c_[j], m);
      int slot = i + j;
      if (slot >= e) {
        t = mulmod(t, p, m);
        slot -= e;
      }
      out[slot] = addmod(out[slot], t, m);
    }
  }
  c_ = out;
  prec_ = new_prec;
  canonicalize();
  return *this;
}

bool operator==(const OkElement& a, const OkElement& b) {
  a.check_same_ring(b);
  const int shared = std::min(a.prec_, b.prec_);
  const OkElement x = a.with_precision(shared);
  const OkElement y = b.with_precision(shared);
  return x.c_ == y.c_;
}

OkElement teichmuller(RingParams ring, std::int64_t a) {
  const auto p = static_cast<std::int64_t>(ring.p());
  const std::int64_t r = ((a % p) + p) % p;
  if (r == 0) throw Error(ErrorCode::ZeroResidue, "Teichmueller lift of 0 mod p");
  OkElement x = OkElement::from_int(ring, r);
  for (int iter = 0; iter <= ring.precision() + 2; ++iter) {
    OkElement next = x.pow(ring.p());
    if (next == x) break;
    x = next;
  }
  return x;
}

OkElement pow_p_rational(RingParams ring, const Rational& mu) {
  if (mu < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent for p^mu");
  const Rational scaled = mu * static_cast<std::int64_t>(ring.e());
  if (scaled.denominator() != 1) {
    throw Error(ErrorCode::DenominatorMismatch,
                "e * mu is not an integer for e=" + std::to_string(ring.e()));
  }
  return OkElement::uniformizer_power(ring, static_cast<int>(scaled.numerator()));
}

// ---------------------------------------------------------------------------

KElement::KElement(OkElement integral) : num_(std::move(integral)), den_(0) {}

KElement::KElement(OkElement numerator, int denominator_exponent)
    : num_(std::move(numerator)), den_(denominator_exponent) {
  if (den_ < 0) {
    num_ = num_.shift_up(-den_);
    den_ = 0;
  }
  normalize();
}

KElement KElement::from_rational(RingParams ring, const Rational& value) {
  const std::int64_t v = rational_valuation(value, ring.p());
  if (value.numerator() == 0 || v >= 0) return KElement(OkElement::from_rational(ring, value));
  Rational scaled = value;
  for (std::int64_t k = 0; k < -v; ++k) scaled *= static_cast<std::int64_t>(ring.p());
  return {OkElement::from_rational(ring, scaled), static_cast<int>(-v * ring.e())};
}

void KElement::normalize() {
  while (den_ > 0) {
    const int s = std::min(den_, num_.valuation_digits());
    if (s <= 0) break;
    num_ = num_.shift_down(s);
    den_ -= s;
  }
}

OkElement KElement::to_integral() const {
  if (den_ != 0) {
    throw Error(ErrorCode::NotIntegral,
                "value has denominator pi^" + std::to_string(den_));
  }
  return num_;
}

KElement operator+(const KElement& a, const KElement& b) {
  const int common = std::max(a.den_, b.den_);
  KElement out;
  out.num_ = a.num_.shift_up(common - a.den_) + b.num_.shift_up(common - b.den_);
  out.den_ = common;
  out.normalize();
  return out;
}

KElement operator*(const KElement& a, const KElement& b) {
  KElement out;
  out.num_ = a.num_ * b.num_;
  out.den_ = a.den_ + b.den_;
  out.normalize();
  return out;
}

KElement operator/(const KElement& a, const KElement& b) {
  if (b.num_.is_zero()) {
    throw Error(ErrorCode::PrecisionExhausted, "division by an element that is zero at precision");
  }
  const int w = b.num_.valuation_digits();
  const OkElement unit = b.num_.shift_down(w);
  const int exponent = a.den_ + w - b.den_;
  return {a.num_ * unit.inverse(), exponent};
}

bool operator==(const KElement& a, const KElement& b) { return (a - b).is_zero(); }

}  // namespace pf
