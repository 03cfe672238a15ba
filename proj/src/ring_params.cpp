#include "pfam/ring_params.hpp"

#include <array>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "pfam/errors.hpp"

namespace pf {

namespace detail {

struct RingData {
  std::uint32_t p;
  std::uint32_t e;
  int precision;
  int component_digits;
  std::array<std::uint64_t, 64> powers;
};

namespace {

const RingData* intern(std::uint32_t p, std::uint32_t e, int precision) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::unique_ptr<RingData>> table;
  std::lock_guard lock(mutex);
  auto& slot = table[{p, e, precision}];
  if (!slot) {
    auto data = std::make_unique<RingData>();
    data->p = p;
    data->e = e;
    data->precision = precision;
    data->component_digits = (precision + static_cast<int>(e) - 1) / static_cast<int>(e);
    data->powers.fill(0);
    data->powers[0] = 1;
    for (int k = 1; k <= data->component_digits; ++k) data->powers[k] = data->powers[k - 1] * p;
    slot = std::move(data);
  }
  return slot.get();
}

}  // namespace
}  // namespace detail

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t rational_valuation(const Rational& q, std::uint32_t p) {
  if (q.numerator() == 0) return std::numeric_limits<std::int64_t>::max();
  std::int64_t v = 0;
  auto num = q.numerator() < 0 ? -q.numerator() : q.numerator();
  auto den = q.denominator();
  while (num % p == 0) {
    num /= p;
    ++v;
  }
  while (den % p == 0) {
    den /= p;
    --v;
  }
  return v;
}

RingParams RingParams::make(std::uint32_t p, std::uint32_t e, int precision) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::InvalidParams, "p must be an odd prime, got " + std::to_string(p));
  }
  if (e < 1 || e > kMaxRamification) {
    throw Error(ErrorCode::InvalidParams,
                "ramification index must lie in [1, 8], got " + std::to_string(e));
  }
  if (precision < 1) {
    throw Error(ErrorCode::InvalidParams, "precision must be >= 1");
  }
  const int digits = (precision + static_cast<int>(e) - 1) / static_cast<int>(e);
  // p^digits must stay below 2^62 so that sums of two residues never overflow.
  long double bound = 1;
  for (int k = 0; k < digits; ++k) bound *= p;
  if (bound >= 4611686018427387904.0L) {
    throw Error(ErrorCode::InvalidParams,
                "p^ceil(N/e) must be below 2^62; lower the precision (" + std::to_string(p) +
                    "^" + std::to_string(digits) + ")");
  }
  return RingParams(detail::intern(p, e, precision));
}

RingParams::RingParams() : d_(nullptr) {
  static const RingParams fallback = make(3, 1, 20);
  d_ = fallback.d_;
}

std::uint32_t RingParams::p() const noexcept { return d_->p; }
std::uint32_t RingParams::e() const noexcept { return d_->e; }
int RingParams::precision() const noexcept { return d_->precision; }
int RingParams::component_digits() const noexcept { return d_->component_digits; }
std::uint64_t RingParams::modulus() const noexcept { return d_->powers[d_->component_digits]; }
std::uint64_t RingParams::p_power(int k) const noexcept { return d_->powers[k]; }

int RingParams::digits_in_component(std::uint32_t j, int prec) const noexcept {
  const int jj = static_cast<int>(j);
  if (prec <= jj) return 0;
  const int e = static_cast<int>(d_->e);
  return (prec - jj + e - 1) / e;
}

std::string RingParams::describe() const {
  std::ostringstream out;
  out << "p=" << p() << " e=" << e() << " N=" << precision();
  return out.str();
}

}  // namespace pf
