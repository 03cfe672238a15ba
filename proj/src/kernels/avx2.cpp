// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a CPUID check.
//
// Residues below 2^50 are moved into double lanes. For a, b < m < 2^50 the
// product is split exactly as h + l with h = fl(a*b) and l = fma(a, b, -h);
// q = floor(h / m) is off by at most one, so h - q*m (exact via fnmadd) plus l
// lies in (-m, 2m) and a couple of masked corrections land it in [0, m).

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <vector>

#include "pfam/kernels.hpp"

namespace pf::kernels::avx2 {

namespace {

using u64 = std::uint64_t;

constexpr u64 kFastLimit = u64{1} << 50;

inline __m256d magic_pd() { return _mm256_set1_pd(4503599627370496.0); }  // 2^52
inline __m256i magic_si() { return _mm256_set1_epi64x(0x4330000000000000LL); }

inline __m256d to_pd(__m256i x) {
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, magic_si())), magic_pd());
}

inline __m256i to_si(__m256d x) {
  return _mm256_xor_si256(_mm256_castpd_si256(_mm256_add_pd(x, magic_pd())), magic_si());
}

struct DoubleMod {
  __m256d m;
  __m256d minv;
  explicit DoubleMod(u64 modulus)
      : m(_mm256_set1_pd(static_cast<double>(modulus))),
        minv(_mm256_set1_pd(1.0 / static_cast<double>(modulus))) {}

  __m256d mul(__m256d a, __m256d b) const {
    const __m256d h = _mm256_mul_pd(a, b);
    const __m256d l = _mm256_fmsub_pd(a, b, h);
    const __m256d q = _mm256_floor_pd(_mm256_mul_pd(h, minv));
    __m256d r = _mm256_add_pd(_mm256_fnmadd_pd(q, m, h), l);
    const __m256d zero = _mm256_setzero_pd();
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), m));
    r = _mm256_add_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, zero, _CMP_LT_OQ), m));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, m, _CMP_GE_OQ), m));
    r = _mm256_sub_pd(r, _mm256_and_pd(_mm256_cmp_pd(r, m, _CMP_GE_OQ), m));
    return r;
  }

  __m256d add(__m256d a, __m256d b) const {
    const __m256d s = _mm256_add_pd(a, b);
    return _mm256_sub_pd(s, _mm256_and_pd(_mm256_cmp_pd(s, m, _CMP_GE_OQ), m));
  }
};

inline __m256i load4(const u64* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store4(u64* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

// Integer add/sub are exact for any m < 2^62 since lanes stay below 2^63.
inline __m256i add_si(__m256i a, __m256i b, __m256i m) {
  const __m256i s = _mm256_add_epi64(a, b);
  const __m256i below = _mm256_cmpgt_epi64(m, s);
  return _mm256_sub_epi64(s, _mm256_andnot_si256(below, m));
}

inline __m256i sub_si(__m256i a, __m256i b, __m256i m) {
  const __m256i d = _mm256_sub_epi64(a, b);
  const __m256i borrow = _mm256_cmpgt_epi64(b, a);
  return _mm256_add_epi64(d, _mm256_and_si256(borrow, m));
}

}  // namespace

void add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  const std::size_t n = out.size();
  const __m256i mv = _mm256_set1_epi64x(static_cast<long long>(m));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(out.data() + i, add_si(load4(a.data() + i), load4(b.data() + i), mv));
  if (i < n) scalar::add(a.subspan(i), b.subspan(i), out.subspan(i), m);
}

void sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  const std::size_t n = out.size();
  const __m256i mv = _mm256_set1_epi64x(static_cast<long long>(m));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(out.data() + i, sub_si(load4(a.data() + i), load4(b.data() + i), mv));
  if (i < n) scalar::sub(a.subspan(i), b.subspan(i), out.subspan(i), m);
}

void mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  if (m >= kFastLimit) return scalar::mul(a, b, out, m);
  const DoubleMod dm(m);
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = dm.mul(to_pd(load4(a.data() + i)), to_pd(load4(b.data() + i)));
    store4(out.data() + i, to_si(r));
  }
  if (i < n) scalar::mul(a.subspan(i), b.subspan(i), out.subspan(i), m);
}

void scale(u64 c, std::span<const u64> x, std::span<u64> out, u64 m) {
  if (m >= kFastLimit) return scalar::scale(c, x, out, m);
  const DoubleMod dm(m);
  const __m256d cv = _mm256_set1_pd(static_cast<double>(c % m));
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store4(out.data() + i, to_si(dm.mul(cv, to_pd(load4(x.data() + i)))));
  if (i < n) scalar::scale(c, x.subspan(i), out.subspan(i), m);
}

void axpy(u64 c, std::span<const u64> x, std::span<u64> y, u64 m) {
  if (m >= kFastLimit) return scalar::axpy(c, x, y, m);
  const DoubleMod dm(m);
  const __m256d cv = _mm256_set1_pd(static_cast<double>(c % m));
  const std::size_t n = y.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = dm.mul(cv, to_pd(load4(x.data() + i)));
    store4(y.data() + i, to_si(dm.add(to_pd(load4(y.data() + i)), t)));
  }
  if (i < n) scalar::axpy(c, x.subspan(i), y.subspan(i), m);
}

void conv(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  if (m >= kFastLimit) return scalar::conv(a, b, out, m);
  const std::size_t n = out.size();
  if (n == 0) return;
  const std::size_t la = std::min(a.size(), n);
  const std::size_t lb = std::min(b.size(), n);
  if (la == 0 || lb == 0) {
    std::fill(out.begin(), out.end(), 0);
    return;
  }
  // b is laid out with three leading zeros so that lane l of output block k0
  // reads b[k0 + l - i] for every i <= k0 + 3 without bounds checks.
  constexpr std::size_t kLead = 3;
  thread_local std::vector<double> ad;
  thread_local std::vector<double> bpad;
  ad.assign(la, 0.0);
  bpad.assign(kLead + n + 4, 0.0);
  for (std::size_t i = 0; i < la; ++i) ad[i] = static_cast<double>(a[i]);
  for (std::size_t j = 0; j < lb; ++j) bpad[kLead + j] = static_cast<double>(b[j]);

  const DoubleMod dm(m);
  alignas(32) std::array<double, 4> lane{};
  for (std::size_t k0 = 0; k0 < n; k0 += 4) {
    __m256d acc = _mm256_setzero_pd();
    const std::size_t last = std::min(k0 + 3, la - 1);
    for (std::size_t i = 0; i <= last; ++i) {
      const __m256d av = _mm256_set1_pd(ad[i]);
      const __m256d bv = _mm256_loadu_pd(bpad.data() + kLead + k0 - i);
      acc = dm.add(acc, dm.mul(av, bv));
    }
    if (k0 + 4 <= n) {
      store4(out.data() + k0, to_si(acc));
    } else {
      _mm256_store_pd(lane.data(), acc);
      for (std::size_t l = 0; k0 + l < n; ++l) out[k0 + l] = static_cast<u64>(lane[l]);
    }
  }
}

}  // namespace pf::kernels::avx2
