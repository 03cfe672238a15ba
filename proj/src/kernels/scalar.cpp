// Reference kernels. These define the expected output of every vector variant.

#include <algorithm>

#include "pfam/detail/modarith.hpp"
#include "pfam/kernels.hpp"

namespace pf::kernels::scalar {

using detail::addmod;
using detail::mulmod;
using detail::submod;
using detail::u128;
using detail::u64;

void conv(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  const std::size_t n = out.size();
  for (std::size_t k = 0; k < n; ++k) {
    u64 acc = 0;
    const std::size_t lo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t hi = std::min(k + 1, a.size());
    for (std::size_t i = lo; i < hi; ++i) {
      acc = addmod(acc, mulmod(a[i], b[k - i], m), m);
    }
    out[k] = acc;
  }
}

void axpy(u64 c, std::span<const u64> x, std::span<u64> y, u64 m) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = addmod(y[i], mulmod(c, x[i], m), m);
}

void add(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = addmod(a[i], b[i], m);
}

void sub(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = submod(a[i], b[i], m);
}

void mul(std::span<const u64> a, std::span<const u64> b, std::span<u64> out, u64 m) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mulmod(a[i], b[i], m);
}

void scale(u64 c, std::span<const u64> x, std::span<u64> out, u64 m) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mulmod(c, x[i], m);
}

}  // namespace pf::kernels::scalar
