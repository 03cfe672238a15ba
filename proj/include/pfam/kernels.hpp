#pragma once

// Modular arithmetic kernels on residue vectors.
//
// Every kernel works on uint64 residues in [0, m) with m < 2^62 and must
// produce canonical residues, so the scalar and vector variants agree bit for
// bit. The AVX2 variants take the fast path only when m < 2^50 (products are
// handled in double precision with FMA); above that they defer to scalar.

#include <cstdint>
#include <span>
#include <string_view>

namespace pf::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// out[k] = sum_{i+j=k} a[i] * b[j] mod m for k < out.size().
using ConvFn = void (*)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                        std::span<std::uint64_t> out, std::uint64_t m);
/// y[i] = (y[i] + c * x[i]) mod m.
using AxpyFn = void (*)(std::uint64_t c, std::span<const std::uint64_t> x,
                        std::span<std::uint64_t> y, std::uint64_t m);
/// out[i] = (a[i] op b[i]) mod m.
using BinaryFn = void (*)(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                          std::span<std::uint64_t> out, std::uint64_t m);
/// out[i] = c * x[i] mod m.
using ScaleFn = void (*)(std::uint64_t c, std::span<const std::uint64_t> x,
                         std::span<std::uint64_t> out, std::uint64_t m);

struct KernelTable {
  Isa isa;
  ConvFn conv;
  AxpyFn axpy;
  BinaryFn add;
  BinaryFn sub;
  BinaryFn mul;
  ScaleFn scale;
};

const KernelTable& scalar_table();
/// Null when the build has no AVX2 variant or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();

/// Table used by the series arithmetic; the best supported ISA by default.
const KernelTable& active();
/// Forces an ISA (falls back to scalar when unsupported); returns the one in effect.
Isa select(Isa isa);
Isa best_supported();

inline void conv(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                 std::span<std::uint64_t> out, std::uint64_t m) {
  active().conv(a, b, out, m);
}
inline void axpy(std::uint64_t c, std::span<const std::uint64_t> x, std::span<std::uint64_t> y,
                 std::uint64_t m) {
  active().axpy(c, x, y, m);
}
inline void add(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                std::span<std::uint64_t> out, std::uint64_t m) {
  active().add(a, b, out, m);
}
inline void sub(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                std::span<std::uint64_t> out, std::uint64_t m) {
  active().sub(a, b, out, m);
}
inline void mul(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                std::span<std::uint64_t> out, std::uint64_t m) {
  active().mul(a, b, out, m);
}
inline void scale(std::uint64_t c, std::span<const std::uint64_t> x, std::span<std::uint64_t> out,
                  std::uint64_t m) {
  active().scale(c, x, out, m);
}

namespace scalar {
void conv(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
          std::span<std::uint64_t> out, std::uint64_t m);
void axpy(std::uint64_t c, std::span<const std::uint64_t> x, std::span<std::uint64_t> y,
          std::uint64_t m);
void add(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
         std::span<std::uint64_t> out, std::uint64_t m);
void sub(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
         std::span<std::uint64_t> out, std::uint64_t m);
void mul(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
         std::span<std::uint64_t> out, std::uint64_t m);
void scale(std::uint64_t c, std::span<const std::uint64_t> x, std::span<std::uint64_t> out,
           std::uint64_t m);
}  // namespace scalar

}  // namespace pf::kernels
