#include <atomic>

#include "pfam/kernels.hpp"

namespace pf::kernels {

#if defined(PF_HAVE_AVX2_KERNELS)
namespace avx2 {
void conv(std::span<const std::uint64_t>, std::span<const std::uint64_t>,
          std::span<std::uint64_t>, std::uint64_t);
void axpy(std::uint64_t, std::span<const std::uint64_t>, std::span<std::uint64_t>, std::uint64_t);
void add(std::span<const std::uint64_t>, std::span<const std::uint64_t>, std::span<std::uint64_t>,
         std::uint64_t);
void sub(std::span<const std::uint64_t>, std::span<const std::uint64_t>, std::span<std::uint64_t>,
         std::uint64_t);
void mul(std::span<const std::uint64_t>, std::span<const std::uint64_t>, std::span<std::uint64_t>,
         std::uint64_t);
void scale(std::uint64_t, std::span<const std::uint64_t>, std::span<std::uint64_t>,
           std::uint64_t);
}  // namespace avx2
#endif

namespace {

const KernelTable kScalar{Isa::Scalar, scalar::conv, scalar::axpy, scalar::add,
                          scalar::sub,  scalar::mul,  scalar::scale};

#if defined(PF_HAVE_AVX2_KERNELS)
const KernelTable kAvx2{Isa::Avx2, avx2::conv, avx2::axpy, avx2::add,
                        avx2::sub, avx2::mul,  avx2::scale};

bool cpu_has_avx2() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{[] {
    const KernelTable* vec = avx2_table();
    return vec != nullptr ? vec : &kScalar;
  }()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(PF_HAVE_AVX2_KERNELS)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

Isa best_supported() { return avx2_table() != nullptr ? Isa::Avx2 : Isa::Scalar; }

const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

Isa select(Isa isa) {
  const KernelTable* table = &kScalar;
  if (isa == Isa::Avx2 && avx2_table() != nullptr) table = avx2_table();
  current().store(table, std::memory_order_relaxed);
  return table->isa;
}

}  // namespace pf::kernels
