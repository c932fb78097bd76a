#include "asl1/kernels.hpp"

#include "kernels_impl.hpp"

#include <atomic>
#include <cstdlib>

namespace asl1::kernels {

namespace {

constexpr KernelTable kScalar{
    Isa::Scalar,           "scalar",
    scalar::dot,           scalar::sum_abs, scalar::sum_sq,
    scalar::max_abs,       scalar::dist_sq, scalar::axpy,
    scalar::waxpy,         scalar::soft_threshold,
    scalar::gather_dot,
};

#ifdef ASL1_HAVE_AVX2
constexpr KernelTable kAvx2{
    Isa::Avx2,           "avx2",
    avx2::dot,           avx2::sum_abs, avx2::sum_sq,
    avx2::max_abs,       avx2::dist_sq, avx2::axpy,
    avx2::waxpy,         avx2::soft_threshold,
    avx2::gather_dot,
};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() noexcept {
  const KernelTable* best = &kScalar;
  if (const KernelTable* t = avx2_table()) best = t;
  if (const char* env = std::getenv("ASL1_SIMD")) {
    Isa requested{};
    if (parse_isa(env, requested)) {
      if (requested == Isa::Scalar) return &kScalar;
      if (const KernelTable* t = avx2_table()) return t;
    }
  }
  return best;
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#ifdef ASL1_HAVE_AVX2
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  return *current().load(std::memory_order_acquire);
}

bool select(Isa isa) noexcept {
  const KernelTable* t = isa == Isa::Scalar ? &kScalar : avx2_table();
  if (t == nullptr) return false;
  current().store(t, std::memory_order_release);
  return true;
}

bool parse_isa(std::string_view name, Isa& out) noexcept {
  if (name == "scalar") {
    out = Isa::Scalar;
    return true;
  }
  if (name == "avx2") {
    out = Isa::Avx2;
    return true;
  }
  return false;
}

}  // namespace asl1::kernels
