#pragma once

// Dense and gather-style vector kernels used by the projection, objective and
// solver inner loops. Every kernel has a scalar reference implementation; an
// AVX2/FMA variant is compiled when the toolchain supports it and is picked at
// runtime from the CPU feature bits. Reductions in the SIMD variants use four
// fixed lanes so results are reproducible run to run, but they are not
// bitwise identical to the scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace asl1::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum_abs)(const double* a, std::size_t n);
  double (*sum_sq)(const double* a, std::size_t n);
  double (*max_abs)(const double* a, std::size_t n);
  // ||a - b||^2
  double (*dist_sq)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out = x + alpha * y
  void (*waxpy)(const double* x, double alpha, const double* y, double* out,
                std::size_t n);
  // out_i = sign(v_i) * max(|v_i| - theta, 0)
  void (*soft_threshold)(const double* v, double theta, double* out,
                         std::size_t n);
  // sum_k vals[k] * x[idx[k]]
  double (*gather_dot)(const double* vals, const std::uint32_t* idx,
                       const double* x, std::size_t nnz);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

// Table used by the library. Chosen on first use: the ASL1_SIMD environment
// variable ("scalar" or "avx2") wins, otherwise the best supported ISA.
const KernelTable& active() noexcept;

// Returns false (and leaves the selection unchanged) if the ISA is unavailable.
bool select(Isa isa) noexcept;

bool parse_isa(std::string_view name, Isa& out) noexcept;

// Span conveniences over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double norm1(std::span<const double> a) {
  return active().sum_abs(a.data(), a.size());
}
inline double norm2_sq(std::span<const double> a) {
  return active().sum_sq(a.data(), a.size());
}
inline double max_abs(std::span<const double> a) {
  return active().max_abs(a.data(), a.size());
}
inline double dist_sq(std::span<const double> a, std::span<const double> b) {
  return active().dist_sq(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void waxpy(std::span<const double> x, double alpha,
                  std::span<const double> y, std::span<double> out) {
  active().waxpy(x.data(), alpha, y.data(), out.data(), x.size());
}
inline void soft_threshold(std::span<const double> v, double theta,
                           std::span<double> out) {
  active().soft_threshold(v.data(), theta, out.data(), v.size());
}

}  // namespace asl1::kernels
