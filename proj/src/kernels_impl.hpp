#pragma once

#include <cstddef>
#include <cstdint>

namespace asl1::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum_abs(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double dist_sq(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void waxpy(const double* x, double alpha, const double* y, double* out,
           std::size_t n);
void soft_threshold(const double* v, double theta, double* out, std::size_t n);
double gather_dot(const double* vals, const std::uint32_t* idx,
                  const double* x, std::size_t nnz);
}  // namespace scalar

#ifdef ASL1_HAVE_AVX2
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sum_abs(const double* a, std::size_t n);
double sum_sq(const double* a, std::size_t n);
double max_abs(const double* a, std::size_t n);
double dist_sq(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void waxpy(const double* x, double alpha, const double* y, double* out,
           std::size_t n);
void soft_threshold(const double* v, double theta, double* out, std::size_t n);
double gather_dot(const double* vals, const std::uint32_t* idx,
                  const double* x, std::size_t nnz);
}  // namespace avx2
#endif

}  // namespace asl1::kernels
