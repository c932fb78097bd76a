#include "kernels_impl.hpp"

#include <cmath>

namespace asl1::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_abs(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sum_sq(const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i]);
    if (v > m) m = v;
  }
  return m;
}

double dist_sq(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void waxpy(const double* x, double alpha, const double* y, double* out,
           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + alpha * y[i];
}

void soft_threshold(const double* v, double theta, double* out,
                    std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::fabs(v[i]) - theta;
    out[i] = mag > 0.0 ? std::copysign(mag, v[i]) : 0.0;
  }
}

double gather_dot(const double* vals, const std::uint32_t* idx,
                  const double* x, std::size_t nnz) {
  double s = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) s += vals[k] * x[idx[k]];
  return s;
}

}  // namespace asl1::kernels::scalar
