#include "asl1/line_search.hpp"

#include "asl1/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asl1 {

double bb_coefficient(std::span<const double> s, std::span<const double> y,
                      std::span<const double> x_free,
                      std::span<const double> g_free) {
  require_dimension(y, s.size(), "bb_coefficient");
  require_dimension(g_free, x_free.size(), "bb_coefficient");
  const double ss = kernels::norm2_sq(s);
  const double sy = kernels::dot(s, y);
  const double m_a = ss > 0.0 ? sy / ss : 0.0;

  if (m_a > 0.0 && m_a < kSpectralMax) return std::max(kSpectralMin, m_a);
  if (m_a >= kSpectralMax) {
    const double m_b = kernels::norm2_sq(y) / sy;
    return std::max(kSpectralMin, std::min(kSpectralMax, m_b));
  }
  // m_a <= 0 (or not a number)
  const double xn = std::sqrt(kernels::norm2_sq(x_free));
  if (xn == 0.0) return 1.0;
  const double gn = std::sqrt(kernels::norm2_sq(g_free));
  return std::max(kSpectralMin, std::min(1.0, gn / xn));
}

double BBState::update(std::span<const double> x, std::span<const double> g,
                       std::span<const std::size_t> free) {
  require_dimension(g, x.size(), "BBState::update");
  double m = 1.0;
  if (has_previous_ && prev_x_.size() == x.size()) {
    s_.clear();
    y_.clear();
    x_free_.clear();
    g_free_.clear();
    for (std::size_t i : free) {
      x_free_.push_back(x[i]);
      g_free_.push_back(g[i]);
      if (prev_free_[i]) {
        s_.push_back(x[i] - prev_x_[i]);
        y_.push_back(g[i] - prev_g_[i]);
      }
    }
    if (!s_.empty()) m = bb_coefficient(s_, y_, x_free_, g_free_);
  }
  prev_x_.assign(x.begin(), x.end());
  prev_g_.assign(g.begin(), g.end());
  prev_free_.assign(x.size(), 0);
  for (std::size_t i : free) prev_free_[i] = 1;
  has_previous_ = true;
  last_ = m;
  return m;
}

double BBState::update_full(std::span<const double> x,
                            std::span<const double> g) {
  require_dimension(g, x.size(), "BBState::update_full");
  double m = 1.0;
  if (has_previous_ && prev_x_.size() == x.size()) {
    s_.resize(x.size());
    y_.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      s_[i] = x[i] - prev_x_[i];
      y_[i] = g[i] - prev_g_[i];
    }
    m = bb_coefficient(s_, y_, x, g);
  }
  prev_x_.assign(x.begin(), x.end());
  prev_g_.assign(g.begin(), g.end());
  prev_free_.assign(x.size(), 1);
  has_previous_ = true;
  last_ = m;
  return m;
}

void direction(std::span<const double> x, std::span<const double> g,
               std::span<const std::size_t> free, double step, double tau,
               std::span<double> d, L1BallProjector& projector) {
  require_dimension(g, x.size(), "direction");
  require_dimension(d, x.size(), "direction output");
  std::fill(d.begin(), d.end(), 0.0);
  if (free.empty()) return;
  if (free.size() == x.size()) {
    kernels::waxpy(x, -step, g, d);
    projector.project(d, tau, d);
    kernels::axpy(-1.0, x, d);
    return;
  }
  Vector sub(free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    const std::size_t i = free[k];
    sub[k] = x[i] - step * g[i];
  }
  projector.project(sub, tau, sub);
  for (std::size_t k = 0; k < free.size(); ++k) {
    const std::size_t i = free[k];
    d[i] = sub[k] - x[i];
  }
}

Vector direction(std::span<const double> x, std::span<const double> g,
                 std::span<const std::size_t> free, double step, double tau) {
  Vector d(x.size());
  L1BallProjector projector;
  direction(x, g, free, step, tau, d, projector);
  return d;
}

LineSearchMemory::LineSearchMemory(std::size_t memory_length)
    : length_(memory_length) {}

void LineSearchMemory::push(double value) {
  values_.push_back(value);
  while (values_.size() > length_ + 1) values_.pop_front();
}

double LineSearchMemory::reference() const {
  if (values_.empty()) throw std::logic_error("LineSearchMemory: empty");
  return *std::max_element(values_.begin(), values_.end());
}

LineSearchResult backtracking_armijo(const ObjectiveOracle& oracle,
                                     std::span<const double> x, double phi_x,
                                     std::span<const double> g,
                                     std::span<const double> d,
                                     double reference, double alpha_init,
                                     const LineSearchOptions& options,
                                     std::span<double> x_out,
                                     std::span<double> grad_out) {
  require_dimension(g, x.size(), "backtracking_armijo gradient");
  require_dimension(d, x.size(), "backtracking_armijo direction");
  require_dimension(x_out, x.size(), "backtracking_armijo output");
  require_dimension(grad_out, x.size(), "backtracking_armijo gradient output");

  LineSearchResult result;
  const double slope = kernels::dot(g, d);
  auto stay = [&] {
    std::copy(x.begin(), x.end(), x_out.begin());
    std::copy(g.begin(), g.end(), grad_out.begin());
    result.alpha = 0.0;
    result.value = phi_x;
  };
  if (!(slope < 0.0)) {
    stay();
    return result;
  }

  double alpha = alpha_init;
  double best_alpha = 0.0;
  double best_value = phi_x;
  for (int t = 0; t <= options.max_backtracks; ++t, alpha *= options.delta) {
    kernels::waxpy(x, alpha, d, x_out);
    const double value = oracle.value_and_gradient(x_out, grad_out);
    ++result.evaluations;
    if (!std::isfinite(value)) continue;
    if (value <= reference + options.gamma * alpha * slope) {
      result.alpha = alpha;
      result.value = value;
      return result;
    }
    if (value < best_value) {
      best_value = value;
      best_alpha = alpha;
    }
  }

  result.capped = true;
  if (best_alpha > 0.0) {
    kernels::waxpy(x, best_alpha, d, x_out);
    result.value = oracle.value_and_gradient(x_out, grad_out);
    ++result.evaluations;
    result.alpha = best_alpha;
  } else {
    stay();
  }
  return result;
}

LineSearchResult armijo_nonmonotone(const ObjectiveOracle& oracle,
                                    std::span<const double> x, double phi_x,
                                    std::span<const double> g,
                                    std::span<const double> d,
                                    const LineSearchMemory& memory,
                                    const LineSearchOptions& options,
                                    std::span<double> x_out,
                                    std::span<double> grad_out) {
  return backtracking_armijo(oracle, x, phi_x, g, d, memory.reference(), 1.0,
                             options, x_out, grad_out);
}

}  // namespace asl1
