#include "asl1/projection.hpp"

#include "asl1/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace asl1 {

namespace {

void require_radius(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw std::invalid_argument("projection: radius must be positive and finite");
}

void require_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("projection: non-finite input");
}

// Largest k with u_k > (c_k - total)/k over magnitudes sorted descending.
double sorted_threshold(std::vector<double>& mags, double total) {
  std::sort(mags.begin(), mags.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    cumulative += mags[k];
    const double candidate = (cumulative - total) / static_cast<double>(k + 1);
    if (mags[k] > candidate)
      theta = candidate;
    else
      break;
  }
  return theta;
}

// Soft-thresholding rounds each coordinate separately, so the l1 norm of the
// result can exceed tau by a few ulps; pull it back onto the sphere.
void clamp_to_radius(std::span<double> out, double tau) {
  const double norm = kernels::norm1(out);
  if (norm > tau) {
    const double scale = tau / norm;
    for (double& x : out) x *= scale;
  }
}

}  // namespace

RestrictedManifold::RestrictedManifold(double radius,
                                       std::vector<std::size_t> free_indices,
                                       std::size_t dimension)
    : radius_(radius), free_(std::move(free_indices)), dimension_(dimension) {
  require_radius(radius_);
  for (std::size_t k = 0; k < free_.size(); ++k) {
    if (free_[k] >= dimension_)
      throw std::invalid_argument("RestrictedManifold: index out of range");
    if (k > 0 && free_[k] <= free_[k - 1])
      throw std::invalid_argument("RestrictedManifold: indices must be strictly increasing");
  }
}

double l1_ball_threshold(std::span<const double> v, double tau) {
  require_radius(tau);
  require_finite(v);
  if (kernels::norm1(v) <= tau) return 0.0;
  std::vector<double> mags(v.size());
  std::transform(v.begin(), v.end(), mags.begin(), [](double x) { return std::fabs(x); });
  return std::max(0.0, sorted_threshold(mags, tau));
}

Vector project_l1_ball(std::span<const double> v, double tau) {
  require_radius(tau);
  require_finite(v);
  Vector out(v.begin(), v.end());
  if (kernels::norm1(v) <= tau) return out;
  const double theta = l1_ball_threshold(v, tau);
  kernels::soft_threshold(v, theta, out);
  clamp_to_radius(out, tau);
  return out;
}

Vector project_l1_ball_fast(std::span<const double> v, double tau) {
  L1BallProjector projector;
  Vector out(v.size());
  projector.project(v, tau, out);
  return out;
}

double L1BallProjector::threshold(std::span<const double> v, double tau) {
  require_radius(tau);
  if (v.empty() || kernels::norm1(v) <= tau) return 0.0;

  // Simplex-style threshold on |v| with the running mean update of the
  // candidate set; elements set aside are re-checked once at the end.
  active_.clear();
  deferred_.clear();
  const double first = std::fabs(v[0]);
  active_.push_back(first);
  double rho = first - tau;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const double y = std::fabs(v[i]);
    if (y > rho) {
      rho += (y - rho) / static_cast<double>(active_.size() + 1);
      if (rho > y - tau) {
        active_.push_back(y);
      } else {
        deferred_.insert(deferred_.end(), active_.begin(), active_.end());
        active_.assign(1, y);
        rho = y - tau;
      }
    }
  }
  for (double y : deferred_) {
    if (y > rho) {
      active_.push_back(y);
      rho += (y - rho) / static_cast<double>(active_.size());
    }
  }
  bool changed = true;
  while (changed) {
    std::size_t count = active_.size();
    std::size_t kept = 0;
    for (std::size_t k = 0; k < active_.size(); ++k) {
      const double y = active_[k];
      if (y <= rho) {
        --count;
        if (count > 0) rho += (rho - y) / static_cast<double>(count);
      } else {
        active_[kept++] = y;
      }
    }
    changed = kept != active_.size();
    active_.resize(kept);
  }
  return std::max(0.0, rho);
}

double L1BallProjector::project(std::span<const double> v, double tau,
                                std::span<double> out) {
  require_radius(tau);
  require_dimension(out, v.size(), "L1BallProjector::project output");
  require_finite(v);
  if (kernels::norm1(v) <= tau) {
    if (out.data() != v.data()) std::copy(v.begin(), v.end(), out.begin());
    return 0.0;
  }
  const double theta = threshold(v, tau);
  kernels::soft_threshold(v, theta, out);
  clamp_to_radius(out, tau);
  return theta;
}

Vector project_restricted(std::span<const double> v,
                          const RestrictedManifold& manifold) {
  require_dimension(v, manifold.dimension(), "project_restricted");
  require_finite(v);
  Vector out(v.size(), 0.0);
  const auto& free = manifold.free_indices();
  if (free.empty()) return out;
  Vector sub(free.size());
  for (std::size_t k = 0; k < free.size(); ++k) sub[k] = v[free[k]];
  L1BallProjector projector;
  projector.project(sub, manifold.radius(), sub);
  for (std::size_t k = 0; k < free.size(); ++k) out[free[k]] = sub[k];
  return out;
}

Vector project_simplex(std::span<const double> v) {
  require_finite(v);
  if (v.empty()) throw std::invalid_argument("project_simplex: empty input");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (sorted[k] > candidate)
      theta = candidate;
    else
      break;
  }
  Vector out(v.size());
  std::transform(v.begin(), v.end(), out.begin(),
                 [theta](double x) { return std::max(x - theta, 0.0); });
  return out;
}

double projected_gradient_residual(std::span<const double> x,
                                   std::span<const double> g, double tau) {
  require_dimension(g, x.size(), "projected_gradient_residual");
  Vector step(x.size());
  kernels::waxpy(x, -1.0, g, step);
  L1BallProjector projector;
  projector.project(step, tau, step);
  return std::sqrt(kernels::dist_sq(x, step));
}

}  // namespace asl1
