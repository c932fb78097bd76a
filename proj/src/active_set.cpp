#include "asl1/active_set.hpp"

#include "asl1/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace asl1 {

void estimate_active_set(std::span<const double> x, std::span<const double> g,
                         double tau, double epsilon, ActiveSetPartition& out) {
  require_dimension(g, x.size(), "estimate_active_set");
  if (!(epsilon > 0.0)) throw std::invalid_argument("estimate_active_set: epsilon must be > 0");
  if (!(tau > 0.0)) throw std::invalid_argument("estimate_active_set: tau must be > 0");

  out.active.clear();
  out.nonactive.clear();
  out.steepest.clear();

  const double gx = kernels::dot(g, x);
  const double scale = epsilon * tau;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double toward_neg = scale * (tau * g[i] + gx);  // eps*tau*g'(tau e_i + x)
    const double toward_pos = scale * (tau * g[i] - gx);  // eps*tau*g'(tau e_i - x)
    const double xi = x[i];
    const bool active = (toward_neg <= 0.0 && 0.0 <= xi && xi <= toward_pos) ||
                        (toward_neg <= xi && xi <= 0.0 && 0.0 <= toward_pos);
    (active ? out.active : out.nonactive).push_back(i);
  }

  const double gmax = kernels::max_abs(g);
  if (gmax > 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i)
      if (std::fabs(g[i]) == gmax) out.steepest.push_back(i);
  }
}

ActiveSetPartition estimate_active_set(std::span<const double> x,
                                       std::span<const double> g, double tau,
                                       double epsilon) {
  ActiveSetPartition out;
  estimate_active_set(x, g, tau, epsilon, out);
  return out;
}

bool descent_move_into(std::span<const double> x, std::span<const double> g,
                       std::size_t pivot, std::span<const std::size_t> zeroed,
                       std::span<double> out) {
  require_dimension(g, x.size(), "descent_move");
  require_dimension(out, x.size(), "descent_move output");
  if (pivot >= x.size()) throw std::out_of_range("descent_move: pivot out of range");

  if (out.data() != x.data()) std::copy(x.begin(), x.end(), out.begin());
  double mass = 0.0;
  for (std::size_t h : zeroed) {
    if (h == pivot) continue;
    mass += std::fabs(x[h]);
    out[h] = 0.0;
  }
  if (mass == 0.0) return false;
  out[pivot] = x[pivot] - sign_nonneg(g[pivot]) * mass;
  return true;
}

std::optional<DescentMove> descent_move(std::span<const double> x,
                                        std::span<const double> g,
                                        const ActiveSetPartition& partition,
                                        std::span<const std::size_t> zeroed) {
  if (partition.steepest.empty()) return std::nullopt;
  DescentMove move;
  move.pivot = partition.steepest.front();
  move.x.resize(x.size());
  move.moved = descent_move_into(x, g, move.pivot, zeroed, move.x);
  return move;
}

std::optional<DescentMove> descent_move(std::span<const double> x,
                                        std::span<const double> g,
                                        const ActiveSetPartition& partition) {
  return descent_move(x, g, partition, partition.active);
}

Vector stationarity_violation(std::span<const double> x,
                              std::span<const double> g, double tau) {
  require_dimension(g, x.size(), "stationarity_violation");
  const double gx = kernels::dot(g, x);
  Vector psi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double to_pos = -(tau * g[i] - gx);   // -g'(tau e_i - x)
    const double to_neg = -(-tau * g[i] - gx);  // -g'(-tau e_i - x)
    psi[i] = std::max({0.0, to_pos, to_neg});
  }
  return psi;
}

EpsilonController::EpsilonController(double initial, double shrink_factor,
                                     double floor)
    : epsilon_(initial), shrink_(shrink_factor), floor_(floor) {
  if (!(floor_ > 0.0)) throw std::invalid_argument("EpsilonController: floor must be > 0");
  if (!(initial >= floor_)) throw std::invalid_argument("EpsilonController: initial epsilon below floor");
  if (!(shrink_ > 0.0 && shrink_ < 1.0))
    throw std::invalid_argument("EpsilonController: shrink factor must be in (0,1)");
}

bool EpsilonController::shrink() noexcept {
  if (at_floor()) return false;
  epsilon_ = std::max(epsilon_ * shrink_, floor_);
  return true;
}

EpsilonController::Verdict EpsilonController::adapt(double phi_before,
                                                    double phi_after,
                                                    bool moved) noexcept {
  if (!moved || phi_after < phi_before) return Verdict::Accept;
  return shrink() ? Verdict::Retry : Verdict::Fallback;
}

}  // namespace asl1
