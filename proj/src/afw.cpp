#include "asl1/baselines.hpp"

#include "asl1/kernels.hpp"
#include "asl1/line_search.hpp"
#include "asl1/projection.hpp"
#include "solver_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace asl1 {

AtomWeights::AtomWeights(std::size_t dimension)
    : dimension_(dimension), weights_(2 * dimension, 0.0) {
  if (dimension_ == 0) throw std::invalid_argument("AtomWeights: dimension must be >= 1");
}

AtomWeights AtomWeights::origin(std::size_t dimension) {
  AtomWeights w(dimension);
  w.set({0, false}, 0.5);
  w.set({0, true}, 0.5);
  return w;
}

AtomWeights AtomWeights::vertex(std::size_t dimension, Atom atom) {
  AtomWeights w(dimension);
  w.set(atom, 1.0);
  return w;
}

std::size_t AtomWeights::slot(Atom atom) const {
  if (atom.index >= dimension_) throw std::out_of_range("AtomWeights: atom index out of range");
  return atom.negative ? dimension_ + atom.index : atom.index;
}

double AtomWeights::weight(Atom atom) const { return weights_[slot(atom)]; }

void AtomWeights::set(Atom atom, double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw std::invalid_argument("AtomWeights: weight must be finite and >= 0");
  const std::size_t s = slot(atom);
  const bool was = weights_[s] > 0.0;
  weights_[s] = weight;
  if (weight > 0.0 && !was) {
    support_.push_back(s);
  } else if (weight == 0.0 && was) {
    support_.erase(std::find(support_.begin(), support_.end(), s));
  }
}

std::vector<std::pair<Atom, double>> AtomWeights::support() const {
  std::vector<std::pair<Atom, double>> out;
  out.reserve(support_.size());
  for (std::size_t s : support_) {
    const Atom atom{s % dimension_, s >= dimension_};
    out.emplace_back(atom, weights_[s]);
  }
  return out;
}

double AtomWeights::total() const noexcept {
  double sum = 0.0;
  for (std::size_t s : support_) sum += weights_[s];
  return sum;
}

bool AtomWeights::valid(double tol) const noexcept {
  for (double w : weights_)
    if (!(w >= 0.0)) return false;
  return std::fabs(total() - 1.0) <= tol;
}

Vector AtomWeights::represented(double tau) const {
  Vector x(dimension_, 0.0);
  for (std::size_t s : support_) {
    if (s < dimension_)
      x[s] += tau * weights_[s];
    else
      x[s - dimension_] -= tau * weights_[s];
  }
  return x;
}

namespace {

constexpr double kDropWeight = 1e-12;

}  // namespace

AfwResult solve_afw(const ProblemInstance& problem, const AtomWeights& start,
                    const SolverConfig& config) {
  config.validate();
  const std::size_t n = problem.dimension();
  if (start.dimension() != n) throw DimensionError("solve_afw: weight dimension mismatch");
  if (!start.valid()) throw std::invalid_argument("solve_afw: starting weights must be a convex combination");

  const ObjectiveOracle& oracle = problem.objective();
  const double tau = problem.radius();

  AfwResult out{SolverResult{}, start, 0, 0};
  AtomWeights& weights = out.weights;
  SolverResult& result = out.result;

  // Dense slot weights, mirrored into `weights` on exit.
  std::vector<double> w(2 * n, 0.0);
  std::vector<std::size_t> support;
  for (const auto& [atom, wt] : start.support()) {
    const std::size_t s = atom.negative ? n + atom.index : atom.index;
    w[s] = wt;
    support.push_back(s);
  }
  auto atom_slope = [&](const Vector& g, std::size_t s) {
    return s < n ? tau * g[s] : -tau * g[s - n];
  };

  Vector x = start.represented(tau);
  detail::require_feasible_start(problem, x, "solve_afw");
  Vector g(n), d(n), x_next(n), g_next(n), probe(n);
  L1BallProjector projector;
  Stopwatch clock;

  double phi = oracle.value_and_gradient(x, g);
  ++result.evaluations;
  detail::require_finite_value(phi, "solve_afw");

  std::size_t k = 0;
  double residual = 0.0;
  for (;; ++k) {
    kernels::waxpy(x, -1.0, g, probe);
    projector.project(probe, tau, probe);
    residual = std::sqrt(kernels::dist_sq(x, probe));
    const double elapsed = clock.seconds();

    // Frank-Wolfe vertex: smallest index of max |g_j|, sign opposite to g_j.
    const double gmax = kernels::max_abs(g);
    std::size_t j = 0;
    while (j + 1 < n && std::fabs(g[j]) != gmax) ++j;
    const std::size_t fw_slot = g[j] >= 0.0 ? n + j : j;
    const double gx = kernels::dot(g, x);
    const double fw_gap = gx + tau * gmax;

    TraceRow row;
    row.iteration = k;
    row.objective = phi;
    row.residual = residual;
    row.n_active = detail::count_zeros(x);
    row.n_nonactive = n - row.n_active;
    row.reference = std::numeric_limits<double>::quiet_NaN();

    std::optional<SolverStatus> stop;
    if (residual <= config.tolerance || fw_gap <= 0.0)
      stop = SolverStatus::Converged;
    else
      stop = detail::limit_reached(config, phi, k, elapsed);
    if (stop) {
      result.status = *stop;
      if (config.record_trace) {
        row.time_s = elapsed;
        result.trace.push(row);
      }
      break;
    }

    std::size_t away_slot = support.front();
    double away_slope = atom_slope(g, away_slot);
    for (std::size_t s : support) {
      const double v = atom_slope(g, s);
      if (v > away_slope) {
        away_slope = v;
        away_slot = s;
      }
    }
    const double away_gap = away_slope - gx;

    const bool fw_step = fw_gap >= away_gap;
    double alpha_max = 1.0;
    if (fw_step) {
      for (std::size_t i = 0; i < n; ++i) d[i] = -x[i];
      d[j] += fw_slot < n ? tau : -tau;
    } else {
      const double wv = w[away_slot];
      alpha_max = wv / (1.0 - wv);
      std::copy(x.begin(), x.end(), d.begin());
      if (away_slot < n)
        d[away_slot] -= tau;
      else
        d[away_slot - n] += tau;
    }

    const LineSearchResult ls = backtracking_armijo(
        oracle, x, phi, g, d, phi, alpha_max, config.line_search, x_next, g_next);
    result.evaluations += ls.evaluations;
    const double alpha = ls.alpha;

    if (alpha > 0.0) {
      if (fw_step) {
        for (std::size_t s : support) w[s] *= 1.0 - alpha;
        if (w[fw_slot] == 0.0 && std::find(support.begin(), support.end(), fw_slot) == support.end())
          support.push_back(fw_slot);
        w[fw_slot] += alpha;
      } else {
        ++out.away_steps;
        for (std::size_t s : support) w[s] *= 1.0 + alpha;
        w[away_slot] -= alpha;
        if (alpha == alpha_max) {
          w[away_slot] = 0.0;
          ++out.drop_steps;
        }
      }
      bool dropped = false;
      std::erase_if(support, [&](std::size_t s) {
        if (w[s] > kDropWeight) return false;
        w[s] = 0.0;
        dropped = true;
        return true;
      });
      if (dropped) {
        double total = 0.0;
        for (std::size_t s : support) total += w[s];
        for (std::size_t s : support) w[s] /= total;
      }
    }

    if (config.record_trace) {
      row.time_s = clock.seconds();
      row.alpha = alpha;
      row.backtrack_capped = ls.capped;
      result.trace.push(row);
    }

    std::swap(x, x_next);
    std::swap(g, g_next);
    phi = ls.value;
  }

  weights = AtomWeights(n);
  for (std::size_t s : support) weights.set({s % n, s >= n}, w[s]);

  result.x = std::move(x);
  result.objective = phi;
  result.residual = residual;
  result.iterations = k;
  result.sparsity = sparsity(result.x);
  result.elapsed_s = clock.seconds();
  return out;
}

}  // namespace asl1
