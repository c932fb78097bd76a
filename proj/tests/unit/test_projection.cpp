#include <doctest.h>

#include "asl1/projection.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace asl1;
using testing::l1;

namespace {

void check_vec(const Vector& got, const Vector& want, double tol = 1e-12) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i] - want[i]) <= tol);
  }
}

Vector random_v(std::size_t n, Rng& rng) {
  Vector v(n);
  for (double& x : v) x = rng.normal() * 2.0;
  return v;
}

}  // namespace

TEST_CASE("l1-ball projection examples") {
  for (auto proj : {project_l1_ball, project_l1_ball_fast}) {
    check_vec(proj(Vector{0.2, -0.3}, 1.0), {0.2, -0.3}, 0.0);
    check_vec(proj(Vector{2.0, 1.0}, 1.0), {1.0, 0.0});
    check_vec(proj(Vector{3.0, 0.0}, 1.0), {1.0, 0.0});
    check_vec(proj(Vector{-3.0, 0.0}, 1.0), {-1.0, 0.0});
    check_vec(proj(Vector{1.0, 1.0, 1.0, 1.0}, 2.0), {0.5, 0.5, 0.5, 0.5});
    check_vec(proj(Vector{}, 1.0), {});
  }
  check_vec(testing::brute_force_l1_projection(Vector{2.0, 1.0}, 1.0), {1.0, 0.0});
}

TEST_CASE("interior points are returned unchanged") {
  const Vector v{0.1, -0.2, 0.3};
  const Vector p = project_l1_ball(v, 0.6 + 1e-15);
  CHECK(p == v);
  CHECK(l1_ball_threshold(v, 1.0) == 0.0);
}

TEST_CASE("projection input validation") {
  CHECK_THROWS_AS(project_l1_ball(Vector{1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(project_l1_ball(Vector{1.0}, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(project_l1_ball(Vector{std::nan("")}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(project_l1_ball_fast(Vector{std::numeric_limits<double>::infinity()}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(project_simplex(Vector{}), std::invalid_argument);
  CHECK_THROWS_AS(project_simplex(Vector{std::nan("")}), std::invalid_argument);
}

TEST_CASE("projection matches brute-force enumeration") {
  Rng rng(101);
  for (int rep = 0; rep < 3000; ++rep) {
    const std::size_t n = 2 + rng.below(5);
    const Vector v = random_v(n, rng);
    const double tau = rng.uniform(0.1, 3.0);
    const Vector want = testing::brute_force_l1_projection(v, tau);
    check_vec(project_l1_ball(v, tau), want, 1e-10);
    check_vec(project_l1_ball_fast(v, tau), want, 1e-10);
  }
}

TEST_CASE("projection properties") {
  Rng rng(7);
  L1BallProjector proj;
  for (int rep = 0; rep < 500; ++rep) {
    const std::size_t n = 1 + rng.below(40);
    const double tau = rng.uniform(0.05, 5.0);
    const Vector v = random_v(n, rng);
    const Vector p = project_l1_ball(v, tau);

    CHECK(l1(p) <= tau * (1.0 + 1e-12));
    check_vec(project_l1_ball(p, tau), p, 1e-14);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK((p[i] == 0.0 || std::signbit(p[i]) == std::signbit(v[i])));
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(v[i]) >= std::abs(v[j])) CHECK(std::abs(p[i]) >= std::abs(p[j]));
    }

    const Vector u = random_v(n, rng);
    const Vector pu = project_l1_ball(u, tau);
    CHECK(testing::dist2(p, pu) <= testing::dist2(v, u) + 1e-12);

    const double dp = testing::dist2(p, v);
    for (int k = 0; k < 20; ++k) {
      const Vector w = testing::random_feasible(n, tau, rng, 1.0);
      CHECK(dp <= testing::dist2(w, v) + 1e-8);
    }

    Vector fast(n);
    const double theta = proj.project(v, tau, fast);
    check_vec(fast, p, 1e-12);
    CHECK(theta == doctest::Approx(l1_ball_threshold(v, tau)).epsilon(1e-12));

    Vector inplace = v;
    proj.project(inplace, tau, inplace);
    check_vec(inplace, p, 1e-12);
  }
}

TEST_CASE("fast projection on large and tied inputs") {
  Rng rng(9);
  L1BallProjector proj;
  for (std::size_t n : {1000, 5000}) {
    Vector v(n);
    for (double& x : v) x = rng.normal();
    for (double tau : {0.01, 1.0, 30.0, 300.0}) {
      const Vector ref = project_l1_ball(v, tau);
      Vector out(n);
      proj.project(v, tau, out);
      check_vec(out, ref, 1e-12);
      CHECK(l1(out) <= tau * (1.0 + 1e-12));
    }
  }
  const Vector tied(64, -0.75);
  const Vector p = project_l1_ball_fast(tied, 8.0);
  for (double x : p) CHECK(x == doctest::Approx(-0.125));
}

TEST_CASE("restricted projection") {
  {
    RestrictedManifold m(1.0, {1}, 3);
    check_vec(project_restricted(Vector{5.0, 5.0, 5.0}, m), {0.0, 1.0, 0.0});
  }
  {
    RestrictedManifold m(1.0, {0, 1}, 3);
    check_vec(project_restricted(Vector{0.1, 0.2, 0.9}, m), {0.1, 0.2, 0.0});
    check_vec(project_restricted(Vector{2.0, 1.0, 7.0}, m), {1.0, 0.0, 0.0});
  }
  {
    RestrictedManifold m(1.0, {}, 3);
    check_vec(project_restricted(Vector{5.0, 5.0, 5.0}, m), {0.0, 0.0, 0.0});
  }
  CHECK_THROWS_AS(RestrictedManifold(1.0, {0, 3}, 3), std::invalid_argument);
  CHECK_THROWS_AS(RestrictedManifold(1.0, {1, 1}, 3), std::invalid_argument);
  CHECK_THROWS_AS(RestrictedManifold(1.0, {2, 1}, 3), std::invalid_argument);
  RestrictedManifold m(1.0, {0}, 2);
  CHECK_THROWS_AS(project_restricted(Vector{1.0}, m), DimensionError);
}

TEST_CASE("restricted projection matches subvector projection") {
  Rng rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(10);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < n; ++i)
      if (rng.coin()) free.push_back(i);
    const double tau = rng.uniform(0.1, 2.0);
    const Vector v = random_v(n, rng);
    Vector sub;
    for (auto i : free) sub.push_back(v[i]);
    const Vector ps = free.empty() ? Vector{} : project_l1_ball(sub, tau);
    const Vector p = project_restricted(v, RestrictedManifold(tau, free, n));
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (k < free.size() && free[k] == i) {
        CHECK(p[i] == doctest::Approx(ps[k]).epsilon(1e-12));
        ++k;
      } else {
        CHECK(p[i] == 0.0);
      }
    }
  }
}

TEST_CASE("simplex projection") {
  check_vec(project_simplex(Vector{1.0, 0.0}), {1.0, 0.0});
  check_vec(project_simplex(Vector{0.5, 0.5}), {0.5, 0.5});
  check_vec(project_simplex(Vector{1.0, 1.0}), {0.5, 0.5});
  check_vec(project_simplex(Vector{-5.0, -5.0, 10.0}), {0.0, 0.0, 1.0});
  Rng rng(4);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng.below(6);
    const Vector v = random_v(n, rng);
    const Vector p = project_simplex(v);
    check_vec(p, testing::brute_force_simplex_projection(v), 1e-10);
    double s = 0.0;
    for (double x : p) {
      CHECK(x >= 0.0);
      s += x;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("projected gradient residual") {
  // Vertex with a gradient pointing outward is stationary.
  CHECK(projected_gradient_residual(Vector{1.0, 0.0}, Vector{-1.0, 0.0}, 1.0) == 0.0);
  // Interior point: residual equals the gradient norm when the step stays inside.
  CHECK(projected_gradient_residual(Vector{0.0, 0.0}, Vector{0.3, -0.4}, 1.0) ==
        doctest::Approx(0.5));
  // Origin with a large gradient: P(-g) = (-1, 0).
  CHECK(projected_gradient_residual(Vector{0.0, 0.0}, Vector{5.0, 0.0}, 1.0) ==
        doctest::Approx(1.0));
}
