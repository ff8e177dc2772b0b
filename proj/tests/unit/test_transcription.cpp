#include <cmath>
#include <random>

#include "doctest.h"
#include "dualdfi/transcription/dual.hpp"
#include "instances.hpp"

using namespace dualdfi::transcription;
using dualdfi::numerics::kInf;

namespace {

std::vector<Vector> samples(std::size_t N, double (*f)(double)) {
  Grid g(N);
  std::vector<Vector> s;
  for (std::size_t k = 0; k <= N; ++k) s.push_back({f(g.t(k))});
  return s;
}

}  // namespace

TEST_CASE("grid") {
  CHECK_THROWS_AS(Grid(0), std::invalid_argument);
  Grid g(3);
  CHECK(g.t(0) == 0.0);
  CHECK(g.t(3) == 1.0);
  CHECK(g.h() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("finite differences") {
  const auto c = finite_difference(samples(5, [](double) { return 3.0; }), 1, 0.2);
  for (const auto& v : c) CHECK(std::fabs(v[0]) < 1e-12);

  for (std::size_t N : {4u, 7u, 20u}) {
    const double h = 1.0 / N;
    const auto d2 = finite_difference(samples(N, [](double t) { return t * t; }), 2, h);
    for (const auto& v : d2) CHECK(v[0] == doctest::Approx(2.0).epsilon(1e-8));
    const auto d3 = finite_difference(samples(N, [](double t) { return t * t * t; }), 2, h);
    Grid g(N);
    for (std::size_t k = 1; k < N; ++k) CHECK(d3[k][0] == doctest::Approx(6 * g.t(k)).epsilon(1e-8));
    const auto lin = finite_difference(samples(N, [](double t) { return 2 - 5 * t; }), 1, h);
    for (const auto& v : lin) CHECK(v[0] == doctest::Approx(-5.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(finite_difference(samples(1, [](double t) { return t; }), 2, 1.0),
                  std::invalid_argument);

  // Backward stencils for x' at node k use k-1, k.
  const auto s = backward_stencil(8, 5, 1, 0.125);
  CHECK(s.first == 4);
  CHECK(s.weights[0] == doctest::Approx(-8.0));
  CHECK(s.weights[1] == doctest::Approx(8.0));
  CHECK(backward_stencil(8, 0, 2, 0.125).first == 0);
}

TEST_CASE("E1 primal and dual") {
  const auto p = instances::e1();
  for (std::size_t N : {1u, 2u, 16u, 64u}) {
    Grid g(N);
    const auto pr = solve_primal(p, g);
    CHECK(std::fabs(pr.value) < 1e-9);
    for (const auto& u : pr.trajectory.u) CHECK(u[0] == doctest::Approx(-1.0));
    CHECK(primal_violation(p, pr.trajectory) < 1e-9);
    const auto du = solve_dual(p, g);
    CHECK(std::fabs(du.value) < 1e-9);
    const auto ex = extract_dual_trajectory(pr.lp, p, g);
    for (const auto& x : ex.xstar) CHECK(x[0] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(std::fabs(evaluate_dual_objective(p, ex)) < 1e-9);
  }
  CHECK(solve_primal(instances::e1(-1.0), Grid(8)).value == doctest::Approx(-2.0));
}

TEST_CASE("E1 hand values") {
  const auto p = instances::e1();
  Grid g(10);
  PrimalTrajectory x;
  x.grid = g;
  for (std::size_t k = 0; k <= 10; ++k) x.z.push_back({{1.0}});
  x.v.assign(10, {0.0});
  x.u.assign(10, {0.0});
  CHECK(evaluate_primal_objective(p, x) == doctest::Approx(1.0));

  DualTrajectory d;
  d.grid = g;
  d.xstar.assign(11, {-1.0});
  CHECK(std::fabs(evaluate_dual_objective(p, d)) < 1e-12);

  // Unbounded conjugate: slope mismatch at t = 1.
  d.xstar.back() = {0.0};
  CHECK(evaluate_dual_objective(p, d) == -kInf);
}

TEST_CASE("E2 primal, dual and extraction") {
  const auto p = instances::e2();
  for (std::size_t N : {2u, 8u, 32u}) {
    Grid g(N);
    const double expect = -(double(N) - 1) / (2.0 * N);
    const auto pr = solve_primal(p, g);
    CHECK(std::fabs(pr.value - expect) < 1e-9);
    const auto du = solve_dual(p, g);
    CHECK(std::fabs(du.value - expect) < 1e-6);
    const auto sl = solve_primal(instances::e2_semilinear(), g);
    CHECK(std::fabs(sl.value - expect) < 1e-9);
    CHECK(std::fabs(solve_dual(instances::e2_semilinear(), g).value - expect) < 1e-6);

    const auto ex = extract_dual_trajectory(pr.lp, p, g);
    REQUIRE(ex.lambda.size() == N);
    for (std::size_t k = 0; k < N; ++k) {
      CHECK(std::fabs(ex.lambda[k][0]) < 1e-9);
      CHECK(std::fabs(ex.lambda[k][1] - (1.0 - g.t(k))) <= 5 * g.h());
    }
    CHECK(std::fabs(evaluate_dual_objective(p, ex) - expect) < 1e-9);
    CHECK(std::fabs(omega_identity(p, pr.trajectory, ex)) < 1e-9);
  }
}

TEST_CASE("E2 hand dual tends to -1/2") {
  const auto p = instances::e2();
  for (std::size_t N : {16u, 64u, 256u}) {
    Grid g(N);
    std::vector<Vector> lam;
    for (std::size_t k = 0; k <= N; ++k) lam.push_back({0.0, 1.0 - g.t(k)});
    const auto d = polyhedral_dual_from_lambda(p, g, lam);
    const double v = evaluate_dual_objective(p, d);
    CHECK(std::fabs(v + 0.5) <= 1.0 / N);
  }
}

TEST_CASE("constant objective gives zero multipliers") {
  auto p = instances::e2();
  p.phi = dualdfi::convex::PiecewiseMaxAffine({{{0.0, 0.0}, 3.0}});
  Grid g(8);
  const auto pr = solve_primal(p, g);
  CHECK(pr.value == doctest::Approx(3.0));
  const auto ex = extract_dual_trajectory(pr.lp, p, g);
  for (const auto& l : ex.lambda)
    for (double v : l) CHECK(std::fabs(v) < 1e-9);
  for (const auto& x : ex.xstar) CHECK(std::fabs(x[0]) < 1e-9);
}

TEST_CASE("omega identity on arbitrary chains") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  for (std::size_t kappa : {1u, 2u, 3u}) {
    auto p = instances::e2_semilinear();
    p.F = instances::semilinear_1d(kappa, std::vector<double>(kappa, 0.3), 1.0, -1, 1);
    p.Q.assign(kappa, dualdfi::convex::Polytope::point({0.0}));
    p.phi = dualdfi::convex::PiecewiseMaxAffine({{Vector(kappa, 1.0), 0.0}});
    Grid g(9);
    for (int trial = 0; trial < 20; ++trial) {
      // Any Euler chain, feasible or not.
      PrimalTrajectory x;
      x.grid = g;
      x.z.assign(10, std::vector<Vector>(kappa, Vector{0.0}));
      for (std::size_t j = 0; j < kappa; ++j) x.z[0][j] = {U(rng)};
      for (std::size_t k = 0; k < 9; ++k) {
        x.v.push_back({U(rng)});
        x.u.push_back({0.0});
        for (std::size_t j = 0; j < kappa; ++j) {
          const double next = j + 1 < kappa ? x.z[k][j + 1][0] : x.v[k][0];
          x.z[k + 1][j] = {x.z[k][j][0] + g.h() * next};
        }
      }
      DualTrajectory d;
      d.grid = g;
      for (std::size_t k = 0; k <= 9; ++k) d.xstar.push_back({U(rng)});
      d.eta.assign(kappa - 1, std::vector<Vector>(10));
      for (auto& e : d.eta)
        for (auto& v : e) v = {U(rng)};
      CHECK(std::fabs(omega_identity(p, x, d)) < 1e-9);
    }
  }
}

TEST_CASE("weak duality on random dual points") {
  const auto p = instances::e2();
  Grid g(6);
  const double primal = solve_primal(p, g).value;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0, 2);
  int finite = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vector> lam;
    for (std::size_t k = 0; k <= 6; ++k) lam.push_back({U(rng), U(rng)});
    const double v = evaluate_dual_objective(p, polyhedral_dual_from_lambda(p, g, lam));
    if (std::isfinite(v)) ++finite;
    CHECK(v <= primal + 1e-9);
  }
  CHECK(finite == 0);  // terminal slope is pinned, random lambda misses it
}
