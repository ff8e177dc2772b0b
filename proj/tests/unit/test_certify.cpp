#include <cmath>
#include <random>

#include "doctest.h"
#include "dualdfi/certify/certificate.hpp"
#include "dualdfi/dfi/calculus.hpp"
#include "instances.hpp"
#include "random_problems.hpp"

using namespace dualdfi::certify;
using namespace dualdfi::transcription;
using dualdfi::numerics::kInf;

namespace {

DualTrajectory e2_hand(const Grid& g, double (*lam2)(double), double scale = 1.0) {
  std::vector<Vector> lam;
  for (std::size_t k = 0; k <= g.N; ++k) lam.push_back({0.0, scale * lam2(g.t(k))});
  return polyhedral_dual_from_lambda(instances::e2(), g, lam);
}

double one_minus_t(double t) { return 1.0 - t; }

// Every dual component, one at a time.
std::vector<double*> components(DualTrajectory& d) {
  std::vector<double*> out;
  for (auto& v : d.xstar)
    for (double& c : v) out.push_back(&c);
  for (auto& e : d.eta)
    for (auto& v : e)
      for (double& c : v) out.push_back(&c);
  for (auto& v : d.lambda)
    for (double& c : v) out.push_back(&c);
  return out;
}

}  // namespace

TEST_CASE("Euler-Lagrange check") {
  const auto p = instances::e2();
  Grid g(32);
  const auto x = solve_primal(p, g).trajectory;
  const auto hand = e2_hand(g, one_minus_t);
  const auto ok = check_euler_lagrange(p, x, hand, 2 * g.h());
  CHECK(ok.pass);
  CHECK(adjoint_residual(p, hand) < 1e-9);

  const auto bent = e2_hand(g, [](double t) { return 1.0 - t + 0.1 * t * t; });
  CHECK(adjoint_residual(p, bent) == doctest::Approx(0.2).epsilon(1e-6));
  CHECK_FALSE(check_euler_lagrange(p, x, bent, 1e-3).pass);

  const auto e1 = instances::e1();
  const auto x1 = solve_primal(e1, g).trajectory;
  DualTrajectory d1;
  d1.grid = g;
  d1.xstar.assign(33, {-1.0});
  CHECK(check_euler_lagrange(e1, x1, d1, 1e-9).residual < 1e-12);

  DualTrajectory other = d1;
  other.grid = Grid(16);
  CHECK_THROWS_AS(check_euler_lagrange(e1, x1, other, 1.0), std::invalid_argument);
}

TEST_CASE("transversality") {
  const auto p = instances::e2();
  Grid g(32);
  const auto x = solve_primal(p, g).trajectory;
  const auto t = check_transversality(p, x, e2_hand(g, one_minus_t), 1e-6);
  REQUIRE(t.size() == 2);
  CHECK(t[0].name == "transversality_t0");
  CHECK(t[0].pass);
  CHECK(t[1].pass);
  const auto vals = dual_argument_values(p, e2_hand(g, one_minus_t));
  CHECK(vals.g1[0] == doctest::Approx(1.0));
  CHECK(std::fabs(vals.g1[1]) < 1e-12);

  const auto doubled = check_transversality(p, x, e2_hand(g, one_minus_t, 2.0), 1e-3);
  CHECK(doubled[0].pass);  // singleton initial sets accept any dual
  CHECK_FALSE(doubled[1].pass);
  CHECK(doubled[1].residual >= 1.0);

  // Box initial set: the optimal start sits on a face, the dual must point inward.
  auto q = instances::e1();
  q.Q = {dualdfi::convex::Polytope::box({0.0}, {2.0})};
  const auto sol = solve_primal(q, g);
  CHECK(sol.trajectory.z[0][0][0] == doctest::Approx(0.0));
  const auto d = extract_dual_trajectory(sol.lp, q, g);
  CHECK(check_transversality(q, sol.trajectory, d, 1e-9)[0].pass);
  auto flipped = d;
  for (auto& v : flipped.xstar) v[0] = -v[0];
  CHECK_FALSE(check_transversality(q, sol.trajectory, flipped, 1e-3)[0].pass);
}

TEST_CASE("maximum condition") {
  const auto p = instances::e2();
  Grid g(16);
  const auto x = solve_primal(p, g).trajectory;
  // The last control never reaches x(1).
  for (std::size_t k = 0; k + 1 < g.N; ++k) CHECK(x.v[k][0] == doctest::Approx(-1.0));
  CHECK(check_maximum_condition(p, x, e2_hand(g, one_minus_t), 1e-9).pass);

  const auto e1 = instances::e1();
  auto x1 = solve_primal(e1, g).trajectory;
  DualTrajectory d1;
  d1.grid = g;
  d1.xstar.assign(17, {-1.0});
  CHECK(check_maximum_condition(e1, x1, d1, 1e-9).residual < 1e-12);
  for (auto& u : x1.u) u = {0.0};
  const auto bad = check_maximum_condition(e1, x1, d1, 1e-3);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual == doctest::Approx(1.0));

  auto neg = e2_hand(g, one_minus_t);
  neg.lambda[3][0] = -0.5;
  CHECK_FALSE(check_maximum_condition(p, x, neg, 1e-3).pass);
}

TEST_CASE("weak duality and gaps") {
  const auto e1 = instances::e1();
  Grid g(16);
  PrimalTrajectory still;
  still.grid = g;
  still.z.assign(17, {{1.0}});
  still.v.assign(16, {0.0});
  still.u.assign(16, {0.0});
  DualTrajectory d1;
  d1.grid = g;
  d1.xstar.assign(17, {-1.0});
  const auto w = check_weak_duality(e1, still, d1);
  CHECK(w.gap == doctest::Approx(1.0));
  CHECK(w.pass);

  CHECK(duality_gap(e1, g) < 1e-12);
  CHECK(duality_gap(instances::e2(), g) <= 1e-6);
  auto flat = instances::e2();
  flat.phi = dualdfi::convex::PiecewiseMaxAffine({{{0.0, 0.0}, 0.0}});
  CHECK(duality_gap(flat, g) == 0.0);

  // Optimal pair on E2: gap to the continuous hand dual is 1/(2N).
  const auto x = solve_primal(instances::e2(), g).trajectory;
  const auto we = check_weak_duality(instances::e2(), x, e2_hand(g, one_minus_t));
  CHECK(we.gap >= 0.0);
  CHECK(we.gap <= 1.0 / 16 + 1e-12);
}

TEST_CASE("extracted duals certify the optimal trajectory") {
  for (int which = 0; which < 3; ++which) {
    const auto p = which == 0 ? instances::e1() : which == 1 ? instances::e2() : instances::e2_semilinear();
    for (std::size_t N : {4u, 32u}) {
      Grid g(N);
      const auto sol = solve_primal(p, g);
      const auto d = extract_dual_trajectory(sol.lp, p, g);
      const double tau = default_tolerance(g);
      const auto r = certify(p, sol.trajectory, d, tau, tau);
      CHECK(r.pass);
      CHECK(r.entries.size() == 7);
      CHECK(std::fabs(r.gap) < 1e-9);
      REQUIRE(r.find("euler_lagrange") != nullptr);
      CHECK(r.find("nothing") == nullptr);
    }
  }
}

TEST_CASE("single-component mutations are rejected") {
  for (int which = 0; which < 2; ++which) {
    const auto p = which == 0 ? instances::e1() : instances::e2();
    Grid g(64);
    const double tau = default_tolerance(g);
    const auto sol = solve_primal(p, g);
    const auto d = extract_dual_trajectory(sol.lp, p, g);
    REQUIRE(certify(p, sol.trajectory, d, tau, tau).pass);
    auto m = d;
    const auto comps = components(m);
    CHECK(comps.size() >= 20);
    for (double sign : {1.0, -1.0})
      for (double* c : comps) {
        const double keep = *c;
        *c += sign * 100 * tau;
        CHECK_FALSE(certify(p, sol.trajectory, m, tau, tau).pass);
        *c = keep;
      }
  }
}

TEST_CASE("generic LAM membership agrees on extracted duals") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 12; ++trial) {
    const auto p = trial % 2 == 0 ? randprob::random_semilinear(rng, 1 + trial % 3, 1 + trial % 2)
                                  : randprob::random_polyhedral(rng, 1 + trial % 2, 2 + trial % 4);
    Grid g(8);
    const auto sol = solve_primal(p, g);
    const auto d = extract_dual_trajectory(sol.lp, p, g);
    const auto vals = dual_argument_values(p, d);
    const std::size_t n = p.n(), kappa = p.kappa();
    for (std::size_t k = 0; k < g.N; ++k) {
      std::vector<Vector> cand(kappa, Vector(n));
      Vector vstar(n);
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < kappa; ++i) cand[i][c] = vals.g2[k][i * n + c];
        vstar[c] = vals.g2[k][kappa * n + c];
      }
      std::vector<Vector> z(sol.trajectory.z[k].begin(), sol.trajectory.z[k].end());
      CHECK(dualdfi::dfi::lam_contains(p.F, vstar, z, sol.trajectory.v[k], cand, 1e-6));
      cand[0][0] += 0.5;
      CHECK_FALSE(dualdfi::dfi::lam_contains(p.F, vstar, z, sol.trajectory.v[k], cand, 1e-6));
    }
  }
}
