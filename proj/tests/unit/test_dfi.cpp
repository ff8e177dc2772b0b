#include <cmath>
#include <random>

#include "doctest.h"
#include "dualdfi/dfi/calculus.hpp"
#include "instances.hpp"

using namespace dualdfi::dfi;
using dualdfi::numerics::kInf;

TEST_CASE("problem validation") {
  CHECK_NOTHROW(instances::e1().validate());
  CHECK_NOTHROW(instances::e2().validate());
  auto p = instances::e2_semilinear();
  p.Q.pop_back();
  CHECK_THROWS_WITH_AS(p.validate(), "Q must have κ entries", std::invalid_argument);

  auto q = instances::e1();
  std::get<SemilinearMap>(q.F).U = Polytope(Matrix{{-1.0}}, {1.0});
  CHECK_THROWS_WITH_AS(q.validate(), "U must be bounded", std::invalid_argument);

  auto e = instances::e2();
  std::get<PolyhedralMap2>(e.F).d = {1.0};
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);

  // Empty F at the reference point.
  auto h = instances::half_line_map();
  h.C = Matrix{{0.0}};
  h.d = {-1.0};
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}

TEST_CASE("hamiltonian") {
  const Inclusion f = instances::semilinear_1d(1, {2.0}, 1.0, -1.0, 1.0);
  CHECK(hamiltonian(f, {{1.0}}, {3.0}) == doctest::Approx(9.0));
  CHECK(hamiltonian(f, {{4.0}}, {0.0}) == 0.0);
  const Inclusion g = instances::half_line_map();
  CHECK(hamiltonian(g, {{2.0}, {0.0}}, {-1.0}) == doctest::Approx(-2.0));
  CHECK(hamiltonian(g, {{2.0}, {0.0}}, {1.0}) == kInf);

  auto empty = instances::half_line_map();
  empty.A = Matrix{{0.0}};
  empty.B = Matrix{{1.0}};
  empty.C = Matrix{{0.0}};
  CHECK(hamiltonian(Inclusion{empty}, {{0.0}, {1.0}}, {1.0}) == -kInf);
  CHECK_THROWS_AS(hamiltonian(f, {{1.0, 2.0}}, {3.0}), std::invalid_argument);
}

TEST_CASE("argmax membership") {
  const Inclusion f = instances::semilinear_1d(1, {0.0}, 1.0, -1.0, 1.0);
  CHECK(argmax_contains(f, {{0.0}}, {1.0}, {2.0}, 1e-9));
  CHECK_FALSE(argmax_contains(f, {{0.0}}, {0.0}, {2.0}, 1e-9));
  CHECK(argmax_contains(f, {{0.0}}, {0.3}, {0.0}, 1e-9));
  CHECK_FALSE(argmax_contains(f, {{0.0}}, {1.5}, {0.0}, 1e-9));
  const Inclusion g = instances::half_line_map();
  CHECK(argmax_contains(g, {{2.0}, {0.0}}, {2.0}, {-1.0}, 1e-9));
  CHECK_FALSE(argmax_contains(g, {{2.0}, {0.0}}, {3.0}, {-1.0}, 1e-9));
  CHECK_THROWS_WITH_AS(argmax_contains(g, {{2.0}, {0.0}}, {3.0}, {1.0}, 1e-9), "argmax undefined",
                       std::domain_error);
}

TEST_CASE("locally adjoint mapping") {
  const Inclusion f = instances::semilinear_1d(1, {2.0}, 1.0, -1.0, 1.0);
  CHECK(lam_contains(f, {3.0}, {{0.0}}, {1.0}, {{6.0}}, 1e-9));
  CHECK_FALSE(lam_contains(f, {3.0}, {{0.0}}, {1.0}, {{5.0}}, 1e-9));
  for (double c : {-4.0, 0.0, 4.0, 6.0}) CHECK_FALSE(lam_contains(f, {2.0}, {{0.0}}, {0.0}, {{c}}, 1e-9));

  const Inclusion g = instances::half_line_map();
  CHECK(lam_contains(g, {-1.0}, {{2.0}, {0.0}}, {2.0}, {{-1.0}, {0.0}}, 1e-9));
  CHECK_FALSE(lam_contains(g, {-1.0}, {{2.0}, {0.0}}, {2.0}, {{-2.0}, {0.0}}, 1e-9));
  // Inactive row forces lambda = 0, so only the zero covector qualifies.
  CHECK_FALSE(lam_contains(g, {-1.0}, {{2.0}, {0.0}}, {3.0}, {{-1.0}, {0.0}}, 1e-9));
  CHECK_THROWS_AS(lam_contains(g, {-1.0}, {{2.0}, {0.0}}, {1.0}, {{-1.0}, {0.0}}, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("M_F values") {
  const Inclusion f = instances::semilinear_1d(1, {0.0}, 1.0, -1.0, 1.0);
  CHECK(m_value(f, {{0.0}, {2.0}}).value == doctest::Approx(-2.0));
  CHECK(m_value(f, {{1.0}, {2.0}}).value == -kInf);
  CHECK(m_value(f, {{0.0}, {0.0}}).value == 0.0);

  const Inclusion g = instances::half_line_map();
  const auto m = m_value(g, {{-1.0}, {0.0}, {-1.0}});
  CHECK(m.value == doctest::Approx(0.0));
  REQUIRE(m.lambda.size() == 1);
  CHECK(m.lambda[0] == doctest::Approx(1.0));
  CHECK(m_value(g, {{0.0}, {0.0}, {0.0}}).value == doctest::Approx(0.0));
  CHECK(m_value(g, {{1.0}, {0.0}, {0.0}}).value == -kInf);
}

TEST_CASE("LAM membership implies argmax membership") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const Inclusion f = instances::semilinear_1d(2, {0.5, -1.0}, 2.0, -1.0, 1.0);
  int hits = 0;
  for (int t = 0; t < 200; ++t) {
    const Stack z{{u(rng)}, {u(rng)}};
    const Vector vs{u(rng)};
    const double uc = (t % 2 == 0) ? (vs[0] >= 0 ? 1.0 : -1.0) : u(rng);
    const Vector v{0.5 * z[0][0] - z[1][0] + 2.0 * uc};
    const Stack cand{{0.5 * vs[0]}, {-vs[0]}};
    if (lam_contains(f, vs, z, v, cand, 1e-9)) {
      ++hits;
      CHECK(argmax_contains(f, z, v, vs, 1e-9));
    }
  }
  CHECK(hits > 50);
}

TEST_CASE("adjoint system text and coefficients") {
  CHECK(adjoint_system(instances::semilinear_1d(1, {0.0}, 1, -1, 1)).text() == "−x*′ = A₀ᵀx*");
  CHECK(adjoint_system(instances::semilinear_1d(2, {0.0, 0.0}, 1, -1, 1)).text() ==
        "η₁* = A₁ᵀx*; x*″ = A₀ᵀx* − A₁ᵀx*′");
  const auto s3 = adjoint_system(instances::semilinear_1d(3, {1.0, 2.0, 3.0}, 1, -1, 1));
  CHECK(s3.text() == "η₁* = A₂ᵀx*; η₂* = A₁ᵀx* − A₂ᵀx*′; −x*‴ = A₀ᵀx* − A₁ᵀx*′ + A₂ᵀx*″");

  // derivs = (x*, x*', x*'', x*''') = (1, 2, 3, 4)
  const std::vector<Vector> d{{1.0}, {2.0}, {3.0}, {4.0}};
  CHECK(s3.eta_value(1, d)[0] == doctest::Approx(3.0));
  CHECK(s3.eta_value(2, d)[0] == doctest::Approx(2.0 - 3.0 * 2.0));
  // -4 - (1 - 2*2 + 3*3)
  CHECK(s3.ode_residual(d)[0] == doctest::Approx(-4.0 - 6.0));
  CHECK(s3.lhs_sign == -1);
  CHECK(s3.ode.size() == 3);
  CHECK(s3.ode[1] == AdjointTerm{1, -1, 1});
}
