#include "dualdfi/dfi/problem.hpp"

#include <stdexcept>

#include "dualdfi/numerics/lp.hpp"

namespace dualdfi::dfi {

namespace {

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument(what + ": expected " + std::to_string(rows) + "x" +
                                std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  if (!m.all_finite()) throw std::invalid_argument(what + ": non-finite entry");
}

}  // namespace

void SemilinearMap::validate() const {
  if (kappa < 1) throw std::invalid_argument("kappa must be at least 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (A.size() != kappa) throw std::invalid_argument("A must have kappa entries");
  for (std::size_t j = 0; j < kappa; ++j) require_shape(A[j], n, n, "A[" + std::to_string(j) + "]");
  require_shape(B, n, r, "B");
  if (U.dim() != r) throw std::invalid_argument("U: dimension must equal r");
  if (!U.bounded()) throw std::invalid_argument("U must be bounded");
}

void PolyhedralMap2::validate() const {
  const std::size_t rows = s();
  const std::size_t dim = n();
  if (dim < 1) throw std::invalid_argument("C: n must be at least 1");
  require_shape(A, rows, dim, "A");
  require_shape(B, rows, dim, "B");
  require_shape(C, rows, dim, "C");
  if (!numerics::all_finite(d)) throw std::invalid_argument("d: non-finite entry");
  const Vector x = ref_x.value_or(Vector(dim, 0.0));
  const Vector v1 = ref_v1.value_or(Vector(dim, 0.0));
  numerics::require_size(x.size(), dim, "reference.x");
  numerics::require_size(v1.size(), dim, "reference.v1");
  // F(x, v1) = {v : -C v <= d - A x - B v1}
  numerics::LPProblem lp;
  lp.cost.assign(dim, 0.0);
  lp.ineq = Matrix(rows, dim);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < dim; ++j) lp.ineq(i, j) = -C(i, j);
  const Vector ax = A.multiply(x);
  const Vector bv = B.multiply(v1);
  lp.ineq_rhs.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) lp.ineq_rhs[i] = d[i] - ax[i] - bv[i];
  lp.eq = Matrix(0, dim);
  if (numerics::solve_lp(lp).status == numerics::LPStatus::Infeasible)
    throw std::invalid_argument("F must be nonempty at the reference point");
}

std::size_t order(const Inclusion& f) {
  if (const auto* s = std::get_if<SemilinearMap>(&f)) return s->kappa;
  return 2;
}

std::size_t state_dim(const Inclusion& f) {
  if (const auto* s = std::get_if<SemilinearMap>(&f)) return s->n;
  return std::get<PolyhedralMap2>(f).n();
}

void MayerProblem::validate() const {
  std::visit([](const auto& m) { m.validate(); }, F);
  const std::size_t k = kappa();
  const std::size_t dim = n();
  if (Q.size() != k) throw std::invalid_argument("Q must have κ entries");
  for (std::size_t j = 0; j < k; ++j)
    if (Q[j].dim() != dim)
      throw std::invalid_argument("Q[" + std::to_string(j) + "]: dimension must equal n");
  if (phi.pieces().empty()) throw std::invalid_argument("phi: needs at least one piece");
  if (phi.dim() != k * dim) throw std::invalid_argument("phi: slope length must equal κ·n");
}

}  // namespace dualdfi::dfi
