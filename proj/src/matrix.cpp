#include "oqec/matrix.hpp"

#include <cmath>

namespace oqec {

void check_tolerance(const Tolerance& tol) {
  if (!(tol.atol > 0.0) || !std::isfinite(tol.atol))
    throw std::invalid_argument("tolerance atol must be positive and finite");
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("frobenius_distance: shape mismatch " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  return (a - b).norm();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  const Tolerance& tol) {
  return frobenius_distance(a, b) <= tol.atol;
}

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (!m.allFinite())
    throw Error(what + ": matrix has non-finite entries");
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, Index rows, Index cols) {
  if (v.size() != rows * cols)
    throw DimensionMismatch("unvectorize: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace();
}

std::vector<ComplexMatrix> hermitian_matrix_basis(Index n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index k = 0; k < n; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(k, k) = 1.0;
    basis.push_back(e);
  }
  for (Index k = 0; k < n; ++k) {
    for (Index l = k + 1; l < n; ++l) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(k, l) = inv_sqrt2;
      sym(l, k) = inv_sqrt2;
      basis.push_back(sym);
      ComplexMatrix asym = ComplexMatrix::Zero(n, n);
      asym(k, l) = Complex(0.0, -inv_sqrt2);
      asym(l, k) = Complex(0.0, inv_sqrt2);
      basis.push_back(asym);
    }
  }
  return basis;
}

double isometry_defect(const ComplexMatrix& m) {
  return (m.adjoint() * m -
          ComplexMatrix::Identity(m.cols(), m.cols()))
      .norm();
}

double projector_defect(const ComplexMatrix& p) {
  if (p.rows() != p.cols())
    throw DimensionMismatch("projector_defect: matrix not square");
  const double idem = (p * p - p).norm();
  const double herm = (p.adjoint() - p).norm();
  return std::max(idem, herm);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("psd_sqrt: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd evals = es.eigenvalues();
  for (Index i = 0; i < evals.size(); ++i) {
    if (evals(i) < -tol.atol)
      throw Error("psd_sqrt: matrix has eigenvalue " +
                  std::to_string(evals(i)) + " below -atol");
    evals(i) = std::sqrt(std::max(evals(i), 0.0));
  }
  return es.eigenvectors() * evals.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix orthonormal_span(const ComplexMatrix& vectors_as_columns,
                               double rel_cut) {
  if (vectors_as_columns.cols() == 0)
    return ComplexMatrix(vectors_as_columns.rows(), 0);
  Eigen::BDCSVD<ComplexMatrix> svd(vectors_as_columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0)
    return ComplexMatrix(vectors_as_columns.rows(), 0);
  const double cut = rel_cut * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

ComplexMatrix complete_to_unitary(const ComplexMatrix& v) {
  const Index d = v.rows();
  const Index r = v.cols();
  if (r > d) throw DimensionMismatch("complete_to_unitary: more cols than rows");
  if (r == d) return v;
  // Householder QR of v spans ran(v) in its first r columns, so the trailing
  // columns of the full Q form the complement.
  Eigen::HouseholderQR<ComplexMatrix> qr(v);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix out(d, d);
  out.leftCols(r) = v;
  out.rightCols(d - r) = q.rightCols(d - r);
  return out;
}

//----------------------------------------------------------------------------
// Rng
//----------------------------------------------------------------------------

double Rng::uniform01() {
  // 53-bit mantissa from the top bits of the raw stream.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform01();
  while (u1 <= 0.0) u1 = uniform01();
  const double u2 = uniform01();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double two_pi = 6.283185307179586476925286766559;
  spare_ = mag * std::sin(two_pi * u2);
  has_spare_ = true;
  return mag * std::cos(two_pi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im);
}

ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (cols > rows)
    throw DimensionMismatch("random_isometry: cols exceeds rows");
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(rows, cols);
  ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the distribution is Haar.
  for (Index j = 0; j < cols; ++j) {
    const Complex rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0.0) ? rjj / a : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  return random_isometry(dim, dim, rng);
}

ComplexVector random_state(Index dim, Rng& rng) {
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = rng.complex_gaussian();
  return v / v.norm();
}

ComplexMatrix random_hermitian(Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_density(Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace oqec
