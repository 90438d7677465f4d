#ifndef OQEC_MATRIX_HPP
#define OQEC_MATRIX_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oqec/errors.hpp"

namespace oqec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Absolute Frobenius-norm threshold used by every comparison in the toolkit.
struct Tolerance {
  double atol = 1e-8;
};

// Throws std::invalid_argument unless tol.atol > 0.
void check_tolerance(const Tolerance& tol);

//----------------------------------------------------------------------------
// Elementary matrix helpers
//----------------------------------------------------------------------------

inline ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  const Tolerance& tol);

// Throws Error if any entry is NaN or Inf.
void require_finite(const ComplexMatrix& m, const std::string& what);

// Kronecker product, block layout: (a⊗b)[(i,k),(j,l)] = a(i,j)·b(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Column-stacking vectorization and its inverse.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, Index rows, Index cols);

// Hilbert–Schmidt inner product Tr(a† b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Orthonormal Hermitian basis of the n×n matrices (n² elements): the
// diagonal units E_kk, then (E_kl+E_lk)/√2 and i(E_lk−E_kl)/√2 for k<l.
std::vector<ComplexMatrix> hermitian_matrix_basis(Index n);

// ‖m†m − 1l‖_F of a (possibly rectangular) matrix; 0 for an exact isometry.
double isometry_defect(const ComplexMatrix& m);

// max(‖p² − p‖_F, ‖p† − p‖_F); 0 for an exact orthogonal projector.
double projector_defect(const ComplexMatrix& p);

// Principal square root of a positive semidefinite Hermitian matrix.
// Negative eigenvalues below -tol.atol throw; small negatives are clipped.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerance& tol);

// Orthonormal basis (as columns) of the span of the given vectors, keeping
// directions whose singular value exceeds rel_cut·σ_max.
ComplexMatrix orthonormal_span(const ComplexMatrix& vectors_as_columns,
                               double rel_cut = 1e-10);

// Extends an isometry v (rows ≥ cols, v†v = 1l) to a full unitary by
// appending an orthonormal basis of the orthogonal complement of ran(v).
ComplexMatrix complete_to_unitary(const ComplexMatrix& v);

//----------------------------------------------------------------------------
// Seeded randomness
//
// All randomized procedures in the toolkit draw from this generator so that
// identical seeds give bit-for-bit identical results across runs. Gaussians
// are produced by Box–Muller over the raw mt19937_64 stream (which the
// standard pins down exactly) rather than std::normal_distribution, whose
// output is implementation-defined.
//----------------------------------------------------------------------------

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01();            // in [0, 1)
  double gaussian();             // standard normal
  Complex complex_gaussian();    // re and im independent N(0, 1)

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-like random unitary via QR of a complex Gaussian matrix with the
// phase-of-R correction.
ComplexMatrix random_unitary(Index dim, Rng& rng);

// Haar-like random isometry of shape rows×cols (rows ≥ cols).
ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng);

// Random unit vector.
ComplexVector random_state(Index dim, Rng& rng);

// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(Index dim, Rng& rng);

// Random density matrix (PSD, unit trace).
ComplexMatrix random_density(Index dim, Rng& rng);

}  // namespace oqec

#endif
