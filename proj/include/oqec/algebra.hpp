#ifndef OQEC_ALGEBRA_HPP
#define OQEC_ALGEBRA_HPP

#include <cstdint>
#include <vector>

#include "oqec/channel.hpp"
#include "oqec/matrix.hpp"

namespace oqec {

// Linear basis of an operator space on a d-dimensional Hilbert space.
// Basis elements are orthonormal in the Hilbert–Schmidt inner product.
struct OperatorAlgebra {
  Index dim = 0;
  std::vector<ComplexMatrix> basis;
  bool dagger_closed = false;
  bool product_closed = false;

  Index dimension() const { return static_cast<Index>(basis.size()); }
};

struct AlgebraBlock {
  Index m = 0;  // matrix-factor dimension
  Index n = 0;  // ampliation multiplicity
};

// Unitary block decomposition U† A U = ⊕_J M_{m_J} ⊗ 1l_{n_J} (⊕ 0 on a
// kernel of dimension kernel_dim, placed in the trailing columns of U).
// noise_commutant_blocks reports the transposed orientation ⊕ 1l_{m_J}⊗M_{n_J}.
struct AlgebraStructure {
  ComplexMatrix unitary;
  std::vector<AlgebraBlock> blocks;
  Index kernel_dim = 0;
  double residual = 0.0;
};

// Column offset of block j inside structure.unitary.
Index block_offset(const AlgebraStructure& s, std::size_t j);

// Orthonormalizes a spanning set and detects the †/product closure flags.
OperatorAlgebra make_operator_space(Index dim,
                                    const std::vector<ComplexMatrix>& spanning,
                                    const Tolerance& tol = {});

// Orthogonal projection of m onto the span of the algebra basis.
ComplexMatrix project_onto(const OperatorAlgebra& alg, const ComplexMatrix& m);

// max over basis X of ‖X − proj_sup(X)‖_F: zero iff sub ⊆ sup.
double containment_residual(const OperatorAlgebra& sub,
                            const OperatorAlgebra& sup);

// max over basis pairs of ‖XY − proj(XY)‖_F.
double closure_residual(const OperatorAlgebra& alg);

// max over basis X of ‖X y − y X‖_F.
double commutation_residual(const OperatorAlgebra& alg,
                            const ComplexMatrix& y);

// †-algebra generated by {E_a, E_a†}: iterated pairwise products projected
// against the known span until no direction with residual > atol appears.
// Throws ClosureNotReached past the d² iteration bound.
OperatorAlgebra generate_interaction_algebra(const QuantumChannel& ch,
                                             const Tolerance& tol = {});

// {σ : Xσ = σX for all basis X}, via the null space of the stacked
// commutator map. Returned with a Hermitian basis.
OperatorAlgebra commutant(const OperatorAlgebra& alg,
                          const Tolerance& tol = {});

// Eigenvalue-1 eigenspace of the channel superoperator, i.e. the null space
// of S − 1l at cluster threshold 1e-6. Returned with a Hermitian basis.
OperatorAlgebra fixed_points(const QuantumChannel& ch,
                             const Tolerance& tol = {});

// Numerical Wedderburn decomposition: center diagonalization by a seeded
// random self-adjoint central element, minimal projections inside each
// central sector, and partial isometries aligning the ampliated copies.
// Retries with fresh seeds (up to 5) on ambiguous eigenvalue clusters;
// throws DecompositionFailed if the residual never reaches tolerance.
AlgebraStructure decompose_structure(const OperatorAlgebra& alg,
                                     const Tolerance& tol = {},
                                     std::uint64_t seed = 0);

// generate_interaction_algebra → commutant → decompose_structure, with the
// blocks reoriented so the commutant reads ⊕_J 1l_{m_J} ⊗ M_{n_J}
// (m_J = noisy dimension, n_J = noiseless dimension).
AlgebraStructure noise_commutant_blocks(const QuantumChannel& ch,
                                        const Tolerance& tol = {},
                                        std::uint64_t seed = 0);

// max over basis X of the Frobenius mass of U† X U outside the declared
// block pattern. commutant_orientation selects ⊕ 1l_m⊗M_n instead of
// ⊕ M_m⊗1l_n.
double block_pattern_residual(const std::vector<ComplexMatrix>& basis,
                              const AlgebraStructure& s,
                              bool commutant_orientation = false);

}  // namespace oqec

#endif
