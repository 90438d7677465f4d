#ifndef OQEC_SUBSYSTEMS_HPP
#define OQEC_SUBSYSTEMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqec/algebra.hpp"
#include "oqec/channel.hpp"
#include "oqec/lambda.hpp"
#include "oqec/matrix.hpp"

namespace oqec {

// Embedding of H^A⊗H^B into H for the decomposition H = (H^A⊗H^B) ⊕ K.
// Column k·n + l of the embedding is the image of |α_k⟩⊗|β_l⟩.
struct SubsystemDecomposition {
  Index dim = 0;
  Index m = 0;  // dim H^A (noisy)
  Index n = 0;  // dim H^B (noiseless)
  ComplexMatrix embedding;  // dim × (m·n) isometry
  std::vector<std::string> alpha_labels;
  std::vector<std::string> beta_labels;

  Index kernel_dim() const { return dim - m * n; }
};

// Matrix units P_kl = |α_k⟩⟨α_l|⊗1l_n realized on H, together with the
// sector projector P_𝔄 = Σ_k P_kk and its complement.
struct MatrixUnitFamily {
  Index dim = 0;
  Index m = 0;
  Index n = 0;
  std::vector<ComplexMatrix> units;  // row-major, (k,l) at k·m + l
  ComplexMatrix p_frak;
  ComplexMatrix p_frak_perp;

  const ComplexMatrix& unit(Index k, Index l) const {
    return units[static_cast<std::size_t>(k * m + l)];
  }
  const ComplexMatrix& projector(Index k) const { return unit(k, k); }
};

// A product operator σ^A⊗σ^B of the semigroup 𝔄, with its realization on H.
struct SemigroupElement {
  ComplexMatrix sigma_a;   // m×m
  ComplexMatrix sigma_b;   // n×n
  ComplexMatrix embedded;  // d×d, supported on P_𝔄 H
};

struct NsWitness {
  ComplexMatrix sigma_a;
  ComplexMatrix sigma_b;
  double residual = 0.0;
};

struct NsVerdict {
  bool ok = false;
  double max_residual = 0.0;
  std::optional<NsWitness> witness;  // worst pair, present on failure
};

struct Theorem1Result {
  bool ok = false;
  double eq4_residual = 0.0;  // max ‖P_k E_a P_l − λ_akl P_kl‖_F
  double eq5_residual = 0.0;  // max ‖P_𝔄^⊥ E_a P_𝔄‖_F
  LambdaTensor lambda;        // λ_akl, shape [n_kraus, m, m]
};

struct NoiselessSubsystemCandidate {
  SubsystemDecomposition decomp;
  MatrixUnitFamily units;
  bool carries_qubit = false;  // n ≥ 2; one-dimensional candidates hold nothing
};

// Builds the matrix units from an embedding and verifies the three
// matrix-unit identities. Throws NotIsometry / MatrixUnitIdentityViolation.
std::pair<SubsystemDecomposition, MatrixUnitFamily> build_decomposition(
    const ComplexMatrix& embedding, Index m, Index n,
    const Tolerance& tol = {});

SemigroupElement make_semigroup_element(const SubsystemDecomposition& decomp,
                                        const ComplexMatrix& sigma_a,
                                        const ComplexMatrix& sigma_b);

// Γ(σ) = Σ_{k,l} P_kl σ P_kl†.
ComplexMatrix gamma_map(const MatrixUnitFamily& mu, const ComplexMatrix& sigma);

// Tr_A of the 𝒫_𝔄-compressed operator pulled back through the embedding.
ComplexMatrix partial_trace_a(const SubsystemDecomposition& decomp,
                              const ComplexMatrix& sigma);

// Companion contraction over H^B, used for τ^A extraction.
ComplexMatrix partial_trace_b(const SubsystemDecomposition& decomp,
                              const ComplexMatrix& sigma);

// The three equivalent noiseless-subsystem conditions:
//   1  E(σ^A⊗σ^B) = τ^A⊗σ^B over a full product operator basis
//   2  the same with σ^A = 1l^A only
//   3  Tr_A∘𝒫_𝔄∘E = Tr_A on a basis of 𝔄
NsVerdict check_ns(const QuantumChannel& ch,
                   const SubsystemDecomposition& decomp,
                   const MatrixUnitFamily& mu, int variant,
                   const Tolerance& tol = {});

// P_k E_a P_l = λ_akl P_kl and P_𝔄^⊥ E_a P_𝔄 = 0, extracted by trace inner
// products against the matrix units.
Theorem1Result check_theorem1(const QuantumChannel& ch,
                              const MatrixUnitFamily& mu,
                              const Tolerance& tol = {});

// Candidates derived from the noise-commutant blocks, re-verified with the
// generalized condition (and check_theorem1) before being emitted.
std::vector<NoiselessSubsystemCandidate> find_noiseless_subsystems(
    const QuantumChannel& ch, const Tolerance& tol = {},
    std::uint64_t seed = 0);

}  // namespace oqec

#endif
