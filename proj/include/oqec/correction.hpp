#ifndef OQEC_CORRECTION_HPP
#define OQEC_CORRECTION_HPP

#include <cstdint>

#include "oqec/channel.hpp"
#include "oqec/lambda.hpp"
#include "oqec/matrix.hpp"
#include "oqec/subsystems.hpp"

namespace oqec {

// Verdict of a scalar-compression condition together with the extracted
// tensor; lambda.max_residual carries the Frobenius defect.
struct ConditionCheck {
  bool ok = false;
  LambdaTensor lambda;
};

// A recovery/noise/code triple with the verification result of
// Tr_A∘𝒫_𝔄∘R∘E = Tr_A on the semigroup.
struct CorrectableTriple {
  QuantumChannel recovery;
  QuantumChannel noise;
  SubsystemDecomposition decomp;
  MatrixUnitFamily units;
  bool verified = false;
  double residual = 0.0;
};

// Output of the conversion to a standard scheme: the recovery 𝒫_k∘R
// (completed to trace preservation) and the code projector P_k.
struct StandardScheme {
  QuantumChannel recovery;
  ComplexMatrix code_projector;
};

struct NecessityAuditReport {
  bool triple_correctable = false;  // Eq. (6)
  bool eq8_holds = false;           // Eq. (8)
  bool theorem_violation = false;   // correctable ∧ ¬eq8 — must never occur
  double eq6_residual = 0.0;
  double eq8_residual = 0.0;
};

struct RecoveryStats {
  double min_fidelity = 1.0;        // worst ⟨ψ|ρ_out|ψ⟩ after normalization
  double max_frobenius_error = 0.0; // worst ‖(R∘E)(ρ) − ρ‖_F, unnormalized
};

// P_C E_a†E_b P_C = λ_ab P_C with λ_ab = Tr(P E_a†E_b P)/rank(P).
// Throws NotProjector when p_code is not an orthogonal projector.
ConditionCheck check_standard_condition(const QuantumChannel& ch,
                                        const ComplexMatrix& p_code,
                                        const Tolerance& tol = {});

// Canonical Knill–Laflamme construction: diagonalize λ, polar-decompose the
// canonical errors on the code, append the √(1l−Q) completion. Throws
// NotCorrectable when the standard condition fails.
QuantumChannel build_standard_recovery(const QuantumChannel& ch,
                                       const ComplexMatrix& p_code,
                                       const Tolerance& tol = {});

// Verifies Tr_A∘𝒫_𝔄∘R∘E = Tr_A on a basis of 𝔄, i.e. runs the generalized
// noiseless-subsystem condition on R∘E.
CorrectableTriple check_correctable_triple(const QuantumChannel& r,
                                           const QuantumChannel& e,
                                           const SubsystemDecomposition& decomp,
                                           const MatrixUnitFamily& units,
                                           const Tolerance& tol = {});

// P_k E_a†E_b P_l = λ_abkl P_kl for all a,b,k,l.
ConditionCheck check_unified_condition(const QuantumChannel& ch,
                                       const MatrixUnitFamily& mu,
                                       const Tolerance& tol = {});

// Transforms λ_abkl under the basis change |α'_k⟩ = Σ_l u_kl|α_l⟩ and the
// operator-sum change F_a = Σ_b w_ab E_b (w isometric, possibly rectangular).
LambdaTensor transform_lambda(const LambdaTensor& lam, const ComplexMatrix& u,
                              const ComplexMatrix& w,
                              const Tolerance& tol = {});

// Theorem-3 conversion of a verified triple into a standard scheme for the
// minimal reducing projector P_k (0-based k). Throws NotVerified /
// std::out_of_range.
StandardScheme convert_to_standard(const CorrectableTriple& triple, Index k,
                                   const Tolerance& tol = {});

// Checks Eq. (6) and Eq. (8) together and flags the forbidden combination
// (correctable ∧ ¬eq8).
NecessityAuditReport theorem2_necessity_audit(const QuantumChannel& ch,
                                              const QuantumChannel& r,
                                              const SubsystemDecomposition& decomp,
                                              const MatrixUnitFamily& mu,
                                              const Tolerance& tol = {});

// Worst-case statistics of n_states seeded random pure code states sent
// through recovery∘noise. code_isometry has the code vectors as columns.
RecoveryStats recovery_state_stats(const QuantumChannel& noise,
                                   const QuantumChannel& recovery,
                                   const ComplexMatrix& code_isometry,
                                   Index n_states, std::uint64_t seed);

}  // namespace oqec

#endif
