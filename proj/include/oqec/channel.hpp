#ifndef OQEC_CHANNEL_HPP
#define OQEC_CHANNEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "oqec/matrix.hpp"

namespace oqec {

// A completely positive trace-preserving map in operator-sum form,
// E(σ) = Σ_a E_a σ E_a†. Instances only exist after validation, so every
// QuantumChannel satisfies ‖Σ_a E_a†E_a − 1l‖_F ≤ atol. Immutable.
class QuantumChannel {
public:
  Index dim() const { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  const std::string& label() const { return label_; }
  std::size_t n_kraus() const { return kraus_.size(); }

private:
  QuantumChannel(Index dim, std::vector<ComplexMatrix> kraus,
                 std::string label)
      : dim_(dim), kraus_(std::move(kraus)), label_(std::move(label)) {}

  friend QuantumChannel validate_channel(std::vector<ComplexMatrix> kraus,
                                         const Tolerance& tol,
                                         std::string label);

  Index dim_;
  std::vector<ComplexMatrix> kraus_;
  std::string label_;
};

// Checks that the family is non-empty, square, of one common dimension and
// trace preserving; throws DimensionMismatch / NotTracePreserving otherwise.
QuantumChannel validate_channel(std::vector<ComplexMatrix> kraus,
                                const Tolerance& tol = {},
                                std::string label = "");

// Σ_a E_a σ E_a†
ComplexMatrix apply_channel(const QuantumChannel& ch,
                            const ComplexMatrix& sigma);

// Kraus family {R_c E_a} realizing outer∘inner.
QuantumChannel compose(const QuantumChannel& outer,
                       const QuantumChannel& inner,
                       const Tolerance& tol = {});

// true iff ‖E(1l) − 1l‖_F ≤ atol.
bool is_unital(const QuantumChannel& ch, const Tolerance& tol = {});

// Choi matrix Σ_a vec(E_a) vec(E_a)†; two channels are equal as maps iff
// their Choi matrices agree.
ComplexMatrix choi_matrix(const QuantumChannel& ch);

bool channels_equal(const QuantumChannel& e, const QuantumChannel& f,
                    const Tolerance& tol = {});

// The d²×d² matrix S with S·vec(σ) = vec(E(σ)).
ComplexMatrix superoperator(const QuantumChannel& ch);

// If e and f are equal as maps, returns the unitary u with
// F_b = Σ_a u_ba E_a after padding the shorter family with zero operators;
// otherwise std::nullopt.
std::optional<ComplexMatrix> kraus_equivalence(const QuantumChannel& e,
                                               const QuantumChannel& f,
                                               const Tolerance& tol = {});

// Seed-deterministic random channel from a Haar-like isometry dilation.
QuantumChannel random_channel(Index dim, Index n_kraus, std::uint64_t seed);

// Seed-deterministic uniform mixture of n_unitaries Haar-like unitaries.
// Unital by construction.
QuantumChannel random_unital_channel(Index dim, Index n_unitaries,
                                     std::uint64_t seed);

// Identity channel {1l_d}.
QuantumChannel identity_channel(Index dim);

}  // namespace oqec

#endif
