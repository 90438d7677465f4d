#ifndef OQEC_CODE_ZOO_HPP
#define OQEC_CODE_ZOO_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oqec/channel.hpp"
#include "oqec/matrix.hpp"
#include "oqec/subsystems.hpp"

namespace oqec {

// Canonical named channels, codes and decompositions used by the tests,
// the CLI and the docs. Construction is deterministic for fixed parameters.
struct Fixture {
  std::string name;
  QuantumChannel channel;
  std::optional<SubsystemDecomposition> decomp;
  std::optional<MatrixUnitFamily> units;
  std::optional<ComplexMatrix> code_projector;
  // checker-name → expected verdict at default tolerance; keys among
  // "unital", "eq2", "ns", "theorem1", "eq8", "eq6".
  std::map<std::string, bool> expected;
};

struct FixtureParams {
  std::map<std::string, double> num;
  std::string base;  // base fixture name for random_unitary_conjugate
};

// Known names: identity, bit_flip_code, phase_flip_code, amplitude_damping,
// damping_on_A, damping_on_B, collective_unitary, collective_dephasing_dfs,
// leaky_ns_channel, random_unitary_conjugate.
// Throws UnknownFixture / BadParams.
Fixture fixture(const std::string& name, const FixtureParams& params = {});

std::vector<std::string> fixture_names();

// Single-qubit amplitude damping Kraus pair {diag(1,√(1−γ)), √γ|0⟩⟨1|}.
std::vector<ComplexMatrix> amplitude_damping_kraus(double gamma);

}  // namespace oqec

#endif
