#ifndef OQEC_IO_HPP
#define OQEC_IO_HPP

#include <string>
#include <utility>

#include "json.hpp"
#include "oqec/algebra.hpp"
#include "oqec/channel.hpp"
#include "oqec/correction.hpp"
#include "oqec/lambda.hpp"
#include "oqec/subsystems.hpp"

namespace oqec {

using Json = nlohmann::ordered_json;

// Matrices are nested row arrays of [re, im] pairs.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

// {"dim": d, "label": str, "kraus": [matrix, ...]}
Json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const Json& j, const Tolerance& tol = {});

// {"dim": d, "m": m, "n": n, "embedding": matrix}
Json decomposition_to_json(const SubsystemDecomposition& decomp);
std::pair<SubsystemDecomposition, MatrixUnitFamily> decomposition_from_json(
    const Json& j, const Tolerance& tol = {});

// {"blocks": [{"m": int, "n": int}], "kernel_dim": int, "unitary": matrix,
//  "residual": float}
Json structure_to_json(const AlgebraStructure& s);

// λ tensors as nested arrays of [re, im], innermost index last.
Json lambda_to_json(const LambdaTensor& lam);

// {"condition": ..., "ok": bool, "lambda": tensor, "max_residual": float}
Json condition_to_json(const std::string& condition, const ConditionCheck& chk);

// {"ok": bool, "max_residual": float, "witness": optional}
Json ns_verdict_to_json(const NsVerdict& verdict);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace oqec

#endif
