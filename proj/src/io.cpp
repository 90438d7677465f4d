#include "oqec/io.hpp"

#include <fstream>

namespace oqec {

namespace {

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error("io: expected [re, im] pair, got " + j.dump());
  return Complex(j[0].get<double>(), j[1].get<double>());
}

// Recursively serializes a row-major tensor slice.
Json tensor_slice_to_json(const LambdaTensor& lam, std::size_t level,
                          Index& cursor) {
  if (level == lam.shape.size())
    return complex_to_json(lam.values[static_cast<std::size_t>(cursor++)]);
  Json arr = Json::array();
  for (Index i = 0; i < lam.shape[level]; ++i)
    arr.push_back(tensor_slice_to_json(lam, level + 1, cursor));
  return arr;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw Error("io: matrix must be a non-empty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[static_cast<std::size_t>(i)].is_array() ||
        static_cast<Index>(j[static_cast<std::size_t>(i)].size()) != cols)
      throw Error("io: ragged matrix rows");
    for (Index c = 0; c < cols; ++c)
      m(i, c) = complex_from_json(
          j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  }
  return m;
}

Json channel_to_json(const QuantumChannel& ch) {
  Json j;
  j["dim"] = ch.dim();
  j["label"] = ch.label();
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  return j;
}

QuantumChannel channel_from_json(const Json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
    throw Error("io: channel file needs 'dim' and 'kraus'");
  const Index dim = j["dim"].get<Index>();
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j["kraus"]) kraus.push_back(matrix_from_json(k));
  for (const auto& k : kraus)
    if (k.rows() != dim || k.cols() != dim)
      throw DimensionMismatch("io: Kraus operator shape disagrees with dim");
  return validate_channel(std::move(kraus), tol,
                          j.value("label", std::string{}));
}

Json decomposition_to_json(const SubsystemDecomposition& decomp) {
  Json j;
  j["dim"] = decomp.dim;
  j["m"] = decomp.m;
  j["n"] = decomp.n;
  j["embedding"] = matrix_to_json(decomp.embedding);
  return j;
}

std::pair<SubsystemDecomposition, MatrixUnitFamily> decomposition_from_json(
    const Json& j, const Tolerance& tol) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("m") ||
      !j.contains("n") || !j.contains("embedding"))
    throw Error("io: decomposition file needs 'dim', 'm', 'n', 'embedding'");
  const ComplexMatrix embedding = matrix_from_json(j["embedding"]);
  if (embedding.rows() != j["dim"].get<Index>())
    throw DimensionMismatch("io: embedding rows disagree with dim");
  return build_decomposition(embedding, j["m"].get<Index>(),
                             j["n"].get<Index>(), tol);
}

Json structure_to_json(const AlgebraStructure& s) {
  Json j;
  Json blocks = Json::array();
  for (const auto& b : s.blocks)
    blocks.push_back(Json{{"m", b.m}, {"n", b.n}});
  j["blocks"] = std::move(blocks);
  j["kernel_dim"] = s.kernel_dim;
  j["unitary"] = matrix_to_json(s.unitary);
  j["residual"] = s.residual;
  return j;
}

Json lambda_to_json(const LambdaTensor& lam) {
  Index cursor = 0;
  return tensor_slice_to_json(lam, 0, cursor);
}

Json condition_to_json(const std::string& condition,
                       const ConditionCheck& chk) {
  Json j;
  j["condition"] = condition;
  j["ok"] = chk.ok;
  j["lambda"] = lambda_to_json(chk.lambda);
  j["max_residual"] = chk.lambda.max_residual;
  return j;
}

Json ns_verdict_to_json(const NsVerdict& verdict) {
  Json j;
  j["ok"] = verdict.ok;
  j["max_residual"] = verdict.max_residual;
  if (verdict.witness) {
    j["witness"] = Json{{"sigma_a", matrix_to_json(verdict.witness->sigma_a)},
                        {"sigma_b", matrix_to_json(verdict.witness->sigma_b)},
                        {"residual", verdict.witness->residual}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io: cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("io: parse error in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("io: cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace oqec
