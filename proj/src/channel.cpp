#include "oqec/channel.hpp"

#include <cmath>

namespace oqec {

QuantumChannel validate_channel(std::vector<ComplexMatrix> kraus,
                                const Tolerance& tol, std::string label) {
  check_tolerance(tol);
  if (kraus.empty())
    throw DimensionMismatch("validate_channel: empty Kraus family");
  const Index d = kraus.front().rows();
  for (std::size_t a = 0; a < kraus.size(); ++a) {
    const auto& k = kraus[a];
    if (k.rows() != d || k.cols() != d)
      throw DimensionMismatch("validate_channel: Kraus operator " +
                              std::to_string(a) + " is " +
                              std::to_string(k.rows()) + "x" +
                              std::to_string(k.cols()) + ", expected " +
                              std::to_string(d) + "x" + std::to_string(d));
    require_finite(k, "validate_channel: Kraus operator " + std::to_string(a));
  }
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  const double residual = (sum - ComplexMatrix::Identity(d, d)).norm();
  if (residual > tol.atol)
    throw NotTracePreserving(
        "validate_channel: ‖Σ E_a†E_a − 1l‖_F = " + std::to_string(residual),
        residual);
  return QuantumChannel(d, std::move(kraus), std::move(label));
}

ComplexMatrix apply_channel(const QuantumChannel& ch,
                            const ComplexMatrix& sigma) {
  if (sigma.rows() != ch.dim() || sigma.cols() != ch.dim())
    throw DimensionMismatch("apply_channel: operator is " +
                            std::to_string(sigma.rows()) + "x" +
                            std::to_string(sigma.cols()) + ", channel dim " +
                            std::to_string(ch.dim()));
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const auto& k : ch.kraus()) out += k * sigma * k.adjoint();
  return out;
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner,
                       const Tolerance& tol) {
  if (outer.dim() != inner.dim())
    throw DimensionMismatch("compose: channel dims differ");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(outer.n_kraus() * inner.n_kraus());
  for (const auto& r : outer.kraus())
    for (const auto& e : inner.kraus()) kraus.push_back(r * e);
  return validate_channel(std::move(kraus), tol,
                          outer.label() + "∘" + inner.label());
}

bool is_unital(const QuantumChannel& ch, const Tolerance& tol) {
  check_tolerance(tol);
  const Index d = ch.dim();
  ComplexMatrix image = ComplexMatrix::Zero(d, d);
  for (const auto& k : ch.kraus()) image += k * k.adjoint();
  return (image - ComplexMatrix::Identity(d, d)).norm() <= tol.atol;
}

ComplexMatrix choi_matrix(const QuantumChannel& ch) {
  const Index d2 = ch.dim() * ch.dim();
  ComplexMatrix choi = ComplexMatrix::Zero(d2, d2);
  for (const auto& k : ch.kraus()) {
    const ComplexVector v = vectorize(k);
    choi += v * v.adjoint();
  }
  return choi;
}

bool channels_equal(const QuantumChannel& e, const QuantumChannel& f,
                    const Tolerance& tol) {
  if (e.dim() != f.dim()) return false;
  return (choi_matrix(e) - choi_matrix(f)).norm() <= tol.atol;
}

ComplexMatrix superoperator(const QuantumChannel& ch) {
  // vec(EσE†) = (conj(E) ⊗ E) vec(σ) under column stacking.
  const Index d2 = ch.dim() * ch.dim();
  ComplexMatrix s = ComplexMatrix::Zero(d2, d2);
  for (const auto& k : ch.kraus()) s += kron(k.conjugate(), k);
  return s;
}

std::optional<ComplexMatrix> kraus_equivalence(const QuantumChannel& e,
                                               const QuantumChannel& f,
                                               const Tolerance& tol) {
  check_tolerance(tol);
  if (e.dim() != f.dim())
    throw DimensionMismatch("kraus_equivalence: channel dims differ");
  const ComplexMatrix choi = choi_matrix(e);
  if ((choi - choi_matrix(f)).norm() > tol.atol) return std::nullopt;

  const Index d = e.dim();
  const Index n = static_cast<Index>(std::max(e.n_kraus(), f.n_kraus()));

  // Vectorized families, padded with zero columns to a common length.
  ComplexMatrix me = ComplexMatrix::Zero(d * d, n);
  ComplexMatrix mf = ComplexMatrix::Zero(d * d, n);
  for (std::size_t a = 0; a < e.n_kraus(); ++a)
    me.col(static_cast<Index>(a)) = vectorize(e.kraus()[a]);
  for (std::size_t b = 0; b < f.n_kraus(); ++b)
    mf.col(static_cast<Index>(b)) = vectorize(f.kraus()[b]);

  // Both families purify the same Choi matrix C = W W†, so M = W V† with V
  // an isometry; u is assembled from the two V factors, each completed to a
  // full unitary on the padded index space.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi);
  const double cut = std::max(tol.atol, 1e-12 * es.eigenvalues().maxCoeff());
  std::vector<Index> keep;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > cut) keep.push_back(i);
  const Index r = static_cast<Index>(keep.size());
  if (r > n) return std::nullopt;  // family too short to carry the map

  ComplexMatrix ve(n, r), vf(n, r);
  for (Index c = 0; c < r; ++c) {
    const ComplexVector w = es.eigenvectors().col(keep[static_cast<std::size_t>(c)]);
    const double root = std::sqrt(es.eigenvalues()(keep[static_cast<std::size_t>(c)]));
    ve.col(c) = me.adjoint() * w / root;
    vf.col(c) = mf.adjoint() * w / root;
  }
  const ComplexMatrix ue = complete_to_unitary(ve);
  const ComplexMatrix uf = complete_to_unitary(vf);
  // M_F = M_E (U_E U_F†), and F_b = Σ_a u_ba E_a reads M_F = M_E uᵀ.
  return (ue * uf.adjoint()).transpose();
}

QuantumChannel random_channel(Index dim, Index n_kraus, std::uint64_t seed) {
  if (n_kraus < 1)
    throw std::invalid_argument("random_channel: n_kraus must be >= 1");
  Rng rng(seed);
  const ComplexMatrix v = random_isometry(dim * n_kraus, dim, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n_kraus));
  for (Index a = 0; a < n_kraus; ++a)
    kraus.push_back(v.block(a * dim, 0, dim, dim));
  return validate_channel(std::move(kraus), Tolerance{},
                          "random(d=" + std::to_string(dim) +
                              ",k=" + std::to_string(n_kraus) +
                              ",seed=" + std::to_string(seed) + ")");
}

QuantumChannel random_unital_channel(Index dim, Index n_unitaries,
                                     std::uint64_t seed) {
  if (n_unitaries < 1)
    throw std::invalid_argument("random_unital_channel: need n_unitaries >= 1");
  Rng rng(seed);
  const double w = 1.0 / std::sqrt(static_cast<double>(n_unitaries));
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(n_unitaries));
  for (Index j = 0; j < n_unitaries; ++j)
    kraus.push_back(w * random_unitary(dim, rng));
  return validate_channel(std::move(kraus), Tolerance{},
                          "random_unital(d=" + std::to_string(dim) +
                              ",k=" + std::to_string(n_unitaries) +
                              ",seed=" + std::to_string(seed) + ")");
}

QuantumChannel identity_channel(Index dim) {
  std::vector<ComplexMatrix> kraus{ComplexMatrix::Identity(dim, dim)};
  return validate_channel(std::move(kraus), Tolerance{}, "identity");
}

}  // namespace oqec
