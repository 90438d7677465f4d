#include "oqec/correction.hpp"

#include <cmath>

namespace oqec {

ConditionCheck check_standard_condition(const QuantumChannel& ch,
                                        const ComplexMatrix& p_code,
                                        const Tolerance& tol) {
  check_tolerance(tol);
  if (p_code.rows() != ch.dim() || p_code.cols() != ch.dim())
    throw DimensionMismatch("check_standard_condition: projector dim mismatch");
  const double defect = projector_defect(p_code);
  if (defect > tol.atol)
    throw NotProjector("check_standard_condition: projector defect " +
                       std::to_string(defect));
  const double rank = std::round(p_code.trace().real());
  if (rank < 1.0)
    throw NotProjector("check_standard_condition: projector has rank 0");

  const Index n_kraus = static_cast<Index>(ch.n_kraus());
  ConditionCheck res;
  res.lambda.kind = LambdaKind::Standard;
  res.lambda.shape = {n_kraus, n_kraus};
  res.lambda.values.resize(static_cast<std::size_t>(n_kraus * n_kraus));
  for (Index a = 0; a < n_kraus; ++a)
    for (Index b = 0; b < n_kraus; ++b) {
      const ComplexMatrix compressed =
          p_code * ch.kraus()[static_cast<std::size_t>(a)].adjoint() *
          ch.kraus()[static_cast<std::size_t>(b)] * p_code;
      const Complex lam = compressed.trace() / rank;
      res.lambda.values[static_cast<std::size_t>(a * n_kraus + b)] = lam;
      res.lambda.max_residual = std::max(res.lambda.max_residual,
                                         (compressed - lam * p_code).norm());
    }
  res.ok = res.lambda.max_residual <= tol.atol;
  return res;
}

QuantumChannel build_standard_recovery(const QuantumChannel& ch,
                                       const ComplexMatrix& p_code,
                                       const Tolerance& tol) {
  const ConditionCheck chk = check_standard_condition(ch, p_code, tol);
  if (!chk.ok)
    throw NotCorrectable("build_standard_recovery: standard condition fails "
                         "with residual " +
                         std::to_string(chk.lambda.max_residual));
  const Index d = ch.dim();
  const ComplexMatrix lam = standard_matrix(chk.lambda);

  // Canonical error family F_c = Σ_a u_ac E_a diagonalizes the compressions:
  // P F_c†F_d P = δ_cd d_c P.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(lam);
  if (es.eigenvalues().minCoeff() < -tol.atol)
    throw NotCorrectable("build_standard_recovery: λ matrix has eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()));

  std::vector<ComplexMatrix> kraus;
  ComplexMatrix q = ComplexMatrix::Zero(d, d);
  for (Index c = 0; c < es.eigenvalues().size(); ++c) {
    const double dc = es.eigenvalues()(c);
    if (dc <= tol.atol) continue;  // numerically-zero error weight
    ComplexMatrix fc = ComplexMatrix::Zero(d, d);
    for (Index a = 0; a < es.eigenvalues().size(); ++a)
      fc += es.eigenvectors()(a, c) * ch.kraus()[static_cast<std::size_t>(a)];
    // F_c P = U_c √d_c P, so W_c = F_c P/√d_c is a partial isometry from the
    // code onto the c-th error space and W_c† reverses it.
    const ComplexMatrix wc = fc * p_code / std::sqrt(dc);
    kraus.push_back(wc.adjoint());
    q += wc * wc.adjoint();
  }
  const ComplexMatrix rest = ComplexMatrix::Identity(d, d) - q;
  if (rest.norm() > tol.atol) kraus.push_back(psd_sqrt(rest, tol));
  return validate_channel(std::move(kraus), Tolerance{100 * tol.atol},
                          "recovery(" + ch.label() + ")");
}

CorrectableTriple check_correctable_triple(const QuantumChannel& r,
                                           const QuantumChannel& e,
                                           const SubsystemDecomposition& decomp,
                                           const MatrixUnitFamily& units,
                                           const Tolerance& tol) {
  check_tolerance(tol);
  if (r.dim() != e.dim() || e.dim() != decomp.dim)
    throw DimensionMismatch("check_correctable_triple: dims differ");
  // Eq. (6) is the generalized NS condition for the map R∘E.
  const QuantumChannel composed = compose(r, e, Tolerance{100 * tol.atol});
  const NsVerdict verdict = check_ns(composed, decomp, units, 3, tol);
  CorrectableTriple triple{r, e, decomp, units, verdict.ok,
                           verdict.max_residual};
  return triple;
}

ConditionCheck check_unified_condition(const QuantumChannel& ch,
                                       const MatrixUnitFamily& mu,
                                       const Tolerance& tol) {
  check_tolerance(tol);
  if (ch.dim() != mu.dim)
    throw DimensionMismatch("check_unified_condition: channel dim mismatch");
  const Index m = mu.m;
  const Index n_kraus = static_cast<Index>(ch.n_kraus());
  ConditionCheck res;
  res.lambda.kind = LambdaKind::Unified;
  res.lambda.shape = {n_kraus, n_kraus, m, m};
  res.lambda.values.resize(
      static_cast<std::size_t>(n_kraus * n_kraus * m * m));
  for (Index a = 0; a < n_kraus; ++a)
    for (Index b = 0; b < n_kraus; ++b) {
      const ComplexMatrix prod =
          ch.kraus()[static_cast<std::size_t>(a)].adjoint() *
          ch.kraus()[static_cast<std::size_t>(b)];
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          const ComplexMatrix lhs = mu.projector(k) * prod * mu.projector(l);
          const Complex lam =
              hs_inner(mu.unit(k, l), lhs) / static_cast<double>(mu.n);
          res.lambda.values[static_cast<std::size_t>(
              ((a * n_kraus + b) * m + k) * m + l)] = lam;
          res.lambda.max_residual = std::max(
              res.lambda.max_residual, (lhs - lam * mu.unit(k, l)).norm());
        }
    }
  res.ok = res.lambda.max_residual <= tol.atol;
  return res;
}

LambdaTensor transform_lambda(const LambdaTensor& lam, const ComplexMatrix& u,
                              const ComplexMatrix& w, const Tolerance& tol) {
  check_tolerance(tol);
  if (lam.kind != LambdaKind::Unified || lam.shape.size() != 4)
    throw std::invalid_argument("transform_lambda: tensor is not λ_abkl");
  const Index n_old = lam.shape[0];
  const Index m = lam.shape[2];
  if (u.rows() != m || u.cols() != m)
    throw DimensionMismatch("transform_lambda: u must be m×m");
  if ((u.adjoint() * u - ComplexMatrix::Identity(m, m)).norm() > tol.atol)
    throw NotUnitary("transform_lambda: u is not unitary");
  if (w.cols() != n_old)
    throw DimensionMismatch("transform_lambda: w must have one column per "
                            "old Kraus index");
  if (isometry_defect(w) > tol.atol)
    throw NotIsometry("transform_lambda: w is not an isometry");

  const Index n_new = w.rows();
  LambdaTensor out;
  out.kind = LambdaKind::Unified;
  out.shape = {n_new, n_new, m, m};
  out.values.assign(static_cast<std::size_t>(n_new * n_new * m * m),
                    Complex(0.0, 0.0));
  out.max_residual = lam.max_residual;
  for (Index a = 0; a < n_new; ++a)
    for (Index b = 0; b < n_new; ++b)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          Complex acc(0.0, 0.0);
          for (Index ap = 0; ap < n_old; ++ap)
            for (Index bp = 0; bp < n_old; ++bp)
              for (Index kp = 0; kp < m; ++kp)
                for (Index lp = 0; lp < m; ++lp)
                  acc += std::conj(w(a, ap)) * w(b, bp) *
                         std::conj(u(k, kp)) * u(l, lp) *
                         lam.at({ap, bp, kp, lp});
          out.values[static_cast<std::size_t>(
              ((a * n_new + b) * m + k) * m + l)] = acc;
        }
  return out;
}

StandardScheme convert_to_standard(const CorrectableTriple& triple, Index k,
                                   const Tolerance& tol) {
  check_tolerance(tol);
  if (!triple.verified)
    throw NotVerified("convert_to_standard: triple is not verified");
  if (k < 0 || k >= triple.units.m)
    throw std::out_of_range("convert_to_standard: k out of range [0, " +
                            std::to_string(triple.units.m) + ")");
  const Index d = triple.noise.dim();

  // 𝒫_k∘R with Kraus family {P_kl R_c}.
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(triple.recovery.n_kraus() *
                static_cast<std::size_t>(triple.units.m));
  ComplexMatrix q = ComplexMatrix::Zero(d, d);
  for (Index l = 0; l < triple.units.m; ++l)
    for (const auto& rc : triple.recovery.kraus()) {
      ComplexMatrix op = triple.units.unit(k, l) * rc;
      q += op.adjoint() * op;
      kraus.push_back(std::move(op));
    }
  const ComplexMatrix rest = ComplexMatrix::Identity(d, d) - q;
  if (rest.norm() > tol.atol) kraus.push_back(psd_sqrt(rest, tol));

  StandardScheme scheme{
      validate_channel(std::move(kraus), Tolerance{100 * tol.atol},
                       "P_" + std::to_string(k) + "∘" +
                           triple.recovery.label()),
      triple.units.projector(k)};
  return scheme;
}

NecessityAuditReport theorem2_necessity_audit(
    const QuantumChannel& ch, const QuantumChannel& r,
    const SubsystemDecomposition& decomp, const MatrixUnitFamily& mu,
    const Tolerance& tol) {
  const CorrectableTriple triple =
      check_correctable_triple(r, ch, decomp, mu, tol);
  const ConditionCheck unified = check_unified_condition(ch, mu, tol);
  NecessityAuditReport report;
  report.triple_correctable = triple.verified;
  report.eq8_holds = unified.ok;
  report.theorem_violation = triple.verified && !unified.ok;
  report.eq6_residual = triple.residual;
  report.eq8_residual = unified.lambda.max_residual;
  return report;
}

RecoveryStats recovery_state_stats(const QuantumChannel& noise,
                                   const QuantumChannel& recovery,
                                   const ComplexMatrix& code_isometry,
                                   Index n_states, std::uint64_t seed) {
  if (code_isometry.rows() != noise.dim())
    throw DimensionMismatch("recovery_state_stats: code isometry dim mismatch");
  Rng rng(seed);
  RecoveryStats stats;
  for (Index s = 0; s < n_states; ++s) {
    const ComplexVector psi =
        code_isometry * random_state(code_isometry.cols(), rng);
    const ComplexMatrix rho = psi * psi.adjoint();
    const ComplexMatrix out = apply_channel(recovery, apply_channel(noise, rho));
    stats.max_frobenius_error =
        std::max(stats.max_frobenius_error, (out - rho).norm());
    const double tr = out.trace().real();
    const double fid =
        (tr > 0.0) ? (psi.adjoint() * out * psi)(0, 0).real() / tr : 0.0;
    stats.min_fidelity = std::min(stats.min_fidelity, fid);
  }
  return stats;
}

}  // namespace oqec
