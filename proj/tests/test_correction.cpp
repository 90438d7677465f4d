#include <cmath>

#include "doctest.h"
#include "oqec/algebra.hpp"
#include "oqec/channel.hpp"
#include "oqec/code_zoo.hpp"
#include "oqec/correction.hpp"
#include "oracles.hpp"

using namespace oqec;

namespace {

Fixture bit_flip_code() { return fixture("bit_flip_code"); }

// Re-extraction oracle for the covariance tests: mixes the Kraus family by w,
// rotates the α-basis by u, and extracts λ_abkl from scratch.
ConditionCheck reextract(const QuantumChannel& ch,
                         const SubsystemDecomposition& decomp,
                         const ComplexMatrix& u, const ComplexMatrix& w) {
  std::vector<ComplexMatrix> mixed(
      static_cast<std::size_t>(w.rows()),
      ComplexMatrix::Zero(ch.dim(), ch.dim()));
  for (Index a = 0; a < w.rows(); ++a)
    for (Index b = 0; b < w.cols(); ++b)
      mixed[static_cast<std::size_t>(a)] +=
          w(a, b) * ch.kraus()[static_cast<std::size_t>(b)];
  const QuantumChannel f = validate_channel(mixed);
  const ComplexMatrix rotated =
      decomp.embedding *
      kron(u.transpose(), ComplexMatrix::Identity(decomp.n, decomp.n));
  auto [d2, mu2] = build_decomposition(rotated, decomp.m, decomp.n);
  return check_unified_condition(f, mu2);
}

}  // namespace

TEST_SUITE("correction") {

TEST_CASE("standard condition: identity channel on any projector") {
  Rng rng(2);
  const ComplexMatrix iso = random_isometry(4, 2, rng);
  const ComplexMatrix p = iso * iso.adjoint();
  const ConditionCheck chk = check_standard_condition(identity_channel(4), p);
  CHECK(chk.ok);
  CHECK(std::abs(chk.lambda.at({0, 0}) - Complex(1, 0)) <= 1e-12);
}

TEST_CASE("standard condition: 3-qubit bit-flip code") {
  const Fixture fix = bit_flip_code();
  const ConditionCheck chk =
      check_standard_condition(fix.channel, *fix.code_projector);
  CHECK(chk.ok);
  const ComplexMatrix lam = standard_matrix(chk.lambda);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 0.85;
  expected(1, 1) = 0.05;
  expected(2, 2) = 0.05;
  expected(3, 3) = 0.05;
  CHECK((lam - expected).norm() <= 1e-10);
  // λ is Hermitian PSD with unit trace
  CHECK((lam - lam.adjoint()).norm() <= 1e-12);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(lam);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(std::abs(lam.trace().real() - 1.0) <= 1e-10);
}

TEST_CASE("standard condition fails on a bad code") {
  // span{|000⟩, |100⟩} is mapped into itself non-scalarly by X_1
  const Fixture fix = bit_flip_code();
  ComplexMatrix p = ComplexMatrix::Zero(8, 8);
  p(0, 0) = 1.0;
  p(4, 4) = 1.0;
  const ConditionCheck chk = check_standard_condition(fix.channel, p);
  CHECK_FALSE(chk.ok);
  CHECK(chk.lambda.max_residual > 0.01);

  ComplexMatrix not_proj = 0.5 * ComplexMatrix::Identity(8, 8);
  CHECK_THROWS_AS(check_standard_condition(fix.channel, not_proj),
                  NotProjector);
}

TEST_CASE("standard recovery: identity, bit-flip code, conjugated scheme") {
  Rng rng(4);
  const ComplexMatrix iso0 = random_isometry(4, 2, rng);
  const QuantumChannel r0 =
      build_standard_recovery(identity_channel(4), iso0 * iso0.adjoint());
  const RecoveryStats s0 =
      recovery_state_stats(identity_channel(4), r0, iso0, 50, 1);
  CHECK(s0.max_frobenius_error <= 1e-9);

  const Fixture fix = bit_flip_code();
  const QuantumChannel rec =
      build_standard_recovery(fix.channel, *fix.code_projector);
  const RecoveryStats stats =
      recovery_state_stats(fix.channel, rec, fix.decomp->embedding, 100, 1);
  CHECK(stats.min_fidelity >= 1.0 - 1e-9);
  CHECK(stats.max_frobenius_error <= 1e-9);

  // conjugating everything by a random unitary must not change a thing
  const ComplexMatrix u = random_unitary(8, rng);
  std::vector<ComplexMatrix> conj_kraus;
  for (const auto& e : fix.channel.kraus())
    conj_kraus.push_back(u * e * u.adjoint());
  const QuantumChannel conj_ch = validate_channel(conj_kraus);
  const ComplexMatrix conj_p = u * (*fix.code_projector) * u.adjoint();
  const QuantumChannel conj_rec = build_standard_recovery(conj_ch, conj_p);
  const RecoveryStats conj_stats = recovery_state_stats(
      conj_ch, conj_rec, u * fix.decomp->embedding, 100, 1);
  CHECK(conj_stats.min_fidelity >= 1.0 - 1e-9);

  // a code that fails Eq. (2) is rejected
  ComplexMatrix bad = ComplexMatrix::Zero(8, 8);
  bad(0, 0) = 1.0;
  bad(4, 4) = 1.0;
  CHECK_THROWS_AS(build_standard_recovery(fix.channel, bad), NotCorrectable);
}

TEST_CASE("correctable triples") {
  auto [dec, mu] = build_decomposition(ComplexMatrix::Identity(4, 4), 2, 2);
  CHECK(check_correctable_triple(identity_channel(4), identity_channel(4), dec,
                                 mu)
            .verified);

  const Fixture da = fixture("damping_on_A");
  const CorrectableTriple passive = check_correctable_triple(
      identity_channel(4), da.channel, *da.decomp, *da.units);
  CHECK(passive.verified);
  CHECK(passive.residual <= 1e-10);

  // the standard model is the m = 1 case
  const Fixture fix = bit_flip_code();
  const QuantumChannel rec =
      build_standard_recovery(fix.channel, *fix.code_projector);
  const CorrectableTriple active =
      check_correctable_triple(rec, fix.channel, *fix.decomp, *fix.units);
  CHECK(active.verified);

  const Fixture db = fixture("damping_on_B");
  CHECK_FALSE(check_correctable_triple(identity_channel(4), db.channel,
                                       *db.decomp, *db.units)
                  .verified);
}

TEST_CASE("unified condition: identity, damping on A, damping on B") {
  auto [dec, mu] = build_decomposition(ComplexMatrix::Identity(4, 4), 2, 2);
  const ConditionCheck id_chk = check_unified_condition(identity_channel(4), mu);
  CHECK(id_chk.ok);
  for (Index k = 0; k < 2; ++k)
    for (Index l = 0; l < 2; ++l)
      CHECK(std::abs(id_chk.lambda.at({0, 0, k, l}) -
                     (k == l ? Complex(1, 0) : Complex(0, 0))) <= 1e-12);

  const Fixture da = fixture("damping_on_A");
  const ConditionCheck chk = check_unified_condition(da.channel, *da.units);
  CHECK(chk.ok);
  CHECK(std::abs(chk.lambda.at({0, 0, 0, 0}) - Complex(1.0, 0)) <= 1e-12);
  CHECK(std::abs(chk.lambda.at({0, 0, 1, 1}) - Complex(0.7, 0)) <= 1e-12);
  CHECK(std::abs(chk.lambda.at({0, 0, 0, 1})) <= 1e-12);

  const Fixture db = fixture("damping_on_B");
  const ConditionCheck bad = check_unified_condition(db.channel, *db.units);
  CHECK_FALSE(bad.ok);
  CHECK(bad.lambda.max_residual > 0.01);
}

TEST_CASE("transform_lambda: identity, permutation, Hadamard mixing") {
  const Fixture da = fixture("damping_on_A");
  const ConditionCheck base = check_unified_condition(da.channel, *da.units);
  REQUIRE(base.ok);
  const Index nk = static_cast<Index>(da.channel.n_kraus());

  const LambdaTensor same = transform_lambda(
      base.lambda, ComplexMatrix::Identity(2, 2),
      ComplexMatrix::Identity(nk, nk));
  for (std::size_t i = 0; i < same.values.size(); ++i)
    CHECK(std::abs(same.values[i] - base.lambda.values[i]) <= 1e-12);

  // α-swap: λ'_{abkl} = λ_{ab,π(k),π(l)}
  ComplexMatrix swap = ComplexMatrix::Zero(2, 2);
  swap(0, 1) = 1.0;
  swap(1, 0) = 1.0;
  const LambdaTensor swapped = transform_lambda(
      base.lambda, swap, ComplexMatrix::Identity(nk, nk));
  for (Index a = 0; a < nk; ++a)
    for (Index b = 0; b < nk; ++b)
      for (Index k = 0; k < 2; ++k)
        for (Index l = 0; l < 2; ++l)
          CHECK(std::abs(swapped.at({a, b, k, l}) -
                         base.lambda.at({a, b, 1 - k, 1 - l})) <= 1e-12);
  // re-extraction agrees
  const ConditionCheck re_sw = reextract(da.channel, *da.decomp, swap,
                                         ComplexMatrix::Identity(nk, nk));
  CHECK(re_sw.ok);
  for (std::size_t i = 0; i < swapped.values.size(); ++i)
    CHECK(std::abs(swapped.values[i] - re_sw.lambda.values[i]) <= 1e-10);

  // Kraus Hadamard mixing: verdict unchanged, tensor matches re-extraction
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix w(2, 2);
  w << s, s, s, -s;
  const LambdaTensor mixed = transform_lambda(
      base.lambda, ComplexMatrix::Identity(2, 2), w);
  const ConditionCheck re_mx =
      reextract(da.channel, *da.decomp, ComplexMatrix::Identity(2, 2), w);
  CHECK(re_mx.ok);
  for (std::size_t i = 0; i < mixed.values.size(); ++i)
    CHECK(std::abs(mixed.values[i] - re_mx.lambda.values[i]) <= 1e-10);

  CHECK_THROWS_AS(
      transform_lambda(base.lambda, 2.0 * ComplexMatrix::Identity(2, 2),
                       ComplexMatrix::Identity(nk, nk)),
      NotUnitary);
  CHECK_THROWS_AS(
      transform_lambda(base.lambda, ComplexMatrix::Identity(2, 2),
                       2.0 * ComplexMatrix::Identity(nk, nk)),
      NotIsometry);
}

TEST_CASE("m = 1 reduces the unified condition to the standard one") {
  const Fixture fix = bit_flip_code();
  const ConditionCheck eq8 = check_unified_condition(fix.channel, *fix.units);
  const ConditionCheck eq2 =
      check_standard_condition(fix.channel, *fix.code_projector);
  CHECK(eq8.ok == eq2.ok);
  const Index nk = static_cast<Index>(fix.channel.n_kraus());
  for (Index a = 0; a < nk; ++a)
    for (Index b = 0; b < nk; ++b)
      CHECK(std::abs(eq8.lambda.at({a, b, 0, 0}) - eq2.lambda.at({a, b})) <=
            1e-10);
}

TEST_CASE("k = l slicing: Eq. (8) implies the standard condition per P_k") {
  for (const auto& name : {"damping_on_A", "leaky_ns_channel"}) {
    const Fixture fix = fixture(name);
    REQUIRE(check_unified_condition(fix.channel, *fix.units).ok);
    for (Index k = 0; k < fix.units->m; ++k)
      CHECK(check_standard_condition(fix.channel, fix.units->projector(k)).ok);
  }
}

TEST_CASE("convert_to_standard") {
  // m = 1: the conversion compresses to P_𝔄 and keeps the scheme intact
  const Fixture fix = bit_flip_code();
  const QuantumChannel rec =
      build_standard_recovery(fix.channel, *fix.code_projector);
  const CorrectableTriple triple =
      check_correctable_triple(rec, fix.channel, *fix.decomp, *fix.units);
  REQUIRE(triple.verified);
  const StandardScheme scheme = convert_to_standard(triple, 0);
  CHECK((scheme.code_projector - *fix.code_projector).norm() <= 1e-12);
  CHECK(check_standard_condition(fix.channel, scheme.code_projector).ok);
  const RecoveryStats stats = recovery_state_stats(
      fix.channel, scheme.recovery, fix.decomp->embedding, 100, 3);
  CHECK(stats.min_fidelity >= 1.0 - 1e-9);

  // generalized NS triple: k = 0 gives the code |α_1⟩⊗H^B
  const Fixture da = fixture("damping_on_A");
  const CorrectableTriple passive = check_correctable_triple(
      identity_channel(4), da.channel, *da.decomp, *da.units);
  REQUIRE(passive.verified);
  const StandardScheme converted = convert_to_standard(passive, 0);
  ComplexMatrix p0 = ComplexMatrix::Zero(4, 4);
  p0(0, 0) = 1.0;
  p0(1, 1) = 1.0;  // |0⟩⟨0|⊗1l_2 in the product basis
  CHECK((converted.code_projector - p0).norm() <= 1e-12);
  CHECK(check_standard_condition(da.channel, converted.code_projector).ok);
  const RecoveryStats pstats = recovery_state_stats(
      da.channel, converted.recovery, da.decomp->embedding.leftCols(2), 100, 5);
  CHECK(pstats.min_fidelity >= 1.0 - 1e-9);

  CHECK_THROWS_AS(convert_to_standard(passive, 2), std::out_of_range);
  CorrectableTriple broken = passive;
  broken.verified = false;
  CHECK_THROWS_AS(convert_to_standard(broken, 0), NotVerified);
}

TEST_CASE("convert_to_standard on the collective-noise qubit sector") {
  FixtureParams params;
  params.num["n_qubits"] = 3;
  params.num["seed"] = 21;
  const QuantumChannel coll = fixture("collective_unitary", params).channel;
  const auto cands = find_noiseless_subsystems(coll);
  bool done = false;
  for (const auto& c : cands) {
    if (c.decomp.m != 2 || c.decomp.n != 2) continue;
    const CorrectableTriple triple = check_correctable_triple(
        identity_channel(8), coll, c.decomp, c.units);
    REQUIRE(triple.verified);
    for (Index k = 0; k < 2; ++k) {
      const StandardScheme scheme = convert_to_standard(triple, k);
      CHECK(std::abs(scheme.code_projector.trace().real() - 2.0) <= 1e-10);
      CHECK(check_standard_condition(coll, scheme.code_projector).ok);
      const RecoveryStats stats = recovery_state_stats(
          coll, scheme.recovery,
          c.decomp.embedding.middleCols(k * c.decomp.n, c.decomp.n), 100, 7);
      CHECK(stats.min_fidelity >= 1.0 - 1e-9);
    }
    done = true;
  }
  CHECK(done);
}

TEST_CASE("theorem 2 necessity audit") {
  const Fixture fix = bit_flip_code();
  const QuantumChannel rec =
      build_standard_recovery(fix.channel, *fix.code_projector);
  const NecessityAuditReport scheme_report = theorem2_necessity_audit(
      fix.channel, rec, *fix.decomp, *fix.units);
  CHECK(scheme_report.triple_correctable);
  CHECK(scheme_report.eq8_holds);
  CHECK_FALSE(scheme_report.theorem_violation);

  const Fixture db = fixture("damping_on_B");
  const NecessityAuditReport db_report = theorem2_necessity_audit(
      db.channel, identity_channel(4), *db.decomp, *db.units);
  CHECK_FALSE(db_report.triple_correctable);
  CHECK_FALSE(db_report.eq8_holds);
  CHECK_FALSE(db_report.theorem_violation);

  const Fixture da = fixture("damping_on_A");
  const NecessityAuditReport da_report = theorem2_necessity_audit(
      da.channel, identity_channel(4), *da.decomp, *da.units);
  CHECK(da_report.triple_correctable);
  CHECK(da_report.eq8_holds);

  // randomized sweep: the forbidden combination never shows up
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const QuantumChannel ch = random_channel(4, 2, seed);
    const QuantumChannel r = random_channel(4, 2, seed + 50);
    auto [dec, mu] = build_decomposition(ComplexMatrix::Identity(4, 4), 2, 2);
    CHECK_FALSE(
        theorem2_necessity_audit(ch, r, dec, mu).theorem_violation);
  }
}

TEST_CASE("verdicts are invariant under Kraus mixing and basis rotation") {
  const Fixture da = fixture("damping_on_A");
  Rng rng(31);
  for (int rep = 0; rep < 3; ++rep) {
    const ComplexMatrix w =
        random_unitary(static_cast<Index>(da.channel.n_kraus()), rng);
    const ComplexMatrix u = random_unitary(2, rng);
    const ConditionCheck re = reextract(da.channel, *da.decomp, u, w);
    CHECK(re.ok);  // verdict invariant
    const ConditionCheck base = check_unified_condition(da.channel, *da.units);
    const LambdaTensor predicted = transform_lambda(base.lambda, u, w);
    for (std::size_t i = 0; i < predicted.values.size(); ++i)
      CHECK(std::abs(predicted.values[i] - re.lambda.values[i]) <= 1e-8);
  }
}

}  // TEST_SUITE
