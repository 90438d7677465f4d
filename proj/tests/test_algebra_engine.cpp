#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oqec/algebra.hpp"
#include "oqec/channel.hpp"
#include "oqec/code_zoo.hpp"
#include "oracles.hpp"

using namespace oqec;
using oracles::pauli;

namespace {

QuantumChannel bit_flip(double p) {
  return validate_channel(oracles::bit_flip_kraus(p));
}

QuantumChannel damping(double gamma) {
  return validate_channel(amplitude_damping_kraus(gamma));
}

QuantumChannel collective3(std::uint64_t seed) {
  FixtureParams params;
  params.num["n_qubits"] = 3;
  params.num["seed"] = static_cast<double>(seed);
  return fixture("collective_unitary", params).channel;
}

std::vector<std::pair<Index, Index>> block_list(const AlgebraStructure& s) {
  std::vector<std::pair<Index, Index>> out;
  for (const auto& b : s.blocks) out.emplace_back(b.m, b.n);
  return out;
}

}  // namespace

TEST_SUITE("algebra_engine") {

TEST_CASE("interaction algebra of the identity channel is the scalars") {
  const OperatorAlgebra alg =
      generate_interaction_algebra(identity_channel(3));
  CHECK(alg.dimension() == 1);
  CHECK(oracles::span_residual(alg.basis, ComplexMatrix::Identity(3, 3)) <=
        1e-12);
}

TEST_CASE("interaction algebra of the bit flip is span{1l, X}") {
  const OperatorAlgebra alg = generate_interaction_algebra(bit_flip(0.1));
  CHECK(alg.dimension() == 2);
  CHECK(oracles::word_closure_dimension(bit_flip(0.1).kraus(), 2) == 2);
  CHECK(oracles::span_residual(alg.basis, pauli('I')) <= 1e-10);
  CHECK(oracles::span_residual(alg.basis, pauli('X')) <= 1e-10);
}

TEST_CASE("interaction algebra of amplitude damping is all of M_2") {
  const OperatorAlgebra alg = generate_interaction_algebra(damping(0.3));
  CHECK(alg.dimension() == 4);
  CHECK(oracles::word_closure_dimension(damping(0.3).kraus(), 2) == 4);
}

TEST_CASE("commutant of the scalars is everything, of M_2 the scalars") {
  const OperatorAlgebra scalars =
      make_operator_space(3, {ComplexMatrix::Identity(3, 3)});
  CHECK(commutant(scalars).dimension() == 9);

  std::vector<ComplexMatrix> units;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(2, 2);
      e(i, j) = 1.0;
      units.push_back(e);
    }
  const OperatorAlgebra full = make_operator_space(2, units);
  const OperatorAlgebra comm = commutant(full);
  CHECK(comm.dimension() == 1);
  CHECK(oracles::span_residual(comm.basis, ComplexMatrix::Identity(2, 2)) <=
        1e-10);
}

TEST_CASE("3-qubit collective noise commutant has dimension 1 + 4") {
  const QuantumChannel ch = collective3(21);
  const OperatorAlgebra alg = generate_interaction_algebra(ch);
  CHECK(alg.dimension() == 20);  // 4² + 2²
  const OperatorAlgebra comm = commutant(alg);
  CHECK(comm.dimension() == 5);  // 1l_4 ⊕ (1l_2 ⊗ M_2)
  // Null-space oracle on the 64-dimensional operator space: solve the
  // commutation equations against the raw Kraus generators.
  std::vector<ComplexMatrix> gens = ch.kraus();
  for (const auto& k : ch.kraus()) gens.push_back(k.adjoint());
  const Index d = 8;
  ComplexMatrix stacked(static_cast<Index>(gens.size()) * d * d, d * d);
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  for (std::size_t i = 0; i < gens.size(); ++i)
    stacked.middleRows(static_cast<Index>(i) * d * d, d * d) =
        kron(eye, gens[i]) - kron(gens[i].transpose(), eye);
  CHECK(static_cast<Index>(d * d) - oracles::svd_rank(stacked) == 5);
}

TEST_CASE("fixed points: identity, bit flip, amplitude damping") {
  CHECK(fixed_points(identity_channel(2)).dimension() == 4);

  const OperatorAlgebra fix_flip = fixed_points(bit_flip(0.1));
  CHECK(fix_flip.dimension() == 2);
  CHECK(oracles::span_residual(fix_flip.basis, pauli('I')) <= 1e-8);
  CHECK(oracles::span_residual(fix_flip.basis, pauli('X')) <= 1e-8);
  CHECK(static_cast<Index>(
            oracles::fixed_space_eigensolve(bit_flip(0.1).kraus(), 2).size()) ==
        2);

  const OperatorAlgebra fix_damp = fixed_points(damping(0.3));
  CHECK(fix_damp.dimension() == 1);
  ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
  ground(0, 0) = 1.0;
  CHECK(oracles::span_residual(fix_damp.basis, ground) <= 1e-8);
  CHECK(static_cast<Index>(
            oracles::fixed_space_eigensolve(damping(0.3).kraus(), 2).size()) ==
        1);
}

TEST_CASE("decompose_structure: full matrix algebra and ampliated scalars") {
  std::vector<ComplexMatrix> units;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(3, 3);
      e(i, j) = 1.0;
      units.push_back(e);
    }
  const AlgebraStructure full =
      decompose_structure(make_operator_space(3, units));
  CHECK(block_list(full) == std::vector<std::pair<Index, Index>>{{3, 1}});
  CHECK(full.kernel_dim == 0);
  CHECK((full.unitary.adjoint() * full.unitary -
         ComplexMatrix::Identity(3, 3))
            .norm() <= 1e-10);

  const AlgebraStructure scalars = decompose_structure(
      make_operator_space(2, {ComplexMatrix::Identity(2, 2)}));
  CHECK(block_list(scalars) == std::vector<std::pair<Index, Index>>{{1, 2}});
}

TEST_CASE("decompose_structure handles a nonzero kernel") {
  // Algebra acting on the top-left 2×2 corner of a 3-dimensional space.
  std::vector<ComplexMatrix> corner;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(3, 3);
      e(i, j) = 1.0;
      corner.push_back(e);
    }
  const AlgebraStructure s = decompose_structure(make_operator_space(3, corner));
  CHECK(block_list(s) == std::vector<std::pair<Index, Index>>{{2, 1}});
  CHECK(s.kernel_dim == 1);
  CHECK(s.residual <= 1e-8);
}

TEST_CASE("3-qubit collective interaction algebra splits as (4,1) ⊕ (2,2)") {
  const QuantumChannel ch = collective3(21);
  const OperatorAlgebra alg = generate_interaction_algebra(ch);
  const AlgebraStructure s = decompose_structure(alg);
  CHECK(block_list(s) ==
        std::vector<std::pair<Index, Index>>{{4, 1}, {2, 2}});
  CHECK(s.kernel_dim == 0);
  CHECK(s.residual <= 1e-6);
  // dimension accounting: Σ m_J n_J = 8 and Σ m_J² = dim A
  Index total = s.kernel_dim;
  Index sq = 0;
  for (const auto& b : s.blocks) {
    total += b.m * b.n;
    sq += b.m * b.m;
  }
  CHECK(total == 8);
  CHECK(sq == alg.dimension());
}

TEST_CASE("noise_commutant_blocks orientation and examples") {
  const AlgebraStructure id2 = noise_commutant_blocks(identity_channel(2));
  CHECK(block_list(id2) == std::vector<std::pair<Index, Index>>{{1, 2}});

  const AlgebraStructure flip = noise_commutant_blocks(bit_flip(0.1));
  CHECK(block_list(flip) ==
        std::vector<std::pair<Index, Index>>{{1, 1}, {1, 1}});
  // Each one-dimensional block is spanned by an X eigenvector.
  for (Index c = 0; c < 2; ++c) {
    const ComplexVector v = flip.unitary.col(c);
    const ComplexVector xv = pauli('X') * v;
    const Complex overlap = (v.adjoint() * xv)(0, 0);
    CHECK((xv - overlap * v).norm() <= 1e-8);
    CHECK(std::abs(std::abs(overlap.real()) - 1.0) <= 1e-8);
  }

  const AlgebraStructure id4 = noise_commutant_blocks(identity_channel(4));
  CHECK(block_list(id4) == std::vector<std::pair<Index, Index>>{{1, 4}});

  const AlgebraStructure coll = noise_commutant_blocks(collective3(21));
  const auto blocks = block_list(coll);
  CHECK(std::count(blocks.begin(), blocks.end(),
                   std::pair<Index, Index>{2, 2}) == 1);
  CHECK(coll.residual <= 1e-6);
}

TEST_CASE("returned algebras close under products and commute as claimed") {
  for (const auto& ch :
       {bit_flip(0.1), damping(0.3), random_channel(4, 2, 5)}) {
    const OperatorAlgebra alg = generate_interaction_algebra(ch);
    CHECK(closure_residual(alg) <= 1e-7);
    const OperatorAlgebra comm = commutant(alg);
    CHECK(closure_residual(comm) <= 1e-7);
    for (const auto& y : comm.basis)
      CHECK(commutation_residual(alg, y) <= 1e-7);
    // double commutant: dim A'' = dim A and A ⊆ A''
    const OperatorAlgebra bicomm = commutant(comm);
    CHECK(bicomm.dimension() == alg.dimension());
    CHECK(containment_residual(alg, bicomm) <= 1e-7);
  }
}

TEST_CASE("unital channels: fixed points coincide with the commutant") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Index d = 2 + static_cast<Index>(seed % 3);
    const QuantumChannel ch = random_unital_channel(d, 3, seed);
    REQUIRE(is_unital(ch));
    const OperatorAlgebra fix = fixed_points(ch);
    const OperatorAlgebra comm = commutant(generate_interaction_algebra(ch));
    CHECK(fix.dimension() == comm.dimension());
    CHECK(containment_residual(fix, comm) <= 1e-7);
    CHECK(containment_residual(comm, fix) <= 1e-7);
  }
}

TEST_CASE("non-unital divergence: Fix(E) does not contain the commutant") {
  const OperatorAlgebra fix = fixed_points(damping(0.3));
  const OperatorAlgebra comm =
      commutant(generate_interaction_algebra(damping(0.3)));
  CHECK(fix.dimension() == 1);
  CHECK(comm.dimension() == 1);
  CHECK(containment_residual(comm, fix) > 0.1);
}

TEST_CASE("structure decomposition is deterministic for a fixed seed") {
  const QuantumChannel ch = collective3(4);
  const AlgebraStructure a = noise_commutant_blocks(ch, Tolerance{}, 0);
  const AlgebraStructure b = noise_commutant_blocks(ch, Tolerance{}, 0);
  CHECK((a.unitary - b.unitary).norm() == 0.0);
}

TEST_CASE("decompose_structure rejects a non-algebra") {
  // span{X} alone is not multiplicatively closed (X² = 1l is missing)
  const OperatorAlgebra bad = make_operator_space(2, {pauli('X')});
  CHECK_FALSE(bad.product_closed);
  CHECK_THROWS_AS(decompose_structure(bad), std::invalid_argument);
}

}  // TEST_SUITE
