#include "oqec/code_zoo.hpp"

#include <cmath>

namespace oqec {

namespace {

double get_param(const FixtureParams& params, const std::string& key,
                 double fallback) {
  auto it = params.num.find(key);
  return it == params.num.end() ? fallback : it->second;
}

double require_param(const FixtureParams& params, const std::string& key,
                     const std::string& fixture_name) {
  auto it = params.num.find(key);
  if (it == params.num.end())
    throw BadParams(fixture_name + ": missing required parameter '" + key +
                    "'");
  return it->second;
}

Index int_param(double v, const std::string& what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12 || r < 0)
    throw BadParams(what + " must be a non-negative integer");
  return static_cast<Index>(r);
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

ComplexMatrix pauli_z() {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

// op on the q-th of n_qubits qubits (qubit 0 leftmost).
ComplexMatrix on_qubit(const ComplexMatrix& op, Index q, Index n_qubits) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (Index j = 0; j < n_qubits; ++j)
    out = kron(out, j == q ? op : ComplexMatrix::Identity(2, 2)).eval();
  return out;
}

void attach_decomposition(Fixture& f, const ComplexMatrix& embedding, Index m,
                          Index n) {
  auto [decomp, mu] = build_decomposition(embedding, m, n);
  f.decomp = std::move(decomp);
  f.units = std::move(mu);
}

Fixture identity_fixture(const FixtureParams& params) {
  const Index d = int_param(get_param(params, "d", 2), "identity: d");
  if (d < 1) throw BadParams("identity: d must be >= 1");
  Fixture f{.name = "identity", .channel = identity_channel(d)};
  f.code_projector = ComplexMatrix::Identity(d, d);
  attach_decomposition(f, ComplexMatrix::Identity(d, d), 1, d);
  f.expected = {{"unital", true}, {"eq2", true},      {"ns", true},
                {"theorem1", true}, {"eq8", true},    {"eq6", true}};
  return f;
}

Fixture repetition_code_fixture(const std::string& name,
                                const FixtureParams& params, bool phase) {
  const double p = get_param(params, "p", 0.05);
  if (p < 0.0 || 3.0 * p > 1.0)
    throw BadParams(name + ": need 0 <= p <= 1/3");
  const Index d = 8;
  const ComplexMatrix single = phase ? pauli_z() : pauli_x();
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(std::sqrt(1.0 - 3.0 * p) *
                  ComplexMatrix::Identity(d, d));
  for (Index q = 0; q < 3; ++q)
    kraus.push_back(std::sqrt(p) * on_qubit(single, q, 3));

  ComplexMatrix embedding = ComplexMatrix::Zero(d, 2);
  if (!phase) {
    embedding(0, 0) = 1.0;  // |000⟩
    embedding(7, 1) = 1.0;  // |111⟩
  } else {
    // |+++⟩ and |---⟩
    const double amp = 1.0 / std::sqrt(8.0);
    for (Index i = 0; i < d; ++i) {
      embedding(i, 0) = amp;
      const int ones = __builtin_popcount(static_cast<unsigned>(i));
      embedding(i, 1) = (ones % 2 == 0) ? amp : -amp;
    }
  }

  Fixture f{.name = name,
            .channel = validate_channel(std::move(kraus), Tolerance{}, name)};
  f.code_projector = embedding * embedding.adjoint();
  attach_decomposition(f, embedding, 1, 2);
  // The code needs active correction: it is not a DFS of the raw errors,
  // but the m=1 compressions are scalar, so Eq. (8) holds.
  f.expected = {{"unital", true}, {"eq2", true},       {"ns", false},
                {"theorem1", false}, {"eq8", true},    {"eq6", false}};
  return f;
}

Fixture amplitude_damping_fixture(const FixtureParams& params) {
  const double gamma = get_param(params, "gamma", 0.3);
  if (gamma < 0.0 || gamma > 1.0)
    throw BadParams("amplitude_damping: need 0 <= gamma <= 1");
  Fixture f{.name = "amplitude_damping",
            .channel = validate_channel(amplitude_damping_kraus(gamma),
                                        Tolerance{}, "amplitude_damping")};
  f.expected = {{"unital", false}};
  return f;
}

Fixture damping_on_factor_fixture(const std::string& name,
                                  const FixtureParams& params,
                                  bool damp_a_factor) {
  const double gamma = get_param(params, "gamma", 0.3);
  if (gamma < 0.0 || gamma > 1.0)
    throw BadParams(name + ": need 0 <= gamma <= 1");
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  std::vector<ComplexMatrix> kraus;
  for (const auto& a : amplitude_damping_kraus(gamma))
    kraus.push_back(damp_a_factor ? kron(a, eye2) : kron(eye2, a));

  Fixture f{.name = name,
            .channel = validate_channel(std::move(kraus), Tolerance{}, name)};
  attach_decomposition(f, ComplexMatrix::Identity(4, 4), 2, 2);
  const bool ns = damp_a_factor;  // damping the noisy factor is harmless
  f.expected = {{"unital", false},   {"ns", ns},  {"theorem1", ns},
                {"eq8", ns},         {"eq6", ns}};
  return f;
}

Fixture collective_unitary_fixture(const FixtureParams& params) {
  const Index n_qubits = int_param(get_param(params, "n_qubits", 3),
                                   "collective_unitary: n_qubits");
  const Index n_samples = int_param(get_param(params, "n_samples", 4),
                                    "collective_unitary: n_samples");
  const auto seed = static_cast<std::uint64_t>(int_param(
      require_param(params, "seed", "collective_unitary"), "seed"));
  if (n_qubits < 1 || n_qubits > 4)
    throw BadParams("collective_unitary: n_qubits must be in [1,4]");
  if (n_samples < 1) throw BadParams("collective_unitary: n_samples >= 1");

  Rng rng(seed);
  const double w = 1.0 / std::sqrt(static_cast<double>(n_samples));
  std::vector<ComplexMatrix> kraus;
  for (Index s = 0; s < n_samples; ++s) {
    const ComplexMatrix u = random_unitary(2, rng);
    ComplexMatrix collective = ComplexMatrix::Identity(1, 1);
    for (Index q = 0; q < n_qubits; ++q)
      collective = kron(collective, u).eval();
    kraus.push_back(w * collective);
  }
  Fixture f{.name = "collective_unitary",
            .channel = validate_channel(std::move(kraus), Tolerance{},
                                        "collective_unitary")};
  f.expected = {{"unital", true}};
  return f;
}

Fixture collective_dephasing_fixture(const FixtureParams& params) {
  const double p = get_param(params, "p", 0.25);
  if (p < 0.0 || p > 1.0)
    throw BadParams("collective_dephasing_dfs: need 0 <= p <= 1");
  const ComplexMatrix zz = kron(pauli_z(), pauli_z());
  std::vector<ComplexMatrix> kraus{
      std::sqrt(1.0 - p) * ComplexMatrix::Identity(4, 4),
      std::sqrt(p) * zz};
  // The odd-parity subspace span{|01⟩,|10⟩} is untouched by Z⊗Z.
  ComplexMatrix embedding = ComplexMatrix::Zero(4, 2);
  embedding(1, 0) = 1.0;
  embedding(2, 1) = 1.0;

  Fixture f{.name = "collective_dephasing_dfs",
            .channel = validate_channel(std::move(kraus), Tolerance{},
                                        "collective_dephasing_dfs")};
  f.code_projector = embedding * embedding.adjoint();
  attach_decomposition(f, embedding, 1, 2);
  f.expected = {{"unital", true}, {"eq2", true},      {"ns", true},
                {"theorem1", true}, {"eq8", true},    {"eq6", true}};
  return f;
}

// d = 5 = (2×2) ⊕ K with one Kraus component carrying K into the sector:
// Eqs. (4)-(5) hold although P_𝔄 E_a P_𝔄^⊥ ≠ 0, so the noiseless operators
// are not in the commutant of the interaction algebra.
Fixture leaky_ns_fixture(const FixtureParams& params) {
  const double theta = get_param(params, "theta", 0.7);
  const Index d = 5;
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  ComplexMatrix rot(2, 2);
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);

  auto embed_sector = [&](const ComplexMatrix& op4) {
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    out.topLeftCorner(4, 4) = op4;
    return out;
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // leak |φ⟩⟨κ| with φ = |α_1⟩⊗|β_1⟩ = e_0 and κ = e_4
  ComplexMatrix leak = ComplexMatrix::Zero(d, d);
  leak(0, 4) = inv_sqrt2;

  std::vector<ComplexMatrix> kraus{
      embed_sector(kron(0.5 * eye2, eye2)) + leak,
      embed_sector(kron(0.5 * eye2, eye2)) - leak,
      embed_sector(kron(inv_sqrt2 * rot, eye2))};

  Fixture f{.name = "leaky_ns_channel",
            .channel = validate_channel(std::move(kraus), Tolerance{},
                                        "leaky_ns_channel")};
  ComplexMatrix embedding = ComplexMatrix::Zero(d, 4);
  embedding.topLeftCorner(4, 4) = ComplexMatrix::Identity(4, 4);
  attach_decomposition(f, embedding, 2, 2);
  f.expected = {{"unital", false},  {"ns", true}, {"theorem1", true},
                {"eq8", true},      {"eq6", true}};
  return f;
}

Fixture conjugated_fixture(const FixtureParams& params) {
  if (params.base.empty())
    throw BadParams("random_unitary_conjugate: missing base fixture name");
  const auto seed = static_cast<std::uint64_t>(int_param(
      require_param(params, "seed", "random_unitary_conjugate"), "seed"));
  Fixture base = fixture(params.base, FixtureParams{});

  Rng rng(seed);
  const ComplexMatrix u = random_unitary(base.channel.dim(), rng);
  std::vector<ComplexMatrix> kraus;
  for (const auto& e : base.channel.kraus())
    kraus.push_back(u * e * u.adjoint());

  const std::string label = "random_unitary_conjugate(" + params.base + ")";
  Fixture f{.name = label,
            .channel = validate_channel(std::move(kraus), Tolerance{}, label)};
  if (base.code_projector)
    f.code_projector = u * (*base.code_projector) * u.adjoint();
  if (base.decomp)
    attach_decomposition(f, u * base.decomp->embedding, base.decomp->m,
                         base.decomp->n);
  f.expected = base.expected;  // every verdict is basis covariant
  return f;
}

}  // namespace

std::vector<ComplexMatrix> amplitude_damping_kraus(double gamma) {
  ComplexMatrix a0 = ComplexMatrix::Zero(2, 2);
  a0(0, 0) = 1.0;
  a0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix a1 = ComplexMatrix::Zero(2, 2);
  a1(0, 1) = std::sqrt(gamma);
  return {a0, a1};
}

Fixture fixture(const std::string& name, const FixtureParams& params) {
  if (name == "identity") return identity_fixture(params);
  if (name == "bit_flip_code")
    return repetition_code_fixture(name, params, false);
  if (name == "phase_flip_code")
    return repetition_code_fixture(name, params, true);
  if (name == "amplitude_damping") return amplitude_damping_fixture(params);
  if (name == "damping_on_A")
    return damping_on_factor_fixture(name, params, true);
  if (name == "damping_on_B")
    return damping_on_factor_fixture(name, params, false);
  if (name == "collective_unitary") return collective_unitary_fixture(params);
  if (name == "collective_dephasing_dfs")
    return collective_dephasing_fixture(params);
  if (name == "leaky_ns_channel") return leaky_ns_fixture(params);
  if (name == "random_unitary_conjugate") return conjugated_fixture(params);
  throw UnknownFixture("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
  return {"identity",           "bit_flip_code",
          "phase_flip_code",    "amplitude_damping",
          "damping_on_A",       "damping_on_B",
          "collective_unitary", "collective_dephasing_dfs",
          "leaky_ns_channel",   "random_unitary_conjugate"};
}

}  // namespace oqec
