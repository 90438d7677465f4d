#include "oqec/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oqec {

namespace {

// Signals a retry-worthy randomized step (degenerate clusters etc.).
struct AmbiguousClusters {};

constexpr double kClusterTol = 1e-6;   // eigenvalue clustering
constexpr double kNullCut = 1e-7;      // singular-value cut for null spaces
constexpr double kRankCut = 1e-9;      // relative rank cut for spans

// Hermitian (real-orthonormal) basis of a †-closed span given as orthonormal
// vectorized columns. The Hermitian part of a †-closed complex space has real
// dimension equal to the complex dimension of the space.
std::vector<ComplexMatrix> hermitian_basis_of_span(const ComplexMatrix& cols,
                                                   Index dim) {
  const Index k = cols.cols();
  if (k == 0) return {};
  Eigen::MatrixXd real_stack(2 * dim * dim, 2 * k);
  for (Index i = 0; i < k; ++i) {
    const ComplexMatrix x = unvectorize(cols.col(i), dim, dim);
    const ComplexMatrix h = 0.5 * (x + x.adjoint());
    const ComplexMatrix a = Complex(0.0, -0.5) * (x - x.adjoint());
    const ComplexVector vh = vectorize(h);
    const ComplexVector va = vectorize(a);
    real_stack.col(2 * i) << vh.real(), vh.imag();
    real_stack.col(2 * i + 1) << va.real(), va.imag();
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(real_stack, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = kRankCut * (sv.size() ? sv(0) : 0.0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (rank != k)
    throw Error("hermitian_basis_of_span: span is not dagger-closed (rank " +
                std::to_string(rank) + " vs " + std::to_string(k) + ")");
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(k));
  for (Index i = 0; i < k; ++i) {
    const Eigen::VectorXd col = svd.matrixU().col(i);
    ComplexVector v(dim * dim);
    v.real() = col.head(dim * dim);
    v.imag() = col.tail(dim * dim);
    out.push_back(unvectorize(v, dim, dim));
  }
  return out;
}

ComplexMatrix stack_vectorized(const std::vector<ComplexMatrix>& mats) {
  if (mats.empty()) return ComplexMatrix(0, 0);
  const Index d2 = mats.front().size();
  ComplexMatrix out(d2, static_cast<Index>(mats.size()));
  for (std::size_t i = 0; i < mats.size(); ++i)
    out.col(static_cast<Index>(i)) = vectorize(mats[i]);
  return out;
}

std::vector<ComplexMatrix> devectorize_columns(const ComplexMatrix& cols,
                                               Index rows, Index ncols) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(cols.cols()));
  for (Index i = 0; i < cols.cols(); ++i)
    out.push_back(unvectorize(cols.col(i), rows, ncols));
  return out;
}

// Null space (right singular vectors with σ ≤ cut) of a stacked map.
ComplexMatrix null_space(const ComplexMatrix& m, double cut) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

// Splits ascending eigenvalues into clusters separated by gaps > kClusterTol.
std::vector<std::pair<Index, Index>> cluster_eigenvalues(
    const Eigen::VectorXd& evals) {
  std::vector<std::pair<Index, Index>> clusters;  // [begin, count)
  Index begin = 0;
  for (Index i = 1; i <= evals.size(); ++i) {
    if (i == evals.size() || evals(i) - evals(i - 1) > kClusterTol) {
      clusters.emplace_back(begin, i - begin);
      begin = i;
    }
  }
  return clusters;
}

struct Sector {
  Index m = 0;
  Index n = 0;
  ComplexMatrix isometry;  // ambient-dim × (m·n)
};

// Random Hermitian combination of a Hermitian basis.
ComplexMatrix random_combination(const std::vector<ComplexMatrix>& hbasis,
                                 Rng& rng) {
  ComplexMatrix out =
      ComplexMatrix::Zero(hbasis.front().rows(), hbasis.front().cols());
  for (const auto& h : hbasis) out += rng.gaussian() * h;
  return out;
}

// Decomposes a unital †-algebra given by orthonormal vectorized columns on a
// space of dimension r. Throws AmbiguousClusters when the random elements
// fail to separate the structure.
std::vector<Sector> decompose_unital(const ComplexMatrix& basis_cols, Index r,
                                     Rng& rng) {
  const Index k = basis_cols.cols();
  const std::vector<ComplexMatrix> basis = devectorize_columns(basis_cols, r, r);

  // Center = algebra ∩ commutant, solved in algebra coordinates: stack the
  // maps c ↦ vec([X_j, Σ_i c_i X_i]).
  ComplexMatrix stacked(k * r * r, k);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < k; ++i)
      stacked.block(j * r * r, i, r * r, 1) =
          vectorize(basis[static_cast<std::size_t>(j)] *
                        basis[static_cast<std::size_t>(i)] -
                    basis[static_cast<std::size_t>(i)] *
                        basis[static_cast<std::size_t>(j)]);
  const ComplexMatrix center_coeff = null_space(stacked, kNullCut);
  const Index n_blocks = center_coeff.cols();
  if (n_blocks == 0) throw Error("decompose_unital: empty center");

  const std::vector<ComplexMatrix> center_h =
      hermitian_basis_of_span(basis_cols * center_coeff, r);

  // A generic self-adjoint central element separates the minimal central
  // projections: one eigenvalue cluster per block.
  const ComplexMatrix z = random_combination(center_h, rng);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> zes(z);
  const auto z_clusters = cluster_eigenvalues(zes.eigenvalues());
  if (static_cast<Index>(z_clusters.size()) != n_blocks)
    throw AmbiguousClusters{};

  std::vector<Sector> sectors;
  for (const auto& [begin, count] : z_clusters) {
    const ComplexMatrix q = zes.eigenvectors().middleCols(begin, count);
    const Index dj = count;

    // Restrict the algebra to the central sector; its linear dimension is m².
    std::vector<ComplexMatrix> restricted;
    restricted.reserve(static_cast<std::size_t>(k));
    for (const auto& x : basis) restricted.push_back(q.adjoint() * x * q);
    const ComplexMatrix factor_cols =
        orthonormal_span(stack_vectorized(restricted), 1e-8);
    const Index m2 = factor_cols.cols();
    const Index m = static_cast<Index>(std::llround(std::sqrt(
        static_cast<double>(m2))));
    if (m * m != m2 || dj % m != 0) throw AmbiguousClusters{};
    const Index n = dj / m;

    Sector sec;
    sec.m = m;
    sec.n = n;
    if (m == 1) {
      // Scalars ⊗ 1l_n: any orthonormal basis of the sector realizes it.
      sec.isometry = q;
      sectors.push_back(std::move(sec));
      continue;
    }

    const std::vector<ComplexMatrix> factor_h =
        hermitian_basis_of_span(factor_cols, dj);

    // A generic self-adjoint element of M_m ⊗ 1l_n has m eigenvalue
    // clusters of multiplicity n; each eigenspace is a copy of H^B.
    const ComplexMatrix s = random_combination(factor_h, rng);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ses(s);
    const auto s_clusters = cluster_eigenvalues(ses.eigenvalues());
    if (static_cast<Index>(s_clusters.size()) != m) throw AmbiguousClusters{};
    std::vector<ComplexMatrix> w;
    for (const auto& [b2, c2] : s_clusters) {
      if (c2 != n) throw AmbiguousClusters{};
      w.push_back(ses.eigenvectors().middleCols(b2, c2));
    }

    // Align the copies: for a generic element X, W_k† X W_1 is a scalar
    // multiple of a unitary; its polar part transports the k-th copy's basis
    // onto the first one's.
    const ComplexMatrix x_gen = random_combination(factor_h, rng);
    ComplexMatrix sector_unitary(dj, dj);
    sector_unitary.leftCols(n) = w[0];
    for (Index kk = 1; kk < m; ++kk) {
      const ComplexMatrix transfer =
          w[static_cast<std::size_t>(kk)].adjoint() * x_gen * w[0];
      Eigen::BDCSVD<ComplexMatrix> svd(
          transfer, Eigen::ComputeFullU | Eigen::ComputeFullV);
      if (svd.singularValues().minCoeff() <
          kClusterTol * svd.singularValues().maxCoeff())
        throw AmbiguousClusters{};
      const ComplexMatrix polar_u = svd.matrixU() * svd.matrixV().adjoint();
      sector_unitary.middleCols(kk * n, n) =
          w[static_cast<std::size_t>(kk)] * polar_u;
    }
    sec.isometry = q * sector_unitary;
    sectors.push_back(std::move(sec));
  }
  return sectors;
}

bool lex_less(const ComplexMatrix& a, const ComplexMatrix& b) {
  for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    const Complex x = a(i);
    const Complex y = b(i);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return a.size() < b.size();
}

void sort_sectors(std::vector<Sector>& sectors) {
  std::sort(sectors.begin(), sectors.end(),
            [](const Sector& a, const Sector& b) {
              if (a.m != b.m) return a.m > b.m;
              if (a.n != b.n) return a.n > b.n;
              return lex_less(a.isometry.col(0), b.isometry.col(0));
            });
}

AlgebraStructure assemble(std::vector<Sector> sectors,
                          const ComplexMatrix& kernel_basis, Index dim) {
  sort_sectors(sectors);
  AlgebraStructure s;
  s.unitary = ComplexMatrix(dim, dim);
  Index offset = 0;
  for (const auto& sec : sectors) {
    s.blocks.push_back({sec.m, sec.n});
    s.unitary.middleCols(offset, sec.m * sec.n) = sec.isometry;
    offset += sec.m * sec.n;
  }
  s.kernel_dim = kernel_basis.cols();
  if (s.kernel_dim > 0) s.unitary.rightCols(s.kernel_dim) = kernel_basis;
  return s;
}

}  // namespace

Index block_offset(const AlgebraStructure& s, std::size_t j) {
  Index offset = 0;
  for (std::size_t i = 0; i < j; ++i)
    offset += s.blocks[i].m * s.blocks[i].n;
  return offset;
}

OperatorAlgebra make_operator_space(Index dim,
                                    const std::vector<ComplexMatrix>& spanning,
                                    const Tolerance& tol) {
  check_tolerance(tol);
  if (spanning.empty())
    throw std::invalid_argument("make_operator_space: empty spanning set");
  for (const auto& m : spanning) {
    if (m.rows() != dim || m.cols() != dim)
      throw DimensionMismatch("make_operator_space: element shape mismatch");
    require_finite(m, "make_operator_space");
  }
  OperatorAlgebra alg;
  alg.dim = dim;
  const ComplexMatrix cols = orthonormal_span(stack_vectorized(spanning), kRankCut);
  alg.basis = devectorize_columns(cols, dim, dim);
  // Detect closures rather than trusting the caller.
  double dag = 0.0;
  for (const auto& x : alg.basis) {
    const ComplexMatrix xd = x.adjoint();
    dag = std::max(dag, (xd - project_onto(alg, xd)).norm());
  }
  alg.dagger_closed = dag <= 10 * tol.atol;
  alg.product_closed = closure_residual(alg) <= 10 * tol.atol;
  return alg;
}

ComplexMatrix project_onto(const OperatorAlgebra& alg, const ComplexMatrix& m) {
  ComplexMatrix out = ComplexMatrix::Zero(alg.dim, alg.dim);
  for (const auto& b : alg.basis) out += hs_inner(b, m) * b;
  return out;
}

double containment_residual(const OperatorAlgebra& sub,
                            const OperatorAlgebra& sup) {
  double worst = 0.0;
  for (const auto& x : sub.basis)
    worst = std::max(worst, (x - project_onto(sup, x)).norm());
  return worst;
}

double closure_residual(const OperatorAlgebra& alg) {
  double worst = 0.0;
  for (const auto& x : alg.basis)
    for (const auto& y : alg.basis) {
      const ComplexMatrix xy = x * y;
      worst = std::max(worst, (xy - project_onto(alg, xy)).norm());
    }
  return worst;
}

double commutation_residual(const OperatorAlgebra& alg,
                            const ComplexMatrix& y) {
  double worst = 0.0;
  for (const auto& x : alg.basis)
    worst = std::max(worst, (x * y - y * x).norm());
  return worst;
}

OperatorAlgebra generate_interaction_algebra(const QuantumChannel& ch,
                                             const Tolerance& tol) {
  check_tolerance(tol);
  const Index d = ch.dim();
  const Index d2 = d * d;

  ComplexMatrix basis(d2, 0);  // orthonormal vectorized span
  std::vector<ComplexMatrix> fresh;

  auto try_insert = [&](const ComplexMatrix& cand) {
    ComplexVector v = vectorize(cand);
    // Two projection passes keep the basis orthonormal to machine precision.
    v -= basis * (basis.adjoint() * v);
    v -= basis * (basis.adjoint() * v);
    if (v.norm() > tol.atol) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = v / v.norm();
      fresh.push_back(unvectorize(basis.col(basis.cols() - 1), d, d));
    }
  };

  for (const auto& k : ch.kraus()) {
    try_insert(k);
    try_insert(k.adjoint());
  }

  std::vector<ComplexMatrix> old;
  Index rounds = 0;
  while (!fresh.empty()) {
    if (++rounds > d2)
      throw ClosureNotReached(
          "generate_interaction_algebra: closure still growing after " +
          std::to_string(d2) + " rounds");
    std::vector<ComplexMatrix> batch;
    std::swap(batch, fresh);
    for (const auto& nw : batch) {
      for (const auto& other : old) {
        try_insert(nw * other);
        try_insert(other * nw);
      }
      for (const auto& other : batch) {
        try_insert(nw * other);
        try_insert(other * nw);
      }
    }
    old.insert(old.end(), batch.begin(), batch.end());
  }

  OperatorAlgebra alg;
  alg.dim = d;
  alg.basis = devectorize_columns(basis, d, d);
  alg.dagger_closed = true;
  alg.product_closed = true;
  return alg;
}

OperatorAlgebra commutant(const OperatorAlgebra& alg, const Tolerance& tol) {
  check_tolerance(tol);
  const Index d = alg.dim;
  const Index d2 = d * d;
  const Index k = alg.dimension();
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);

  // vec([X, σ]) = (1l⊗X − Xᵀ⊗1l) vec(σ), stacked over the basis.
  ComplexMatrix stacked(k * d2, d2);
  for (Index i = 0; i < k; ++i) {
    const ComplexMatrix& x = alg.basis[static_cast<std::size_t>(i)];
    stacked.middleRows(i * d2, d2) =
        kron(eye, x) - kron(x.transpose(), eye);
  }
  const ComplexMatrix null_cols = null_space(stacked, kNullCut);

  OperatorAlgebra out;
  out.dim = d;
  out.basis = hermitian_basis_of_span(null_cols, d);
  out.dagger_closed = true;
  out.product_closed = true;  // the commutant of a †-closed set is a †-algebra
  return out;
}

OperatorAlgebra fixed_points(const QuantumChannel& ch, const Tolerance& tol) {
  check_tolerance(tol);
  const Index d = ch.dim();
  const ComplexMatrix s = superoperator(ch);
  const ComplexMatrix shifted =
      s - ComplexMatrix::Identity(d * d, d * d);
  const ComplexMatrix null_cols = null_space(shifted, kClusterTol);

  OperatorAlgebra out;
  out.dim = d;
  out.basis = hermitian_basis_of_span(null_cols, d);
  out.dagger_closed = true;
  Tolerance flag_tol{10 * tol.atol};
  out.product_closed =
      out.basis.empty() ? true : (closure_residual(out) <= flag_tol.atol);
  return out;
}

AlgebraStructure decompose_structure(const OperatorAlgebra& alg,
                                     const Tolerance& tol, std::uint64_t seed) {
  check_tolerance(tol);
  if (!alg.dagger_closed || !alg.product_closed)
    throw std::invalid_argument(
        "decompose_structure: input must be a dagger-closed algebra");
  const Index d = alg.dim;

  // Joint range of the algebra; the complement is the kernel on which every
  // element acts as zero.
  ComplexMatrix hstack(d, alg.dimension() * d);
  for (Index i = 0; i < alg.dimension(); ++i)
    hstack.middleCols(i * d, d) = alg.basis[static_cast<std::size_t>(i)];
  Eigen::BDCSVD<ComplexMatrix> range_svd(hstack, Eigen::ComputeFullU);
  const auto& rsv = range_svd.singularValues();
  Index r = 0;
  while (r < rsv.size() && rsv(r) > kRankCut * rsv(0)) ++r;
  const ComplexMatrix q_range = range_svd.matrixU().leftCols(r);
  const ComplexMatrix q_kernel = range_svd.matrixU().rightCols(d - r);

  // Restricted to its range the algebra is unital.
  std::vector<ComplexMatrix> restricted;
  restricted.reserve(alg.basis.size());
  for (const auto& x : alg.basis)
    restricted.push_back(q_range.adjoint() * x * q_range);
  const ComplexMatrix basis_cols =
      orthonormal_span(stack_vectorized(restricted), kRankCut);
  if (basis_cols.cols() != alg.dimension())
    throw DecompositionFailed(
        "decompose_structure: restriction to the joint range lost rank", 1.0);

  double best_residual = std::numeric_limits<double>::infinity();
  for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
    Rng rng(seed + attempt);
    std::vector<Sector> sectors;
    try {
      sectors = decompose_unital(basis_cols, r, rng);
    } catch (const AmbiguousClusters&) {
      continue;
    }
    for (auto& sec : sectors) sec.isometry = q_range * sec.isometry;
    AlgebraStructure s = assemble(std::move(sectors), q_kernel, d);
    s.residual = block_pattern_residual(alg.basis, s, false);
    if (s.residual <= tol.atol) return s;
    best_residual = std::min(best_residual, s.residual);
  }
  throw DecompositionFailed(
      "decompose_structure: block residual " + std::to_string(best_residual) +
          " above tolerance after 5 attempts",
      best_residual);
}

AlgebraStructure noise_commutant_blocks(const QuantumChannel& ch,
                                        const Tolerance& tol,
                                        std::uint64_t seed) {
  const OperatorAlgebra alg = generate_interaction_algebra(ch, tol);
  const OperatorAlgebra comm = commutant(alg, tol);
  AlgebraStructure s = decompose_structure(comm, tol, seed);

  // decompose_structure puts the commutant in M_{n}⊗1l_{m} layout per block;
  // swap the tensor factors so it reads 1l_{m}⊗M_{n} with the noisy index
  // first, matching the subsystem embedding convention.
  std::vector<Sector> sectors;
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    const Index b_dim = s.blocks[j].m;  // commutant matrix factor = H^B
    const Index a_dim = s.blocks[j].n;  // multiplicity = H^A
    const Index offset = block_offset(s, j);
    Sector sec;
    sec.m = a_dim;
    sec.n = b_dim;
    sec.isometry = ComplexMatrix(ch.dim(), a_dim * b_dim);
    for (Index a = 0; a < a_dim; ++a)
      for (Index b = 0; b < b_dim; ++b)
        sec.isometry.col(a * b_dim + b) =
            s.unitary.col(offset + b * a_dim + a);
    sectors.push_back(std::move(sec));
  }
  AlgebraStructure out =
      assemble(std::move(sectors), s.unitary.rightCols(s.kernel_dim), ch.dim());
  out.residual = block_pattern_residual(comm.basis, out, true);
  return out;
}

double block_pattern_residual(const std::vector<ComplexMatrix>& basis,
                              const AlgebraStructure& s,
                              bool commutant_orientation) {
  double worst = 0.0;
  const Index d = s.unitary.rows();
  for (const auto& x : basis) {
    const ComplexMatrix y = s.unitary.adjoint() * x * s.unitary;
    ComplexMatrix pattern = ComplexMatrix::Zero(d, d);
    Index offset = 0;
    for (const auto& blk : s.blocks) {
      const Index m = blk.m;
      const Index n = blk.n;
      const ComplexMatrix sub = y.block(offset, offset, m * n, m * n);
      if (!commutant_orientation) {
        // block form x ⊗ 1l_n: average the n diagonal entries of each n×n tile
        ComplexMatrix small(m, m);
        for (Index k = 0; k < m; ++k)
          for (Index l = 0; l < m; ++l)
            small(k, l) = sub.block(k * n, l * n, n, n).trace() /
                          static_cast<double>(n);
        pattern.block(offset, offset, m * n, m * n) =
            kron(small, ComplexMatrix::Identity(n, n));
      } else {
        // block form 1l_m ⊗ y: average the m diagonal n×n tiles
        ComplexMatrix small = ComplexMatrix::Zero(n, n);
        for (Index k = 0; k < m; ++k)
          small += sub.block(k * n, k * n, n, n);
        small /= static_cast<double>(m);
        pattern.block(offset, offset, m * n, m * n) =
            kron(ComplexMatrix::Identity(m, m), small);
      }
      offset += m * n;
    }
    worst = std::max(worst, (y - pattern).norm());
  }
  return worst;
}

}  // namespace oqec
