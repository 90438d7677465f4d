#ifndef OQEC_LAMBDA_HPP
#define OQEC_LAMBDA_HPP

#include <initializer_list>
#include <vector>

#include "oqec/matrix.hpp"

namespace oqec {

// Which defining relation the scalars were extracted from:
//   Standard            λ_ab    with P E_a†E_b P   = λ_ab P
//   NoiselessSubsystem  λ_akl   with P_k E_a P_l   = λ_akl P_kl
//   Unified             λ_abkl  with P_k E_a†E_b P_l = λ_abkl P_kl
enum class LambdaKind { Standard, NoiselessSubsystem, Unified };

struct LambdaTensor {
  LambdaKind kind = LambdaKind::Standard;
  std::vector<Index> shape;
  std::vector<Complex> values;  // row-major over shape
  double max_residual = 0.0;    // Frobenius defect of the defining relation

  Index flat_index(std::initializer_list<Index> idx) const {
    if (idx.size() != shape.size())
      throw DimensionMismatch("LambdaTensor: wrong number of indices");
    Index flat = 0;
    std::size_t pos = 0;
    for (Index i : idx) {
      if (i < 0 || i >= shape[pos])
        throw std::out_of_range("LambdaTensor: index out of range");
      flat = flat * shape[pos] + i;
      ++pos;
    }
    return flat;
  }

  Complex at(std::initializer_list<Index> idx) const {
    return values[static_cast<std::size_t>(flat_index(idx))];
  }
};

// The λ_ab matrix of a Standard tensor as a dense matrix.
inline ComplexMatrix standard_matrix(const LambdaTensor& lam) {
  if (lam.kind != LambdaKind::Standard || lam.shape.size() != 2)
    throw std::invalid_argument("standard_matrix: tensor is not λ_ab");
  ComplexMatrix m(lam.shape[0], lam.shape[1]);
  for (Index a = 0; a < lam.shape[0]; ++a)
    for (Index b = 0; b < lam.shape[1]; ++b) m(a, b) = lam.at({a, b});
  return m;
}

}  // namespace oqec

#endif
