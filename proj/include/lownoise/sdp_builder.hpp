#pragma once

#include <functional>
#include <vector>

#include "lownoise/sdp.hpp"

namespace lownoise {

struct ScalarVariable {
  int index = 0;
};

/// Complex Hermitian matrix variable of side n, stored as n^2 real
/// parameters: the diagonal, then real parts of the strict upper triangle,
/// then imaginary parts of the strict upper triangle.
struct HermitianVariable {
  int offset = 0;
  int side = 0;
};

/// Values of all variables at one point of the real parameter space.
class Assignment {
 public:
  explicit Assignment(const RealVector& values) : values_(values) {}

  double scalar(ScalarVariable v) const { return values_(v.index); }
  ComplexMatrix matrix(HermitianVariable v) const;

 private:
  const RealVector& values_;
};

using AffineHermitian = std::function<ComplexMatrix(const Assignment&)>;
using AffineScalar = std::function<double(const Assignment&)>;

/// Builds an SdpProblem from affine callables over complex Hermitian
/// variables. Coefficients are read off by evaluating each callable at the
/// origin and at every unit vector; callables must be affine.
class ProblemBuilder {
 public:
  ScalarVariable add_scalar();
  HermitianVariable add_hermitian(int side);

  void minimize(AffineScalar objective);
  /// f(x) >= 0 in the Hermitian order; lowered through hermitian_to_real.
  void add_psd(AffineHermitian f);
  /// f(x) = 0 entrywise (Hermitian, so n^2 real equations).
  void add_equality(AffineHermitian f);

  int num_variables() const { return num_variables_; }
  SdpProblem build() const;

 private:
  int num_variables_ = 0;
  AffineScalar objective_;
  std::vector<AffineHermitian> psd_;
  std::vector<AffineHermitian> equalities_;
};

/// Reads a Hermitian variable back from a solution vector.
ComplexMatrix extract(const RealVector& x, HermitianVariable v);

}  // namespace lownoise
