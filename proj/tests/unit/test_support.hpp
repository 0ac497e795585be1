#pragma once

#include <gtest/gtest.h>

#include "lownoise/linalg.hpp"

namespace lownoise::testing {

inline ::testing::AssertionResult matrices_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
                                         << b.cols();
  }
  const double err = (a - b).cwiseAbs().maxCoeff();
  if (err <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max entry difference " << err << " exceeds " << tol;
}

inline ComplexMatrix ket_bra(int d, int i, int j) { return matrix_unit(d, i, j); }

}  // namespace lownoise::testing
