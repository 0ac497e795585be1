#pragma once

#include <string>
#include <vector>

#include "lownoise/linalg.hpp"

namespace lownoise {

/// Linear matrix inequality F0 + sum_i x_i F_i >= 0 over real symmetric matrices.
/// `coefficients` is either empty (block independent of x) or holds one
/// matrix per variable.
struct LmiBlock {
  int side = 0;
  RealMatrix constant;
  std::vector<RealMatrix> coefficients;
};

/// minimize c^T x + objective_constant
/// subject to  F_k(x) >= 0 for every block k,  eq_matrix x = eq_rhs.
struct SdpProblem {
  int num_variables = 0;
  RealVector objective;
  double objective_constant = 0.0;
  std::vector<LmiBlock> blocks;
  RealMatrix eq_matrix;  // rows x num_variables; zero rows allowed
  RealVector eq_rhs;

  /// Throws DimensionError on inconsistent shapes or non-symmetric blocks.
  void validate() const;
};

struct SdpOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
};

enum class SdpStatus { optimal, infeasible, max_iterations, numerical_failure };

std::string to_string(SdpStatus status);

struct SdpSolution {
  SdpStatus status = SdpStatus::numerical_failure;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  RealVector x;
  RealVector y;                     // equality multipliers
  std::vector<RealMatrix> z;        // block multipliers, PSD
  std::vector<RealMatrix> slack;    // F_k(x)
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;                 // |primal - dual|
  std::string detail;               // certificate kind or failure reason
};

/// Primal-dual interior-point method on the homogeneous self-dual embedding
/// with Nesterov-Todd scaling and a Mehrotra predictor-corrector.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

/// [[Re H, -Im H], [Im H, Re H]]; H is PSD iff the image is.
RealMatrix hermitian_to_real(const ComplexMatrix& h);

/// Symmetric-matrix vectorization with sqrt(2)-scaled off-diagonals, so that
/// svec(A).dot(svec(B)) = tr(AB). Column-major lower triangle.
RealVector svec(const RealMatrix& m);
RealMatrix smat(const RealVector& v, int side);

}  // namespace lownoise
