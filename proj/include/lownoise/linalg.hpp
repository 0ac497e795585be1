#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

namespace lownoise {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical contract shared by every routine in the toolkit.
struct Tolerances {
  double hermiticity = 1e-9;      // max-norm of h - h^dagger
  double psd_floor = -1e-9;       // smallest eigenvalue still accepted as PSD
  double eigen_zero = 1e-12;      // eigenvalues below this count as zero
  double trace = 1e-9;            // unit-trace / trace-preservation checks
  double rank_relative = 1e-9;    // Choi rank threshold, relative to the operator norm
  double kraus_relative = 1e-12;  // Kraus extraction cutoff, relative to the operator norm
};

inline constexpr Tolerances kTolerances{};

/// Which tensor factor survives a partial trace.
enum class Keep { first, second };

/// Subsystem dimensions (first, second) of a bipartite operator.
using BipartiteDims = std::pair<int, int>;

struct HermitianEigenResult {
  RealVector eigenvalues;     // nondecreasing
  ComplexMatrix eigenvectors; // orthonormal columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out the factor not named by `keep`. `m` must be square with side
/// dims.first * dims.second; the first factor is the slow index.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Keep keep);

double trace_norm(const ComplexMatrix& m);
double operator_norm(const ComplexMatrix& m);
double max_norm(const ComplexMatrix& m);

/// Singular values in nonincreasing order, from the spectrum of M^dagger M.
RealVector singular_values(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kTolerances.hermiticity);

HermitianEigenResult eig_hermitian(const ComplexMatrix& h);

/// Base-2 von Neumann entropy of a density matrix.
double von_neumann_entropy(const ComplexMatrix& rho);

/// Hermitian part (h + h^dagger)/2.
ComplexMatrix hermitian_part(const ComplexMatrix& h);

/// Applies a real function to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& h, F&& f) {
  const HermitianEigenResult e = eig_hermitian(h);
  RealVector mapped(e.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped(i) = f(e.eigenvalues(i));
  return e.eigenvectors * mapped.asDiagonal() * e.eigenvectors.adjoint();
}

/// Principal square root of a PSD matrix; negative eigenvalues are clamped to 0.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// Euclidean projection of a Hermitian matrix onto the density matrices.
ComplexMatrix project_to_density(const ComplexMatrix& h);

ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// |i><j| in dimension d.
ComplexMatrix matrix_unit(int d, int i, int j);

}  // namespace lownoise
