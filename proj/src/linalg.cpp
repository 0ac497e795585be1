#include "lownoise/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lownoise/errors.hpp"

namespace lownoise {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Keep keep) {
  const auto [d1, d2] = dims;
  if (d1 < 1 || d2 < 1 || m.rows() != m.cols() || m.rows() != Eigen::Index{d1} * d2) {
    throw DimensionError("partial_trace: matrix of side " + std::to_string(m.rows()) +
                         " does not match dims " + std::to_string(d1) + "x" + std::to_string(d2));
  }
  if (keep == Keep::first) {
    ComplexMatrix out = ComplexMatrix::Zero(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(d2, d2);
  for (int i = 0; i < d1; ++i) out += m.block(i * d2, i * d2, d2, d2);
  return out;
}

RealVector singular_values(const ComplexMatrix& m) {
  const ComplexMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  RealVector ev = solver.eigenvalues();
  RealVector sv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) sv(i) = std::sqrt(std::max(0.0, ev(ev.size() - 1 - i)));
  return sv;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == m.cols() && is_hermitian(m)) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  return singular_values(m).sum();
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double max_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_norm(m - m.adjoint()) <= tol;
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) { return 0.5 * (h + h.adjoint()); }

HermitianEigenResult eig_hermitian(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw DimensionError("eig_hermitian: matrix is not square");
  if (!is_hermitian(h)) throw DomainError("eig_hermitian: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw NumericalError("eig_hermitian: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols()) throw DimensionError("von_neumann_entropy: matrix is not square");
  if (!is_hermitian(rho)) throw DomainError("von_neumann_entropy: state is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > kTolerances.trace) {
    throw DomainError("von_neumann_entropy: state does not have unit trace");
  }
  const RealVector ev = eig_hermitian(rho).eigenvalues;
  if (ev(0) < kTolerances.psd_floor) throw DomainError("von_neumann_entropy: state is not PSD");
  double s = 0.0;
  for (double lambda : ev) {
    if (lambda > kTolerances.eigen_zero) s -= lambda * std::log2(lambda);
  }
  return s;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  return hermitian_function(h, [](double x) { return std::sqrt(std::max(0.0, x)); });
}

namespace {

// Projection of a real vector onto the probability simplex (sort-based).
RealVector project_to_simplex(const RealVector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (v.array() - theta).cwiseMax(0.0);
}

}  // namespace

ComplexMatrix project_to_density(const ComplexMatrix& h) {
  const HermitianEigenResult e = eig_hermitian(h);
  const RealVector p = project_to_simplex(e.eigenvalues);
  return e.eigenvectors * p.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint();
}

ComplexMatrix pauli_i() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix matrix_unit(int d, int i, int j) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

}  // namespace lownoise
