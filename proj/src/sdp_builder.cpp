#include "lownoise/sdp_builder.hpp"

#include "lownoise/errors.hpp"

namespace lownoise {

ComplexMatrix extract(const RealVector& x, HermitianVariable v) {
  const int n = v.side;
  ComplexMatrix m(n, n);
  int idx = v.offset;
  for (int i = 0; i < n; ++i) m(i, i) = x(idx++);
  const int upper = n * (n - 1) / 2;
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k) {
      const Complex value(x(idx + k), x(idx + upper + k));
      m(i, j) = value;
      m(j, i) = std::conj(value);
    }
  return m;
}

ComplexMatrix Assignment::matrix(HermitianVariable v) const { return extract(values_, v); }

ScalarVariable ProblemBuilder::add_scalar() { return {num_variables_++}; }

HermitianVariable ProblemBuilder::add_hermitian(int side) {
  if (side < 1) throw DimensionError("add_hermitian: side must be positive");
  const HermitianVariable v{num_variables_, side};
  num_variables_ += side * side;
  return v;
}

void ProblemBuilder::minimize(AffineScalar objective) { objective_ = std::move(objective); }

void ProblemBuilder::add_psd(AffineHermitian f) { psd_.push_back(std::move(f)); }

void ProblemBuilder::add_equality(AffineHermitian f) { equalities_.push_back(std::move(f)); }

SdpProblem ProblemBuilder::build() const {
  const int n = num_variables_;
  SdpProblem p;
  p.num_variables = n;
  RealVector point = RealVector::Zero(n);
  const Assignment at(point);

  p.objective = RealVector::Zero(n);
  if (objective_) {
    p.objective_constant = objective_(at);
    for (int i = 0; i < n; ++i) {
      point(i) = 1.0;
      p.objective(i) = objective_(at) - p.objective_constant;
      point(i) = 0.0;
    }
  }

  for (const AffineHermitian& f : psd_) {
    const ComplexMatrix f0 = f(at);
    LmiBlock blk;
    blk.side = static_cast<int>(2 * f0.rows());
    blk.constant = hermitian_to_real(f0);
    blk.coefficients.reserve(n);
    for (int i = 0; i < n; ++i) {
      point(i) = 1.0;
      blk.coefficients.push_back(hermitian_to_real(f(at) - f0));
      point(i) = 0.0;
    }
    p.blocks.push_back(std::move(blk));
  }

  std::vector<RealVector> rows;
  std::vector<double> rhs;
  for (const AffineHermitian& f : equalities_) {
    const ComplexMatrix f0 = f(at);
    std::vector<ComplexMatrix> deltas;
    deltas.reserve(n);
    for (int i = 0; i < n; ++i) {
      point(i) = 1.0;
      deltas.push_back(f(at) - f0);
      point(i) = 0.0;
    }
    const Eigen::Index side = f0.rows();
    auto emit = [&](auto component) {
      RealVector row(n);
      for (int i = 0; i < n; ++i) row(i) = component(deltas[i]);
      rows.push_back(std::move(row));
      rhs.push_back(-component(f0));
    };
    for (Eigen::Index i = 0; i < side; ++i) emit([i](const ComplexMatrix& m) { return m(i, i).real(); });
    for (Eigen::Index i = 0; i < side; ++i)
      for (Eigen::Index j = i + 1; j < side; ++j) {
        emit([i, j](const ComplexMatrix& m) { return m(i, j).real(); });
        emit([i, j](const ComplexMatrix& m) { return m(i, j).imag(); });
      }
  }
  p.eq_matrix = RealMatrix(static_cast<Eigen::Index>(rows.size()), n);
  p.eq_rhs = RealVector(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    p.eq_matrix.row(static_cast<Eigen::Index>(r)) = rows[r];
    p.eq_rhs(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  return p;
}

}  // namespace lownoise
