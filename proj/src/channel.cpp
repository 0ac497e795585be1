#include <cmath>
#include <string>

#include "lownoise/channel.hpp"
#include "lownoise/errors.hpp"

namespace lownoise {

Channel::Channel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("Channel: empty Kraus list");
  dim_out_ = static_cast<int>(kraus_.front().rows());
  dim_in_ = static_cast<int>(kraus_.front().cols());
  if (dim_in_ < 1 || dim_out_ < 1) throw DimensionError("Channel: empty Kraus operator");
  ComplexMatrix completeness = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const ComplexMatrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_) {
      throw DimensionError("Channel: Kraus operators have inconsistent shapes");
    }
    completeness += k.adjoint() * k;
  }
  const double defect = max_norm(completeness - ComplexMatrix::Identity(dim_in_, dim_in_));
  if (defect > kTolerances.trace) {
    throw DomainError("Channel: Kraus operators are not trace preserving (defect " + std::to_string(defect) + ")");
  }
}

ChoiMatrix::ChoiMatrix(ComplexMatrix matrix, int dim_in, int dim_out)
    : matrix_(std::move(matrix)), dim_in_(dim_in), dim_out_(dim_out) {
  if (dim_in < 1 || dim_out < 1 || matrix_.rows() != Eigen::Index{dim_in} * dim_out ||
      matrix_.cols() != matrix_.rows()) {
    throw DimensionError("ChoiMatrix: side does not equal dim_in * dim_out");
  }
  if (!is_hermitian(matrix_)) throw DomainError("ChoiMatrix: operator is not Hermitian");
  const double floor = kTolerances.psd_floor * std::max(1.0, max_norm(matrix_));
  if (eig_hermitian(matrix_).eigenvalues(0) < floor) throw DomainError("ChoiMatrix: operator is not PSD");
}

HermitianPreservingMap::HermitianPreservingMap(ComplexMatrix choi, int dim_in, int dim_out)
    : choi_(std::move(choi)), dim_in_(dim_in), dim_out_(dim_out) {
  if (dim_in < 1 || dim_out < 1 || choi_.rows() != Eigen::Index{dim_in} * dim_out ||
      choi_.cols() != choi_.rows()) {
    throw DimensionError("HermitianPreservingMap: side does not equal dim_in * dim_out");
  }
  if (!is_hermitian(choi_)) throw DomainError("HermitianPreservingMap: Choi operator is not Hermitian");
}

HermitianPreservingMap HermitianPreservingMap::scaled(double factor) const {
  return HermitianPreservingMap(factor * choi_, dim_in_, dim_out_);
}

ChoiMatrix choi_of(const Channel& n) {
  const int din = n.dim_in();
  const int dout = n.dim_out();
  ComplexMatrix j = ComplexMatrix::Zero(din * dout, din * dout);
  ComplexVector v(din * dout);
  for (const ComplexMatrix& k : n.kraus()) {
    for (int i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  return ChoiMatrix(hermitian_part(j), din, dout);
}

Channel channel_of_choi(const ChoiMatrix& t) {
  const int din = t.dim_in();
  const int dout = t.dim_out();
  const ComplexMatrix reduced = partial_trace(t.matrix(), {din, dout}, Keep::first);
  if (max_norm(reduced - ComplexMatrix::Identity(din, din)) > kTolerances.trace) {
    throw DomainError("channel_of_choi: partial trace over the output is not the identity");
  }
  const HermitianEigenResult e = eig_hermitian(t.matrix());
  const double scale = std::max(std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(e.eigenvalues.size() - 1)));
  const double cutoff = kTolerances.kraus_relative * scale;
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index col = e.eigenvalues.size() - 1; col >= 0; --col) {
    const double lambda = e.eigenvalues(col);
    if (lambda <= cutoff) continue;
    ComplexVector v = e.eigenvectors.col(col);
    const double entry_floor = 1e-12 * v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > entry_floor) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    ComplexMatrix k(dout, din);
    for (int a = 0; a < din; ++a) k.col(a) = std::sqrt(lambda) * v.segment(a * dout, dout);
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus));
}

ComplexMatrix apply_choi(const ComplexMatrix& choi, int dim_in, int dim_out, const ComplexMatrix& rho) {
  if (rho.rows() != dim_in || rho.cols() != dim_in || choi.rows() != Eigen::Index{dim_in} * dim_out) {
    throw DimensionError("apply_choi: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_out, dim_out);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j) {
      if (rho(i, j) != Complex(0.0)) out += rho(i, j) * choi.block(i * dim_out, j * dim_out, dim_out, dim_out);
    }
  return out;
}

ComplexMatrix compose_choi(const ComplexMatrix& outer, const ComplexMatrix& inner,
                           int dim_in, int dim_mid, int dim_out) {
  if (inner.rows() != Eigen::Index{dim_in} * dim_mid || outer.rows() != Eigen::Index{dim_mid} * dim_out) {
    throw DimensionError("compose_choi: dimension mismatch");
  }
  ComplexMatrix out(dim_in * dim_out, dim_in * dim_out);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j) {
      out.block(i * dim_out, j * dim_out, dim_out, dim_out) =
          apply_choi(outer, dim_mid, dim_out, inner.block(i * dim_mid, j * dim_mid, dim_mid, dim_mid));
    }
  return out;
}

ComplexMatrix apply(const Channel& n, const ComplexMatrix& rho) {
  if (rho.rows() != n.dim_in() || rho.cols() != n.dim_in()) {
    throw DimensionError("apply: state dimension does not match the channel input");
  }
  ComplexMatrix out = ComplexMatrix::Zero(n.dim_out(), n.dim_out());
  for (const ComplexMatrix& k : n.kraus()) out.noalias() += k * rho * k.adjoint();
  return out;
}

Channel compose(const Channel& m, const Channel& n) {
  if (n.dim_out() != m.dim_in()) throw DimensionError("compose: output of n does not match input of m");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(m.num_kraus() * n.num_kraus());
  for (const ComplexMatrix& mj : m.kraus())
    for (const ComplexMatrix& ki : n.kraus()) kraus.push_back(mj * ki);
  return Channel(std::move(kraus));
}

IsometricExtension stinespring(const Channel& n) {
  const int dout = n.dim_out();
  const int denv = static_cast<int>(n.num_kraus());
  ComplexMatrix v = ComplexMatrix::Zero(dout * denv, n.dim_in());
  for (int e = 0; e < denv; ++e)
    for (int b = 0; b < dout; ++b) v.row(b * denv + e) = n.kraus()[e].row(b);
  return {std::move(v), dout, denv};
}

Channel complementary(const Channel& n) {
  const int denv = static_cast<int>(n.num_kraus());
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(n.dim_out());
  for (int b = 0; b < n.dim_out(); ++b) {
    ComplexMatrix f(denv, n.dim_in());
    for (int e = 0; e < denv; ++e) f.row(e) = n.kraus()[e].row(b);
    kraus.push_back(std::move(f));
  }
  return Channel(std::move(kraus));
}

int choi_rank(const Channel& n) {
  const RealVector ev = eig_hermitian(choi_of(n).matrix()).eigenvalues;
  const double threshold = kTolerances.rank_relative * ev.cwiseAbs().maxCoeff();
  return static_cast<int>((ev.array() > threshold).count());
}

HermitianPreservingMap hp_map_diff(const Channel& a, const Channel& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DimensionError("hp_map_diff: maps have different dimensions");
  }
  return HermitianPreservingMap(choi_of(a).matrix() - choi_of(b).matrix(), a.dim_in(), a.dim_out());
}

Channel unitary_channel(const ComplexMatrix& u) { return Channel({u}); }

Channel identity_channel(int d) { return Channel({ComplexMatrix::Identity(d, d)}); }

}  // namespace lownoise
