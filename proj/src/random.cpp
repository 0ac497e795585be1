#include "lownoise/random.hpp"

#include <cmath>

namespace lownoise {

double RandomSource::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

double RandomSource::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

ComplexMatrix RandomSource::ginibre(int rows, int cols) {
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(normal(), normal()) / std::sqrt(2.0);
  return g;
}

ComplexMatrix RandomSource::unitary(int d) {
  const ComplexMatrix g = ginibre(d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < d; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

ComplexMatrix RandomSource::density(int d, int rank) {
  const ComplexMatrix g = ginibre(d, rank < 1 ? d : rank);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

ComplexMatrix RandomSource::hermitian(int d) { return hermitian_part(ginibre(d, d)); }

Channel RandomSource::channel(int dim_in, int dim_out, int num_kraus) {
  const int big = dim_out * num_kraus;
  const ComplexMatrix v = unitary(big).leftCols(dim_in);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(num_kraus);
  for (int k = 0; k < num_kraus; ++k) kraus.push_back(v.middleRows(k * dim_out, dim_out));
  return Channel(std::move(kraus));
}

}  // namespace lownoise
