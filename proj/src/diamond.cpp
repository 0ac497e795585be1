#include "lownoise/diamond.hpp"

#include <algorithm>
#include <cmath>

#include "lownoise/errors.hpp"
#include "lownoise/random.hpp"
#include "lownoise/sdp_builder.hpp"

namespace lownoise {
namespace {

DiamondResult finish(SdpSolution sol, double scale) {
  if (sol.status != SdpStatus::optimal) {
    throw NumericalError("diamond norm SDP ended with status " + to_string(sol.status) +
                         (sol.detail.empty() ? "" : " (" + sol.detail + ")"));
  }
  sol.primal_objective *= scale;
  sol.dual_objective *= scale;
  sol.gap *= scale;
  DiamondResult r;
  r.value = std::max(0.0, sol.primal_objective);
  r.method = DiamondMethod::sdp;
  r.certificate = std::move(sol);
  return r;
}

void check_choi_shape(const ComplexMatrix& choi, int dim_in, int dim_out) {
  if (dim_in < 1 || dim_out < 1 || choi.rows() != Eigen::Index{dim_in} * dim_out || choi.cols() != choi.rows()) {
    throw DimensionError("diamond norm: Choi side does not equal dim_in * dim_out");
  }
}

// Programs are solved for J / ||J||_max and rescaled afterwards.
double normalization(const ComplexMatrix& choi) {
  const double m = max_norm(choi);
  return m > 0.0 ? m : 1.0;
}

// Keeps the rescaled certificate's gap within the requested tolerance.
SdpOptions scaled_options(SdpOptions options, double scale) {
  if (scale > 1.0) options.gap_tol /= scale;
  return options;
}

}  // namespace

std::string to_string(DiamondMethod method) {
  switch (method) {
    case DiamondMethod::sdp:
      return "sdp";
    case DiamondMethod::covariant_closed_form:
      return "covariant_closed_form";
    case DiamondMethod::max_norm_bound:
      return "max_norm_bound";
  }
  return "unknown";
}

DiamondResult diamond_norm_trace_annihilating(const ComplexMatrix& choi, int dim_in, int dim_out,
                                              const SdpOptions& options) {
  check_choi_shape(choi, dim_in, dim_out);
  if (max_norm(choi) == 0.0) return {0.0, DiamondMethod::sdp, std::nullopt};
  const double scale = normalization(choi);
  const ComplexMatrix j = choi / scale;
  ProblemBuilder b;
  const ScalarVariable mu = b.add_scalar();
  const HermitianVariable z = b.add_hermitian(dim_in * dim_out);
  const ComplexMatrix id = ComplexMatrix::Identity(dim_in, dim_in);
  b.minimize([=](const Assignment& a) { return 2.0 * a.scalar(mu); });
  b.add_psd([=](const Assignment& a) -> ComplexMatrix {
    return a.scalar(mu) * id - partial_trace(a.matrix(z), {dim_in, dim_out}, Keep::first);
  });
  b.add_psd([=](const Assignment& a) -> ComplexMatrix { return a.matrix(z) - j; });
  b.add_psd([=](const Assignment& a) { return a.matrix(z); });
  return finish(solve(b.build(), scaled_options(options, scale)), scale);
}

DiamondResult diamond_norm_diff(const Channel& n1, const Channel& n2, const SdpOptions& options) {
  if (n1.dim_in() != n2.dim_in() || n1.dim_out() != n2.dim_out()) {
    throw DimensionError("diamond_norm_diff: channels have different dimensions");
  }
  return diamond_norm_trace_annihilating(choi_of(n1).matrix() - choi_of(n2).matrix(), n1.dim_in(), n1.dim_out(),
                                         options);
}

DiamondResult diamond_norm_hp(const HermitianPreservingMap& phi, const SdpOptions& options) {
  const int din = phi.dim_in();
  const int dout = phi.dim_out();
  if (max_norm(phi.choi()) == 0.0) return {0.0, DiamondMethod::sdp, std::nullopt};
  const double scale = normalization(phi.choi());
  const ComplexMatrix j = hermitian_part(phi.choi()) / scale;
  const ComplexMatrix reduced = partial_trace(j, {din, dout}, Keep::first);
  ProblemBuilder b;
  const ScalarVariable mu = b.add_scalar();
  const HermitianVariable z = b.add_hermitian(din * dout);
  const ComplexMatrix id = ComplexMatrix::Identity(din, din);
  b.minimize([=](const Assignment& a) { return a.scalar(mu); });
  b.add_psd([=](const Assignment& a) -> ComplexMatrix {
    return a.scalar(mu) * id - 2.0 * partial_trace(a.matrix(z), {din, dout}, Keep::first) + reduced;
  });
  b.add_psd([=](const Assignment& a) -> ComplexMatrix { return a.matrix(z) - j; });
  b.add_psd([=](const Assignment& a) { return a.matrix(z); });
  return finish(solve(b.build(), scaled_options(options, scale)), scale);
}

double max_norm_bound(const ChoiMatrix& theta) {
  const double d_in = theta.dim_in();
  const double d_out = theta.dim_out();
  return d_in * d_out * d_out * max_norm(theta.matrix());
}

double covariant_diamond(const HermitianPreservingMap& phi, Covariance) { return 0.5 * trace_norm(phi.choi()); }

StinespringBounds stinespring_distance_bounds(const Channel& n1, const Channel& n2, int restarts, std::uint64_t seed) {
  if (n1.dim_in() != n2.dim_in() || n1.dim_out() != n2.dim_out()) {
    throw DimensionError("stinespring_distance_bounds: channels have different dimensions");
  }
  const int din = n1.dim_in();
  const int dout = n1.dim_out();
  const int k = static_cast<int>(std::max(n1.num_kraus(), n2.num_kraus()));
  auto padded = [&](const Channel& n) {
    std::vector<ComplexMatrix> kraus = n.kraus();
    kraus.resize(k, ComplexMatrix::Zero(dout, din));
    return kraus;
  };
  const std::vector<ComplexMatrix> k1 = padded(n1);
  const std::vector<ComplexMatrix> k2 = padded(n2);

  // (I (x) W) V2 has Kraus operators sum_e W(e', e) K2_e.
  auto distance = [&](const ComplexMatrix& w, ComplexVector* worst) {
    ComplexMatrix diff(dout * k, din);
    for (int ep = 0; ep < k; ++ep) {
      ComplexMatrix rotated = ComplexMatrix::Zero(dout, din);
      for (int e = 0; e < k; ++e) rotated += w(ep, e) * k2[e];
      diff.middleRows(ep * dout, dout) = k1[ep] - rotated;
    }
    const HermitianEigenResult eig = eig_hermitian(hermitian_part(diff.adjoint() * diff));
    if (worst) *worst = eig.eigenvectors.col(din - 1);
    return std::sqrt(std::max(0.0, eig.eigenvalues(din - 1)));
  };
  // argmax over unitary W of Re tr(rho V1^dagger (I (x) W) V2).
  auto procrustes = [&](const ComplexMatrix& rho) {
    ComplexMatrix m(k, k);
    for (int e = 0; e < k; ++e)
      for (int ep = 0; ep < k; ++ep) m(e, ep) = (rho * k1[ep].adjoint() * k2[e]).trace();
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return ComplexMatrix(svd.matrixV() * svd.matrixU().adjoint());
  };

  RandomSource rng(seed);
  double best = distance(ComplexMatrix::Identity(k, k), nullptr);
  for (int restart = 0; restart < restarts; ++restart) {
    ComplexMatrix rho = restart == 0 ? ComplexMatrix(ComplexMatrix::Identity(din, din) / din) : rng.density(din);
    ComplexMatrix w = procrustes(rho);
    for (int it = 0; it < 40; ++it) {
      ComplexVector psi;
      const double d = distance(w, &psi);
      best = std::min(best, d);
      if (d < 1e-14) break;
      rho = 0.75 * rho + 0.25 * psi * psi.adjoint();
      w = procrustes(rho);
    }
    best = std::min(best, distance(w, nullptr));
  }
  return {best, best * best, 2.0 * best};
}

}  // namespace lownoise
