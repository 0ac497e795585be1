#include "lownoise/degradability.hpp"

#include <cmath>

#include "lownoise/errors.hpp"
#include "lownoise/sdp_builder.hpp"

namespace lownoise {
namespace {

constexpr double kVerifyTol = 1e-6;

// Nearest channel Choi operator: clip the spectrum, then congruence by
// (T^{-1/2} (x) I) with T = tr_E Y so the partial trace is exactly I.
ComplexMatrix project_to_channel_choi(const ComplexMatrix& y, int dim_b, int dim_e) {
  const ComplexMatrix clipped = hermitian_function(hermitian_part(y), [](double v) { return std::max(v, 0.0); });
  const ComplexMatrix t = partial_trace(clipped, {dim_b, dim_e}, Keep::first);
  const ComplexMatrix t_inv_sqrt = hermitian_function(t, [](double v) {
    if (!(v > 0.0)) throw NumericalError("degrading map has a singular input marginal");
    return 1.0 / std::sqrt(v);
  });
  const ComplexMatrix c = kron(t_inv_sqrt, ComplexMatrix::Identity(dim_e, dim_e));
  return hermitian_part(c * clipped * c);
}

PauliProbabilities depolarizing_weights(double p) { return {1.0 - p, p / 3.0, p / 3.0, p / 3.0}; }

DegradabilityReport covariant_report(const std::string& family, const PauliProbabilities& p,
                                     const PauliProbabilities& q, const std::array<double, 3>& a, double bound,
                                     Covariance covariance) {
  DegradabilityReport r;
  r.eta_constructed = covariant_diamond(pauli_phi(p, q), covariance);
  r.degrading_map = complementary(pauli(q));
  r.descriptor = TunedDescriptor{family, p, q, a};
  r.analytic_bound = bound;
  return r;
}

}  // namespace

DegradabilityReport dg_sdp(const Channel& n, const SdpOptions& options) {
  const int da = n.dim_in();
  const int db = n.dim_out();
  const Channel nc = complementary(n);
  const int de = nc.dim_out();
  const ComplexMatrix j_n = choi_of(n).matrix();
  const ComplexMatrix j_c = choi_of(nc).matrix();

  ProblemBuilder b;
  const ScalarVariable mu = b.add_scalar();
  const HermitianVariable z = b.add_hermitian(da * de);
  const HermitianVariable y = b.add_hermitian(db * de);
  const ComplexMatrix id_a = ComplexMatrix::Identity(da, da);
  const ComplexMatrix id_b = ComplexMatrix::Identity(db, db);
  b.minimize([=](const Assignment& v) { return 2.0 * v.scalar(mu); });
  b.add_psd([=](const Assignment& v) -> ComplexMatrix {
    return v.scalar(mu) * id_a - partial_trace(v.matrix(z), {da, de}, Keep::first);
  });
  b.add_psd([=](const Assignment& v) -> ComplexMatrix {
    return v.matrix(z) - j_c + compose_choi(v.matrix(y), j_n, da, db, de);
  });
  b.add_psd([=](const Assignment& v) { return v.matrix(z); });
  b.add_psd([=](const Assignment& v) { return v.matrix(y); });
  b.add_equality([=](const Assignment& v) -> ComplexMatrix {
    return partial_trace(v.matrix(y), {db, de}, Keep::first) - id_b;
  });

  SdpSolution sol = solve(b.build(), options);
  if (sol.status != SdpStatus::optimal) {
    throw NumericalError("degradability SDP ended with status " + to_string(sol.status) +
                         (sol.detail.empty() ? "" : " (" + sol.detail + ")"));
  }
  DegradabilityReport r;
  r.eta_sdp = std::max(0.0, sol.primal_objective);
  const ComplexMatrix y_star = project_to_channel_choi(extract(sol.x, y), db, de);
  r.certificates.push_back(std::move(sol));
  Channel m = channel_of_choi(ChoiMatrix(y_star, db, de));
  DiamondResult check = diamond_norm_diff(nc, compose(m, n), options);
  if (std::abs(check.value - *r.eta_sdp) > kVerifyTol) {
    throw NumericalError("extracted degrading map gives " + std::to_string(check.value) + " against SDP value " +
                         std::to_string(*r.eta_sdp));
  }
  r.eta_verified = check.value;
  if (check.certificate) r.certificates.push_back(std::move(*check.certificate));
  r.degrading_map = std::move(m);
  return r;
}

double complementary_degrading_eta(const Channel& n, const SdpOptions& options) {
  if (n.dim_in() != n.dim_out()) throw DimensionError("complementary_degrading_eta: channel is not endomorphic");
  const Channel nc = complementary(n);
  return diamond_norm_diff(nc, compose(nc, n), options).value;
}

std::array<double, 3> tuned_shifts(const PauliFamily& family) {
  const std::array<double, 3> c = family.linear_coefficients();
  std::array<double, 3> a{};
  for (int i = 0; i < 3; ++i) {
    a[i] = c[i] == 0.0 ? 0.0 : 4.0 * (c[(i + 1) % 3] + c[(i + 2) % 3]);
  }
  return a;
}

DegradabilityReport tuned_pauli_eta(const PauliFamily& family, double p, DiamondMethod method,
                                    const SdpOptions& options) {
  const std::array<double, 3> a = tuned_shifts(family);
  const PauliProbabilities pv = family.evaluate(p);
  const PauliProbabilities q = family.evaluate_shifted({p + a[0] * p * p, p + a[1] * p * p, p + a[2] * p * p});
  const std::array<double, 3> c = family.linear_coefficients();
  const double bound = 64.0 * std::abs(c[0] * c[1] + c[0] * c[2] + c[1] * c[2]) * p * p;
  DegradabilityReport r = covariant_report("pauli-poly", pv, q, a, bound, Covariance::pauli);
  if (method == DiamondMethod::sdp) {
    DiamondResult d = diamond_norm_trace_annihilating(pauli_phi(pv, q).choi(), 2, 4, options);
    r.eta_constructed = d.value;
    if (d.certificate) r.certificates.push_back(std::move(*d.certificate));
  } else if (method == DiamondMethod::max_norm_bound) {
    throw DomainError("tuned_pauli_eta: the max-norm bound applies to CP maps only");
  }
  return r;
}

DegradabilityReport depol_tuned_eta(double p) {
  const double s = p + 8.0 / 3.0 * p * p;
  if (!(p >= 0.0) || s > 0.75) throw DomainError("depol_tuned_eta: need p >= 0 and p + (8/3) p^2 <= 3/4");
  const double bound = 8.0 / 9.0 * (6.0 + std::sqrt(2.0)) * p * p;
  return covariant_report("depolarizing", depolarizing_weights(p), depolarizing_weights(s),
                          {8.0 / 3.0, 8.0 / 3.0, 8.0 / 3.0}, bound, Covariance::unitary);
}

DegradabilityReport xz_tuned_eta(double p) {
  const double s = p + 4.0 * p * p;
  if (!(p >= 0.0) || s > 1.0) throw DomainError("xz_tuned_eta: need p >= 0 and p + 4 p^2 <= 1");
  const double bound = 16.0 * p * p + 32.0 * std::pow(p, 2.5);
  return covariant_report("xz", xz_probabilities(p, p), xz_probabilities(s, s), {4.0, 4.0, 4.0}, bound,
                          Covariance::pauli);
}

double depol_c_function(double p, double a) {
  const double shifted = p + a * p * p;
  return std::sqrt(p * (1.0 - p) / 3.0) - (1.0 - 4.0 * p / 3.0) * std::sqrt(shifted * (1.0 - shifted) / 3.0);
}

std::array<ComplexMatrix, 4> depol_phi_blocks(double p) {
  const double c = 0.5 * depol_c_function(p);
  const double k = 2.0 / 27.0 * p * p * (8.0 * p - 3.0);
  const double d0 = 4.0 * p * p / 3.0;
  const double d1 = -4.0 * p * p / 9.0;
  const Complex i(0.0, 1.0);
  std::array<ComplexMatrix, 4> blocks;
  for (ComplexMatrix& m : blocks) m = ComplexMatrix::Zero(4, 4);
  ComplexMatrix& j00 = blocks[0];
  j00 << d0, 0, 0, c,
         0, d1, -i * k, 0,
         0, i * k, d1, 0,
         c, 0, 0, d1;
  ComplexMatrix& j01 = blocks[1];
  j01 << 0, c, i * c, 0,
         c, 0, 0, -k,
         i * c, 0, 0, -i * k,
         0, k, i * k, 0;
  ComplexMatrix& j10 = blocks[2];
  j10 << 0, c, -i * c, 0,
         c, 0, 0, k,
         -i * c, 0, 0, -i * k,
         0, -k, i * k, 0;
  ComplexMatrix& j11 = blocks[3];
  j11 << d0, 0, 0, -c,
         0, d1, i * k, 0,
         0, -i * k, d1, 0,
         -c, 0, 0, d1;
  return blocks;
}

std::array<ComplexMatrix, 4> depol_phi_blocks_numeric(double p) {
  const double s = p + 8.0 / 3.0 * p * p;
  const ComplexMatrix half = 0.5 * pauli_phi(depolarizing_weights(p), depolarizing_weights(s)).choi();
  return {half.block(0, 0, 4, 4), half.block(0, 4, 4, 4), half.block(4, 0, 4, 4), half.block(4, 4, 4, 4)};
}

PhiCoefficients phi_coefficients(const PauliProbabilities& p, const PauliProbabilities& q) {
  validate_distribution(p);
  validate_distribution(q);
  const double s1 = p[0] + p[1] - p[2] - p[3];
  const double s2 = p[0] - p[1] + p[2] - p[3];
  const double s3 = p[0] - p[1] - p[2] + p[3];
  PhiCoefficients out;
  out.t = {std::sqrt(p[0] * p[1]) - std::sqrt(q[0] * q[1]) * s1, std::sqrt(p[0] * p[2]) - std::sqrt(q[0] * q[2]) * s2,
           std::sqrt(p[0] * p[3]) - std::sqrt(q[0] * q[3]) * s3};
  out.u = {std::sqrt(p[2] * p[3]) - std::sqrt(q[2] * q[3]) * s1, std::sqrt(p[1] * p[3]) - std::sqrt(q[1] * q[3]) * s2,
           std::sqrt(p[1] * p[2]) - std::sqrt(q[1] * q[2]) * s3};
  for (int i = 0; i < 4; ++i) out.diag[i] = p[i] - q[i];
  return out;
}

ComplexMatrix phi_action(const PhiCoefficients& k, const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("phi_action: rho must be 2x2");
  const Complex tr = rho.trace();
  const Complex x = (pauli_x() * rho).trace();
  const Complex y = (pauli_y() * rho).trace();
  const Complex z = (pauli_z() * rho).trace();
  const Complex i(0.0, 1.0);
  ComplexMatrix m(4, 4);
  m << k.diag[0] * tr, k.t[0] * x, k.t[1] * y, k.t[2] * z,
       k.t[0] * x, k.diag[1] * tr, -i * k.u[2] * z, i * k.u[1] * y,
       k.t[1] * y, i * k.u[2] * z, k.diag[2] * tr, -i * k.u[0] * x,
       k.t[2] * z, -i * k.u[1] * y, i * k.u[0] * x, k.diag[3] * tr;
  return m;
}

HermitianPreservingMap pauli_phi(const PauliProbabilities& p, const PauliProbabilities& q) {
  const Channel np = pauli(p);
  return hp_map_diff(complementary(np), compose(complementary(pauli(q)), np));
}

GeneralizedDegrading generalized_low_noise_degrading(const Channel& n, const Channel& m, const SdpOptions& options) {
  if (n.dim_out() != m.dim_in() || m.dim_out() != n.dim_in()) {
    throw DimensionError("generalized_low_noise_degrading: m o n must map the input space to itself");
  }
  const int da = n.dim_in();
  const int kn = static_cast<int>(n.num_kraus());
  const Channel mn = compose(m, n);
  // Kraus index of m o n is j * kn + i (j from m, i from n); the (m o n)^c
  // output splits as E2 (x) E1. Tracing E2 leaves Kraus operators G_{b,j}
  // with G_{b,j}(i, a) = (M_j K_i)(b, a).
  std::vector<ComplexMatrix> traced;
  for (int b = 0; b < da; ++b)
    for (std::size_t j = 0; j < m.num_kraus(); ++j) {
      ComplexMatrix g(kn, da);
      for (int i = 0; i < kn; ++i) g.row(i) = mn.kraus()[j * kn + i].row(b);
      traced.push_back(std::move(g));
    }
  Channel d = compose(Channel(std::move(traced)), m);
  GeneralizedDegrading out{d, 0.0, 0.0};
  out.epsilon = diamond_norm_diff(mn, identity_channel(da), options).value;
  out.eta = diamond_norm_diff(complementary(n), compose(d, n), options).value;
  if (out.eta > 2.0 * std::pow(out.epsilon, 1.5) + kVerifyTol) {
    throw NumericalError("generalized_low_noise_degrading: eta exceeds 2 eps^{3/2}");
  }
  return out;
}

}  // namespace lownoise
