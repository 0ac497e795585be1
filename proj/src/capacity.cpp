#include "lownoise/capacity.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "lownoise/degradability.hpp"
#include "lownoise/errors.hpp"
#include "lownoise/random.hpp"

namespace lownoise {
namespace {

double log2_safe(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

// Entropy of a near-PSD operator: negative eigenvalues count as zero.
double clamped_entropy(const ComplexMatrix& rho) {
  const RealVector ev = eig_hermitian(hermitian_part(rho)).eigenvalues;
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > kTolerances.eigen_zero) s -= ev(i) * std::log2(ev(i));
  }
  return s;
}

class CoherentInfoObjective {
 public:
  explicit CoherentInfoObjective(const Channel& n) : n_(n), nc_(complementary(n)) {}

  double operator()(const ComplexMatrix& rho) const {
    return clamped_entropy(lownoise::apply(n_, rho)) - clamped_entropy(lownoise::apply(nc_, rho));
  }

 private:
  const Channel& n_;
  Channel nc_;
};

// Orthonormal basis of the Hermitian d x d matrices.
std::vector<ComplexMatrix> hermitian_basis(int d) {
  std::vector<ComplexMatrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) basis.push_back(matrix_unit(d, i, i));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      basis.push_back(r * (matrix_unit(d, i, j) + matrix_unit(d, j, i)));
      basis.push_back(Complex(0.0, r) * (matrix_unit(d, i, j) - matrix_unit(d, j, i)));
    }
  return basis;
}

struct AscentResult {
  double value;
  ComplexMatrix rho;
};

AscentResult ascend(const CoherentInfoObjective& f, ComplexMatrix rho, const std::vector<ComplexMatrix>& basis,
                    const CoherentInfoOptions& opt) {
  const int d = static_cast<int>(rho.rows());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  double value = f(rho);
  double step = 1.0;
  for (int it = 0; it < opt.max_steps; ++it) {
    ComplexMatrix grad = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& e : basis) {
      const double slope = (f(rho + opt.fd_step * e) - f(rho - opt.fd_step * e)) / (2.0 * opt.fd_step);
      grad += slope * e;
    }
    grad -= (grad.trace() / static_cast<double>(d)) * id;
    if (max_norm(grad) == 0.0) break;
    bool moved = false;
    double gain = 0.0;
    for (int tries = 0; tries < 40; ++tries, step *= 0.5) {
      const ComplexMatrix candidate = project_to_density(rho + step * grad);
      const double v = f(candidate);
      if (v > value) {
        gain = v - value;
        rho = candidate;
        value = v;
        moved = true;
        break;
      }
    }
    if (!moved || gain < opt.improvement_tol) break;
    step = std::min(2.0 * step, 4.0);
  }
  return {value, rho};
}

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("binary_entropy: argument outside [0, 1]");
  if (x <= 1e-15 || x >= 1.0 - 1e-15) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

namespace {
void check_continuity_args(double eta, int env_dim) {
  if (!(eta >= 0.0 && eta <= 2.0)) throw DomainError("continuity bound: eta outside [0, 2]");
  if (env_dim < 1) throw DomainError("continuity bound: environment dimension must be positive");
}
}  // namespace

double f1(double eta, int env_dim) {
  check_continuity_args(eta, env_dim);
  return 0.5 * eta * log2_safe(env_dim - 1.0) + eta * std::log2(env_dim) + binary_entropy(eta / 2.0) +
         (1.0 + eta / 2.0) * binary_entropy(eta / (2.0 + eta));
}

double f2(double eta, int env_dim) {
  check_continuity_args(eta, env_dim);
  return eta * log2_safe(env_dim - 1.0) + 4.0 * eta * std::log2(env_dim) + 2.0 * binary_entropy(eta / 2.0) +
         4.0 * (1.0 + eta / 2.0) * binary_entropy(eta / (2.0 + eta));
}

double coherent_information_state(const ComplexMatrix& rho, const Channel& n) {
  if (rho.rows() != n.dim_in() || rho.cols() != n.dim_in()) {
    throw DimensionError("coherent_information_state: state dimension does not match the channel input");
  }
  if (!is_hermitian(rho)) throw DomainError("coherent_information_state: state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > kTolerances.trace) {
    throw DomainError("coherent_information_state: state does not have unit trace");
  }
  if (eig_hermitian(rho).eigenvalues(0) < kTolerances.psd_floor) {
    throw DomainError("coherent_information_state: state is not PSD");
  }
  return von_neumann_entropy(hermitian_part(lownoise::apply(n, rho))) -
         von_neumann_entropy(hermitian_part(lownoise::apply(complementary(n), rho)));
}

CoherentInfoResult coherent_information(const Channel& n, const CoherentInfoOptions& options) {
  const int d = n.dim_in();
  const CoherentInfoObjective f(n);
  const std::vector<ComplexMatrix> basis = hermitian_basis(d);
  const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);

  CoherentInfoResult best{f(mixed), mixed};
  auto consider = [&](const AscentResult& r) {
    if (r.value > best.value) {
      best.value = r.value;
      best.maximizer = r.rho;
    }
  };

  if (d == 2 && options.bloch_grid > 0) {
    const int shells = 10;
    const int directions = std::max(1, options.bloch_grid / shells);
    ComplexMatrix grid_best = mixed;
    double grid_value = best.value;
    for (int s = 1; s <= shells; ++s) {
      const double radius = static_cast<double>(s) / shells;
      for (int k = 0; k < directions; ++k) {
        const double zc = 1.0 - 2.0 * (k + 0.5) / directions;
        const double rho_xy = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        const double phi = std::numbers::pi * (3.0 - std::sqrt(5.0)) * k;
        const ComplexMatrix rho = 0.5 * (pauli_i() + radius * (rho_xy * std::cos(phi) * pauli_x() +
                                                               rho_xy * std::sin(phi) * pauli_y() + zc * pauli_z()));
        const double v = f(rho);
        if (v > grid_value) {
          grid_value = v;
          grid_best = rho;
        }
      }
    }
    consider({grid_value, grid_best});
    consider(ascend(f, grid_best, basis, options));
  }

  consider(ascend(f, mixed, basis, options));
  RandomSource rng(options.seed);
  for (int r = 0; r < options.restarts; ++r) consider(ascend(f, rng.density(d), basis, options));
  best.maximizer = hermitian_part(best.maximizer);
  return best;
}

CapacityReport capacity_interval(const Channel& n, const std::string& channel_id, std::optional<double> constructed_eta,
                                 const SdpOptions& sdp_options, const CoherentInfoOptions& ic_options) {
  CapacityReport r;
  r.channel_id = channel_id;
  const CoherentInfoResult ic = coherent_information(n, ic_options);
  r.ic = ic.value;
  r.maximizer = ic.maximizer;
  r.choi_rank = choi_rank(n);
  r.rank_threshold = kTolerances.rank_relative;
  if (constructed_eta) {
    r.eta = *constructed_eta;
    r.eta_source = "constructed";
  } else {
    r.eta = *dg_sdp(n, sdp_options).eta_sdp;
    r.eta_source = "sdp";
  }
  const double eta = std::min(r.eta, 2.0);
  const double q_gap = eta < kEtaFloor ? 0.0 : f1(eta, r.choi_rank);
  const double p_gap = eta < kEtaFloor ? 0.0 : f2(eta, r.choi_rank);
  r.q_interval = {r.ic, r.ic + q_gap};
  r.p_interval = {r.ic, r.ic + p_gap};
  return r;
}

std::string CapacityReport::to_text() const {
  std::ostringstream out;
  out << std::setprecision(12);
  out << "channel     " << channel_id << '\n';
  out << "I_c         " << ic << '\n';
  out << "maximizer   eigenvalues";
  const RealVector ev = eig_hermitian(maximizer).eigenvalues;
  for (Eigen::Index i = ev.size() - 1; i >= 0; --i) out << ' ' << ev(i);
  out << '\n';
  out << "eta         " << eta << " (" << eta_source << ")\n";
  out << "|E|         " << choi_rank << " (Choi rank, threshold " << rank_threshold << " relative)\n";
  out << "Q interval  [" << q_interval.lower << ", " << q_interval.upper << "]\n";
  out << "P interval  [" << p_interval.lower << ", " << p_interval.upper << "]\n";
  out << "note        I_c is the best value found by a local optimizer; the upper edges are\n"
         "            rigorous only if it equals the true maximum of the coherent information.\n";
  return out.str();
}

std::string CapacityReport::row_header() { return "channel ic eta eta_source E q_lower q_upper p_lower p_upper"; }

std::string CapacityReport::to_row() const {
  std::ostringstream out;
  out << std::setprecision(12) << channel_id << ' ' << ic << ' ' << eta << ' ' << eta_source << ' ' << choi_rank
      << ' ' << q_interval.lower << ' ' << q_interval.upper << ' ' << p_interval.lower << ' ' << p_interval.upper;
  return out.str();
}

double leading_order_gap(double c, double r, double p, int env_dim, CapacityKind which) {
  if (!(r > 1.0) || !(c > 0.0) || !(p > 0.0 && p < 1.0) || env_dim < 1) {
    throw DomainError("leading_order_gap: need r > 1, c > 0, p in (0, 1), |E| >= 1");
  }
  const double inv_ln2 = 1.0 / std::numbers::ln2;
  const double log_term = c * r * std::pow(p, r - 1.0) * (-p * std::log2(p));
  const double log_e = std::log2(env_dim);
  const double log_e1 = log2_safe(env_dim - 1.0);
  if (which == CapacityKind::quantum) {
    return log_term + c * std::pow(p, r) * (-std::log2(c) + 1.0 + inv_ln2 + log_e + 0.5 * log_e1);
  }
  return 3.0 * log_term + c * std::pow(p, r) * (-3.0 * std::log2(c) + 3.0 + 3.0 * inv_ln2 + log_e1 + 4.0 * log_e);
}

std::vector<CurvePoint> bound_curves(double c, double r, const std::vector<double>& grid) {
  if (!(r >= 1.0) || !(c > 0.0)) throw DomainError("bound_curves: need r >= 1 and c > 0");
  std::vector<CurvePoint> rows;
  rows.reserve(grid.size());
  for (double p : grid) {
    if (!(p >= 0.0)) throw DomainError("bound_curves: negative grid point");
    CurvePoint pt{p, 0.0, 0.0};
    const double eta = c * std::pow(p, r);
    if (eta > 0.0) {
      pt.g = -eta * std::log2(eta);
      pt.derivative = (-std::log2(eta) - 1.0 / std::numbers::ln2) * c * r * std::pow(p, r - 1.0);
    } else {
      pt.derivative = r > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    rows.push_back(pt);
  }
  return rows;
}

}  // namespace lownoise
