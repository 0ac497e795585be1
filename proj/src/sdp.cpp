#include "lownoise/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "lownoise/errors.hpp"

namespace lownoise {
namespace {

constexpr double kStepFraction = 0.98;
const double kSqrt2 = std::sqrt(2.0);

int svec_size(int side) { return side * (side + 1) / 2; }

struct BlockScaling {
  RealMatrix r;
  RealMatrix rti;
  RealVector lambda;
};

// Cone-form data: G x + s = h, A x = b, s in a product of PSD cones.
class ConeProgram {
 public:
  explicit ConeProgram(const SdpProblem& p) : c(p.objective), a(p.eq_matrix), b(p.eq_rhs) {
    int offset = 0;
    for (const LmiBlock& blk : p.blocks) {
      sides.push_back(blk.side);
      offsets.push_back(offset);
      offset += svec_size(blk.side);
    }
    dim = offset;
    g = RealMatrix::Zero(dim, p.num_variables);
    h = RealVector::Zero(dim);
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
      const LmiBlock& blk = p.blocks[k];
      const int m = svec_size(blk.side);
      h.segment(offsets[k], m) = svec(blk.constant);
      for (std::size_t i = 0; i < blk.coefficients.size(); ++i) {
        g.col(static_cast<Eigen::Index>(i)).segment(offsets[k], m) = -svec(blk.coefficients[i]);
      }
    }
    degree = 0;
    for (int s : sides) degree += s;
  }

  std::size_t num_blocks() const { return sides.size(); }

  RealMatrix block(const RealVector& v, std::size_t k) const {
    return smat(v.segment(offsets[k], svec_size(sides[k])), sides[k]);
  }
  void set_block(RealVector& v, std::size_t k, const RealMatrix& m) const {
    v.segment(offsets[k], svec_size(sides[k])) = svec(m);
  }

  RealVector identity() const {
    RealVector e(dim);
    for (std::size_t k = 0; k < num_blocks(); ++k) set_block(e, k, RealMatrix::Identity(sides[k], sides[k]));
    return e;
  }

  // Smallest eigenvalue over all blocks.
  double min_eigenvalue(const RealVector& v) const {
    double out = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < num_blocks(); ++k) {
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(block(v, k), Eigen::EigenvaluesOnly);
      out = std::min(out, es.eigenvalues()(0));
    }
    return out;
  }

  RealVector c;
  RealMatrix a;
  RealVector b;
  RealMatrix g;
  RealVector h;
  std::vector<int> sides;
  std::vector<int> offsets;
  int dim = 0;
  int degree = 0;
};

class Scaling {
 public:
  Scaling(const ConeProgram& cp, std::vector<BlockScaling> blocks) : cp_(cp), blocks_(std::move(blocks)) {}

  static Scaling identity(const ConeProgram& cp) {
    std::vector<BlockScaling> blocks;
    for (int side : cp.sides) {
      blocks.push_back({RealMatrix::Identity(side, side), RealMatrix::Identity(side, side), RealVector::Ones(side)});
    }
    return Scaling(cp, std::move(blocks));
  }

  // Nesterov-Todd scaling point of (s, z); nullopt if either is not PD.
  static std::optional<Scaling> nesterov_todd(const ConeProgram& cp, const RealVector& s, const RealVector& z) {
    std::vector<BlockScaling> blocks;
    for (std::size_t k = 0; k < cp.num_blocks(); ++k) {
      Eigen::LLT<RealMatrix> ls(cp.block(s, k));
      Eigen::LLT<RealMatrix> lz(cp.block(z, k));
      if (ls.info() != Eigen::Success || lz.info() != Eigen::Success) return std::nullopt;
      const RealMatrix l_s = ls.matrixL();
      const RealMatrix l_z = lz.matrixL();
      Eigen::JacobiSVD<RealMatrix> svd(l_z.transpose() * l_s, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const RealVector lambda = svd.singularValues();
      if (lambda.minCoeff() <= 0.0 || !lambda.allFinite()) return std::nullopt;
      const RealVector inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
      blocks.push_back({l_s * svd.matrixV() * inv_sqrt.asDiagonal(), l_z * svd.matrixU() * inv_sqrt.asDiagonal(),
                        lambda});
    }
    return Scaling(cp, std::move(blocks));
  }

  // W u = r^T U r
  RealVector w(const RealVector& u) const {
    return map(u, [](const BlockScaling& b, const RealMatrix& m) -> RealMatrix { return b.r.transpose() * m * b.r; });
  }
  // W^T u = r U r^T
  RealVector wt(const RealVector& u) const {
    return map(u, [](const BlockScaling& b, const RealMatrix& m) -> RealMatrix { return b.r * m * b.r.transpose(); });
  }
  // W^{-1} u = r^{-T} U r^{-1}
  RealVector winv(const RealVector& u) const {
    return map(u, [](const BlockScaling& b, const RealMatrix& m) -> RealMatrix { return b.rti * m * b.rti.transpose(); });
  }
  // W^{-T} u = r^{-1} U r^{-T}
  RealVector winvt(const RealVector& u) const {
    return map(u, [](const BlockScaling& b, const RealMatrix& m) -> RealMatrix { return b.rti.transpose() * m * b.rti; });
  }
  RealVector hess(const RealVector& u) const { return wt(w(u)); }

  // lambda o lambda
  RealVector lambda_sq() const {
    RealVector out = RealVector::Zero(cp_.dim);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      cp_.set_block(out, k, blocks_[k].lambda.cwiseAbs2().asDiagonal().toDenseMatrix());
    }
    return out;
  }

  // Solves lambda o u = xi.
  RealVector lambda_div(const RealVector& xi) const {
    RealVector out(cp_.dim);
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      RealMatrix m = cp_.block(xi, k);
      const RealVector& l = blocks_[k].lambda;
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) *= 2.0 / (l(i) + l(j));
      cp_.set_block(out, k, m);
    }
    return out;
  }

  // Largest alpha with lambda + alpha * d >= 0 for d in scaled coordinates.
  double max_step(const RealVector& d) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
      const RealVector isq = blocks_[k].lambda.cwiseSqrt().cwiseInverse();
      const RealMatrix m = isq.asDiagonal() * cp_.block(d, k) * isq.asDiagonal();
      Eigen::SelfAdjointEigenSolver<RealMatrix> es(m, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues()(0);
      if (lo < 0.0) alpha = std::min(alpha, -1.0 / lo);
    }
    return alpha;
  }

 private:
  template <typename F>
  RealVector map(const RealVector& u, F&& f) const {
    RealVector out(cp_.dim);
    for (std::size_t k = 0; k < blocks_.size(); ++k) cp_.set_block(out, k, f(blocks_[k], cp_.block(u, k)));
    return out;
  }

  const ConeProgram& cp_;
  std::vector<BlockScaling> blocks_;
};

RealVector sprod(const ConeProgram& cp, const RealVector& u, const RealVector& v) {
  RealVector out(cp.dim);
  for (std::size_t k = 0; k < cp.num_blocks(); ++k) {
    const RealMatrix a = cp.block(u, k);
    const RealMatrix b = cp.block(v, k);
    cp.set_block(out, k, 0.5 * (a * b + b * a));
  }
  return out;
}

struct KktSolution {
  RealVector x;
  RealVector y;
  RealVector z;
};

// Solves  A^T uy + G^T uz = bx,  A ux = by,  G ux - H uz = bz  with H = W^T W.
class KktSolver {
 public:
  KktSolver(const ConeProgram& cp, const Scaling& scaling) : cp_(cp), scaling_(scaling) {
    const Eigen::Index n = cp.g.cols();
    const Eigen::Index me = cp.a.rows();
    RealMatrix stacked(cp.dim + me, n);
    for (Eigen::Index i = 0; i < n; ++i) stacked.col(i).head(cp.dim) = scaling.winvt(cp.g.col(i));
    if (me > 0) stacked.bottomRows(me) = cp.a;
    m_ = stacked.topRows(cp.dim);
    Eigen::HouseholderQR<RealMatrix> qr(stacked);
    r_ = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
    const RealVector diag = r_.diagonal().cwiseAbs();
    if (n > 0 && (!(diag.minCoeff() > 1e-14 * diag.maxCoeff()) || !diag.allFinite())) return;
    if (me > 0) {
      const RealMatrix bmat = r_.transpose().triangularView<Eigen::Lower>().solve(cp.a.transpose());
      schur_.compute(bmat.transpose() * bmat);
      if (schur_.info() != Eigen::Success) return;
    }
    ok_ = true;
  }

  bool ok() const { return ok_; }

  KktSolution solve(const RealVector& bx, const RealVector& by, const RealVector& bz) const {
    KktSolution u = solve_once(bx, by, bz);
    const RealVector ex = bx - cp_.a.transpose() * u.y - cp_.g.transpose() * u.z;
    const RealVector ey = by - cp_.a * u.x;
    const RealVector ez = bz - cp_.g * u.x + scaling_.hess(u.z);
    const KktSolution du = solve_once(ex, ey, ez);
    u.x += du.x;
    u.y += du.y;
    u.z += du.z;
    return u;
  }

 private:
  RealVector p_solve(const RealVector& w) const {
    const RealVector t = r_.transpose().triangularView<Eigen::Lower>().solve(w);
    return r_.triangularView<Eigen::Upper>().solve(t);
  }

  KktSolution solve_once(const RealVector& bx, const RealVector& by, const RealVector& bz) const {
    RealVector w = bx + m_.transpose() * scaling_.winvt(bz);
    if (cp_.a.rows() > 0) w += cp_.a.transpose() * by;
    const RealVector pw = p_solve(w);
    KktSolution u;
    if (cp_.a.rows() > 0) {
      u.y = schur_.solve(cp_.a * pw - by);
      u.x = p_solve(w - cp_.a.transpose() * u.y);
    } else {
      u.y = RealVector::Zero(0);
      u.x = pw;
    }
    u.z = scaling_.winv(scaling_.winvt(cp_.g * u.x - bz));
    return u;
  }

  const ConeProgram& cp_;
  const Scaling& scaling_;
  RealMatrix m_;
  RealMatrix r_;
  Eigen::LLT<RealMatrix> schur_;
  bool ok_ = false;
};

double safe_dot(const RealVector& a, const RealVector& b) { return a.size() == 0 ? 0.0 : a.dot(b); }

}  // namespace

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal:
      return "optimal";
    case SdpStatus::infeasible:
      return "infeasible";
    case SdpStatus::max_iterations:
      return "max_iterations";
    case SdpStatus::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

RealVector svec(const RealMatrix& m) {
  const Eigen::Index n = m.rows();
  RealVector v(n * (n + 1) / 2);
  Eigen::Index idx = 0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = j; i < n; ++i) v(idx++) = i == j ? m(i, j) : kSqrt2 * 0.5 * (m(i, j) + m(j, i));
  return v;
}

RealMatrix smat(const RealVector& v, int side) {
  if (v.size() != svec_size(side)) throw DimensionError("smat: vector length does not match side");
  RealMatrix m(side, side);
  Eigen::Index idx = 0;
  for (int j = 0; j < side; ++j)
    for (int i = j; i < side; ++i) {
      const double value = v(idx++);
      if (i == j) {
        m(i, i) = value;
      } else {
        m(i, j) = value / kSqrt2;
        m(j, i) = value / kSqrt2;
      }
    }
  return m;
}

RealMatrix hermitian_to_real(const ComplexMatrix& h) {
  if (!is_hermitian(h)) throw DomainError("hermitian_to_real: block is not Hermitian");
  const Eigen::Index n = h.rows();
  RealMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = h.real();
  out.topRightCorner(n, n) = -h.imag();
  out.bottomLeftCorner(n, n) = h.imag();
  out.bottomRightCorner(n, n) = h.real();
  return 0.5 * (out + out.transpose());
}

void SdpProblem::validate() const {
  if (num_variables < 1) throw DimensionError("SdpProblem: no variables");
  if (objective.size() != num_variables) throw DimensionError("SdpProblem: objective length mismatch");
  if (eq_matrix.rows() != eq_rhs.size() || (eq_matrix.rows() > 0 && eq_matrix.cols() != num_variables)) {
    throw DimensionError("SdpProblem: equality constraint shape mismatch");
  }
  if (blocks.empty()) throw DimensionError("SdpProblem: no conic blocks");
  for (const LmiBlock& blk : blocks) {
    if (blk.side < 1 || blk.constant.rows() != blk.side || blk.constant.cols() != blk.side) {
      throw DimensionError("SdpProblem: block constant has the wrong shape");
    }
    if (!blk.coefficients.empty() && static_cast<int>(blk.coefficients.size()) != num_variables) {
      throw DimensionError("SdpProblem: block coefficient count mismatch");
    }
    auto symmetric = [&](const RealMatrix& m) {
      return m.rows() == blk.side && m.cols() == blk.side &&
             (m - m.transpose()).cwiseAbs().maxCoeff() <= kTolerances.hermiticity * std::max(1.0, m.cwiseAbs().maxCoeff());
    };
    if (!symmetric(blk.constant)) throw DimensionError("SdpProblem: block constant is not symmetric");
    for (const RealMatrix& f : blk.coefficients) {
      if (!symmetric(f)) throw DimensionError("SdpProblem: block coefficient is not symmetric");
    }
  }
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  const ConeProgram cp(problem);
  const Eigen::Index n = problem.num_variables;
  const Eigen::Index me = cp.a.rows();

  SdpSolution sol;
  const double resx0 = std::max(1.0, cp.c.norm());
  const double resy0 = std::max(1.0, me > 0 ? cp.b.norm() : 0.0);
  const double resz0 = std::max(1.0, cp.h.norm());
  const RealVector e = cp.identity();

  // Starting point from two least-squares solves with identity scaling.
  RealVector x, y, z, s;
  {
    const Scaling unit = Scaling::identity(cp);
    const KktSolver kkt(cp, unit);
    if (!kkt.ok()) {
      sol.detail = "rank-deficient constraint data";
      return sol;
    }
    const KktSolution primal = kkt.solve(RealVector::Zero(n), cp.b, cp.h);
    x = primal.x;
    s = -primal.z;
    const KktSolution dual = kkt.solve(-cp.c, RealVector::Zero(me), RealVector::Zero(cp.dim));
    y = dual.y;
    z = dual.z;
    const double ts = -cp.min_eigenvalue(s);
    if (ts >= -1e-8 * std::max(s.norm(), 1.0)) s += (1.0 + ts) * e;
    const double tz = -cp.min_eigenvalue(z);
    if (tz >= -1e-8 * std::max(z.norm(), 1.0)) z += (1.0 + tz) * e;
  }
  double tau = 1.0;
  double kappa = 1.0;

  auto finish = [&](SdpStatus status, int iterations) {
    sol.status = status;
    sol.iterations = iterations;
    const double scale = status == SdpStatus::infeasible ? 1.0 : tau;
    sol.x = x / scale;
    sol.y = y / scale;
    sol.z.clear();
    sol.slack.clear();
    for (std::size_t k = 0; k < cp.num_blocks(); ++k) {
      sol.z.push_back(cp.block(z, k) / scale);
      sol.slack.push_back(cp.block(s, k) / scale);
    }
    return sol;
  };

  for (int iter = 0;; ++iter) {
    const RealVector hrx = (me > 0 ? RealVector(cp.a.transpose() * y) : RealVector::Zero(n)) + cp.g.transpose() * z;
    const RealVector hry = me > 0 ? RealVector(cp.a * x) : RealVector::Zero(0);
    const RealVector hrz = s + cp.g * x;
    const double cx = cp.c.dot(x);
    const double by_hz = safe_dot(cp.b, y) + cp.h.dot(z);
    const RealVector r1 = hrx + tau * cp.c;
    const RealVector r2 = tau * cp.b - hry;
    const RealVector r3 = hrz - tau * cp.h;
    const double r4 = kappa + cx + by_hz;

    const double pcost = cx / tau + problem.objective_constant;
    const double dcost = -by_hz / tau + problem.objective_constant;
    const double pres = std::max(me > 0 ? r2.norm() / tau / resy0 : 0.0, r3.norm() / tau / resz0);
    const double dres = r1.norm() / tau / resx0;
    const double sz = s.dot(z);
    sol.primal_objective = pcost;
    sol.dual_objective = dcost;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    sol.gap = std::abs(pcost - dcost);

    const double gap_measure = std::max(sol.gap, sz / (tau * tau));
    if (pres <= options.feas_tol && dres <= options.feas_tol && gap_measure <= options.gap_tol) {
      return finish(SdpStatus::optimal, iter);
    }
    if (by_hz < 0.0 && hrx.norm() / resx0 / -by_hz <= options.feas_tol) {
      sol.detail = "primal infeasibility certificate";
      return finish(SdpStatus::infeasible, iter);
    }
    if (cx < 0.0 && std::max(me > 0 ? hry.norm() / resy0 : 0.0, hrz.norm() / resz0) / -cx <= options.feas_tol) {
      sol.detail = "dual infeasibility certificate";
      return finish(SdpStatus::infeasible, iter);
    }
    if (iter >= options.max_iter) return finish(SdpStatus::max_iterations, iter);

    const std::optional<Scaling> scaling = Scaling::nesterov_todd(cp, s, z);
    if (!scaling) {
      sol.detail = "iterate left the cone interior";
      return finish(SdpStatus::numerical_failure, iter);
    }
    const KktSolver kkt(cp, *scaling);
    if (!kkt.ok()) {
      sol.detail = "singular Newton system";
      return finish(SdpStatus::numerical_failure, iter);
    }
    const RealVector lambda_sq = scaling->lambda_sq();
    const double mu = (sz + kappa * tau) / (cp.degree + 1);

    const KktSolution u2 = kkt.solve(-cp.c, cp.b, cp.h);
    const double q2 = cp.c.dot(u2.x) + safe_dot(cp.b, u2.y) + cp.h.dot(u2.z);

    struct Direction {
      RealVector dx, dy, dz, ds;
      double dtau, dkappa;
    };
    auto direction = [&](double eta, const RealVector& xi, double xi_t) {
      const RealVector scaled = scaling->wt(scaling->lambda_div(xi));
      const KktSolution u1 = kkt.solve(-eta * r1, eta * r2, -eta * r3 - scaled);
      const double q1 = cp.c.dot(u1.x) + safe_dot(cp.b, u1.y) + cp.h.dot(u1.z);
      Direction d;
      d.dtau = (xi_t + tau * (eta * r4 + q1)) / (kappa - tau * q2);
      d.dx = u1.x + d.dtau * u2.x;
      d.dy = u1.y + d.dtau * u2.y;
      d.dz = u1.z + d.dtau * u2.z;
      d.dkappa = -eta * r4 - q1 - d.dtau * q2;
      d.ds = scaled - scaling->hess(d.dz);
      return d;
    };
    auto step_bound = [&](const Direction& d) {
      double alpha = std::min(scaling->max_step(scaling->winvt(d.ds)), scaling->max_step(scaling->w(d.dz)));
      if (d.dtau < 0.0) alpha = std::min(alpha, -tau / d.dtau);
      if (d.dkappa < 0.0) alpha = std::min(alpha, -kappa / d.dkappa);
      return alpha;
    };

    const Direction aff = direction(1.0, -lambda_sq, -kappa * tau);
    const double alpha_aff = std::min(1.0, step_bound(aff));
    const double sigma = std::pow(1.0 - alpha_aff, 3);
    const RealVector xi = sigma * mu * e - lambda_sq - sprod(cp, scaling->winvt(aff.ds), scaling->w(aff.dz));
    const double xi_t = sigma * mu - kappa * tau - aff.dtau * aff.dkappa;
    const Direction d = direction(1.0 - sigma, xi, xi_t);
    const double alpha = std::min(1.0, kStepFraction * step_bound(d));
    if (!(alpha > 0.0) || !d.dx.allFinite() || !std::isfinite(d.dtau)) {
      sol.detail = "search direction broke down";
      return finish(SdpStatus::numerical_failure, iter);
    }
    x += alpha * d.dx;
    y += alpha * d.dy;
    z += alpha * d.dz;
    s += alpha * d.ds;
    tau += alpha * d.dtau;
    kappa += alpha * d.dkappa;
  }
}

}  // namespace lownoise
