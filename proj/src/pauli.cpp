#include <cmath>
#include <numbers>
#include <string>

#include "lownoise/channel.hpp"
#include "lownoise/errors.hpp"

namespace lownoise {
namespace {

constexpr double kDistributionTol = 1e-12;

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": parameter outside [0, 1]");
}

std::array<ComplexMatrix, 4> pauli_basis() { return {pauli_i(), pauli_x(), pauli_y(), pauli_z()}; }

double evaluate_poly(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

void validate_distribution(const PauliProbabilities& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw DomainError("Pauli distribution has a negative or NaN entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) throw DomainError("Pauli distribution does not sum to 1");
}

Channel pauli(const PauliProbabilities& p) {
  validate_distribution(p);
  const auto basis = pauli_basis();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(4);
  for (int i = 0; i < 4; ++i) kraus.push_back(std::sqrt(p[i]) * basis[i]);
  return Channel(std::move(kraus));
}

Channel pauli(double p0, double p1, double p2, double p3) { return pauli(PauliProbabilities{p0, p1, p2, p3}); }

Channel depolarizing(double p) {
  require_probability(p, "depolarizing");
  return pauli(1.0 - p, p / 3.0, p / 3.0, p / 3.0);
}

PauliProbabilities xz_probabilities(double p, double q) {
  require_probability(p, "xz_channel");
  require_probability(q, "xz_channel");
  return {(1.0 - p) * (1.0 - q), p * (1.0 - q), p * q, (1.0 - p) * q};
}

Channel xz_channel(double p, double q) { return pauli(xz_probabilities(p, q)); }

Channel epolarizing(double p) { return complementary(depolarizing(p)); }

ComplexMatrix pauli_complement_action(const PauliProbabilities& p, const ComplexMatrix& rho) {
  validate_distribution(p);
  if (rho.rows() != 2 || rho.cols() != 2) throw DimensionError("pauli_complement_action: rho must be 2x2");
  const auto basis = pauli_basis();
  ComplexMatrix out(4, 4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      out(k, l) = std::sqrt(p[k] * p[l]) * (basis[k] * rho * basis[l]).trace();
    }
  return out;
}

ComplexMatrix shift_operator(int d, int k) {
  if (d < 1) throw DimensionError("shift_operator: d must be positive");
  const int shift = ((k % d) + d) % d;
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) x((i + shift) % d, i) = 1.0;
  return x;
}

ComplexMatrix clock_operator(int d, int l) {
  if (d < 1) throw DimensionError("clock_operator: d must be positive");
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const int power = static_cast<int>((static_cast<long long>(i) * l % d + d) % d);
    z(i, i) = std::polar(1.0, 2.0 * std::numbers::pi * power / d);
  }
  return z;
}

Channel generalized_pauli(int d, const std::map<std::pair<int, int>, double>& probs) {
  if (d < 2) throw DimensionError("generalized_pauli: d must be at least 2");
  double sum = 0.0;
  for (const auto& [key, value] : probs) {
    if (key.first < 0 || key.first >= d || key.second < 0 || key.second >= d) {
      throw DomainError("generalized_pauli: index pair outside [0, d)");
    }
    if (!(value >= 0.0)) throw DomainError("generalized_pauli: negative probability");
    sum += value;
  }
  if (std::abs(sum - 1.0) > kDistributionTol) throw DomainError("generalized_pauli: probabilities do not sum to 1");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d) * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const auto it = probs.find({k, l});
      const double w = it == probs.end() ? 0.0 : it->second;
      kraus.push_back(std::sqrt(w) * shift_operator(d, k) * clock_operator(d, l));
    }
  return Channel(std::move(kraus));
}

PauliFamily::PauliFamily(std::array<std::vector<double>, 3> coefficients, double p_max)
    : coefficients_(std::move(coefficients)), p_max_(p_max) {
  for (const auto& c : coefficients_) {
    if (!c.empty() && c.front() != 0.0) throw DomainError("PauliFamily: constant term must be exactly 0");
  }
  if (!(p_max > 0.0)) throw DomainError("PauliFamily: p_max must be positive");
}

PauliFamily PauliFamily::depolarizing() {
  return PauliFamily({{{0.0, 1.0 / 3.0}, {0.0, 1.0 / 3.0}, {0.0, 1.0 / 3.0}}}, 0.75);
}

PauliFamily PauliFamily::xz() { return PauliFamily({{{0.0, 1.0, -1.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, -1.0}}}, 1.0); }

PauliProbabilities PauliFamily::evaluate(double p) const {
  if (!(p >= 0.0 && p <= p_max_)) throw DomainError("PauliFamily: p outside [0, p_max]");
  return evaluate_shifted({p, p, p});
}

PauliProbabilities PauliFamily::evaluate_shifted(const std::array<double, 3>& arguments) const {
  PauliProbabilities out{};
  double rest = 0.0;
  for (int i = 0; i < 3; ++i) {
    double v = evaluate_poly(coefficients_[i], arguments[i]);
    if (v < 0.0 && v > -1e-14) v = 0.0;
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("PauliFamily: probability leaves [0, 1]");
    out[i + 1] = v;
    rest += v;
  }
  if (rest > 1.0 + 1e-14) throw DomainError("PauliFamily: probabilities sum above 1");
  out[0] = std::max(0.0, 1.0 - rest);
  return out;
}

std::array<double, 3> PauliFamily::linear_coefficients() const {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = coefficients_[i].size() > 1 ? coefficients_[i][1] : 0.0;
  return out;
}

}  // namespace lownoise
