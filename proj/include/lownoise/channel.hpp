#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "lownoise/linalg.hpp"

namespace lownoise {

/// Completely positive trace-preserving map held as a Kraus list.
/// The list order fixes the environment basis of the canonical dilation.
class Channel {
 public:
  /// Throws DimensionError on inconsistent shapes and DomainError when
  /// sum_k K_k^dagger K_k deviates from the identity by more than 1e-9.
  explicit Channel(std::vector<ComplexMatrix> kraus);

  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  std::size_t num_kraus() const { return kraus_.size(); }

 private:
  std::vector<ComplexMatrix> kraus_;
  int dim_in_ = 0;
  int dim_out_ = 0;
};

/// Choi operator J(N) = sum_ij |i><j| (x) N(|i><j|), input factor first.
/// Construction checks Hermiticity and positivity; the partial-trace
/// condition is checked only where a channel is required.
class ChoiMatrix {
 public:
  ChoiMatrix(ComplexMatrix matrix, int dim_in, int dim_out);

  const ComplexMatrix& matrix() const { return matrix_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }

 private:
  ComplexMatrix matrix_;
  int dim_in_;
  int dim_out_;
};

/// Isometry V: A -> B (x) E with the output factor first.
struct IsometricExtension {
  ComplexMatrix v;
  int dim_out = 0;
  int dim_env = 0;
};

/// Choi operator of a Hermiticity-preserving map; no positivity requirement.
class HermitianPreservingMap {
 public:
  HermitianPreservingMap(ComplexMatrix choi, int dim_in, int dim_out);

  const ComplexMatrix& choi() const { return choi_; }
  int dim_in() const { return dim_in_; }
  int dim_out() const { return dim_out_; }

  HermitianPreservingMap scaled(double factor) const;

 private:
  ComplexMatrix choi_;
  int dim_in_;
  int dim_out_;
};

ChoiMatrix choi_of(const Channel& n);

/// Kraus form of a CPTP Choi operator. Kraus operators come from the
/// eigenvectors of the Choi matrix (cutoff 1e-12 relative); each is
/// rephased so its first nonzero entry is real and positive.
Channel channel_of_choi(const ChoiMatrix& t);

/// Action of the map with Choi operator `choi` on rho:
/// tr_A'(choi (rho^T (x) I)). Works for any linear map, including
/// non-Hermitian rho.
ComplexMatrix apply_choi(const ComplexMatrix& choi, int dim_in, int dim_out, const ComplexMatrix& rho);

/// Choi operator of (map with Choi `outer`) o (map with Choi `inner`).
ComplexMatrix compose_choi(const ComplexMatrix& outer, const ComplexMatrix& inner,
                           int dim_in, int dim_mid, int dim_out);

ComplexMatrix apply(const Channel& n, const ComplexMatrix& rho);

/// m o n: first n, then m. Kraus operators are M_j K_i, ordered j-major.
Channel compose(const Channel& m, const Channel& n);

/// V = sum_k K_k (x) |k>_E.
IsometricExtension stinespring(const Channel& n);

/// rho -> tr_B(V rho V^dagger) for the canonical dilation; output dimension
/// equals the number of Kraus operators.
Channel complementary(const Channel& n);

/// Number of Choi eigenvalues above 1e-9 * ||J(N)||_inf.
int choi_rank(const Channel& n);

/// Choi(a) - Choi(b).
HermitianPreservingMap hp_map_diff(const Channel& a, const Channel& b);

/// Unitary channel rho -> U rho U^dagger.
Channel unitary_channel(const ComplexMatrix& u);

Channel identity_channel(int d);

// --- Pauli families -------------------------------------------------------

using PauliProbabilities = std::array<double, 4>;  // (p0, pX, pY, pZ)

/// Throws DomainError unless the entries are nonnegative and sum to 1 (1e-12).
void validate_distribution(const PauliProbabilities& p);

/// p0 rho + p1 X rho X + p2 Y rho Y + p3 Z rho Z, Kraus order (I, X, Y, Z).
Channel pauli(double p0, double p1, double p2, double p3);
Channel pauli(const PauliProbabilities& p);

/// (1-p) rho + (p/3)(X rho X + Y rho Y + Z rho Z).
Channel depolarizing(double p);

/// Independent X errors (probability p) and Z errors (probability q).
PauliProbabilities xz_probabilities(double p, double q);
Channel xz_channel(double p, double q);

/// Complement of the depolarizing channel (qubit to 4-dim environment).
Channel epolarizing(double p);

/// Closed-form complementary action of a Pauli channel, entries
/// sqrt(p_i p_j) times Pauli overlaps tr(sigma rho).
ComplexMatrix pauli_complement_action(const PauliProbabilities& p, const ComplexMatrix& rho);

/// Shift X^k and clock Z^l on C^d, omega = exp(2 pi i / d).
ComplexMatrix shift_operator(int d, int k);
ComplexMatrix clock_operator(int d, int l);

/// Kraus set sqrt(p_kl) X^k Z^l; missing pairs have probability 0.
Channel generalized_pauli(int d, const std::map<std::pair<int, int>, double>& probs);

/// Pauli error probabilities given as polynomials in one noise parameter.
/// coefficients[i][k] multiplies p^k; the constant term must be exactly 0.
class PauliFamily {
 public:
  PauliFamily(std::array<std::vector<double>, 3> coefficients, double p_max);

  static PauliFamily depolarizing();
  static PauliFamily xz();

  /// Probabilities (p0, p1(p), p2(p), p3(p)); DomainError off the simplex
  /// or outside [0, p_max].
  PauliProbabilities evaluate(double p) const;

  /// Same polynomials evaluated at individually shifted arguments.
  PauliProbabilities evaluate_shifted(const std::array<double, 3>& arguments) const;

  /// Coefficient of p in each polynomial.
  std::array<double, 3> linear_coefficients() const;

  const std::array<std::vector<double>, 3>& coefficients() const { return coefficients_; }
  double p_max() const { return p_max_; }

 private:
  std::array<std::vector<double>, 3> coefficients_;
  double p_max_;
};

}  // namespace lownoise
