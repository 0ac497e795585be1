#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lownoise/channel.hpp"
#include "lownoise/diamond.hpp"

namespace lownoise {

/// Pauli weights and tuning used to build a complementary-type degrading map.
struct TunedDescriptor {
  std::string family;
  PauliProbabilities p{};
  PauliProbabilities q{};            // weights of the degrading complement N_q^c
  std::array<double, 3> a{};         // argument shifts p -> p + a_i p^2
};

struct DegradabilityReport {
  std::optional<double> eta_sdp;
  std::optional<Channel> degrading_map;
  std::optional<double> eta_verified;  // ||N^c - M o N|| for the extracted M
  std::optional<double> eta_constructed;
  std::optional<TunedDescriptor> descriptor;
  std::optional<double> analytic_bound;
  std::vector<SdpSolution> certificates;
};

/// Optimal degradability parameter
///   minimize 2 mu  s.t.  mu I - tr_E Z >= 0,  Z >= J(N^c) - J(J^{-1}(Y) o N),
///                        Z >= 0,  Y >= 0,  tr_E Y = I_B.
/// Y is projected onto the channel set before extraction and the resulting
/// map is re-evaluated; a disagreement above 1e-6 raises NumericalError.
DegradabilityReport dg_sdp(const Channel& n, const SdpOptions& options = {});

/// ||N^c - N^c o N||_diamond.
double complementary_degrading_eta(const Channel& n, const SdpOptions& options = {});

/// Tuning a_i = 4 sum_{j != i} c_j, or 0 when c_i = 0, on a polynomial Pauli family.
std::array<double, 3> tuned_shifts(const PauliFamily& family);

/// eta of N_q^c with q_i = p_i(p + a_i p^2); analytic bound 64 |c1c2 + c1c3 + c2c3| p^2.
DegradabilityReport tuned_pauli_eta(const PauliFamily& family, double p,
                                    DiamondMethod method = DiamondMethod::covariant_closed_form,
                                    const SdpOptions& options = {});

/// Depolarizing channel degraded by D_s^c, s = p + (8/3) p^2; bound (8/9)(6 + sqrt 2) p^2.
DegradabilityReport depol_tuned_eta(double p);

/// XZ channel degraded by C_s^c, s = p + 4 p^2; bound 16 p^2 + 32 p^{5/2}.
DegradabilityReport xz_tuned_eta(double p);

/// sqrt(p(1-p)/3) - (1 - 4p/3) sqrt((p + a p^2)(1 - p - a p^2)/3).
double depol_c_function(double p, double a = 8.0 / 3.0);

/// Blocks J00, J01, J10, J11 of (1/2) J(D_p^c - D_s^c o D_p) from the closed form.
std::array<ComplexMatrix, 4> depol_phi_blocks(double p);

/// The same four blocks read off the numerically assembled Choi operator.
std::array<ComplexMatrix, 4> depol_phi_blocks_numeric(double p);

struct PhiCoefficients {
  std::array<double, 3> t{};
  std::array<double, 3> u{};
  std::array<double, 4> diag{};  // p_i - q_i
};

PhiCoefficients phi_coefficients(const PauliProbabilities& p, const PauliProbabilities& q);

/// Closed-form action of N_p^c - N_q^c o N_p on a 2x2 operator.
ComplexMatrix phi_action(const PhiCoefficients& coefficients, const ComplexMatrix& rho);

/// N_p^c - N_q^c o N_p as a Choi difference.
HermitianPreservingMap pauli_phi(const PauliProbabilities& p, const PauliProbabilities& q);

struct GeneralizedDegrading {
  Channel degrading_map;
  double eta = 0.0;
  double epsilon = 0.0;  // ||m o n - id||_diamond
};

/// D = tr_{E2} (m o n)^c o m. Raises NumericalError if eta > 2 eps^{3/2} + 1e-6.
GeneralizedDegrading generalized_low_noise_degrading(const Channel& n, const Channel& m,
                                                     const SdpOptions& options = {});

}  // namespace lownoise
