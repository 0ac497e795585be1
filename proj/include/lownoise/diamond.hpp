#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lownoise/channel.hpp"
#include "lownoise/sdp.hpp"

namespace lownoise {

enum class DiamondMethod { sdp, covariant_closed_form, max_norm_bound };

std::string to_string(DiamondMethod method);

struct DiamondResult {
  double value = 0.0;
  DiamondMethod method = DiamondMethod::sdp;
  std::optional<SdpSolution> certificate;
};

/// ||n1 - n2||_diamond through
///   minimize 2 mu  s.t.  mu I - tr_B Z >= 0,  Z >= J(n1) - J(n2),  Z >= 0.
/// Throws NumericalError when the solver does not report optimal.
DiamondResult diamond_norm_diff(const Channel& n1, const Channel& n2, const SdpOptions& options = {});

/// Same program for an arbitrary trace-annihilating Choi difference.
DiamondResult diamond_norm_trace_annihilating(const ComplexMatrix& choi, int dim_in, int dim_out,
                                              const SdpOptions& options = {});

/// ||phi||_diamond for any Hermiticity-preserving map through
///   minimize mu  s.t.  mu I - tr_B(2Z - J) >= 0,  Z >= J,  Z >= 0,
/// which coincides with the program above whenever tr_B J = 0.
DiamondResult diamond_norm_hp(const HermitianPreservingMap& phi, const SdpOptions& options = {});

/// |A| |B|^2 ||J(theta)||_max for a CP map; DomainError on a non-PSD Choi.
double max_norm_bound(const ChoiMatrix& theta);

/// Symmetry group under which the two maps forming phi are jointly covariant.
enum class Covariance { unitary, pauli };

/// (1/2) ||J(phi)||_1. Exact when phi is jointly covariant under an
/// irreducible group; the caller vouches for that.
double covariant_diamond(const HermitianPreservingMap& phi, Covariance covariance);

struct StinespringBounds {
  double distance = 0.0;  // best ||V1 - (I (x) W) V2||_inf found
  double lower = 0.0;     // distance^2
  double upper = 0.0;     // 2 * distance
};

/// Heuristic search over environment unitaries W (weighted Procrustes
/// updates from `restarts` seeded starts). Only ||n1 - n2||_diamond <= upper
/// is guaranteed; `lower` is a bound only at the true infimum.
StinespringBounds stinespring_distance_bounds(const Channel& n1, const Channel& n2, int restarts = 100,
                                              std::uint64_t seed = 7);

}  // namespace lownoise
