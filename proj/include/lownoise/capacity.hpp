#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lownoise/channel.hpp"
#include "lownoise/sdp.hpp"

namespace lownoise {

/// Binary entropy in bits; exactly 0 within 1e-15 of either endpoint.
double binary_entropy(double x);

/// Continuity offsets for Q and P given eta in [0, 2] and environment
/// dimension |E| >= 1. The (|E| - 1) logarithm contributes 0 at |E| = 1.
double f1(double eta, int env_dim);
double f2(double eta, int env_dim);

/// S(N(rho)) - S(N^c(rho)) in bits.
double coherent_information_state(const ComplexMatrix& rho, const Channel& n);

struct CoherentInfoOptions {
  int restarts = 20;
  double fd_step = 1e-5;
  double improvement_tol = 1e-10;
  int max_steps = 500;
  int bloch_grid = 1000;  // qubit inputs only
  std::uint64_t seed = 1705;
};

struct CoherentInfoResult {
  double value = 0.0;
  ComplexMatrix maximizer;
};

/// Best value found by projected gradient ascent (finite-difference
/// gradients) from I/d and seeded random starts, plus a Bloch-ball grid for
/// qubits. A lower bound on the maximum by construction.
CoherentInfoResult coherent_information(const Channel& n, const CoherentInfoOptions& options = {});

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

struct CapacityReport {
  std::string channel_id;
  double ic = 0.0;
  ComplexMatrix maximizer;
  double eta = 0.0;
  std::string eta_source;  // "sdp" or "constructed"
  int choi_rank = 0;
  double rank_threshold = 0.0;
  Interval q_interval;
  Interval p_interval;

  std::string to_text() const;
  static std::string row_header();
  std::string to_row() const;
};

/// Offsets below this eta are set to 0.
inline constexpr double kEtaFloor = 1e-9;

/// Intervals [Ic, Ic + f1(eta, |E|)] and [Ic, Ic + f2(eta, |E|)] with |E| the
/// numerical Choi rank. eta comes from dg_sdp unless supplied.
CapacityReport capacity_interval(const Channel& n, const std::string& channel_id = "channel",
                                 std::optional<double> constructed_eta = std::nullopt,
                                 const SdpOptions& sdp_options = {}, const CoherentInfoOptions& ic_options = {});

enum class CapacityKind { quantum, private_ };

/// Leading-order gap when dg(N) <= c p^r, without the remainder term.
double leading_order_gap(double c, double r, double p, int env_dim, CapacityKind which);

struct CurvePoint {
  double p = 0.0;
  double g = 0.0;           // g(c p^r), g(eta) = -eta log eta
  double derivative = 0.0;  // d/dp g(c p^r)
};

std::vector<CurvePoint> bound_curves(double c, double r, const std::vector<double>& grid);

}  // namespace lownoise
