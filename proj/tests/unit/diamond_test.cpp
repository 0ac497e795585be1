#include <algorithm>
#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "lownoise/diamond.hpp"
#include "lownoise/errors.hpp"
#include "lownoise/random.hpp"

namespace lownoise {
namespace {

ComplexMatrix bloch_state(double x, double y, double z) {
  return 0.5 * (pauli_i() + x * pauli_x() + y * pauli_y() + z * pauli_z());
}

// max over input states rho of || (sqrt(rho)^T (x) I) J (sqrt(rho)^T (x) I) ||_1
// for a qubit-input map: grid over the Bloch ball in spherical coordinates,
// then a shrinking pattern search with the radius clamped to [0, 1].
double grid_diamond(const ComplexMatrix& j, int dout) {
  auto value = [&](double r, double theta, double phi) {
    r = std::clamp(r, 0.0, 1.0);
    const ComplexMatrix rho = bloch_state(r * std::sin(theta) * std::cos(phi), r * std::sin(theta) * std::sin(phi),
                                          r * std::cos(theta));
    const ComplexMatrix s = kron(psd_sqrt(rho).transpose(), ComplexMatrix::Identity(dout, dout));
    return trace_norm(s * j * s);
  };
  double best = -1.0;
  std::array<double, 3> at{};
  const double pi = std::acos(-1.0);
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; b <= 16; ++b)
      for (int c = 0; c < 32; ++c) {
        const std::array<double, 3> q{a / 8.0, pi * b / 16, 2 * pi * c / 32};
        const double v = value(q[0], q[1], q[2]);
        if (v > best) best = v, at = q;
      }
  for (double step = 0.1; step > 1e-8; step *= 0.5) {
    for (bool moved = true; moved;) {
      moved = false;
      for (int axis = 0; axis < 3; ++axis)
        for (double sgn : {-1.0, 1.0}) {
          std::array<double, 3> q = at;
          q[axis] += sgn * step;
          q[0] = std::clamp(q[0], 0.0, 1.0);
          const double v = value(q[0], q[1], q[2]);
          if (v > best + 1e-15) best = v, at = q, moved = true;
        }
    }
  }
  return best;
}

TEST(Diamond, IdenticalChannelsGiveZero) {
  const Channel n = RandomSource(51).channel(2, 2, 2);
  EXPECT_EQ(diamond_norm_diff(n, n).value, 0.0);
}

TEST(Diamond, PauliDifferencesAreL1Distances) {
  EXPECT_NEAR(diamond_norm_diff(identity_channel(2), depolarizing(0.1)).value, 0.2, 1e-7);
  const PauliProbabilities p{0.7, 0.1, 0.15, 0.05};
  const PauliProbabilities q{0.6, 0.25, 0.05, 0.1};
  double l1 = 0;
  for (int i = 0; i < 4; ++i) l1 += std::abs(p[i] - q[i]);
  const DiamondResult r = diamond_norm_diff(pauli(p), pauli(q));
  EXPECT_NEAR(r.value, l1, 1e-7);
  ASSERT_TRUE(r.certificate.has_value());
  EXPECT_EQ(r.certificate->status, SdpStatus::optimal);
}

TEST(Diamond, UnitaryDistance) {
  for (double theta : {0.3, 1.0, 2.5}) {
    ComplexMatrix u = ComplexMatrix::Identity(2, 2);
    u(1, 1) = std::polar(1.0, theta);
    EXPECT_NEAR(diamond_norm_diff(unitary_channel(u), identity_channel(2)).value, 2 * std::sin(theta / 2), 1e-7);
  }
}

TEST(Diamond, MatchesGridOracleOnRandomQubitChannels) {
  RandomSource rng(52);
  for (int t = 0; t < 4; ++t) {
    const Channel a = rng.channel(2, 2, 1 + t % 3);
    const Channel b = rng.channel(2, 2, 2);
    const double sdp = diamond_norm_diff(a, b).value;
    const double grid = grid_diamond(hp_map_diff(a, b).choi(), 2);
    EXPECT_LE(grid, sdp + 1e-7);
    EXPECT_NEAR(sdp, grid, 1e-4);
  }
}

TEST(Diamond, ProgramsAgreeOnTraceAnnihilatingMaps) {
  RandomSource rng(53);
  for (int t = 0; t < 3; ++t) {
    const HermitianPreservingMap phi = hp_map_diff(rng.channel(2, 3, 2), rng.channel(2, 3, 3));
    const double a = diamond_norm_trace_annihilating(phi.choi(), 2, 3).value;
    const double b = diamond_norm_hp(phi).value;
    EXPECT_NEAR(a, b, 1e-7);
  }
}

TEST(Diamond, HpProgramHandlesNonAnnihilatingMaps) {
  // ||c id||_diamond = |c| and the identity Choi itself has norm 1.
  const ComplexMatrix j = choi_of(identity_channel(2)).matrix();
  EXPECT_NEAR(diamond_norm_hp(HermitianPreservingMap(j, 2, 2)).value, 1.0, 1e-7);
  EXPECT_NEAR(diamond_norm_hp(HermitianPreservingMap(-3.0 * j, 2, 2)).value, 3.0, 1e-6);
  const ComplexMatrix jd = choi_of(depolarizing(0.2)).matrix();
  EXPECT_NEAR(diamond_norm_hp(HermitianPreservingMap(jd, 2, 2)).value, 1.0, 1e-7);
}

TEST(Diamond, SmallDifferencesKeepRelativeAccuracy) {
  const double p = 1e-6;
  EXPECT_NEAR(diamond_norm_diff(identity_channel(2), depolarizing(p)).value / (2 * p), 1.0, 1e-5);
}

TEST(Diamond, MetricProperties) {
  RandomSource rng(54);
  const Channel a = rng.channel(2, 2, 2);
  const Channel b = rng.channel(2, 2, 3);
  const Channel c = rng.channel(2, 2, 1);
  const double ab = diamond_norm_diff(a, b).value;
  const double ba = diamond_norm_diff(b, a).value;
  const double bc = diamond_norm_diff(b, c).value;
  const double ac = diamond_norm_diff(a, c).value;
  EXPECT_NEAR(ab, ba, 1e-7);
  EXPECT_LE(ac, ab + bc + 1e-7);
  EXPECT_GE(ab, 0.0);
  EXPECT_LE(ab, 2.0 + 1e-7);
  EXPECT_GE(ab, 0.5 * trace_norm(hp_map_diff(a, b).choi()) - 1e-7);
}

TEST(Diamond, CovariantClosedFormMatchesSdp) {
  const HermitianPreservingMap phi = hp_map_diff(pauli(0.8, 0.1, 0.05, 0.05), pauli(0.75, 0.05, 0.1, 0.1));
  EXPECT_NEAR(covariant_diamond(phi, Covariance::pauli), diamond_norm_hp(phi).value, 1e-7);
}

TEST(Diamond, MaxNormBoundDominates) {
  RandomSource rng(55);
  for (int t = 0; t < 3; ++t) {
    const Channel a = rng.channel(2, 2, 2);
    EXPECT_LE(diamond_norm_hp(HermitianPreservingMap(choi_of(a).matrix(), 2, 2)).value,
              max_norm_bound(choi_of(a)) + 1e-7);
  }
}

TEST(Diamond, StinespringBoundsSandwich) {
  RandomSource rng(56);
  for (int t = 0; t < 3; ++t) {
    const Channel a = rng.channel(2, 2, 2);
    const Channel b = rng.channel(2, 2, 2);
    const double d = diamond_norm_diff(a, b).value;
    const StinespringBounds s = stinespring_distance_bounds(a, b, 20);
    EXPECT_LE(s.lower, d + 1e-7);
    EXPECT_GE(s.upper, d - 1e-7);
  }
}

TEST(Diamond, ComplementContinuity) {
  RandomSource rng(57);
  for (int t = 0; t < 4; ++t) {
    double w[2][4];
    for (auto& row : w) {
      double total = 0;
      for (double& x : row) total += (x = 0.05 + rng.uniform());
      for (double& x : row) x /= total;
    }
    const Channel a = pauli(w[0][0], w[0][1], w[0][2], w[0][3]);
    const Channel b = pauli(w[1][0], w[1][1], w[1][2], w[1][3]);
    const double direct = diamond_norm_diff(a, b).value;
    const double env = diamond_norm_diff(complementary(a), complementary(b)).value;
    EXPECT_LE(env, 2 * std::sqrt(direct) + 1e-7);
  }
}

TEST(Diamond, RejectsMismatchedShapes) {
  EXPECT_THROW(diamond_norm_diff(identity_channel(2), identity_channel(3)), DimensionError);
  EXPECT_THROW(diamond_norm_trace_annihilating(ComplexMatrix::Zero(4, 4), 2, 3), DimensionError);
}

}  // namespace
}  // namespace lownoise
