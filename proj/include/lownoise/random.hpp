#pragma once

#include <cstdint>
#include <random>

#include "lownoise/channel.hpp"

namespace lownoise {

/// Seeded source for test instances and optimizer restarts.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();

  /// Ginibre matrix with i.i.d. standard complex normal entries.
  ComplexMatrix ginibre(int rows, int cols);

  /// Haar-distributed unitary (QR of a Ginibre matrix, phases fixed).
  ComplexMatrix unitary(int d);

  /// Density matrix G G^dagger / tr(G G^dagger) with G of shape d x rank.
  ComplexMatrix density(int d, int rank = -1);

  /// Hermitian matrix (G + G^dagger)/2.
  ComplexMatrix hermitian(int d);

  /// Channel from an isometry d_in -> d_out * num_kraus (Haar columns).
  Channel channel(int dim_in, int dim_out, int num_kraus);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lownoise
