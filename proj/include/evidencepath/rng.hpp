#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace evidencepath {

/// Deterministic per-chain random stream. A (master_seed, stream_id) pair
/// reproduces the same draw sequence bit for bit; distinct stream ids give
/// independent chains off one master seed. Distributions are implemented
/// here rather than through <random> adaptors so sequences do not depend on
/// the standard library in use.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on [0,1).
  double uniform();
  /// Uniform on (0,1).
  double uniform_pos();
  /// Standard normal (Marsaglia polar).
  double normal();
  /// Gamma(shape, rate), density ∝ x^{shape-1} e^{-rate x}.
  double gamma(double shape, double rate);
  /// Index drawn from unnormalised log weights.
  int categorical_from_log(std::span<const double> log_weights);
  /// Integer uniform on [0, n).
  int uniform_int(int n);

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace evidencepath
