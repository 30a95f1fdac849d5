#pragma once

#include <cstdint>
#include <random>

#include "gqc/symplectic.hpp"

namespace gqc {

/// Deterministic random stream. Draws are produced from the raw 64-bit
/// engine output (53-bit mantissa path), so a given seed yields the same
/// sequence on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream derived by hashing (seed, index); used to keep
  /// chunked parallel runs deterministic regardless of thread count.
  static Rng substream(std::uint64_t seed, std::uint64_t index);

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

enum class StateClass { any, separable, entangled, product };

struct SamplerConfig {
  std::uint64_t seed = 1;
  double a_max = 10.0;
  double b_max = 10.0;
  StateClass filter = StateClass::any;
  int count = 1;
};

/// Rejection sampler over the uniform box a in [1, a_max], b in [1, b_max],
/// (c, d) in [-sqrt(ab), sqrt(ab)]^2, keeping physical states that match the
/// class filter; (c, d) are renormalized to the c >= |d|, sign(d) = sign(C)
/// convention. Product states are built directly with c = d = 0.
class StateSampler {
 public:
  explicit StateSampler(const SamplerConfig& cfg);

  TwoModeStandardForm sample();

  std::uint64_t rejections() const { return rejections_; }
  std::uint64_t draws() const { return draws_; }

 private:
  SamplerConfig cfg_;
  Rng rng_;
  std::uint64_t rejections_ = 0;
  std::uint64_t draws_ = 0;
};

/// Haar-ish random single-mode symplectic R(th1) diag(z, 1/z) R(th2) with
/// th uniform on [0, 2pi) and ln z uniform on [-squeeze, squeeze].
Matrix2 random_local_symplectic(Rng& rng, double squeeze = 1.0);

/// Random n-mode symplectic from interleaved layers of local operations and
/// beam splitters.
Matrix random_symplectic(int n_modes, Rng& rng, double squeeze = 1.0, int layers = 3);

/// Random physical CM S diag(nu) S^T with nu uniform on [1, nu_max].
CovarianceMatrix random_physical_cm(int n_modes, Rng& rng, double nu_max = 6.0,
                                    double squeeze = 1.0);

/// Random pure CM S S^T.
CovarianceMatrix random_pure_cm(int n_modes, Rng& rng, double squeeze = 1.0);

}  // namespace gqc
