#include "gqc/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace gqc {

namespace {

// splitmix64; mixes (seed, index) into an independent substream seed
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
  return Rng(mix64(mix64(seed) ^ mix64(index + 0x517cc1b727220a95ULL)));
}

double Rng::uniform() {
  // top 53 bits of the engine output; identical across platforms
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

StateSampler::StateSampler(const SamplerConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
  if (!(cfg.a_max > 1.0) || !(cfg.b_max > 1.0)) {
    throw std::invalid_argument("StateSampler: a_max and b_max must exceed 1");
  }
}

TwoModeStandardForm StateSampler::sample() {
  constexpr std::uint64_t kStallLimit = 1'000'000;
  std::uint64_t consecutive = 0;
  while (true) {
    ++draws_;
    TwoModeStandardForm sf;
    sf.a = rng_.uniform(1.0, cfg_.a_max);
    sf.b = rng_.uniform(1.0, cfg_.b_max);
    if (cfg_.filter == StateClass::product) {
      return sf;  // c = d = 0 by construction
    }
    const double lim = std::sqrt(sf.a * sf.b);
    const double c_raw = rng_.uniform(-lim, lim);
    const double d_raw = rng_.uniform(-lim, lim);
    // renormalize to the standard-form convention c >= |d|, sign(d) = sign(cd)
    sf.c = std::max(std::abs(c_raw), std::abs(d_raw));
    const double mag = std::min(std::abs(c_raw), std::abs(d_raw));
    sf.d = (c_raw * d_raw < 0.0) ? -mag : mag;

    const SymplecticInvariants inv = invariants(sf);
    bool ok = inv.nu_minus >= 1.0;
    if (ok) {
      switch (cfg_.filter) {
        case StateClass::any: break;
        case StateClass::separable: ok = inv.nu_tilde_minus >= 1.0 - 1e-9; break;
        case StateClass::entangled: ok = inv.nu_tilde_minus < 1.0 - 1e-9; break;
        case StateClass::product: break;
      }
    }
    if (ok) return sf;
    ++rejections_;
    if (++consecutive >= kStallLimit) {
      throw std::runtime_error("StateSampler: rejection stall after " +
                               std::to_string(kStallLimit) + " consecutive rejections");
    }
  }
}

Matrix2 random_local_symplectic(Rng& rng, double squeeze) {
  const double th1 = rng.uniform(0.0, 2.0 * M_PI);
  const double th2 = rng.uniform(0.0, 2.0 * M_PI);
  const double z = std::exp(rng.uniform(-squeeze, squeeze));
  return single_mode_symplectic(th1, z, th2);
}

Matrix random_symplectic(int n_modes, Rng& rng, double squeeze, int layers) {
  Matrix s = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int layer = 0; layer < layers; ++layer) {
    for (int i = 0; i < n_modes; ++i) {
      s = embed_single_mode(random_local_symplectic(rng, squeeze), i, n_modes) * s;
    }
    for (int i = 0; i + 1 < n_modes; ++i) {
      s = beam_splitter(rng.uniform(0.0, 1.0), i, i + 1, n_modes) * s;
    }
  }
  return s;
}

CovarianceMatrix random_physical_cm(int n_modes, Rng& rng, double nu_max, double squeeze) {
  Matrix d = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (int i = 0; i < n_modes; ++i) {
    d(2 * i, 2 * i) = d(2 * i + 1, 2 * i + 1) = rng.uniform(1.0, nu_max);
  }
  const Matrix s = random_symplectic(n_modes, rng, squeeze);
  return CovarianceMatrix(s * d * s.transpose(), 1e-8);
}

CovarianceMatrix random_pure_cm(int n_modes, Rng& rng, double squeeze) {
  const Matrix s = random_symplectic(n_modes, rng, squeeze);
  return CovarianceMatrix(s * s.transpose(), 1e-8);
}

}  // namespace gqc
