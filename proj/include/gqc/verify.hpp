#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gqc/sampling.hpp"

namespace gqc {

/// Outcome of one Monte Carlo inequality suite. margin is the signed slack
/// of the tested bound (negative = satisfied, positive = violated beyond
/// the documented tolerance); the histogram covers the observed margins.
struct BoundReport {
  std::string suite;
  std::uint64_t n_samples = 0;
  std::uint64_t n_violations = 0;
  double worst_margin = 0.0;  // most positive margin seen
  double slack = 0.0;         // tolerance the suite ran at
  std::vector<std::uint64_t> histogram;  // margin histogram, fixed bin count
  double hist_lo = 0.0;
  double hist_hi = 0.0;
  std::map<std::string, std::uint64_t> counts;  // branch / case coverage
  std::vector<std::string> violations;          // reproduction parameters

  bool passed() const { return n_violations == 0; }
};

struct VerifyConfig {
  std::uint64_t seed = 20100401;  // master seed for the sample stream
  double a_max = 10.0;
  double b_max = 10.0;
  int threads = 0;  // 0 = hardware concurrency
};

/// D_max - D_min <= D_min / (exp(D_min) - 1), slack 1e-9; the squeezed
/// thermal family at s = 8 is injected to witness near-saturation.
BoundReport verify_asymmetry(std::uint64_t n, const VerifyConfig& cfg = {});

/// Separable states: D_left <= [(b-1)/2] ln[(b+1)/(b-1)] <= 1 and the
/// two-marginal intermediate bound f(b) - f(a+b-1) + f((2a+b-1)/(1+b)),
/// slack 1e-6; extremal states are injected up to a = 1e3.
BoundReport verify_separable_bound(std::uint64_t n, const VerifyConfig& cfg = {});

/// Entangled states: 2 ln coth r <= D_left <= max(E_G, 2 cosh^2 r ln coth r)
/// with r from the numeric E_G, slack 1e-5.
BoundReport verify_entangled_bounds(std::uint64_t n, const VerifyConfig& cfg = {});

/// |emin_numeric - emin_closed| / emin_closed < 1e-7 with both closed-form
/// branches exercised; branch counts land in the report.
BoundReport verify_oracle(std::uint64_t n, const VerifyConfig& cfg = {});

enum class FigurePanel { left, right };

/// Scatter data behind the two panels: (marginal entropy f(b), D_left,
/// bound) for separable samples, or (E_G, D_left, lower, upper) for
/// entangled ones. CSV with a header line; floats as shortest round-trip
/// decimals; deterministic for a given seed.
void figure_data(FigurePanel panel, std::uint64_t n, std::ostream& out,
                 const VerifyConfig& cfg = {});

}  // namespace gqc
