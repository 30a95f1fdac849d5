#include "gqc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "gqc/discord.hpp"
#include "gqc/entanglement.hpp"
#include "gqc/families.hpp"
#include "gqc/io.hpp"

namespace gqc {

namespace {

constexpr int kHistogramBins = 32;
constexpr std::size_t kMaxStoredViolations = 20;

struct DirectionalDiscord {
  double d_left, d_right, j_left, j_right;
  EminCase case_left, case_right;
  double emin_left, emin_right;
};

DirectionalDiscord discord_of_sf(const TwoModeStandardForm& sf) {
  const SymplecticInvariants li = invariants(sf);
  const SymplecticInvariants ri = invariants(swap_modes(sf));
  const EminResult el = emin_closed(sf);
  const EminResult er = emin_closed(swap_modes(sf));
  auto f_nu = [&](double nu) {
    return (nu - 1.0 <= li.nu_noise_floor) ? 0.0 : entropy_f(nu);
  };
  const double s_ab = f_nu(li.nu_minus) + f_nu(li.nu_plus);
  DirectionalDiscord out{};
  out.emin_left = el.value;
  out.emin_right = er.value;
  out.case_left = el.branch;
  out.case_right = er.branch;
  out.d_left = entropy_f(std::sqrt(std::max(li.B, 1.0))) - s_ab +
               entropy_f(std::sqrt(std::max(el.value, 1.0)));
  out.d_right = entropy_f(std::sqrt(std::max(li.A, 1.0))) - s_ab +
                entropy_f(std::sqrt(std::max(er.value, 1.0)));
  out.j_left = entropy_f(std::sqrt(std::max(li.A, 1.0))) -
               entropy_f(std::sqrt(std::max(el.value, 1.0)));
  out.j_right = entropy_f(std::sqrt(std::max(li.B, 1.0))) -
                entropy_f(std::sqrt(std::max(er.value, 1.0)));
  return out;
}

double asymmetry_bound(double d_min) {
  // d / (e^d - 1), continuous value 1 at d = 0
  if (d_min < 1e-14) return 1.0;
  return d_min / std::expm1(d_min);
}

double separable_bound(double b) {
  if (b <= 1.0) return 0.0;
  return 0.5 * (b - 1.0) * std::log((b + 1.0) / (b - 1.0));
}

std::string describe_sf(const TwoModeStandardForm& sf) {
  std::ostringstream os;
  os << "a=" << format_double(sf.a) << " b=" << format_double(sf.b)
     << " c=" << format_double(sf.c) << " d=" << format_double(sf.d);
  return os.str();
}

struct ChunkStats {
  std::uint64_t samples = 0;
  std::uint64_t violations = 0;
  std::uint64_t rejections = 0;
  std::vector<double> margins;
  std::map<std::string, std::uint64_t> counts;
  std::vector<std::string> violation_notes;
  std::vector<std::string> rows;  // uncapped output lines (figure data)
};

// Deterministic chunked Monte Carlo: chunk k uses Rng::substream(seed, k) and
// results merge in chunk order, so thread count never changes the outcome.
ChunkStats run_chunked(std::uint64_t n, std::uint64_t chunk_size, int threads,
                       const std::function<void(std::uint64_t, std::uint64_t, ChunkStats&)>& body) {
  const std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<ChunkStats> partial(n_chunks);
  int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(1, std::min<int>(t, static_cast<int>(n_chunks)));

  auto worker = [&](int w) {
    for (std::uint64_t k = w; k < n_chunks; k += t) {
      const std::uint64_t count = std::min(chunk_size, n - k * chunk_size);
      body(k, count, partial[k]);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(t - 1);
  for (int w = 1; w < t; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& th : pool) th.join();

  ChunkStats merged;
  for (auto& p : partial) {
    merged.samples += p.samples;
    merged.violations += p.violations;
    merged.rejections += p.rejections;
    merged.margins.insert(merged.margins.end(), p.margins.begin(), p.margins.end());
    for (auto& [key, val] : p.counts) merged.counts[key] += val;
    for (auto& note : p.violation_notes) {
      if (merged.violation_notes.size() < kMaxStoredViolations) {
        merged.violation_notes.push_back(note);
      }
    }
    merged.rows.insert(merged.rows.end(), std::make_move_iterator(p.rows.begin()),
                       std::make_move_iterator(p.rows.end()));
  }
  return merged;
}

BoundReport finalize(std::string suite, double slack, ChunkStats&& stats) {
  BoundReport rep;
  rep.suite = std::move(suite);
  rep.slack = slack;
  rep.n_samples = stats.samples;
  rep.n_violations = stats.violations;
  rep.counts = std::move(stats.counts);
  rep.violations = std::move(stats.violation_notes);
  rep.counts["rejections"] = stats.rejections;
  if (!stats.margins.empty()) {
    const auto [lo_it, hi_it] = std::minmax_element(stats.margins.begin(), stats.margins.end());
    rep.worst_margin = *hi_it;
    rep.hist_lo = *lo_it;
    rep.hist_hi = *hi_it;
    rep.histogram.assign(kHistogramBins, 0);
    const double width = std::max(rep.hist_hi - rep.hist_lo, 1e-300);
    for (double m : stats.margins) {
      int bin = static_cast<int>((m - rep.hist_lo) / width * kHistogramBins);
      bin = std::clamp(bin, 0, kHistogramBins - 1);
      ++rep.histogram[bin];
    }
  }
  return rep;
}

}  // namespace

BoundReport verify_asymmetry(std::uint64_t n, const VerifyConfig& cfg) {
  constexpr double kSlack = 1e-9;
  ChunkStats stats = run_chunked(
      n, 512, cfg.threads, [&](std::uint64_t chunk, std::uint64_t count, ChunkStats& out) {
        SamplerConfig sc{Rng::substream(cfg.seed, chunk).next_u64(), cfg.a_max, cfg.b_max,
                         StateClass::any, static_cast<int>(count)};
        StateSampler sampler(sc);
        for (std::uint64_t i = 0; i < count; ++i) {
          const TwoModeStandardForm sf = sampler.sample();
          const DirectionalDiscord dd = discord_of_sf(sf);
          const double d_max = std::max(dd.d_left, dd.d_right);
          const double d_min = std::min(dd.d_left, dd.d_right);
          const double margin = (d_max - d_min) - asymmetry_bound(d_min);
          out.margins.push_back(margin);
          ++out.samples;
          if (margin > kSlack) {
            ++out.violations;
            out.violation_notes.push_back("asymmetry: " + describe_sf(sf));
          }
        }
        out.rejections += sampler.rejections();
      });

  // squeezed thermal witnesses at s = 8 sit within 1e-2 of saturation
  for (double r : {0.5, 1.0, 2.0, 4.0}) {
    const TwoModeStandardForm sf = standard_form(squeezed_thermal(r, 8.0));
    const DirectionalDiscord dd = discord_of_sf(sf);
    const double gap =
        asymmetry_bound(std::min(dd.d_left, dd.d_right)) -
        (std::max(dd.d_left, dd.d_right) - std::min(dd.d_left, dd.d_right));
    ++stats.samples;
    ++stats.counts["injected_eq6"];
    stats.margins.push_back(-gap);
    if (gap > 1e-2 || gap < -kSlack) {
      ++stats.violations;
      stats.violation_notes.push_back("asymmetry saturation: r=" + format_double(r) +
                                      " gap=" + format_double(gap));
    }
  }
  return finalize("asymmetry", kSlack, std::move(stats));
}

BoundReport verify_separable_bound(std::uint64_t n, const VerifyConfig& cfg) {
  constexpr double kSlack = 1e-6;
  auto check = [&](const TwoModeStandardForm& sf, ChunkStats& out, const char* tag) {
    const DirectionalDiscord dd = discord_of_sf(sf);
    const double bound_b = separable_bound(sf.b);
    const double inter = entropy_f(sf.b) - entropy_f(sf.a + sf.b - 1.0) +
                         entropy_f((2.0 * sf.a + sf.b - 1.0) / (1.0 + sf.b));
    const double margin = std::max({dd.d_left - bound_b, dd.d_left - 1.0, dd.d_left - inter});
    out.margins.push_back(margin);
    ++out.samples;
    if (margin > kSlack) {
      ++out.violations;
      out.violation_notes.push_back(std::string(tag) + ": " + describe_sf(sf));
    }
    return bound_b - dd.d_left;  // distance to the single-marginal bound
  };

  ChunkStats stats = run_chunked(
      n, 512, cfg.threads, [&](std::uint64_t chunk, std::uint64_t count, ChunkStats& out) {
        SamplerConfig sc{Rng::substream(cfg.seed, chunk).next_u64(), cfg.a_max, cfg.b_max,
                         StateClass::separable, static_cast<int>(count)};
        StateSampler sampler(sc);
        for (std::uint64_t i = 0; i < count; ++i) check(sampler.sample(), out, "separable");
        out.rejections += sampler.rejections();
      });

  for (double a : {10.0, 100.0, 1000.0}) {
    for (double b : {1.5, 2.0, 3.0, 5.0}) {
      const TwoModeStandardForm sf = standard_form(separable_extremal(a, b));
      const double gap = check(sf, stats, "extremal");
      ++stats.counts["injected_extremal"];
      if (a >= 1000.0 && gap > 1e-2) {
        ++stats.violations;
        stats.violation_notes.push_back("extremal saturation: a=" + format_double(a) +
                                        " b=" + format_double(b) + " gap=" + format_double(gap));
      }
    }
  }
  return finalize("separable_bound", kSlack, std::move(stats));
}

BoundReport verify_entangled_bounds(std::uint64_t n, const VerifyConfig& cfg) {
  constexpr double kSlack = 1e-5;
  ChunkStats stats = run_chunked(
      n, 16, cfg.threads, [&](std::uint64_t chunk, std::uint64_t count, ChunkStats& out) {
        Rng chunk_rng = Rng::substream(cfg.seed, chunk);
        SamplerConfig sc{chunk_rng.next_u64(), cfg.a_max, cfg.b_max, StateClass::entangled,
                         static_cast<int>(count)};
        StateSampler sampler(sc);
        for (std::uint64_t i = 0; i < count; ++i) {
          const TwoModeStandardForm sf = sampler.sample();
          const DirectionalDiscord dd = discord_of_sf(sf);
          GeofOptions gopts;
          gopts.seed = chunk_rng.next_u64();
          const GeofResult geof = geof_two_mode_numeric(sf.to_cm(), gopts);
          const DiscordBounds bounds = discord_bounds_given_geof(std::max(geof.value, 1e-12));
          const double margin = std::max(bounds.lower - dd.d_left, dd.d_left - bounds.upper);
          out.margins.push_back(margin);
          ++out.samples;
          if (!geof.bracket_consistent) ++out.counts["bracket_inversions"];
          if (margin > kSlack) {
            ++out.violations;
            out.violation_notes.push_back("eq7 sandwich: " + describe_sf(sf) +
                                          " EG=" + format_double(geof.value) +
                                          " D=" + format_double(dd.d_left));
          }
        }
        out.rejections += sampler.rejections();
      });
  return finalize("entangled_bounds", kSlack, std::move(stats));
}

BoundReport verify_oracle(std::uint64_t n, const VerifyConfig& cfg) {
  constexpr double kSlack = 1e-7;
  ChunkStats stats = run_chunked(
      n, 128, cfg.threads, [&](std::uint64_t chunk, std::uint64_t count, ChunkStats& out) {
        SamplerConfig sc{Rng::substream(cfg.seed, chunk).next_u64(), cfg.a_max, cfg.b_max,
                         StateClass::any, static_cast<int>(count)};
        StateSampler sampler(sc);
        for (std::uint64_t i = 0; i < count; ++i) {
          const TwoModeStandardForm sf = sampler.sample();
          const EminResult closed = emin_closed(sf);
          const EminNumericResult numeric = emin_numeric(sf);
          const double rel = std::abs(numeric.value - closed.value) / closed.value;
          out.margins.push_back(rel - kSlack);
          ++out.samples;
          ++out.counts[closed.branch == EminCase::general_case ? "branch_general"
                                                               : "branch_homodyne"];
          if (!numeric.converged) ++out.counts["numeric_nonconverged"];
          if (rel > kSlack) {
            ++out.violations;
            out.violation_notes.push_back("oracle: " + describe_sf(sf) +
                                          " rel=" + format_double(rel));
          }
        }
        out.rejections += sampler.rejections();
      });
  return finalize("oracle", kSlack, std::move(stats));
}

void figure_data(FigurePanel panel, std::uint64_t n, std::ostream& out, const VerifyConfig& cfg) {
  if (panel == FigurePanel::left) {
    out << "marginal_entropy,discord_left,bound\n";
    ChunkStats stats = run_chunked(
        n, 512, cfg.threads, [&](std::uint64_t chunk, std::uint64_t count, ChunkStats& res) {
          SamplerConfig sc{Rng::substream(cfg.seed, chunk).next_u64(), cfg.a_max, cfg.b_max,
                           StateClass::separable, static_cast<int>(count)};
          StateSampler sampler(sc);
          for (std::uint64_t i = 0; i < count; ++i) {
            const TwoModeStandardForm sf = sampler.sample();
            const DirectionalDiscord dd = discord_of_sf(sf);
            std::ostringstream line;
            line << format_double(entropy_f(sf.b)) << ',' << format_double(dd.d_left) << ','
                 << format_double(separable_bound(sf.b)) << '\n';
            res.rows.push_back(line.str());
            ++res.samples;
          }
        });
    for (const auto& row : stats.rows) out << row;
    return;
  }

  out << "geof,discord_left,lower,upper\n";
  ChunkStats stats = run_chunked(
      n, 16, cfg.threads, [&](std::uint64_t chunk, std::uint64_t count, ChunkStats& res) {
        Rng chunk_rng = Rng::substream(cfg.seed, chunk);
        SamplerConfig sc{chunk_rng.next_u64(), cfg.a_max, cfg.b_max, StateClass::entangled,
                         static_cast<int>(count)};
        StateSampler sampler(sc);
        for (std::uint64_t i = 0; i < count; ++i) {
          const TwoModeStandardForm sf = sampler.sample();
          const DirectionalDiscord dd = discord_of_sf(sf);
          GeofOptions gopts;
          gopts.seed = chunk_rng.next_u64();
          const GeofResult geof = geof_two_mode_numeric(sf.to_cm(), gopts);
          const DiscordBounds bounds = discord_bounds_given_geof(std::max(geof.value, 1e-12));
          std::ostringstream line;
          line << format_double(geof.value) << ',' << format_double(dd.d_left) << ','
               << format_double(bounds.lower) << ',' << format_double(bounds.upper) << '\n';
          res.rows.push_back(line.str());
          ++res.samples;
        }
      });
  for (const auto& row : stats.rows) out << row;
}

}  // namespace gqc
