#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace dtcmc {

struct SpectrumOptions {
  // Use this fundamental exactly (e.g. the grid frequency).
  std::optional<double> fundamental_hz;
  // Otherwise search for the largest peak, near this frequency if given.
  std::optional<double> search_hint_hz;
  int max_order = 40;
};

struct SpectrumReport {
  std::vector<double> freqs;      // uniform bins [Hz]
  std::vector<double> magnitude;  // peak amplitude per bin, signal units
  double fundamental_hz = 0.0;
  double fundamental_mag = 0.0;
  std::vector<double> harmonic_mag;  // index h = harmonic order, [0] is DC
  double thd = 0.0;
  std::size_t window_samples = 0;
  int periods = 0;
};

/// Rectangular-window amplitude spectrum over the largest whole number of
/// fundamental periods that fits in `x`. THD is taken over harmonics
/// 2..max_order. Throws DomainError when fewer than two periods fit or no
/// fundamental can be found.
SpectrumReport spectrum(std::span<const double> x, double fs, const SpectrumOptions& opts = {});

struct RippleReport {
  double mean = 0.0;
  double std = 0.0;
  double peak_to_peak = 0.0;
};

RippleReport torque_ripple(std::span<const double> x);

struct SwitchingStats {
  std::array<long, 3> cell_commutations{};    // per output phase A, B, C
  std::array<double, 3> cell_frequency_hz{};  // commutations / (2 duration)
  long commutations = 0;          // instants where the configuration changed
  double duration = 0.0;          // [s]
  double mean_frequency_hz = 0.0; // commutations / (2 duration)
  double interval_cov = 0.0;      // std/mean of times between commutations
};

/// Commutation statistics of a configuration-id sequence. `timestamps[i]` is
/// when `cfg_ids[i]` became active; the window ends at `end_time` (defaults
/// to the last timestamp). One switching cycle is two commutations, so a
/// configuration toggling every 100 us switches at 5 kHz.
SwitchingStats switching_stats(std::span<const int> cfg_ids, std::span<const double> timestamps,
                               std::optional<double> end_time = std::nullopt);

/// Cosine of the angle between the fundamentals of v and i; negative when
/// power flows back into the source. Throws DomainError on < 2 periods or a
/// vanishing fundamental.
double displacement_power_factor(std::span<const double> v, std::span<const double> i, double fs,
                                 double fundamental_hz);

struct FluxTrajectoryMetrics {
  double mean_radius = 0.0;
  double radial_std = 0.0;
};

FluxTrajectoryMetrics flux_trajectory_metrics(std::span<const double> alpha,
                                              std::span<const double> beta);

}  // namespace dtcmc
