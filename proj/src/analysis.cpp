#include "dtcmc/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <numeric>

#include "dtcmc/converter.hpp"
#include "dtcmc/errors.hpp"

namespace dtcmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// fftw planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::complex<double>> real_fft(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> in(x.begin(), x.end());
  std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

// Single-frequency DFT, amplitude calibrated: a sinusoid of amplitude A at
// exactly f over whole periods returns magnitude A.
std::complex<double> phasor(std::span<const double> x, double fs, double f) {
  std::complex<double> acc{};
  const double w = kTwoPi * f / fs;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double a = w * static_cast<double>(n);
    acc += x[n] * std::complex<double>(std::cos(a), -std::sin(a));
  }
  return acc * (2.0 / static_cast<double>(x.size()));
}

double rms(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return x.empty() ? 0.0 : std::sqrt(s / static_cast<double>(x.size()));
}

// Energy of the least-squares fit a cos(wt) + b sin(wt). Unlike |phasor| it
// accounts for the negative-frequency image, so for a pure sinusoid it peaks
// at the true frequency even over a few periods.
double fit_energy(std::span<const double> x, double fs, double f) {
  double C = 0, S = 0, cc = 0, ss = 0, cs = 0;
  const double w = kTwoPi * f / fs;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const double a = w * static_cast<double>(n);
    const double c = std::cos(a), s = std::sin(a);
    C += x[n] * c;
    S += x[n] * s;
    cc += c * c;
    ss += s * s;
    cs += c * s;
  }
  const double det = cc * ss - cs * cs;
  if (!(det > 1e-12 * cc * ss)) return 0.0;
  return (ss * C * C - 2.0 * cs * C * S + cc * S * S) / det;
}

double find_fundamental(std::span<const double> x, double fs, std::optional<double> hint) {
  const auto spec = real_fft(x);
  const double df = fs / static_cast<double>(x.size());
  std::size_t lo = 1, hi = spec.size() - 1;
  if (hint) {
    lo = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(0.5 * *hint / df)));
    hi = std::min(hi, static_cast<std::size_t>(std::ceil(1.5 * *hint / df)));
  }
  if (lo > hi) throw DomainError("fundamental search range is empty");
  std::size_t best = lo;
  for (std::size_t k = lo; k <= hi; ++k) {
    if (std::abs(spec[k]) > std::abs(spec[best])) best = k;
  }
  const double peak = std::abs(spec[best]) * 2.0 / static_cast<double>(x.size());
  if (!(peak > 1e-9 * std::max(1.0, rms(x)))) throw DomainError("no fundamental component found");

  // Golden-section refinement of the peak between the neighbouring bins.
  double a = (static_cast<double>(best) - 1.0) * df;
  double b = (static_cast<double>(best) + 1.0) * df;
  a = std::max(a, 0.5 * df);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = fit_energy(x, fs, c), fd = fit_energy(x, fs, d);
  for (int it = 0; it < 60 && (b - a) > 1e-9 * df; ++it) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a);
      fc = fit_energy(x, fs, c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a);
      fd = fit_energy(x, fs, d);
    }
  }
  return 0.5 * (a + b);
}

// Samples covering the largest whole number of periods of f (at least 2).
std::pair<std::size_t, int> whole_periods(std::size_t len, double fs, double f) {
  if (!(f > 0.0) || !(fs > 0.0)) throw DomainError("frequencies must be positive");
  const int m = static_cast<int>(std::floor(static_cast<double>(len) * f / fs + 1e-9));
  if (m < 2) throw DomainError("window shorter than two fundamental periods");
  auto n = static_cast<std::size_t>(std::llround(m * fs / f));
  n = std::min(n, len);
  return {n, m};
}

}  // namespace

SpectrumReport spectrum(std::span<const double> x, double fs, const SpectrumOptions& opts) {
  if (x.size() < 4) throw DomainError("window too short for a spectrum");
  const double f0 = opts.fundamental_hz ? *opts.fundamental_hz
                                        : find_fundamental(x, fs, opts.search_hint_hz);
  const auto [n, m] = whole_periods(x.size(), fs, f0);
  const auto win = x.first(n);
  const auto bins = real_fft(win);

  SpectrumReport rep;
  rep.window_samples = n;
  rep.periods = m;
  rep.freqs.resize(bins.size());
  rep.magnitude.resize(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    rep.freqs[k] = static_cast<double>(k) * fs / static_cast<double>(n);
    const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
    rep.magnitude[k] = std::abs(bins[k]) * (edge ? 1.0 : 2.0) / static_cast<double>(n);
  }
  rep.fundamental_hz = rep.freqs[static_cast<std::size_t>(m)];
  rep.fundamental_mag = rep.magnitude[static_cast<std::size_t>(m)];
  if (!(rep.fundamental_mag > 1e-12 * std::max(1.0, rms(win)))) {
    throw DomainError("fundamental magnitude vanishes");
  }
  double harm = 0.0;
  for (int h = 0; h <= opts.max_order; ++h) {
    const auto k = static_cast<std::size_t>(h) * static_cast<std::size_t>(m);
    if (k >= rep.magnitude.size()) break;
    rep.harmonic_mag.push_back(rep.magnitude[k]);
    if (h >= 2) harm += rep.magnitude[k] * rep.magnitude[k];
  }
  rep.thd = std::sqrt(harm) / rep.fundamental_mag;
  return rep;
}

RippleReport torque_ripple(std::span<const double> x) {
  if (x.empty()) throw DomainError("empty ripple window");
  RippleReport r;
  r.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.std = std::sqrt(ss / static_cast<double>(x.size()));
  const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
  r.peak_to_peak = *mx - *mn;
  return r;
}

SwitchingStats switching_stats(std::span<const int> cfg_ids, std::span<const double> timestamps,
                               std::optional<double> end_time) {
  if (cfg_ids.size() != timestamps.size()) throw DomainError("configuration and time series differ in length");
  SwitchingStats st;
  if (cfg_ids.empty()) return st;
  const double t_end = end_time.value_or(timestamps.back());
  st.duration = t_end - timestamps.front();

  const auto& all = enumerate_configurations();

  std::vector<double> events;
  for (std::size_t i = 1; i < cfg_ids.size(); ++i) {
    if (cfg_ids[i] == cfg_ids[i - 1]) continue;
    if (cfg_ids[i] < 1 || cfg_ids[i] > 27 || cfg_ids[i - 1] < 1 || cfg_ids[i - 1] > 27) {
      throw DomainError("configuration id out of range");
    }
    const auto& a = all[static_cast<std::size_t>(cfg_ids[i - 1] - 1)].assignment();
    const auto& b = all[static_cast<std::size_t>(cfg_ids[i] - 1)].assignment();
    for (int k = 0; k < 3; ++k) st.cell_commutations[k] += a[k] != b[k] ? 1 : 0;
    ++st.commutations;
    events.push_back(timestamps[i]);
  }
  if (st.duration > 0.0) {
    st.mean_frequency_hz = static_cast<double>(st.commutations) / (2.0 * st.duration);
    for (int k = 0; k < 3; ++k) {
      st.cell_frequency_hz[k] = static_cast<double>(st.cell_commutations[k]) / (2.0 * st.duration);
    }
  }
  if (events.size() >= 3) {
    std::vector<double> gaps(events.size() - 1);
    for (std::size_t i = 1; i < events.size(); ++i) gaps[i - 1] = events[i] - events[i - 1];
    const RippleReport g = torque_ripple(gaps);
    st.interval_cov = g.mean > 0.0 ? g.std / g.mean : 0.0;
  }
  return st;
}

double displacement_power_factor(std::span<const double> v, std::span<const double> i, double fs,
                                 double fundamental_hz) {
  if (v.size() != i.size()) throw DomainError("voltage and current series differ in length");
  const auto [n, m] = whole_periods(v.size(), fs, fundamental_hz);
  (void)m;
  const auto pv = phasor(v.first(n), fs, fundamental_hz);
  const auto pi = phasor(i.first(n), fs, fundamental_hz);
  if (!(std::abs(pv) > 1e-12 * std::max(1.0, rms(v.first(n)))) ||
      !(std::abs(pi) > 1e-12 * std::max(1.0, rms(i.first(n))))) {
    throw DomainError("fundamental not detectable");
  }
  return std::real(pv * std::conj(pi)) / (std::abs(pv) * std::abs(pi));
}

FluxTrajectoryMetrics flux_trajectory_metrics(std::span<const double> alpha,
                                              std::span<const double> beta) {
  if (alpha.empty() || alpha.size() != beta.size()) throw DomainError("empty or mismatched flux window");
  std::vector<double> r(alpha.size());
  for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::hypot(alpha[k], beta[k]);
  const RippleReport s = torque_ripple(r);
  return {s.mean, s.std};
}

}  // namespace dtcmc
