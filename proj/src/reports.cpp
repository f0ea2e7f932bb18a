#include "dtcmc/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dtcmc/errors.hpp"
#include "dtcmc/scenario_io.hpp"

namespace dtcmc {

using nlohmann::json;

namespace {

std::pair<std::size_t, std::size_t> sample_range(const std::vector<double>& t, double t0, double t1) {
  const auto lo = std::lower_bound(t.begin(), t.end(), t0 - 1e-12);
  const auto hi = std::lower_bound(t.begin(), t.end(), t1 - 1e-12);
  return {static_cast<std::size_t>(lo - t.begin()), static_cast<std::size_t>(hi - t.begin())};
}

template <typename T>
std::span<const T> slice(const std::vector<T>& v, std::pair<std::size_t, std::size_t> r) {
  return std::span<const T>(v).subspan(r.first, r.second - r.first);
}

json switching_json(const SwitchingStats& s) {
  return {{"commutations", s.commutations},
          {"cell_commutations", s.cell_commutations},
          {"cell_frequency_hz", s.cell_frequency_hz},
          {"mean_frequency_hz", s.mean_frequency_hz},
          {"interval_cov", s.interval_cov},
          {"duration", s.duration}};
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string config_name(int id) { return enumerate_configurations().at(static_cast<std::size_t>(id - 1)).name(); }

}  // namespace

SegmentMetrics segment_metrics(const SimResult& res, double t0, double t1, double T_ref) {
  SegmentMetrics m;
  m.t_start = t0;
  m.t_end = t1;
  m.T_ref = T_ref;
  const auto r = sample_range(res.t, t0, t1);
  if (r.second <= r.first) throw DomainError("empty metrics window");
  const double fs = 1.0 / res.sample_period;

  m.torque = torque_ripple(slice(res.Te, r));
  double err = 0.0;
  for (std::size_t k = r.first; k < r.second; ++k) err += std::abs(res.Te_est[k] - res.Te[k]);
  m.torque_estimate_error = err / static_cast<double>(r.second - r.first);
  m.flux_mean_magnitude = torque_ripple(slice(res.phi_mag, r)).mean;
  m.flux = flux_trajectory_metrics(slice(res.phi_alpha, r), slice(res.phi_beta, r));
  m.mean_grid_power = torque_ripple(slice(res.p_in_avg, r)).mean;

  try {
    SpectrumOptions opts;
    opts.max_order = res.scenario.analysis.thd_max_order;
    m.stator_current = spectrum(slice(res.ia_s, r), fs, opts);
  } catch (const DomainError&) {
    m.stator_current.reset();
  }
  try {
    m.input_displacement_pf =
        displacement_power_factor(slice(res.v_in_a, r), slice(res.i_in_a, r), fs, res.scenario.grid.f_grid);
  } catch (const DomainError&) {
    m.input_displacement_pf.reset();
  }

  // Control-period level: the leading configuration of every period.
  const double Ts = res.scenario.T_s;
  const auto k0 = static_cast<std::size_t>(std::max(0.0, std::ceil(t0 / Ts - 1e-9)));
  const auto k1 = std::min(res.tick_cfg.size(), static_cast<std::size_t>(std::ceil(t1 / Ts - 1e-9)));
  if (k1 > k0) {
    std::vector<double> ts(k1 - k0);
    for (std::size_t k = k0; k < k1; ++k) ts[k - k0] = static_cast<double>(k) * Ts;
    m.switching = switching_stats(std::span<const int>(res.tick_cfg).subspan(k0, k1 - k0), ts,
                                  static_cast<double>(k1) * Ts);
  }
  std::vector<int> ids;
  std::vector<double> ts;
  for (const auto& iv : res.intervals) {
    if (iv.t_start >= t0 - 1e-12 && iv.t_start < t1 - 1e-12) {
      ids.push_back(iv.cfg_id);
      ts.push_back(iv.t_start);
    }
  }
  if (!ids.empty()) m.device_switching = switching_stats(ids, ts, std::min(t1, res.ticks * Ts));
  return m;
}

RunSummary summarize(const SimResult& res) {
  RunSummary s;
  s.scenario = res.scenario.name;
  s.mode = res.scenario.mode;
  s.ticks = res.ticks;
  s.duration = static_cast<double>(res.ticks) * res.scenario.T_s;
  s.sample_period = res.sample_period;
  if (res.scenario.carrier_active()) s.carrier_check = res.carrier_check;
  if (res.t.empty()) return s;

  const auto& steps = res.scenario.controller.torque_steps;
  const auto& a = res.scenario.analysis;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const double start = j == 0 ? std::max(a.settle_time, steps[j].t)
                                : std::max(a.settle_time, steps[j].t + a.segment_settle);
    const double end = j + 1 < steps.size() ? std::min(steps[j + 1].t, s.duration) : s.duration;
    if (start >= end) continue;
    try {
      s.segments.push_back(segment_metrics(res, start, end, steps[j].T_ref));
    } catch (const DomainError&) {
      // Window holds no samples.
    }
  }
  return s;
}

json to_json(const RunSummary& s) {
  json segs = json::array();
  for (const auto& m : s.segments) {
    json seg = {
        {"t_start", m.t_start},
        {"t_end", m.t_end},
        {"T_ref", m.T_ref},
        {"torque", {{"mean", m.torque.mean}, {"std", m.torque.std}, {"peak_to_peak", m.torque.peak_to_peak}}},
        {"torque_estimate_error", m.torque_estimate_error},
        {"flux", {{"mean_magnitude", m.flux_mean_magnitude},
                  {"mean_radius", m.flux.mean_radius},
                  {"radial_std", m.flux.radial_std}}},
        {"mean_grid_power", m.mean_grid_power},
        {"input_displacement_pf", m.input_displacement_pf ? json(*m.input_displacement_pf) : json(nullptr)},
        {"switching", switching_json(m.switching)},
        {"device_switching", switching_json(m.device_switching)},
    };
    if (m.stator_current) {
      seg["stator_current"] = {{"fundamental_hz", m.stator_current->fundamental_hz},
                               {"fundamental_a", m.stator_current->fundamental_mag},
                               {"thd", m.stator_current->thd}};
    } else {
      seg["stator_current"] = nullptr;
    }
    segs.push_back(std::move(seg));
  }
  json out = {{"format", "dtcmc-summary"},
              {"version", kSummaryVersion},
              {"tool_version", kToolVersion},
              {"scenario", s.scenario},
              {"mode", mode_name(s.mode)},
              {"ticks", s.ticks},
              {"duration", s.duration},
              {"sample_period", s.sample_period},
              {"segments", segs}};
  if (s.carrier_check) {
    out["carrier_check"] = {{"ok", s.carrier_check->ok},
                            {"max_torque_slope", s.carrier_check->max_torque_slope},
                            {"bound", s.carrier_check->bound}};
  } else {
    out["carrier_check"] = nullptr;
  }
  return out;
}

json compare_summaries(const RunSummary& fixed, const RunSummary& baseline) {
  auto ratio = [](double a, double b) { return b != 0.0 ? json(a / b) : json(nullptr); };
  json segs = json::array();
  const std::size_t n = std::min(fixed.segments.size(), baseline.segments.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& f = fixed.segments[i];
    const auto& b = baseline.segments[i];
    json seg = {{"t_start", f.t_start},
                {"t_end", f.t_end},
                {"T_ref", f.T_ref},
                {"torque_std_ratio", ratio(f.torque.std, b.torque.std)},
                {"switching_cov_ratio", ratio(f.switching.interval_cov, b.switching.interval_cov)},
                {"mean_frequency_hz", {{"fixed", f.switching.mean_frequency_hz},
                                       {"baseline", b.switching.mean_frequency_hz}}},
                {"mean_grid_power", {{"fixed", f.mean_grid_power}, {"baseline", b.mean_grid_power}}}};
    seg["thd_ratio"] = f.stator_current && b.stator_current
                           ? ratio(f.stator_current->thd, b.stator_current->thd)
                           : json(nullptr);
    seg["input_displacement_pf"] = {
        {"fixed", f.input_displacement_pf ? json(*f.input_displacement_pf) : json(nullptr)},
        {"baseline", b.input_displacement_pf ? json(*b.input_displacement_pf) : json(nullptr)}};
    segs.push_back(std::move(seg));
  }
  return {{"format", "dtcmc-compare"},
          {"version", kSummaryVersion},
          {"scenario", fixed.scenario},
          {"segments", segs}};
}

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> cols{"t",     "Te",    "Te_est", "phi_alpha", "phi_beta",
                                             "phi_mag", "ia_s", "ib_s",  "ic_s",      "v_in_a",
                                             "i_in_a", "cfg",   "vsi_vec", "flux_sector",
                                             "input_sector"};
  return cols;
}

void write_timeseries_csv(const SimResult& res, std::ostream& out) {
  out << "# dtcmc timeseries v" << kTimeseriesVersion << "\n";
  out << "# units: s,N*m,N*m,Wb,Wb,Wb,A,A,A,V,A,-,-,-,-; i_in_a is averaged over the control period; "
         "cfg is the first configuration applied in the period\n";
  const auto& cols = timeseries_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\n";
  for (std::size_t k = 0; k < res.size(); ++k) {
    out << num(res.t[k]) << ',' << num(res.Te[k]) << ',' << num(res.Te_est[k]) << ','
        << num(res.phi_alpha[k]) << ',' << num(res.phi_beta[k]) << ',' << num(res.phi_mag[k]) << ','
        << num(res.ia_s[k]) << ',' << num(res.ib_s[k]) << ',' << num(res.ic_s[k]) << ','
        << num(res.v_in_a[k]) << ',' << num(res.i_in_a[k]) << ',' << config_name(res.cfg[k]) << ','
        << res.vsi_vec[k] << ',' << res.flux_sector[k] << ',' << res.input_sector[k] << "\n";
  }
}

void write_table1_csv(std::ostream& out) {
  static const int rows[6][2] = {{1, 1}, {1, 0}, {1, -1}, {0, 1}, {0, 0}, {0, -1}};
  out << "phi,tau,sector1,sector2,sector3,sector4,sector5,sector6\n";
  for (int r = 0; r < 6; ++r) {
    out << rows[r][0] << ',' << rows[r][1];
    for (int s = 0; s < 6; ++s) out << ',' << vsi_name(table1()[r][s]);
    out << "\n";
  }
}

void write_table3_csv(const DerivedTable3& t, std::ostream& out) {
  out << "vector,I,II,III,IV,V,VI\n";
  for (int k = 1; k <= 6; ++k) {
    out << vsi_name(static_cast<VsiVector>(k));
    for (int s = 0; s < 6; ++s) out << ",\"" << t.active[k - 1][s].to_string() << '"';
    out << "\n";
  }
  for (VsiVector z : {VsiVector::V0, VsiVector::V7}) {
    out << vsi_name(z);
    for (int s = 0; s < 6; ++s) out << ",min-commutation zero";
    out << "\n";
  }
}

void write_table3_concordance_csv(const Table3Concordance& c, std::ostream& out) {
  out << "vector,sector,printed,derived,status\n";
  for (const auto& cell : c.cells) {
    const char* status = cell.status == CellStatus::kMatch      ? "match"
                         : cell.status == CellStatus::kMismatch ? "mismatch"
                                                                : "admissible_zero";
    out << vsi_name(cell.vector) << ',' << sector_roman(cell.sector) << ",\"" << cell.printed << "\",\""
        << cell.derived << "\"," << status << "\n";
  }
}

void write_table2_concordance_csv(const Table2Concordance& c, std::ostream& out) {
  out << "row,field,printed,generated\n";
  for (const auto& f : c.findings) {
    out << f.row << ',' << f.field << ",\"" << f.printed << "\",\"" << f.generated << "\"\n";
  }
}

std::string render_tables_text() {
  std::ostringstream os;
  static const char* labels[6] = {"phi=1 tau=1 ", "phi=1 tau=0 ", "phi=1 tau=-1", "phi=0 tau=1 ",
                                  "phi=0 tau=0 ", "phi=0 tau=-1"};
  os << "Classic DTC table (flux sectors 1..6)\n";
  for (int r = 0; r < 6; ++r) {
    os << "  " << labels[r];
    for (int s = 0; s < 6; ++s) os << ' ' << vsi_name(table1()[r][s]);
    os << "\n";
  }
  const auto& t3 = table3();
  os << "\nDerived matrix-converter table (input sectors I..VI)\n";
  for (int k = 1; k <= 6; ++k) {
    os << "  " << vsi_name(static_cast<VsiVector>(k));
    for (int s = 0; s < 6; ++s) os << " | " << t3.active[k - 1][s].to_string();
    os << "\n";
  }
  os << "  V0/V7: zero configuration with the fewest commutations from the previous state\n";

  const auto c3 = compare_table3(t3);
  os << "\nPublished fixed-frequency table concordance: " << c3.mismatches() << " mismatched cell(s)\n";
  for (const auto& cell : c3.cells) {
    if (cell.status != CellStatus::kMismatch) continue;
    os << "  " << vsi_name(cell.vector) << " sector " << sector_roman(cell.sector) << ": printed \""
       << cell.printed << "\", derived \"" << cell.derived << "\"\n";
  }
  const auto c2 = check_table2();
  os << "\nPublished configuration table concordance: " << c2.findings.size() << " finding(s)\n";
  for (const auto& f : c2.findings) {
    os << "  row " << f.row << " " << f.field << ": printed \"" << f.printed << "\", generated \""
       << f.generated << "\"\n";
  }
  return os.str();
}

}  // namespace dtcmc
