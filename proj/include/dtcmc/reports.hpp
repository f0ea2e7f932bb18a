#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtcmc/analysis.hpp"
#include "dtcmc/modulator.hpp"
#include "dtcmc/printed_tables.hpp"
#include "dtcmc/sim.hpp"

namespace dtcmc {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kTimeseriesVersion = 1;
inline constexpr int kSummaryVersion = 1;

// Metrics over one constant-reference stretch of a run.
struct SegmentMetrics {
  double t_start = 0.0;
  double t_end = 0.0;
  double T_ref = 0.0;
  RippleReport torque;
  double torque_estimate_error = 0.0;  // mean |Te_est - Te| [N m]
  double flux_mean_magnitude = 0.0;
  FluxTrajectoryMetrics flux;
  std::optional<SpectrumReport> stator_current;  // phase a
  double mean_grid_power = 0.0;                  // [W]
  std::optional<double> input_displacement_pf;
  SwitchingStats switching;         // control-period level
  SwitchingStats device_switching;  // every applied interval
};

struct RunSummary {
  std::string scenario;
  ControlMode mode = ControlMode::kFixedFrequency;
  long ticks = 0;
  double duration = 0.0;
  double sample_period = 0.0;
  std::optional<CarrierCheck> carrier_check;
  std::vector<SegmentMetrics> segments;
};

/// Metrics for the window [t0, t1) of a run.
SegmentMetrics segment_metrics(const SimResult& res, double t0, double t1, double T_ref);

/// Splits the run at its torque steps: the first window starts after the
/// settle time, later ones after segment_settle following their step.
RunSummary summarize(const SimResult& res);

nlohmann::json to_json(const RunSummary& s);

/// Ratios fixed/baseline per segment plus both power factors.
nlohmann::json compare_summaries(const RunSummary& fixed, const RunSummary& baseline);

// Stable column set, version 1.
const std::vector<std::string>& timeseries_columns();
void write_timeseries_csv(const SimResult& res, std::ostream& out);

void write_table1_csv(std::ostream& out);
void write_table3_csv(const DerivedTable3& t, std::ostream& out);
void write_table3_concordance_csv(const Table3Concordance& c, std::ostream& out);
void write_table2_concordance_csv(const Table2Concordance& c, std::ostream& out);
/// Human-readable dump of the classic table, the derived fixed-frequency
/// table and both concordance reports.
std::string render_tables_text();

}  // namespace dtcmc
