#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dtcmc/carrier.hpp"
#include "dtcmc/converter.hpp"
#include "dtcmc/dtc_core.hpp"
#include "dtcmc/errors.hpp"
#include "dtcmc/machine.hpp"
#include "dtcmc/modulator.hpp"

namespace dtcmc {

// Stiff balanced three-phase supply.
struct GridSource {
  double V_phase_rms = 220.0;  // [V]
  double f_grid = 50.0;        // [Hz]
  double phase_offset = 0.0;   // [rad]

  double peak() const;
  double angle(double t) const;
};

/// v_a = Vm cos(2 pi f t + phi0); b and c lag by 120 and 240 degrees.
Three grid_voltages(const GridSource& src, double t);
/// Exact integral of the phase voltages over [t0, t1] [V s].
Three grid_volt_seconds(const GridSource& src, double t0, double t1);

struct TorqueStep {
  double t = 0.0;      // [s]
  double T_ref = 0.0;  // [N m]
};

struct ControllerConfig {
  double B_phi = 0.01;   // flux band half-width [Wb]
  double B_H = 0.25;     // torque band half-width [N m]
  double phi_ref = 1.14; // [Wb]
  bool include_rs_drop = true;
  std::vector<TorqueStep> torque_steps{{0.0, 10.0}};

  /// Piecewise-constant reference; zero before the first step.
  double torque_ref_at(double t) const;
};

enum class ControlMode { kFixedFrequency, kVariableFrequency };

struct AnalysisSettings {
  double settle_time = 0.2;      // start of the first metrics window [s]
  double segment_settle = 0.05;  // skip after each later torque step [s]
  int thd_max_order = 40;
};

struct Scenario {
  std::string name = "scenario";
  MachineParams machine;
  LoadModel load;
  GridSource grid;
  ControllerConfig controller;
  CarrierConfig carrier;
  std::optional<double> max_torque_slope;  // overrides the machine-based estimate
  bool allow_carrier_violation = false;
  double T_s = 50e-6;
  ControlMode mode = ControlMode::kFixedFrequency;
  double duration = 0.6;
  double max_substep = 5e-6;
  int capture_decimation = 1;
  AnalysisSettings analysis;

  /// Throws ValidationError naming the first offending field.
  void validate() const;
  bool carrier_active() const { return mode == ControlMode::kFixedFrequency && carrier.enabled(); }
};

/// (3/2) p Lm/(sigma Ls Lr) |phi_r| |V|max with |phi_r| ~ phi_ref Lm/Ls and
/// |V|max = (2/3) sqrt(3) Vm, the longest output vector the converter makes.
double estimate_max_torque_slope(const Scenario& scn);

/// Carrier sizing check using the override slope when present.
CarrierCheck check_carrier(const Scenario& scn);

// Thrown by run_scenario when the carrier violates the sizing rule and the
// scenario does not allow it.
class CarrierViolation : public ValidationError {
 public:
  explicit CarrierViolation(const CarrierCheck& check)
      : ValidationError("carrier violates the sizing rule: " + check.describe(), "carrier"),
        check_(check) {}
  const CarrierCheck& check() const noexcept { return check_; }

 private:
  CarrierCheck check_;
};

// One applied configuration interval.
struct AppliedInterval {
  double t_start;
  double duration;
  int cfg_id;
};

struct SimResult {
  Scenario scenario;
  CarrierCheck carrier_check;
  long ticks = 0;
  double sample_period = 0.0;

  // Captured at the start of every capture_decimation-th control period.
  std::vector<double> t;
  std::vector<double> Te, Te_est, T_ref, T_ref_mod;
  std::vector<double> phi_alpha, phi_beta, phi_mag;
  std::vector<double> ia_s, ib_s, ic_s;
  std::vector<double> omega_m;
  std::vector<double> v_in_a;
  std::vector<double> i_in_a;      // period-averaged input current, phase a
  std::vector<double> p_in_avg;    // period-averaged grid power [W]
  std::vector<double> p_in_inst;   // grid power at the sample instant [W]
  std::vector<double> p_out_inst;  // machine terminal power at the sample instant [W]
  std::vector<int> cfg;            // leading configuration id of the period
  std::vector<int> vsi_vec;
  std::vector<int> flux_sector;
  std::vector<int> input_sector;

  // Every control period, regardless of decimation.
  std::vector<int> tick_cfg;
  // Every non-empty plant integration interval.
  std::vector<AppliedInterval> intervals;

  std::size_t size() const { return t.size(); }
};

/// Runs the closed loop from a de-energised machine. Throws CarrierViolation,
/// ValidationError or DivergenceError.
SimResult run_scenario(const Scenario& scn);

}  // namespace dtcmc
