#pragma once

#include <complex>
#include <functional>

namespace dtcmc {

// Stationary-frame (alpha, beta) space vector, amplitude-invariant scaling.
using Vec2 = std::complex<double>;

// Raw electrical and mechanical constants of a cage induction machine.
// Defaults are the 1.5 kW, 2-pole, 220 V / 50 Hz test machine.
struct MachineSpec {
  double Rs = 4.85;     // stator resistance [ohm]
  double Rr = 3.805;    // rotor resistance [ohm]
  double Ls = 0.274;    // stator self inductance [H]
  double Lr = 0.274;    // rotor self inductance [H]
  double Lm = 0.258;    // mutual inductance [H]
  int p = 1;            // pole pairs
  double J = 0.02;      // rotor inertia [kg m^2]
  double f_visc = 0.001;  // viscous friction [N m s/rad]
};

/// Total leakage factor 1 - Lm^2 / (Ls Lr). Throws ValidationError when the
/// coupling is non-physical (Lm^2 >= Ls Lr) or an inductance is not positive.
double derive_sigma(double Ls, double Lr, double Lm);

// Validated machine parameters. sigma is derived once at construction and
// always equals 1 - Lm^2/(Ls Lr).
class MachineParams {
 public:
  MachineParams() : MachineParams(MachineSpec{}) {}
  explicit MachineParams(const MachineSpec& spec);

  const MachineSpec& spec() const noexcept { return spec_; }
  double Rs() const noexcept { return spec_.Rs; }
  double Rr() const noexcept { return spec_.Rr; }
  double Ls() const noexcept { return spec_.Ls; }
  double Lr() const noexcept { return spec_.Lr; }
  double Lm() const noexcept { return spec_.Lm; }
  int p() const noexcept { return spec_.p; }
  double J() const noexcept { return spec_.J; }
  double f_visc() const noexcept { return spec_.f_visc; }
  double sigma() const noexcept { return sigma_; }

 private:
  MachineSpec spec_;
  double sigma_;
};

struct MachineState {
  Vec2 phi_s{};          // stator flux linkage [Wb]
  Vec2 phi_r{};          // rotor flux linkage, stationary frame [Wb]
  double omega_m = 0.0;  // mechanical speed [rad/s]
  double theta_m = 0.0;  // mechanical angle [rad]
};

enum class LoadMode { kSpeedLocked, kFree };

struct LoadModel {
  LoadMode mode = LoadMode::kSpeedLocked;
  double T_load = 0.0;        // constant load torque [N m]
  double locked_speed = 0.0;  // initial speed; held constant when locked
};

struct Currents {
  Vec2 stator;
  Vec2 rotor;
};

Currents machine_currents(const MachineState& s, const MachineParams& mp);

/// Te = (3/2) p (phi_s x i_s). Positive torque accelerates the rotor.
double electromagnetic_torque(const MachineState& s, const MachineParams& mp);

MachineState state_derivative(const MachineState& s, Vec2 v_s,
                              const MachineParams& mp, const LoadModel& load);

struct IntegratorOptions {
  double max_substep = 5e-6;    // [s]
  double flux_ceiling = 20.0;   // [Wb]
  double speed_ceiling = 1e4;   // [rad/s]
};

// Stator voltage as a function of absolute time.
using VoltageSource = std::function<Vec2(double)>;
// Called after every substep with the substep end time and state.
using SubstepObserver = std::function<void(double, const MachineState&)>;

/// Classical RK4 over [t0, t0 + duration] using ceil(duration / max_substep)
/// equal substeps. Throws DivergenceError when the state leaves the
/// configured envelope and ValidationError on negative duration.
MachineState integrate_interval(const MachineState& s, const VoltageSource& v_s,
                                double t0, double duration,
                                const MachineParams& mp, const LoadModel& load,
                                const IntegratorOptions& opts,
                                const SubstepObserver& observer = {});

/// Constant-voltage convenience form.
MachineState integrate_interval(const MachineState& s, Vec2 v_s, double duration,
                                const MachineParams& mp, const LoadModel& load,
                                double max_substep);

}  // namespace dtcmc
