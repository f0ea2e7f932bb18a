#include "dtcmc/machine.hpp"

#include <cmath>
#include <string>

#include "dtcmc/errors.hpp"

namespace dtcmc {

namespace {

double cross(Vec2 a, Vec2 b) { return a.real() * b.imag() - a.imag() * b.real(); }

MachineState axpy(const MachineState& x, double h, const MachineState& dx) {
  return {x.phi_s + h * dx.phi_s, x.phi_r + h * dx.phi_r, x.omega_m + h * dx.omega_m,
          x.theta_m + h * dx.theta_m};
}

bool within_envelope(const MachineState& s, const IntegratorOptions& opts) {
  const double vals[] = {s.phi_s.real(), s.phi_s.imag(), s.phi_r.real(), s.phi_r.imag(),
                         s.omega_m, s.theta_m};
  for (double v : vals) {
    if (!std::isfinite(v)) return false;
  }
  return std::abs(s.phi_s) <= opts.flux_ceiling && std::abs(s.phi_r) <= opts.flux_ceiling &&
         std::abs(s.omega_m) <= opts.speed_ceiling;
}

}  // namespace

double derive_sigma(double Ls, double Lr, double Lm) {
  if (!(Ls > 0.0) || !(Lr > 0.0)) throw ValidationError("self inductances must be positive", "Ls/Lr");
  if (Lm < 0.0) throw ValidationError("mutual inductance must be non-negative", "Lm");
  if (Lm * Lm >= Ls * Lr) throw ValidationError("non-physical coupling, need Lm^2 < Ls*Lr", "Lm");
  return 1.0 - (Lm * Lm) / (Ls * Lr);
}

MachineParams::MachineParams(const MachineSpec& spec) : spec_(spec), sigma_(0.0) {
  if (!(spec.Rs > 0.0)) throw ValidationError("must be > 0", "Rs");
  if (!(spec.Rr > 0.0)) throw ValidationError("must be > 0", "Rr");
  if (!(spec.Lm > 0.0)) throw ValidationError("must be > 0", "Lm");
  if (spec.p < 1) throw ValidationError("must be >= 1", "p");
  if (!(spec.J > 0.0)) throw ValidationError("must be > 0", "J");
  if (!(spec.f_visc >= 0.0)) throw ValidationError("must be >= 0", "f_visc");
  sigma_ = derive_sigma(spec.Ls, spec.Lr, spec.Lm);
}

Currents machine_currents(const MachineState& s, const MachineParams& mp) {
  const double sls = mp.sigma() * mp.Ls();
  const double slr = mp.sigma() * mp.Lr();
  const double k = mp.Lm() / (sls * mp.Lr());
  return {s.phi_s / sls - k * s.phi_r, s.phi_r / slr - k * s.phi_s};
}

double electromagnetic_torque(const MachineState& s, const MachineParams& mp) {
  const Vec2 is = machine_currents(s, mp).stator;
  return 1.5 * mp.p() * cross(s.phi_s, is);
}

MachineState state_derivative(const MachineState& s, Vec2 v_s, const MachineParams& mp,
                              const LoadModel& load) {
  const Currents i = machine_currents(s, mp);
  const double omega_e = mp.p() * s.omega_m;
  MachineState d;
  d.phi_s = v_s - mp.Rs() * i.stator;
  d.phi_r = -mp.Rr() * i.rotor + Vec2(0.0, omega_e) * s.phi_r;
  if (load.mode == LoadMode::kFree) {
    const double te = 1.5 * mp.p() * cross(s.phi_s, i.stator);
    d.omega_m = (te - load.T_load - mp.f_visc() * s.omega_m) / mp.J();
  }
  d.theta_m = s.omega_m;
  return d;
}

MachineState integrate_interval(const MachineState& s, const VoltageSource& v_s, double t0,
                                double duration, const MachineParams& mp, const LoadModel& load,
                                const IntegratorOptions& opts, const SubstepObserver& observer) {
  if (!(duration >= 0.0)) throw ValidationError("duration must be >= 0", "duration");
  if (!(opts.max_substep > 0.0)) throw ValidationError("must be > 0", "max_substep");
  if (duration == 0.0) return s;

  const auto n = static_cast<long>(std::ceil(duration / opts.max_substep));
  const double h = duration / static_cast<double>(n);
  MachineState x = s;
  for (long k = 0; k < n; ++k) {
    const double t = t0 + duration * static_cast<double>(k) / static_cast<double>(n);
    const Vec2 v0 = v_s(t);
    const Vec2 vm = v_s(t + 0.5 * h);
    const Vec2 v1 = v_s(t + h);
    const MachineState k1 = state_derivative(x, v0, mp, load);
    const MachineState k2 = state_derivative(axpy(x, 0.5 * h, k1), vm, mp, load);
    const MachineState k3 = state_derivative(axpy(x, 0.5 * h, k2), vm, mp, load);
    const MachineState k4 = state_derivative(axpy(x, h, k3), v1, mp, load);
    x.phi_s += h / 6.0 * (k1.phi_s + 2.0 * k2.phi_s + 2.0 * k3.phi_s + k4.phi_s);
    x.phi_r += h / 6.0 * (k1.phi_r + 2.0 * k2.phi_r + 2.0 * k3.phi_r + k4.phi_r);
    x.omega_m += h / 6.0 * (k1.omega_m + 2.0 * k2.omega_m + 2.0 * k3.omega_m + k4.omega_m);
    x.theta_m += h / 6.0 * (k1.theta_m + 2.0 * k2.theta_m + 2.0 * k3.theta_m + k4.theta_m);
    if (!within_envelope(x, opts)) {
      throw DivergenceError("machine state left the safe envelope at t=" +
                            std::to_string(t + h) + " s (|phi_s|=" +
                            std::to_string(std::abs(x.phi_s)) + " Wb, omega_m=" +
                            std::to_string(x.omega_m) + " rad/s)");
    }
    if (observer) observer(t0 + duration * static_cast<double>(k + 1) / static_cast<double>(n), x);
  }
  return x;
}

MachineState integrate_interval(const MachineState& s, Vec2 v_s, double duration,
                                const MachineParams& mp, const LoadModel& load,
                                double max_substep) {
  IntegratorOptions opts;
  opts.max_substep = max_substep;
  return integrate_interval(s, [v_s](double) { return v_s; }, 0.0, duration, mp, load, opts);
}

}  // namespace dtcmc
