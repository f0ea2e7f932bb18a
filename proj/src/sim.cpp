#include "dtcmc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dtcmc/errors.hpp"

namespace dtcmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 stator_voltage(const DmcConfiguration& cfg, const GridSource& grid, double t) {
  return output_space_vector(apply_voltages(cfg, grid_voltages(grid, t)));
}

double dot3(const Three& a, const Three& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Trapezoidal running integrals over the plant substeps of one period.
struct PeriodAverages {
  double i_in_a = 0.0;
  double p_in = 0.0;
  Vec2 i_s{};

  void add(double dt, double i_a0, double i_a1, double p0, double p1, Vec2 is0, Vec2 is1) {
    i_in_a += 0.5 * dt * (i_a0 + i_a1);
    p_in += 0.5 * dt * (p0 + p1);
    i_s += 0.5 * dt * (is0 + is1);
  }
};

}  // namespace

double GridSource::peak() const { return std::numbers::sqrt2 * V_phase_rms; }

double GridSource::angle(double t) const { return kTwoPi * f_grid * t + phase_offset; }

Three grid_voltages(const GridSource& src, double t) {
  const double vm = src.peak();
  const double th = src.angle(t);
  return {vm * std::cos(th), vm * std::cos(th - kTwoPi / 3.0), vm * std::cos(th - 2.0 * kTwoPi / 3.0)};
}

Three grid_volt_seconds(const GridSource& src, double t0, double t1) {
  const double w = kTwoPi * src.f_grid;
  const double k = src.peak() / w;
  const double a0 = src.angle(t0);
  const double a1 = src.angle(t1);
  Three out{};
  for (int ph = 0; ph < 3; ++ph) {
    const double shift = ph * kTwoPi / 3.0;
    out[ph] = k * (std::sin(a1 - shift) - std::sin(a0 - shift));
  }
  return out;
}

double ControllerConfig::torque_ref_at(double t) const {
  double ref = 0.0;
  for (const auto& s : torque_steps) {
    if (s.t <= t) ref = s.T_ref;
    else break;
  }
  return ref;
}

void Scenario::validate() const {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw ValidationError("must be >= 0", "duration");
  if (!(T_s > 0.0)) throw ValidationError("must be > 0", "T_s");
  if (!(max_substep > 0.0)) throw ValidationError("must be > 0", "max_substep");
  if (capture_decimation < 1) throw ValidationError("must be >= 1", "capture_decimation");
  if (!(grid.V_phase_rms > 0.0)) throw ValidationError("must be > 0", "grid.V_phase_rms");
  if (!(grid.f_grid > 0.0)) throw ValidationError("must be > 0", "grid.f_grid");
  if (!(controller.B_phi > 0.0)) throw ValidationError("must be > 0", "controller.B_phi");
  if (!(controller.B_H > 0.0)) throw ValidationError("must be > 0", "controller.B_H");
  if (!(controller.phi_ref > 0.0)) throw ValidationError("must be > 0", "controller.phi_ref");
  for (std::size_t i = 1; i < controller.torque_steps.size(); ++i) {
    if (!(controller.torque_steps[i].t > controller.torque_steps[i - 1].t)) {
      throw ValidationError("steps must be sorted by strictly increasing time", "controller.torque_steps");
    }
  }
  if (!std::isfinite(load.T_load)) throw ValidationError("must be finite", "load.T_load");
  if (!std::isfinite(load.locked_speed)) throw ValidationError("must be finite", "load.omega_m");
  if (mode == ControlMode::kFixedFrequency && !carrier.enabled()) {
    throw ValidationError("fixed-frequency mode needs an enabled carrier", "carrier");
  }
  if (max_torque_slope && !(*max_torque_slope >= 0.0)) {
    throw ValidationError("must be >= 0", "carrier.max_torque_slope");
  }
  if (!(analysis.settle_time >= 0.0)) throw ValidationError("must be >= 0", "analysis.settle_time");
  if (!(analysis.segment_settle >= 0.0)) throw ValidationError("must be >= 0", "analysis.segment_settle");
  if (analysis.thd_max_order < 2) throw ValidationError("must be >= 2", "analysis.thd_max_order");
}

double estimate_max_torque_slope(const Scenario& scn) {
  const auto& m = scn.machine;
  const double v_max = (2.0 / 3.0) * std::numbers::sqrt3 * scn.grid.peak();
  const double phi_r = scn.controller.phi_ref * m.Lm() / m.Ls();
  return 1.5 * m.p() * m.Lm() / (m.sigma() * m.Ls() * m.Lr()) * phi_r * v_max;
}

CarrierCheck check_carrier(const Scenario& scn) {
  const double slope = scn.max_torque_slope.value_or(estimate_max_torque_slope(scn));
  return validate_carrier(slope, scn.carrier, scn.controller.B_H);
}

SimResult run_scenario(const Scenario& scn) {
  scn.validate();
  SimResult res;
  res.scenario = scn;
  res.sample_period = scn.T_s * scn.capture_decimation;
  if (scn.carrier_active()) {
    res.carrier_check = check_carrier(scn);
    if (!res.carrier_check.ok && !scn.allow_carrier_violation) throw CarrierViolation(res.carrier_check);
  }

  const MachineParams& mp = scn.machine;
  const auto& ctl = scn.controller;
  const double Ts = scn.T_s;
  const long ticks = static_cast<long>(std::floor(scn.duration / Ts + 1e-9));
  res.ticks = ticks;

  IntegratorOptions opts;
  opts.max_substep = scn.max_substep;

  MachineState x;
  x.omega_m = scn.load.locked_speed;
  EstimatorState est;
  est.includes_rs_drop = ctl.include_rs_drop;
  int phi_flag = 1;
  int tau_flag = 0;
  int sector = 1;
  std::optional<DmcConfiguration> prev_cfg;
  Vec2 v_avg_prev{};

  const std::size_t expect = static_cast<std::size_t>(ticks / scn.capture_decimation + 1);
  for (auto* v : {&res.t, &res.Te, &res.Te_est, &res.T_ref, &res.T_ref_mod, &res.phi_alpha,
                  &res.phi_beta, &res.phi_mag, &res.ia_s, &res.ib_s, &res.ic_s, &res.omega_m,
                  &res.v_in_a, &res.i_in_a, &res.p_in_avg, &res.p_in_inst, &res.p_out_inst}) {
    v->reserve(expect);
  }
  res.tick_cfg.reserve(static_cast<std::size_t>(ticks));
  res.intervals.reserve(static_cast<std::size_t>(2 * ticks));

  for (long k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * Ts;
    const Vec2 i_s = machine_currents(x, mp).stator;

    if (k > 0) est = update_flux_estimate(est, v_avg_prev, i_s, mp.Rs(), mp.p(), Ts);

    const double t_ref = ctl.torque_ref_at(t);
    const double t_mod = scn.carrier_active() ? modulated_reference(t_ref, t, scn.carrier) : t_ref;
    phi_flag = flux_comparator(ctl.phi_ref - std::abs(est.phi_est), phi_flag, ctl.B_phi);
    tau_flag = torque_comparator(t_mod - est.Te_est, tau_flag, ctl.B_H);
    // Before the machine is fluxed the sector is undefined; keep the last one.
    if (std::abs(est.phi_est) > 1e-9) sector = flux_sector(est.phi_est);
    const VsiVector vec = table1_lookup({phi_flag, tau_flag, sector});

    const Three v_grid = grid_voltages(scn.grid, t);
    const InputSectorState in = input_sector(v_grid);
    const DutySchedule sched = schedule_period(vec, in, Ts, prev_cfg);

    if (k % scn.capture_decimation == 0) {
      const Three i_o = phase_quantities(i_s);
      const auto ports = apply_ports(sched.configs.gamma, v_grid, i_o);
      res.t.push_back(t);
      res.Te.push_back(electromagnetic_torque(x, mp));
      res.Te_est.push_back(est.Te_est);
      res.T_ref.push_back(t_ref);
      res.T_ref_mod.push_back(t_mod);
      res.phi_alpha.push_back(x.phi_s.real());
      res.phi_beta.push_back(x.phi_s.imag());
      res.phi_mag.push_back(std::abs(x.phi_s));
      res.ia_s.push_back(i_o[0]);
      res.ib_s.push_back(i_o[1]);
      res.ic_s.push_back(i_o[2]);
      res.omega_m.push_back(x.omega_m);
      res.v_in_a.push_back(v_grid[0]);
      res.p_in_inst.push_back(dot3(ports.v_i, ports.i_i));
      res.p_out_inst.push_back(dot3(ports.v_o, ports.i_o));
      res.cfg.push_back(sched.configs.gamma.id());
      res.vsi_vec.push_back(index_of(vec));
      res.flux_sector.push_back(sector);
      res.input_sector.push_back(in.sector);
    }
    res.tick_cfg.push_back(sched.configs.gamma.id());

    PeriodAverages avg;
    Vec2 volt_seconds{};
    double t_cursor = t;
    for (int part = 0; part < 2; ++part) {
      const DmcConfiguration& cfg = part == 0 ? sched.configs.gamma : sched.configs.delta;
      const double dur = part == 0 ? sched.times.T_gamma : sched.times.T_delta;
      if (dur <= 0.0) continue;
      res.intervals.push_back({t_cursor, dur, cfg.id()});
      auto sample = [&](double tt, const MachineState& s, double& ia, double& p, Vec2& is) {
        is = machine_currents(s, mp).stator;
        const Three vi = grid_voltages(scn.grid, tt);
        const Three ii = apply_currents(cfg, phase_quantities(is));
        ia = ii[0];
        p = dot3(vi, ii);
      };
      double last_t = t_cursor, last_ia, last_p;
      Vec2 last_is;
      sample(t_cursor, x, last_ia, last_p, last_is);
      const auto observer = [&](double tt, const MachineState& s) {
        double ia, p;
        Vec2 is;
        sample(tt, s, ia, p, is);
        avg.add(tt - last_t, last_ia, ia, last_p, p, last_is, is);
        last_t = tt;
        last_ia = ia;
        last_p = p;
        last_is = is;
      };
      x = integrate_interval(
          x, [&](double tt) { return stator_voltage(cfg, scn.grid, tt); }, t_cursor, dur, mp,
          scn.load, opts, observer);
      volt_seconds += output_space_vector(
          apply_voltages(cfg, grid_volt_seconds(scn.grid, t_cursor, t_cursor + dur)));
      t_cursor += dur;
      prev_cfg = cfg;
    }
    v_avg_prev = volt_seconds / Ts;
    if (k % scn.capture_decimation == 0) {
      res.i_in_a.push_back(avg.i_in_a / Ts);
      res.p_in_avg.push_back(avg.p_in / Ts);
    }
  }
  return res;
}

}  // namespace dtcmc
