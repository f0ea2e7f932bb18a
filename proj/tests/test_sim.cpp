#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dtcmc/sim.hpp"
#include "oracles.hpp"

using namespace dtcmc;

namespace {

Scenario short_scenario(double duration = 0.05) {
  Scenario s;
  s.name = "short";
  s.load.locked_speed = 60.0;
  s.controller.B_phi = 0.02;
  s.controller.B_H = 1.35;
  s.carrier = CarrierConfig(1.05, 5000.0);
  s.duration = duration;
  return s;
}

}  // namespace

TEST(grid, balanced_supply) {
  const GridSource g;
  EXPECT_NEAR(g.peak(), 311.127, 1e-3);
  const Three v0 = grid_voltages(g, 0.0);
  EXPECT_NEAR(v0[0], g.peak(), 1e-9);
  EXPECT_NEAR(v0[1], -g.peak() / 2, 1e-9);
  EXPECT_NEAR(v0[2], -g.peak() / 2, 1e-9);
  for (int k = 0; k < 500; ++k) {
    const Three v = grid_voltages(g, k * 1.3e-4);
    EXPECT_NEAR(v[0] + v[1] + v[2], 0.0, 1e-9);
  }
}

TEST(grid, volt_seconds_match_quadrature) {
  GridSource g;
  g.phase_offset = 0.3;
  const double t0 = 1.234e-3, t1 = t0 + 50e-6;
  const Three exact = grid_volt_seconds(g, t0, t1);
  const int n = 2000;
  Three sum{};
  for (int k = 0; k < n; ++k) {
    const Three v = grid_voltages(g, t0 + (k + 0.5) * (t1 - t0) / n);
    for (int p = 0; p < 3; ++p) sum[p] += v[p] * (t1 - t0) / n;
  }
  for (int p = 0; p < 3; ++p) EXPECT_NEAR(exact[p], sum[p], 1e-10);
}

TEST(ControllerConfig, piecewise_reference) {
  ControllerConfig c;
  c.torque_steps = {{0.1, 5.0}, {0.3, -5.0}};
  EXPECT_EQ(c.torque_ref_at(0.05), 0.0);
  EXPECT_EQ(c.torque_ref_at(0.1), 5.0);
  EXPECT_EQ(c.torque_ref_at(0.2999), 5.0);
  EXPECT_EQ(c.torque_ref_at(0.5), -5.0);
}

TEST(Scenario, validation) {
  Scenario s = short_scenario();
  EXPECT_NO_THROW(s.validate());
  s.carrier = CarrierConfig{};
  try {
    s.validate();
    FAIL() << "fixed mode without a carrier must be rejected";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.field(), "carrier");
  }
  s.mode = ControlMode::kVariableFrequency;
  EXPECT_NO_THROW(s.validate());
  s.T_s = 0.0;
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(run_scenario, zero_duration_yields_empty_run) {
  const SimResult r = run_scenario(short_scenario(0.0));
  EXPECT_EQ(r.ticks, 0);
  EXPECT_EQ(r.size(), 0u);
}

TEST(run_scenario, carrier_sizing_is_enforced) {
  Scenario s = short_scenario(0.01);
  s.max_torque_slope = 1e6;
  EXPECT_THROW(run_scenario(s), CarrierViolation);
  s.allow_carrier_violation = true;
  const SimResult r = run_scenario(s);
  EXPECT_FALSE(r.carrier_check.ok);
  EXPECT_GT(r.ticks, 0);
}

TEST(run_scenario, default_estimate_passes_for_shipped_settings) {
  const CarrierCheck c = check_carrier(short_scenario());
  EXPECT_TRUE(c.ok);
  EXPECT_NEAR(c.bound, oracle::carrier_bound(1.05, 1.35, 5000.0), 1e-6);
  EXPECT_NEAR(c.max_torque_slope, 17533.0, 1.0);
}

TEST(run_scenario, intervals_tile_each_period) {
  const SimResult r = run_scenario(short_scenario(0.02));
  ASSERT_EQ(r.ticks, 400);
  double total = 0.0;
  for (const auto& iv : r.intervals) {
    EXPECT_GT(iv.duration, 0.0);
    total += iv.duration;
  }
  EXPECT_NEAR(total, 0.02, 1e-12);
  for (std::size_t k = 1; k < r.intervals.size(); ++k) {
    EXPECT_NEAR(r.intervals[k].t_start, r.intervals[k - 1].t_start + r.intervals[k - 1].duration, 1e-12);
  }
}

TEST(run_scenario, instantaneous_power_balance) {
  const SimResult r = run_scenario(short_scenario(0.03));
  ASSERT_GT(r.size(), 0u);
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_NEAR(r.p_in_inst[k], r.p_out_inst[k], 1e-9 * (1.0 + std::abs(r.p_out_inst[k])));
  }
}

TEST(run_scenario, deterministic) {
  const SimResult a = run_scenario(short_scenario(0.02));
  const SimResult b = run_scenario(short_scenario(0.02));
  EXPECT_EQ(a.Te, b.Te);
  EXPECT_EQ(a.phi_alpha, b.phi_alpha);
  EXPECT_EQ(a.tick_cfg, b.tick_cfg);
}

TEST(run_scenario, tracks_references_in_steady_state) {
  const SimResult r = run_scenario(short_scenario(0.15));
  double te = 0.0, err = 0.0, flux = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r.t[k] < 0.1) continue;
    te += r.Te[k];
    err += std::abs(r.Te_est[k] - r.Te[k]);
    flux += r.phi_mag[k];
    ++n;
  }
  ASSERT_GT(n, 100);
  EXPECT_NEAR(te / n, 10.0, 1.0);
  EXPECT_LT(err / n, 0.2);
  EXPECT_NEAR(flux / n, 1.14, 0.05);
}

TEST(run_scenario, capture_decimation) {
  Scenario s = short_scenario(0.01);
  s.capture_decimation = 4;
  const SimResult r = run_scenario(s);
  EXPECT_EQ(r.size(), 50u);
  EXPECT_EQ(r.tick_cfg.size(), 200u);
  EXPECT_NEAR(r.sample_period, 200e-6, 1e-15);
}
