#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "dtcmc/converter.hpp"
#include "dtcmc/errors.hpp"
#include "dtcmc/modulator.hpp"
#include "dtcmc/printed_tables.hpp"
#include "oracles.hpp"

using namespace dtcmc;

TEST(enumerate_configurations, counts_and_order) {
  const auto& all = enumerate_configurations();
  int zero = 0, active = 0, rotating = 0;
  std::set<std::string> names;
  for (int i = 0; i < 27; ++i) {
    EXPECT_EQ(all[i].id(), i + 1);
    names.insert(all[i].name());
    switch (all[i].kind()) {
      case ConfigKind::kZero: ++zero; break;
      case ConfigKind::kActive: ++active; break;
      case ConfigKind::kRotating: ++rotating; break;
    }
  }
  EXPECT_EQ(zero, 3);
  EXPECT_EQ(active, 18);
  EXPECT_EQ(rotating, 6);
  EXPECT_EQ(names.size(), 27u);
  EXPECT_EQ(all[0].name(), "aaa");
  EXPECT_EQ(all[3].name(), "aab");
  EXPECT_EQ(all[26].name(), "cba");
}

TEST(enumerate_configurations, one_closed_switch_per_output) {
  for (const auto& cfg : enumerate_configurations()) {
    const SwitchMatrix m = to_switch_matrix(cfg);
    for (int o = 0; o < 3; ++o) EXPECT_EQ(m[o][0] + m[o][1] + m[o][2], 1) << cfg.name();
    EXPECT_EQ(DmcConfiguration::from_name(cfg.name()), cfg);
  }
}

TEST(DmcConfiguration, rejects_bad_names) {
  EXPECT_THROW(DmcConfiguration::from_name("ab"), ValidationError);
  EXPECT_THROW(DmcConfiguration::from_name("abd"), ValidationError);
  EXPECT_THROW(DmcConfiguration::from_name("ABC"), ValidationError);
}

TEST(apply_ports, examples) {
  const auto abb = DmcConfiguration::from_name("abb");
  const Three v_o = apply_voltages(abb, {300.0, 150.0, -450.0});
  EXPECT_DOUBLE_EQ(v_o[0] - v_o[1], 150.0);
  EXPECT_DOUBLE_EQ(v_o[1] - v_o[2], 0.0);
  EXPECT_EQ(apply_currents(abb, {10.0, -4.0, -6.0}), (Three{10.0, -10.0, 0.0}));
  EXPECT_EQ(apply_currents(DmcConfiguration::from_name("cba"), {1.0, 2.0, -3.0}), (Three{-3.0, 2.0, 1.0}));
  EXPECT_EQ(apply_currents(DmcConfiguration::from_name("bbb"), {1.0, 2.0, -3.0}), (Three{0.0, 0.0, 0.0}));
}

TEST(apply_ports, power_and_charge_conservation) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-400.0, 400.0);
  for (const auto& cfg : enumerate_configurations()) {
    for (int trial = 0; trial < 200; ++trial) {
      const Three v_i{u(rng), u(rng), u(rng)};
      const double ia = u(rng) / 10, ib = u(rng) / 10;
      const Three i_o{ia, ib, -ia - ib};
      const PortVectors pv = apply_ports(cfg, v_i, i_o);
      double p_in = 0.0, p_out = 0.0;
      for (int k = 0; k < 3; ++k) {
        p_in += pv.v_i[k] * pv.i_i[k];
        p_out += pv.v_o[k] * pv.i_o[k];
      }
      EXPECT_NEAR(p_in, p_out, 1e-9 * (1.0 + std::abs(p_out)));
      EXPECT_NEAR(pv.i_i[0] + pv.i_i[1] + pv.i_i[2], 0.0, 1e-12);
    }
  }
}

TEST(output_space_vector, matches_hand_expansion_and_inverts) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  EXPECT_NEAR(std::abs(output_space_vector({1.0, -0.5, -0.5}) - Vec2(1.0, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(output_space_vector({1.0, 1.0, 1.0})), 0.0, 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    const Three vi{u(rng), u(rng), u(rng)};
    for (const auto& cfg : enumerate_configurations()) {
      const Vec2 lib = output_space_vector(apply_voltages(cfg, vi));
      EXPECT_NEAR(std::abs(lib - oracle::config_vector(cfg.name(), vi)), 0.0, 1e-12);
    }
    const Vec2 x{u(rng), u(rng)};
    EXPECT_NEAR(std::abs(output_space_vector(phase_quantities(x)) - x), 0.0, 1e-12);
  }
}

TEST(classify, examples) {
  EXPECT_EQ(classify(DmcConfiguration::from_name("bbb")).kind, ConfigKind::kZero);
  EXPECT_EQ(classify(DmcConfiguration::from_name("abc")).kind, ConfigKind::kRotating);
  const Classification acc = classify(DmcConfiguration::from_name("acc"));
  EXPECT_EQ(acc.kind, ConfigKind::kActive);
  EXPECT_EQ(acc.direction, VsiVector::V1);
  EXPECT_EQ(acc.from_input, 0);
  EXPECT_EQ(acc.to_input, 2);
  // Output vector = -(2/3) U_ca along V1.
  const Three vi{100.0, 20.0, -120.0};
  const Vec2 out = output_space_vector(apply_voltages(DmcConfiguration::from_name("acc"), vi));
  EXPECT_NEAR(std::abs(out - Vec2(-(2.0 / 3.0) * (vi[2] - vi[0]), 0.0)), 0.0, 1e-12);
}

TEST(classify, active_configs_lie_on_their_axis) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-300.0, 300.0);
  std::map<VsiVector, std::set<std::pair<int, int>>> per_axis;
  for (const auto& cfg : enumerate_configurations()) {
    const Classification c = classify(cfg);
    if (c.kind != ConfigKind::kActive) continue;
    per_axis[c.direction].insert({c.from_input, c.to_input});
    for (int trial = 0; trial < 20; ++trial) {
      const Three vi{u(rng), u(rng), u(rng)};
      const Vec2 expect = (2.0 / 3.0) * (vi[c.from_input] - vi[c.to_input]) * vsi_direction(c.direction);
      EXPECT_NEAR(std::abs(oracle::config_vector(cfg.name(), vi) - expect), 0.0, 1e-9) << cfg.name();
    }
  }
  ASSERT_EQ(per_axis.size(), 3u);
  for (const auto& [axis, pairs] : per_axis) EXPECT_EQ(pairs.size(), 6u) << vsi_name(axis);
}

TEST(commutations_between, counts_differing_outputs) {
  const auto f = DmcConfiguration::from_name;
  EXPECT_EQ(commutations_between(f("abc"), f("abc")), 0);
  EXPECT_EQ(commutations_between(f("abb"), f("bbb")), 1);
  EXPECT_EQ(commutations_between(f("abc"), f("cab")), 3);
}

TEST(check_table2, flags_the_known_rows) {
  const Table2Concordance rep = check_table2();
  std::set<int> flagged;
  for (const auto& f : rep.findings) flagged.insert(f.row);
  EXPECT_EQ(flagged, (std::set<int>{16, 17, 25, 26}));
  EXPECT_EQ(rep.consistent_rows.size(), 23u);
  bool row16_letters = false;
  for (const auto& f : rep.findings)
    if (f.row == 16 && f.field == "letters") row16_letters = f.printed == "cac" && f.generated == "cca";
  EXPECT_TRUE(row16_letters);
}
