#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "dtcmc/errors.hpp"
#include "dtcmc/modulator.hpp"
#include "dtcmc/printed_tables.hpp"
#include "oracles.hpp"

using namespace dtcmc;

namespace {

constexpr double kPi = oracle::kPi;

std::string cyclic(const std::string& letters) {
  std::string out = letters;
  for (char& c : out) c = static_cast<char>('a' + (c - 'a' + 1) % 3);
  return out;
}

// Ordered input line pair (from, to) of an active configuration.
std::pair<int, int> line_pair(const DmcConfiguration& cfg) {
  const Classification c = classify(cfg);
  return {c.from_input, c.to_input};
}

}  // namespace

TEST(duty_cycles, oracle_and_examples) {
  for (int k = 0; k < 600; ++k) {
    const double th = k * (kPi / 3.0) / 600.0;
    const Duties d = duty_cycles(th);
    const auto o = oracle::duties(th);
    EXPECT_NEAR(d.d_gamma, o[0], 1e-15);
    EXPECT_NEAR(d.d_delta, o[1], 1e-15);
    EXPECT_NEAR(d.d_gamma + d.d_delta + d.d_0, 1.0, 1e-15);
    EXPECT_GE(d.d_0, -1e-15);
  }
  const Duties mid = duty_cycles(kPi / 6.0);
  EXPECT_NEAR(mid.d_gamma, 0.5, 1e-15);
  EXPECT_NEAR(mid.d_delta, 0.5, 1e-15);
  EXPECT_NEAR(mid.d_0, 0.0, 1e-15);
  EXPECT_THROW(duty_cycles(-1e-9), DomainError);
  EXPECT_THROW(duty_cycles(kPi / 3.0), DomainError);
}

TEST(normalize_duties, example_at_15_degrees) {
  const Duties d = duty_cycles(kPi / 12.0);
  const NormalizedDuties n = normalize_duties(d.d_gamma, d.d_delta);
  EXPECT_NEAR(n.d_gamma_n, 0.73205, 1e-5);
  EXPECT_NEAR(n.d_delta_n, 0.26795, 1e-5);
  EXPECT_NEAR(n.d_gamma_n + n.d_delta_n, 1.0, 1e-15);
  const Durations t = durations(n.d_gamma_n, 50e-6);
  EXPECT_NEAR(t.T_gamma, 36.6025e-6, 1e-10);
  EXPECT_EQ(t.T_gamma + t.T_delta, 50e-6);
  EXPECT_THROW(normalize_duties(0.0, 0.0), DomainError);
}

TEST(input_sector, edges_and_centres) {
  EXPECT_EQ(input_sector_from_angle(0.0).sector, 1);
  EXPECT_NEAR(input_sector_from_angle(0.0).theta_in, kPi / 6.0, 1e-15);
  EXPECT_EQ(input_sector_from_angle(-kPi / 6.0).sector, 1);
  EXPECT_NEAR(input_sector_from_angle(-kPi / 6.0).theta_in, 0.0, 1e-15);
  EXPECT_EQ(input_sector_from_angle(kPi / 6.0).sector, 2);
  EXPECT_EQ(input_sector_from_angle(kPi).sector, 4);
  EXPECT_EQ(input_sector_from_angle(-kPi / 2.0).sector, 6);
  for (int k = 0; k < 360; ++k) {
    const double a = -kPi + (k + 0.5) * 2.0 * kPi / 360.0;
    const InputSectorState s = input_sector_from_angle(a);
    const InputSectorState n = input_sector_from_angle(a + kPi / 3.0);
    EXPECT_EQ(n.sector, s.sector % 6 + 1);
    EXPECT_NEAR(n.theta_in, s.theta_in, 1e-12);
    EXPECT_GE(s.theta_in, 0.0);
    EXPECT_LT(s.theta_in, kPi / 3.0);
    const InputSectorState g = input_sector(oracle::balanced(311.0, a));
    EXPECT_EQ(g.sector, s.sector);
    EXPECT_NEAR(oracle::wrap(g.theta_abs - a), 0.0, 1e-12);
  }
  EXPECT_THROW(input_sector({0.0, 0.0, 0.0}), DomainError);
}

TEST(table3, published_anchors) {
  EXPECT_EQ(table3_lookup(VsiVector::V1, 1).to_string(), "abb, acc");
  EXPECT_EQ(table3_lookup(VsiVector::V2, 3).to_string(), "bbc, bba");
  EXPECT_EQ(table3_lookup(VsiVector::V4, 1).to_string(), "baa, caa");
  EXPECT_THROW(table3_lookup(VsiVector::V1, 0), DomainError);
  EXPECT_THROW(table3_lookup(VsiVector::V1, 7), DomainError);
}

TEST(table3, rows_agree_with_print_except_known_cells) {
  const Table3Concordance rep = compare_table3(table3());
  ASSERT_EQ(rep.cells.size(), 48u);
  std::map<std::string, std::string> mismatched;
  int zeros = 0;
  for (const auto& c : rep.cells) {
    if (c.status == CellStatus::kAdmissibleZero) ++zeros;
    if (c.status == CellStatus::kMismatch) mismatched[vsi_name(c.vector) + "/" + sector_roman(c.sector)] = c.printed;
  }
  EXPECT_EQ(zeros, 12);
  EXPECT_EQ(rep.mismatches(), 4);
  EXPECT_EQ(mismatched.count("V3/V"), 1u);
  EXPECT_EQ(mismatched.count("V3/VI"), 1u);
  EXPECT_EQ(mismatched.count("V6/II"), 1u);
  EXPECT_EQ(mismatched.count("V6/III"), 1u);
  for (const auto& row : printed_table3()) {
    if (row.vector == VsiVector::V1 || row.vector == VsiVector::V2 || row.vector == VsiVector::V4 ||
        row.vector == VsiVector::V5) {
      for (int s = 1; s <= 6; ++s) EXPECT_EQ(table3_lookup(row.vector, s).to_string(), row.cells[s - 1]);
    }
  }
}

TEST(table3, both_configs_stay_on_the_vector_direction) {
  for (int k = 1; k <= 6; ++k) {
    const auto v = static_cast<VsiVector>(k);
    const Vec2 dir = vsi_direction(v);
    for (int s = 1; s <= 6; ++s) {
      const ConfigPair pair = table3_lookup(v, s);
      for (int n = 0; n <= 60; ++n) {
        const double ang = -kPi / 6.0 + (s - 1) * kPi / 3.0 + n * (kPi / 3.0) / 60.0;
        const auto vi = oracle::balanced(311.0, ang);
        for (const auto& cfg : {pair.gamma, pair.delta}) {
          const oracle::cplx out = oracle::config_vector(cfg.name(), vi);
          ASSERT_GT(std::abs(out), 1.0);
          EXPECT_LT(std::abs(std::arg(out / dir)), 1e-9) << vsi_name(v) << " " << s << " " << cfg.name();
        }
      }
    }
  }
}

TEST(table3, cyclic_input_substitution_advances_two_sectors) {
  for (int k = 1; k <= 6; ++k) {
    const auto v = static_cast<VsiVector>(k);
    for (int s = 1; s <= 6; ++s) {
      const ConfigPair here = table3_lookup(v, s);
      const ConfigPair there = table3_lookup(v, (s + 1) % 6 + 1);
      EXPECT_EQ(cyclic(here.gamma.name()), there.gamma.name()) << vsi_name(v) << " " << s;
      EXPECT_EQ(cyclic(here.delta.name()), there.delta.name()) << vsi_name(v) << " " << s;
    }
  }
}

TEST(table3, one_sector_advances_the_line_pairs) {
  // ab -> ac -> bc -> ba -> ca -> cb -> ab
  const std::map<std::pair<int, int>, std::pair<int, int>> next{
      {{0, 1}, {0, 2}}, {{0, 2}, {1, 2}}, {{1, 2}, {1, 0}},
      {{1, 0}, {2, 0}}, {{2, 0}, {2, 1}}, {{2, 1}, {0, 1}}};
  for (int k = 1; k <= 6; ++k) {
    const auto v = static_cast<VsiVector>(k);
    for (int s = 1; s <= 6; ++s) {
      const ConfigPair here = table3_lookup(v, s);
      const ConfigPair there = table3_lookup(v, s % 6 + 1);
      EXPECT_EQ(next.at(line_pair(here.gamma)), line_pair(there.gamma)) << vsi_name(v) << " " << s;
      EXPECT_EQ(next.at(line_pair(here.delta)), line_pair(there.delta)) << vsi_name(v) << " " << s;
    }
  }
}

TEST(table3, average_input_current_is_in_phase_with_the_supply) {
  for (int k = 1; k <= 6; ++k) {
    const auto v = static_cast<VsiVector>(k);
    // Output current in phase with the selected voltage vector.
    const Three i_o = phase_quantities(vsi_direction(v));
    for (int s = 1; s <= 6; ++s) {
      for (int n = 1; n < 30; ++n) {
        const double ang = -kPi / 6.0 + (s - 1) * kPi / 3.0 + n * (kPi / 3.0) / 30.0;
        const InputSectorState in = input_sector(oracle::balanced(311.0, ang));
        ASSERT_EQ(in.sector, s);
        const DutySchedule sch = schedule_period(v, in, 50e-6);
        const Three ig = apply_currents(sch.configs.gamma, i_o);
        const Three id = apply_currents(sch.configs.delta, i_o);
        Three avg{};
        for (int p = 0; p < 3; ++p) avg[p] = sch.normalized.d_gamma_n * ig[p] + sch.normalized.d_delta_n * id[p];
        const Vec2 iv = output_space_vector(avg);
        ASSERT_GT(std::abs(iv), 0.1);
        EXPECT_LT(std::abs(oracle::wrap(std::arg(iv) - ang)), 1e-9) << vsi_name(v) << " " << s << " " << n;
      }
    }
  }
}

TEST(choose_zero_configuration, fewest_commutations) {
  const auto f = DmcConfiguration::from_name;
  EXPECT_EQ(choose_zero_configuration(std::nullopt).name(), "aaa");
  EXPECT_EQ(choose_zero_configuration(f("abb")).name(), "bbb");
  EXPECT_EQ(choose_zero_configuration(f("ccb")).name(), "ccc");
  EXPECT_EQ(choose_zero_configuration(f("abc")).name(), "aaa");
  EXPECT_EQ(choose_zero_configuration(f("bca")).name(), "aaa");
  for (const auto& cfg : enumerate_configurations()) {
    const auto z = choose_zero_configuration(cfg);
    EXPECT_EQ(z.kind(), ConfigKind::kZero);
    for (const auto& other : enumerate_configurations()) {
      if (other.kind() == ConfigKind::kZero) EXPECT_LE(commutations_between(cfg, z), commutations_between(cfg, other));
    }
  }
  const ConfigPair zp = table3_lookup(VsiVector::V7, 3, f("acc"));
  EXPECT_EQ(zp.gamma.name(), "ccc");
  EXPECT_EQ(zp.gamma, zp.delta);
}

TEST(durations, sum_exactly_for_random_splits) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100000; ++k) {
    const double T_c = std::ldexp(0.5 + u(rng), -14 + static_cast<int>(k % 9));
    const Durations t = durations(u(rng), T_c);
    ASSERT_EQ(t.T_gamma + t.T_delta, T_c);
    ASSERT_GE(t.T_gamma, 0.0);
    ASSERT_GE(t.T_delta, 0.0);
  }
}

TEST(schedule_period, times_sum_to_period) {
  for (int k = 0; k <= 7; ++k) {
    for (int n = 0; n < 100; ++n) {
      const InputSectorState in = input_sector_from_angle(-kPi + n * 2.0 * kPi / 100.0 + 1e-3);
      const DutySchedule sch = schedule_period(static_cast<VsiVector>(k), in, 50e-6);
      EXPECT_EQ(sch.times.T_gamma + sch.times.T_delta, 50e-6);
      EXPECT_GE(sch.times.T_delta, 0.0);
    }
  }
}
