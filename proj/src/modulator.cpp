#include "dtcmc/modulator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtcmc/errors.hpp"
#include "dtcmc/printed_tables.hpp"

namespace dtcmc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSixty = kPi / 3.0;

Three balanced_voltages(double angle) {
  return {std::cos(angle), std::cos(angle - 2.0 * kPi / 3.0), std::cos(angle + 2.0 * kPi / 3.0)};
}

// Signed length of the output vector of `cfg` along the direction of `v`.
double projection(const DmcConfiguration& cfg, VsiVector v, const Three& v_i) {
  const Vec2 out = output_space_vector(apply_voltages(cfg, v_i));
  const Vec2 dir = vsi_direction(v);
  return out.real() * dir.real() + out.imag() * dir.imag();
}

bool aligned(const DmcConfiguration& cfg, VsiVector v, const Three& v_i) {
  const Vec2 out = output_space_vector(apply_voltages(cfg, v_i));
  const Vec2 dir = vsi_direction(v);
  const double perp = out.imag() * dir.real() - out.real() * dir.imag();
  return std::abs(perp) <= 1e-12 * std::max(1.0, std::abs(out)) &&
         (out.real() * dir.real() + out.imag() * dir.imag()) > 0.0;
}

}  // namespace

InputSectorState input_sector_from_angle(double theta_abs) {
  InputSectorState s;
  s.theta_abs = std::remainder(theta_abs, 2.0 * kPi);
  double shifted = std::fmod(s.theta_abs + kSixty / 2.0, 2.0 * kPi);
  if (shifted < 0.0) shifted += 2.0 * kPi;
  int idx = static_cast<int>(std::floor(shifted / kSixty));
  double within = shifted - idx * kSixty;
  if (within < 0.0) within = 0.0;
  if (within >= kSixty) {
    within -= kSixty;
    ++idx;
  }
  s.sector = (idx % 6) + 1;
  s.theta_in = within;
  return s;
}

InputSectorState input_sector(const Three& v_i) {
  const Vec2 sv = output_space_vector(v_i);
  if (sv == Vec2{}) throw DomainError("input sector undefined for a zero voltage vector");
  return input_sector_from_angle(std::arg(sv));
}

Duties duty_cycles(double theta_in) {
  if (!(theta_in >= 0.0 && theta_in < kSixty)) throw DomainError("theta_in must lie in [0, pi/3)");
  Duties d;
  d.d_gamma = std::sin(kSixty - theta_in);
  d.d_delta = std::sin(theta_in);
  d.d_0 = 1.0 - (d.d_delta + d.d_gamma);
  return d;
}

NormalizedDuties normalize_duties(double d_gamma, double d_delta) {
  const double sum = d_gamma + d_delta;
  if (!(sum > 0.0)) throw DomainError("active duty cycles sum to zero");
  return {d_gamma / sum, d_delta / sum};
}

Durations durations(double d_gamma_n, double T_c) {
  if (!(T_c > 0.0)) throw ValidationError("must be > 0", "T_c");
  Durations t;
  // The longer interval is the product; the shorter is the difference, which
  // is exact for a value in [T_c/2, T_c], so the two add back to T_c exactly.
  if (d_gamma_n >= 0.5) {
    t.T_gamma = d_gamma_n * T_c;
    t.T_delta = T_c - t.T_gamma;
  } else {
    t.T_delta = (1.0 - d_gamma_n) * T_c;
    t.T_gamma = T_c - t.T_delta;
  }
  return t;
}

DerivedTable3 derive_table3() {
  std::vector<DmcConfiguration> active;
  for (const auto& cfg : enumerate_configurations()) {
    if (cfg.kind() == ConfigKind::kActive) active.push_back(cfg);
  }
  DerivedTable3 table;
  for (int k = 1; k <= 6; ++k) {
    const auto v = static_cast<VsiVector>(k);
    for (int s = 1; s <= 6; ++s) {
      const double start = -kSixty / 2.0 + (s - 1) * kSixty;
      std::vector<DmcConfiguration> picks;
      for (const auto& cfg : active) {
        bool ok = true;
        // Closed sector including both edges.
        for (int n = 0; n <= 12 && ok; ++n) {
          ok = aligned(cfg, v, balanced_voltages(start + kSixty * n / 12.0));
        }
        if (ok) picks.push_back(cfg);
      }
      if (picks.size() != 2) throw std::logic_error("table derivation did not find exactly two configurations");
      const Three at_edge = balanced_voltages(start);
      if (projection(picks[1], v, at_edge) > projection(picks[0], v, at_edge)) std::swap(picks[0], picks[1]);
      table.active[k - 1][s - 1] = {picks[0], picks[1]};
    }
  }
  return table;
}

const DerivedTable3& table3() {
  static const DerivedTable3 t = derive_table3();
  return t;
}

DmcConfiguration choose_zero_configuration(const std::optional<DmcConfiguration>& previous) {
  const auto& all = enumerate_configurations();
  if (!previous) return all[0];
  DmcConfiguration best = all[0];
  int best_n = 4;
  for (const auto& cfg : all) {
    if (cfg.kind() != ConfigKind::kZero) continue;
    const int n = commutations_between(*previous, cfg);
    if (n < best_n) {
      best = cfg;
      best_n = n;
    }
  }
  return best;
}

ConfigPair table3_lookup(VsiVector v, int sector, const std::optional<DmcConfiguration>& previous) {
  if (sector < 1 || sector > 6) throw DomainError("input sector must be in 1..6");
  if (!is_active(v)) {
    const auto z = choose_zero_configuration(previous);
    return {z, z};
  }
  return table3().active[index_of(v) - 1][sector - 1];
}

DutySchedule schedule_period(VsiVector v, const InputSectorState& in, double T_c,
                             const std::optional<DmcConfiguration>& previous) {
  DutySchedule s;
  s.theta_in = in.theta_in;
  s.T_c = T_c;
  s.configs = table3_lookup(v, in.sector, previous);
  if (is_active(v)) {
    s.raw = duty_cycles(in.theta_in);
    s.normalized = normalize_duties(s.raw.d_gamma, s.raw.d_delta);
    s.times = durations(s.normalized.d_gamma_n, T_c);
  } else {
    s.raw = {0.0, 0.0, 1.0};
    s.normalized = {1.0, 0.0};
    s.times = {T_c, 0.0};
  }
  return s;
}

int Table3Concordance::mismatches() const {
  int n = 0;
  for (const auto& c : cells) n += c.status == CellStatus::kMismatch ? 1 : 0;
  return n;
}

Table3Concordance compare_table3(const DerivedTable3& derived) {
  Table3Concordance rep;
  for (const auto& row : printed_table3()) {
    for (int s = 1; s <= 6; ++s) {
      Table3Cell cell{row.vector, s, row.cells[s - 1], {}, CellStatus::kMatch};
      if (is_active(row.vector)) {
        cell.derived = derived.active[index_of(row.vector) - 1][s - 1].to_string();
        cell.status = cell.derived == cell.printed ? CellStatus::kMatch : CellStatus::kMismatch;
      } else {
        cell.derived = "min-commutation zero";
        const auto a = DmcConfiguration::from_name(cell.printed.substr(0, 3));
        const auto b = DmcConfiguration::from_name(cell.printed.substr(5, 3));
        cell.status = a.kind() == ConfigKind::kZero && b.kind() == ConfigKind::kZero
                          ? CellStatus::kAdmissibleZero
                          : CellStatus::kMismatch;
      }
      rep.cells.push_back(std::move(cell));
    }
  }
  return rep;
}

std::string sector_roman(int sector) {
  static const char* names[] = {"I", "II", "III", "IV", "V", "VI"};
  if (sector < 1 || sector > 6) throw DomainError("sector must be in 1..6");
  return names[sector - 1];
}

std::string vsi_name(VsiVector v) { return "V" + std::to_string(index_of(v)); }

}  // namespace dtcmc
