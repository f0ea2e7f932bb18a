#include "dtcmc/converter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtcmc/errors.hpp"

namespace dtcmc {

namespace {

const Vec2 kA{-0.5, std::numbers::sqrt3 / 2.0};
const Vec2 kA2{-0.5, -std::numbers::sqrt3 / 2.0};
ConfigKind kind_of(const std::array<int, 3>& asg) {
  if (asg[0] == asg[1] && asg[1] == asg[2]) return ConfigKind::kZero;
  if (asg[0] != asg[1] && asg[1] != asg[2] && asg[0] != asg[2]) return ConfigKind::kRotating;
  return ConfigKind::kActive;
}


}  // namespace

const std::array<DmcConfiguration, 27>& enumerate_configurations() {
  static const std::array<DmcConfiguration, 27> all = [] {
    std::array<std::array<int, 3>, 27> raw{};
    int n = 0;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z) raw[n++] = {x, y, z};
    // Lexicographic within each kind; kinds ordered zero, active, rotating.
    std::stable_sort(raw.begin(), raw.end(), [](const auto& l, const auto& r) {
      return static_cast<int>(kind_of(l)) < static_cast<int>(kind_of(r));
    });
    std::array<DmcConfiguration, 27> out;
    for (int i = 0; i < 27; ++i) out[i] = DmcConfiguration(raw[i], i + 1);
    return out;
  }();
  return all;
}

DmcConfiguration DmcConfiguration::from_name(std::string_view name) {
  if (name.size() != 3) throw ValidationError("configuration name must have 3 letters: '" + std::string(name) + "'");
  std::array<int, 3> asg{};
  for (int k = 0; k < 3; ++k) {
    const char c = name[k];
    if (c < 'a' || c > 'c') throw ValidationError("configuration letters must be a, b or c: '" + std::string(name) + "'");
    asg[k] = c - 'a';
  }
  for (const auto& cfg : enumerate_configurations()) {
    if (cfg.assignment() == asg) return cfg;
  }
  throw std::logic_error("configuration enumeration is incomplete");
}

std::string DmcConfiguration::name() const {
  return {phase_letter(assignment_[0]), phase_letter(assignment_[1]), phase_letter(assignment_[2])};
}

ConfigKind DmcConfiguration::kind() const noexcept { return kind_of(assignment_); }

SwitchMatrix to_switch_matrix(const DmcConfiguration& cfg) {
  SwitchMatrix m{};
  for (int k = 0; k < 3; ++k) m[k][cfg.input_of(k)] = 1;
  return m;
}

Three apply_voltages(const DmcConfiguration& cfg, const Three& v_i) {
  const auto& a = cfg.assignment();
  return {v_i[a[0]], v_i[a[1]], v_i[a[2]]};
}

Three apply_currents(const DmcConfiguration& cfg, const Three& i_o) {
  Three i_i{0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) i_i[cfg.input_of(k)] += i_o[k];
  return i_i;
}

PortVectors apply_ports(const DmcConfiguration& cfg, const Three& v_i, const Three& i_o) {
  return {v_i, apply_voltages(cfg, v_i), i_o, apply_currents(cfg, i_o)};
}

Vec2 output_space_vector(const Three& x) { return (2.0 / 3.0) * (x[0] + kA * x[1] + kA2 * x[2]); }

Three phase_quantities(Vec2 x) {
  return {x.real(), (kA2 * x).real(), (kA * x).real()};
}

Classification classify(const DmcConfiguration& cfg) {
  Classification c;
  c.kind = cfg.kind();
  if (c.kind != ConfigKind::kActive) return c;
  const auto& a = cfg.assignment();
  // Find the output phase that does not share its input with another.
  for (int k = 0; k < 3; ++k) {
    const int o1 = (k + 1) % 3;
    const int o2 = (k + 2) % 3;
    if (a[o1] == a[o2] && a[k] != a[o1]) {
      c.direction = static_cast<VsiVector>(1 + 2 * k);
      c.from_input = a[k];
      c.to_input = a[o1];
      break;
    }
  }
  return c;
}

int commutations_between(const DmcConfiguration& a, const DmcConfiguration& b) {
  int n = 0;
  for (int k = 0; k < 3; ++k) n += a.input_of(k) != b.input_of(k) ? 1 : 0;
  return n;
}

Vec2 vsi_direction(VsiVector v) {
  if (!is_active(v)) return {};
  const double ang = (index_of(v) - 1) * std::numbers::pi / 3.0;
  return {std::cos(ang), std::sin(ang)};
}

char phase_letter(int input_phase) { return static_cast<char>('a' + input_phase); }

}  // namespace dtcmc
