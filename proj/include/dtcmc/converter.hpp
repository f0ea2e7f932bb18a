#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "dtcmc/dtc_core.hpp"
#include "dtcmc/machine.hpp"

namespace dtcmc {

// Per-phase quantities in phase order (a, b, c) on the input side or
// (A, B, C) on the output side.
using Three = std::array<double, 3>;

enum class ConfigKind { kZero, kActive, kRotating };

// One legal 3x3 connection pattern: every output phase is tied to exactly one
// input phase. Named by the three input letters in output order A, B, C,
// e.g. "abb" connects A->a, B->b, C->b.
class DmcConfiguration {
 public:
  DmcConfiguration() = default;

  /// Throws ValidationError on anything other than three letters from {a,b,c}.
  static DmcConfiguration from_name(std::string_view name);

  const std::array<int, 3>& assignment() const noexcept { return assignment_; }
  int input_of(int output_phase) const { return assignment_.at(output_phase); }
  /// Canonical index 1..27 (zero configs, then active, then rotating).
  int id() const noexcept { return id_; }
  std::string name() const;
  ConfigKind kind() const noexcept;

  friend bool operator==(const DmcConfiguration&, const DmcConfiguration&) = default;

 private:
  friend const std::array<DmcConfiguration, 27>& enumerate_configurations();
  explicit DmcConfiguration(std::array<int, 3> assignment, int id)
      : assignment_(assignment), id_(id) {}

  std::array<int, 3> assignment_{0, 0, 0};
  int id_ = 1;
};

// Binary M(t): rows are output phases, columns input phases.
using SwitchMatrix = std::array<std::array<int, 3>, 3>;

SwitchMatrix to_switch_matrix(const DmcConfiguration& cfg);

struct PortVectors {
  Three v_i{};  // input phase voltages [V]
  Three v_o{};  // output phase voltages [V]
  Three i_o{};  // output phase currents [A]
  Three i_i{};  // input phase currents [A]
};

/// All 27 configurations in canonical order: aaa, bbb, ccc, the 18 two-phase
/// configurations in lexicographic order, then the 6 permutations.
const std::array<DmcConfiguration, 27>& enumerate_configurations();

/// v_o = M v_i.
Three apply_voltages(const DmcConfiguration& cfg, const Three& v_i);
/// i_i = M^T i_o.
Three apply_currents(const DmcConfiguration& cfg, const Three& i_o);
PortVectors apply_ports(const DmcConfiguration& cfg, const Three& v_i, const Three& i_o);

/// Amplitude-invariant transform (2/3)(x_A + a x_B + a^2 x_C), a = e^{j 2pi/3}.
Vec2 output_space_vector(const Three& x);
/// Inverse of the above for a zero-sequence-free set.
Three phase_quantities(Vec2 x);

struct Classification {
  ConfigKind kind = ConfigKind::kZero;
  // Active only: the output vector equals (2/3) (v_from - v_to) along
  // `direction`, one of V1, V3, V5 (the axis of the output phase that sits
  // alone on input `from`).
  VsiVector direction = VsiVector::V0;
  int from_input = -1;
  int to_input = -1;
};

Classification classify(const DmcConfiguration& cfg);

/// Number of output phases whose input connection differs.
int commutations_between(const DmcConfiguration& a, const DmcConfiguration& b);

/// Unit vector of an active VSI vector, V_k at (k-1)*60 degrees.
Vec2 vsi_direction(VsiVector v);

char phase_letter(int input_phase);

}  // namespace dtcmc
