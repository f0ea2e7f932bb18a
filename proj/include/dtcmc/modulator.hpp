#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dtcmc/converter.hpp"
#include "dtcmc/dtc_core.hpp"

namespace dtcmc {

// Input-voltage (and, at unity power factor, input-current reference)
// position in the six-sector hexagon. Sector 1 (I) covers [-30, 30) deg and
// theta_in is measured from each sector's clockwise edge.
struct InputSectorState {
  double theta_abs = 0.0;  // [rad], in (-pi, pi]
  int sector = 1;          // 1..6
  double theta_in = 0.0;   // [0, pi/3)
};

/// Throws DomainError on a zero input voltage vector.
InputSectorState input_sector(const Three& v_i);
InputSectorState input_sector_from_angle(double theta_abs);

struct Duties {
  double d_gamma = 0.0;
  double d_delta = 0.0;
  double d_0 = 0.0;
};

/// d_gamma = sin(pi/3 - theta_in), d_delta = sin(theta_in), d_0 the rest.
/// Throws DomainError outside [0, pi/3).
Duties duty_cycles(double theta_in);

struct NormalizedDuties {
  double d_gamma_n = 0.0;
  double d_delta_n = 0.0;
};

/// Rescales the two active duties so they fill the whole period.
NormalizedDuties normalize_duties(double d_gamma, double d_delta);

struct Durations {
  double T_gamma = 0.0;
  double T_delta = 0.0;
};

/// T_gamma = d_gamma_n T_c and T_delta = (1 - d_gamma_n) T_c, rounded so that
/// T_gamma + T_delta == T_c exactly.
Durations durations(double d_gamma_n, double T_c);

struct ConfigPair {
  DmcConfiguration gamma;
  DmcConfiguration delta;

  std::string to_string() const { return gamma.name() + ", " + delta.name(); }
  friend bool operator==(const ConfigPair&, const ConfigPair&) = default;
};

struct DutySchedule {
  double theta_in = 0.0;
  Duties raw;
  NormalizedDuties normalized;
  Durations times;
  double T_c = 0.0;
  ConfigPair configs;
};

// Active rows V1..V6 derived from the port equations; zero vectors are not
// stored because their configuration depends on the previous state.
struct DerivedTable3 {
  std::array<std::array<ConfigPair, 6>, 6> active;  // [vector-1][sector-1]
};

/// For each active vector and input sector, picks the two active
/// configurations whose output vector lies on the vector's direction with
/// positive length across the whole sector. gamma is the one fed by the line
/// voltage that is largest at the sector's clockwise edge.
DerivedTable3 derive_table3();

/// Cached result of derive_table3().
const DerivedTable3& table3();

/// Zero configuration needing the fewest commutations from `previous`;
/// ties resolve to the lowest canonical id. Without history returns "aaa".
DmcConfiguration choose_zero_configuration(const std::optional<DmcConfiguration>& previous);

/// Configuration pair for one period. Zero vectors yield the chosen zero
/// configuration paired with itself.
ConfigPair table3_lookup(VsiVector v, int sector,
                         const std::optional<DmcConfiguration>& previous = std::nullopt);

/// Full per-period schedule from the input angle and the selected vector.
DutySchedule schedule_period(VsiVector v, const InputSectorState& in, double T_c,
                             const std::optional<DmcConfiguration>& previous = std::nullopt);

enum class CellStatus { kMatch, kMismatch, kAdmissibleZero };

struct Table3Cell {
  VsiVector vector;
  int sector;
  std::string printed;
  std::string derived;  // "min-commutation zero" on zero rows
  CellStatus status;
};

struct Table3Concordance {
  std::vector<Table3Cell> cells;  // 48 entries, published row order
  int mismatches() const;
};

Table3Concordance compare_table3(const DerivedTable3& derived);

std::string sector_roman(int sector);
std::string vsi_name(VsiVector v);

}  // namespace dtcmc
