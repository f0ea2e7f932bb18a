#pragma once

#include <array>

#include "dtcmc/machine.hpp"

namespace dtcmc {

// Voltage-source-inverter vector as selected by the classic DTC table.
// V0 = [000], V1..V6 active at (k-1)*60 deg, V7 = [111].
enum class VsiVector : int { V0 = 0, V1, V2, V3, V4, V5, V6, V7 };

inline bool is_active(VsiVector v) { return v != VsiVector::V0 && v != VsiVector::V7; }
inline int index_of(VsiVector v) { return static_cast<int>(v); }

struct EstimatorState {
  Vec2 phi_est{};        // estimated stator flux [Wb]
  double Te_est = 0.0;   // estimated torque [N m]
  bool includes_rs_drop = true;
};

/// One forward-Euler step of the voltage-model flux estimator followed by the
/// torque estimate from the new flux and the measured current.
EstimatorState update_flux_estimate(const EstimatorState& prev, Vec2 v_s, Vec2 i_s, double Rs,
                                    int pole_pairs, double dt);

/// Stator-flux sector 1..6, sector i covering [-30 + (i-1)*60, 30 + (i-1)*60) deg.
/// Throws DomainError on the zero vector.
int flux_sector(Vec2 phi);

/// Two-level flux comparator: 1 raises flux, 0 lowers it.
int flux_comparator(double error, int prev_flag, double B_phi);

/// Three-level torque comparator. Saturates to +-1 outside the band and
/// returns to 0 when the error crosses zero against the previous flag.
int torque_comparator(double error, int prev_flag, double B_H);

struct DtcCommand {
  int phi_flag = 1;  // {1, 0}
  int tau_flag = 0;  // {1, 0, -1}
  int sector = 1;    // 1..6
};

VsiVector table1_lookup(const DtcCommand& cmd);

// The classic switching table as rows ordered (phi, tau) =
// (1,1), (1,0), (1,-1), (0,1), (0,0), (0,-1); columns are sectors 1..6.
const std::array<std::array<VsiVector, 6>, 6>& table1();

}  // namespace dtcmc
