#include "dtcmc/dtc_core.hpp"

#include <cmath>
#include <numbers>

#include "dtcmc/errors.hpp"

namespace dtcmc {

namespace {

using enum VsiVector;

constexpr std::array<std::array<VsiVector, 6>, 6> kTable1{{
    {V2, V3, V4, V5, V6, V1},
    {V7, V0, V7, V0, V7, V0},
    {V6, V1, V2, V3, V4, V5},
    {V3, V4, V5, V6, V1, V2},
    {V0, V7, V0, V7, V0, V7},
    {V5, V6, V1, V2, V3, V4},
}};

}  // namespace

EstimatorState update_flux_estimate(const EstimatorState& prev, Vec2 v_s, Vec2 i_s, double Rs,
                                    int pole_pairs, double dt) {
  if (!(dt > 0.0)) throw ValidationError("must be > 0", "dt");
  EstimatorState next = prev;
  const Vec2 emf = prev.includes_rs_drop ? v_s - Rs * i_s : v_s;
  next.phi_est = prev.phi_est + emf * dt;
  next.Te_est = 1.5 * pole_pairs *
                (next.phi_est.real() * i_s.imag() - next.phi_est.imag() * i_s.real());
  return next;
}

int flux_sector(Vec2 phi) {
  if (phi == Vec2{}) throw DomainError("flux sector undefined for the zero vector");
  constexpr double kSixty = std::numbers::pi / 3.0;
  // Shift so sector 1 starts at 0, then wrap to [0, 2pi).
  double a = std::atan2(phi.imag(), phi.real()) + kSixty / 2.0;
  a = std::fmod(a, 2.0 * std::numbers::pi);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  int s = static_cast<int>(std::floor(a / kSixty));
  return (s % 6) + 1;
}

int flux_comparator(double error, int prev_flag, double B_phi) {
  if (!(B_phi > 0.0)) throw ValidationError("must be > 0", "B_phi");
  if (error > B_phi) return 1;
  if (error < -B_phi) return 0;
  return prev_flag;
}

int torque_comparator(double error, int prev_flag, double B_H) {
  if (!(B_H > 0.0)) throw ValidationError("must be > 0", "B_H");
  if (error > B_H) return 1;
  if (error < -B_H) return -1;
  if ((prev_flag == 1 && error <= 0.0) || (prev_flag == -1 && error >= 0.0)) return 0;
  return prev_flag;
}

const std::array<std::array<VsiVector, 6>, 6>& table1() { return kTable1; }

VsiVector table1_lookup(const DtcCommand& cmd) {
  if (cmd.sector < 1 || cmd.sector > 6) throw DomainError("flux sector must be in 1..6");
  int row = 0;
  if (cmd.phi_flag == 1) {
    row = 0;
  } else if (cmd.phi_flag == 0) {
    row = 3;
  } else {
    throw DomainError("flux flag must be 0 or 1");
  }
  switch (cmd.tau_flag) {
    case 1: break;
    case 0: row += 1; break;
    case -1: row += 2; break;
    default: throw DomainError("torque flag must be -1, 0 or 1");
  }
  return kTable1[row][cmd.sector - 1];
}

}  // namespace dtcmc
