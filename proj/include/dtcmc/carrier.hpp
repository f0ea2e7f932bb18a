#pragma once

#include <string>

namespace dtcmc {

// High-frequency triangle superposed on the torque reference.
class CarrierConfig {
 public:
  CarrierConfig() = default;
  /// Throws ValidationError when A_tr < 0 or f_tr <= 0.
  CarrierConfig(double A_tr, double f_tr, bool enabled = true);

  double A_tr() const noexcept { return A_tr_; }
  double f_tr() const noexcept { return f_tr_; }
  double T_tr() const noexcept { return 1.0 / f_tr_; }
  bool enabled() const noexcept { return enabled_; }

 private:
  double A_tr_ = 0.0;
  double f_tr_ = 5000.0;
  bool enabled_ = false;
};

/// Symmetric triangle: 0 at t=0, +A at T/4, 0 at T/2, -A at 3T/4. Zero when
/// the carrier is disabled. The phase is reduced with fmod, so the value at
/// t and t + k T agree to rounding for any period count k.
double triangle_value(double t, const CarrierConfig& cfg);

double modulated_reference(double T_ref, double t, const CarrierConfig& cfg);

struct CarrierCheck {
  bool ok = false;
  double max_torque_slope = 0.0;  // left-hand side [N m/s]
  double bound = 0.0;             // 4 (A_tr + B_H) / T_tr [N m/s]

  std::string describe() const;
};

/// Carrier sizing rule: the steepest torque slope must not exceed
/// 4 (A_tr + B_H) / T_tr.
CarrierCheck validate_carrier(double max_torque_slope, const CarrierConfig& cfg, double B_H);

}  // namespace dtcmc
