#include "dtcmc/carrier.hpp"

#include <cmath>
#include <sstream>

#include "dtcmc/errors.hpp"

namespace dtcmc {

CarrierConfig::CarrierConfig(double A_tr, double f_tr, bool enabled)
    : A_tr_(A_tr), f_tr_(f_tr), enabled_(enabled) {
  if (!(A_tr >= 0.0) || !std::isfinite(A_tr)) throw ValidationError("must be >= 0", "carrier.A_tr");
  if (!(f_tr > 0.0) || !std::isfinite(f_tr)) throw ValidationError("must be > 0", "carrier.f_tr");
}

double triangle_value(double t, const CarrierConfig& cfg) {
  if (!cfg.enabled() || cfg.A_tr() == 0.0) return 0.0;
  // Phase in cycles, exact modular reduction in [0, 1).
  double ph = std::fmod(t * cfg.f_tr(), 1.0);
  if (ph < 0.0) ph += 1.0;
  double unit;
  if (ph < 0.25) {
    unit = 4.0 * ph;
  } else if (ph < 0.75) {
    unit = 2.0 - 4.0 * ph;
  } else {
    unit = 4.0 * ph - 4.0;
  }
  return cfg.A_tr() * unit;
}

double modulated_reference(double T_ref, double t, const CarrierConfig& cfg) {
  return T_ref + triangle_value(t, cfg);
}

std::string CarrierCheck::describe() const {
  std::ostringstream os;
  os << "max |dTe/dt| = " << max_torque_slope << " N*m/s " << (ok ? "<=" : ">")
     << " 4*(A_tr + B_H)/T_tr = " << bound << " N*m/s";
  return os.str();
}

CarrierCheck validate_carrier(double max_torque_slope, const CarrierConfig& cfg, double B_H) {
  CarrierCheck c;
  c.max_torque_slope = max_torque_slope;
  c.bound = 4.0 * (cfg.A_tr() + B_H) / cfg.T_tr();
  c.ok = max_torque_slope <= c.bound;
  return c;
}

}  // namespace dtcmc
