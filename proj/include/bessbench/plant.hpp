#pragma once

// Per-string electro-thermal battery simulation. One step composes inverter
// loss, the SOC-OCV table, the equivalent-circuit current, Coulomb counting,
// ohmic heat, and a lumped thermal mass update. The stepper is a pure
// state-transition function.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bessbench/errors.hpp"

namespace bessbench {

struct OcvCurve {
  // (soc, volts) breakpoints, soc strictly increasing over [0,1], volts
  // strictly increasing (monotone open-circuit voltage).
  std::vector<std::pair<double, double>> points;

  void validate() const {
    if (points.size() < 2) throw ConfigError("ocv curve needs >= 2 points");
    if (points.front().first != 0.0 || points.back().first != 1.0) {
      throw ConfigError("ocv curve must cover soc [0,1]");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i].first <= points[i - 1].first) {
        throw ConfigError("ocv soc breakpoints must be strictly increasing");
      }
      if (points[i].second <= points[i - 1].second) {
        throw ConfigError("ocv voltages must be strictly increasing");
      }
    }
  }

  // NMC-like 11-point table, 3.0 V empty to 4.2 V full.
  static OcvCurve default_nmc() {
    return OcvCurve{{{0.0, 3.00},
                     {0.1, 3.30},
                     {0.2, 3.45},
                     {0.3, 3.55},
                     {0.4, 3.62},
                     {0.5, 3.68},
                     {0.6, 3.74},
                     {0.7, 3.82},
                     {0.8, 3.92},
                     {0.9, 4.05},
                     {1.0, 4.20}}};
  }
};

struct ThermalParams {
  double k1_k_per_kwh = 0.667;  // temperature gain per kWh of heat
  double k2_per_h = 0.1;        // convective loss rate, 1/h
  double tau_air_c = 25.0;      // ambient temperature
};

struct InverterParams {
  double a0_kw = 0.0;      // standby loss while converting
  double a1 = 0.0;         // linear loss coefficient
  double a2_per_kw = 0.0;  // quadratic loss coefficient
};

struct StringSpec {
  double energy_capacity_kwh = 0.0;  // nameplate energy
  double power_rating_kw = 0.0;      // symmetric AC power limit
  int n_cells = 1;
  double cell_capacity_ah = 120.0;
  double cell_resistance_ohm = 0.002;
  double soc_min = 0.05;
  double soc_max = 0.95;
  OcvCurve ocv = OcvCurve::default_nmc();
  ThermalParams thermal;
  InverterParams inverter;

  void validate() const {
    if (!(energy_capacity_kwh > 0.0)) throw ConfigError("string: energy capacity must be > 0");
    if (!(power_rating_kw > 0.0)) throw ConfigError("string: power rating must be > 0");
    if (n_cells < 1) throw ConfigError("string: need at least one cell");
    if (!(cell_capacity_ah > 0.0)) throw ConfigError("string: cell capacity must be > 0");
    if (!(cell_resistance_ohm > 0.0)) throw ConfigError("string: cell resistance must be > 0");
    if (!(0.0 <= soc_min && soc_min < soc_max && soc_max <= 1.0)) {
      throw ConfigError("string: need 0 <= soc_min < soc_max <= 1");
    }
    if (inverter.a0_kw < 0.0 || inverter.a1 < 0.0 || inverter.a2_per_kw < 0.0) {
      throw ConfigError("string: inverter loss coefficients must be >= 0");
    }
    if (!(thermal.k1_k_per_kwh > 0.0) || !(thermal.k2_per_h > 0.0)) {
      throw ConfigError("string: thermal coefficients must be > 0");
    }
    ocv.validate();
  }

  // Sized default string. Cell count follows the nameplate energy at the
  // mid-SOC open-circuit voltage; inverter coefficients give ~97-98% one-way
  // efficiency at rated power; thermal mass scales with capacity so a 10 degC
  // excess decays with a 10 h time constant.
  static StringSpec sized(double energy_kwh, double power_kw) {
    StringSpec s;
    s.energy_capacity_kwh = energy_kwh;
    s.power_rating_kw = power_kw;
    s.ocv = OcvCurve::default_nmc();
    const double v_mid = 3.68;
    s.n_cells = std::max(
        1, static_cast<int>(std::lround(energy_kwh * 1000.0 /
                                        (v_mid * s.cell_capacity_ah))));
    s.inverter.a0_kw = 0.0015 * power_kw;
    s.inverter.a1 = 0.01;
    s.inverter.a2_per_kw = 0.012 / power_kw;
    // 18 MJ of thermal mass per MWh of capacity: k1 = 3.6e6 J/kWh / C_th.
    const double c_th_j_per_k = 18000.0 * energy_kwh;
    s.thermal.k1_k_per_kwh = 3.6e6 / c_th_j_per_k;
    s.thermal.k2_per_h = 0.1;
    s.thermal.tau_air_c = 25.0;
    return s;
  }
};

struct StringState {
  double soc = 0.5;
  double temperature_c = 25.0;
};

struct SimStepResult {
  double p_applied_kw = 0.0;   // after rating and SOC-feasibility clamping
  double p_inv_loss_kw = 0.0;  // inverter conversion loss
  double p_heat_kw = 0.0;      // total heat (ohmic + inverter)
  double cell_current_a = 0.0; // positive = discharging
  StringState new_state;
  bool power_limited = false;  // clamped against the power rating
  bool soc_limited = false;    // clamped against the SOC window
  bool soc_clamped = false;    // Coulomb counter hit the hard [0,1] bounds
};

// Inverter conversion loss. The inverter is assumed off at zero power.
inline double inverter_loss(double p_kw, const InverterParams& inv,
                            double rating_kw) {
  if (std::abs(p_kw) > rating_kw) {
    throw std::domain_error("inverter_loss: |p| = " + std::to_string(p_kw) +
                            " exceeds rating " + std::to_string(rating_kw));
  }
  if (p_kw == 0.0) return 0.0;
  const double a = std::abs(p_kw);
  return inv.a0_kw + inv.a1 * a + inv.a2_per_kw * p_kw * p_kw;
}

inline double ocv_from_soc(double soc, const OcvCurve& curve) {
  if (soc < 0.0 || soc > 1.0) {
    throw std::domain_error("ocv_from_soc: soc " + std::to_string(soc) +
                            " outside [0,1]");
  }
  const auto& pts = curve.points;
  if (soc <= pts.front().first) return pts.front().second;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (soc <= pts[i].first) {
      const double f =
          (soc - pts[i - 1].first) / (pts[i].first - pts[i - 1].first);
      return pts[i - 1].second + f * (pts[i].second - pts[i - 1].second);
    }
  }
  return pts.back().second;
}

// Cell current solving p = ocv*I - I^2*r (small root). Positive p (cell
// delivering power) gives positive current; charging gives negative current.
// Written in the cancellation-free form 2p / (ocv + sqrt(ocv^2 - 4 r p)).
inline double cell_current(double p_cell_w, double ocv_v, double r_ohm) {
  const double disc = ocv_v * ocv_v - 4.0 * r_ohm * p_cell_w;
  if (disc < 0.0) {
    throw SolverError("cell_current: requested power " +
                      std::to_string(p_cell_w) +
                      " W exceeds the deliverable limit");
  }
  return 2.0 * p_cell_w / (ocv_v + std::sqrt(disc));
}

// All electrical losses end up as heat: string-level ohmic loss plus the
// inverter loss, in kW.
inline double heat_power(double current_a, double r_ohm, int n_cells,
                         double p_inv_loss_kw) {
  return static_cast<double>(n_cells) * current_a * current_a * r_ohm / 1000.0 +
         p_inv_loss_kw;
}

// Lumped thermal mass update over one step of dt hours.
inline double thermal_step(double tau_prev_c, double p_heat_prev_kw,
                           const ThermalParams& th, double dt_hours) {
  return tau_prev_c + dt_hours * (th.k1_k_per_kwh * p_heat_prev_kw -
                                  th.k2_per_h * (tau_prev_c - th.tau_air_c));
}

struct CoulombResult {
  double soc = 0.0;
  bool clamped = false;
};

// Coulomb counting: positive (discharge) current lowers SOC.
inline CoulombResult coulomb_count(double soc_prev, double current_a,
                                   double dt_hours, double cell_capacity_ah) {
  const double soc = soc_prev - current_a * dt_hours / cell_capacity_ah;
  if (soc < 0.0) return {0.0, true};
  if (soc > 1.0) return {1.0, true};
  return {soc, false};
}

namespace detail {

// DC-side power as a function of AC setpoint: p_dc = p - loss(p). Inverting
// that relation gives the AC setpoint that lands exactly on a DC target.
// Positive branch (charging): p*(1-a1) - a2*p^2 - a0 = target.
inline double invert_dc_charge(double target_dc_kw, const InverterParams& inv,
                               double rating_kw) {
  if (target_dc_kw <= 0.0) return 0.0;
  const double lin = 1.0 - inv.a1;
  const double c = inv.a0_kw + target_dc_kw;
  if (inv.a2_per_kw == 0.0) {
    return lin > 0.0 ? c / lin : rating_kw;
  }
  const double disc = lin * lin - 4.0 * inv.a2_per_kw * c;
  if (disc < 0.0) return rating_kw;  // target beyond the inverter's reach
  return (lin - std::sqrt(disc)) / (2.0 * inv.a2_per_kw);
}

// Negative branch (discharging): p*(1+a1) - a2*p^2 - a0 = target, target < 0.
// Returns the (non-positive) AC setpoint.
inline double invert_dc_discharge(double target_dc_kw,
                                  const InverterParams& inv,
                                  double rating_kw) {
  if (target_dc_kw >= -inv.a0_kw) return 0.0;  // standby loss eats the margin
  const double lin = 1.0 + inv.a1;
  const double c = inv.a0_kw + target_dc_kw;
  if (inv.a2_per_kw == 0.0) {
    return c / lin;
  }
  const double disc = lin * lin - 4.0 * inv.a2_per_kw * c;
  if (disc < 0.0) return -rating_kw;
  return (lin - std::sqrt(disc)) / (2.0 * inv.a2_per_kw);
}

}  // namespace detail

// Largest AC charging power (>= 0) that keeps SOC at or below soc_max after
// one step. Zero when there is no headroom.
inline double max_charge_power(const StringState& state,
                               const StringSpec& spec, double dt_hours) {
  const double headroom = spec.soc_max - state.soc;
  if (headroom <= 0.0) return 0.0;
  const double i_chg = headroom * spec.cell_capacity_ah / dt_hours;  // A
  const double ocv = ocv_from_soc(std::clamp(state.soc, 0.0, 1.0), spec.ocv);
  const double p_dc =
      (ocv * i_chg + i_chg * i_chg * spec.cell_resistance_ohm) *
      static_cast<double>(spec.n_cells) / 1000.0;
  const double p_ac =
      detail::invert_dc_charge(p_dc, spec.inverter, spec.power_rating_kw);
  return std::min(p_ac, spec.power_rating_kw);
}

// Most negative AC discharging power that keeps SOC at or above soc_min.
inline double max_discharge_power(const StringState& state,
                                  const StringSpec& spec, double dt_hours) {
  const double avail = state.soc - spec.soc_min;
  if (avail <= 0.0) return 0.0;
  double i_dis = avail * spec.cell_capacity_ah / dt_hours;  // A
  const double ocv = ocv_from_soc(std::clamp(state.soc, 0.0, 1.0), spec.ocv);
  // The cell cannot deliver beyond the peak of ocv*I - I^2*r.
  i_dis = std::min(i_dis, ocv / (2.0 * spec.cell_resistance_ohm));
  const double p_dc =
      -(ocv * i_dis - i_dis * i_dis * spec.cell_resistance_ohm) *
      static_cast<double>(spec.n_cells) / 1000.0;
  const double p_ac =
      detail::invert_dc_discharge(p_dc, spec.inverter, spec.power_rating_kw);
  return std::max(p_ac, -spec.power_rating_kw);
}

// One simulation step: clamp the setpoint (rating first, then SOC window),
// run the electrical chain, count coulombs, and update the thermal state.
inline SimStepResult simulate_step(const StringState& state, double p_set_kw,
                                   const StringSpec& spec, double dt_hours) {
  if (!(dt_hours > 0.0)) throw ConfigError("simulate_step: dt must be > 0");
  SimStepResult r;

  double p = p_set_kw;
  if (p > spec.power_rating_kw) {
    p = spec.power_rating_kw;
    r.power_limited = true;
  } else if (p < -spec.power_rating_kw) {
    p = -spec.power_rating_kw;
    r.power_limited = true;
  }
  if (p > 0.0) {
    const double bound = max_charge_power(state, spec, dt_hours);
    if (p > bound) {
      p = bound;
      r.soc_limited = true;
    }
  } else if (p < 0.0) {
    const double bound = max_discharge_power(state, spec, dt_hours);
    if (p < bound) {
      p = bound;
      r.soc_limited = true;
    }
  }
  r.p_applied_kw = p;

  double soc_next = state.soc;
  if (p != 0.0) {
    r.p_inv_loss_kw = inverter_loss(p, spec.inverter, spec.power_rating_kw);
    const double p_dc_kw = p - r.p_inv_loss_kw;  // into the cells
    const double p_cell_w = -p_dc_kw * 1000.0 / static_cast<double>(spec.n_cells);
    const double ocv = ocv_from_soc(std::clamp(state.soc, 0.0, 1.0), spec.ocv);
    r.cell_current_a = cell_current(p_cell_w, ocv, spec.cell_resistance_ohm);
    const CoulombResult cc = coulomb_count(state.soc, r.cell_current_a,
                                           dt_hours, spec.cell_capacity_ah);
    soc_next = cc.soc;
    r.soc_clamped = cc.clamped;
    // The SOC-feasibility clamp is algebraically exact; snap float dust so a
    // bounded trajectory stays bounded bit-for-bit.
    if (std::abs(soc_next - spec.soc_max) < 1e-12) soc_next = spec.soc_max;
    if (std::abs(soc_next - spec.soc_min) < 1e-12) soc_next = spec.soc_min;
  }
  r.p_heat_kw = heat_power(r.cell_current_a, spec.cell_resistance_ohm,
                           spec.n_cells, r.p_inv_loss_kw);
  r.new_state.soc = soc_next;
  r.new_state.temperature_c =
      thermal_step(state.temperature_c, r.p_heat_kw, spec.thermal, dt_hours);
  return r;
}

// Average total-loss fraction at half rated power; used by the dispatcher's
// linear heat proxy.
inline double calibrate_heat_fraction(const StringSpec& spec,
                                      double dt_hours = 0.25) {
  StringState mid{0.5 * (spec.soc_min + spec.soc_max), spec.thermal.tau_air_c};
  const double p = 0.5 * spec.power_rating_kw;
  const SimStepResult ch = simulate_step(mid, p, spec, dt_hours);
  const SimStepResult dch = simulate_step(mid, -p, spec, dt_hours);
  return 0.5 * (ch.p_heat_kw + dch.p_heat_kw) / p;
}

}  // namespace bessbench
