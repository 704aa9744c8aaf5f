#pragma once

// Tariffs, grid power balance, per-step energy cost, and the no-battery
// baseline cost series.

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bessbench/errors.hpp"
#include "bessbench/ingest.hpp"

namespace bessbench {

struct Tariff {
  std::vector<double> buy_price;  // time-of-use price per step, EUR/kWh
  double sell_price = 0.086;      // fixed feed-in price, EUR/kWh
  double tax_ratio = 0.0;         // multiplicative trading tax, in [0,1)

  void validate() const {
    if (buy_price.empty()) throw ConfigError("tariff: empty buy price series");
    for (double p : buy_price) {
      if (!(p > 0.0)) throw ConfigError("tariff: buy prices must be > 0");
    }
    if (sell_price < 0.0) throw ConfigError("tariff: sell price must be >= 0");
    if (tax_ratio < 0.0 || tax_ratio >= 1.0) {
      throw ConfigError("tariff: tax ratio must be in [0,1)");
    }
  }
};

struct GridSample {
  double load_kw = 0.0;
  double pv_kw = 0.0;
  double dt_hours = 0.25;
};

// Net grid power: load minus PV plus total battery power (positive battery
// power = charging, i.e. extra demand on the bus).
inline double grid_power(const GridSample& sample,
                         std::span<const double> battery_powers_kw,
                         std::size_t n_strings) {
  if (battery_powers_kw.size() != n_strings) {
    throw ConfigError("grid_power: got " +
                      std::to_string(battery_powers_kw.size()) +
                      " battery powers for " + std::to_string(n_strings) +
                      " configured strings");
  }
  double p = sample.load_kw - sample.pv_kw;
  for (double b : battery_powers_kw) p += b;
  return p;
}

// Energy cost of one step. Import is billed at the time-of-use price plus
// tax; export is remunerated at the feed-in price less tax.
inline double step_cost(double p_grid_kw, std::size_t t, const Tariff& tariff,
                        double dt_hours) {
  if (t >= tariff.buy_price.size()) {
    throw std::out_of_range("step_cost: step " + std::to_string(t) +
                            " outside tariff horizon of " +
                            std::to_string(tariff.buy_price.size()));
  }
  if (p_grid_kw >= 0.0) {
    return p_grid_kw * dt_hours * tariff.buy_price[t] * (1.0 + tariff.tax_ratio);
  }
  return p_grid_kw * dt_hours * tariff.sell_price * (1.0 - tariff.tax_ratio);
}

// Cost series with zero battery power at every step.
inline std::vector<double> baseline_cost_series(const TimeSeries& profiles,
                                                const Tariff& tariff) {
  if (profiles.size() == 0) throw DataError("baseline_cost_series: no samples");
  if (tariff.buy_price.size() < profiles.size()) {
    throw DataError("baseline_cost_series: tariff shorter than profiles");
  }
  std::vector<double> out(profiles.size());
  for (std::size_t t = 0; t < profiles.size(); ++t) {
    const double p = profiles.load_kw[t] - profiles.pv_kw[t];
    out[t] = step_cost(p, t, tariff, profiles.dt_hours);
  }
  return out;
}

}  // namespace bessbench
