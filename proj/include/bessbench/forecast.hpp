#pragma once

// Horizon forecasts of load and PV: perfect foresight or day-periodic
// persistence. Prices are handled separately (day-ahead prices are known).

#include <cstddef>
#include <string>
#include <vector>

#include "bessbench/errors.hpp"
#include "bessbench/ingest.hpp"

namespace bessbench {

struct Forecast {
  std::vector<double> load_kw;
  std::vector<double> pv_kw;
  std::size_t origin = 0;  // first forecast step index
};

// The true future window, verbatim.
inline Forecast perfect(const TimeSeries& profiles, std::size_t t0,
                        std::size_t h) {
  if (t0 + h > profiles.size()) {
    throw DataError("perfect forecast: window [" + std::to_string(t0) + ", " +
                    std::to_string(t0 + h) + ") exceeds series length " +
                    std::to_string(profiles.size()));
  }
  Forecast f;
  f.origin = t0;
  f.load_kw.assign(profiles.load_kw.begin() + static_cast<std::ptrdiff_t>(t0),
                   profiles.load_kw.begin() + static_cast<std::ptrdiff_t>(t0 + h));
  f.pv_kw.assign(profiles.pv_kw.begin() + static_cast<std::ptrdiff_t>(t0),
                 profiles.pv_kw.begin() + static_cast<std::ptrdiff_t>(t0 + h));
  return f;
}

// Same-time-yesterday persistence. Horizon steps past one period tile the
// most recent observed day so no future sample is ever read; inside the
// first day of data the forecast repeats that first day.
inline Forecast persistence(const TimeSeries& profiles, std::size_t t0,
                            std::size_t h, std::size_t period = 96) {
  if (period == 0) throw ConfigError("persistence: period must be > 0");
  Forecast f;
  f.origin = t0;
  f.load_kw.resize(h);
  f.pv_kw.resize(h);
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t j = t0 + (i % period);
    std::size_t src = j >= period ? j - period : j;
    if (src >= profiles.size()) src = profiles.size() - 1;
    f.load_kw[i] = profiles.load_kw[src];
    f.pv_kw[i] = profiles.pv_kw[src];
  }
  return f;
}

enum class ForecastMode { Perfect, Persistence };

inline Forecast make_forecast(ForecastMode mode, const TimeSeries& profiles,
                              std::size_t t0, std::size_t h,
                              std::size_t period = 96) {
  return mode == ForecastMode::Perfect ? perfect(profiles, t0, h)
                                       : persistence(profiles, t0, h, period);
}

}  // namespace bessbench
