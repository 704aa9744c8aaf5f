#pragma once

// 15-minute load/PV/price profile handling: CSV ingest with strict spacing
// validation, day-ahead price scaling, and a deterministic synthetic
// profile generator for tests and demos.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "bessbench/errors.hpp"
#include "bessbench/rng.hpp"

namespace bessbench {

inline constexpr std::int64_t kQuarterHourSeconds = 900;

struct TimeSeries {
  std::vector<std::int64_t> timestamps;  // unix seconds, UTC
  std::vector<double> load_kw;
  std::vector<double> pv_kw;
  std::vector<double> price_eur_kwh;  // empty if the source had no prices
  double dt_hours = 0.25;

  std::size_t size() const { return timestamps.size(); }
  bool has_prices() const { return !price_eur_kwh.empty(); }

  void validate() const {
    const std::int64_t step =
        static_cast<std::int64_t>(std::llround(dt_hours * 3600.0));
    if (timestamps.empty()) throw DataError("time series is empty");
    if (load_kw.size() != size() || pv_kw.size() != size() ||
        (has_prices() && price_eur_kwh.size() != size())) {
      throw DataError("time series columns have inconsistent lengths");
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if (i > 0) {
        const std::int64_t gap = timestamps[i] - timestamps[i - 1];
        if (gap == 0) {
          throw DataError("duplicate timestamp at row " + std::to_string(i + 1));
        }
        if (gap != step) {
          throw DataError("gap or irregular spacing before row " +
                          std::to_string(i + 1) + ": expected " +
                          std::to_string(step) + " s, got " +
                          std::to_string(gap) + " s");
        }
      }
      if (load_kw[i] < 0.0) {
        throw DataError("negative load at row " + std::to_string(i + 1));
      }
      if (pv_kw[i] < 0.0) {
        throw DataError("negative pv at row " + std::to_string(i + 1));
      }
    }
  }
};

namespace detail {

// Days-from-civil (Howard Hinnant's algorithm); avoids timezone machinery.
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<std::int64_t>(era) * 146097 +
         static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yy + (m <= 2));
}

}  // namespace detail

// Parses "YYYY-MM-DDTHH:MM:SSZ" (or with a trailing "+00:00") to unix seconds.
inline std::int64_t parse_rfc3339(const std::string& s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
  char sep = 0;
  const int got = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &y, &mo, &d,
                              &sep, &h, &mi, &se);
  if (got != 7 || (sep != 'T' && sep != ' ')) {
    throw DataError("unparseable timestamp: '" + s + "'");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60) {
    throw DataError("timestamp out of range: '" + s + "'");
  }
  return detail::days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

inline std::string format_rfc3339(std::int64_t t) {
  std::int64_t days = t / 86400;
  std::int64_t rem = t % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int y, m, d;
  detail::civil_from_days(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                static_cast<int>(rem % 60));
  return buf;
}

struct CsvColumnMap {
  std::string timestamp = "timestamp";
  std::string load = "load_kw";
  std::string pv = "pv_kw";
  std::string price = "price_eur_kwh";  // optional column
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
      field.pop_back();
    }
    std::size_t b = 0;
    while (b < field.size() && field[b] == ' ') ++b;
    out.push_back(field.substr(b));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline double parse_double_field(const std::string& s, std::size_t row,
                                 const std::string& col) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("row " + std::to_string(row) + ": bad numeric value '" +
                    s + "' in column " + col);
  }
}

}  // namespace detail

inline TimeSeries load_csv(const std::filesystem::path& path,
                           const CsvColumnMap& cols = {}) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: " + path.string());
  const auto header = detail::split_csv_line(line);

  auto find_col = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    return std::nullopt;
  };
  const auto ts_col = find_col(cols.timestamp);
  const auto load_col = find_col(cols.load);
  const auto pv_col = find_col(cols.pv);
  const auto price_col = find_col(cols.price);
  if (!ts_col || !load_col || !pv_col) {
    throw DataError(path.string() + ": header must contain columns '" +
                    cols.timestamp + "', '" + cols.load + "', '" + cols.pv +
                    "'");
  }

  TimeSeries ts;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = detail::split_csv_line(line);
    const std::size_t need =
        std::max({*ts_col, *load_col, *pv_col, price_col.value_or(0)});
    if (fields.size() <= need) {
      throw DataError("row " + std::to_string(row) + ": expected at least " +
                      std::to_string(need + 1) + " fields");
    }
    ts.timestamps.push_back(parse_rfc3339(fields[*ts_col]));
    ts.load_kw.push_back(
        detail::parse_double_field(fields[*load_col], row, cols.load));
    ts.pv_kw.push_back(
        detail::parse_double_field(fields[*pv_col], row, cols.pv));
    if (price_col) {
      ts.price_eur_kwh.push_back(
          detail::parse_double_field(fields[*price_col], row, cols.price));
    }
  }
  ts.validate();
  return ts;
}

inline void write_csv(const TimeSeries& ts, const std::filesystem::path& path,
                      const CsvColumnMap& cols = {}) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << cols.timestamp << ',' << cols.load << ',' << cols.pv;
  if (ts.has_prices()) out << ',' << cols.price;
  out << '\n';
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out << format_rfc3339(ts.timestamps[i]) << ',';
    put(ts.load_kw[i]);
    out << ',';
    put(ts.pv_kw[i]);
    if (ts.has_prices()) {
      out << ',';
      put(ts.price_eur_kwh[i]);
    }
    out << '\n';
  }
}

// Affine min-max map of raw day-ahead prices onto [lo, hi]. A constant series
// maps to the band midpoint.
inline std::vector<double> scale_prices(std::span<const double> raw,
                                        double lo = 0.18, double hi = 0.38) {
  if (raw.empty()) throw DataError("scale_prices: empty price series");
  const auto [mn_it, mx_it] = std::minmax_element(raw.begin(), raw.end());
  const double mn = *mn_it, mx = *mx_it;
  std::vector<double> out(raw.size());
  if (mx == mn) {
    std::fill(out.begin(), out.end(), 0.5 * (lo + hi));
    return out;
  }
  const double scale = (hi - lo) / (mx - mn);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out[i] = lo + (raw[i] - mn) * scale;
  }
  return out;
}

// Deterministic synthetic industrial-site profiles: sinusoid-plus-noise load,
// clipped solar arc PV (zero outside daylight), and a two-peak buy-price
// curve kept inside [0.18, 0.38] by construction.
inline TimeSeries synth_profiles(int days, std::uint64_t seed) {
  if (days < 1) throw ConfigError("synth_profiles: days must be >= 1");
  std::mt19937_64 rng(seed);
  const int n = days * 96;
  TimeSeries ts;
  ts.dt_hours = 0.25;
  ts.timestamps.reserve(n);
  ts.load_kw.reserve(n);
  ts.pv_kw.reserve(n);
  ts.price_eur_kwh.reserve(n);

  // Per-day factors drawn up front so the sample order is stable.
  std::vector<double> cloud(days), load_scale(days), price_shift(days);
  for (int d = 0; d < days; ++d) cloud[d] = uniform(rng, 0.35, 1.0);
  for (int d = 0; d < days; ++d) load_scale[d] = uniform(rng, 0.85, 1.2);
  for (int d = 0; d < days; ++d) price_shift[d] = uniform(rng, -0.012, 0.012);

  const std::int64_t t0 = parse_rfc3339("2024-01-01T00:00:00Z");
  for (int i = 0; i < n; ++i) {
    const int d = i / 96;
    const double h = static_cast<double>(i % 96) * 0.25;
    ts.timestamps.push_back(t0 + static_cast<std::int64_t>(i) * 900);

    const double load_shape = 32.0 + 26.0 * std::exp(-(h - 10.5) * (h - 10.5) / 14.0) +
                              15.0 * std::exp(-(h - 18.5) * (h - 18.5) / 6.0);
    const double load =
        std::max(2.0, load_scale[d] * load_shape + 2.5 * gaussian(rng));
    ts.load_kw.push_back(load);

    double pv = 0.0;
    if (h > 6.5 && h < 17.5) {
      const double arc =
          std::sin(std::numbers::pi * (h - 6.5) / 11.0);
      pv = std::max(0.0, cloud[d] * 65.0 * std::pow(arc, 1.25) +
                             1.0 * gaussian(rng));
    }
    ts.pv_kw.push_back(pv);

    const double price_shape =
        0.225 + 0.05 * std::exp(-(h - 8.0) * (h - 8.0) / 5.0) +
        0.10 * std::exp(-(h - 19.0) * (h - 19.0) / 7.0) -
        0.035 * std::exp(-(h - 3.0) * (h - 3.0) / 8.0);
    const double price = std::clamp(
        price_shape + price_shift[d] + 0.004 * gaussian(rng), 0.18, 0.38);
    ts.price_eur_kwh.push_back(price);
  }
  return ts;
}

}  // namespace bessbench
