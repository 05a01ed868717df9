#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "optospring/errors.hpp"
#include "optospring/fit.hpp"

// CSV reading and writing. All numeric output uses %.12g so repeated runs
// with identical inputs produce byte-identical files.

namespace optospring::csv {

inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    fields.push_back(first == std::string::npos
                         ? std::string{}
                         : field.substr(first, last - first + 1));
  }
  return fields;
}

inline double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number '" + s + "' in " + where);
  }
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file '" + path + "'");
  Table t;
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("CSV file '" + path + "' is empty");
  t.header = split_line(line);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = split_line(line);
    if (fields.size() != t.header.size())
      throw ConfigError("CSV file '" + path + "' line " +
                        std::to_string(lineno) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(t.header.size()));
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields)
      row.push_back(parse_number(f, path + " line " + std::to_string(lineno)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::size_t column_index(const Table& t, const std::string& name,
                                const std::string& path) {
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == name) return i;
  throw ConfigError("CSV file '" + path + "' has no column '" + name + "'");
}

// Reads the measured-spectrum format freq_hz,asd[,sigma]. Any CSV with a
// freq_hz column works when value_column names the spectrum column to use;
// a sigma column is picked up when present.
inline fit::MeasuredSpectrum read_spectrum(const std::string& path,
                                           const std::string& value_column =
                                               "asd") {
  const Table t = read_table(path);
  const std::size_t fi = column_index(t, "freq_hz", path);
  const std::size_t vi = column_index(t, value_column, path);
  bool have_sigma = false;
  std::size_t si = 0;
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i] == "sigma") {
      have_sigma = true;
      si = i;
    }
  fit::MeasuredSpectrum s;
  for (const auto& row : t.rows) {
    s.freq_hz.push_back(row[fi]);
    s.asd.push_back(row[vi]);
    if (have_sigma) s.sigma.push_back(row[si]);
  }
  fit::validate_spectrum(s);
  return s;
}

inline void write_spectrum(const fit::MeasuredSpectrum& s, std::ostream& out) {
  out << (s.sigma.empty() ? "freq_hz,asd" : "freq_hz,asd,sigma") << "\n";
  for (std::size_t i = 0; i < s.freq_hz.size(); ++i) {
    out << format_number(s.freq_hz[i]) << ',' << format_number(s.asd[i]);
    if (!s.sigma.empty()) out << ',' << format_number(s.sigma[i]);
    out << "\n";
  }
}

// Reads the ratio-fit format detuning_hz,ratio,sigma (detunings in Hz,
// converted to rad/s here).
inline std::vector<fit::RatioPoint> read_ratio_points(const std::string& path) {
  const Table t = read_table(path);
  const std::size_t di = column_index(t, "detuning_hz", path);
  const std::size_t ri = column_index(t, "ratio", path);
  const std::size_t si = column_index(t, "sigma", path);
  std::vector<fit::RatioPoint> points;
  for (const auto& row : t.rows)
    points.push_back({two_pi * row[di], row[ri], row[si]});
  return points;
}

inline void write_ratio_points(const std::vector<fit::RatioPoint>& points,
                               std::ostream& out) {
  out << "detuning_hz,ratio,sigma\n";
  for (const auto& p : points)
    out << format_number(p.detuning / two_pi) << ',' << format_number(p.ratio)
        << ',' << format_number(p.sigma) << "\n";
}

}  // namespace optospring::csv
