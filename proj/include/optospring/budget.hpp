#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "optospring/analytic.hpp"
#include "optospring/constants.hpp"
#include "optospring/csv.hpp"
#include "optospring/errors.hpp"
#include "optospring/params.hpp"
#include "optospring/port.hpp"
#include "optospring/twophoton.hpp"

// Noise-budget assembly: SQL-normalized spectra of the three noise sources and
// their weighted total on a frequency grid, from the exact matrix engine, the
// closed forms, or both side by side with a relative-difference summary.

namespace optospring::budget {

enum class Engine { Exact, Closed, Both };
enum class Scale { Amplitude, Power };

inline Engine parse_engine(const std::string& s) {
  if (s == "exact") return Engine::Exact;
  if (s == "closed") return Engine::Closed;
  if (s == "both") return Engine::Both;
  throw ConfigError("unknown engine '" + s + "' (exact, closed, both)");
}

inline Scale parse_scale(const std::string& s) {
  if (s == "amplitude") return Scale::Amplitude;
  if (s == "power") return Scale::Power;
  throw ConfigError("unknown scale '" + s + "' (amplitude, power)");
}

inline Port parse_port(const std::string& s) {
  if (s == "ref" || s == "reflection") return Port::Reflection;
  if (s == "tra" || s == "transmission") return Port::Transmission;
  throw ConfigError("unknown port '" + s + "' (ref, tra)");
}

inline const char* port_name(Port p) {
  return p == Port::Reflection ? "reflection" : "transmission";
}

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Exact: return "exact";
    case Engine::Closed: return "closed";
    default: return "both";
  }
}

inline const char* scale_name(Scale s) {
  return s == Scale::Amplitude ? "amplitude" : "power";
}

struct GridSpec {
  double start_hz = 0.0;
  double stop_hz = 0.0;
  int points = 0;
  bool log = false;
};

// Grid in Hz; log spacing requires start > 0.
inline std::vector<double> frequency_grid(const GridSpec& g) {
  if (!(g.points >= 2))
    throw ConfigError("grid needs at least 2 points");
  if (!(g.start_hz < g.stop_hz))
    throw ConfigError("grid start must be below stop");
  if (g.log && !(g.start_hz > 0.0))
    throw ConfigError("log grid start must be > 0");
  std::vector<double> freqs(g.points);
  for (int i = 0; i < g.points; ++i) {
    const double t = static_cast<double>(i) / (g.points - 1);
    freqs[i] = g.log ? g.start_hz * std::pow(g.stop_hz / g.start_hz, t)
                     : g.start_hz + (g.stop_hz - g.start_hz) * t;
  }
  freqs.front() = g.start_hz;
  freqs.back() = g.stop_hz;
  return freqs;
}

// One engine's columns; power-normalized S/S_SQL regardless of output scale.
struct SpectrumColumns {
  std::vector<double> b1, b2, d, total;
};

struct NoiseBudget {
  std::vector<double> freq_hz;
  Port port = Port::Reflection;
  Engine engine = Engine::Closed;
  Scale scale = Scale::Amplitude;
  SpectrumColumns closed;  // filled unless engine == Exact
  SpectrumColumns exact;   // filled unless engine == Closed
  // Per-column and overall maxima of |closed - exact| / exact on the output
  // scale; meaningful only when engine == Both.
  double max_rel_diff_b1 = 0.0;
  double max_rel_diff_b2 = 0.0;
  double max_rel_diff_d = 0.0;
  double max_rel_diff_total = 0.0;
  double max_rel_diff = 0.0;
};

inline NoiseBudget compute(const CavityParams& p,
                           const std::vector<double>& freq_hz, Port port,
                           Engine engine, Scale scale) {
  validate(p);
  NoiseBudget b;
  b.freq_hz = freq_hz;
  b.port = port;
  b.engine = engine;
  b.scale = scale;

  const bool want_closed = engine != Engine::Exact;
  const bool want_exact = engine != Engine::Closed;
  for (double f : freq_hz) {
    const double omega = two_pi * f;
    if (want_closed) {
      const double b1 = port == Port::Reflection
                            ? analytic::spectrum_ref_b1(p, omega)
                            : analytic::spectrum_tra_b1(p, omega);
      const double b2 = analytic::spectrum_b2(p, omega);
      const double d = analytic::spectrum_d(p, omega);
      b.closed.b1.push_back(b1);
      b.closed.b2.push_back(b2);
      b.closed.d.push_back(d);
      b.closed.total.push_back(p.rin_amplitude * b1 + p.rin_phase * b2 + d);
    }
    if (want_exact) {
      const auto pt = twophoton::force_noise_spectrum_exact(p, omega, port);
      b.exact.b1.push_back(pt.b1_norm);
      b.exact.b2.push_back(pt.b2_norm);
      b.exact.d.push_back(pt.d1_norm + pt.d2_norm);
      b.exact.total.push_back(pt.total_norm);
    }
  }

  if (engine == Engine::Both) {
    auto column_max = [&](const std::vector<double>& c,
                          const std::vector<double>& e) {
      double worst = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        double cv = c[i], ev = e[i];
        if (scale == Scale::Amplitude) {
          cv = std::sqrt(cv);
          ev = std::sqrt(ev);
        }
        if (ev > 0.0) worst = std::max(worst, std::abs(cv - ev) / ev);
      }
      return worst;
    };
    b.max_rel_diff_b1 = column_max(b.closed.b1, b.exact.b1);
    b.max_rel_diff_b2 = column_max(b.closed.b2, b.exact.b2);
    b.max_rel_diff_d = column_max(b.closed.d, b.exact.d);
    b.max_rel_diff_total = column_max(b.closed.total, b.exact.total);
    b.max_rel_diff =
        std::max({b.max_rel_diff_b1, b.max_rel_diff_b2, b.max_rel_diff_d,
                  b.max_rel_diff_total});
  }
  return b;
}

inline NoiseBudget compute(const CavityParams& p, const GridSpec& grid,
                           Port port, Engine engine, Scale scale) {
  return compute(p, frequency_grid(grid), port, engine, scale);
}

namespace detail {
inline double on_scale(double power_value, Scale scale) {
  return scale == Scale::Amplitude ? std::sqrt(power_value) : power_value;
}
}  // namespace detail

// Columns exactly freq_hz,s_b1,s_b2,s_d,s_total; engine=both appends the
// _exact variants. Values on the budget's scale.
inline void write_csv(const NoiseBudget& b, std::ostream& out) {
  const bool both = b.engine == Engine::Both;
  const SpectrumColumns& first =
      b.engine == Engine::Exact ? b.exact : b.closed;
  out << "freq_hz,s_b1,s_b2,s_d,s_total";
  if (both) out << ",s_b1_exact,s_b2_exact,s_d_exact,s_total_exact";
  out << "\n";
  for (std::size_t i = 0; i < b.freq_hz.size(); ++i) {
    out << csv::format_number(b.freq_hz[i]) << ','
        << csv::format_number(detail::on_scale(first.b1[i], b.scale)) << ','
        << csv::format_number(detail::on_scale(first.b2[i], b.scale)) << ','
        << csv::format_number(detail::on_scale(first.d[i], b.scale)) << ','
        << csv::format_number(detail::on_scale(first.total[i], b.scale));
    if (both)
      out << ',' << csv::format_number(detail::on_scale(b.exact.b1[i], b.scale))
          << ',' << csv::format_number(detail::on_scale(b.exact.b2[i], b.scale))
          << ',' << csv::format_number(detail::on_scale(b.exact.d[i], b.scale))
          << ','
          << csv::format_number(detail::on_scale(b.exact.total[i], b.scale));
    out << "\n";
  }
}

inline nlohmann::json to_json(const NoiseBudget& b) {
  const bool both = b.engine == Engine::Both;
  const SpectrumColumns& first =
      b.engine == Engine::Exact ? b.exact : b.closed;
  auto scaled = [&](const std::vector<double>& column) {
    std::vector<double> out;
    out.reserve(column.size());
    for (double v : column) out.push_back(detail::on_scale(v, b.scale));
    return out;
  };
  nlohmann::json j{{"port", port_name(b.port)},
                   {"engine", engine_name(b.engine)},
                   {"scale", scale_name(b.scale)},
                   {"freq_hz", b.freq_hz},
                   {"s_b1", scaled(first.b1)},
                   {"s_b2", scaled(first.b2)},
                   {"s_d", scaled(first.d)},
                   {"s_total", scaled(first.total)}};
  if (both) {
    j["s_b1_exact"] = scaled(b.exact.b1);
    j["s_b2_exact"] = scaled(b.exact.b2);
    j["s_d_exact"] = scaled(b.exact.d);
    j["s_total_exact"] = scaled(b.exact.total);
    j["max_rel_diff"] = b.max_rel_diff;
  }
  return j;
}

// Summary written next to the CSV when engine=both.
inline nlohmann::json sidecar_json(const NoiseBudget& b) {
  return nlohmann::json{{"port", port_name(b.port)},
                        {"engine", engine_name(b.engine)},
                        {"scale", scale_name(b.scale)},
                        {"points", b.freq_hz.size()},
                        {"fmin_hz", b.freq_hz.empty() ? 0.0 : b.freq_hz.front()},
                        {"fmax_hz", b.freq_hz.empty() ? 0.0 : b.freq_hz.back()},
                        {"max_rel_diff_b1", b.max_rel_diff_b1},
                        {"max_rel_diff_b2", b.max_rel_diff_b2},
                        {"max_rel_diff_d", b.max_rel_diff_d},
                        {"max_rel_diff_total", b.max_rel_diff_total},
                        {"max_rel_diff", b.max_rel_diff}};
}

enum class SweepVariable { Detuning, KappaIn, Power, Eta };

inline SweepVariable parse_sweep_variable(const std::string& s) {
  if (s == "detuning") return SweepVariable::Detuning;
  if (s == "kappa_in") return SweepVariable::KappaIn;
  if (s == "power") return SweepVariable::Power;
  if (s == "eta") return SweepVariable::Eta;
  throw ConfigError("unknown sweep variable '" + s +
                    "' (detuning, kappa_in, power, eta)");
}

inline const char* sweep_column_name(SweepVariable v) {
  switch (v) {
    case SweepVariable::Detuning: return "detuning_over_kappa";
    case SweepVariable::KappaIn: return "kappa_in_over_kappa";
    case SweepVariable::Power: return "intracavity_power_w";
    default: return "eta";
  }
}

// Applies one sweep value to a copy of the base parameters. Detuning and
// input coupling are set as fractions of kappa, power in watts, eta directly.
inline CavityParams with_sweep_value(const CavityParams& base, SweepVariable v,
                                     double value) {
  CavityParams p = base;
  switch (v) {
    case SweepVariable::Detuning: p.detuning = value * p.total_decay; break;
    case SweepVariable::KappaIn:
      p.input_coupling = value * p.total_decay;
      break;
    case SweepVariable::Power: p.intracavity_power = value; break;
    case SweepVariable::Eta: p.mode_matching = value; break;
  }
  return validate(p);
}

struct SweepRow {
  double value = 0.0;
  analytic::CharacteristicFrequencies freqs;
};

// Characteristic frequencies at each sweep value; points = 1 emits the single
// row at the range start.
inline std::vector<SweepRow> sweep(const CavityParams& base, SweepVariable v,
                                   double from, double to, int points) {
  if (points < 1) throw ConfigError("sweep needs at least 1 point");
  if (points > 1 && !(from < to))
    throw ConfigError("sweep range start must be below stop");
  std::vector<SweepRow> rows;
  for (int i = 0; i < points; ++i) {
    const double value =
        points == 1 ? from
                    : from + (to - from) * static_cast<double>(i) / (points - 1);
    const CavityParams p = with_sweep_value(base, v, value);
    rows.push_back({value, analytic::characteristic_frequencies(p)});
  }
  return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, SweepVariable v,
                            std::ostream& out) {
  out << sweep_column_name(v)
      << ",omega_opt_hz,omega_dip_hz,omega_dip_measured_hz,"
         "ratio_opt_over_dip_m\n";
  for (const auto& r : rows)
    out << csv::format_number(r.value) << ','
        << csv::format_number(r.freqs.omega_opt / two_pi) << ','
        << csv::format_number(r.freqs.omega_dip / two_pi) << ','
        << csv::format_number(r.freqs.omega_dip_measured / two_pi) << ','
        << csv::format_number(r.freqs.ratio_opt_over_dip_measured) << "\n";
}

}  // namespace optospring::budget
