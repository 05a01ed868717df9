#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "optospring/optospring.hpp"

// Command-line front end emitting machine-readable CSV/JSON: noise budgets,
// characteristic frequencies, parameter sweeps, dip and ratio fits, and
// synthetic fixture generation. Frequencies are Hz at this boundary and
// radians per second inside the library.

namespace {

using namespace optospring;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct SourceOptions {
  std::string config_path;
  std::string preset_name;
  double eta = -1.0;  // < 0 means no override
};

void add_source_options(CLI::App* sub, SourceOptions& src) {
  sub->add_option("--config", src.config_path,
                  "JSON parameter file (see README for keys)");
  sub->add_option("--preset", src.preset_name,
                  "built-in parameter set: fig2 or experiment");
  sub->add_option("--eta", src.eta,
                  "override the mode matching eta in [0,1]");
}

CavityParams load_params(const SourceOptions& src) {
  if (!src.config_path.empty() && !src.preset_name.empty())
    throw ConfigError("give either --config or --preset, not both");
  if (src.config_path.empty() && src.preset_name.empty())
    throw ConfigError("a parameter source is required: --config PATH or "
                      "--preset NAME");
  CavityParams p = src.config_path.empty() ? config::preset(src.preset_name)
                                           : config::from_file(src.config_path);
  if (src.eta >= 0.0) {
    p.mode_matching = src.eta;
    validate(p);
  }
  return p;
}

void write_text(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw ConfigError("cannot open output file '" + out_path + "'");
  f << content;
  f.flush();
  if (!f) throw ConfigError("failed writing output file '" + out_path + "'");
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void warn_if_outside_closed_form_domain(const CavityParams& p,
                                        double fmax_hz) {
  const double omega_max = two_pi * fmax_hz;
  if (!analytic::approximation_domain_ok(p, omega_max))
    std::cerr << "warning: closed forms assume omega and the optical spring "
                 "frequency stay below kappa/10; this grid or parameter set "
                 "goes beyond that, treat closed-form values as "
                 "extrapolation\n";
}

struct BudgetOptions {
  SourceOptions src;
  std::string port = "ref";
  std::string engine = "exact";
  std::string scale = "amplitude";
  std::string format = "csv";
  double fmin_hz = 10.0;
  double fmax_hz = 1.0e5;
  int points = 500;
  bool log = false;
  std::string out;
};

void run_budget(const BudgetOptions& opt) {
  const CavityParams p = load_params(opt.src);
  const Port port = budget::parse_port(opt.port);
  const budget::Engine engine = budget::parse_engine(opt.engine);
  const budget::Scale scale = budget::parse_scale(opt.scale);
  const budget::GridSpec grid{opt.fmin_hz, opt.fmax_hz, opt.points, opt.log};
  if (engine != budget::Engine::Exact)
    warn_if_outside_closed_form_domain(p, opt.fmax_hz);

  const budget::NoiseBudget b = budget::compute(p, grid, port, engine, scale);
  if (opt.format == "json") {
    write_text(opt.out, json_text(budget::to_json(b)));
  } else if (opt.format == "csv") {
    std::ostringstream body;
    budget::write_csv(b, body);
    write_text(opt.out, body.str());
    if (engine == budget::Engine::Both) {
      const std::string sidecar = json_text(budget::sidecar_json(b));
      if (opt.out.empty() || opt.out == "-")
        std::cerr << sidecar;
      else
        write_text(opt.out + ".json", sidecar);
    }
  } else {
    throw ConfigError("unknown format '" + opt.format + "' (csv, json)");
  }
}

void run_frequencies(const SourceOptions& src, const std::string& out) {
  const CavityParams p = load_params(src);
  const auto f = analytic::characteristic_frequencies(p);
  write_text(out, json_text(nlohmann::json{
                 {"omega_opt_hz", f.omega_opt / two_pi},
                 {"omega_dip_hz", f.omega_dip / two_pi},
                 {"omega_dip_measured_hz", f.omega_dip_measured / two_pi},
                 {"ratio_opt_over_dip_m", f.ratio_opt_over_dip_measured}}));
}

struct SweepOptions {
  SourceOptions src;
  std::string variable;
  double from = 0.0;
  double to = 0.0;
  int points = 50;
  std::string out;
};

void run_sweep(const SweepOptions& opt) {
  const CavityParams base = load_params(opt.src);
  const budget::SweepVariable var = budget::parse_sweep_variable(opt.variable);
  const auto rows = budget::sweep(base, var, opt.from, opt.to, opt.points);
  std::ostringstream body;
  budget::write_sweep_csv(rows, var, body);
  write_text(opt.out, body.str());
}

struct FitDipOptions {
  SourceOptions src;
  std::string data_path;
  std::string column = "asd";
  double band_lo_hz = 0.0;  // 0 means full data range
  double band_hi_hz = 0.0;
  double guess_dip_hz = 0.0;
  double guess_width_hz = 0.0;
  double guess_overall = 0.0;
  std::string out;
};

void run_fit_dip(const FitDipOptions& opt) {
  const fit::MeasuredSpectrum data = csv::read_spectrum(opt.data_path, opt.column);
  if (data.freq_hz.empty())
    throw InsufficientData("data file has no rows");
  double lo = opt.band_lo_hz > 0.0 ? opt.band_lo_hz : data.freq_hz.front();
  double hi = opt.band_hi_hz > 0.0 ? opt.band_hi_hz : data.freq_hz.back();

  fit::DipGuess guess;
  guess.omega_dip_m = two_pi * opt.guess_dip_hz;
  guess.delta_omega = two_pi * opt.guess_width_hz;
  guess.overall = opt.guess_overall;
  if (guess.omega_dip_m <= 0.0 &&
      (!opt.src.config_path.empty() || !opt.src.preset_name.empty()))
    guess.omega_dip_m = analytic::omega_dip_measured(load_params(opt.src));

  const fit::DipFitResult r = fit::fit_dip(data, guess, lo, hi);
  write_text(opt.out,
             json_text(nlohmann::json{
                 {"omega_dip_m_hz", r.omega_dip_m / two_pi},
                 {"delta_omega_hz", r.delta_omega / two_pi},
                 {"overall", r.overall},
                 {"omega_dip_m_error_hz", r.omega_dip_m_error / two_pi},
                 {"delta_omega_error_hz", r.delta_omega_error / two_pi},
                 {"residual_norm", r.residual_norm},
                 {"iterations", r.iterations},
                 {"band_lo_hz", lo},
                 {"band_hi_hz", hi},
                 {"guess",
                  {{"omega_dip_m_hz", guess.omega_dip_m / two_pi},
                   {"delta_omega_hz", guess.delta_omega / two_pi},
                   {"overall", guess.overall}}}}));
}

struct FitRatioOptions {
  SourceOptions src;
  std::string data_path;
  std::string out;
};

void run_fit_ratio(const FitRatioOptions& opt) {
  const CavityParams p = load_params(opt.src);
  const auto points = csv::read_ratio_points(opt.data_path);
  const fit::RatioFitResult r =
      fit::fit_ratio(points, p.total_decay, p.mode_matching);
  write_text(opt.out,
             json_text(nlohmann::json{
                 {"kappa_in_over_kappa", r.kappa_in_over_kappa},
                 {"kappa_in_over_kappa_error", r.kappa_in_over_kappa_error},
                 {"residual_norm", r.residual_norm},
                 {"iterations", r.iterations},
                 {"boundary_fit", r.boundary_fit},
                 {"eta", p.mode_matching},
                 {"kappa_hz", p.total_decay / two_pi},
                 {"points", points.size()}}));
}

struct SynthDipOptions {
  double dip_hz = 1180.0;
  double width_hz = 70.0;
  double overall = 1.0;
  double fmin_hz = 800.0;
  double fmax_hz = 1600.0;
  int points = 200;
  double noise = 0.01;
  std::uint64_t seed = 1;
  std::string out;
};

void run_synth_dip(const SynthDipOptions& opt) {
  const fit::MeasuredSpectrum s = fit::synth_dip_spectrum(
      two_pi * opt.dip_hz, two_pi * opt.width_hz, opt.overall, opt.fmin_hz,
      opt.fmax_hz, opt.points, opt.noise, opt.seed);
  std::ostringstream body;
  csv::write_spectrum(s, body);
  write_text(opt.out, body.str());
}

struct SynthRatioOptions {
  SourceOptions src;
  double true_ratio = 0.81;
  double dmin_over_kappa = 0.4;
  double dmax_over_kappa = 1.0;
  int points = 4;
  double noise = 0.02;
  std::uint64_t seed = 1;
  std::string out;
};

void run_synth_ratio(const SynthRatioOptions& opt) {
  const CavityParams p = load_params(opt.src);
  if (opt.points < 1) throw ConfigError("need at least 1 point");
  std::vector<double> detunings;
  for (int i = 0; i < opt.points; ++i) {
    const double t =
        opt.points == 1 ? 0.0
                        : static_cast<double>(i) / (opt.points - 1);
    detunings.push_back(
        (opt.dmin_over_kappa + (opt.dmax_over_kappa - opt.dmin_over_kappa) * t) *
        p.total_decay);
  }
  const auto points = fit::synth_ratio_points(
      detunings, p.total_decay, opt.true_ratio, p.mode_matching, opt.noise,
      opt.seed);
  std::ostringstream body;
  csv::write_ratio_points(points, body);
  write_text(opt.out, body.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Force-noise modeling for a detuned optomechanical cavity read "
               "out in the amplitude quadrature"};
  app.require_subcommand(1);

  BudgetOptions budget_opt;
  auto* budget_cmd = app.add_subcommand(
      "budget", "SQL-normalized noise budget on a frequency grid (CSV/JSON)");
  add_source_options(budget_cmd, budget_opt.src);
  budget_cmd->add_option("--port", budget_opt.port, "readout port: ref or tra");
  budget_cmd->add_option("--engine", budget_opt.engine,
                         "exact, closed, or both (both adds _exact columns "
                         "and a relative-difference sidecar)");
  budget_cmd->add_option("--scale", budget_opt.scale,
                         "amplitude (sqrt of power ratio) or power");
  budget_cmd->add_option("--format", budget_opt.format, "csv or json");
  budget_cmd->add_option("--fmin", budget_opt.fmin_hz, "grid start [Hz]");
  budget_cmd->add_option("--fmax", budget_opt.fmax_hz, "grid stop [Hz]");
  budget_cmd->add_option("--points", budget_opt.points, "grid size (>= 2)");
  budget_cmd->add_flag("--log", budget_opt.log, "log-spaced grid");
  budget_cmd->add_option("--out", budget_opt.out, "output path, - for stdout");
  budget_cmd->callback([&] { run_budget(budget_opt); });

  SourceOptions freq_src;
  std::string freq_out;
  auto* freq_cmd = app.add_subcommand(
      "frequencies",
      "optical spring, dip, and mode-mismatch-shifted dip frequencies (JSON)");
  add_source_options(freq_cmd, freq_src);
  freq_cmd->add_option("--out", freq_out, "output path, - for stdout");
  freq_cmd->callback([&] { run_frequencies(freq_src, freq_out); });

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "characteristic frequencies vs one swept variable (CSV)");
  add_source_options(sweep_cmd, sweep_opt.src);
  sweep_cmd
      ->add_option("--var", sweep_opt.variable,
                   "detuning (Delta/kappa), kappa_in (kappa_in/kappa), "
                   "power (W), or eta")
      ->required();
  sweep_cmd->add_option("--from", sweep_opt.from, "range start")->required();
  sweep_cmd->add_option("--to", sweep_opt.to, "range stop")->required();
  sweep_cmd->add_option("--points", sweep_opt.points, "number of points");
  sweep_cmd->add_option("--out", sweep_opt.out, "output path, - for stdout");
  sweep_cmd->callback([&] { run_sweep(sweep_opt); });

  FitDipOptions fit_dip_opt;
  auto* fit_dip_cmd = app.add_subcommand(
      "fit-dip", "fit the jittered-dip model to a measured spectrum (JSON)");
  add_source_options(fit_dip_cmd, fit_dip_opt.src);
  fit_dip_cmd
      ->add_option("--data", fit_dip_opt.data_path,
                   "CSV with freq_hz,asd[,sigma]")
      ->required();
  fit_dip_cmd->add_option("--column", fit_dip_opt.column,
                          "spectrum column to fit (for budget CSVs)");
  fit_dip_cmd->add_option("--band-lo", fit_dip_opt.band_lo_hz,
                          "fit band start [Hz], default data start");
  fit_dip_cmd->add_option("--band-hi", fit_dip_opt.band_hi_hz,
                          "fit band stop [Hz], default data end");
  fit_dip_cmd->add_option("--guess-dip", fit_dip_opt.guess_dip_hz,
                          "initial dip frequency [Hz]");
  fit_dip_cmd->add_option("--guess-width", fit_dip_opt.guess_width_hz,
                          "initial jitter width [Hz]");
  fit_dip_cmd->add_option("--guess-overall", fit_dip_opt.guess_overall,
                          "initial overall factor");
  fit_dip_cmd->add_option("--out", fit_dip_opt.out, "output path, - for stdout");
  fit_dip_cmd->callback([&] { run_fit_dip(fit_dip_opt); });

  FitRatioOptions fit_ratio_opt;
  auto* fit_ratio_cmd = app.add_subcommand(
      "fit-ratio",
      "fit kappa_in/kappa to (detuning, omega_opt/omega_dip_m) points (JSON)");
  add_source_options(fit_ratio_cmd, fit_ratio_opt.src);
  fit_ratio_cmd
      ->add_option("--data", fit_ratio_opt.data_path,
                   "CSV with detuning_hz,ratio,sigma")
      ->required();
  fit_ratio_cmd->add_option("--out", fit_ratio_opt.out,
                            "output path, - for stdout");
  fit_ratio_cmd->callback([&] { run_fit_ratio(fit_ratio_opt); });

  SynthDipOptions synth_dip_opt;
  auto* synth_dip_cmd = app.add_subcommand(
      "synth-dip", "deterministic synthetic dip spectrum (CSV fixture)");
  synth_dip_cmd->add_option("--dip-hz", synth_dip_opt.dip_hz,
                            "true dip frequency [Hz]");
  synth_dip_cmd->add_option("--width-hz", synth_dip_opt.width_hz,
                            "true jitter width [Hz]");
  synth_dip_cmd->add_option("--overall", synth_dip_opt.overall,
                            "true overall factor");
  synth_dip_cmd->add_option("--fmin", synth_dip_opt.fmin_hz, "grid start [Hz]");
  synth_dip_cmd->add_option("--fmax", synth_dip_opt.fmax_hz, "grid stop [Hz]");
  synth_dip_cmd->add_option("--points", synth_dip_opt.points, "grid size");
  synth_dip_cmd->add_option("--noise", synth_dip_opt.noise,
                            "relative noise level");
  synth_dip_cmd->add_option("--seed", synth_dip_opt.seed, "RNG seed");
  synth_dip_cmd->add_option("--out", synth_dip_opt.out,
                            "output path, - for stdout");
  synth_dip_cmd->callback([&] { run_synth_dip(synth_dip_opt); });

  SynthRatioOptions synth_ratio_opt;
  auto* synth_ratio_cmd = app.add_subcommand(
      "synth-ratio", "deterministic synthetic ratio points (CSV fixture)");
  add_source_options(synth_ratio_cmd, synth_ratio_opt.src);
  synth_ratio_cmd->add_option("--true-ratio", synth_ratio_opt.true_ratio,
                              "true kappa_in/kappa");
  synth_ratio_cmd->add_option("--dmin", synth_ratio_opt.dmin_over_kappa,
                              "smallest detuning as Delta/kappa");
  synth_ratio_cmd->add_option("--dmax", synth_ratio_opt.dmax_over_kappa,
                              "largest detuning as Delta/kappa");
  synth_ratio_cmd->add_option("--points", synth_ratio_opt.points,
                              "number of detunings");
  synth_ratio_cmd->add_option("--noise", synth_ratio_opt.noise,
                              "absolute ratio noise");
  synth_ratio_cmd->add_option("--seed", synth_ratio_opt.seed, "RNG seed");
  synth_ratio_cmd->add_option("--out", synth_ratio_opt.out,
                              "output path, - for stdout");
  synth_ratio_cmd->callback([&] { run_synth_ratio(synth_ratio_opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidModelParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
