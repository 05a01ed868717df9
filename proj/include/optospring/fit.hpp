#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "optospring/constants.hpp"
#include "optospring/errors.hpp"

// Data-analysis procedures for measured amplitude spectra: the Gaussian
// detuning-jitter dip model, the three-parameter spectral fit, detuning
// estimation from transmitted power, and the one-parameter ratio fit
// extracting kappa_in/kappa from (detuning, omega_opt/omega_dip_m) points.

namespace optospring::fit {

struct MeasuredSpectrum {
  std::vector<double> freq_hz;  // strictly increasing
  std::vector<double> asd;      // positive amplitude spectral density
  std::vector<double> sigma;    // per-point standard errors; empty = none
};

inline void validate_spectrum(const MeasuredSpectrum& s) {
  if (s.freq_hz.size() != s.asd.size())
    throw ValidationError("SizeMismatch", "freq and asd lengths differ");
  if (!s.sigma.empty() && s.sigma.size() != s.freq_hz.size())
    throw ValidationError("SizeMismatch", "sigma length differs from data");
  for (std::size_t i = 0; i < s.freq_hz.size(); ++i) {
    if (i > 0 && !(s.freq_hz[i] > s.freq_hz[i - 1]))
      throw ValidationError("NonIncreasingFrequencies",
                            "frequencies must be strictly increasing");
    if (!(s.asd[i] > 0.0))
      throw ValidationError("NonPositiveValue", "spectrum values must be > 0");
    if (!s.sigma.empty() && !(s.sigma[i] > 0.0))
      throw ValidationError("NonPositiveValue", "sigma values must be > 0");
  }
}

namespace detail {
// Normalized dip shape |omega_d^2 - omega^2| / omega_d^2 of the amplitude
// spectrum around a back-action cancellation at omega_d.
inline double dip_shape(double omega, double omega_d) {
  return std::abs(omega_d * omega_d - omega * omega) / (omega_d * omega_d);
}

// Model value without domain checks; folds the sign of delta_omega.
inline double dip_model_unchecked(double omega_dip_m, double delta_omega,
                                  double overall, double omega) {
  const double d = std::abs(delta_omega);
  const double gp = dip_shape(omega, omega_dip_m + d);
  const double gm = dip_shape(omega, omega_dip_m - d);
  return overall * std::sqrt(0.5 * (gp * gp + gm * gm));
}
}  // namespace detail

// Amplitude spectrum near the dip when the dip frequency jitters as a
// Gaussian, represented by the two-point average at omega_dip_m +- delta_omega:
// overall * sqrt((g(omega; omega_+)^2 + g(omega; omega_-)^2) / 2) with
// g(omega; omega_d) = |omega_d^2 - omega^2| / omega_d^2.
inline double dip_model(double omega_dip_m, double delta_omega, double overall,
                        double omega) {
  if (!(omega_dip_m > 0.0) || !(overall > 0.0) || !(delta_omega >= 0.0) ||
      !(delta_omega < omega_dip_m) || !(omega >= 0.0))
    throw InvalidModelParams("dip model requires omega_dip_m > 0, overall > 0, "
                             "0 <= delta_omega < omega_dip_m, omega >= 0");
  return detail::dip_model_unchecked(omega_dip_m, delta_omega, overall, omega);
}

namespace detail {
// Nodes and weights of n-point Gauss-Hermite quadrature (physicists'
// weight exp(-x^2)), weights normalized to sum to 1. Roots found by
// interlacing bisection on the Hermite recurrence.
inline void gauss_hermite(int n, std::vector<double>& nodes,
                          std::vector<double>& weights) {
  auto hermite = [](int k, double x) {
    double h0 = 1.0, h1 = 2.0 * x;
    if (k == 0) return h0;
    for (int j = 2; j <= k; ++j) {
      const double h2 = 2.0 * x * h1 - 2.0 * (j - 1) * h0;
      h0 = h1;
      h1 = h2;
    }
    return h1;
  };
  const double bound = std::sqrt(2.0 * n + 1.0);
  std::vector<double> prev{};  // roots of H_{n-1}
  for (int k = 1; k <= n; ++k) {
    std::vector<double> edges{-bound};
    edges.insert(edges.end(), prev.begin(), prev.end());
    edges.push_back(bound);
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      double lo = edges[i], hi = edges[i + 1];
      double flo = hermite(k, lo);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = hermite(k, mid);
        if ((flo < 0.0) == (fm < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev = std::move(roots);
  }
  nodes = prev;
  weights.assign(nodes.size(), 0.0);
  // w_k proportional to 1 / (H_{n-1}(x_k))^2; normalize to unit sum.
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double h = hermite(n - 1, nodes[k]);
    weights[k] = 1.0 / (h * h);
    sum += weights[k];
  }
  for (double& w : weights) w /= sum;
}
}  // namespace detail

// N-point Gauss-Hermite generalization of dip_model for sensitivity studies:
// the jittering dip frequency omega_dip_m + sqrt(2) delta_omega x is averaged
// in power over the quadrature nodes. n = 2 reproduces dip_model exactly.
inline double dip_model_gauss_hermite(double omega_dip_m, double delta_omega,
                                      double overall, double omega, int n) {
  if (n < 1 || n > 20)
    throw InvalidModelParams("Gauss-Hermite order must be in [1, 20]");
  if (!(omega_dip_m > 0.0) || !(overall > 0.0) || !(delta_omega >= 0.0) ||
      !(omega >= 0.0))
    throw InvalidModelParams("dip model requires positive parameters");
  std::vector<double> x, w;
  detail::gauss_hermite(n, x, w);
  double acc = 0.0;
  for (int k = 0; k < n; ++k) {
    const double wd = omega_dip_m + std::sqrt(2.0) * delta_omega * x[k];
    if (!(wd > 0.0))
      throw InvalidModelParams("jitter width too large: node frequency <= 0");
    const double g = detail::dip_shape(omega, wd);
    acc += w[k] * g * g;
  }
  return overall * std::sqrt(acc);
}

struct DipFitResult {
  double omega_dip_m = 0.0;        // [rad/s]
  double delta_omega = 0.0;        // [rad/s]
  double overall = 0.0;
  double omega_dip_m_error = 0.0;  // [rad/s]
  double delta_omega_error = 0.0;  // [rad/s]
  double residual_norm = 0.0;      // weighted sum of squared residuals
  int iterations = 0;
};

struct DipGuess {
  double omega_dip_m = 0.0;  // [rad/s]; <= 0 selects an automatic guess
  double delta_omega = 0.0;  // [rad/s]
  double overall = 0.0;
};

namespace detail {

// Standard Nelder-Mead simplex minimization. Stops when the relative spread
// of simplex vertices falls below tol; throws NoConvergence at max_iter.
template <typename F>
inline std::array<double, 3> nelder_mead(F&& objective,
                                         std::array<double, 3> start,
                                         double tol, int max_iter,
                                         int& iterations_out,
                                         double& best_value_out) {
  constexpr int n = 3;
  std::array<std::array<double, 3>, n + 1> v;
  std::array<double, n + 1> f;
  v[0] = start;
  for (int k = 1; k <= n; ++k) {
    v[k] = start;
    const double step = 0.05 * std::abs(start[k - 1]);
    v[k][k - 1] += (step > 0.0) ? step : 1e-8;
  }
  for (int k = 0; k <= n; ++k) f[k] = objective(v[k]);

  auto order = [&] {
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (f[j] < f[i]) {
          std::swap(f[i], f[j]);
          std::swap(v[i], v[j]);
        }
  };

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    order();
    // Relative parameter spread of the simplex.
    double spread = 0.0;
    for (int k = 0; k < n; ++k) {
      double lo = v[0][k], hi = v[0][k];
      for (int j = 1; j <= n; ++j) {
        lo = std::min(lo, v[j][k]);
        hi = std::max(hi, v[j][k]);
      }
      const double scale = std::max(std::abs(v[0][k]), 1e-300);
      spread = std::max(spread, (hi - lo) / scale);
    }
    if (spread < tol) break;

    std::array<double, 3> centroid{};
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) centroid[k] += v[j][k] / n;

    auto blend = [&](double t) {
      std::array<double, 3> p;
      for (int k = 0; k < n; ++k)
        p[k] = centroid[k] + t * (v[n][k] - centroid[k]);
      return p;
    };

    const auto refl = blend(-1.0);
    const double f_refl = objective(refl);
    if (f_refl < f[0]) {
      const auto expd = blend(-2.0);
      const double f_expd = objective(expd);
      if (f_expd < f_refl) {
        v[n] = expd;
        f[n] = f_expd;
      } else {
        v[n] = refl;
        f[n] = f_refl;
      }
    } else if (f_refl < f[n - 1]) {
      v[n] = refl;
      f[n] = f_refl;
    } else {
      const bool outside = f_refl < f[n];
      const auto ctr = blend(outside ? -0.5 : 0.5);
      const double f_ctr = objective(ctr);
      if (f_ctr < std::min(f_refl, f[n])) {
        v[n] = ctr;
        f[n] = f_ctr;
      } else {
        for (int j = 1; j <= n; ++j) {
          for (int k = 0; k < n; ++k) v[j][k] = v[0][k] + 0.5 * (v[j][k] - v[0][k]);
          f[j] = objective(v[j]);
        }
      }
    }
  }
  order();
  iterations_out = iter;
  best_value_out = f[0];
  if (iter >= max_iter)
    throw NoConvergence("simplex did not meet step tolerance within iteration limit");
  return v[0];
}

// Inverse of a symmetric 3x3 matrix via the adjugate; returns false when the
// matrix is numerically singular.
inline bool invert3(const std::array<std::array<double, 3>, 3>& a,
                    std::array<std::array<double, 3>, 3>& inv) {
  const double det =
      a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
      a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
      a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) return false;
  inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
  inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
  inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
  inv[1][0] = inv[0][1];
  inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
  inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
  inv[2][0] = inv[0][2];
  inv[2][1] = inv[1][2];
  inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
  return true;
}

}  // namespace detail

// Weighted least-squares fit of dip_model to the data restricted to
// [band_lo_hz, band_hi_hz]. Requires at least 10 points in band and a strict
// interior minimum of the data (the band must bracket the dip). Standard
// errors come from the curvature of the objective at the minimum; with no
// per-point sigmas the unit-weight variance residual_norm / (N - 3) scales
// them. Deterministic for identical inputs and guess.
inline DipFitResult fit_dip(const MeasuredSpectrum& data, const DipGuess& guess,
                            double band_lo_hz, double band_hi_hz) {
  validate_spectrum(data);
  if (!(band_lo_hz < band_hi_hz))
    throw ValidationError("EmptyBand", "band_lo must be < band_hi");

  std::vector<double> w_grid, y, wt;
  for (std::size_t i = 0; i < data.freq_hz.size(); ++i) {
    if (data.freq_hz[i] < band_lo_hz || data.freq_hz[i] > band_hi_hz) continue;
    w_grid.push_back(two_pi * data.freq_hz[i]);
    y.push_back(data.asd[i]);
    wt.push_back(data.sigma.empty() ? 1.0
                                    : 1.0 / (data.sigma[i] * data.sigma[i]));
  }
  const std::size_t npts = w_grid.size();
  if (npts < 10)
    throw InsufficientData("need at least 10 points inside the fit band");

  const std::size_t imin =
      std::min_element(y.begin(), y.end()) - y.begin();
  if (imin == 0 || imin == npts - 1)
    throw DegenerateBand("band does not bracket an interior minimum");

  auto objective_at = [&](double wd, double dw, double ov) {
    if (!(wd > 0.0) || !(ov > 0.0) || std::abs(dw) >= wd)
      return std::numeric_limits<double>::max();
    double acc = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
      const double r = y[i] - detail::dip_model_unchecked(wd, dw, ov, w_grid[i]);
      acc += wt[i] * r * r;
    }
    return acc;
  };

  // Starting point: caller's guess, with unset pieces from the data (the
  // minimum location, a width of a few grid steps, the off-dip level), then a
  // coarse scan over candidate dip positions for robustness.
  double wd0 = guess.omega_dip_m > 0.0 ? guess.omega_dip_m : w_grid[imin];
  double ov0 = guess.overall > 0.0
                   ? guess.overall
                   : std::max(y.front(), y.back());
  double dw0 = guess.delta_omega > 0.0 ? guess.delta_omega
                                       : 0.02 * wd0;
  double best = objective_at(wd0, dw0, ov0);
  for (std::size_t i = 1; i + 1 < npts; ++i) {
    const double f = objective_at(w_grid[i], dw0, ov0);
    if (f < best) {
      best = f;
      wd0 = w_grid[i];
    }
  }

  const double f_start = objective_at(wd0, dw0, ov0);
  auto objective = [&](const std::array<double, 3>& t) {
    return objective_at(t[0], t[1], t[2]);
  };

  int iterations = 0;
  double f_min = 0.0;
  const std::array<double, 3> sol = detail::nelder_mead(
      objective, {wd0, dw0, ov0}, 1e-8, 500, iterations, f_min);
  (void)f_start;

  DipFitResult r;
  r.omega_dip_m = sol[0];
  r.delta_omega = std::abs(sol[1]);
  r.overall = sol[2];
  r.residual_norm = f_min;
  r.iterations = iterations;

  // Curvature errors: covariance = 2 s^2 H^-1 with H the Hessian of the
  // objective and s^2 = 1 for sigma-weighted data, else the unit-weight
  // variance estimate.
  const double s2 = data.sigma.empty() && npts > 3
                        ? f_min / static_cast<double>(npts - 3)
                        : 1.0;
  std::array<std::array<double, 3>, 3> hess{};
  std::array<double, 3> h;
  for (int k = 0; k < 3; ++k) h[k] = std::max(1e-6 * std::abs(sol[k]), 1e-12);
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      auto at = [&](double da, double db) {
        std::array<double, 3> t = sol;
        t[a] += da;
        t[b] += db;
        return objective(t);
      };
      double second;
      if (a == b) {
        second = (at(h[a], 0.0) - 2.0 * f_min + at(-h[a], 0.0)) / (h[a] * h[a]);
      } else {
        second = (at(h[a], h[b]) - at(h[a], -h[b]) - at(-h[a], h[b]) +
                  at(-h[a], -h[b])) /
                 (4.0 * h[a] * h[b]);
      }
      hess[a][b] = hess[b][a] = second;
    }
  std::array<std::array<double, 3>, 3> cov{};
  if (detail::invert3(hess, cov) && cov[0][0] > 0.0 && cov[1][1] > 0.0) {
    r.omega_dip_m_error = std::sqrt(2.0 * s2 * cov[0][0]);
    r.delta_omega_error = std::sqrt(2.0 * s2 * cov[1][1]);
  } else {
    r.omega_dip_m_error = std::numeric_limits<double>::quiet_NaN();
    r.delta_omega_error = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

// Detuning from the ratio of transmitted power to the on-resonance maximum,
// inverting the Lorentzian P(Delta) = P_max kappa^2/(kappa^2 + Delta^2):
// Delta = kappa sqrt(p_max/p_measured - 1).
inline double detuning_from_transmission(double p_measured, double p_max,
                                         double kappa) {
  if (!(p_max > 0.0) || !(p_measured > 0.0))
    throw ValidationError("NonPositivePower", "powers must be > 0 W");
  if (!(kappa > 0.0))
    throw ValidationError("NonPositiveDecay", "kappa must be > 0 rad/s");
  if (p_measured > p_max)
    throw ValidationError("MeasuredExceedsMax",
                          "measured power exceeds the scan maximum");
  return kappa * std::sqrt(p_max / p_measured - 1.0);
}

// First-order propagation of a transmitted-power uncertainty through
// detuning_from_transmission.
inline double detuning_from_transmission_error(double p_measured, double p_max,
                                               double kappa, double p_sigma) {
  const double delta = detuning_from_transmission(p_measured, p_max, kappa);
  if (delta == 0.0) return std::numeric_limits<double>::infinity();
  return kappa * kappa * p_max * p_sigma /
         (2.0 * delta * p_measured * p_measured);
}

// omega_opt / omega_dip_m as a function of detuning,
// sqrt((kappa^2 + Delta^2 - 4 kappa_in kappa_out eta) / (kappa^2 + Delta^2)).
// Independent of iota, hence of the intracavity power.
inline double ratio_model(double detuning, double kappa,
                          double kappa_in_over_kappa, double eta) {
  if (!(kappa > 0.0))
    throw ValidationError("NonPositiveDecay", "kappa must be > 0 rad/s");
  if (!(kappa_in_over_kappa > 0.0 && kappa_in_over_kappa < 1.0))
    throw ValidationError("CouplingOutOfRange", "kappa_in/kappa must be in (0,1)");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw ValidationError("ModeMatchingOutOfRange", "eta must be in [0,1]");
  const double x = kappa_in_over_kappa;
  const double k2d2 = kappa * kappa + detuning * detuning;
  return std::sqrt((k2d2 - 4.0 * x * (1.0 - x) * kappa * kappa * eta) / k2d2);
}

struct RatioPoint {
  double detuning = 0.0;  // [rad/s]
  double ratio = 0.0;     // omega_opt / omega_dip_m
  double sigma = 0.0;     // standard error of ratio; <= 0 means none
};

struct RatioFitResult {
  double kappa_in_over_kappa = 0.0;
  double kappa_in_over_kappa_error = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool boundary_fit = false;  // minimizer pressed against a search bound
};

// Weighted least squares over the single parameter kappa_in/kappa. The model
// depends on it only through 4 kappa_in kappa_out, symmetric under
// kappa_in <-> kappa_out, so the search runs on the over-coupled branch
// [1/2, 1); boundary_fit marks an estimate pressed against either end.
// Golden-section minimization; deterministic.
inline RatioFitResult fit_ratio(const std::vector<RatioPoint>& data,
                                double kappa, double eta) {
  if (data.size() < 2)
    throw InsufficientData("ratio fit needs at least 2 points");
  if (!(kappa > 0.0))
    throw ValidationError("NonPositiveDecay", "kappa must be > 0 rad/s");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw ValidationError("ModeMatchingOutOfRange", "eta must be in [0,1]");
  bool have_sigma = true;
  for (const RatioPoint& d : data)
    if (!(d.sigma > 0.0)) have_sigma = false;

  auto objective = [&](double x) {
    double acc = 0.0;
    for (const RatioPoint& d : data) {
      const double w = have_sigma ? 1.0 / (d.sigma * d.sigma) : 1.0;
      const double r = d.ratio - ratio_model(d.detuning, kappa, x, eta);
      acc += w * r * r;
    }
    return acc;
  };

  double lo = 0.5, hi = 1.0 - 1e-9;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = objective(c), fd = objective(d);
  int iterations = 0;
  while (hi - lo > 1e-12) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = objective(d);
    }
    ++iterations;
  }
  const double x = 0.5 * (lo + hi);

  RatioFitResult r;
  r.kappa_in_over_kappa = x;
  r.residual_norm = objective(x);
  r.iterations = iterations;
  r.boundary_fit = (x - 0.5 < 1e-6) || (1.0 - x < 1e-6);

  // Curvature error; sigma^2 = 2 s^2 / F''. Under a common rescaling of all
  // ratio sigmas the estimate is unchanged and this error scales with them.
  const double s2 =
      have_sigma || data.size() <= 1
          ? 1.0
          : r.residual_norm / static_cast<double>(data.size() - 1);
  const double h = 1e-5;
  const double second =
      (objective(std::min(x + h, 1.0 - 1e-12)) - 2.0 * r.residual_norm +
       objective(std::max(x - h, 1e-12))) /
      (h * h);
  r.kappa_in_over_kappa_error =
      second > 0.0 ? std::sqrt(2.0 * s2 / second)
                   : std::numeric_limits<double>::quiet_NaN();
  return r;
}

// Deterministic Gaussian sampler: Box-Muller over std::mt19937_64, which the
// standard pins down bit-exactly, so fixtures are identical across platforms
// for a given seed.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(two_pi * u2);
    have_spare_ = true;
    return r * std::cos(two_pi * u2);
  }

 private:
  double uniform() {
    constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
    return static_cast<double>(engine_() >> 11) * scale;
  }

  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Synthetic dip spectrum on a linear grid with multiplicative Gaussian noise
// of relative size noise_frac; sigma carries the per-point standard error.
inline MeasuredSpectrum synth_dip_spectrum(double omega_dip_m,
                                           double delta_omega, double overall,
                                           double lo_hz, double hi_hz,
                                           int points, double noise_frac,
                                           std::uint64_t seed) {
  if (points < 2)
    throw ValidationError("TooFewPoints", "need at least 2 grid points");
  if (!(lo_hz > 0.0 && lo_hz < hi_hz))
    throw ValidationError("EmptyBand", "need 0 < lo_hz < hi_hz");
  if (!(noise_frac >= 0.0))
    throw ValidationError("NegativeNoise", "noise fraction must be >= 0");
  GaussianSampler gauss(seed);
  MeasuredSpectrum s;
  for (int i = 0; i < points; ++i) {
    const double f =
        lo_hz + (hi_hz - lo_hz) * static_cast<double>(i) / (points - 1);
    const double model = dip_model(omega_dip_m, delta_omega, overall,
                                   two_pi * f);
    double value = model * (1.0 + noise_frac * gauss());
    if (!(value > 0.0)) value = 1e-6 * overall;
    s.freq_hz.push_back(f);
    s.asd.push_back(value);
    if (noise_frac > 0.0) s.sigma.push_back(noise_frac * std::max(model, 1e-6 * overall));
  }
  return s;
}

// Synthetic (detuning, ratio) points with additive Gaussian noise of absolute
// size noise_abs on the ratio.
inline std::vector<RatioPoint> synth_ratio_points(
    const std::vector<double>& detunings, double kappa,
    double kappa_in_over_kappa, double eta, double noise_abs,
    std::uint64_t seed) {
  if (!(noise_abs >= 0.0))
    throw ValidationError("NegativeNoise", "noise size must be >= 0");
  GaussianSampler gauss(seed);
  std::vector<RatioPoint> points;
  for (double delta : detunings) {
    const double model = ratio_model(delta, kappa, kappa_in_over_kappa, eta);
    RatioPoint p;
    p.detuning = delta;
    p.ratio = model + noise_abs * gauss();
    p.sigma = noise_abs > 0.0 ? noise_abs : 0.0;
    points.push_back(p);
  }
  return points;
}

}  // namespace optospring::fit
