// Copyright 2026 The lrfront Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

/// \file analytic.hpp
/// Closed-form early-time correlations and what follows from them: large-k
/// asymptotics, front velocities, threshold-crossing times, and snapshots.
///
/// Every correlation is a LogValue. The leading-order value for a pair whose
/// minimum path has L hops is
///
///     C = 2^{L+2} pi^{2L+1} / (2L+1)! * (t/tau)^{2L+1} * sqrt(W),
///
/// where W sums the squared coupling products over the minimum paths. The
/// chain and lattice formulas are this expression with W in closed form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "lrfront/error.hpp"
#include "lrfront/graph.hpp"
#include "lrfront/log_value.hpp"

namespace lrfront {

namespace detail {

inline void check_time(double t_over_tau) {
  if (!(t_over_tau >= 0) || !std::isfinite(t_over_tau)) throw InvalidArgument("t/tau must be finite and >= 0");
}

/// ln of the time-independent factor 2^{L+2} pi^{2L+1} / (2L+1)! * sqrt(W).
inline double log_prefactor(int hops, double log_weight_sum) {
  const double n = 2.0 * hops + 1.0;
  return (hops + 2) * std::numbers::ln2 + n * std::log(std::numbers::pi) - log_factorial(n) +
         0.5 * log_weight_sum;
}

inline LogValue leading_order(int hops, double log_weight_sum, double t_over_tau) {
  check_time(t_over_tau);
  if (t_over_tau == 0 || log_weight_sum == -std::numeric_limits<double>::infinity()) return LogValue::zero();
  return LogValue::from_log(log_prefactor(hops, log_weight_sum) + (2.0 * hops + 1.0) * std::log(t_over_tau));
}

/// ln of the multinomial (sum n_i)! / prod n_i!.
inline double log_multinomial(std::initializer_list<int> parts) {
  double total = 0;
  double out = 0;
  for (int p : parts) {
    total += p;
    out -= log_factorial(p);
  }
  return out + log_factorial(total);
}

inline double x_log_x(double x) { return x > 0 ? x * std::log(x) : 0.0; }

inline void check_positive_coupling(double delta_over_gamma) {
  if (!(delta_over_gamma > 0) || !std::isfinite(delta_over_gamma)) {
    throw InvalidArgument("Delta/gamma must be positive and finite");
  }
}

}  // namespace detail

/// Chain correlation between qubit 1 and qubit k.
inline LogValue chain_correlation(int k, double delta_over_gamma, double t_over_tau) {
  if (k < 1) throw InvalidArgument("chain site index must be >= 1");
  const int hops = k - 1;
  const double log_w = hops == 0 ? 0.0 : 2.0 * hops * std::log(std::abs(delta_over_gamma));
  return detail::leading_order(hops, log_w, t_over_tau);
}

/// Correlation from a minimum-path summary; nullopt when the pair is not
/// connected (no order of the expansion is nonzero).
inline std::optional<LogValue> general_correlation(const MinPathSummary& summary, double t_over_tau) {
  detail::check_time(t_over_tau);
  if (!summary.reachable()) return std::nullopt;
  return detail::leading_order(*summary.hops, summary.weight_sum.log_magnitude(), t_over_tau);
}

/// Square lattice, reference at the origin, target at (+-n, +-m).
inline LogValue lattice2d_correlation(int n, int m, double delta_over_gamma, double t_over_tau) {
  n = std::abs(n);
  m = std::abs(m);
  const int hops = n + m;
  const double log_w = detail::log_multinomial({n, m}) +
                       (hops == 0 ? 0.0 : 2.0 * hops * std::log(std::abs(delta_over_gamma)));
  return detail::leading_order(hops, log_w, t_over_tau);
}

/// Cubic lattice, reference at the origin, target at (+-n, +-m, +-p).
inline LogValue lattice3d_correlation(int n, int m, int p, double delta_over_gamma, double t_over_tau) {
  n = std::abs(n);
  m = std::abs(m);
  p = std::abs(p);
  const int hops = n + m + p;
  const double log_w = detail::log_multinomial({n, m, p}) +
                       (hops == 0 ? 0.0 : 2.0 * hops * std::log(std::abs(delta_over_gamma)));
  return detail::leading_order(hops, log_w, t_over_tau);
}

/// Correlation from the lattice origin to any site, by dimension.
inline LogValue lattice_correlation(int dimension, const Coordinates& c, double delta_over_gamma,
                                    double t_over_tau) {
  switch (dimension) {
    case 1: return chain_correlation(std::abs(c[0]) + 1, delta_over_gamma, t_over_tau);
    case 2: return lattice2d_correlation(c[0], c[1], delta_over_gamma, t_over_tau);
    case 3: return lattice3d_correlation(c[0], c[1], c[2], delta_over_gamma, t_over_tau);
    default: throw InvalidArgument("lattice dimension must be 1, 2 or 3");
  }
}

// ---------------------------------------------------------------------------
// Velocities

/// e pi sqrt(Delta / 2 gamma), in sites per unit t/tau.
inline double v_lr_chain(double delta_over_gamma) {
  detail::check_positive_coupling(delta_over_gamma);
  return std::numbers::e * std::numbers::pi * std::sqrt(delta_over_gamma / 2.0);
}

/// Folds any in-plane angle into [0, pi/4] using the square's symmetries.
inline double reduce_angle_2d(double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("angle must be finite");
  constexpr double quarter = std::numbers::pi / 2;
  double t = std::fmod(std::abs(theta), quarter);
  if (t > quarter / 2) t = quarter - t;
  return t;
}

struct Direction3D {
  double theta = 0;  // azimuth from the x axis
  double phi = 0;    // polar angle from the z axis
};

/// Maps a direction into the wedge x >= y >= z >= 0 using the cube's
/// symmetries (sign flips and axis permutations).
inline Direction3D reduce_direction_3d(double x, double y, double z) {
  std::array<double, 3> a{std::abs(x), std::abs(y), std::abs(z)};
  if (!(a[0] + a[1] + a[2] > 0) || !std::isfinite(a[0] + a[1] + a[2])) {
    throw InvalidArgument("direction must be a finite nonzero vector");
  }
  std::sort(a.begin(), a.end(), std::greater<>());
  const double r = std::hypot(a[0], a[1], a[2]);
  return {std::atan2(a[1], a[0]), std::acos(std::clamp(a[2] / r, -1.0, 1.0))};
}

/// Direction-dependent velocity for unit direction cosines (x, y, z) >= 0:
///
///     v = v_1D * exp(H / 4) / (x + y + z),   H = -sum a_i ln a_i,
///     a_i = cosine_i / (x + y + z).
///
/// With u = tan(theta) the printed 2D factors read (1+u) / u^{u/(1+u)} =
/// exp(H) and sqrt(1+u^2)/(1+u) = 1/(x+y); the 3D factors are P/Q = exp(H)
/// and R = 1/(x+y+z). The form above is the same expression with the 0^0
/// endpoints (theta -> 0, tan(phi) -> infinity) resolved by x ln x -> 0.
inline double velocity_from_cosines(double x, double y, double z, double delta_over_gamma) {
  const double s = x + y + z;
  const double h = -(detail::x_log_x(x / s) + detail::x_log_x(y / s) + detail::x_log_x(z / s));
  return v_lr_chain(delta_over_gamma) * std::exp(h / 4.0) / s;
}

inline constexpr double kAngleTolerance = 1e-12;

/// 2D velocity for 0 <= theta <= pi/4; reduce other angles with
/// reduce_angle_2d first.
inline double v_lr_2d(double theta, double delta_over_gamma) {
  if (!(theta >= -kAngleTolerance && theta <= std::numbers::pi / 4 + kAngleTolerance)) {
    throw InvalidArgument("2D velocity angle must lie in [0, pi/4] after symmetry reduction");
  }
  theta = std::clamp(theta, 0.0, std::numbers::pi / 4);
  return velocity_from_cosines(std::cos(theta), std::sin(theta), 0.0, delta_over_gamma);
}

/// 3D velocity for azimuth theta in [0, pi/4] and polar angle phi with
/// cos(phi) <= sin(phi) sin(theta), i.e. direction cosines x >= y >= z.
inline double v_lr_3d(double theta, double phi, double delta_over_gamma) {
  const double tol = kAngleTolerance;
  if (!(theta >= -tol && theta <= std::numbers::pi / 4 + tol) || !(phi > 0 && phi <= std::numbers::pi / 2 + tol)) {
    throw InvalidArgument("3D velocity angles outside the fundamental wedge");
  }
  theta = std::clamp(theta, 0.0, std::numbers::pi / 4);
  phi = std::min(phi, std::numbers::pi / 2);
  const double x = std::sin(phi) * std::cos(theta);
  const double y = std::sin(phi) * std::sin(theta);
  const double z = std::cos(phi);
  if (z > y + tol) throw InvalidArgument("3D velocity angles outside the fundamental wedge (z > y)");
  return velocity_from_cosines(x, y, std::max(z, 0.0), delta_over_gamma);
}

// ---------------------------------------------------------------------------
// Large-k chain forms

/// Stirling form: sqrt(2/pi) sqrt(gamma/Delta) k^{-1/2} (v t / (k - 1/2))^{2k-1}.
inline LogValue chain_asymptotic(int k, double delta_over_gamma, double t_over_tau) {
  if (k < 1) throw InvalidArgument("chain site index must be >= 1");
  detail::check_time(t_over_tau);
  const double v = v_lr_chain(delta_over_gamma);
  if (t_over_tau == 0) return LogValue::zero();
  const double kk = k;
  return LogValue::from_log(0.5 * std::log(2.0 / std::numbers::pi) - 0.5 * std::log(delta_over_gamma) -
                            0.5 * std::log(kk) +
                            (2.0 * kk - 1.0) * (std::log(v * t_over_tau) - std::log(kk - 0.5)));
}

/// Exponential leading edge: e sqrt(2/pi) sqrt(gamma/Delta) k^{-1/2} exp(-2 (k - v t)).
/// Valid near the front for large k.
inline LogValue chain_exponential_front(int k, double delta_over_gamma, double t_over_tau) {
  if (k < 1) throw InvalidArgument("chain site index must be >= 1");
  detail::check_time(t_over_tau);
  const double v = v_lr_chain(delta_over_gamma);
  const double kk = k;
  return LogValue::from_log(1.0 + 0.5 * std::log(2.0 / std::numbers::pi) - 0.5 * std::log(delta_over_gamma) -
                            0.5 * std::log(kk) - 2.0 * (kk - v * t_over_tau));
}

// ---------------------------------------------------------------------------
// Threshold crossings

/// Solves prefactor * t^{2L+1} = c_thresh for t, in log space.
inline double threshold_time(int hops, double log_weight_sum, double c_thresh) {
  if (!(c_thresh > 0) || !std::isfinite(c_thresh)) throw InvalidArgument("threshold must be positive");
  return std::exp((std::log(c_thresh) - detail::log_prefactor(hops, log_weight_sum)) / (2.0 * hops + 1.0));
}

inline double threshold_time(const MinPathSummary& summary, double c_thresh) {
  return threshold_time(summary.length(), summary.weight_sum.log_magnitude(), c_thresh);
}

inline double threshold_time_chain(int k, double delta_over_gamma, double c_thresh) {
  if (k < 1) throw InvalidArgument("chain site index must be >= 1");
  const int hops = k - 1;
  return threshold_time(hops, hops == 0 ? 0.0 : 2.0 * hops * std::log(std::abs(delta_over_gamma)), c_thresh);
}

inline double threshold_time_lattice(int dimension, const Coordinates& c, double delta_over_gamma,
                                     double c_thresh) {
  const int n = std::abs(c[0]), m = std::abs(c[1]), p = std::abs(c[2]);
  if (dimension == 1) return threshold_time_chain(n + 1, delta_over_gamma, c_thresh);
  const int hops = n + m + p;
  const double log_w = (dimension == 2 ? detail::log_multinomial({n, m}) : detail::log_multinomial({n, m, p})) +
                       (hops == 0 ? 0.0 : 2.0 * hops * std::log(std::abs(delta_over_gamma)));
  return threshold_time(hops, log_w, c_thresh);
}

struct ThresholdCrossing {
  int site = 0;  // chain index or position along the ray
  double c_thresh = 0;
  double t_over_tau = 0;
  std::optional<double> velocity;  // backwards difference; absent for the first site
};

/// v_k = 1 / (t_k - t_{k-1}) from consecutive crossing times.
inline std::vector<ThresholdCrossing> finite_difference_velocity(const std::vector<double>& crossing_times,
                                                                 int first_site, double c_thresh) {
  std::vector<ThresholdCrossing> out;
  out.reserve(crossing_times.size());
  for (std::size_t i = 0; i < crossing_times.size(); ++i) {
    ThresholdCrossing tc{first_site + static_cast<int>(i), c_thresh, crossing_times[i], std::nullopt};
    if (i > 0) {
      const double dt = crossing_times[i] - crossing_times[i - 1];
      if (!(dt > 0)) {
        throw InvalidArgument("threshold crossing times of sites " + std::to_string(tc.site - 1) + " and " +
                              std::to_string(tc.site) + " do not increase; velocity undefined");
      }
      tc.velocity = 1.0 / dt;
    }
    out.push_back(tc);
  }
  return out;
}

/// Chain sites first..last.
inline std::vector<ThresholdCrossing> finite_difference_velocity_chain(int first, int last, double delta_over_gamma,
                                                                       double c_thresh) {
  if (first < 1 || last < first) throw InvalidArgument("chain site range must satisfy 1 <= first <= last");
  std::vector<double> times;
  for (int k = first; k <= last; ++k) times.push_back(threshold_time_chain(k, delta_over_gamma, c_thresh));
  return finite_difference_velocity(times, first, c_thresh);
}

/// Consecutive sites along a ray, given by their path summaries from the
/// reference. Sites are numbered from 1 along the ray.
inline std::vector<ThresholdCrossing> finite_difference_velocity(const std::vector<MinPathSummary>& ray,
                                                                 double c_thresh) {
  std::vector<double> times;
  for (const auto& s : ray) times.push_back(threshold_time(s, c_thresh));
  return finite_difference_velocity(times, 1, c_thresh);
}

// ---------------------------------------------------------------------------
// Snapshots

inline constexpr double kDefaultClipLog10 = -2.0;

struct SnapshotSite {
  Coordinates coordinates{};  // chain index k in [0] for chains
  double log10_c = 0;
};

/// Sites whose correlation is nonzero and at most 10^clip at one time.
struct FrontSnapshot {
  double t_over_tau = 0;
  double clip_log10 = kDefaultClipLog10;
  std::vector<SnapshotSite> sites;
};

inline void check_site_cap(std::int64_t sites, std::int64_t cap) {
  if (sites > cap) {
    throw LimitExceeded("snapshot of " + std::to_string(sites) + " sites exceeds the site cap of " +
                        std::to_string(cap));
  }
}

inline FrontSnapshot front_snapshot_chain(int first, int last, double delta_over_gamma, double t_over_tau,
                                          double clip_log10 = kDefaultClipLog10,
                                          std::int64_t site_cap = kDefaultSiteCap) {
  if (first < 1 || last < first) throw InvalidArgument("chain site range must satisfy 1 <= first <= last");
  check_site_cap(static_cast<std::int64_t>(last) - first + 1, site_cap);
  FrontSnapshot snap{t_over_tau, clip_log10, {}};
  for (int k = first; k <= last; ++k) {
    const LogValue c = chain_correlation(k, delta_over_gamma, t_over_tau);
    if (c.is_zero()) continue;
    const double l10 = c.log10_magnitude();
    if (l10 <= clip_log10) snap.sites.push_back({{k, 0, 0}, l10});
  }
  return snap;
}

/// Whole (2N+1)^d grid centred on the reference.
inline FrontSnapshot front_snapshot_lattice(const LatticeSpec& spec, double t_over_tau,
                                            double clip_log10 = kDefaultClipLog10,
                                            std::int64_t site_cap = kDefaultSiteCap) {
  if (spec.dimension < 1 || spec.dimension > 3) throw InvalidArgument("lattice dimension must be 1, 2 or 3");
  if (spec.extent < 1) throw InvalidArgument("lattice extent must be at least 1");
  const std::int64_t side = 2 * static_cast<std::int64_t>(spec.extent) + 1;
  std::int64_t total = 1;
  for (int d = 0; d < spec.dimension; ++d) {
    total *= side;
    check_site_cap(total, site_cap);
  }
  FrontSnapshot snap{t_over_tau, clip_log10, {}};
  const int n = spec.extent;
  const int ny = spec.dimension >= 2 ? n : 0;
  const int nz = spec.dimension >= 3 ? n : 0;
  for (int x = -n; x <= n; ++x) {
    for (int y = -ny; y <= ny; ++y) {
      for (int z = -nz; z <= nz; ++z) {
        const Coordinates c{x, y, z};
        const LogValue v = lattice_correlation(spec.dimension, c, spec.delta_over_gamma, t_over_tau);
        if (v.is_zero()) continue;
        const double l10 = v.log10_magnitude();
        if (l10 <= clip_log10) snap.sites.push_back({c, l10});
      }
    }
  }
  return snap;
}

}  // namespace lrfront
