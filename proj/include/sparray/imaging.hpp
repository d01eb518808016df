// SPDX-License-Identifier: Apache-2.0
//
// sparray: sparse active planar arrays, co-arrays and imaging under coupling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Active-array imaging with co-located transceivers under mutual coupling.
//
// A noise-free snapshot of K far-field point targets is the N x N matrix
//   X = M A diag(gamma) A^T M^T s,
// rows indexing receivers and columns transmitters. Without coupling
// (M = I), X_nm depends on (n, m) only through the sum co-array point
// d_n + d_m. Images are formed by SVD image addition: a desired sum co-array
// taper is spread over the element pairs, the resulting N x N weight matrix
// is factored into rank-one transmit/receive weight pairs, and the component
// images are summed.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sparray/chebyshev.hpp"
#include "sparray/configurations.hpp"
#include "sparray/errors.hpp"
#include "sparray/geometry.hpp"
#include "sparray/rng.hpp"

namespace sparray {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cdouble kI{0.0, 1.0};

/// Planar direction cosines (v_x, v_y) of a far-field direction.
struct Direction {
  double x = 0.0;
  double y = 0.0;

  double norm() const { return std::hypot(x, y); }
};

struct Target {
  double azimuth = 0.0;    // radians, [-pi, pi]
  double elevation = 0.0;  // radians
  cdouble reflectivity{1.0, 0.0};

  Direction direction() const {
    return {std::sin(azimuth) * std::sin(elevation), std::cos(azimuth) * std::sin(elevation)};
  }
};

struct Scene {
  std::vector<Target> targets;
  cdouble waveform{1.0, 0.0};

  void validate() const {
    if (targets.empty()) throw UsageError("scene must contain at least one target");
    if (waveform == cdouble{}) throw UsageError("scene waveform must be non-zero");
    for (const auto& t : targets) {
      if (!(t.azimuth >= -std::numbers::pi && t.azimuth <= std::numbers::pi)) {
        throw UsageError("target azimuth outside [-pi, pi]");
      }
      if (!(t.elevation >= 0.0 && t.elevation <= 2.0 * std::numbers::pi)) {
        throw UsageError("target elevation outside [0, 2pi]");
      }
    }
  }
};

/// 16 unit targets: azimuths {+-3, +-1} pi/10 times elevations {1,2,3,4} pi/5.
inline Scene reference_scene() {
  Scene s;
  for (int a : {3, 1, -1, -3})
    for (int e : {1, 2, 3, 4})
      s.targets.push_back({a * std::numbers::pi / 10.0, e * std::numbers::pi / 5.0, {1.0, 0.0}});
  return s;
}

/// Uniform samples of the direction-cosine square [-1, 1]^2. Image rows
/// follow v_x, columns v_y.
struct ScanGrid {
  int n_az = 201;
  int n_el = 201;

  static double sample(int i, int n) { return n == 1 ? 0.0 : -1.0 + 2.0 * i / (n - 1); }
  double vx(int i) const { return sample(i, n_az); }
  double vy(int j) const { return sample(j, n_el); }
  Direction direction(int i, int j) const { return {vx(i), vy(j)}; }
  std::int64_t pixels() const { return std::int64_t{n_az} * n_el; }

  void validate() const {
    if (n_az < 1 || n_el < 1) throw UsageError("scan grid dimensions must be positive");
  }
};

/// Coupling between elements l half-wavelengths apart: c1 exp(j phase l) / l.
struct CouplingSpec {
  double c1 = 0.0;
  double phase = 0.0;
};

/// N x K matrix of unit-modulus entries exp(j pi v_k . d_n); one grid step is
/// half a wavelength, so 2 pi / lambda times the position is pi times the index.
inline CMatrix steering_matrix(const ElementSet& d, const std::vector<Direction>& directions) {
  CMatrix a(d.size(), directions.size());
  for (std::size_t k = 0; k < directions.size(); ++k)
    for (std::size_t n = 0; n < d.size(); ++n)
      a(n, k) = std::exp(kI * (std::numbers::pi * (directions[k].x * d[n].x + directions[k].y * d[n].y)));
  return a;
}

/// Symmetric coupling matrix with unit diagonal.
inline CMatrix coupling_matrix(const ElementSet& d, const CouplingSpec& spec) {
  if (spec.c1 < 0.0) throw UsageError("coupling magnitude must be non-negative");
  const auto n = static_cast<Eigen::Index>(d.size());
  CMatrix m = CMatrix::Identity(n, n);
  if (spec.c1 == 0.0) return m;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double l = std::sqrt(static_cast<double>((d[i] - d[j]).squared_norm()));
      m(i, j) = m(j, i) = spec.c1 * std::exp(kI * (spec.phase * l)) / l;
    }
  }
  return m;
}

/// Reciprocal snapshot X = M A Gamma A^T M^T s.
inline CMatrix snapshot(const ElementSet& d, const Scene& scene, const CMatrix& coupling) {
  scene.validate();
  const auto n = static_cast<Eigen::Index>(d.size());
  if (coupling.rows() != n || coupling.cols() != n) {
    throw UsageError("snapshot: coupling matrix is " + std::to_string(coupling.rows()) + "x" +
                     std::to_string(coupling.cols()) + ", array has " + std::to_string(n) + " elements");
  }
  std::vector<Direction> dirs;
  CVector gamma(scene.targets.size());
  for (std::size_t k = 0; k < scene.targets.size(); ++k) {
    dirs.push_back(scene.targets[k].direction());
    gamma(k) = scene.targets[k].reflectivity;
  }
  const CMatrix b = coupling * steering_matrix(d, dirs);
  return (b * gamma.asDiagonal() * b.transpose()) * scene.waveform;
}

/// Spreads a sum co-array taper evenly over the element pairs generating each
/// point: W_nm = taper(d_n + d_m) / v_sum(d_n + d_m). The pair weights mapping
/// to a point then add up to the taper value there.
inline CMatrix coarray_weight_matrix(const ElementSet& d, const Eigen::MatrixXd& taper) {
  if (taper.rows() != 2 * d.lx() + 1 || taper.cols() != 2 * d.ly() + 1) {
    throw UsageError("coarray_weight_matrix: taper must be " + std::to_string(2 * d.lx() + 1) + "x" +
                     std::to_string(2 * d.ly() + 1));
  }
  const CoArray sums = sum_coarray(d);
  for (Eigen::Index cx = 0; cx < taper.rows(); ++cx)
    for (Eigen::Index cy = 0; cy < taper.cols(); ++cy)
      if (taper(cx, cy) != 0.0 && sums.multiplicity({int(cx), int(cy)}) == 0) {
        throw UsageError("coarray_weight_matrix: taper is non-zero at " + to_string({int(cx), int(cy)}) +
                         ", which the sum co-array does not contain");
      }
  const auto n = static_cast<Eigen::Index>(d.size());
  CMatrix w(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const GridPoint c = d[i] + d[j];
      w(i, j) = taper(c.x, c.y) / static_cast<double>(sums.multiplicity(c));
    }
  return w;
}

struct ImageComponent {
  double singular_value = 0.0;
  CVector rx;
  CVector tx;
};

/// Rank-one transmit/receive weight pairs whose sum sum_q rx_q tx_q^T
/// approximates a pair weight matrix.
struct ImageAdditionWeights {
  std::vector<ImageComponent> components;
  double energy_threshold = 1.0;
  // Fraction of the squared singular value mass that was kept.
  double retained_energy = 1.0;

  std::size_t size() const { return components.size(); }

  CMatrix reconstruct() const {
    if (components.empty()) return {};
    const auto n = components.front().rx.size();
    CMatrix w = CMatrix::Zero(n, n);
    for (const auto& c : components) w += c.rx * c.tx.transpose();
    return w;
  }
};

/// Truncated SVD W = sum sigma_q u_q v_q^H. Keeps the fewest leading terms whose
/// squared singular values reach `energy_threshold` of the total, with
/// rx_q = u_q and tx_q = sigma_q conj(v_q).
inline ImageAdditionWeights image_addition_weights(const CMatrix& w, double energy_threshold) {
  if (!(energy_threshold > 0.0 && energy_threshold <= 1.0)) {
    throw UsageError("image_addition_weights: energy threshold must lie in (0, 1]");
  }
  if (w.rows() == 0 || w.rows() != w.cols()) throw UsageError("image_addition_weights: expects a square matrix");
  Eigen::BDCSVD<CMatrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double total = sigma.squaredNorm();
  if (total == 0.0) throw UsageError("image_addition_weights: weight matrix is zero");

  ImageAdditionWeights out;
  out.energy_threshold = energy_threshold;
  // The slack keeps a threshold of exactly 1 from demanding rounding noise.
  const double needed = (energy_threshold - 1e-12) * total;
  double kept = 0.0;
  for (Eigen::Index q = 0; q < sigma.size(); ++q) {
    kept += sigma(q) * sigma(q);
    out.components.push_back({sigma(q), svd.matrixU().col(q), sigma(q) * svd.matrixV().col(q).conjugate()});
    if (kept >= needed) break;
  }
  out.retained_energy = kept / total;
  return out;
}

namespace detail {

inline void require_snapshot_shape(const CMatrix& x, const ElementSet& d, const ImageAdditionWeights& weights) {
  const auto n = static_cast<Eigen::Index>(d.size());
  if (x.rows() != n || x.cols() != n) throw UsageError("beamform: snapshot does not match the array size");
  if (weights.components.empty() || weights.components.front().rx.size() != n) {
    throw UsageError("beamform: weights were not built for this array");
  }
}

// exp(-j pi v c) for every grid sample v and co-array coordinate c in {0:2L}.
inline CMatrix phase_ramp(int samples, int coarray_length) {
  CMatrix e(samples, coarray_length);
  for (int i = 0; i < samples; ++i)
    for (int c = 0; c < coarray_length; ++c)
      e(i, c) = std::exp(-kI * (std::numbers::pi * ScanGrid::sample(i, samples) * c));
  return e;
}

}  // namespace detail

/// One pixel, straight from the definition:
///   Y(v) = sum_q (rx_q o a*(v))^T X (tx_q o a*(v)).
inline cdouble beamform_pixel(const CMatrix& x, const ElementSet& d, const ImageAdditionWeights& weights,
                              Direction v) {
  detail::require_snapshot_shape(x, d, weights);
  const CVector a_conj = steering_matrix(d, {v}).col(0).conjugate();
  cdouble acc{};
  for (const auto& c : weights.components) {
    const CVector wr = c.rx.cwiseProduct(a_conj);
    const CVector wt = c.tx.cwiseProduct(a_conj);
    acc += (wr.transpose() * x * wt)(0, 0);
  }
  return acc;
}

/// The same sum as beamform_pixel over a whole scan grid. Expanding the
/// bilinear forms gives Y(v) = sum_nm P_nm X_nm exp(-j pi v . (d_n + d_m)) with
/// P = sum_q rx_q tx_q^T, so the products are first binned on the sum
/// co-array and then transformed separably along v_x and v_y.
inline CMatrix beamform_image(const CMatrix& x, const ElementSet& d, const ImageAdditionWeights& weights,
                              const ScanGrid& grid) {
  detail::require_snapshot_shape(x, d, weights);
  grid.validate();
  const CMatrix pair_weights = weights.reconstruct();
  CMatrix binned = CMatrix::Zero(2 * d.lx() + 1, 2 * d.ly() + 1);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      const GridPoint c = d[i] + d[j];
      binned(c.x, c.y) += pair_weights(i, j) * x(i, j);
    }
  const CMatrix ex = detail::phase_ramp(grid.n_az, 2 * d.lx() + 1);
  const CMatrix ey = detail::phase_ramp(grid.n_el, 2 * d.ly() + 1);
  return ex * binned * ey.transpose();
}

/// alpha = Tr(Y^H Y_d) / ||Y||_F^2, the minimizer of ||Y_d - alpha Y||_F.
inline cdouble optimal_scale(const CMatrix& y, const CMatrix& y_ref) {
  if (y.rows() != y_ref.rows() || y.cols() != y_ref.cols()) throw UsageError("optimal_scale: image sizes differ");
  const double energy = y.squaredNorm();
  if (energy == 0.0) throw UsageError("optimal_scale: image is identically zero");
  return y.conjugate().cwiseProduct(y_ref).sum() / energy;
}

/// ||Y_d - alpha Y||_F / sqrt(pixels) with the optimal alpha.
inline double image_rmse(const CMatrix& y, const CMatrix& y_ref, const ScanGrid& grid) {
  if (y.rows() != grid.n_az || y.cols() != grid.n_el) throw UsageError("image_rmse: image does not match grid");
  const cdouble alpha = optimal_scale(y, y_ref);
  return (y_ref - alpha * y).norm() / std::sqrt(static_cast<double>(grid.pixels()));
}

// ---------------------------------------------------------------------------
// Experiment driver

enum class ReferenceMode {
  self,  // coupling-free image of the array under test
  ura,   // coupling-free image of the filled array with the same aperture
};

struct ImagingConfig {
  Scene scene = reference_scene();
  ScanGrid grid{};
  double sidelobe_db = 40.0;
  double energy_threshold = 0.9999;
  double c1 = 0.2;
  ReferenceMode reference = ReferenceMode::self;
  int threads = 1;
};

/// Image-addition beamformer for one array, precomputed once per geometry.
class ArrayImager {
 public:
  ArrayImager(ElementSet d, const ImagingConfig& config)
      : d_(std::move(d)),
        scene_(config.scene),
        grid_(config.grid),
        weights_(image_addition_weights(coarray_weight_matrix(d_, chebyshev_taper_2d(d_.lx(), d_.ly(),
                                                                                     config.sidelobe_db)),
                                        config.energy_threshold)) {
    scene_.validate();
    grid_.validate();
  }

  const ElementSet& array() const { return d_; }
  const ImageAdditionWeights& weights() const { return weights_; }
  const ScanGrid& grid() const { return grid_; }

  CMatrix image(const CouplingSpec& coupling) const {
    return beamform_image(snapshot(d_, scene_, coupling_matrix(d_, coupling)), d_, weights_, grid_);
  }

 private:
  ElementSet d_;
  Scene scene_;
  ScanGrid grid_;
  ImageAdditionWeights weights_;
};

/// The coupling-free image an array is judged against, scaled to unit peak
/// magnitude so that errors are relative to the brightest target.
class ImagingExperiment {
 public:
  ImagingExperiment(ElementSet d, const ImagingConfig& config)
      : config_(config), imager_(std::move(d), config) {
    if (config.reference == ReferenceMode::self) {
      reference_ = imager_.image({});
    } else {
      reference_ = ArrayImager(make_ura(imager_.array().lx(), imager_.array().ly()), config).image({});
    }
    const double peak = reference_.cwiseAbs().maxCoeff();
    if (peak == 0.0) throw UsageError("reference image is identically zero");
    reference_ /= peak;
  }

  const ArrayImager& imager() const { return imager_; }
  const CMatrix& reference() const { return reference_; }
  const ImagingConfig& config() const { return config_; }

  double rmse(const CMatrix& y) const { return image_rmse(y, reference_, config_.grid); }
  double rmse_at_phase(double phase) const { return rmse(imager_.image({config_.c1, phase})); }

 private:
  ImagingConfig config_;
  ArrayImager imager_;
  CMatrix reference_;
};

struct MonteCarloSummary {
  double mean = 0.0;
  double std_dev = 0.0;  // sample standard deviation (n - 1)
  std::vector<double> trials;
  std::vector<double> phases;
  std::uint64_t seed = 0;
};

/// Coupling phase for trial i, uniform on [0, 2 pi).
inline double trial_phase(std::uint64_t seed, std::uint64_t trial) {
  return CounterRng(seed).uniform(trial, 0.0, 2.0 * std::numbers::pi);
}

inline MonteCarloSummary monte_carlo_rmse(const ImagingExperiment& experiment, int n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw UsageError("monte_carlo_rmse: need at least one trial");
  MonteCarloSummary out;
  out.seed = seed;
  out.trials.assign(n_trials, 0.0);
  out.phases.resize(n_trials);
  for (int t = 0; t < n_trials; ++t) out.phases[t] = trial_phase(seed, t);

  const int workers = std::clamp(experiment.config().threads, 1, n_trials);
  auto work = [&](int first) {
    for (int t = first; t < n_trials; t += workers) out.trials[t] = experiment.rmse_at_phase(out.phases[t]);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  out.mean = std::accumulate(out.trials.begin(), out.trials.end(), 0.0) / n_trials;
  if (n_trials > 1) {
    double ss = 0.0;
    for (double e : out.trials) ss += (e - out.mean) * (e - out.mean);
    out.std_dev = std::sqrt(ss / (n_trials - 1));
  }
  return out;
}

inline MonteCarloSummary monte_carlo_rmse(ArrayFamily family, int lx, int ly, const ImagingConfig& config,
                                          int n_trials, std::uint64_t seed) {
  return monte_carlo_rmse(ImagingExperiment(make_array(family, lx, ly), config), n_trials, seed);
}

}  // namespace sparray
