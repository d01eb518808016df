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


#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "sparray/configurations.hpp"
#include "sparray/imaging.hpp"

namespace sparray {
namespace {

constexpr double kPi = std::numbers::pi;

double relative_difference(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / b.norm(); }

Scene single_target(double azimuth, double elevation) {
  Scene s;
  s.targets.push_back({azimuth, elevation, {1.0, 0.0}});
  return s;
}

// Co-array beamformer: average the snapshot over the pairs behind each sum
// co-array point, then apply the taper and a direct 2-D Fourier sum.
CMatrix direct_coarray_image(const CMatrix& x, const ElementSet& d, const Eigen::MatrixXd& taper,
                             const ScanGrid& grid) {
  std::map<GridPoint, std::pair<cdouble, int>> acc;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      auto& [sum, count] = acc[d[i] + d[j]];
      sum += x(i, j);
      ++count;
    }
  CMatrix y(grid.n_az, grid.n_el);
  for (int i = 0; i < grid.n_az; ++i)
    for (int j = 0; j < grid.n_el; ++j) {
      const Direction v = grid.direction(i, j);
      cdouble pixel{};
      for (const auto& [c, sc] : acc)
        pixel += taper(c.x, c.y) * std::exp(-kI * (kPi * (v.x * c.x + v.y * c.y))) * (sc.first / double(sc.second));
      y(i, j) = pixel;
    }
  return y;
}

TEST(Steering, Examples) {
  const ElementSet d = make_ura(2, 1);
  const CMatrix a0 = steering_matrix(d, {{0.0, 0.0}});
  for (Eigen::Index n = 0; n < a0.rows(); ++n) EXPECT_EQ(a0(n, 0), cdouble(1.0, 0.0));
  const CMatrix a = steering_matrix(ElementSet(2, 0, {{0, 0}, {2, 0}}), {{1.0, 0.0}});
  EXPECT_NEAR(std::abs(a(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(a(1, 0) - 1.0), 0.0, 1e-15);
  const CMatrix r = steering_matrix(make_cra(6, 6), {{0.3, -0.7}, {0.91, 0.2}});
  for (Eigen::Index n = 0; n < r.rows(); ++n)
    for (Eigen::Index k = 0; k < r.cols(); ++k) EXPECT_NEAR(std::abs(r(n, k)), 1.0, 1e-15);
}

TEST(Coupling, Examples) {
  const ElementSet d = make_ba(3, 3);
  EXPECT_TRUE(coupling_matrix(d, {0.0, 1.0}).isApprox(CMatrix::Identity(12, 12)));
  const ElementSet pair(1, 0, {{0, 0}, {1, 0}});
  EXPECT_NEAR(std::abs(coupling_matrix(pair, {0.2, 0.0})(0, 1) - 0.2), 0.0, 1e-15);
  const CMatrix m = coupling_matrix(d, {0.2, 0.7});
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    EXPECT_EQ(m(i, i), cdouble(1.0, 0.0));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      EXPECT_EQ(m(i, j), m(j, i));
      if (i != j) {
        const double l = std::sqrt(double((d[i] - d[j]).squared_norm()));
        EXPECT_NEAR(std::abs(m(i, j)), 0.2 / l, 1e-15);
      }
    }
  }
  EXPECT_THROW(coupling_matrix(d, {-0.1, 0.0}), UsageError);
}

TEST(Snapshot, Examples) {
  const ElementSet d = make_ba(2, 2);
  const CMatrix x = snapshot(d, single_target(0.0, 0.0), CMatrix::Identity(8, 8));
  EXPECT_TRUE(x.isApprox(CMatrix::Ones(8, 8)));

  const CMatrix m = coupling_matrix(make_cra(6, 6), {0.2, 1.3});
  const Scene scene = reference_scene();
  const CMatrix full = snapshot(make_cra(6, 6), scene, m);
  EXPECT_LT((full - full.transpose()).norm(), 1e-12 * full.norm());

  Scene a = single_target(0.3, 0.4);
  Scene b = single_target(-1.0, 1.1);
  Scene both = a;
  both.targets.push_back(b.targets.front());
  const CMatrix sum = snapshot(make_cra(6, 6), a, m) + snapshot(make_cra(6, 6), b, m);
  EXPECT_LT(relative_difference(snapshot(make_cra(6, 6), both, m), sum), 1e-13);

  EXPECT_THROW(snapshot(d, scene, CMatrix::Identity(7, 7)), UsageError);
  EXPECT_THROW(snapshot(d, Scene{}, CMatrix::Identity(8, 8)), UsageError);
}

TEST(Snapshot, DependsOnlyOnSumCoArray) {
  for (const auto& d : {make_cra(12, 12), make_ba(7, 5), make_ura(4, 4)}) {
    const CMatrix x = snapshot(d, single_target(0.4, 0.9), CMatrix::Identity(d.size(), d.size()));
    std::map<GridPoint, cdouble> seen;
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        const auto [it, inserted] = seen.emplace(d[i] + d[j], x(i, j));
        if (!inserted) {
          EXPECT_LE(std::abs(x(i, j) - it->second), 1e-12 * std::abs(it->second));
        }
      }
  }
}

TEST(PairWeights, UniformTaper) {
  const ElementSet d = make_ura(3, 2);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(7, 5);
  const CMatrix w = coarray_weight_matrix(d, ones);
  const CoArray sums = sum_coarray(d);
  std::map<GridPoint, cdouble> per_point;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) {
      EXPECT_DOUBLE_EQ(w(i, j).real(), 1.0 / double(sums.multiplicity(d[i] + d[j])));
      EXPECT_EQ(w(i, j), w(j, i));
      per_point[d[i] + d[j]] += w(i, j);
    }
  for (const auto& [c, total] : per_point) EXPECT_NEAR(std::abs(total - 1.0), 0.0, 1e-14);
}

TEST(PairWeights, AggregateToTaper) {
  const ElementSet d = make_cra(6, 6);
  const Eigen::MatrixXd taper = chebyshev_taper_2d(6, 6, 40.0);
  const CMatrix w = coarray_weight_matrix(d, taper);
  Eigen::MatrixXcd agg = Eigen::MatrixXcd::Zero(13, 13);
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) agg(d[i].x + d[j].x, d[i].y + d[j].y) += w(i, j);
  EXPECT_LT((agg - taper.cast<cdouble>()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PairWeights, Errors) {
  const ElementSet sparse(2, 2, {{0, 0}, {2, 2}});
  EXPECT_THROW(coarray_weight_matrix(sparse, Eigen::MatrixXd::Ones(5, 5)), UsageError);
  EXPECT_THROW(coarray_weight_matrix(make_ura(2, 2), Eigen::MatrixXd::Ones(4, 5)), UsageError);
}

TEST(ImageAddition, RankOne) {
  CVector u(5);
  u << 1.0, 2.0, cdouble(0.0, 1.0), -1.0, 0.5;
  const CMatrix w = u * u.transpose();
  const auto weights = image_addition_weights(w, 0.9999);
  EXPECT_EQ(weights.size(), 1U);
  EXPECT_LT(relative_difference(weights.reconstruct(), w), 1e-13);
}

TEST(ImageAddition, FullRankIsExact) {
  const ElementSet d = make_cra(8, 8);
  const CMatrix w = coarray_weight_matrix(d, chebyshev_taper_2d(8, 8, 40.0));
  const auto weights = image_addition_weights(w, 1.0);
  EXPECT_EQ(static_cast<Eigen::Index>(weights.size()), Eigen::FullPivLU<CMatrix>(w).rank());
  EXPECT_LT(relative_difference(weights.reconstruct(), w), 1e-13);
}

TEST(ImageAddition, TruncationKeepsEnergy) {
  const ElementSet d = make_cra(12, 12);
  const CMatrix w = coarray_weight_matrix(d, chebyshev_taper_2d(12, 12, 40.0));
  const auto weights = image_addition_weights(w, 0.9999);
  EXPECT_GE(weights.retained_energy, 0.9999);
  EXPECT_LT(weights.size(), d.size());
  const double err = (weights.reconstruct() - w).squaredNorm() / w.squaredNorm();
  EXPECT_LE(err, 1e-4);
  EXPECT_NEAR(err, 1.0 - weights.retained_energy, 1e-12);
  EXPECT_THROW(image_addition_weights(w, 0.0), UsageError);
  EXPECT_THROW(image_addition_weights(w, 1.5), UsageError);
  EXPECT_THROW(image_addition_weights(CMatrix::Zero(3, 3), 0.5), UsageError);
}

TEST(Beamform, BoresightPixelSumsTaper) {
  const ElementSet d = make_cra(6, 6);
  const Eigen::MatrixXd taper = chebyshev_taper_2d(6, 6, 40.0);
  const auto weights = image_addition_weights(coarray_weight_matrix(d, taper), 1.0);
  const CMatrix x = snapshot(d, single_target(0.0, 0.0), CMatrix::Identity(d.size(), d.size()));
  const cdouble y = beamform_pixel(x, d, weights, {0.0, 0.0});
  EXPECT_NEAR(std::abs(y - taper.sum()), 0.0, 1e-12 * taper.sum());
}

TEST(Beamform, GridMatchesPixelFormula) {
  const ElementSet d = make_cra(8, 6);
  const auto weights = image_addition_weights(coarray_weight_matrix(d, chebyshev_taper_2d(8, 6, 40.0)), 0.9999);
  const CMatrix x = snapshot(d, reference_scene(), coupling_matrix(d, {0.2, 2.0}));
  const ScanGrid grid{17, 13};
  const CMatrix y = beamform_image(x, d, weights, grid);
  for (int i = 0; i < grid.n_az; ++i)
    for (int j = 0; j < grid.n_el; ++j)
      EXPECT_LE(std::abs(y(i, j) - beamform_pixel(x, d, weights, grid.direction(i, j))), 1e-10 * y.norm());
}

TEST(Beamform, FullRankEqualsCoArrayBeamformer) {
  const ScanGrid grid{31, 29};
  for (const auto& d : {make_ura(2, 2), make_ba(3, 3), make_cra(3, 3), make_ba(5, 2), make_cra(4, 4).without({2, 2})}) {
    ASSERT_LE(d.size(), 16U);
    if (!has_contiguous_sum_coarray(d)) continue;
    const Eigen::MatrixXd taper = chebyshev_taper_2d(d.lx(), d.ly(), 40.0);
    const auto weights = image_addition_weights(coarray_weight_matrix(d, taper), 1.0);
    const CMatrix x = snapshot(d, reference_scene(), coupling_matrix(d, {0.2, 0.9}));
    const CMatrix y = beamform_image(x, d, weights, grid);
    EXPECT_LE(relative_difference(y, direct_coarray_image(x, d, taper, grid)), 1e-10);
  }
}

TEST(Beamform, Linearity) {
  const ElementSet d = make_ba(6, 6);
  const auto weights = image_addition_weights(coarray_weight_matrix(d, chebyshev_taper_2d(6, 6, 40.0)), 0.9999);
  const CMatrix m = coupling_matrix(d, {0.2, 0.4});
  const ScanGrid grid{21, 21};
  Scene both = single_target(0.2, 0.5);
  both.targets.push_back(single_target(-2.0, 1.0).targets.front());
  const CMatrix y_both = beamform_image(snapshot(d, both, m), d, weights, grid);
  const CMatrix y_sum = beamform_image(snapshot(d, single_target(0.2, 0.5), m), d, weights, grid) +
                        beamform_image(snapshot(d, single_target(-2.0, 1.0), m), d, weights, grid);
  EXPECT_LT(relative_difference(y_both, y_sum), 1e-12);
}

TEST(Beamform, PointSpreadSidelobes) {
  // Boresight target: the image is the separable taper pattern.
  const int l = 12;
  const ElementSet d = make_cra(l, l);
  const Eigen::MatrixXd taper = chebyshev_taper_2d(l, l, 40.0);
  const CMatrix w = coarray_weight_matrix(d, taper);
  const ScanGrid grid{201, 201};
  const CMatrix x = snapshot(d, single_target(0.0, 0.0), CMatrix::Identity(d.size(), d.size()));
  const int length = 2 * l + 1;
  const double x0 = std::cosh(std::acosh(100.0) / (length - 1));
  const double v_null = 2.0 * std::acos(std::cos(kPi / (2.0 * (length - 1))) / x0) / kPi;
  for (double threshold : {1.0, 0.9999}) {
    const auto weights = image_addition_weights(w, threshold);
    const CMatrix y = beamform_image(x, d, weights, grid);
    const double peak = std::abs(y(100, 100));
    double worst = 0.0;
    for (int i = 0; i < grid.n_az; ++i)
      for (int j = 0; j < grid.n_el; ++j) {
        const bool in_mainlobe = std::abs(grid.vx(i)) < v_null && std::abs(grid.vy(j)) < v_null;
        if (!in_mainlobe) worst = std::max(worst, std::abs(y(i, j)) / peak);
      }
    // |dY(v)| <= ||dW||_F ||X||_F with unit-modulus X entries.
    const double slack = std::sqrt(1.0 - weights.retained_energy) * w.norm() * double(d.size()) / taper.sum();
    EXPECT_LE(worst, 0.01 * (1.0 + 1e-9) + slack) << threshold;
    if (threshold == 1.0) {
      EXPECT_LT(slack, 1e-7);
    }
  }
}

TEST(Beamform, CouplingFreeImagesAgreeAcrossArrays) {
  const int l = 12;
  const ScanGrid grid{201, 201};
  const Eigen::MatrixXd taper = chebyshev_taper_2d(l, l, 40.0);
  const Scene scene = reference_scene();
  const ElementSet ura = make_ura(l, l);
  const CMatrix x_ura = snapshot(ura, scene, CMatrix::Identity(ura.size(), ura.size()));
  const CMatrix ideal = beamform_image(x_ura, ura, image_addition_weights(coarray_weight_matrix(ura, taper), 1.0), grid);
  for (auto family : {ArrayFamily::ura, ArrayFamily::ba, ArrayFamily::cra}) {
    const ElementSet d = make_array(family, l, l);
    const auto weights = image_addition_weights(coarray_weight_matrix(d, taper), 0.9999);
    const CMatrix x = snapshot(d, scene, CMatrix::Identity(d.size(), d.size()));
    EXPECT_LE(relative_difference(beamform_image(x, d, weights, grid), ideal), 1e-2) << family_name(family);
  }
}

TEST(OptimalScale, Examples) {
  CMatrix yd(2, 2);
  yd << cdouble(1, 2), cdouble(0, -1), cdouble(3, 0), cdouble(-2, 1);
  EXPECT_NEAR(std::abs(optimal_scale(yd, yd) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(optimal_scale(2.0 * yd, yd) - 0.5), 0.0, 1e-15);
  EXPECT_THROW(optimal_scale(CMatrix::Zero(2, 2), yd), UsageError);
  EXPECT_THROW(optimal_scale(CMatrix::Ones(3, 2), yd), UsageError);
}

TEST(OptimalScale, BeatsRandomScalings) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix y(6, 5);
  CMatrix yd(6, 5);
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = {g(rng), g(rng)};
    yd(i) = {g(rng), g(rng)};
  }
  const cdouble alpha = optimal_scale(y, yd);
  const double best = (yd - alpha * y).norm();
  for (int k = 0; k < 100; ++k) {
    const cdouble beta = alpha + cdouble(g(rng), g(rng)) * 0.5;
    EXPECT_LE(best, (yd - beta * y).norm());
  }
}

TEST(ImageRmse, Invariances) {
  const ScanGrid grid{4, 3};
  CMatrix yd(4, 3);
  for (Eigen::Index i = 0; i < yd.size(); ++i) yd(i) = {std::sin(1.0 + i), std::cos(2.0 * i)};
  EXPECT_NEAR(image_rmse(yd, yd, grid), 0.0, 1e-15);
  EXPECT_NEAR(image_rmse(cdouble(-0.3, 2.0) * yd, yd, grid), 0.0, 1e-15);
  CMatrix y = yd;
  y(0) += 0.5;
  EXPECT_NEAR(image_rmse(cdouble(4.0, -1.0) * y, yd, grid), image_rmse(y, yd, grid), 1e-14);
  EXPECT_THROW(image_rmse(yd, yd, ScanGrid{3, 4}), UsageError);
}

ImagingConfig small_config() {
  ImagingConfig c;
  c.grid = {41, 41};
  return c;
}

TEST(Experiment, NoCouplingNoError) {
  for (auto reference : {ReferenceMode::self, ReferenceMode::ura}) {
    ImagingConfig c = small_config();
    c.reference = reference;
    c.c1 = 0.0;
    const ImagingExperiment e(make_cra(12, 12), c);
    EXPECT_LE(e.rmse_at_phase(1.0), reference == ReferenceMode::self ? 1e-14 : 1e-2);
    EXPECT_NEAR(e.reference().cwiseAbs().maxCoeff(), 1.0, 1e-15);
  }
}

TEST(Experiment, PaperScenario) {
  const ImagingExperiment e(make_cra(12, 12), ImagingConfig{});
  const double eps = e.rmse_at_phase(1.15 * kPi);
  EXPECT_GT(eps, 0.03);
  EXPECT_LT(eps, 0.09);
}

TEST(MonteCarlo, ZeroCoupling) {
  ImagingConfig c = small_config();
  c.c1 = 0.0;
  const auto mc = monte_carlo_rmse(ArrayFamily::ba, 6, 6, c, 5, 1);
  EXPECT_LE(mc.mean, 1e-14);
  EXPECT_LE(mc.std_dev, 1e-14);
  EXPECT_EQ(mc.trials.size(), 5U);
}

TEST(MonteCarlo, DeterministicAcrossThreads) {
  ImagingConfig c = small_config();
  const ImagingExperiment one(make_cra(8, 8), c);
  c.threads = 3;
  const ImagingExperiment three(make_cra(8, 8), c);
  const auto a = monte_carlo_rmse(one, 10, 7);
  const auto b = monte_carlo_rmse(three, 10, 7);
  const auto again = monte_carlo_rmse(one, 10, 7);
  EXPECT_EQ(a.trials, b.trials);
  EXPECT_EQ(a.trials, again.trials);
  EXPECT_EQ(a.phases, b.phases);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_NE(monte_carlo_rmse(one, 10, 8).trials, a.trials);
  EXPECT_THROW(monte_carlo_rmse(one, 0, 7), UsageError);
}

TEST(MonteCarlo, PhasesUniformOnCircle) {
  double sum = 0.0;
  for (std::uint64_t t = 0; t < 20000; ++t) {
    const double p = trial_phase(3, t);
    ASSERT_GE(p, 0.0);
    ASSERT_LT(p, 2.0 * kPi);
    sum += p;
  }
  EXPECT_NEAR(sum / 20000.0, kPi, 0.05);
}

TEST(Scene, ReferenceTargets) {
  const Scene s = reference_scene();
  EXPECT_EQ(s.targets.size(), 16U);
  for (const auto& t : s.targets) EXPECT_LE(t.direction().norm(), 1.0 + 1e-15);
  Scene bad = s;
  bad.targets[0].azimuth = 4.0;
  EXPECT_THROW(bad.validate(), UsageError);
}

}  // namespace
}  // namespace sparray
