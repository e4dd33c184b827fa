// Copyright 2026 The MolGX Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "molgx/regress.hpp"
#include "molgx/smiles.hpp"

namespace molgx {
namespace {

struct Problem {
  FeatureMatrix X;
  std::vector<double> y;
};

Problem random_linear(std::mt19937 &rng, int n, int d, double noise) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> w(d);
  for (auto &v : w) v = g(rng);
  Problem p;
  for (int i = 0; i < n; ++i) {
    FeatureVector x(d);
    double y = 0.5;
    for (int j = 0; j < d; ++j) {
      x[j] = g(rng) * (j + 1) + j;
      y += w[j] * x[j];
    }
    p.X.push_back(x);
    p.y.push_back(y + noise * g(rng));
  }
  return p;
}

Problem nonlinear(std::uint32_t seed, int n = 150) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Problem p;
  for (int i = 0; i < n; ++i) {
    FeatureVector x = {u(rng), u(rng), u(rng)};
    p.X.push_back(x);
    p.y.push_back(std::sin(2.0 * x[0]) + std::cos(1.5 * x[1]) * x[2]);
  }
  return p;
}

// Independent standardization: z-scores with population stddev.
std::vector<std::vector<double>> zscore(const FeatureMatrix &X) {
  const std::size_t n = X.size(), d = X[0].size();
  std::vector<std::vector<double>> Z(n, std::vector<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    double m = 0, s = 0;
    for (const auto &x : X) m += x[j];
    m /= n;
    for (const auto &x : X) s += (x[j] - m) * (x[j] - m);
    s = std::sqrt(s / n);
    for (std::size_t i = 0; i < n; ++i) Z[i][j] = (X[i][j] - m) / s;
  }
  return Z;
}

TEST(R2, Examples) {
  const std::vector<double> y = {1, 2, 3};
  EXPECT_DOUBLE_EQ(r2_score(y, y), 1.0);
  EXPECT_DOUBLE_EQ(r2_score(y, std::vector<double>{2, 2, 2}), 0.0);
  EXPECT_DOUBLE_EQ(r2_score(y, std::vector<double>{1, 2, 4}), 0.5);
  EXPECT_THROW(r2_score(std::vector<double>{1, 1}, std::vector<double>{1, 2}),
               ZeroVariance);
}

TEST(Ridge, InterpolatesLinearData) {
  std::mt19937 rng(1);
  const auto p = random_linear(rng, 30, 4, 0.0);
  const auto m = fit(ModelKind::Ridge, p.X, p.y, {0.0, 0.0});
  for (std::size_t i = 0; i < p.X.size(); ++i)
    EXPECT_NEAR(predict(m, p.X[i]), p.y[i], 1e-8);
}

TEST(Ridge, MatchesGradientDescent) {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_linear(rng, 25, 3, 0.3);
    const double lambda = 0.5 + trial;
    const auto m = fit(ModelKind::Ridge, p.X, p.y, {lambda, 0.0});
    const auto Z = zscore(p.X);
    double ym = 0;
    for (double v : p.y) ym += v;
    ym /= p.y.size();
    std::vector<double> w(3, 0.0);
    for (int it = 0; it < 200000; ++it) {
      std::vector<double> grad(3, 0.0);
      for (std::size_t i = 0; i < Z.size(); ++i) {
        double r = p.y[i] - ym;
        for (int j = 0; j < 3; ++j) r -= w[j] * Z[i][j];
        for (int j = 0; j < 3; ++j) grad[j] += -2.0 * r * Z[i][j];
      }
      double mx = 0;
      for (int j = 0; j < 3; ++j) {
        grad[j] += 2.0 * lambda * w[j];
        w[j] -= 1e-3 * grad[j];
        mx = std::max(mx, std::abs(grad[j]));
      }
      if (mx < 1e-10) break;
    }
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(m.weights[j], w[j], 1e-6);
  }
}

TEST(Ridge, FiniteDifferenceLinearity) {
  std::mt19937 rng(3);
  const auto p = random_linear(rng, 40, 5, 0.1);
  const auto m = fit(ModelKind::Ridge, p.X, p.y, {0.1, 0.0});
  const double delta = 0.37;
  for (std::size_t i = 0; i < 5; ++i) {
    FeatureVector x = p.X[3];
    const double base = predict(m, x);
    x[i] += delta;
    EXPECT_NEAR(predict(m, x) - base, delta * m.weights[i] / m.scaler.stddev[i],
                1e-9);
  }
}

TEST(Ridge, SingularWithoutRegularization) {
  FeatureMatrix X;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    X.push_back({double(i), 2.0 * i, double(i % 3)});
    y.push_back(i);
  }
  EXPECT_THROW(fit(ModelKind::Ridge, X, y, {0.0, 0.0}), SingularSystem);
  EXPECT_NO_THROW(fit(ModelKind::Ridge, X, y, {1e-3, 0.0}));
}

TEST(Ridge, ConstantFeaturesMasked) {
  FeatureMatrix X;
  std::vector<double> y;
  for (int i = 0; i < 10; ++i) {
    X.push_back({double(i), 4.0});
    y.push_back(2.0 * i);
  }
  const auto m = fit(ModelKind::Ridge, X, y, {0.0, 0.0});
  EXPECT_EQ(m.scaler.stddev[1], 0.0);
  EXPECT_EQ(m.weights[1], 0.0);
  EXPECT_NEAR(predict(m, FeatureVector{3.0, 100.0}), 6.0, 1e-9);
}

TEST(Lasso, FullShrinkage) {
  std::mt19937 rng(4);
  const auto p = random_linear(rng, 30, 4, 0.2);
  const auto m = fit(ModelKind::Lasso, p.X, p.y, {1e6, 0.0});
  for (double w : m.weights) EXPECT_EQ(w, 0.0);
  double ym = 0;
  for (double v : p.y) ym += v;
  ym /= p.y.size();
  EXPECT_NEAR(predict(m, p.X[0]), ym, 1e-12);
  EXPECT_NEAR(predict(m, m.scaler.mean), ym, 1e-12);
}

TEST(Lasso, KktConditions) {
  std::mt19937 rng(5);
  for (double lambda : {0.01, 0.1, 0.5, 2.0}) {
    const auto p = random_linear(rng, 50, 6, 0.5);
    const auto m = fit(ModelKind::Lasso, p.X, p.y, {lambda, 0.0});
    const auto Z = zscore(p.X);
    const std::size_t n = Z.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = p.y[i] - m.intercept;
      for (int j = 0; j < 6; ++j) r[i] -= m.weights[j] * Z[i][j];
    }
    for (int j = 0; j < 6; ++j) {
      double grad = 0;
      for (std::size_t i = 0; i < n; ++i) grad -= Z[i][j] * r[i];
      grad /= n;
      if (m.weights[j] == 0.0) {
        EXPECT_LE(std::abs(grad), lambda + 1e-6);
      } else {
        EXPECT_NEAR(-grad, lambda * (m.weights[j] > 0 ? 1 : -1), 1e-6);
      }
    }
  }
}

TEST(KernelRidge, InterpolatesAtTinyLambda) {
  const auto p = nonlinear(6, 40);
  const auto m = fit(ModelKind::KernelRidge, p.X, p.y, {1e-10, 0.5});
  for (std::size_t i = 0; i < p.X.size(); ++i)
    EXPECT_NEAR(predict(m, p.X[i]), p.y[i], 1e-6);
  EXPECT_EQ(m.train_matrix.size(), p.X.size());
}

TEST(KernelRidge, ResidualShrinksWithLambda) {
  const auto p = nonlinear(7, 60);
  double prev = std::numeric_limits<double>::infinity();
  for (double lambda : {10.0, 1.0, 0.1, 0.01, 1e-3, 1e-5}) {
    const auto m = fit(ModelKind::KernelRidge, p.X, p.y, {lambda, 0.3});
    double ss = 0;
    for (std::size_t i = 0; i < p.X.size(); ++i) {
      const double e = predict(m, p.X[i]) - p.y[i];
      ss += e * e;
    }
    EXPECT_LT(ss, prev);
    prev = ss;
  }
}

TEST(Predict, DimensionMismatch) {
  std::mt19937 rng(8);
  const auto p = random_linear(rng, 10, 3, 0.1);
  const auto m = fit(ModelKind::Ridge, p.X, p.y, {1.0, 0.0});
  EXPECT_THROW(predict(m, FeatureVector{1.0, 2.0}), DimensionMismatch);
  EXPECT_THROW(fit(ModelKind::Ridge, {{1.0}}, std::vector<double>{1.0}, {}),
               TooFewSamples);
}

TEST(CrossValidation, LinearTargetPicksLinearModel) {
  std::mt19937 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  FeatureMatrix X;
  std::vector<double> y;
  for (int i = 0; i < 100; ++i) {
    X.push_back({g(rng), g(rng), g(rng)});
    y.push_back(3.0 * X.back()[0] + 1e-9 * g(rng));
  }
  const auto r = cross_validate_select(
      X, y, {ModelKind::Ridge, ModelKind::Lasso, ModelKind::KernelRidge},
      HyperGrid::defaults(), 10, 42);
  EXPECT_NE(r.model.kind, ModelKind::KernelRidge);
  EXPECT_EQ(r.model.hp.lambda, 1e-3);
  EXPECT_GT(r.report.entries[r.report.best].mean_r2, 0.999);
  EXPECT_EQ(r.report.entries.size(), 7u + 7u + 35u);
}

TEST(CrossValidation, NonlinearTargetPrefersKernelRidge) {
  int agree = 0;
  for (std::uint32_t seed = 0; seed < 10; ++seed) {
    const auto p = nonlinear(100 + seed);
    const auto r = cross_validate_select(
        p.X, p.y, {ModelKind::Ridge, ModelKind::KernelRidge},
        HyperGrid::defaults(), 10, seed);
    double best_ridge = -1e9, best_krr = -1e9;
    for (const auto &e : r.report.entries) {
      auto &slot = e.kind == ModelKind::Ridge ? best_ridge : best_krr;
      slot = std::max(slot, e.mean_r2);
    }
    if (r.model.kind == ModelKind::KernelRidge && best_krr > best_ridge) ++agree;
  }
  EXPECT_GE(agree, 9);
}

TEST(CrossValidation, Deterministic) {
  const auto p = nonlinear(11, 60);
  const auto a = cross_validate_select(p.X, p.y, {ModelKind::Ridge, ModelKind::KernelRidge},
                                       HyperGrid::defaults(), 5, 3);
  const auto b = cross_validate_select(p.X, p.y, {ModelKind::Ridge, ModelKind::KernelRidge},
                                       HyperGrid::defaults(), 5, 3);
  EXPECT_EQ(a.report.best, b.report.best);
  for (std::size_t i = 0; i < a.report.entries.size(); ++i)
    EXPECT_EQ(a.report.entries[i].mean_r2, b.report.entries[i].mean_r2);
  EXPECT_EQ(fold_assignment(60, 5, 3), fold_assignment(60, 5, 3));
  EXPECT_THROW(cross_validate_select(FeatureMatrix(p.X.begin(), p.X.begin() + 4),
                                     std::vector<double>(p.y.begin(), p.y.begin() + 4),
                                     {ModelKind::Ridge}, HyperGrid::defaults(), 10, 1),
               TooFewSamples);
}

TEST(CrossValidation, FoldsArePartition) {
  const auto f = fold_assignment(23, 10, 99);
  std::vector<int> count(10, 0);
  for (auto v : f) ++count[v];
  for (int c : count) EXPECT_TRUE(c == 2 || c == 3);
}

TEST(GeneralizationLevel, MapsToLambdaGrid) {
  const auto p = nonlinear(12, 40);
  const auto grid = HyperGrid::defaults();
  const auto m = fit_at_level(ModelKind::KernelRidge, p.X, p.y, grid, 6, 0.1);
  EXPECT_EQ(m.hp.lambda, grid.lambda_grid[6]);
  EXPECT_EQ(m.hp.gamma, 0.1);
  EXPECT_THROW(fit_at_level(ModelKind::Ridge, p.X, p.y, grid, 7, 0.0), ConfigError);
}

TEST(ModelIo, RoundTripWithinTolerance) {
  std::vector<MolGraph> gs;
  std::vector<double> y;
  const char *smi[] = {"CCO", "CCCO", "CC(C)O", "c1ccccc1", "CC=O", "CCN", "OCCO",
                       "C1CC1", "CC#N", "CCCCC"};
  for (int i = 0; i < 10; ++i) {
    gs.push_back(parse_smiles(smi[i]));
    y.push_back(0.1 * i * i - 0.3 * i);
  }
  const auto schema = build_schema(std::span<const MolGraph>(gs), default_families());
  const auto X = encode_all(gs, schema);
  for (ModelKind kind : {ModelKind::Ridge, ModelKind::Lasso, ModelKind::KernelRidge}) {
    TrainedModel m = fit(kind, X, y, {0.01, 0.2});
    m.schema = schema;
    m.property = "y";
    m.target_range = TargetRange{-0.26, -0.24};
    const auto back = model_from_json(model_to_json(m));
    EXPECT_EQ(back.kind, kind);
    EXPECT_EQ(back.schema.identity(), schema.identity());
    ASSERT_TRUE(back.target_range);
    EXPECT_EQ(back.target_range->low, -0.26);
    for (const auto &g : gs) EXPECT_NEAR(predict(back, g), predict(m, g), 1e-12);
    EXPECT_NEAR(predict(back, parse_smiles("NCCCO")),
                predict(m, parse_smiles("NCCCO")), 1e-12);
  }
  EXPECT_THROW(model_from_json("{}"), ModelFormatError);
  EXPECT_THROW(model_from_json("not json"), ModelFormatError);
}

}  // namespace
}  // namespace molgx
