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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "molgx/error.hpp"
#include "molgx/features.hpp"

namespace molgx {

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

class TooFewSamples : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

class ModelFormatError : public Error {
 public:
  using Error::Error;
};

enum class ModelKind { Ridge, Lasso, KernelRidge };

/// "ridge", "lasso", "kernel_ridge".
std::string_view to_string(ModelKind kind);
/// Throws ConfigError.
ModelKind parse_model_kind(std::string_view text);

struct HyperParams {
  double lambda = 1.0;
  /// RBF width; kernel ridge only.
  double gamma = 0.0;
};

struct HyperGrid {
  std::vector<double> lambda_grid;
  std::vector<double> gamma_grid;

  /// 7 lambdas over 1e-3..1e3 and 5 gammas over 1e-3..1e1, log spaced.
  static HyperGrid defaults();
  /// Throws ConfigError on empty or non-positive grids.
  void validate() const;
};

std::vector<double> log_space(double low, double high, std::size_t n);

struct TargetRange {
  double low = 0.0;
  double high = 0.0;
  bool contains(double v) const { return v >= low && v <= high; }
};

/// Row-major feature matrix: one FeatureVector per sample.
using FeatureMatrix = std::vector<FeatureVector>;

struct Scaler {
  std::vector<double> mean;
  /// Population standard deviation; 0 marks a constant (masked) feature.
  std::vector<double> stddev;
};

struct TrainedModel {
  ModelKind kind = ModelKind::Ridge;
  HyperParams hp;
  Scaler scaler;
  double intercept = 0.0;
  /// Linear kinds: one weight per standardized feature (0 when masked).
  std::vector<double> weights;
  /// Kernel ridge: dual weights and the standardized training matrix.
  std::vector<double> dual;
  FeatureMatrix train_matrix;

  /// Encoding used at training time; may be empty for matrix-only fits.
  FeatureSchema schema;
  std::string property;
  std::optional<TargetRange> target_range;

  std::size_t dimension() const { return scaler.mean.size(); }
};

/// Fits on raw feature rows; standardization happens inside. Throws
/// TooFewSamples, DimensionMismatch, SingularSystem, NonConvergence.
TrainedModel fit(ModelKind kind, const FeatureMatrix &X,
                 std::span<const double> y, const HyperParams &hp);

/// Throws DimensionMismatch.
double predict(const TrainedModel &m, std::span<const double> x);
/// Encodes g with the model's schema first.
double predict(const TrainedModel &m, const MolGraph &g);

/// 1 - SS_res / SS_tot. Throws ZeroVariance, DimensionMismatch,
/// TooFewSamples.
double r2_score(std::span<const double> y, std::span<const double> y_pred);
double r2_score(const TrainedModel &m, const FeatureMatrix &X,
                std::span<const double> y);

struct CvEntry {
  ModelKind kind = ModelKind::Ridge;
  HyperParams hp;
  std::size_t lambda_index = 0;
  double mean_r2 = 0.0;
  double std_r2 = 0.0;
  /// Non-empty when some fold failed to fit; the entry is then ineligible.
  std::string error;
};

struct CvReport {
  std::size_t folds = 0;
  std::uint64_t seed = 0;
  std::vector<CvEntry> entries;
  std::size_t best = 0;
};

struct CvResult {
  TrainedModel model;
  CvReport report;
};

/// Exhaustive grid over kinds and hyperparameters scored by mean validation
/// R² over seeded folds. Ties prefer ridge, then lasso, then kernel ridge,
/// then the larger lambda, then the smaller gamma. The winner is refit on all
/// rows. Throws TooFewSamples when there are fewer rows than folds.
CvResult cross_validate_select(const FeatureMatrix &X, std::span<const double> y,
                               const std::vector<ModelKind> &kinds,
                               const HyperGrid &grid, std::size_t folds,
                               std::uint64_t seed);

/// Dataset form: encodes with `schema` and stores schema and property on the
/// returned model.
CvResult cross_validate_select(const Dataset &train, const FeatureSchema &schema,
                               const std::string &property,
                               const std::vector<ModelKind> &kinds,
                               const HyperGrid &grid, std::size_t folds,
                               std::uint64_t seed);

/// Fold id per row, a seeded shuffle dealt round-robin.
std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t folds,
                                         std::uint64_t seed);

/// A single "generalization level" knob: refits `kind` with lambda taken from
/// grid.lambda_grid[level] and gamma held fixed. Throws ConfigError when the
/// level is out of range.
TrainedModel fit_at_level(ModelKind kind, const FeatureMatrix &X,
                          std::span<const double> y, const HyperGrid &grid,
                          std::size_t level, double gamma);

FeatureMatrix encode_all(std::span<const MolGraph> graphs,
                         const FeatureSchema &schema);

// Versioned JSON model documents.
inline constexpr int kModelFormatVersion = 1;
std::string model_to_json(const TrainedModel &m);
/// Throws ModelFormatError.
TrainedModel model_from_json(std::string_view text);
void save_model(const TrainedModel &m, const std::filesystem::path &path);
TrainedModel load_model(const std::filesystem::path &path);

std::string cv_report_to_json(const CvReport &r);

}  // namespace molgx
