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

#include "molgx/regress.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace molgx {
namespace {

constexpr double kLassoTolerance = 1e-8;
constexpr int kLassoMaxSweeps = 10000;
constexpr double kConstantFeature = 1e-12;

// Standardized training data shared by every kind and hyperparameter on one
// row subset.
struct Prepared {
  Scaler scaler;
  std::vector<int> active;  // unmasked feature columns
  Eigen::MatrixXd Z;        // n x |active|
  Eigen::VectorXd yc;       // centred targets
  double y_mean = 0.0;
  std::optional<Eigen::MatrixXd> sqdist;  // lazily, kernel ridge only

  const Eigen::MatrixXd &distances() {
    if (!sqdist) {
      const Eigen::VectorXd norms = Z.rowwise().squaredNorm();
      Eigen::MatrixXd d = -2.0 * Z * Z.transpose();
      d.colwise() += norms;
      d.rowwise() += norms.transpose();
      sqdist = d.cwiseMax(0.0);
    }
    return *sqdist;
  }
};

void check_shape(const FeatureMatrix &X, std::size_t ny) {
  if (X.size() != ny)
    throw DimensionMismatch(std::to_string(X.size()) + " feature rows but " +
                            std::to_string(ny) + " targets");
  if (X.size() < 2)
    throw TooFewSamples("fitting needs at least 2 samples, got " +
                        std::to_string(X.size()));
  for (const auto &row : X) {
    if (row.size() != X[0].size())
      throw DimensionMismatch("feature rows differ in length");
  }
}

Prepared prepare(const FeatureMatrix &X, std::span<const double> y,
                 std::span<const std::size_t> rows) {
  const std::size_t n = rows.size();
  const std::size_t d = X[0].size();
  Prepared p;
  p.scaler.mean.assign(d, 0.0);
  p.scaler.stddev.assign(d, 0.0);
  for (std::size_t r : rows)
    for (std::size_t j = 0; j < d; ++j) p.scaler.mean[j] += X[r][j];
  for (double &m : p.scaler.mean) m /= static_cast<double>(n);
  for (std::size_t r : rows) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = X[r][j] - p.scaler.mean[j];
      p.scaler.stddev[j] += c * c;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(p.scaler.stddev[j] / static_cast<double>(n));
    p.scaler.stddev[j] = sd > kConstantFeature ? sd : 0.0;
    if (p.scaler.stddev[j] > 0.0) p.active.push_back(static_cast<int>(j));
  }
  p.Z.resize(static_cast<Eigen::Index>(n),
             static_cast<Eigen::Index>(p.active.size()));
  p.yc.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) p.y_mean += y[rows[i]];
  p.y_mean /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto &row = X[rows[i]];
    for (std::size_t a = 0; a < p.active.size(); ++a) {
      const int j = p.active[a];
      p.Z(i, a) = (row[j] - p.scaler.mean[j]) / p.scaler.stddev[j];
    }
    p.yc(i) = y[rows[i]] - p.y_mean;
  }
  return p;
}

std::vector<double> scatter_weights(const Prepared &p, const Eigen::VectorXd &w) {
  std::vector<double> out(p.scaler.mean.size(), 0.0);
  for (std::size_t a = 0; a < p.active.size(); ++a) out[p.active[a]] = w(a);
  return out;
}

TrainedModel fit_ridge(const Prepared &p, double lambda) {
  const Eigen::Index k = p.Z.cols();
  Eigen::VectorXd w(k);
  if (k == 0) {
    w.resize(0);
  } else if (lambda == 0.0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(p.Z);
    if (qr.rank() < k)
      throw SingularSystem("ridge with lambda = 0 on a rank-deficient design (rank " +
                           std::to_string(qr.rank()) + " of " +
                           std::to_string(k) + ")");
    w = qr.solve(p.yc);
  } else {
    Eigen::MatrixXd A = p.Z.transpose() * p.Z;
    A.diagonal().array() += lambda;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
      throw SingularSystem("ridge normal equations could not be factored");
    w = ldlt.solve(p.Z.transpose() * p.yc);
  }
  TrainedModel m;
  m.kind = ModelKind::Ridge;
  m.hp = {lambda, 0.0};
  m.scaler = p.scaler;
  m.intercept = p.y_mean;
  m.weights = scatter_weights(p, w);
  return m;
}

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

// Minimizes (1/2n)|yc - Zw|^2 + lambda |w|_1 by cyclic coordinate descent.
TrainedModel fit_lasso(const Prepared &p, double lambda) {
  const Eigen::Index n = p.Z.rows(), k = p.Z.cols();
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd r = p.yc;
  Eigen::VectorXd col_sq(k);
  for (Eigen::Index j = 0; j < k; ++j) col_sq(j) = p.Z.col(j).squaredNorm() * inv_n;
  bool converged = k == 0;
  for (int sweep = 0; sweep < kLassoMaxSweeps && !converged; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double rho = p.Z.col(j).dot(r) * inv_n + col_sq(j) * w(j);
      const double next = soft_threshold(rho, lambda) / col_sq(j);
      const double delta = next - w(j);
      if (delta != 0.0) {
        r.noalias() -= delta * p.Z.col(j);
        w(j) = next;
        max_change = std::max(max_change, std::abs(delta));
      }
    }
    converged = max_change < kLassoTolerance;
  }
  if (!converged)
    throw NonConvergence("lasso did not converge within " +
                         std::to_string(kLassoMaxSweeps) + " sweeps (lambda " +
                         std::to_string(lambda) + ")");
  TrainedModel m;
  m.kind = ModelKind::Lasso;
  m.hp = {lambda, 0.0};
  m.scaler = p.scaler;
  m.intercept = p.y_mean;
  m.weights = scatter_weights(p, w);
  return m;
}

TrainedModel fit_kernel_ridge(Prepared &p, double lambda, double gamma) {
  if (!(gamma > 0.0)) throw ConfigError("kernel ridge needs gamma > 0");
  const Eigen::Index n = p.Z.rows();
  Eigen::MatrixXd K = (-gamma * p.distances().array()).exp().matrix();
  K.diagonal().array() += lambda;
  Eigen::VectorXd alpha;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() == Eigen::Success) {
    alpha = llt.solve(p.yc);
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(K);
    if (qr.rank() < n)
      throw SingularSystem("kernel matrix is singular (lambda " +
                           std::to_string(lambda) + ")");
    alpha = qr.solve(p.yc);
  }
  TrainedModel m;
  m.kind = ModelKind::KernelRidge;
  m.hp = {lambda, gamma};
  m.scaler = p.scaler;
  m.intercept = p.y_mean;
  m.dual.assign(alpha.data(), alpha.data() + n);
  m.train_matrix.assign(static_cast<std::size_t>(n),
                        FeatureVector(p.scaler.mean.size(), 0.0));
  for (Eigen::Index i = 0; i < n; ++i)
    for (std::size_t a = 0; a < p.active.size(); ++a)
      m.train_matrix[i][p.active[a]] = p.Z(i, static_cast<Eigen::Index>(a));
  return m;
}

TrainedModel fit_prepared(ModelKind kind, Prepared &p, const HyperParams &hp) {
  if (hp.lambda < 0.0 || !std::isfinite(hp.lambda))
    throw ConfigError("lambda must be finite and >= 0");
  switch (kind) {
    case ModelKind::Ridge: return fit_ridge(p, hp.lambda);
    case ModelKind::Lasso: return fit_lasso(p, hp.lambda);
    case ModelKind::KernelRidge: return fit_kernel_ridge(p, hp.lambda, hp.gamma);
  }
  throw ConfigError("unknown model kind");
}

int kind_rank(ModelKind k) {
  switch (k) {
    case ModelKind::Ridge: return 0;
    case ModelKind::Lasso: return 1;
    case ModelKind::KernelRidge: return 2;
  }
  return 3;
}

// True when a is preferred over b.
bool better(const CvEntry &a, const CvEntry &b) {
  const double tol = 1e-12 * std::max(1.0, std::abs(b.mean_r2));
  if (a.mean_r2 > b.mean_r2 + tol) return true;
  if (a.mean_r2 < b.mean_r2 - tol) return false;
  if (kind_rank(a.kind) != kind_rank(b.kind))
    return kind_rank(a.kind) < kind_rank(b.kind);
  if (a.hp.lambda != b.hp.lambda) return a.hp.lambda > b.hp.lambda;
  return a.hp.gamma < b.hp.gamma;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Ridge: return "ridge";
    case ModelKind::Lasso: return "lasso";
    case ModelKind::KernelRidge: return "kernel_ridge";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view text) {
  if (text == "ridge") return ModelKind::Ridge;
  if (text == "lasso") return ModelKind::Lasso;
  if (text == "kernel_ridge") return ModelKind::KernelRidge;
  throw ConfigError("unknown model kind '" + std::string(text) + "'");
}

std::vector<double> log_space(double low, double high, std::size_t n) {
  std::vector<double> out;
  if (n == 1) return {low};
  const double a = std::log10(low), b = std::log10(high);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(std::pow(10.0, a + (b - a) * static_cast<double>(i) /
                                         static_cast<double>(n - 1)));
  return out;
}

HyperGrid HyperGrid::defaults() {
  return {log_space(1e-3, 1e3, 7), log_space(1e-3, 1e1, 5)};
}

void HyperGrid::validate() const {
  if (lambda_grid.empty() || gamma_grid.empty())
    throw ConfigError("hyperparameter grids must be non-empty");
  for (double v : lambda_grid)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("lambda grid values must be positive");
  for (double v : gamma_grid)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("gamma grid values must be positive");
}

TrainedModel fit(ModelKind kind, const FeatureMatrix &X,
                 std::span<const double> y, const HyperParams &hp) {
  check_shape(X, y.size());
  std::vector<std::size_t> rows(X.size());
  std::iota(rows.begin(), rows.end(), 0);
  Prepared p = prepare(X, y, rows);
  return fit_prepared(kind, p, hp);
}

double predict(const TrainedModel &m, std::span<const double> x) {
  const std::size_t d = m.dimension();
  if (x.size() != d)
    throw DimensionMismatch("model expects " + std::to_string(d) +
                            " features, got " + std::to_string(x.size()));
  if (m.kind != ModelKind::KernelRidge) {
    double s = m.intercept;
    for (std::size_t j = 0; j < d; ++j) {
      if (m.scaler.stddev[j] > 0.0)
        s += m.weights[j] * (x[j] - m.scaler.mean[j]) / m.scaler.stddev[j];
    }
    return s;
  }
  std::vector<double> z(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    if (m.scaler.stddev[j] > 0.0)
      z[j] = (x[j] - m.scaler.mean[j]) / m.scaler.stddev[j];
  }
  double s = m.intercept;
  for (std::size_t i = 0; i < m.dual.size(); ++i) {
    const auto &t = m.train_matrix[i];
    double dist = 0.0;
    for (std::size_t j = 0; j < d; ++j) dist += (z[j] - t[j]) * (z[j] - t[j]);
    s += m.dual[i] * std::exp(-m.hp.gamma * dist);
  }
  return s;
}

double predict(const TrainedModel &m, const MolGraph &g) {
  return predict(m, encode(g, m.schema));
}

double r2_score(std::span<const double> y, std::span<const double> y_pred) {
  if (y.size() != y_pred.size())
    throw DimensionMismatch("r2_score: length mismatch");
  if (y.size() < 2) throw TooFewSamples("r2_score needs at least 2 samples");
  const double mean =
      std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ss_res += (y[i] - y_pred[i]) * (y[i] - y_pred[i]);
    ss_tot += (y[i] - mean) * (y[i] - mean);
  }
  if (ss_tot <= 0.0) throw ZeroVariance("r2_score: targets have zero variance");
  return 1.0 - ss_res / ss_tot;
}

double r2_score(const TrainedModel &m, const FeatureMatrix &X,
                std::span<const double> y) {
  if (X.size() != y.size()) throw DimensionMismatch("r2_score: length mismatch");
  std::vector<double> pred;
  pred.reserve(X.size());
  for (const auto &x : X) pred.push_back(predict(m, x));
  return r2_score(y, pred);
}

std::vector<std::size_t> fold_assignment(std::size_t n, std::size_t folds,
                                         std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::size_t> fold(n);
  for (std::size_t k = 0; k < n; ++k) fold[order[k]] = k % folds;
  return fold;
}

CvResult cross_validate_select(const FeatureMatrix &X, std::span<const double> y,
                               const std::vector<ModelKind> &kinds,
                               const HyperGrid &grid, std::size_t folds,
                               std::uint64_t seed) {
  check_shape(X, y.size());
  grid.validate();
  if (kinds.empty()) throw ConfigError("no model kinds to select from");
  if (folds < 2) throw ConfigError("cross validation needs at least 2 folds");
  if (X.size() < folds)
    throw TooFewSamples(std::to_string(X.size()) + " samples for " +
                        std::to_string(folds) + " folds");

  CvResult result;
  CvReport &report = result.report;
  report.folds = folds;
  report.seed = seed;
  for (ModelKind kind : kinds) {
    for (std::size_t li = 0; li < grid.lambda_grid.size(); ++li) {
      if (kind == ModelKind::KernelRidge) {
        for (double g : grid.gamma_grid)
          report.entries.push_back({kind, {grid.lambda_grid[li], g}, li, 0, 0, {}});
      } else {
        report.entries.push_back({kind, {grid.lambda_grid[li], 0.0}, li, 0, 0, {}});
      }
    }
  }

  const auto fold = fold_assignment(X.size(), folds, seed);
  std::vector<std::vector<double>> scores(report.entries.size());
  for (std::size_t f = 0; f < folds; ++f) {
    std::vector<std::size_t> train_rows, val_rows;
    for (std::size_t i = 0; i < X.size(); ++i)
      (fold[i] == f ? val_rows : train_rows).push_back(i);
    std::vector<double> y_val;
    for (std::size_t i : val_rows) y_val.push_back(y[i]);
    Prepared p = prepare(X, y, train_rows);
    for (std::size_t e = 0; e < report.entries.size(); ++e) {
      CvEntry &entry = report.entries[e];
      if (!entry.error.empty()) continue;
      try {
        const TrainedModel m = fit_prepared(entry.kind, p, entry.hp);
        std::vector<double> pred;
        for (std::size_t i : val_rows) pred.push_back(predict(m, X[i]));
        scores[e].push_back(r2_score(y_val, pred));
      } catch (const ZeroVariance &) {
        // Fold carries no signal; skipped for every configuration alike.
      } catch (const Error &ex) {
        entry.error = ex.what();
      }
    }
  }

  bool any = false;
  for (std::size_t e = 0; e < report.entries.size(); ++e) {
    CvEntry &entry = report.entries[e];
    if (entry.error.empty() && scores[e].empty())
      entry.error = "no fold had target variance";
    if (!entry.error.empty()) {
      entry.mean_r2 = -std::numeric_limits<double>::infinity();
      continue;
    }
    const double n = static_cast<double>(scores[e].size());
    entry.mean_r2 = std::accumulate(scores[e].begin(), scores[e].end(), 0.0) / n;
    double ss = 0.0;
    for (double s : scores[e]) ss += (s - entry.mean_r2) * (s - entry.mean_r2);
    entry.std_r2 = std::sqrt(ss / n);
    if (!any || better(entry, report.entries[report.best])) report.best = e;
    any = true;
  }
  if (!any) throw ConfigError("every configuration failed to fit");

  const CvEntry &win = report.entries[report.best];
  result.model = fit(win.kind, X, y, win.hp);
  return result;
}

FeatureMatrix encode_all(std::span<const MolGraph> graphs,
                         const FeatureSchema &schema) {
  FeatureMatrix X;
  X.reserve(graphs.size());
  for (const auto &g : graphs) X.push_back(encode(g, schema));
  return X;
}

CvResult cross_validate_select(const Dataset &train, const FeatureSchema &schema,
                               const std::string &property,
                               const std::vector<ModelKind> &kinds,
                               const HyperGrid &grid, std::size_t folds,
                               std::uint64_t seed) {
  if (train.empty()) throw EmptyDataset("training set is empty");
  const auto graphs = train.graphs();
  const FeatureMatrix X = encode_all(graphs, schema);
  const auto y = train.column(property);
  CvResult r = cross_validate_select(X, y, kinds, grid, folds, seed);
  r.model.schema = schema;
  r.model.property = property;
  return r;
}

TrainedModel fit_at_level(ModelKind kind, const FeatureMatrix &X,
                          std::span<const double> y, const HyperGrid &grid,
                          std::size_t level, double gamma) {
  if (level >= grid.lambda_grid.size())
    throw ConfigError("generalization level " + std::to_string(level) +
                      " outside 0.." + std::to_string(grid.lambda_grid.size() - 1));
  return fit(kind, X, y, {grid.lambda_grid[level], gamma});
}

}  // namespace molgx
