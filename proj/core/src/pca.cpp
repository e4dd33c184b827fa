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

#include <Eigen/Dense>

#include "molgx/error.hpp"
#include "molgx/features.hpp"

namespace molgx {

std::vector<double> PcaResult::project(std::span<const double> x) const {
  if (x.size() != mean.size())
    throw DimensionMismatch("PCA projection expects " +
                            std::to_string(mean.size()) + " features, got " +
                            std::to_string(x.size()));
  std::vector<double> out(components.size(), 0.0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (std::size_t j = 0; j < x.size(); ++j)
      out[c] += (x[j] - mean[j]) * components[c][j];
  }
  return out;
}

PcaResult pca_project(std::span<const FeatureVector> vectors, std::size_t k) {
  const std::size_t n = vectors.size();
  if (n < 2) throw DimensionMismatch("PCA needs at least 2 vectors");
  const std::size_t d = vectors[0].size();
  if (k > d)
    throw DimensionMismatch("PCA asked for " + std::to_string(k) +
                            " components of " + std::to_string(d) +
                            "-dimensional data");
  Eigen::MatrixXd X(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (vectors[i].size() != d)
      throw DimensionMismatch("PCA input vectors differ in length");
    for (std::size_t j = 0; j < d; ++j) X(i, j) = vectors[i][j];
  }
  const Eigen::RowVectorXd mu = X.colwise().mean();
  X.rowwise() -= mu;
  const Eigen::MatrixXd cov =
      (X.transpose() * X) / static_cast<double>(n - 1);

  PcaResult r;
  r.mean.assign(mu.data(), mu.data() + d);
  r.total_variance = cov.trace();
  r.projections.assign(n, std::vector<double>(k, 0.0));
  if (k == 0) return r;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  // Eigenvalues come ascending.
  for (std::size_t c = 0; c < k; ++c) {
    const Eigen::Index col = static_cast<Eigen::Index>(d - 1 - c);
    Eigen::VectorXd axis = eig.eigenvectors().col(col);
    // Sign convention: largest-magnitude entry positive.
    Eigen::Index arg = 0;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0) axis = -axis;
    r.explained_variance.push_back(std::max(0.0, eig.eigenvalues()(col)));
    r.components.emplace_back(axis.data(), axis.data() + d);
    const Eigen::VectorXd proj = X * axis;
    for (std::size_t i = 0; i < n; ++i) r.projections[i][c] = proj(i);
  }
  return r;
}

}  // namespace molgx
