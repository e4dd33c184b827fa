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

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "molgx/dataset.hpp"
#include "molgx/graph.hpp"

namespace molgx {

enum class FamilyKind { AtomCount, RingCount, AromaticRingCount, EdgeSubgraph };

struct FeatureFamily {
  FamilyKind kind = FamilyKind::AtomCount;
  /// EdgeSubgraph only: largest connected edge subset size. Cost grows
  /// combinatorially beyond 2 or 3.
  int max_edges = 1;

  static FeatureFamily atoms() { return {FamilyKind::AtomCount, 1}; }
  static FeatureFamily rings() { return {FamilyKind::RingCount, 1}; }
  static FeatureFamily aromatic_rings() {
    return {FamilyKind::AromaticRingCount, 1};
  }
  static FeatureFamily edges(int max_edges = 1) {
    return {FamilyKind::EdgeSubgraph, max_edges};
  }

  friend bool operator==(const FeatureFamily &, const FeatureFamily &) = default;
};

/// "atoms", "rings", "aromatic_rings", "edges:<k>".
std::string to_string(const FeatureFamily &f);
/// Throws ConfigError.
FeatureFamily parse_family(const std::string &text);

/// The family list used for the desk QM9 configuration: heavy atoms, rings,
/// aromatic rings and one-edge substructures.
std::vector<FeatureFamily> default_families();

struct Pattern {
  FamilyKind family = FamilyKind::AtomCount;
  /// Canonical SMILES for atom and edge-subgraph patterns, the ring size
  /// for ring families.
  std::string key;
  /// Atom/edge patterns only.
  MolGraph fragment;
  int ring_size = 0;
};

using FeatureVector = std::vector<double>;

class FeatureSchema {
 public:
  FeatureSchema() = default;
  FeatureSchema(std::vector<FeatureFamily> families,
                std::vector<Pattern> patterns);

  const std::vector<FeatureFamily> &families() const { return families_; }
  const std::vector<Pattern> &patterns() const { return patterns_; }
  std::size_t dimension() const { return patterns_.size(); }

  /// Index of a pattern by (family, key); -1 when absent.
  int find(FamilyKind family, const std::string &key) const;

  /// Human-readable column name, e.g. "edge:CO" or "ring:6".
  std::string column_name(std::size_t i) const;

  /// Rebuilds from (family tag, key) pairs as stored with a model.
  static FeatureSchema from_tags(
      std::vector<FeatureFamily> families,
      const std::vector<std::pair<std::string, std::string>> &tagged_keys);
  std::vector<std::pair<std::string, std::string>> tagged_keys() const;

  /// Order-independent fingerprint of the pattern list.
  std::string identity() const;

 private:
  friend FeatureVector encode(const MolGraph &g, const FeatureSchema &schema);

  void index();

  std::vector<FeatureFamily> families_;
  std::vector<Pattern> patterns_;
  std::map<std::pair<FamilyKind, std::string>, int> by_key_;
  // Fast paths: (element, charge) -> atom pattern; (a, b, order) with
  // a <= b packed atom keys -> one-edge pattern; canonical label -> larger
  // edge pattern.
  std::map<int, int> atom_index_;
  std::map<std::tuple<int, int, int>, int> edge1_index_;
  std::map<std::string, int> edge_label_index_;
  std::map<int, int> ring_index_;
  std::map<int, int> aromatic_index_;
  int max_edges_ = 0;
};

/// Patterns are the union over `molecules` of every family instance present,
/// ordered by family (in the given order) and then by key.
/// Throws EmptyDataset when `molecules` is empty.
FeatureSchema build_schema(std::span<const MolGraph> molecules,
                           const std::vector<FeatureFamily> &families);
FeatureSchema build_schema(const Dataset &train,
                           const std::vector<FeatureFamily> &families);

/// Occurrence counts of every schema pattern in g. Patterns absent from g
/// score 0; substructures of g unknown to the schema are ignored.
FeatureVector encode(const MolGraph &g, const FeatureSchema &schema);

struct PcaResult {
  /// One k-dimensional point per input vector.
  std::vector<std::vector<double>> projections;
  /// Variance along each of the k components (descending).
  std::vector<double> explained_variance;
  /// Sum of per-feature variances (trace of the covariance).
  double total_variance = 0.0;
  /// Feature means and the k principal axes (row per component).
  std::vector<double> mean;
  std::vector<std::vector<double>> components;

  std::vector<double> project(std::span<const double> x) const;
};

/// Principal component analysis of mean-centred vectors (covariance with
/// n - 1 normalisation, symmetric eigendecomposition). Identical inputs give
/// all-zero projections and zero explained variance. Throws
/// DimensionMismatch when fewer than 2 vectors are given, k exceeds the
/// dimension, or lengths differ.
PcaResult pca_project(std::span<const FeatureVector> vectors, std::size_t k);

}  // namespace molgx
