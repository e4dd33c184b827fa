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

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "molgx/enumerate.hpp"
#include "molgx/features.hpp"

namespace molgx {

class BudgetTooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr int kBruteForceMaxAtoms = 7;

/// Every graph reachable from single atoms by adding one atom and one bond
/// at a time within the pool, one per isomorphism class. Deduplicates with
/// pairwise is_isomorphic only. Throws BudgetTooLarge above 7 atoms.
std::vector<MolGraph> brute_force_enumerate(const ResourcePool &pool);

struct BenchReport {
  std::string scenario;
  GenerationStats stats;
  /// Named scalar results, e.g. "online_valid", "speedup".
  std::map<std::string, double> metrics;
  /// Output files written by the scenario.
  std::vector<std::filesystem::path> files;
};

std::string report_to_json(const BenchReport &r);

/// Online run (rules and target gates active) against a post-hoc run (no
/// gates, same node budget, screened afterwards). Reports the median
/// solutions per second over `repetitions` for both arms, valid counts and
/// the ratio of valid-solution rates.
BenchReport speed_bench(const GenerationConfig &config, int repetitions);

/// Rules online against rules disabled and applied afterwards, both at the
/// config's node budget. Throws ConfigError without rules or a finite
/// max_nodes_expanded.
BenchReport filter_ablation(const GenerationConfig &config);

/// Whether each solution passes its fragment ranges, output-mode rules and
/// target ranges when re-checked from scratch.
bool satisfies(const Solution &s, const GenerationConfig &config);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Counter-clockwise hull without collinear points.
std::vector<Point2> convex_hull(std::vector<Point2> points);
double polygon_area(const std::vector<Point2> &hull);
/// Inside or on the boundary (within `eps`).
bool inside_hull(const std::vector<Point2> &hull, Point2 p, double eps = 1e-9);

struct VarietyReport {
  PcaResult pca;
  std::vector<Point2> training;
  std::vector<Point2> generated;
  double training_area = 0.0;
  double generated_area = 0.0;
  /// generated_area / training_area.
  double area_ratio = 0.0;
  /// Share of generated points outside the training hull.
  double fraction_outside = 0.0;
  /// |sum of all eigenvalues - total variance| from the full spectrum.
  double variance_residual = 0.0;
};

/// Two-component PCA fitted on the union of both sets.
VarietyReport variety_report(const std::vector<MolGraph> &generated,
                             const std::vector<MolGraph> &training,
                             const FeatureSchema &schema);

/// `set,pc1,pc2` rows for external plotting.
void write_variety_csv(const VarietyReport &r, const std::filesystem::path &path);

/// Emitted count and distinct canonical labels over a full run. Labels are
/// kept as 128-bit digests so millions of solutions fit in memory; equal
/// counts prove uniqueness.
struct DuplicateCheck {
  GenerationStats stats;
  std::size_t emitted = 0;
  std::size_t distinct = 0;
};
DuplicateCheck duplicate_check(const GenerationConfig &config);

/// Solutions against brute_force_enumerate for one pool, matched with the
/// isomorphism test only.
struct OracleComparison {
  std::size_t expected = 0;
  std::size_t emitted = 0;
  std::size_t missing = 0;
  std::size_t duplicate = 0;
  std::size_t spurious = 0;
  bool equal() const { return missing == 0 && duplicate == 0 && spurious == 0; }
};
OracleComparison compare_with_oracle(const ResourcePool &pool);

/// Runs a JSON scenario file. `scenario` is one of "oracle", "duplicates",
/// "ablation", "speed" or "variety"; the remaining keys are documented in
/// the README. Relative paths resolve against the file's directory; extra
/// outputs go to `out_dir` when it is non-empty. Throws ConfigError.
BenchReport run_scenario(const std::filesystem::path &file,
                         const std::filesystem::path &out_dir = {});

}  // namespace molgx
