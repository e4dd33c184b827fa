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

#include <atomic>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "molgx/dataset.hpp"
#include "molgx/graph.hpp"
#include "molgx/regress.hpp"
#include "molgx/rules.hpp"

namespace molgx {

struct FragmentRange {
  std::string smiles;
  MolGraph fragment;
  std::size_t min = 0;
  std::size_t max = kUnbounded;
};

struct ResourcePool {
  /// Element symbol -> how many atoms of it may be used.
  std::map<std::string, int> atoms;
  std::vector<FragmentRange> fragments;

  int total_atoms() const;
};

/// "C:7,N:2,O:2". Throws ConfigError.
ResourcePool parse_pool(std::string_view text);
std::string format_pool(const ResourcePool &pool);
/// Adds a count constraint from "SMILES:min:max" (max may be "inf").
void add_fragment_range(ResourcePool &pool, std::string_view text);

/// Per-element maximum over the training molecules; fragments left empty.
/// Throws EmptyDataset.
ResourcePool derive_pool(const Dataset &train);

/// "E_HOMO:-0.26:-0.24" -> {"E_HOMO", {-0.26, -0.24}}. Throws ConfigError.
std::pair<std::string, TargetRange> parse_target(std::string_view text);

/// Sets each model's target_range from the target naming its property;
/// models without one get (-inf, inf) so they only annotate. Throws
/// ConfigError for a target whose property no model predicts.
void attach_targets(std::vector<TrainedModel> &models,
                    const std::vector<std::pair<std::string, TargetRange>> &targets);

/// "default", "none" or a rule file path.
RuleSet resolve_rules(const std::string &spec);

struct GenerationLimits {
  std::size_t max_solutions = kUnbounded;
  std::size_t max_nodes_expanded = kUnbounded;
  double wall_clock_seconds = 3600.0;
};

struct GenerationConfig {
  ResourcePool pool;
  RuleSet rules;
  /// Every model must carry a target_range.
  std::vector<TrainedModel> models;
  GenerationLimits limits;
  /// Extra roots besides the single atoms; their atoms count against the pool.
  std::vector<MolGraph> seed_fragments;
  /// Top-level branches run on this many threads, merged in root order.
  std::size_t workers = 1;
  /// Polled between nodes; set to stop early.
  const std::atomic<bool> *cancel = nullptr;
  /// When set, incremented once per expanded node for outside observers.
  std::atomic<std::size_t> *progress_nodes = nullptr;

  /// Throws ConfigError (unknown element, negative count, no finite limit,
  /// model without target range or with a schema of the wrong size, seed
  /// larger than the pool).
  void validate() const;
};

struct PruneCounts {
  std::size_t valence = 0;
  std::size_t forbidden = 0;
  std::size_t over_max_fragment = 0;
  std::size_t termination = 0;
};

struct GenerationStats {
  std::size_t nodes_expanded = 0;
  std::size_t canonical_rejections = 0;
  PruneCounts prune_counts;
  std::size_t solutions_emitted = 0;
  double elapsed_seconds = 0.0;
  double solutions_per_second = 0.0;
  /// Set when a limit or cancellation stopped the run; `limit` names it
  /// ("max_solutions", "max_nodes_expanded", "wall_clock_seconds",
  /// "cancelled").
  bool limit_reached = false;
  std::string limit;

  void merge(const GenerationStats &other);
};

std::string stats_to_json(const GenerationStats &s);

struct Solution {
  MolGraph graph;
  std::string smiles;
  /// One value per GenerationConfig::models entry.
  std::vector<double> predictions;
};

/// Receives solutions in emission order. Return false to stop generation.
using SolutionSink = std::function<bool(const Solution &)>;

/// Orderly enumeration from every root. Emits each accepted isomorphism
/// class once, in depth-first discovery order with roots in element-table
/// order then seeds. Stops when every path is exhausted or a limit trips.
GenerationStats generate(const GenerationConfig &config, const SolutionSink &sink);

/// Collects every emitted solution.
std::vector<Solution> generate_all(const GenerationConfig &config,
                                   GenerationStats *stats = nullptr);

/// `smiles<TAB>pred...`
std::string format_solution(const Solution &s);

struct Augmentation {
  VertexId vertex = 0;
  ElementId element = 0;
  int order = 1;
  MolGraph child;
  std::string child_label;
};

/// Remaining atoms per element id of the graph's table.
using AtomBudget = std::vector<int>;

AtomBudget remaining_atoms(const MolGraph &g, const ResourcePool &pool);

/// Every (vertex, element, order) with room on both ends whose child has g
/// as canonical parent: deleting the child's highest-ranked non-cut vertex
/// gives a graph isomorphic to g. Children isomorphic to an earlier sibling
/// are dropped. `g_label` is canonical_label(g). `rejections`, when given, is
/// incremented per candidate dropped by either test.
std::vector<Augmentation> canonical_augmentations(const MolGraph &g,
                                                  const std::string &g_label,
                                                  const AtomBudget &remaining,
                                                  std::size_t *rejections = nullptr);
std::vector<Augmentation> canonical_augmentations(const MolGraph &g,
                                                  const AtomBudget &remaining);

struct Evaluation {
  bool accept = true;
  /// Which check failed first: "fragment", "rule:<id>" or "target:<i>".
  std::string reason;
  std::vector<double> predictions;
};

/// Output decision: fragment counts within range, output-mode rules pass and
/// every model's prediction lies in its target range. Predictions are always
/// filled.
Evaluation evaluate_structure(const MolGraph &g,
                              const std::vector<FragmentRange> &fragments,
                              const RuleSet &rules,
                              const std::vector<TrainedModel> &models);

enum class PruneCause { Valence, Forbidden, OverMaxFragment, Termination };

/// Whether nothing useful lies below g: atoms exhausted, no free valence, or
/// a monotone check (forbidden rule, exceeded maximum) failed. Property
/// predictions never prune.
std::optional<PruneCause> check_termination(const MolGraph &g,
                                            const AtomBudget &remaining,
                                            const std::vector<FragmentRange> &fragments,
                                            const RuleSet &rules);

}  // namespace molgx
