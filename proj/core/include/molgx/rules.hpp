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

#include <cstddef>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "molgx/error.hpp"
#include "molgx/graph.hpp"

namespace molgx {

class DuplicateId : public Error {
 public:
  using Error::Error;
};

class RuleFormatError : public Error {
 public:
  using Error::Error;
};

enum class RuleKind { Forbidden, CountRange };

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct StructuralRule {
  std::string id;
  RuleKind kind = RuleKind::Forbidden;
  std::string smiles;
  MolGraph fragment;
  /// CountRange only.
  std::size_t min = 0;
  std::size_t max = kUnbounded;
  std::string reason;

  static StructuralRule forbidden(std::string id, std::string_view smiles,
                                  std::string reason = {});
  static StructuralRule count_range(std::string id, std::string_view smiles,
                                    std::size_t min, std::size_t max,
                                    std::string reason = {});
};

class RuleSet {
 public:
  /// Throws DuplicateId, InvalidGraph (disconnected fragment) or ConfigError
  /// (min > max).
  void add(StructuralRule rule);

  const std::vector<StructuralRule> &rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  const StructuralRule *find(std::string_view id) const;

 private:
  std::vector<StructuralRule> rules_;
};

/// Tab separated, one rule per line:
///   id  kind  smiles  min  max  reason
/// kind is `forbidden` or `count_range`; max may be `inf`. Blank lines and
/// lines starting with '#' are skipped. SMILES errors are rethrown with the
/// rule id and line number prepended to the message.
RuleSet parse_rules(std::string_view text, std::string_view source = "<rules>");
/// Throws FileError.
RuleSet load_rules(const std::filesystem::path &path);
std::string format_rules(const RuleSet &rules);

/// The built-in set: five forbidden fragments (ketenimine, ynolate,
/// allenolate, N,N-dihydroxylamine, enamine-N-oxide).
RuleSet default_rules();
/// Text of the built-in rule file.
std::string_view default_rules_text();

enum class CheckMode {
  /// Checks that can only get worse under augmentation: forbidden
  /// fragments and count maxima.
  Prune,
  /// Every constraint, including count minima.
  Output,
};

struct RuleVerdict {
  bool pass = true;
  /// First violated rule, empty on pass.
  std::string rule_id;
  RuleKind kind = RuleKind::Forbidden;
  /// Whether the violation was an exceeded maximum (vs a missing minimum).
  bool over_max = false;

  explicit operator bool() const { return pass; }
};

RuleVerdict check_rules(const MolGraph &g, const RuleSet &rules, CheckMode mode);

}  // namespace molgx
