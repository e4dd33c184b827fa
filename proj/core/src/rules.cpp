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

#include "molgx/rules.hpp"

#include <fstream>
#include <sstream>

#include "default_rules.inc"
#include "molgx/dataset.hpp"
#include "molgx/smiles.hpp"
#include "molgx/substructure.hpp"

namespace molgx {
namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \r") - b + 1);
}

std::size_t parse_count(const std::string &text, std::size_t fallback,
                        const std::string &where) {
  if (text.empty()) return fallback;
  if (text == "inf" || text == "*") return kUnbounded;
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used != text.size() || v < 0)
    throw RuleFormatError(where + ": bad count '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::string count_text(std::size_t v) {
  return v == kUnbounded ? "inf" : std::to_string(v);
}

void validate_fragment(const MolGraph &f, const std::string &id) {
  if (f.empty() || !f.is_connected())
    throw InvalidGraph("rule '" + id + "': fragment must be connected");
}

}  // namespace

StructuralRule StructuralRule::forbidden(std::string id, std::string_view smiles,
                                         std::string reason) {
  StructuralRule r;
  r.id = std::move(id);
  r.kind = RuleKind::Forbidden;
  r.smiles = std::string(smiles);
  r.fragment = parse_smiles(smiles);
  r.reason = std::move(reason);
  return r;
}

StructuralRule StructuralRule::count_range(std::string id, std::string_view smiles,
                                           std::size_t min, std::size_t max,
                                           std::string reason) {
  StructuralRule r = forbidden(std::move(id), smiles, std::move(reason));
  r.kind = RuleKind::CountRange;
  r.min = min;
  r.max = max;
  return r;
}

void RuleSet::add(StructuralRule rule) {
  if (find(rule.id))
    throw DuplicateId("duplicate rule id '" + rule.id + "'");
  validate_fragment(rule.fragment, rule.id);
  if (rule.kind == RuleKind::CountRange && rule.min > rule.max)
    throw ConfigError("rule '" + rule.id + "': min exceeds max");
  rules_.push_back(std::move(rule));
}

const StructuralRule *RuleSet::find(std::string_view id) const {
  for (const auto &r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

RuleSet parse_rules(std::string_view text, std::string_view source) {
  RuleSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    const std::string where = std::string(source) + ":" + std::to_string(lineno);
    auto cols = split_tabs(line);
    if (cols.size() < 3)
      throw RuleFormatError(where + ": expected id, kind and smiles columns");
    cols.resize(6);
    for (auto &c : cols) c = trim(c);
    const std::string &id = cols[0];
    if (id.empty()) throw RuleFormatError(where + ": empty rule id");
    StructuralRule rule;
    try {
      if (cols[1] == "forbidden") {
        rule = StructuralRule::forbidden(id, cols[2], cols[5]);
      } else if (cols[1] == "count_range") {
        rule = StructuralRule::count_range(id, cols[2],
                                           parse_count(cols[3], 0, where),
                                           parse_count(cols[4], kUnbounded, where),
                                           cols[5]);
      } else {
        throw RuleFormatError(where + ": unknown rule kind '" + cols[1] + "'");
      }
    } catch (const SmilesError &e) {
      throw SmilesError(e.kind(), e.position(),
                        "rule '" + id + "' (" + where + "): " + e.what());
    }
    set.add(std::move(rule));
  }
  return set;
}

RuleSet load_rules(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open rule file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rules(ss.str(), path.string());
}

std::string format_rules(const RuleSet &rules) {
  std::string out = "# id\tkind\tsmiles\tmin\tmax\treason\n";
  for (const auto &r : rules.rules()) {
    out += r.id + '\t';
    if (r.kind == RuleKind::Forbidden) {
      out += "forbidden\t" + r.smiles + "\t\t\t";
    } else {
      out += "count_range\t" + r.smiles + '\t' + std::to_string(r.min) + '\t' +
             count_text(r.max) + '\t';
    }
    out += r.reason + '\n';
  }
  return out;
}

std::string_view default_rules_text() { return kDefaultRulesText; }

RuleSet default_rules() { return parse_rules(kDefaultRulesText, "<default rules>"); }

RuleVerdict check_rules(const MolGraph &g, const RuleSet &rules, CheckMode mode) {
  for (const auto &r : rules.rules()) {
    if (r.kind == RuleKind::Forbidden) {
      if (contains_fragment(g, r.fragment)) return {false, r.id, r.kind, true};
      continue;
    }
    const bool need_count = r.max != kUnbounded ||
                            (mode == CheckMode::Output && r.min > 0);
    if (!need_count) continue;
    const std::size_t n = count_fragment(g, r.fragment);
    if (n > r.max) return {false, r.id, r.kind, true};
    if (mode == CheckMode::Output && n < r.min) return {false, r.id, r.kind, false};
  }
  return {};
}

}  // namespace molgx
