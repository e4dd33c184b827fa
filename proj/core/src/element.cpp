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

#include "molgx/element.hpp"

#include <cstdlib>

#include "molgx/error.hpp"

namespace molgx {

ElementTable::ElementTable(std::vector<ElementSpec> specs)
    : specs_(std::move(specs)) {
  if (specs_.size() > 255)
    throw ConfigError("element table holds at most 255 elements");
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const auto &s = specs_[i];
    if (s.symbol.empty())
      throw ConfigError("element symbol must not be empty");
    if (s.max_valence < 1 || s.max_valence > kMaxValence)
      throw ConfigError("max_valence of " + s.symbol + " must be in [1, " +
                        std::to_string(kMaxValence) + "]");
    for (std::size_t j = 0; j < i; ++j) {
      if (specs_[j].symbol == s.symbol)
        throw ConfigError("duplicate element symbol " + s.symbol);
    }
  }
}

const ElementTable &ElementTable::standard() {
  static const ElementTable table({
      {"C", 4},
      {"N", 3},
      {"O", 2},
      {"F", 1},
      {"P", 3},
      {"S", 2},
      {"Cl", 1},
      {"Br", 1},
      {"I", 1},
      {"B", 3},
  });
  return table;
}

std::optional<ElementId> ElementTable::find(std::string_view symbol) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].symbol == symbol) return static_cast<ElementId>(i);
  }
  return std::nullopt;
}

ElementId ElementTable::require(std::string_view symbol) const {
  if (auto id = find(symbol)) return *id;
  throw UnknownElement("unknown element '" + std::string(symbol) + "'");
}

int ElementTable::charged_capacity(ElementId id, int formal_charge) const {
  const auto &spec = specs_[id];
  if (formal_charge == 0) return spec.max_valence;
  const std::string &s = spec.symbol;
  if (s == "N" || s == "P" || s == "O" || s == "S")
    return spec.max_valence + formal_charge;
  if (s == "B") return spec.max_valence - formal_charge;
  return spec.max_valence - std::abs(formal_charge);
}

}  // namespace molgx
