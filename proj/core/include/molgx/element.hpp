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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace molgx {

using ElementId = std::uint8_t;

/// Highest bond-order capacity any element may declare. Bounded so that
/// atom adjacency can be stored inline.
inline constexpr int kMaxValence = 7;

struct ElementSpec {
  std::string symbol;
  int max_valence = 0;
};

/// Atom alphabet with bond-order capacities. Element ids are indices into
/// the table and are stable for the table's lifetime.
class ElementTable {
 public:
  ElementTable() = default;

  /// Throws ConfigError on duplicate symbols or out-of-range valences.
  explicit ElementTable(std::vector<ElementSpec> specs);

  /// C N O F P S Cl Br I B with conservative organic valences.
  static const ElementTable &standard();

  std::optional<ElementId> find(std::string_view symbol) const;

  /// Throws UnknownElement.
  ElementId require(std::string_view symbol) const;

  const ElementSpec &operator[](ElementId id) const { return specs_[id]; }
  const std::string &symbol(ElementId id) const { return specs_[id].symbol; }
  int max_valence(ElementId id) const { return specs_[id].max_valence; }

  /// Valence capacity after formal-charge adjustment. Pnictogens and
  /// chalcogens gain one bond per positive charge (N+, O+) and lose one per
  /// negative charge; boron gains one per negative charge; carbon and
  /// halogens lose one per unit of charge in either direction.
  int charged_capacity(ElementId id, int formal_charge) const;

  std::size_t size() const { return specs_.size(); }
  const std::vector<ElementSpec> &specs() const { return specs_; }

 private:
  std::vector<ElementSpec> specs_;
};

}  // namespace molgx
