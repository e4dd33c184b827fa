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

#include <string>
#include <vector>

#include "molgx/graph.hpp"

namespace molgx {

struct CanonicalForm {
  /// Byte string identifying the isomorphism class (element, charge, bond
  /// order respected). Only comparable between graphs sharing a table.
  std::string label;
  /// order[i] is the vertex placed at canonical position i.
  std::vector<VertexId> order;
  /// rank[v] is the canonical position of vertex v.
  std::vector<VertexId> rank;
};

/// Canonical form by colour refinement and individualisation.
///
/// Vertices are coloured by (element, charge, degree, incident bond orders)
/// and refined by the multiset of (neighbour colour, bond order) until
/// stable. While a non-singleton cell remains, each vertex of the first such
/// cell is individualised in turn and the smallest adjacency encoding over
/// all discrete leaves wins. Automorphisms found as equal leaves prune
/// branches within the pointwise stabiliser of the current path.
CanonicalForm canonical_form(const MolGraph &g);

std::string canonical_label(const MolGraph &g);

}  // namespace molgx
