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

#include <vector>

#include "molgx/graph.hpp"

namespace molgx {

struct Ring {
  /// Members in cycle order.
  std::vector<VertexId> atoms;
  bool aromatic = false;

  std::size_t size() const { return atoms.size(); }
};

/// Smallest set of smallest rings (a minimum cycle basis over GF(2), built
/// from Horton candidate cycles), each flagged for aromaticity.
///
/// Aromaticity is a kekulé-pattern proxy rather than Hückel counting: a ring
/// of 5 or 6 members drawn from C, N, O, S is aromatic when every member
/// carries a double bond to a ring atom, except that a 5-ring may have
/// exactly one N, O or S member without any double bond (pyrrole-type lone
/// pair donor).
std::vector<Ring> perceive_rings(const MolGraph &g);

}  // namespace molgx
