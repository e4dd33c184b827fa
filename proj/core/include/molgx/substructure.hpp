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

#include "molgx/graph.hpp"

namespace molgx {

/// Number of distinct images (vertex set + edge set) of `fragment` in `g`
/// under subgraph monomorphism. Elements, charges and exact bond orders
/// must match; hydrogens are ignored. Counting images rather than
/// automorphism-deflated embeddings makes the count monotone under
/// augmentation of g.
std::size_t count_fragment(const MolGraph &g, const MolGraph &fragment);

/// True when at least one image exists. Cheaper than count_fragment.
bool contains_fragment(const MolGraph &g, const MolGraph &fragment);

/// True when an image exists that uses vertex `anchor` of g.
bool contains_fragment_at(const MolGraph &g, const MolGraph &fragment,
                          VertexId anchor);

}  // namespace molgx
