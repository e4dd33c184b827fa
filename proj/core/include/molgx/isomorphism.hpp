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

#include "molgx/graph.hpp"

namespace molgx {

/// Backtracking vertex matcher that preserves element, charge and bond
/// order. Shares no code with canonical_form, so each can check the other.
bool is_isomorphic(const MolGraph &a, const MolGraph &b);

}  // namespace molgx
