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
#include <string>
#include <string_view>

#include "molgx/error.hpp"
#include "molgx/graph.hpp"

namespace molgx {

enum class SmilesErrorKind {
  UnexpectedChar,
  UnclosedRing,
  UnclosedBranch,
  UnsupportedFeature,
  ValenceViolation,
  Disconnected,
  KekulizationFailure,
};

std::string_view to_string(SmilesErrorKind kind);

class SmilesError : public Error {
 public:
  SmilesError(SmilesErrorKind kind, std::size_t position,
               const std::string &detail);

  SmilesErrorKind kind() const { return kind_; }
  /// Character offset into the input.
  std::size_t position() const { return position_; }

 private:
  SmilesErrorKind kind_;
  std::size_t position_;
};

/// Parses the supported SMILES subset: organic-subset atoms, bracket atoms
/// with H count and charge, bonds `- = #`, branches, ring closures `1-9` and
/// `%nn`, and lowercase aromatic atoms (kekulized on input). Stereo marks,
/// isotopes, atom classes, wildcards and dot-disconnected input are rejected
/// with the offending offset.
MolGraph parse_smiles(std::string_view text,
                      const ElementTable &table = ElementTable::standard());

/// Canonical kekulé SMILES. Atom order follows canonical_form, so
/// isomorphic graphs produce identical strings.
std::string write_smiles(const MolGraph &g);

}  // namespace molgx
