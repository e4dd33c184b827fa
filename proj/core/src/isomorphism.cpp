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

#include "molgx/isomorphism.hpp"

#include <algorithm>
#include <tuple>
#include <vector>

namespace molgx {
namespace {

auto atom_key(const Atom &a) {
  return std::make_tuple(a.element(), a.formal_charge(), a.degree(),
                         a.used_valence());
}

class Matcher {
 public:
  Matcher(const MolGraph &a, const MolGraph &b) : a_(a), b_(b) {
    const std::size_t n = a.num_atoms();
    map_.assign(n, kUnmapped);
    used_.assign(n, 0);
    // Visit a in BFS order so each new vertex usually has a mapped neighbour.
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s]) continue;
      seen[s] = 1;
      order_.push_back(static_cast<VertexId>(s));
      for (std::size_t head = order_.size() - 1; head < order_.size(); ++head) {
        for (const auto &nb : a.atom(order_[head]).neighbors()) {
          if (!seen[nb.vertex]) {
            seen[nb.vertex] = 1;
            order_.push_back(nb.vertex);
          }
        }
      }
    }
  }

  bool run() { return extend(0); }

 private:
  static constexpr VertexId kUnmapped = 0xFFFF;

  bool consistent(VertexId va, VertexId vb, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i) {
      const VertexId ua = order_[i];
      if (a_.bond_order(va, ua) != b_.bond_order(vb, map_[ua])) return false;
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const VertexId va = order_[depth];
    const auto key = atom_key(a_.atom(va));
    for (std::size_t vb = 0; vb < b_.num_atoms(); ++vb) {
      if (used_[vb]) continue;
      if (atom_key(b_.atom(static_cast<VertexId>(vb))) != key) continue;
      if (!consistent(va, static_cast<VertexId>(vb), depth)) continue;
      map_[va] = static_cast<VertexId>(vb);
      used_[vb] = 1;
      if (extend(depth + 1)) return true;
      used_[vb] = 0;
      map_[va] = kUnmapped;
    }
    return false;
  }

  const MolGraph &a_;
  const MolGraph &b_;
  std::vector<VertexId> order_;
  std::vector<VertexId> map_;
  std::vector<char> used_;
};

}  // namespace

bool is_isomorphic(const MolGraph &a, const MolGraph &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  std::vector<decltype(atom_key(Atom{}))> ka, kb;
  for (const auto &x : a.atoms()) ka.push_back(atom_key(x));
  for (const auto &x : b.atoms()) kb.push_back(atom_key(x));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  if (ka != kb) return false;
  return Matcher(a, b).run();
}

}  // namespace molgx
