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

#include "molgx/substructure.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "molgx/error.hpp"

namespace molgx {
namespace {

// Monomorphism search over fragment vertices in BFS order; every vertex
// after the first is attached to an earlier one, so candidates come from the
// neighbourhood of an already-mapped image vertex.
class Embedder {
 public:
  Embedder(const MolGraph &g, const MolGraph &f, VertexId root = 0)
      : g_(g), f_(f) {
    if (f.empty()) throw InvalidGraph("fragment must not be empty");
    const std::size_t n = f.num_atoms();
    std::vector<char> seen(n, 0);
    order_.push_back(root);
    anchor_.push_back(-1);
    seen[root] = 1;
    for (std::size_t h = 0; h < order_.size(); ++h) {
      for (const auto &nb : f.atom(order_[h]).neighbors()) {
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          order_.push_back(nb.vertex);
          anchor_.push_back(order_[h]);
        }
      }
    }
    if (order_.size() != n)
      throw InvalidGraph("fragment must be connected");
    map_.assign(n, 0);
    used_.assign(g.num_atoms(), 0);
  }

  /// Calls visit() for every monomorphism; stops when it returns false.
  template <typename Visit>
  void for_each(Visit &&visit, int first_image = -1) {
    stop_ = false;
    const Atom &fa = f_.atom(order_[0]);
    for (std::size_t v = 0; v < g_.num_atoms() && !stop_; ++v) {
      if (first_image >= 0 && static_cast<int>(v) != first_image) continue;
      if (!atom_ok(fa, g_.atom(static_cast<VertexId>(v)))) continue;
      map_[order_[0]] = static_cast<VertexId>(v);
      used_[v] = 1;
      extend(1, visit);
      used_[v] = 0;
    }
  }

  const std::vector<VertexId> &mapping() const { return map_; }
  std::size_t fragment_order(std::size_t i) const { return order_[i]; }

 private:
  static bool atom_ok(const Atom &fa, const Atom &ga) {
    return fa.element() == ga.element() &&
           fa.formal_charge() == ga.formal_charge() &&
           fa.degree() <= ga.degree() && fa.used_valence() <= ga.used_valence();
  }

  template <typename Visit>
  void extend(std::size_t depth, Visit &visit) {
    if (stop_) return;
    if (depth == order_.size()) {
      if (!visit(map_)) stop_ = true;
      return;
    }
    const VertexId fv = order_[depth];
    const VertexId parent_image = map_[anchor_[depth]];
    const Atom &fa = f_.atom(fv);
    for (const auto &nb : g_.atom(parent_image).neighbors()) {
      const VertexId gv = nb.vertex;
      if (used_[gv] || !atom_ok(fa, g_.atom(gv))) continue;
      // Every fragment edge to an already-mapped vertex must exist in g
      // with the same order.
      bool ok = true;
      for (const auto &fnb : fa.neighbors()) {
        if (!placed(fnb.vertex, depth)) continue;
        if (g_.bond_order(gv, map_[fnb.vertex]) != fnb.order) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map_[fv] = gv;
      used_[gv] = 1;
      extend(depth + 1, visit);
      used_[gv] = 0;
      if (stop_) return;
    }
  }

  bool placed(VertexId fv, std::size_t depth) const {
    for (std::size_t i = 0; i < depth; ++i) {
      if (order_[i] == fv) return true;
    }
    return false;
  }

  const MolGraph &g_;
  const MolGraph &f_;
  std::vector<VertexId> order_;
  std::vector<int> anchor_;
  std::vector<VertexId> map_;
  std::vector<char> used_;
  bool stop_ = false;
};

}  // namespace

std::size_t count_fragment(const MolGraph &g, const MolGraph &fragment) {
  if (fragment.num_atoms() > g.num_atoms() ||
      fragment.num_bonds() > g.num_bonds())
    return 0;
  Embedder emb(g, fragment);
  const auto fbonds = fragment.bonds();
  // Image key: sorted vertex images followed by sorted edge images.
  std::set<std::vector<std::uint32_t>> images;
  std::vector<std::uint32_t> key;
  emb.for_each([&](const std::vector<VertexId> &map) {
    key.clear();
    for (VertexId v : map) key.push_back(v);
    std::sort(key.begin(), key.end());
    const std::size_t nv = key.size();
    for (const auto &b : fbonds) {
      const std::uint32_t a = map[b.begin], c = map[b.end];
      key.push_back(std::min(a, c) << 16 | std::max(a, c));
    }
    std::sort(key.begin() + static_cast<std::ptrdiff_t>(nv), key.end());
    images.insert(key);
    return true;
  });
  return images.size();
}

bool contains_fragment(const MolGraph &g, const MolGraph &fragment) {
  if (fragment.num_atoms() > g.num_atoms() ||
      fragment.num_bonds() > g.num_bonds())
    return false;
  bool found = false;
  Embedder(g, fragment).for_each([&](const std::vector<VertexId> &) {
    found = true;
    return false;
  });
  return found;
}

bool contains_fragment_at(const MolGraph &g, const MolGraph &fragment,
                          VertexId anchor) {
  if (fragment.num_atoms() > g.num_atoms() ||
      fragment.num_bonds() > g.num_bonds())
    return false;
  bool found = false;
  for (std::size_t r = 0; r < fragment.num_atoms() && !found; ++r) {
    Embedder(g, fragment, static_cast<VertexId>(r))
        .for_each(
            [&](const std::vector<VertexId> &) {
              found = true;
              return false;
            },
            anchor);
  }
  return found;
}

}  // namespace molgx
