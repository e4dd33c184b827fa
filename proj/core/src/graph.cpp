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

#include "molgx/graph.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "molgx/error.hpp"

namespace molgx {

MolGraph MolGraph::single_atom(ElementId element, int formal_charge,
                               const ElementTable &table) {
  MolGraph g(table);
  g.add_atom(element, formal_charge);
  return g;
}

void MolGraph::check_vertex(VertexId v) const {
  if (v >= atoms_.size())
    throw InvalidGraph("vertex " + std::to_string(v) + " out of range");
}

int MolGraph::bond_order(VertexId u, VertexId v) const {
  for (const auto &n : atoms_[u].neighbors()) {
    if (n.vertex == v) return n.order;
  }
  return 0;
}

int MolGraph::free_valence(VertexId v) const {
  check_vertex(v);
  const Atom &a = atoms_[v];
  return table_->charged_capacity(a.element(), a.formal_charge()) -
         a.used_valence();
}

int MolGraph::total_free_valence() const {
  int total = 0;
  for (std::size_t v = 0; v < atoms_.size(); ++v)
    total += free_valence(static_cast<VertexId>(v));
  return total;
}

std::vector<Bond> MolGraph::bonds() const {
  std::vector<Bond> out;
  out.reserve(num_bonds_);
  for (std::size_t u = 0; u < atoms_.size(); ++u) {
    for (const auto &n : atoms_[u].neighbors()) {
      if (n.vertex > u)
        out.push_back({static_cast<VertexId>(u), n.vertex, n.order});
    }
  }
  std::sort(out.begin(), out.end(), [](const Bond &a, const Bond &b) {
    return std::tie(a.begin, a.end) < std::tie(b.begin, b.end);
  });
  return out;
}

VertexId MolGraph::add_atom(ElementId element, int formal_charge) {
  if (element >= table_->size())
    throw UnknownElement("element id " + std::to_string(element) +
                         " not in table");
  if (atoms_.size() >= 0xFFFF)
    throw InvalidGraph("too many atoms");
  if (table_->charged_capacity(element, formal_charge) < 0)
    throw ValenceExceeded("charge " + std::to_string(formal_charge) +
                          " leaves no valence on " + table_->symbol(element));
  atoms_.emplace_back(element, formal_charge);
  return static_cast<VertexId>(atoms_.size() - 1);
}

void MolGraph::add_bond(VertexId u, VertexId v, int order) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw InvalidGraph("self-loop on vertex " + std::to_string(u));
  if (order < 1 || order > 3)
    throw InvalidGraph("bond order " + std::to_string(order) +
                       " not in {1,2,3}");
  if (bond_order(u, v) != 0)
    throw InvalidGraph("duplicate bond " + std::to_string(u) + "-" +
                       std::to_string(v));
  if (free_valence(u) < order || free_valence(v) < order)
    throw ValenceExceeded("bond " + std::to_string(u) + "-" +
                          std::to_string(v) + " of order " +
                          std::to_string(order) + " exceeds valence");
  auto link = [order](Atom &a, VertexId other) {
    a.neighbors_[a.degree_++] = {other, static_cast<std::uint8_t>(order)};
    a.used_valence_ = static_cast<std::uint8_t>(a.used_valence_ + order);
  };
  link(atoms_[u], v);
  link(atoms_[v], u);
  ++num_bonds_;
}

void MolGraph::set_bond_order(VertexId u, VertexId v, int order) {
  check_vertex(u);
  check_vertex(v);
  const int old = bond_order(u, v);
  if (old == 0) throw InvalidGraph("no bond to update");
  if (order < 1 || order > 3)
    throw InvalidGraph("bond order " + std::to_string(order) +
                       " not in {1,2,3}");
  const int delta = order - old;
  if (free_valence(u) < delta || free_valence(v) < delta)
    throw ValenceExceeded("bond order change exceeds valence");
  auto update = [&](Atom &a, VertexId other) {
    for (int i = 0; i < a.degree_; ++i) {
      if (a.neighbors_[i].vertex == other)
        a.neighbors_[i].order = static_cast<std::uint8_t>(order);
    }
    a.used_valence_ = static_cast<std::uint8_t>(a.used_valence_ + delta);
  };
  update(atoms_[u], v);
  update(atoms_[v], u);
}

MolGraph MolGraph::without_atom(VertexId v) const {
  check_vertex(v);
  MolGraph out(*table_);
  out.atoms_.reserve(atoms_.size() - 1);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (i == v) continue;
    Atom a(atoms_[i].element(), atoms_[i].formal_charge());
    for (const auto &n : atoms_[i].neighbors()) {
      if (n.vertex == v) continue;
      const auto shifted =
          static_cast<VertexId>(n.vertex > v ? n.vertex - 1 : n.vertex);
      a.neighbors_[a.degree_++] = {shifted, n.order};
      a.used_valence_ = static_cast<std::uint8_t>(a.used_valence_ + n.order);
    }
    out.atoms_.push_back(a);
  }
  out.num_bonds_ = num_bonds_ - atoms_[v].degree();
  return out;
}

MolGraph MolGraph::permuted(std::span<const VertexId> perm) const {
  if (perm.size() != atoms_.size())
    throw InvalidGraph("permutation size mismatch");
  std::vector<VertexId> inverse(atoms_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
  MolGraph out(*table_);
  out.atoms_.reserve(atoms_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const Atom &src = atoms_[perm[i]];
    Atom a = src;
    for (int k = 0; k < a.degree_; ++k)
      a.neighbors_[k].vertex = inverse[src.neighbors_[k].vertex];
    out.atoms_.push_back(a);
  }
  out.num_bonds_ = num_bonds_;
  return out;
}

bool MolGraph::is_connected() const {
  if (atoms_.empty()) return true;
  std::vector<char> seen(atoms_.size(), 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (const auto &n : atoms_[u].neighbors()) {
      if (!seen[n.vertex]) {
        seen[n.vertex] = 1;
        ++reached;
        stack.push_back(n.vertex);
      }
    }
  }
  return reached == atoms_.size();
}

std::vector<VertexId> MolGraph::non_cut_vertices() const {
  const std::size_t n = atoms_.size();
  std::vector<VertexId> out;
  if (n < 2) return out;
  if (num_bonds_ + 1 == n) {
    // Trees: exactly the leaves.
    for (std::size_t v = 0; v < n; ++v) {
      if (atoms_[v].degree() == 1) out.push_back(static_cast<VertexId>(v));
    }
    return out;
  }
  // Tarjan articulation points, iterative.
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> cut(n, 0);
  int timer = 0;
  struct Frame {
    VertexId v;
    int parent;
    int next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    int root_children = 0;
    stack.push_back({static_cast<VertexId>(root), -1, 0});
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      const Atom &a = atoms_[f.v];
      if (f.next < a.degree()) {
        const VertexId w = a.neighbors()[f.next++].vertex;
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          if (f.parent < 0) ++root_children;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const VertexId v = f.v;
        const int parent = f.parent;
        stack.pop_back();
        if (parent >= 0) {
          low[parent] = std::min(low[parent], low[v]);
          if (stack.back().parent >= 0 && low[v] >= disc[parent])
            cut[parent] = 1;
        }
      }
    }
    if (root_children > 1) cut[root] = 1;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!cut[v]) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

MolGraph add_atom_bond(const MolGraph &g, VertexId v, ElementId element,
                       int order) {
  if (v >= g.num_atoms())
    throw InvalidGraph("vertex " + std::to_string(v) + " out of range");
  if (element >= g.table().size())
    throw UnknownElement("element id not in table");
  if (order < 1 || order > 3)
    throw InvalidGraph("bond order " + std::to_string(order) +
                       " not in {1,2,3}");
  if (g.free_valence(v) < order)
    throw ValenceExceeded("vertex " + std::to_string(v) + " has free valence " +
                          std::to_string(g.free_valence(v)) +
                          ", bond order " + std::to_string(order));
  if (g.table().max_valence(element) < order)
    throw ValenceExceeded(g.table().symbol(element) +
                          " cannot carry a bond of order " +
                          std::to_string(order));
  MolGraph out = g;
  const VertexId a = out.add_atom(element);
  out.add_bond(v, a, order);
  return out;
}

MolGraph add_atom_bond(const MolGraph &g, VertexId v, std::string_view element,
                       int order) {
  return add_atom_bond(g, v, g.table().require(element), order);
}

int free_valence(const MolGraph &g, VertexId v) { return g.free_valence(v); }

}  // namespace molgx
