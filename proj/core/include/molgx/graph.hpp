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

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "molgx/element.hpp"

namespace molgx {

using VertexId = std::uint16_t;

struct Neighbor {
  VertexId vertex;
  std::uint8_t order;
};

/// A heavy atom. Adjacency is stored inline; the capacity is bounded by
/// kMaxValence since every bond consumes at least one unit of valence.
class Atom {
 public:
  Atom() = default;
  Atom(ElementId element, int formal_charge)
      : element_(element), charge_(static_cast<std::int8_t>(formal_charge)) {}

  ElementId element() const { return element_; }
  int formal_charge() const { return charge_; }
  int degree() const { return degree_; }
  int used_valence() const { return used_valence_; }

  std::span<const Neighbor> neighbors() const {
    return {neighbors_.data(), degree_};
  }

 private:
  friend class MolGraph;

  ElementId element_ = 0;
  std::int8_t charge_ = 0;
  std::uint8_t degree_ = 0;
  std::uint8_t used_valence_ = 0;
  std::array<Neighbor, kMaxValence + 1> neighbors_{};
};

struct Bond {
  VertexId begin;
  VertexId end;
  int order;

  friend bool operator==(const Bond &, const Bond &) = default;
};

/// Connected-or-under-construction simple molecular graph over heavy atoms.
///
/// Hydrogens are implicit: every atom's unused valence is filled with H.
/// Mutating members enforce the valence and simple-graph invariants but not
/// connectivity, so builders (the SMILES parser) can assemble a graph
/// piecewise; `is_connected()` is checked by the callers that require it.
class MolGraph {
 public:
  explicit MolGraph(const ElementTable &table = ElementTable::standard())
      : table_(&table) {}

  static MolGraph single_atom(ElementId element, int formal_charge = 0,
                              const ElementTable &table =
                                  ElementTable::standard());

  const ElementTable &table() const { return *table_; }

  std::size_t num_atoms() const { return atoms_.size(); }
  std::size_t num_bonds() const { return num_bonds_; }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(VertexId v) const { return atoms_[v]; }
  std::span<const Atom> atoms() const { return atoms_; }

  ElementId element(VertexId v) const { return atoms_[v].element(); }
  const std::string &symbol(VertexId v) const {
    return table_->symbol(atoms_[v].element());
  }

  /// Bond order between u and v, 0 when they are not bonded.
  int bond_order(VertexId u, VertexId v) const;

  /// Remaining bond-order capacity of v. Throws InvalidGraph on a bad id.
  int free_valence(VertexId v) const;

  /// Implicit hydrogens on v (same as free_valence).
  int implicit_hydrogens(VertexId v) const { return free_valence(v); }

  int total_free_valence() const;

  /// Bonds with begin < end, ordered by (begin, end).
  std::vector<Bond> bonds() const;

  /// Throws ValenceExceeded when the charged capacity is below zero.
  VertexId add_atom(ElementId element, int formal_charge = 0);

  /// Throws InvalidGraph on self-loops, duplicate bonds or bad orders and
  /// ValenceExceeded when either endpoint would overflow.
  void add_bond(VertexId u, VertexId v, int order);

  /// Changes the order of an existing bond, with valence checks.
  void set_bond_order(VertexId u, VertexId v, int order);

  /// Copy of this graph with vertex v and its bonds removed. Vertices above
  /// v shift down by one.
  MolGraph without_atom(VertexId v) const;

  /// Copy with vertices renumbered so that new vertex i is old perm[i].
  MolGraph permuted(std::span<const VertexId> perm) const;

  bool is_connected() const;

  /// Articulation-point-free vertices: removing any of them leaves the
  /// graph connected. For a single atom this is empty.
  std::vector<VertexId> non_cut_vertices() const;

 private:
  void check_vertex(VertexId v) const;

  const ElementTable *table_;
  std::vector<Atom> atoms_;
  std::size_t num_bonds_ = 0;
};

/// Returns `g` augmented with a new atom of `element` attached to v by a
/// bond of the given order. The input is left unchanged.
MolGraph add_atom_bond(const MolGraph &g, VertexId v, ElementId element,
                       int order);
MolGraph add_atom_bond(const MolGraph &g, VertexId v, std::string_view element,
                       int order);

/// Remaining valence of v.
int free_valence(const MolGraph &g, VertexId v);

}  // namespace molgx
