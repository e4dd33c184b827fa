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

#include "molgx/features.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>

#include "molgx/canonical.hpp"
#include "molgx/error.hpp"
#include "molgx/rings.hpp"
#include "molgx/smiles.hpp"

namespace molgx {
namespace {

int atom_key(const Atom &a) {
  return static_cast<int>(a.element()) << 8 | (a.formal_charge() + 128);
}

std::tuple<int, int, int> edge_key(const MolGraph &g, VertexId u, VertexId v,
                                   int order) {
  int a = atom_key(g.atom(u)), b = atom_key(g.atom(v));
  if (a > b) std::swap(a, b);
  return {a, b, order};
}

const char *family_tag(FamilyKind k) {
  switch (k) {
    case FamilyKind::AtomCount: return "atom";
    case FamilyKind::RingCount: return "ring";
    case FamilyKind::AromaticRingCount: return "aromatic_ring";
    case FamilyKind::EdgeSubgraph: return "edge";
  }
  return "?";
}

FamilyKind family_from_tag(const std::string &tag) {
  if (tag == "atom") return FamilyKind::AtomCount;
  if (tag == "ring") return FamilyKind::RingCount;
  if (tag == "aromatic_ring") return FamilyKind::AromaticRingCount;
  if (tag == "edge") return FamilyKind::EdgeSubgraph;
  throw ConfigError("unknown pattern family tag '" + tag + "'");
}

// Graph induced by a set of edges (vertices renumbered in first-seen order).
MolGraph edge_subgraph(const MolGraph &g, const std::vector<Bond> &bonds,
                       const std::vector<int> &subset) {
  MolGraph f(g.table());
  std::vector<int> remap(g.num_atoms(), -1);
  auto vertex = [&](VertexId v) {
    if (remap[v] < 0)
      remap[v] = f.add_atom(g.element(v), g.atom(v).formal_charge());
    return static_cast<VertexId>(remap[v]);
  };
  for (int e : subset) {
    const Bond &b = bonds[e];
    const VertexId a = vertex(b.begin);
    const VertexId c = vertex(b.end);
    f.add_bond(a, c, b.order);
  }
  return f;
}

MolGraph atom_fragment(const MolGraph &g, VertexId v) {
  MolGraph f(g.table());
  f.add_atom(g.element(v), g.atom(v).formal_charge());
  return f;
}

// Every connected edge subset with 2..max_edges edges, each exactly once.
// Extension-based enumeration: grow subsets only by edges with a larger id
// than the seed edge, deduplicated by the sorted edge set.
template <typename Visit>
void for_each_connected_edge_subset(const MolGraph &g,
                                    const std::vector<Bond> &bonds,
                                    int max_edges, Visit &&visit) {
  if (max_edges < 2) return;
  const std::size_t m = bonds.size();
  std::vector<std::vector<int>> incident(g.num_atoms());
  for (std::size_t e = 0; e < m; ++e) {
    incident[bonds[e].begin].push_back(static_cast<int>(e));
    incident[bonds[e].end].push_back(static_cast<int>(e));
  }
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  for (std::size_t e = 0; e < m; ++e) frontier.push_back({static_cast<int>(e)});
  for (int size = 2; size <= max_edges; ++size) {
    std::vector<std::vector<int>> next;
    for (const auto &subset : frontier) {
      std::set<int> candidates;
      for (int e : subset) {
        for (VertexId end : {bonds[e].begin, bonds[e].end}) {
          for (int f : incident[end]) {
            if (!std::binary_search(subset.begin(), subset.end(), f))
              candidates.insert(f);
          }
        }
      }
      for (int f : candidates) {
        std::vector<int> grown = subset;
        grown.insert(std::upper_bound(grown.begin(), grown.end(), f), f);
        if (seen.insert(grown).second) {
          visit(grown);
          next.push_back(std::move(grown));
        }
      }
    }
    frontier = std::move(next);
  }
}

std::string ring_key(int size) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", size);
  return buf;
}

}  // namespace

std::string to_string(const FeatureFamily &f) {
  switch (f.kind) {
    case FamilyKind::AtomCount: return "atoms";
    case FamilyKind::RingCount: return "rings";
    case FamilyKind::AromaticRingCount: return "aromatic_rings";
    case FamilyKind::EdgeSubgraph: return "edges:" + std::to_string(f.max_edges);
  }
  return "?";
}

FeatureFamily parse_family(const std::string &text) {
  if (text == "atoms") return FeatureFamily::atoms();
  if (text == "rings") return FeatureFamily::rings();
  if (text == "aromatic_rings") return FeatureFamily::aromatic_rings();
  if (text == "edges") return FeatureFamily::edges(1);
  if (text.rfind("edges:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(text.substr(6));
    } catch (const std::exception &) {
      k = 0;
    }
    if (k < 1) throw ConfigError("edges:<k> needs k >= 1, got '" + text + "'");
    return FeatureFamily::edges(k);
  }
  throw ConfigError("unknown feature family '" + text + "'");
}

std::vector<FeatureFamily> default_families() {
  return {FeatureFamily::atoms(), FeatureFamily::rings(),
          FeatureFamily::aromatic_rings(), FeatureFamily::edges(1)};
}

FeatureSchema::FeatureSchema(std::vector<FeatureFamily> families,
                             std::vector<Pattern> patterns)
    : families_(std::move(families)), patterns_(std::move(patterns)) {
  for (const auto &f : families_) {
    if (f.kind == FamilyKind::EdgeSubgraph && f.max_edges < 1)
      throw ConfigError("edge subgraph family needs max_edges >= 1");
  }
  index();
}

void FeatureSchema::index() {
  by_key_.clear();
  atom_index_.clear();
  edge1_index_.clear();
  edge_label_index_.clear();
  ring_index_.clear();
  aromatic_index_.clear();
  max_edges_ = 0;
  for (const auto &f : families_) {
    if (f.kind == FamilyKind::EdgeSubgraph)
      max_edges_ = std::max(max_edges_, f.max_edges);
  }
  for (std::size_t i = 0; i < patterns_.size(); ++i) {
    const Pattern &p = patterns_[i];
    const int idx = static_cast<int>(i);
    if (!by_key_.emplace(std::pair{p.family, p.key}, idx).second)
      throw ConfigError("duplicate pattern " + p.key);
    switch (p.family) {
      case FamilyKind::AtomCount:
        atom_index_[atom_key(p.fragment.atom(0))] = idx;
        break;
      case FamilyKind::RingCount:
        ring_index_[p.ring_size] = idx;
        break;
      case FamilyKind::AromaticRingCount:
        aromatic_index_[p.ring_size] = idx;
        break;
      case FamilyKind::EdgeSubgraph:
        if (p.fragment.num_bonds() == 1) {
          edge1_index_[edge_key(p.fragment, 0, 1, p.fragment.bond_order(0, 1))] =
              idx;
        } else {
          edge_label_index_[canonical_label(p.fragment)] = idx;
        }
        break;
    }
  }
}

int FeatureSchema::find(FamilyKind family, const std::string &key) const {
  const auto it = by_key_.find({family, key});
  return it == by_key_.end() ? -1 : it->second;
}

std::string FeatureSchema::column_name(std::size_t i) const {
  const Pattern &p = patterns_.at(i);
  switch (p.family) {
    case FamilyKind::RingCount:
    case FamilyKind::AromaticRingCount:
      return std::string(family_tag(p.family)) + ":" +
             std::to_string(p.ring_size);
    default:
      return std::string(family_tag(p.family)) + ":" + p.key;
  }
}

std::vector<std::pair<std::string, std::string>> FeatureSchema::tagged_keys()
    const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto &p : patterns_) out.emplace_back(family_tag(p.family), p.key);
  return out;
}

FeatureSchema FeatureSchema::from_tags(
    std::vector<FeatureFamily> families,
    const std::vector<std::pair<std::string, std::string>> &tagged_keys) {
  std::vector<Pattern> patterns;
  for (const auto &[tag, key] : tagged_keys) {
    Pattern p;
    p.family = family_from_tag(tag);
    p.key = key;
    if (p.family == FamilyKind::RingCount ||
        p.family == FamilyKind::AromaticRingCount) {
      p.ring_size = std::stoi(key);
    } else {
      p.fragment = parse_smiles(key);
    }
    patterns.push_back(std::move(p));
  }
  return FeatureSchema(std::move(families), std::move(patterns));
}

std::string FeatureSchema::identity() const {
  // FNV-1a over the sorted tagged keys.
  auto keys = tagged_keys();
  std::sort(keys.begin(), keys.end());
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string &s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xFF;
    h *= 1099511628211ull;
  };
  for (const auto &[t, k] : keys) {
    mix(t);
    mix(k);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FeatureSchema build_schema(std::span<const MolGraph> molecules,
                           const std::vector<FeatureFamily> &families) {
  if (molecules.empty())
    throw EmptyDataset("cannot build a feature schema from no molecules");
  std::vector<Pattern> patterns;
  for (const auto &family : families) {
    std::map<std::string, Pattern> found;  // key -> pattern, sorted
    for (const auto &g : molecules) {
      switch (family.kind) {
        case FamilyKind::AtomCount:
          for (VertexId v = 0; v < g.num_atoms(); ++v) {
            MolGraph f = atom_fragment(g, v);
            std::string key = write_smiles(f);
            if (!found.count(key))
              found.emplace(key, Pattern{family.kind, key, std::move(f), 0});
          }
          break;
        case FamilyKind::RingCount:
        case FamilyKind::AromaticRingCount:
          for (const auto &ring : perceive_rings(g)) {
            if (family.kind == FamilyKind::AromaticRingCount && !ring.aromatic)
              continue;
            const int size = static_cast<int>(ring.size());
            found.emplace(ring_key(size),
                          Pattern{family.kind, ring_key(size), MolGraph{}, size});
          }
          break;
        case FamilyKind::EdgeSubgraph: {
          const auto bonds = g.bonds();
          auto add = [&](const std::vector<int> &subset) {
            MolGraph f = edge_subgraph(g, bonds, subset);
            std::string key = write_smiles(f);
            if (!found.count(key))
              found.emplace(key, Pattern{family.kind, key, std::move(f), 0});
          };
          for (std::size_t e = 0; e < bonds.size(); ++e)
            add({static_cast<int>(e)});
          for_each_connected_edge_subset(g, bonds, family.max_edges, add);
          break;
        }
      }
    }
    for (auto &[key, p] : found) {
      // A family listed twice contributes once.
      bool dup = false;
      for (const auto &q : patterns) {
        if (q.family == p.family && q.key == p.key) dup = true;
      }
      if (!dup) patterns.push_back(std::move(p));
    }
  }
  return FeatureSchema(families, std::move(patterns));
}

FeatureSchema build_schema(const Dataset &train,
                           const std::vector<FeatureFamily> &families) {
  const auto graphs = train.graphs();
  return build_schema(std::span<const MolGraph>(graphs), families);
}

FeatureVector encode(const MolGraph &g, const FeatureSchema &schema) {
  FeatureVector x(schema.dimension(), 0.0);
  if (!schema.atom_index_.empty()) {
    for (const auto &a : g.atoms()) {
      const auto it = schema.atom_index_.find(atom_key(a));
      if (it != schema.atom_index_.end()) x[it->second] += 1.0;
    }
  }
  if ((!schema.ring_index_.empty() || !schema.aromatic_index_.empty()) &&
      g.num_bonds() >= g.num_atoms()) {
    for (const auto &ring : perceive_rings(g)) {
      const int size = static_cast<int>(ring.size());
      if (auto it = schema.ring_index_.find(size); it != schema.ring_index_.end())
        x[it->second] += 1.0;
      if (ring.aromatic) {
        if (auto it = schema.aromatic_index_.find(size);
            it != schema.aromatic_index_.end())
          x[it->second] += 1.0;
      }
    }
  }
  if (schema.max_edges_ >= 1) {
    for (VertexId u = 0; u < g.num_atoms(); ++u) {
      for (const auto &nb : g.atom(u).neighbors()) {
        if (nb.vertex < u) continue;
        const auto it = schema.edge1_index_.find(edge_key(g, u, nb.vertex, nb.order));
        if (it != schema.edge1_index_.end()) x[it->second] += 1.0;
      }
    }
    if (schema.max_edges_ >= 2 && !schema.edge_label_index_.empty()) {
      const auto bonds = g.bonds();
      for_each_connected_edge_subset(
          g, bonds, schema.max_edges_, [&](const std::vector<int> &subset) {
            const auto it = schema.edge_label_index_.find(
                canonical_label(edge_subgraph(g, bonds, subset)));
            if (it != schema.edge_label_index_.end()) x[it->second] += 1.0;
          });
    }
  }
  return x;
}

}  // namespace molgx
