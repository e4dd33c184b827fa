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

#include "molgx/rings.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>

namespace molgx {
namespace {

using EdgeSet = std::vector<std::uint64_t>;

struct Candidate {
  EdgeSet edges;
  std::vector<VertexId> atoms;  // cycle order
};

std::size_t count_components(const MolGraph &g) {
  std::vector<char> seen(g.num_atoms(), 0);
  std::size_t comps = 0;
  std::vector<VertexId> stack;
  for (std::size_t s = 0; s < g.num_atoms(); ++s) {
    if (seen[s]) continue;
    ++comps;
    seen[s] = 1;
    stack.push_back(static_cast<VertexId>(s));
    while (!stack.empty()) {
      const VertexId u = stack.back();
      stack.pop_back();
      for (const auto &nb : g.atom(u).neighbors()) {
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = 1;
          stack.push_back(nb.vertex);
        }
      }
    }
  }
  return comps;
}

bool aromatic_pattern(const MolGraph &g, const std::vector<VertexId> &members,
                      const std::vector<char> &in_ring) {
  if (members.size() != 5 && members.size() != 6) return false;
  int without_double = 0;
  VertexId donor = 0;
  for (VertexId v : members) {
    const std::string &sym = g.symbol(v);
    if (sym != "C" && sym != "N" && sym != "O" && sym != "S") return false;
    bool ring_double = false;
    bool any_double = false;
    for (const auto &nb : g.atom(v).neighbors()) {
      if (nb.order == 2) {
        any_double = true;
        if (in_ring[nb.vertex]) ring_double = true;
      }
    }
    if (!ring_double) {
      ++without_double;
      donor = v;
      if (any_double) return false;
    }
  }
  if (without_double == 0) return members.size() == 6;
  if (without_double == 1 && members.size() == 5) {
    const std::string &sym = g.symbol(donor);
    return sym == "N" || sym == "O" || sym == "S";
  }
  return false;
}

}  // namespace

std::vector<Ring> perceive_rings(const MolGraph &g) {
  const std::size_t n = g.num_atoms();
  const std::size_t m = g.num_bonds();
  std::vector<Ring> rings;
  if (n == 0) return rings;
  const std::size_t cyclomatic = m + count_components(g) - n;
  if (cyclomatic == 0) return rings;

  // Edge ids.
  std::map<std::pair<VertexId, VertexId>, std::size_t> edge_id;
  for (const auto &b : g.bonds()) edge_id.emplace(std::pair{b.begin, b.end},
                                                  edge_id.size());
  auto eid = [&](VertexId a, VertexId b) {
    return edge_id.at(a < b ? std::pair{a, b} : std::pair{b, a});
  };
  const std::size_t words = (m + 63) / 64;

  // Horton candidates: for every root r and edge (x, y), the cycle
  // P(r, x) + (x, y) + P(y, r) when the two shortest paths share only r.
  std::vector<Candidate> candidates;
  std::set<EdgeSet> seen;
  std::vector<int> parent(n), dist(n);
  for (std::size_t r = 0; r < n; ++r) {
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<VertexId> queue{static_cast<VertexId>(r)};
    dist[r] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const VertexId u = queue[h];
      for (const auto &nb : g.atom(u).neighbors()) {
        if (dist[nb.vertex] < 0) {
          dist[nb.vertex] = dist[u] + 1;
          parent[nb.vertex] = u;
          queue.push_back(nb.vertex);
        }
      }
    }
    auto path_to_root = [&](VertexId v) {
      std::vector<VertexId> p{v};
      while (p.back() != r) p.push_back(static_cast<VertexId>(parent[p.back()]));
      return p;
    };
    for (const auto &b : g.bonds()) {
      if (dist[b.begin] < 0 || dist[b.end] < 0) continue;
      if (parent[b.begin] == b.end || parent[b.end] == b.begin) continue;
      auto px = path_to_root(b.begin);
      auto py = path_to_root(b.end);
      std::set<VertexId> sx(px.begin(), px.end() - 1);
      bool disjoint = true;
      for (std::size_t i = 0; i + 1 < py.size(); ++i) {
        if (sx.count(py[i])) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      // Cycle order: r ... x, y ... (back to r).
      std::vector<VertexId> cycle(px.rbegin(), px.rend());
      for (std::size_t i = 0; i + 1 < py.size(); ++i) cycle.push_back(py[i]);
      EdgeSet es(words, 0);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const std::size_t e = eid(cycle[i], cycle[(i + 1) % cycle.size()]);
        es[e / 64] |= std::uint64_t{1} << (e % 64);
      }
      if (seen.insert(es).second) candidates.push_back({es, std::move(cycle)});
    }
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate &a, const Candidate &b) {
                     if (a.atoms.size() != b.atoms.size())
                       return a.atoms.size() < b.atoms.size();
                     return a.edges < b.edges;
                   });

  // Greedy GF(2) independence test, smallest first.
  std::vector<EdgeSet> basis;
  std::vector<std::size_t> pivots;
  std::vector<const Candidate *> chosen;
  for (const auto &c : candidates) {
    if (chosen.size() == cyclomatic) break;
    EdgeSet v = c.edges;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const std::size_t p = pivots[i];
      if (v[p / 64] >> (p % 64) & 1u) {
        for (std::size_t w = 0; w < words; ++w) v[w] ^= basis[i][w];
      }
    }
    std::size_t pivot = m;
    for (std::size_t e = 0; e < m; ++e) {
      if (v[e / 64] >> (e % 64) & 1u) {
        pivot = e;
        break;
      }
    }
    if (pivot == m) continue;
    // Keep the basis reduced on the new pivot.
    for (auto &row : basis) {
      if (row[pivot / 64] >> (pivot % 64) & 1u) {
        for (std::size_t w = 0; w < words; ++w) row[w] ^= v[w];
      }
    }
    basis.push_back(std::move(v));
    pivots.push_back(pivot);
    chosen.push_back(&c);
  }

  std::vector<char> in_ring(n, 0);
  for (const auto *c : chosen) {
    for (VertexId v : c->atoms) in_ring[v] = 1;
  }
  for (const auto *c : chosen) {
    Ring ring;
    ring.atoms = c->atoms;
    ring.aromatic = aromatic_pattern(g, ring.atoms, in_ring);
    rings.push_back(std::move(ring));
  }
  return rings;
}

}  // namespace molgx
