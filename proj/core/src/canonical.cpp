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

#include "molgx/canonical.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>

namespace molgx {
namespace {

// Refinement signature: own colour followed by the sorted neighbour codes
// (colour * 4 + bond order), padded with a sentinel.
constexpr std::size_t kSigWidth = kMaxValence + 2;
using Signature = std::array<std::uint32_t, kSigWidth>;
constexpr std::uint32_t kPad = 0xFFFFFFFFu;
constexpr std::size_t kMaxStoredAutomorphisms = 64;

class Canonizer {
 public:
  explicit Canonizer(const MolGraph &g) : g_(g), n_(g.num_atoms()) {
    sig_.resize(n_);
    idx_.resize(n_);
  }

  CanonicalForm run() {
    CanonicalForm out;
    if (n_ == 0) {
      out.label = encode_header();
      return out;
    }
    std::vector<std::uint32_t> colors = initial_colors();
    refine(colors);
    std::vector<VertexId> path;
    search(colors, path);

    out.label = std::move(best_);
    out.order = std::move(best_order_);
    out.rank.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) out.rank[out.order[i]] = i;
    return out;
  }

 private:
  std::string encode_header() const {
    std::string s;
    s.push_back(static_cast<char>(n_ >> 8));
    s.push_back(static_cast<char>(n_ & 0xFF));
    return s;
  }

  std::vector<std::uint32_t> initial_colors() {
    // Key: element, charge, degree, sorted incident bond orders.
    for (std::size_t v = 0; v < n_; ++v) {
      const Atom &a = g_.atom(static_cast<VertexId>(v));
      Signature &s = sig_[v];
      s.fill(kPad);
      s[0] = (static_cast<std::uint32_t>(a.element()) << 16) |
             (static_cast<std::uint32_t>(a.formal_charge() + 128) << 8) |
             static_cast<std::uint32_t>(a.degree());
      std::size_t k = 1;
      for (const auto &nb : a.neighbors()) s[k++] = nb.order;
      std::sort(s.begin() + 1, s.begin() + k);
    }
    std::vector<std::uint32_t> colors(n_);
    assign_ranks(colors);
    return colors;
  }

  // colours[v] = number of vertices with a strictly smaller signature.
  // Returns the number of distinct colours.
  std::size_t assign_ranks(std::vector<std::uint32_t> &colors) {
    std::iota(idx_.begin(), idx_.end(), 0);
    std::sort(idx_.begin(), idx_.end(),
              [&](std::size_t a, std::size_t b) { return sig_[a] < sig_[b]; });
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == 0 || sig_[idx_[i]] != sig_[idx_[i - 1]]) {
        ++distinct;
        colors[idx_[i]] = static_cast<std::uint32_t>(i);
      } else {
        colors[idx_[i]] = colors[idx_[i - 1]];
      }
    }
    return distinct;
  }

  static std::size_t count_distinct(const std::vector<std::uint32_t> &colors,
                                    std::vector<char> &scratch) {
    scratch.assign(colors.size(), 0);
    std::size_t d = 0;
    for (auto c : colors) {
      if (!scratch[c]) {
        scratch[c] = 1;
        ++d;
      }
    }
    return d;
  }

  void refine(std::vector<std::uint32_t> &colors) {
    std::size_t distinct = count_distinct(colors, mark_);
    while (distinct < n_) {
      for (std::size_t v = 0; v < n_; ++v) {
        const Atom &a = g_.atom(static_cast<VertexId>(v));
        Signature &s = sig_[v];
        s.fill(kPad);
        s[0] = colors[v];
        std::size_t k = 1;
        for (const auto &nb : a.neighbors())
          s[k++] = colors[nb.vertex] * 4u + nb.order;
        std::sort(s.begin() + 1, s.begin() + k);
      }
      const std::size_t next = assign_ranks(colors);
      if (next == distinct) break;
      distinct = next;
    }
  }

  // First non-singleton cell: the smallest colour shared by >1 vertex.
  bool target_cell(const std::vector<std::uint32_t> &colors,
                   std::vector<VertexId> &cell) {
    counts_.assign(n_, 0);
    for (auto c : colors) ++counts_[c];
    for (std::size_t c = 0; c < n_; ++c) {
      if (counts_[c] > 1) {
        cell.clear();
        for (std::size_t v = 0; v < n_; ++v) {
          if (colors[v] == c) cell.push_back(static_cast<VertexId>(v));
        }
        return true;
      }
    }
    return false;
  }

  void encode_leaf(const std::vector<std::uint32_t> &colors,
                   std::string &out, std::vector<VertexId> &order) const {
    order.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) order[colors[v]] = v;
    out = encode_header();
    out.reserve(2 + n_ * 3 + g_.num_bonds() * 6);
    std::array<std::pair<std::uint32_t, std::uint8_t>, kMaxValence + 1> nbrs;
    for (std::size_t i = 0; i < n_; ++i) {
      const Atom &a = g_.atom(order[i]);
      out.push_back(static_cast<char>(a.element()));
      out.push_back(static_cast<char>(a.formal_charge()));
      std::size_t k = 0;
      for (const auto &nb : a.neighbors()) {
        const std::uint32_t pos = colors[nb.vertex];
        if (pos < i) nbrs[k++] = {pos, nb.order};
      }
      std::sort(nbrs.begin(), nbrs.begin() + k);
      out.push_back(static_cast<char>(k));
      for (std::size_t j = 0; j < k; ++j) {
        out.push_back(static_cast<char>(nbrs[j].first >> 8));
        out.push_back(static_cast<char>(nbrs[j].first & 0xFF));
        out.push_back(static_cast<char>(nbrs[j].second));
      }
    }
  }

  void search(std::vector<std::uint32_t> &colors, std::vector<VertexId> &path) {
    std::vector<VertexId> cell;
    if (!target_cell(colors, cell)) {
      encode_leaf(colors, leaf_, leaf_order_);
      if (best_order_.empty() ||
          std::lexicographical_compare(
              leaf_.begin(), leaf_.end(), best_.begin(), best_.end(),
              [](char a, char b) {
                return static_cast<unsigned char>(a) <
                       static_cast<unsigned char>(b);
              })) {
        best_ = leaf_;
        best_order_ = leaf_order_;
      } else if (leaf_ == best_ &&
                 automorphisms_.size() < kMaxStoredAutomorphisms) {
        std::vector<VertexId> gamma(n_);
        for (std::size_t i = 0; i < n_; ++i)
          gamma[best_order_[i]] = leaf_order_[i];
        automorphisms_.push_back(std::move(gamma));
      }
      return;
    }

    const std::uint32_t c = colors[cell.front()];
    std::vector<VertexId> tried;
    for (VertexId v : cell) {
      if (equivalent_to_tried(v, tried, path)) continue;
      tried.push_back(v);
      std::vector<std::uint32_t> child = colors;
      for (VertexId w : cell) child[w] = (w == v) ? c : c + 1;
      refine(child);
      path.push_back(v);
      search(child, path);
      path.pop_back();
    }
  }

  // v lies in the orbit of an already explored vertex under the group
  // generated by stored automorphisms that fix `path` pointwise.
  bool equivalent_to_tried(VertexId v, const std::vector<VertexId> &tried,
                           const std::vector<VertexId> &path) {
    if (tried.empty() || automorphisms_.empty()) return false;
    uf_.resize(n_);
    std::iota(uf_.begin(), uf_.end(), 0);
    auto find = [&](std::size_t x) {
      while (uf_[x] != x) x = uf_[x] = uf_[uf_[x]];
      return x;
    };
    bool any = false;
    for (const auto &gamma : automorphisms_) {
      bool fixes = true;
      for (VertexId p : path) {
        if (gamma[p] != p) {
          fixes = false;
          break;
        }
      }
      if (!fixes) continue;
      any = true;
      for (std::size_t x = 0; x < n_; ++x) {
        const std::size_t a = find(x), b = find(gamma[x]);
        if (a != b) uf_[a] = b;
      }
    }
    if (!any) return false;
    const std::size_t root = find(v);
    for (VertexId t : tried) {
      if (find(t) == root) return true;
    }
    return false;
  }

  const MolGraph &g_;
  std::size_t n_;
  std::vector<Signature> sig_;
  std::vector<std::size_t> idx_;
  std::vector<std::size_t> counts_;
  std::vector<char> mark_;
  std::vector<std::size_t> uf_;
  std::string leaf_;
  std::vector<VertexId> leaf_order_;
  std::string best_;
  std::vector<VertexId> best_order_;
  std::vector<std::vector<VertexId>> automorphisms_;
};

}  // namespace

CanonicalForm canonical_form(const MolGraph &g) { return Canonizer(g).run(); }

std::string canonical_label(const MolGraph &g) {
  return Canonizer(g).run().label;
}

}  // namespace molgx
