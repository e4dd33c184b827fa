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

#include "molgx/smiles.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "molgx/canonical.hpp"

namespace molgx {

std::string_view to_string(SmilesErrorKind kind) {
  switch (kind) {
    case SmilesErrorKind::UnexpectedChar: return "UnexpectedChar";
    case SmilesErrorKind::UnclosedRing: return "UnclosedRing";
    case SmilesErrorKind::UnclosedBranch: return "UnclosedBranch";
    case SmilesErrorKind::UnsupportedFeature: return "UnsupportedFeature";
    case SmilesErrorKind::ValenceViolation: return "ValenceViolation";
    case SmilesErrorKind::Disconnected: return "Disconnected";
    case SmilesErrorKind::KekulizationFailure: return "KekulizationFailure";
  }
  return "Unknown";
}

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t position,
                         const std::string &detail)
    : Error(std::string(to_string(kind)) + " at position " +
            std::to_string(position) + ": " + detail),
      kind_(kind),
      position_(position) {}

namespace {

constexpr std::array<std::string_view, 10> kOrganicSubset = {
    "B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"};

bool is_organic(std::string_view sym) {
  return std::find(kOrganicSubset.begin(), kOrganicSubset.end(), sym) !=
         kOrganicSubset.end();
}

struct ParsedAtom {
  ElementId element;
  int charge = 0;
  int hydrogens = -1;  // explicit H count for bracket atoms
  bool aromatic = false;
  std::size_t position = 0;
};

struct ParsedBond {
  VertexId a, b;
  int order;  // 0 = aromatic, resolved by kekulization
  std::size_t position;
};

struct RingOpen {
  VertexId atom;
  int order;  // -1 = unspecified
  std::size_t position;
};

class Parser {
 public:
  Parser(std::string_view text, const ElementTable &table)
      : s_(text), table_(table) {}

  MolGraph run() {
    if (s_.empty())
      fail(SmilesErrorKind::UnexpectedChar, 0, "empty SMILES");
    std::optional<VertexId> prev;
    int pending = -1;
    std::size_t pending_pos = 0;
    std::vector<std::pair<VertexId, std::size_t>> branches;

    while (i_ < s_.size()) {
      const char c = s_[i_];
      const std::size_t here = i_;
      switch (c) {
        case '-':
        case '=':
        case '#':
          if (pending >= 0)
            fail(SmilesErrorKind::UnexpectedChar, here, "two bond symbols");
          pending = c == '-' ? 1 : c == '=' ? 2 : 3;
          pending_pos = here;
          ++i_;
          continue;
        case '/':
        case '\\':
          fail(SmilesErrorKind::UnsupportedFeature, here,
               "directional bonds are not supported");
        case '$':
        case ':':
          fail(SmilesErrorKind::UnsupportedFeature, here,
               std::string("bond symbol '") + c + "' is not supported");
        case '.':
          fail(SmilesErrorKind::UnsupportedFeature, here,
               "disconnected structures are not supported");
        case '*':
          fail(SmilesErrorKind::UnsupportedFeature, here,
               "wildcard atoms are not supported");
        case '(':
          if (!prev)
            fail(SmilesErrorKind::UnexpectedChar, here,
                 "branch before any atom");
          if (pending >= 0)
            fail(SmilesErrorKind::UnexpectedChar, here,
                 "bond symbol before branch");
          branches.push_back({*prev, here});
          ++i_;
          continue;
        case ')':
          if (branches.empty())
            fail(SmilesErrorKind::UnexpectedChar, here, "unmatched ')'");
          if (pending >= 0)
            fail(SmilesErrorKind::UnexpectedChar, pending_pos,
                 "dangling bond symbol");
          prev = branches.back().first;
          branches.pop_back();
          ++i_;
          continue;
        default:
          break;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (!prev)
          fail(SmilesErrorKind::UnexpectedChar, here,
               "ring closure before any atom");
        const int digit = read_ring_number();
        ring_bond(*prev, digit, pending, here);
        pending = -1;
        continue;
      }
      const VertexId atom = read_atom();
      if (prev) {
        add_chain_bond(*prev, atom, pending, pending >= 0 ? pending_pos : here);
      } else if (pending >= 0) {
        fail(SmilesErrorKind::UnexpectedChar, pending_pos,
             "bond symbol before first atom");
      }
      pending = -1;
      prev = atom;
    }
    if (pending >= 0)
      fail(SmilesErrorKind::UnexpectedChar, pending_pos,
           "dangling bond symbol");
    if (!branches.empty())
      fail(SmilesErrorKind::UnclosedBranch, branches.back().second,
           "branch never closed");
    if (!rings_.empty()) {
      const auto &open = rings_.begin()->second;
      fail(SmilesErrorKind::UnclosedRing, open.position,
           "ring bond " + std::to_string(rings_.begin()->first) +
               " never closed");
    }
    return build();
  }

 private:
  [[noreturn]] void fail(SmilesErrorKind kind, std::size_t pos,
                         const std::string &detail) const {
    throw SmilesError(kind, std::min(pos, s_.empty() ? 0 : s_.size() - 1),
                      detail);
  }

  int read_ring_number() {
    if (s_[i_] == '%') {
      if (i_ + 2 >= s_.size() ||
          !std::isdigit(static_cast<unsigned char>(s_[i_ + 1])) ||
          !std::isdigit(static_cast<unsigned char>(s_[i_ + 2])))
        fail(SmilesErrorKind::UnexpectedChar, i_,
             "'%' must be followed by two digits");
      const int d = (s_[i_ + 1] - '0') * 10 + (s_[i_ + 2] - '0');
      i_ += 3;
      return d;
    }
    return s_[i_++] - '0';
  }

  void ring_bond(VertexId atom, int digit, int order, std::size_t pos) {
    auto it = rings_.find(digit);
    if (it == rings_.end()) {
      rings_.emplace(digit, RingOpen{atom, order, pos});
      return;
    }
    const RingOpen open = it->second;
    rings_.erase(it);
    if (open.atom == atom)
      fail(SmilesErrorKind::ValenceViolation, pos, "ring bond to itself");
    if (open.order >= 0 && order >= 0 && open.order != order)
      fail(SmilesErrorKind::UnexpectedChar, pos,
           "conflicting ring bond symbols");
    const int o = order >= 0 ? order : open.order;
    add_chain_bond(open.atom, atom, o, pos);
  }

  void add_chain_bond(VertexId a, VertexId b, int order, std::size_t pos) {
    for (const auto &bond : bonds_) {
      if ((bond.a == a && bond.b == b) || (bond.a == b && bond.b == a))
        fail(SmilesErrorKind::ValenceViolation, pos, "duplicate bond");
    }
    if (order < 0)
      order = (atoms_[a].aromatic && atoms_[b].aromatic) ? 0 : 1;
    bonds_.push_back({a, b, order, pos});
  }

  VertexId read_atom() {
    const std::size_t start = i_;
    ParsedAtom atom;
    atom.position = start;
    if (s_[i_] == '[') {
      read_bracket(atom);
    } else {
      std::string sym;
      if (s_.compare(i_, 2, "Cl") == 0 || s_.compare(i_, 2, "Br") == 0) {
        sym = std::string(s_.substr(i_, 2));
        i_ += 2;
      } else {
        const char c = s_[i_];
        switch (c) {
          case 'B': case 'C': case 'N': case 'O': case 'P': case 'S':
          case 'F': case 'I':
            sym = std::string(1, c);
            break;
          case 'b': case 'c': case 'n': case 'o': case 'p': case 's':
            sym = std::string(1, static_cast<char>(std::toupper(c)));
            atom.aromatic = true;
            break;
          default:
            fail(SmilesErrorKind::UnexpectedChar, start,
                 std::string("unexpected character '") + c + "'");
        }
        ++i_;
      }
      auto id = table_.find(sym);
      if (!id)
        fail(SmilesErrorKind::UnsupportedFeature, start,
             "element " + sym + " not in element table");
      atom.element = *id;
    }
    if (atoms_.size() >= 0xFFFF)
      fail(SmilesErrorKind::UnsupportedFeature, start, "too many atoms");
    atoms_.push_back(atom);
    return static_cast<VertexId>(atoms_.size() - 1);
  }

  void read_bracket(ParsedAtom &atom) {
    const std::size_t open = i_++;
    auto at_end = [&] { return i_ >= s_.size(); };
    if (at_end())
      fail(SmilesErrorKind::UnexpectedChar, open, "unterminated bracket atom");
    if (std::isdigit(static_cast<unsigned char>(s_[i_])))
      fail(SmilesErrorKind::UnsupportedFeature, i_,
           "isotopes are not supported");
    std::string sym;
    const std::size_t sym_pos = i_;
    if (std::islower(static_cast<unsigned char>(s_[i_]))) {
      const char c = s_[i_];
      if (c != 'b' && c != 'c' && c != 'n' && c != 'o' && c != 'p' && c != 's')
        fail(SmilesErrorKind::UnsupportedFeature, i_,
             std::string("aromatic symbol '") + c + "' is not supported");
      sym = std::string(1, static_cast<char>(std::toupper(c)));
      atom.aromatic = true;
      ++i_;
    } else if (std::isupper(static_cast<unsigned char>(s_[i_]))) {
      sym.push_back(s_[i_++]);
      if (!at_end() && std::islower(static_cast<unsigned char>(s_[i_])))
        sym.push_back(s_[i_++]);
    } else if (s_[i_] == '*') {
      fail(SmilesErrorKind::UnsupportedFeature, i_,
           "wildcard atoms are not supported");
    } else {
      fail(SmilesErrorKind::UnexpectedChar, i_, "expected element symbol");
    }
    auto id = table_.find(sym);
    if (!id)
      fail(SmilesErrorKind::UnsupportedFeature, sym_pos,
           "element " + sym + " not in element table");
    atom.element = *id;

    if (!at_end() && s_[i_] == '@')
      fail(SmilesErrorKind::UnsupportedFeature, i_,
           "stereochemistry is not supported");
    atom.hydrogens = 0;
    if (!at_end() && s_[i_] == 'H') {
      ++i_;
      atom.hydrogens = 1;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        atom.hydrogens = s_[i_++] - '0';
    }
    if (!at_end() && (s_[i_] == '+' || s_[i_] == '-')) {
      const char sign = s_[i_++];
      int magnitude = 1;
      if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        magnitude = s_[i_++] - '0';
      } else {
        while (!at_end() && s_[i_] == sign) {
          ++magnitude;
          ++i_;
        }
      }
      atom.charge = sign == '+' ? magnitude : -magnitude;
    }
    if (!at_end() && s_[i_] == ':')
      fail(SmilesErrorKind::UnsupportedFeature, i_,
           "atom classes are not supported");
    if (at_end() || s_[i_] != ']')
      fail(SmilesErrorKind::UnexpectedChar, at_end() ? open : i_,
           "expected ']'");
    ++i_;
  }

  MolGraph build() {
    MolGraph g(table_);
    for (const auto &a : atoms_) {
      try {
        g.add_atom(a.element, a.charge);
      } catch (const ValenceExceeded &e) {
        fail(SmilesErrorKind::ValenceViolation, a.position, e.what());
      }
    }
    for (const auto &b : bonds_) {
      try {
        g.add_bond(b.a, b.b, b.order == 0 ? 1 : b.order);
      } catch (const ValenceExceeded &) {
        fail(SmilesErrorKind::ValenceViolation, b.position,
             "bond exceeds valence of " + g.symbol(b.a) + " or " +
                 g.symbol(b.b));
      }
    }
    kekulize(g);
    for (std::size_t v = 0; v < atoms_.size(); ++v) {
      const auto &a = atoms_[v];
      if (a.hydrogens < 0) continue;
      const int free = g.free_valence(static_cast<VertexId>(v));
      if (a.hydrogens > free)
        fail(SmilesErrorKind::ValenceViolation, a.position,
             "explicit hydrogens exceed valence");
      if (a.hydrogens < free)
        fail(SmilesErrorKind::UnsupportedFeature, a.position,
             "radicals (hydrogen count below valence) are not supported");
    }
    if (!g.is_connected())
      fail(SmilesErrorKind::Disconnected, 0, "graph is not connected");
    return g;
  }

  // Assign double bonds over the aromatic bonds so that every aromatic atom
  // with spare valence gets exactly one. Backtracking perfect matching.
  void kekulize(MolGraph &g) {
    const std::size_t n = atoms_.size();
    std::vector<char> needs(n, 0);
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!atoms_[v].aromatic) continue;
      any = true;
      int spare = g.free_valence(static_cast<VertexId>(v));
      if (atoms_[v].hydrogens > 0) spare -= atoms_[v].hydrogens;
      needs[v] = spare >= 1;
    }
    if (!any) return;
    std::vector<std::vector<VertexId>> adj(n);
    for (const auto &b : bonds_) {
      if (b.order != 0) continue;
      if (needs[b.a] && needs[b.b]) {
        adj[b.a].push_back(b.b);
        adj[b.b].push_back(b.a);
      }
    }
    std::vector<int> mate(n, -1);
    if (!match(needs, adj, mate)) {
      std::size_t pos = 0;
      for (std::size_t v = 0; v < n; ++v) {
        if (needs[v]) {
          pos = atoms_[v].position;
          break;
        }
      }
      fail(SmilesErrorKind::KekulizationFailure, pos,
           "no alternating single/double bond assignment exists");
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (mate[v] > static_cast<int>(v)) {
        try {
          g.set_bond_order(static_cast<VertexId>(v),
                           static_cast<VertexId>(mate[v]), 2);
        } catch (const ValenceExceeded &) {
          fail(SmilesErrorKind::KekulizationFailure, atoms_[v].position,
               "double bond exceeds valence");
        }
      }
    }
  }

  static bool match(const std::vector<char> &needs,
                    const std::vector<std::vector<VertexId>> &adj,
                    std::vector<int> &mate) {
    // Most constrained unmatched atom first.
    int pick = -1;
    std::size_t best = SIZE_MAX;
    for (std::size_t v = 0; v < needs.size(); ++v) {
      if (!needs[v] || mate[v] >= 0) continue;
      std::size_t options = 0;
      for (VertexId w : adj[v]) options += mate[w] < 0;
      if (options < best) {
        best = options;
        pick = static_cast<int>(v);
      }
    }
    if (pick < 0) return true;
    if (best == 0) return false;
    for (VertexId w : adj[pick]) {
      if (mate[w] >= 0) continue;
      mate[pick] = w;
      mate[w] = pick;
      if (match(needs, adj, mate)) return true;
      mate[pick] = mate[w] = -1;
    }
    return false;
  }

  std::string_view s_;
  const ElementTable &table_;
  std::size_t i_ = 0;
  std::vector<ParsedAtom> atoms_;
  std::vector<ParsedBond> bonds_;
  std::map<int, RingOpen> rings_;
};

std::string_view bond_symbol(int order) {
  switch (order) {
    case 2: return "=";
    case 3: return "#";
    default: return "";
  }
}

class Writer {
 public:
  explicit Writer(const MolGraph &g) : g_(g), cf_(canonical_form(g)) {}

  std::string run() {
    const std::size_t n = g_.num_atoms();
    if (n == 0) return {};
    visited_.assign(n, 0);
    parent_.assign(n, -1);
    children_.assign(n, {});
    closures_.assign(n, {});
    discover(cf_.order[0]);
    emit(cf_.order[0]);
    return out_;
  }

 private:
  std::vector<VertexId> sorted_neighbors(VertexId v) const {
    std::vector<VertexId> nbrs;
    for (const auto &nb : g_.atom(v).neighbors()) nbrs.push_back(nb.vertex);
    std::sort(nbrs.begin(), nbrs.end(), [&](VertexId a, VertexId b) {
      return cf_.rank[a] < cf_.rank[b];
    });
    return nbrs;
  }

  void discover(VertexId root) {
    // Iterative DFS in canonical neighbour order; non-tree edges become ring
    // closures, recorded on both endpoints in discovery order.
    struct Frame {
      VertexId v;
      std::vector<VertexId> nbrs;
      std::size_t next = 0;
    };
    std::vector<Frame> stack;
    visited_[root] = 1;
    stack.push_back({root, sorted_neighbors(root)});
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next == f.nbrs.size()) {
        stack.pop_back();
        continue;
      }
      const VertexId w = f.nbrs[f.next++];
      const VertexId v = f.v;
      if (parent_[v] >= 0 && w == parent_[v]) continue;
      if (!visited_[w]) {
        visited_[w] = 1;
        parent_[w] = v;
        children_[v].push_back(w);
        stack.push_back({w, sorted_neighbors(w)});
      } else if (!closure_recorded(v, w)) {
        // w is an ancestor still on the stack: it opens, v closes.
        closures_[w].push_back({v, true});
        closures_[v].push_back({w, false});
      }
    }
  }

  bool closure_recorded(VertexId a, VertexId b) const {
    for (const auto &c : closures_[a]) {
      if (c.partner == b) return true;
    }
    return false;
  }

  void write_atom(VertexId v) {
    const Atom &a = g_.atom(v);
    const std::string &sym = g_.symbol(v);
    if (a.formal_charge() == 0 && is_organic(sym)) {
      out_ += sym;
      return;
    }
    out_ += '[';
    out_ += sym;
    const int h = g_.free_valence(v);
    if (h > 0) {
      out_ += 'H';
      if (h > 1) out_ += std::to_string(h);
    }
    const int q = a.formal_charge();
    if (q != 0) {
      out_ += q > 0 ? '+' : '-';
      if (std::abs(q) > 1) out_ += std::to_string(std::abs(q));
    }
    out_ += ']';
  }

  int take_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!digit_used_[d]) {
        digit_used_[d] = true;
        return d;
      }
    }
    return 0;
  }

  void write_digit(int d) {
    if (d < 10) {
      out_ += static_cast<char>('0' + d);
    } else {
      out_ += '%';
      out_ += std::to_string(d);
    }
  }

  void emit(VertexId root) {
    struct Frame {
      VertexId v;
      std::size_t next_child = 0;
    };
    std::vector<Frame> stack;
    auto open_atom = [&](VertexId v) {
      write_atom(v);
      // Closing digits first (their openers are already written), then
      // new openings in canonical partner order.
      for (const auto &c : closures_[v]) {
        if (c.opens) continue;
        const int d = open_digits_.at({c.partner, v});
        write_digit(d);
        digit_used_[d] = false;
      }
      for (const auto &c : closures_[v]) {
        if (!c.opens) continue;
        const int d = take_digit();
        open_digits_[{v, c.partner}] = d;
        out_ += bond_symbol(g_.bond_order(v, c.partner));
        write_digit(d);
      }
    };
    open_atom(root);
    stack.push_back({root});
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &kids = children_[f.v];
      if (f.next_child == kids.size()) {
        stack.pop_back();
        if (!stack.empty()) {
          const Frame &p = stack.back();
          // The branch we just left was parenthesised unless it was the
          // parent's last child.
          if (p.next_child < children_[p.v].size()) out_ += ')';
        }
        continue;
      }
      const VertexId child = kids[f.next_child++];
      const bool last = f.next_child == kids.size();
      if (!last) out_ += '(';
      out_ += bond_symbol(g_.bond_order(f.v, child));
      open_atom(child);
      stack.push_back({child});
    }
  }

  struct Closure {
    VertexId partner;
    bool opens;
  };

  const MolGraph &g_;
  CanonicalForm cf_;
  std::vector<char> visited_;
  std::vector<int> parent_;
  std::vector<std::vector<VertexId>> children_;
  std::vector<std::vector<Closure>> closures_;
  std::map<std::pair<VertexId, VertexId>, int> open_digits_;
  std::array<bool, 100> digit_used_{};
  std::string out_;
};

}  // namespace

MolGraph parse_smiles(std::string_view text, const ElementTable &table) {
  return Parser(text, table).run();
}

std::string write_smiles(const MolGraph &g) { return Writer(g).run(); }

}  // namespace molgx
