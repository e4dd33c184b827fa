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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "molgx/canonical.hpp"
#include "molgx/isomorphism.hpp"
#include "molgx/smiles.hpp"

namespace molgx {
namespace {

const std::vector<std::string> kCorpus = {
    "C", "CC", "C=C", "C#C", "CCO", "OCC", "CC=O", "C=CO", "CCC", "CC(C)C",
    "CC(C)(C)C", "CC(C)(C)C(C)(C)C", "C1CC1", "C1CCC1", "C1CCCCC1",
    "c1ccccc1", "c1ccc2ccccc2c1", "C12C3C4C1C5C2C3C45", "CN1C=NC2=C1C(=O)N(C(=O)N2C)C",
    "OC(=O)CC(O)=O", "NC(N)=N", "C=C=C", "C=C=N", "[NH4+]", "C[N+](C)(C)C",
    "C[O-]", "OCCN", "NCCO", "C1CC2CCC1C2", "C1CCC2(CC1)CCCC2", "FC(F)(F)Cl",
    "C1=CC=CC=C1C", "CC1=CC=CC=C1", "c1ccncc1", "c1ccoc1", "C1CC1C1CC1",
};

std::vector<VertexId> random_perm(std::size_t n, std::mt19937 &rng) {
  std::vector<VertexId> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

TEST(CanonicalLabel, OrderIndependent) {
  EXPECT_EQ(canonical_label(parse_smiles("CCO")),
            canonical_label(parse_smiles("OCC")));
  EXPECT_TRUE(is_isomorphic(parse_smiles("CCO"), parse_smiles("OCC")));
}

TEST(CanonicalLabel, BondOrderMatters) {
  EXPECT_NE(canonical_label(parse_smiles("CC=O")),
            canonical_label(parse_smiles("CCO")));
  EXPECT_FALSE(is_isomorphic(parse_smiles("CC=O"), parse_smiles("CCO")));
}

TEST(CanonicalLabel, ChargeMatters) {
  EXPECT_NE(canonical_label(parse_smiles("C[O-]")),
            canonical_label(parse_smiles("CO")));
  EXPECT_FALSE(is_isomorphic(parse_smiles("C[O-]"), parse_smiles("CO")));
}

TEST(CanonicalLabel, InvariantUnderRandomPermutation) {
  std::mt19937 rng(42);
  for (const auto &smi : kCorpus) {
    const MolGraph g = parse_smiles(smi);
    const std::string label = canonical_label(g);
    for (int rep = 0; rep < 25; ++rep) {
      const MolGraph h = g.permuted(random_perm(g.num_atoms(), rng));
      ASSERT_EQ(canonical_label(h), label) << smi;
      ASSERT_TRUE(is_isomorphic(g, h)) << smi;
    }
  }
}

TEST(CanonicalLabel, AgreesWithMatcherOnCorpus) {
  std::vector<MolGraph> graphs;
  for (const auto &smi : kCorpus) graphs.push_back(parse_smiles(smi));
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = 0; j < graphs.size(); ++j) {
      const bool same_label =
          canonical_label(graphs[i]) == canonical_label(graphs[j]);
      ASSERT_EQ(same_label, is_isomorphic(graphs[i], graphs[j]))
          << kCorpus[i] << " vs " << kCorpus[j];
    }
  }
}

// All graphs reachable by up to five random augmentations from small seeds:
// label equality must coincide with the backtracking matcher.
TEST(CanonicalLabel, AgreesWithMatcherOnRandomAugmentations) {
  std::mt19937 rng(3);
  const std::vector<std::string> elems = {"C", "N", "O"};
  std::vector<MolGraph> graphs;
  for (int trial = 0; trial < 300; ++trial) {
    MolGraph g = parse_smiles(trial % 3 == 0 ? "C1CC1" : "C");
    for (int step = 0; step < 5; ++step) {
      const VertexId v = static_cast<VertexId>(rng() % g.num_atoms());
      const int order = 1 + static_cast<int>(rng() % 2);
      try {
        g = add_atom_bond(g, v, elems[rng() % elems.size()], order);
      } catch (const Error &) {
      }
    }
    graphs.push_back(g.permuted(random_perm(g.num_atoms(), rng)));
  }
  std::vector<std::string> labels;
  for (const auto &g : graphs) labels.push_back(canonical_label(g));
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    for (std::size_t j = i + 1; j < graphs.size(); ++j) {
      ASSERT_EQ(labels[i] == labels[j], is_isomorphic(graphs[i], graphs[j]));
    }
  }
}

TEST(CanonicalForm, OrderIsAPermutation) {
  const MolGraph g = parse_smiles("CN1C=NC2=C1C(=O)N(C(=O)N2C)C");
  const CanonicalForm cf = canonical_form(g);
  ASSERT_EQ(cf.order.size(), g.num_atoms());
  std::vector<VertexId> sorted = cf.order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
  for (std::size_t i = 0; i < cf.order.size(); ++i)
    EXPECT_EQ(cf.rank[cf.order[i]], i);
  // Relabelling by the canonical order is a fixed point.
  const MolGraph relabelled = g.permuted(cf.order);
  EXPECT_EQ(canonical_form(relabelled).label, cf.label);
}

TEST(IsIsomorphic, SizeMismatch) {
  EXPECT_FALSE(is_isomorphic(parse_smiles("CC"), parse_smiles("CCC")));
  EXPECT_FALSE(is_isomorphic(parse_smiles("C1CC1"), parse_smiles("CCC")));
}

}  // namespace
}  // namespace molgx
