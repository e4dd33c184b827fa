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

#include <numeric>
#include <random>

#include "molgx/canonical.hpp"
#include "molgx/isomorphism.hpp"
#include "molgx/smiles.hpp"

namespace molgx {
namespace {

int count_element(const MolGraph &g, const std::string &sym) {
  int n = 0;
  for (VertexId v = 0; v < g.num_atoms(); ++v) n += g.symbol(v) == sym;
  return n;
}

SmilesErrorKind error_kind(const std::string &smi) {
  try {
    parse_smiles(smi);
  } catch (const SmilesError &e) {
    EXPECT_LT(e.position(), smi.size()) << smi;
    return e.kind();
  }
  ADD_FAILURE() << "expected failure for " << smi;
  return SmilesErrorKind::UnexpectedChar;
}

TEST(ParseSmiles, Caffeine) {
  const MolGraph g = parse_smiles("CN1C=NC2=C1C(=O)N(C(=O)N2C)C");
  EXPECT_EQ(g.num_atoms(), 14u);
  EXPECT_EQ(count_element(g, "N"), 4);
  EXPECT_EQ(count_element(g, "O"), 2);
  EXPECT_EQ(count_element(g, "C"), 8);
  // 2 rings: bonds = atoms - 1 + 2
  EXPECT_EQ(g.num_bonds(), 15u);
}

TEST(ParseSmiles, SingleAtom) {
  const MolGraph g = parse_smiles("C");
  EXPECT_EQ(g.num_atoms(), 1u);
  EXPECT_EQ(g.num_bonds(), 0u);
}

TEST(ParseSmiles, Errors) {
  EXPECT_EQ(error_kind("C1CC"), SmilesErrorKind::UnclosedRing);
  EXPECT_EQ(error_kind("CC(C"), SmilesErrorKind::UnclosedBranch);
  EXPECT_EQ(error_kind("CC)C"), SmilesErrorKind::UnexpectedChar);
  EXPECT_EQ(error_kind("CC.O"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("C/C=C/C"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("C[C@H](O)N"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("[13CH4]"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("C*"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("[CH3:1]C"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("C(C)(C)(C)(C)C"), SmilesErrorKind::ValenceViolation);
  EXPECT_EQ(error_kind("O=O=O"), SmilesErrorKind::ValenceViolation);
  EXPECT_EQ(error_kind("c1cccc1"), SmilesErrorKind::KekulizationFailure);
  EXPECT_EQ(error_kind("Cx"), SmilesErrorKind::UnexpectedChar);
  EXPECT_EQ(error_kind("[CH2]"), SmilesErrorKind::UnsupportedFeature);
  EXPECT_EQ(error_kind("C%1"), SmilesErrorKind::UnexpectedChar);
}

TEST(ParseSmiles, ErrorPositions) {
  try {
    parse_smiles("CCC.C");
    FAIL();
  } catch (const SmilesError &e) {
    EXPECT_EQ(e.position(), 3u);
  }
  try {
    parse_smiles("CC1CC");
    FAIL();
  } catch (const SmilesError &e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(ParseSmiles, AromaticKekulization) {
  const MolGraph benzene = parse_smiles("c1ccccc1");
  int doubles = 0;
  for (const auto &b : benzene.bonds()) doubles += b.order == 2;
  EXPECT_EQ(doubles, 3);
  EXPECT_TRUE(is_isomorphic(benzene, parse_smiles("C1=CC=CC=C1")));
  EXPECT_TRUE(is_isomorphic(parse_smiles("c1ccncc1"),
                            parse_smiles("C1=CC=NC=C1")));
  EXPECT_TRUE(is_isomorphic(parse_smiles("c1cc[nH]c1"),
                            parse_smiles("C1=CNC=C1")));
  EXPECT_NO_THROW(parse_smiles("Cc1ccccc1-c1ccccc1"));
}

TEST(ParseSmiles, RingClosureForms) {
  EXPECT_TRUE(is_isomorphic(parse_smiles("C%10CC%10"), parse_smiles("C1CC1")));
  EXPECT_TRUE(is_isomorphic(parse_smiles("C=1CC1"), parse_smiles("C1CC=1")));
  EXPECT_EQ(parse_smiles("C1CC=1").bond_order(0, 2), 2);
}

TEST(ParseSmiles, BracketAtoms) {
  const MolGraph ammonium = parse_smiles("[NH4+]");
  EXPECT_EQ(ammonium.atom(0).formal_charge(), 1);
  EXPECT_EQ(parse_smiles("[O-]C").atom(0).formal_charge(), -1);
  EXPECT_EQ(parse_smiles("C[N++](C)(C)(C)C").atom(1).formal_charge(), 2);
  EXPECT_EQ(error_kind("[NH5+]"), SmilesErrorKind::ValenceViolation);
}

TEST(WriteSmiles, Canonical) {
  EXPECT_EQ(write_smiles(parse_smiles("OCC")), write_smiles(parse_smiles("CCO")));
  EXPECT_EQ(write_smiles(parse_smiles("C")), "C");
  EXPECT_EQ(write_smiles(parse_smiles("c1ccccc1")),
            write_smiles(parse_smiles("C1=CC=CC=C1")));
  // No lowercase aromatics in the output.
  const std::string out = write_smiles(parse_smiles("c1ccc2ccccc2c1"));
  for (char c : out) EXPECT_FALSE(c == 'c' || c == 'n');
}

TEST(WriteSmiles, RoundTripCorpus) {
  const std::vector<std::string> corpus = {
      "CN1C=NC2=C1C(=O)N(C(=O)N2C)C", "C12C3C4C1C5C2C3C45", "c1ccc2ccccc2c1",
      "C1CCC2(CC1)CCCC2", "[NH4+]", "C[N+](C)(C)C", "OC(=O)CC(O)=O",
      "C1CC2CCC1C2", "C#CC(=C=C)N", "C1C2C3C4C5C6C7C8C9C%10C%11C1C2C3C4C5C6C7C8C9C%10C%11",
      "FC(F)(F)C(Cl)(Br)I", "OB(O)O", "CP(C)C", "CSC",
  };
  for (const auto &smi : corpus) {
    const MolGraph g = parse_smiles(smi);
    const std::string w = write_smiles(g);
    const MolGraph back = parse_smiles(w);
    EXPECT_TRUE(is_isomorphic(back, g)) << smi << " -> " << w;
    EXPECT_EQ(write_smiles(back), w) << smi;
  }
}

TEST(WriteSmiles, PermutationInvariant) {
  std::mt19937 rng(11);
  const MolGraph g = parse_smiles("CN1C=NC2=C1C(=O)N(C(=O)N2C)C");
  const std::string w = write_smiles(g);
  std::vector<VertexId> perm(g.num_atoms());
  std::iota(perm.begin(), perm.end(), 0);
  for (int rep = 0; rep < 50; ++rep) {
    std::shuffle(perm.begin(), perm.end(), rng);
    ASSERT_EQ(write_smiles(g.permuted(perm)), w);
  }
}

}  // namespace
}  // namespace molgx
