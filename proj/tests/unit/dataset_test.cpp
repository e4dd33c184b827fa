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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "molgx/dataset.hpp"

namespace molgx {
namespace {

namespace fs = std::filesystem;

class DatasetTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("molgx_ds_" + std::to_string(::testing::UnitTest::GetInstance()
                                             ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string &name, const std::string &body) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << body;
    return p;
  }

  fs::path dir_;
};

Dataset make(std::vector<double> values) {
  Dataset d;
  d.properties = {"y"};
  for (std::size_t i = 0; i < values.size(); ++i)
    d.records.push_back({std::string(i + 1, 'C'), MolGraph(), {values[i]}});
  return d;
}

TEST_F(DatasetTest, LoadsUnitsAndValues) {
  const auto p = write("a.csv",
                       "smiles,E_HOMO [Hartree],mu\n"
                       "CCO,-0.25,1.5\n"
                       "c1ccccc1,-0.24,0\n");
  const auto r = load_csv(p);
  EXPECT_TRUE(r.rejects.empty());
  ASSERT_EQ(r.dataset.size(), 2u);
  EXPECT_EQ(r.dataset.properties, (std::vector<std::string>{"E_HOMO", "mu"}));
  EXPECT_EQ(r.dataset.units.at("E_HOMO"), "Hartree");
  EXPECT_EQ(r.dataset.column("E_HOMO"), (std::vector<double>{-0.25, -0.24}));
  EXPECT_EQ(r.dataset.records[1].graph.num_atoms(), 6u);
  EXPECT_FALSE(fs::exists(p.string() + ".rejects.csv"));
}

TEST_F(DatasetTest, RejectsAreRecordedWithKinds) {
  std::string body = "smiles,y\n";
  for (int i = 1; i <= 20; ++i) body += std::string(i, 'C') + "," + std::to_string(i) + "\n";
  body += "C(C,1\n";  // unclosed branch
  body += "CC,2\n";   // duplicate of row 2
  const auto p = write("b.csv", body);
  const auto r = load_csv(p);
  EXPECT_EQ(r.dataset.size(), 20u);
  ASSERT_EQ(r.rejects.size(), 2u);
  EXPECT_EQ(r.rejects[0].error, "UnclosedBranch");
  EXPECT_EQ(r.rejects[0].row, 21u);
  EXPECT_EQ(r.rejects[1].error, "Duplicate");
  EXPECT_TRUE(fs::exists(p.string() + ".rejects.csv"));
}

TEST_F(DatasetTest, TooManyRejectsStillWritesFile) {
  const auto p = write("c.csv", "smiles,y\nCC,1\nC*,2\nCCC,x\nCCCC,\n");
  EXPECT_THROW(load_csv(p), TooManyRejects);
  std::ifstream in(p.string() + ".rejects.csv");
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(all.find("UnsupportedFeature"), std::string::npos);
  EXPECT_NE(all.find("NonNumeric"), std::string::npos);
  EXPECT_NE(all.find("MissingValue"), std::string::npos);
}

TEST_F(DatasetTest, HeaderAndFileErrors) {
  EXPECT_THROW(load_csv(dir_ / "missing.csv"), FileError);
  EXPECT_THROW(load_csv(write("e.csv", "")), HeaderMissing);
  EXPECT_THROW(load_csv(write("f.csv", "smi,y\nC,1\n")), HeaderMissing);
}

TEST_F(DatasetTest, SaveLoadRoundTrip) {
  Dataset d = make({0.1, -1e-300, 3.14159265358979});
  d.units["y"] = "eV";
  const auto p = dir_ / "rt.csv";
  save_csv(d, p);
  const auto back = load_csv(p).dataset;
  EXPECT_EQ(back.column("y"), d.column("y"));
  EXPECT_EQ(back.units.at("y"), "eV");
}

TEST(Split, StratifiedAlternates) {
  const auto [train, test] = split(make({1, 2, 3, 4}), SplitStrategy::Stratified, 0, "y");
  EXPECT_EQ(train.column("y"), (std::vector<double>{1, 3}));
  EXPECT_EQ(test.column("y"), (std::vector<double>{2, 4}));
}

TEST(Split, RandomIsSeededPartition) {
  std::vector<double> v(11);
  for (int i = 0; i < 11; ++i) v[i] = i;
  const Dataset d = make(v);
  const auto [a1, b1] = split(d, SplitStrategy::Random, 42);
  const auto [a2, b2] = split(d, SplitStrategy::Random, 42);
  EXPECT_EQ(a1.column("y"), a2.column("y"));
  EXPECT_EQ(a1.size(), 6u);
  EXPECT_EQ(b1.size(), 5u);
  std::multiset<double> all;
  for (double x : a1.column("y")) all.insert(x);
  for (double x : b1.column("y")) all.insert(x);
  EXPECT_EQ(all, std::multiset<double>(v.begin(), v.end()));
  EXPECT_THROW(split(make({1}), SplitStrategy::Random, 1), EmptyDataset);
}

TEST(Summary, MomentsAndHistogram) {
  const auto s = summarize(make({1, 2, 3, 4}), "y");
  EXPECT_EQ(s.count, 4u);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.stddev, std::sqrt(1.25));
  std::size_t total = 0;
  for (auto c : s.histogram.counts) total += c;
  EXPECT_EQ(total, 4u);
  EXPECT_EQ(s.histogram.counts.back(), 1u);
  EXPECT_THROW(summarize(make({1}), "z"), UnknownProperty);
}

}  // namespace
}  // namespace molgx
