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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "molgx/error.hpp"
#include "molgx/graph.hpp"

namespace molgx {

class FileError : public Error {
 public:
  using Error::Error;
};

class HeaderMissing : public Error {
 public:
  using Error::Error;
};

class TooManyRejects : public Error {
 public:
  using Error::Error;
};

class UnknownProperty : public Error {
 public:
  using Error::Error;
};

struct Record {
  std::string smiles;
  MolGraph graph;
  /// One value per Dataset::properties entry.
  std::vector<double> values;
};

class Dataset {
 public:
  std::string name;
  std::vector<std::string> properties;
  /// Unit annotations (metadata only, never converted).
  std::map<std::string, std::string> units;
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  /// Throws UnknownProperty.
  std::size_t property_index(const std::string &property) const;
  std::vector<double> column(const std::string &property) const;
  std::vector<MolGraph> graphs() const;

  /// Same schema, no records.
  Dataset empty_like() const;
};

struct Reject {
  std::size_t row = 0;  // 1-based data row (header excluded)
  std::string smiles;
  std::string error;
  std::size_t position = 0;
};

struct LoadOptions {
  std::string smiles_column = "smiles";
  /// Empty: every column except the SMILES column.
  std::vector<std::string> property_columns;
  double max_reject_fraction = 0.10;
  bool allow_duplicates = false;
  /// Writes `<input>.rejects.csv` when any row is rejected.
  bool write_rejects_file = true;
};

struct LoadResult {
  Dataset dataset;
  std::vector<Reject> rejects;
};

/// Reads a header-first CSV. Header cells may carry a unit suffix in
/// brackets, e.g. `E_HOMO [Hartree]`. Rows whose SMILES fails to parse, whose
/// values are missing or non-numeric, or whose structure duplicates an
/// earlier row are rejected; more than `max_reject_fraction` rejects throws
/// TooManyRejects after the rejects file is written.
LoadResult load_csv(const std::filesystem::path &path,
                    const LoadOptions &options = {});

void save_csv(const Dataset &d, const std::filesystem::path &path);

void write_rejects(const std::vector<Reject> &rejects,
                   const std::filesystem::path &path);

enum class SplitStrategy { Stratified, Random };

/// Partition into (train, test). Stratified sorts by `property` (ties by
/// row order) and alternates train/test; random shuffles with `seed` and
/// puts the first ceil(n * train_fraction) rows in train.
std::pair<Dataset, Dataset> split(const Dataset &d, SplitStrategy strategy,
                                  std::uint64_t seed,
                                  const std::string &property = {},
                                  double train_fraction = 0.5);

struct Histogram {
  double low = 0.0;
  double high = 0.0;
  std::vector<std::size_t> counts;
};

struct Summary {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  /// Population standard deviation.
  double stddev = 0.0;
  Histogram histogram;
};

inline constexpr std::size_t kHistogramBins = 20;

Summary summarize(const Dataset &d, const std::string &property);

}  // namespace molgx
