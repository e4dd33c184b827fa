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

#include "molgx/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "csv.hpp"
#include "molgx/canonical.hpp"
#include "molgx/smiles.hpp"

namespace molgx {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, e - b + 1);
}

// "E_HOMO [Hartree]" -> {"E_HOMO", "Hartree"}
std::pair<std::string, std::string> split_unit(const std::string &header) {
  const std::string h = trim(header);
  const auto open = h.rfind('[');
  if (open != std::string::npos && !h.empty() && h.back() == ']') {
    return {trim(h.substr(0, open)), trim(h.substr(open + 1, h.size() - open - 2))};
  }
  return {h, {}};
}

bool parse_double(const std::string &text, double &out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char *end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t Dataset::property_index(const std::string &property) const {
  for (std::size_t i = 0; i < properties.size(); ++i) {
    if (properties[i] == property) return i;
  }
  throw UnknownProperty("unknown property '" + property + "'");
}

std::vector<double> Dataset::column(const std::string &property) const {
  const std::size_t idx = property_index(property);
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back(r.values[idx]);
  return out;
}

std::vector<MolGraph> Dataset::graphs() const {
  std::vector<MolGraph> out;
  out.reserve(records.size());
  for (const auto &r : records) out.push_back(r.graph);
  return out;
}

Dataset Dataset::empty_like() const {
  Dataset d;
  d.name = name;
  d.properties = properties;
  d.units = units;
  return d;
}

LoadResult load_csv(const std::filesystem::path &path,
                    const LoadOptions &options) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line).empty())
    throw HeaderMissing(path.string() + ": header row missing");
  const auto header = csv::split_line(line);

  std::vector<std::string> names;
  std::vector<std::string> units;
  for (const auto &h : header) {
    auto [n, u] = split_unit(h);
    names.push_back(n);
    units.push_back(u);
  }
  const auto smiles_it =
      std::find(names.begin(), names.end(), options.smiles_column);
  if (smiles_it == names.end())
    throw HeaderMissing(path.string() + ": no '" + options.smiles_column +
                        "' column in header");
  const std::size_t smiles_col = smiles_it - names.begin();

  std::vector<std::size_t> prop_cols;
  LoadResult result;
  Dataset &d = result.dataset;
  d.name = path.stem().string();
  if (options.property_columns.empty()) {
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i != smiles_col) prop_cols.push_back(i);
    }
  } else {
    for (const auto &p : options.property_columns) {
      const auto it = std::find(names.begin(), names.end(), p);
      if (it == names.end())
        throw HeaderMissing(path.string() + ": no '" + p + "' column in header");
      prop_cols.push_back(it - names.begin());
    }
  }
  for (std::size_t c : prop_cols) {
    d.properties.push_back(names[c]);
    if (!units[c].empty()) d.units[names[c]] = units[c];
  }

  std::set<std::string> labels;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++rows;
    const auto cells = csv::split_line(line);
    const std::string smiles =
        smiles_col < cells.size() ? trim(cells[smiles_col]) : std::string{};
    auto reject = [&](std::string error, std::size_t pos) {
      result.rejects.push_back({rows, smiles, std::move(error), pos});
    };
    if (cells.size() != names.size()) {
      reject("ColumnCount", 0);
      continue;
    }
    Record rec;
    rec.smiles = smiles;
    try {
      rec.graph = parse_smiles(smiles);
    } catch (const SmilesError &e) {
      reject(std::string(to_string(e.kind())), e.position());
      continue;
    }
    bool ok = true;
    for (std::size_t c : prop_cols) {
      double v = 0.0;
      if (!parse_double(cells[c], v)) {
        reject(trim(cells[c]).empty() ? "MissingValue" : "NonNumeric", 0);
        ok = false;
        break;
      }
      rec.values.push_back(v);
    }
    if (!ok) continue;
    if (!options.allow_duplicates &&
        !labels.insert(canonical_label(rec.graph)).second) {
      reject("Duplicate", 0);
      continue;
    }
    d.records.push_back(std::move(rec));
  }

  if (!result.rejects.empty() && options.write_rejects_file) {
    write_rejects(result.rejects, path.string() + ".rejects.csv");
  }
  if (rows > 0 && static_cast<double>(result.rejects.size()) >
                      options.max_reject_fraction * static_cast<double>(rows)) {
    throw TooManyRejects(path.string() + ": " +
                         std::to_string(result.rejects.size()) + " of " +
                         std::to_string(rows) + " rows rejected");
  }
  return result;
}

void save_csv(const Dataset &d, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  out << "smiles";
  for (const auto &p : d.properties) {
    std::string h = p;
    if (auto it = d.units.find(p); it != d.units.end())
      h += " [" + it->second + "]";
    out << ',' << csv::quote(h);
  }
  out << '\n';
  for (const auto &r : d.records) {
    out << csv::quote(r.smiles);
    for (double v : r.values) out << ',' << format_double(v);
    out << '\n';
  }
  if (!out) throw FileError("write failed for " + path.string());
}

void write_rejects(const std::vector<Reject> &rejects,
                   const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  out << "smiles,error,position\n";
  for (const auto &r : rejects)
    out << csv::quote(r.smiles) << ',' << r.error << ',' << r.position << '\n';
}

std::pair<Dataset, Dataset> split(const Dataset &d, SplitStrategy strategy,
                                  std::uint64_t seed,
                                  const std::string &property,
                                  double train_fraction) {
  if (d.size() < 2)
    throw EmptyDataset("split needs at least 2 records, got " +
                       std::to_string(d.size()));
  std::vector<std::size_t> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  Dataset train = d.empty_like();
  Dataset test = d.empty_like();
  train.name = d.name + "_train";
  test.name = d.name + "_test";

  if (strategy == SplitStrategy::Stratified) {
    if (d.properties.empty())
      throw UnknownProperty("stratified split needs a property");
    const std::size_t p =
        property.empty() ? 0 : d.property_index(property);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return d.records[a].values[p] < d.records[b].values[p];
    });
    for (std::size_t k = 0; k < idx.size(); ++k)
      (k % 2 == 0 ? train : test).records.push_back(d.records[idx[k]]);
  } else {
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_train = static_cast<std::size_t>(
        std::ceil(train_fraction * static_cast<double>(d.size())));
    for (std::size_t k = 0; k < idx.size(); ++k)
      (k < n_train ? train : test).records.push_back(d.records[idx[k]]);
  }
  return {std::move(train), std::move(test)};
}

Summary summarize(const Dataset &d, const std::string &property) {
  const auto values = d.column(property);
  Summary s;
  s.count = values.size();
  s.histogram.counts.assign(kHistogramBins, 0);
  if (values.empty()) return s;
  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  s.min = *mn;
  s.max = *mx;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(ss / static_cast<double>(values.size()));
  s.histogram.low = s.min;
  s.histogram.high = s.max;
  const double width = (s.max - s.min) / static_cast<double>(kHistogramBins);
  for (double v : values) {
    std::size_t bin = 0;
    if (width > 0.0) {
      bin = static_cast<std::size_t>((v - s.min) / width);
      bin = std::min(bin, kHistogramBins - 1);
    }
    ++s.histogram.counts[bin];
  }
  return s;
}

}  // namespace molgx
