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

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "molgx/dataset.hpp"
#include "molgx/regress.hpp"

namespace molgx {

using nlohmann::json;

std::string model_to_json(const TrainedModel &m) {
  json j;
  j["format"] = "molgx-model";
  j["version"] = kModelFormatVersion;
  j["kind"] = to_string(m.kind);
  j["hyperparams"] = {{"lambda", m.hp.lambda}, {"gamma", m.hp.gamma}};
  j["scaler"] = {{"mean", m.scaler.mean}, {"stddev", m.scaler.stddev}};
  j["intercept"] = m.intercept;
  if (m.kind == ModelKind::KernelRidge) {
    j["dual"] = m.dual;
    j["train_matrix"] = m.train_matrix;
  } else {
    j["weights"] = m.weights;
  }
  json families = json::array();
  for (const auto &f : m.schema.families()) families.push_back(to_string(f));
  json patterns = json::array();
  for (const auto &[tag, key] : m.schema.tagged_keys())
    patterns.push_back({{"family", tag}, {"key", key}});
  j["schema"] = {{"families", families},
                 {"patterns", patterns},
                 {"identity", m.schema.identity()}};
  j["property"] = m.property;
  if (m.target_range)
    j["target_range"] = {m.target_range->low, m.target_range->high};
  else
    j["target_range"] = nullptr;
  return j.dump(1);
}

TrainedModel model_from_json(std::string_view text) {
  TrainedModel m;
  try {
    const json j = json::parse(text);
    if (j.value("format", "") != "molgx-model")
      throw ModelFormatError("not a model document");
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion)
      throw ModelFormatError("unsupported model format version " +
                             std::to_string(version));
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.hp.lambda = j.at("hyperparams").at("lambda").get<double>();
    m.hp.gamma = j.at("hyperparams").at("gamma").get<double>();
    m.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
    m.scaler.stddev = j.at("scaler").at("stddev").get<std::vector<double>>();
    m.intercept = j.at("intercept").get<double>();
    const std::size_t d = m.scaler.mean.size();
    if (m.scaler.stddev.size() != d)
      throw ModelFormatError("scaler mean and stddev lengths differ");
    if (m.kind == ModelKind::KernelRidge) {
      m.dual = j.at("dual").get<std::vector<double>>();
      m.train_matrix = j.at("train_matrix").get<FeatureMatrix>();
      if (m.train_matrix.size() != m.dual.size())
        throw ModelFormatError("dual weights and training matrix disagree");
      for (const auto &row : m.train_matrix)
        if (row.size() != d) throw ModelFormatError("training row length");
    } else {
      m.weights = j.at("weights").get<std::vector<double>>();
      if (m.weights.size() != d) throw ModelFormatError("weight vector length");
    }
    const json &s = j.at("schema");
    std::vector<FeatureFamily> families;
    for (const auto &f : s.at("families")) families.push_back(parse_family(f.get<std::string>()));
    std::vector<std::pair<std::string, std::string>> tags;
    for (const auto &p : s.at("patterns"))
      tags.emplace_back(p.at("family").get<std::string>(),
                        p.at("key").get<std::string>());
    m.schema = FeatureSchema::from_tags(std::move(families), tags);
    if (!tags.empty() && m.schema.dimension() != d)
      throw ModelFormatError("schema has " + std::to_string(m.schema.dimension()) +
                             " patterns but the model " + std::to_string(d) +
                             " features");
    if (s.contains("identity") &&
        s.at("identity").get<std::string>() != m.schema.identity())
      throw ModelFormatError("schema identity mismatch");
    m.property = j.value("property", "");
    if (j.contains("target_range") && !j.at("target_range").is_null()) {
      const auto r = j.at("target_range").get<std::vector<double>>();
      if (r.size() != 2 || r[0] > r[1])
        throw ModelFormatError("target_range must be [low, high]");
      m.target_range = TargetRange{r[0], r[1]};
    }
  } catch (const json::exception &e) {
    throw ModelFormatError(std::string("malformed model document: ") + e.what());
  } catch (const ModelFormatError &) {
    throw;
  } catch (const Error &e) {
    throw ModelFormatError(std::string("invalid model document: ") + e.what());
  }
  return m;
}

void save_model(const TrainedModel &m, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  out << model_to_json(m) << '\n';
  if (!out) throw FileError("write failed for " + path.string());
}

TrainedModel load_model(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

std::string cv_report_to_json(const CvReport &r) {
  json entries = json::array();
  for (const auto &e : r.entries) {
    json je = {{"kind", to_string(e.kind)},
               {"lambda", e.hp.lambda},
               {"lambda_index", e.lambda_index},
               {"mean_r2", e.error.empty() ? json(e.mean_r2) : json(nullptr)},
               {"std_r2", e.error.empty() ? json(e.std_r2) : json(nullptr)}};
    if (e.kind == ModelKind::KernelRidge) je["gamma"] = e.hp.gamma;
    if (!e.error.empty()) je["error"] = e.error;
    entries.push_back(std::move(je));
  }
  json j = {{"folds", r.folds}, {"seed", r.seed}, {"best", r.best},
            {"entries", entries}};
  return j.dump(1);
}

}  // namespace molgx
