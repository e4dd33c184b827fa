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

#include <CLI11.hpp>
#include <csignal>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "molgx/bench.hpp"
#include "molgx/dataset.hpp"
#include "molgx/enumerate.hpp"
#include "molgx/features.hpp"
#include "molgx/regress.hpp"
#include "molgx/rules.hpp"
#include "molgx/service.hpp"
#include "molgx/smiles.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

// Options shared by every subcommand.
struct Common {
  std::string out;
  bool json_mode = false;
  std::string config;
};

void add_common(CLI::App *sub, Common &c) {
  sub->add_option("--out", c.out, "Output directory (created if missing)");
  sub->add_flag("--json", c.json_mode, "Machine-readable stdout");
  sub->add_option("--config", c.config,
                  "JSON file of option values keyed by long name; wins over flags")
      ->check(CLI::ExistingFile);
}

// Re-applies every key of the --config document to the parsed options.
void apply_config(CLI::App *sub, const std::string &path) {
  std::ifstream in(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw molgx::ConfigError("--config " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw molgx::ConfigError("--config must hold a JSON object");
  for (const auto &[key, value] : doc.items()) {
    CLI::Option *opt = sub->get_option_no_throw("--" + key);
    if (!opt) opt = sub->get_option_no_throw(key);
    if (!opt || key == "config") throw molgx::ConfigError("--config: unknown option '" + key + "'");
    opt->clear();
    auto add = [&](const json &v) {
      opt->add_result(v.is_string() ? v.get<std::string>() : v.dump());
    };
    if (value.is_array()) {
      for (const auto &v : value) add(v);
    } else {
      add(value);
    }
    opt->run_callback();
  }
}

json resolved_options(const CLI::App *sub) {
  json out = json::object();
  for (const CLI::Option *o : sub->get_options()) {
    const std::string name = o->get_single_name();
    if (name == "help" || name == "h") continue;
    if (o->count() > 0) {
      const auto &r = o->results();
      out[name] = r.size() == 1 ? json(r[0]) : json(r);
    } else if (!o->get_default_str().empty()) {
      out[name] = o->get_default_str();
    }
  }
  return out;
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json options;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> config_paths;
  std::string started_at;
  std::vector<std::string> outputs;
};

void write_manifest(const fs::path &dir, const Manifest &m) {
  json doc = {{"tool", "molgx"},
              {"version", MOLGX_VERSION},
              {"command", m.command},
              {"argv", m.argv},
              {"options", m.options},
              {"seed", m.seed ? json(*m.seed) : json(nullptr)},
              {"config_paths", m.config_paths},
              {"outputs", m.outputs},
              {"started_at", m.started_at},
              {"finished_at", utc_now()}};
  std::ofstream out(dir / "manifest.json");
  out << doc.dump(1) << '\n';
}

void write_text(const fs::path &path, const std::string &text) {
  std::ofstream out(path);
  if (!out) throw molgx::FileError("cannot write " + path.string());
  out << text;
}

// ingest

struct IngestArgs {
  std::string data;
  std::string smiles_column = "smiles";
  std::vector<std::string> properties;
  double max_reject_fraction = 0.10;
  bool allow_duplicates = false;
  std::string split = "none";
  std::string split_property;
  double train_fraction = 0.5;
  std::uint64_t seed = 0;
};

json summary_json(const molgx::Dataset &d) {
  json props = json::object();
  for (const auto &p : d.properties) {
    const auto s = molgx::summarize(d, p);
    props[p] = {{"count", s.count},   {"min", s.min},       {"max", s.max},
                {"mean", s.mean},     {"stddev", s.stddev}, {"histogram", s.histogram.counts},
                {"histogram_low", s.histogram.low}, {"histogram_high", s.histogram.high}};
    if (d.units.count(p)) props[p]["unit"] = d.units.at(p);
  }
  return {{"rows", d.size()}, {"properties", props}};
}

int run_ingest(const IngestArgs &a, const Common &c, Manifest &m) {
  molgx::LoadOptions opts;
  opts.smiles_column = a.smiles_column;
  opts.property_columns = a.properties;
  opts.max_reject_fraction = a.max_reject_fraction;
  opts.allow_duplicates = a.allow_duplicates;
  opts.write_rejects_file = false;
  const auto loaded = molgx::load_csv(a.data, opts);
  const auto &d = loaded.dataset;
  json summary = summary_json(d);
  summary["rejects"] = loaded.rejects.size();

  if (!c.out.empty()) {
    const fs::path out(c.out);
    fs::create_directories(out);
    molgx::save_csv(d, out / "dataset.csv");
    m.outputs.push_back("dataset.csv");
    if (!loaded.rejects.empty()) {
      molgx::write_rejects(loaded.rejects, out / "rejects.csv");
      m.outputs.push_back("rejects.csv");
    }
    if (a.split != "none") {
      const auto strategy = a.split == "random" ? molgx::SplitStrategy::Random
                                                : molgx::SplitStrategy::Stratified;
      const std::string prop = a.split_property.empty() && !d.properties.empty()
                                   ? d.properties[0]
                                   : a.split_property;
      const auto [train, test] = molgx::split(d, strategy, a.seed, prop, a.train_fraction);
      molgx::save_csv(train, out / "train.csv");
      molgx::save_csv(test, out / "test.csv");
      m.outputs.push_back("train.csv");
      m.outputs.push_back("test.csv");
      summary["split"] = {{"strategy", a.split}, {"train", train.size()}, {"test", test.size()}};
    }
    write_text(out / "summary.json", summary.dump(1) + "\n");
    m.outputs.push_back("summary.json");
  }

  if (c.json_mode) {
    std::cout << summary.dump(1) << '\n';
  } else {
    std::cout << "rows: " << d.size() << "  rejected: " << loaded.rejects.size() << '\n';
    for (const auto &r : loaded.rejects)
      std::cout << "  row " << r.row << " '" << r.smiles << "': " << r.error << '\n';
    for (const auto &p : d.properties) {
      const auto &s = summary["properties"][p];
      std::printf("%-16s n=%zu min=%.6g max=%.6g mean=%.6g sd=%.6g\n", p.c_str(),
                  s["count"].get<std::size_t>(), s["min"].get<double>(), s["max"].get<double>(),
                  s["mean"].get<double>(), s["stddev"].get<double>());
    }
  }
  return kExitOk;
}

// train

struct TrainArgs {
  std::string data;
  std::string target;
  std::string test;
  std::string families;
  std::string kinds = "ridge,lasso,kernel_ridge";
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  std::string split = "none";
  double train_fraction = 0.5;
  std::optional<std::size_t> level;
  double gamma = 0.0;
};

int run_train(const TrainArgs &a, const Common &c, Manifest &m) {
  molgx::LoadOptions opts;
  opts.property_columns = {a.target};
  opts.write_rejects_file = false;
  molgx::Dataset train = molgx::load_csv(a.data, opts).dataset;
  std::optional<molgx::Dataset> test;
  if (!a.test.empty()) {
    test = molgx::load_csv(a.test, opts).dataset;
  } else if (a.split != "none") {
    const auto strategy = a.split == "random" ? molgx::SplitStrategy::Random
                                              : molgx::SplitStrategy::Stratified;
    auto parts = molgx::split(train, strategy, a.seed, a.target, a.train_fraction);
    train = std::move(parts.first);
    test = std::move(parts.second);
  }

  std::vector<molgx::FeatureFamily> families;
  for (const auto &f : split_list(a.families)) families.push_back(molgx::parse_family(f));
  if (families.empty()) families = molgx::default_families();
  std::vector<molgx::ModelKind> kinds;
  for (const auto &k : split_list(a.kinds)) kinds.push_back(molgx::parse_model_kind(k));
  if (kinds.empty()) throw molgx::ConfigError("--kinds is empty");

  const auto schema = molgx::build_schema(train, families);
  const auto grid = molgx::HyperGrid::defaults();
  const auto cv = molgx::cross_validate_select(train, schema, a.target, kinds, grid, a.folds, a.seed);
  molgx::TrainedModel model = cv.model;
  const auto X = molgx::encode_all(train.graphs(), schema);
  const auto y = train.column(a.target);
  if (a.level) {
    const double gamma = a.gamma > 0 ? a.gamma : model.hp.gamma;
    model = molgx::fit_at_level(kinds.size() == 1 ? kinds[0] : model.kind, X, y, grid, *a.level,
                                gamma);
    model.schema = schema;
    model.property = a.target;
  }

  json metrics = {{"property", a.target},
                  {"kind", std::string(molgx::to_string(model.kind))},
                  {"lambda", model.hp.lambda},
                  {"gamma", model.hp.gamma},
                  {"features", schema.dimension()},
                  {"train_rows", train.size()},
                  {"train_r2", molgx::r2_score(model, X, y)}};
  if (test) {
    const auto Xt = molgx::encode_all(test->graphs(), schema);
    metrics["test_rows"] = test->size();
    metrics["test_r2"] = molgx::r2_score(model, Xt, test->column(a.target));
  }

  const fs::path out = c.out.empty() ? fs::path(".") : fs::path(c.out);
  fs::create_directories(out);
  molgx::save_model(model, out / "model.json");
  write_text(out / "cv_report.json", molgx::cv_report_to_json(cv.report) + "\n");
  write_text(out / "train_metrics.json", metrics.dump(1) + "\n");
  m.outputs = {"model.json", "cv_report.json", "train_metrics.json"};

  if (c.json_mode) {
    json j = metrics;
    j["cv_report"] = json::parse(molgx::cv_report_to_json(cv.report));
    std::cout << j.dump(1) << '\n';
    return kExitOk;
  }
  std::printf("%-13s %11s %11s %10s %10s\n", "model", "lambda", "gamma", "mean_R2", "sd_R2");
  for (std::size_t i = 0; i < cv.report.entries.size(); ++i) {
    const auto &e = cv.report.entries[i];
    std::printf("%-13s %11.4g %11.4g ", std::string(molgx::to_string(e.kind)).c_str(), e.hp.lambda,
                e.hp.gamma);
    if (e.error.empty())
      std::printf("%10.4f %10.4f%s\n", e.mean_r2, e.std_r2, i == cv.report.best ? "  *" : "");
    else
      std::printf("%10s %10s  (%s)\n", "-", "-", e.error.c_str());
  }
  std::printf("selected: %s lambda=%g gamma=%g  train R2=%.4f", metrics["kind"].get<std::string>().c_str(),
              model.hp.lambda, model.hp.gamma, metrics["train_r2"].get<double>());
  if (test) std::printf("  test R2=%.4f", metrics["test_r2"].get<double>());
  std::printf("\nmodel written to %s\n", (out / "model.json").string().c_str());
  return kExitOk;
}

// generate

struct GenerateArgs {
  std::vector<std::string> models;
  std::string atoms;
  std::string data;
  std::vector<std::string> targets;
  std::string rules = "default";
  std::vector<std::string> fragments;
  std::vector<std::string> seeds;
  std::optional<std::size_t> max_solutions;
  std::optional<std::size_t> max_nodes;
  double time_limit = 600.0;
  std::size_t workers = 1;
};

int run_generate(const GenerateArgs &a, const Common &c, Manifest &m) {
  molgx::GenerationConfig cfg;
  if (!a.atoms.empty()) {
    cfg.pool = molgx::parse_pool(a.atoms);
  } else if (!a.data.empty()) {
    molgx::LoadOptions opts;
    opts.write_rejects_file = false;
    cfg.pool = molgx::derive_pool(molgx::load_csv(a.data, opts).dataset);
  } else {
    throw molgx::ConfigError("give --atoms or --data to define the atom pool");
  }
  for (const auto &f : a.fragments) molgx::add_fragment_range(cfg.pool, f);
  cfg.rules = molgx::resolve_rules(a.rules);
  for (const auto &p : a.models) cfg.models.push_back(molgx::load_model(p));
  std::vector<std::pair<std::string, molgx::TargetRange>> targets;
  for (const auto &t : a.targets) targets.push_back(molgx::parse_target(t));
  molgx::attach_targets(cfg.models, targets);
  for (const auto &s : a.seeds) cfg.seed_fragments.push_back(molgx::parse_smiles(s));
  if (a.max_solutions) cfg.limits.max_solutions = *a.max_solutions;
  if (a.max_nodes) cfg.limits.max_nodes_expanded = *a.max_nodes;
  cfg.limits.wall_clock_seconds = a.time_limit;
  cfg.workers = a.workers;
  cfg.validate();

  std::ofstream file;
  if (!c.out.empty()) {
    fs::create_directories(c.out);
    file.open(fs::path(c.out) / "solutions.tsv");
    if (!file) throw molgx::FileError("cannot write solutions.tsv");
  }
  const auto stats = molgx::generate(cfg, [&](const molgx::Solution &s) {
    if (file.is_open()) {
      file << molgx::format_solution(s) << '\n';
    } else if (c.json_mode) {
      json preds = json::object();
      for (std::size_t i = 0; i < s.predictions.size(); ++i)
        preds[cfg.models[i].property] = s.predictions[i];
      std::cout << json{{"smiles", s.smiles}, {"predictions", preds}}.dump() << '\n';
    } else {
      std::cout << molgx::format_solution(s) << '\n';
    }
    return true;
  });
  const std::string stats_text = molgx::stats_to_json(stats);
  if (!c.out.empty()) {
    file.close();
    write_text(fs::path(c.out) / "stats.json", stats_text + "\n");
    m.outputs = {"solutions.tsv", "stats.json"};
    if (c.json_mode) {
      std::cout << stats_text << '\n';
    } else {
      std::printf("solutions: %zu  nodes: %zu  %.3f s  (%.1f /s)%s\n", stats.solutions_emitted,
                  stats.nodes_expanded, stats.elapsed_seconds, stats.solutions_per_second,
                  stats.limit_reached ? ("  stopped: " + stats.limit).c_str() : "");
    }
  } else {
    std::cerr << stats_text << '\n';
  }
  return kExitOk;
}

// bench

int run_bench(const std::string &scenario, const Common &c, Manifest &m) {
  const auto report = molgx::run_scenario(scenario, c.out);
  for (const auto &f : report.files) m.outputs.push_back(fs::path(f).filename().string());
  if (c.json_mode) {
    std::cout << molgx::report_to_json(report) << '\n';
    return kExitOk;
  }
  std::cout << "scenario: " << report.scenario << '\n';
  for (const auto &[k, v] : report.metrics) std::printf("  %-44s %.6g\n", k.c_str(), v);
  return kExitOk;
}

// filter-check

int run_filter_check(const std::string &smiles, const std::string &rules_spec,
                     const std::string &mode, const Common &c) {
  const molgx::MolGraph g = molgx::parse_smiles(smiles);
  const molgx::RuleSet rules = molgx::resolve_rules(rules_spec);
  const auto check_mode = mode == "prune" ? molgx::CheckMode::Prune : molgx::CheckMode::Output;
  json violated = json::array();
  for (const auto &r : rules.rules()) {
    molgx::RuleSet one;
    one.add(r);
    if (!molgx::check_rules(g, one, check_mode).pass)
      violated.push_back({{"id", r.id}, {"smiles", r.smiles}, {"reason", r.reason}});
  }
  const bool pass = violated.empty();
  if (c.json_mode) {
    std::cout << json{{"smiles", molgx::write_smiles(g)}, {"pass", pass}, {"violated", violated}}.dump(1)
              << '\n';
  } else if (pass) {
    std::cout << "pass\n";
  } else {
    for (const auto &v : violated)
      std::cout << v["id"].get<std::string>() << '\t' << v["smiles"].get<std::string>() << '\t'
                << v["reason"].get<std::string>() << '\n';
  }
  return pass ? kExitOk : kExitData;
}

// serve

struct ServeArgs {
  std::optional<std::string> host;
  std::optional<int> port;
  std::optional<std::string> data_dir;
  std::optional<std::size_t> workers;
  std::optional<std::string> token;
  std::vector<std::string> datasets;
};

int run_serve(const ServeArgs &a) {
  auto cfg = molgx::service::ServiceConfig::from_env();
  if (a.host) cfg.host = *a.host;
  if (a.port) cfg.port = *a.port;
  if (a.data_dir) cfg.data_dir = *a.data_dir;
  if (a.workers) cfg.workers = *a.workers;
  if (a.token) cfg.auth_token = *a.token;
  fs::create_directories(cfg.data_dir / "datasets");
  for (const auto &d : a.datasets)
    fs::copy_file(d, cfg.data_dir / "datasets" / fs::path(d).filename(),
                  fs::copy_options::overwrite_existing);

  // Block termination signals in every thread; the main thread waits for them.
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &set, nullptr);

  molgx::service::Server server(cfg);
  server.start();
  std::cerr << "molgx service listening on " << cfg.host << ':' << server.port() << " (data "
            << cfg.data_dir.string() << ", " << cfg.effective_workers() << " workers)\n";
  int sig = 0;
  sigwait(&set, &sig);
  std::cerr << "stopping\n";
  server.stop();
  return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"MolGX molecular inverse design"};
  app.set_version_flag("--version", MOLGX_VERSION);
  app.require_subcommand(1);

  Common common;
  const std::string started = utc_now();

  IngestArgs ingest;
  auto *ingest_cmd = app.add_subcommand("ingest", "Validate a SMILES+property CSV and summarise it");
  ingest_cmd->add_option("--data", ingest.data, "Input CSV")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--smiles-column", ingest.smiles_column, "SMILES column name")
      ->capture_default_str();
  ingest_cmd->add_option("--property", ingest.properties, "Property columns (default: all)");
  ingest_cmd->add_option("--max-reject-fraction", ingest.max_reject_fraction)
      ->capture_default_str();
  ingest_cmd->add_flag("--allow-duplicates", ingest.allow_duplicates);
  ingest_cmd->add_option("--split", ingest.split, "none, stratified or random")
      ->check(CLI::IsMember({"none", "stratified", "random"}))
      ->capture_default_str();
  ingest_cmd->add_option("--split-property", ingest.split_property,
                         "Property for stratification (default: first)");
  ingest_cmd->add_option("--train-fraction", ingest.train_fraction)->capture_default_str();
  ingest_cmd->add_option("--seed", ingest.seed)->capture_default_str();
  add_common(ingest_cmd, common);

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train", "Cross-validate regressors and write the best model");
  train_cmd->add_option("--data", train.data, "Training CSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--target", train.target, "Property to model")->required();
  train_cmd->add_option("--test", train.test, "Held-out CSV for test R2")->check(CLI::ExistingFile);
  train_cmd->add_option("--families", train.families,
                        "Comma list: atoms,rings,aromatic_rings,edges:<k> (default: "
                        "atoms,rings,aromatic_rings,edges:1)");
  train_cmd->add_option("--kinds", train.kinds, "Comma list of ridge,lasso,kernel_ridge")
      ->capture_default_str();
  train_cmd->add_option("--folds", train.folds)->capture_default_str()->check(CLI::Range(2, 1000));
  train_cmd->add_option("--seed", train.seed)->capture_default_str();
  train_cmd->add_option("--split", train.split, "Split --data into train/test: none, stratified, random")
      ->check(CLI::IsMember({"none", "stratified", "random"}))
      ->capture_default_str();
  train_cmd->add_option("--train-fraction", train.train_fraction)->capture_default_str();
  train_cmd->add_option("--level", train.level,
                        "Refit at this lambda grid index (generalization level)");
  train_cmd->add_option("--gamma", train.gamma, "Kernel width for --level (default: selected)");
  add_common(train_cmd, common);

  GenerateArgs gen;
  auto *gen_cmd = app.add_subcommand("generate", "Enumerate structures under rules and targets");
  gen_cmd->add_option("--model", gen.models, "Model JSON (repeatable)")->check(CLI::ExistingFile);
  gen_cmd->add_option("--atoms", gen.atoms, "Atom pool, e.g. C:7,N:2,O:2");
  gen_cmd->add_option("--data", gen.data, "Derive the atom pool from this CSV")
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--target", gen.targets, "prop:low:high (repeatable)");
  gen_cmd->add_option("--rules", gen.rules, "default, none or a rule file")->capture_default_str();
  gen_cmd->add_option("--fragment", gen.fragments, "SMILES:min:max count range (repeatable)");
  gen_cmd->add_option("--seed-fragment", gen.seeds, "Extra root structure (repeatable)");
  gen_cmd->add_option("--max-solutions", gen.max_solutions);
  gen_cmd->add_option("--max-nodes", gen.max_nodes);
  gen_cmd->add_option("--time-limit", gen.time_limit, "Wall clock seconds")->capture_default_str();
  gen_cmd->add_option("--workers", gen.workers)->capture_default_str()->check(CLI::PositiveNumber);
  add_common(gen_cmd, common);

  std::string scenario;
  auto *bench_cmd = app.add_subcommand("bench", "Run a benchmark scenario file");
  bench_cmd->add_option("--scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  add_common(bench_cmd, common);

  std::string fc_smiles, fc_rules = "default", fc_mode = "output";
  auto *fc_cmd = app.add_subcommand("filter-check", "Check a structure against rules");
  fc_cmd->add_option("smiles", fc_smiles, "Structure to check")->required();
  fc_cmd->add_option("--rules", fc_rules, "default, none or a rule file")->capture_default_str();
  fc_cmd->add_option("--mode", fc_mode, "output or prune")
      ->check(CLI::IsMember({"output", "prune"}))
      ->capture_default_str();
  add_common(fc_cmd, common);

  ServeArgs serve;
  auto *serve_cmd = app.add_subcommand("serve", "Run the REST service");
  serve_cmd->add_option("--host", serve.host, "Bind address (env MOLGX_BIND)");
  serve_cmd->add_option("--port", serve.port, "Port, 0 for any free port");
  serve_cmd->add_option("--data-dir", serve.data_dir, "Document store (env MOLGX_DATA_DIR)");
  serve_cmd->add_option("--workers", serve.workers, "Task workers (env MOLGX_WORKERS)");
  serve_cmd->add_option("--token", serve.token, "Bearer token for writes (env MOLGX_TOKEN)");
  serve_cmd->add_option("--dataset", serve.datasets, "CSV copied into the datasets directory")
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  Manifest manifest;
  manifest.command = sub->get_name();
  manifest.argv.assign(argv, argv + argc);
  manifest.started_at = started;
  try {
    if (!common.config.empty()) {
      apply_config(sub, common.config);
      manifest.config_paths.push_back(common.config);
    }
    manifest.options = resolved_options(sub);
    int rc = kExitOk;
    if (sub == ingest_cmd) {
      manifest.seed = ingest.seed;
      rc = run_ingest(ingest, common, manifest);
    } else if (sub == train_cmd) {
      manifest.seed = train.seed;
      rc = run_train(train, common, manifest);
    } else if (sub == gen_cmd) {
      rc = run_generate(gen, common, manifest);
    } else if (sub == bench_cmd) {
      manifest.config_paths.push_back(scenario);
      rc = run_bench(scenario, common, manifest);
    } else if (sub == fc_cmd) {
      rc = run_filter_check(fc_smiles, fc_rules, fc_mode, common);
    } else {
      return run_serve(serve);
    }
    const bool wrote = sub == train_cmd || !common.out.empty();
    if (wrote) write_manifest(common.out.empty() ? fs::path(".") : fs::path(common.out), manifest);
    return rc;
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const molgx::ConfigError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
