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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <ctime>
#include <deque>
#include <fstream>
#include <limits>
#include <mutex>
#include <nlohmann/json.hpp>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "molgx/canonical.hpp"
#include "molgx/dataset.hpp"
#include "molgx/enumerate.hpp"
#include "molgx/features.hpp"
#include "molgx/regress.hpp"
#include "molgx/rules.hpp"
#include "molgx/service.hpp"
#include "molgx/smiles.hpp"

namespace molgx::service {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// An error that maps to an HTTP status.
struct HttpError {
  int status;
  std::string code;
  std::string message;
  std::string field;
};

[[noreturn]] void fail(int status, std::string code, std::string message,
                       std::string field = {}) {
  throw HttpError{status, std::move(code), std::move(message), std::move(field)};
}

Response reply(int status, const json &body) { return {status, body.dump(1)}; }

Response error_reply(const HttpError &e) {
  json err = {{"code", e.code}, {"message", e.message}};
  if (!e.field.empty()) err["field"] = e.field;
  return reply(e.status, {{"error", err}});
}

std::string now_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                static_cast<int>(ms));
  return buf;
}

bool valid_id(const std::string &id) {
  static const std::regex re("[A-Za-z0-9_-][A-Za-z0-9_.-]{0,63}");
  return std::regex_match(id, re);
}

// One JSON document per file, written via rename so readers never see a
// partial document.
class Store {
 public:
  explicit Store(fs::path root) : root_(std::move(root)) {
    for (const char *d : {"projects", "tasks", "results", "models", "datasets"})
      fs::create_directories(root_ / d);
  }

  fs::path path(const std::string &kind, const std::string &id) const {
    return root_ / kind / (id + ".json");
  }
  const fs::path &root() const { return root_; }

  std::optional<json> get(const std::string &kind, const std::string &id) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::ifstream in(path(kind, id));
    if (!in) return std::nullopt;
    return json::parse(in);
  }

  void put(const std::string &kind, const std::string &id, const json &doc) {
    std::lock_guard<std::mutex> lock(mu_);
    const fs::path final_path = path(kind, id);
    const fs::path tmp = final_path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) throw FileError("cannot write " + tmp.string());
      out << doc.dump(1);
      if (!out.flush()) throw FileError("cannot write " + tmp.string());
    }
    fs::rename(tmp, final_path);
  }

  std::vector<json> list(const std::string &kind) const {
    std::lock_guard<std::mutex> lock(mu_);
    std::vector<fs::path> files;
    for (const auto &e : fs::directory_iterator(root_ / kind))
      if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<json> out;
    for (const auto &f : files) {
      std::ifstream in(f);
      out.push_back(json::parse(in));
    }
    return out;
  }

 private:
  fs::path root_;
  mutable std::mutex mu_;
};

struct Live {
  std::atomic<std::size_t> nodes{0};
  std::atomic<std::size_t> solutions{0};
  std::atomic<bool> cancel{false};
};

const std::set<std::string> kServerFields = {"model", "design_results", "created_at",
                                             "updated_at", "schema_version"};

std::vector<FeatureFamily> families_of(const json &project) {
  if (!project.contains("families")) return default_families();
  std::vector<FeatureFamily> out;
  for (const auto &f : project["families"]) out.push_back(parse_family(f.get<std::string>()));
  return out;
}

// Throws HttpError 400 naming the first offending field.
void validate_training(const json &t, const std::string &where) {
  if (!t.is_object()) fail(400, "validation", "must be an object", where);
  if (t.contains("kinds")) {
    if (!t["kinds"].is_array() || t["kinds"].empty())
      fail(400, "validation", "must be a non-empty array", where + ".kinds");
    for (const auto &k : t["kinds"]) {
      try {
        parse_model_kind(k.get<std::string>());
      } catch (const std::exception &e) {
        fail(400, "validation", e.what(), where + ".kinds");
      }
    }
  }
  if (t.contains("folds") && (!t["folds"].is_number_integer() || t["folds"].get<int>() < 2))
    fail(400, "validation", "must be an integer >= 2", where + ".folds");
  if (t.contains("seed") && !t["seed"].is_number_unsigned())
    fail(400, "validation", "must be a non-negative integer", where + ".seed");
}

void validate_generation(const json &g, const std::string &where) {
  if (!g.is_object()) fail(400, "validation", "must be an object", where);
  auto field = [&](const char *k) { return where + "." + k; };
  try {
    if (g.contains("atoms")) parse_pool(g["atoms"].get<std::string>());
  } catch (const std::exception &e) {
    fail(400, "validation", e.what(), field("atoms"));
  }
  if (g.contains("target")) {
    const auto &t = g["target"];
    if (!t.is_object() || !t.contains("low") || !t.contains("high") ||
        !t["low"].is_number() || !t["high"].is_number() ||
        t["low"].get<double>() > t["high"].get<double>())
      fail(400, "validation", "needs numeric low <= high", field("target"));
  }
  if (g.contains("rules")) {
    const auto &r = g["rules"];
    if (!r.is_string()) fail(400, "validation", "must be a string", field("rules"));
    const std::string s = r.get<std::string>();
    if (s != "default" && s != "none") {
      try {
        parse_rules(s, "generation.rules");
      } catch (const std::exception &e) {
        fail(400, "validation", e.what(), field("rules"));
      }
    }
  }
  if (g.contains("fragments")) {
    if (!g["fragments"].is_array())
      fail(400, "validation", "must be an array", field("fragments"));
    ResourcePool scratch;
    for (const auto &f : g["fragments"]) {
      try {
        add_fragment_range(scratch, f.get<std::string>());
      } catch (const std::exception &e) {
        fail(400, "validation", e.what(), field("fragments"));
      }
    }
  }
  for (const char *k : {"max_solutions", "max_nodes", "workers"})
    if (g.contains(k) && (!g[k].is_number_unsigned() || g[k].get<std::size_t>() == 0))
      fail(400, "validation", "must be a positive integer", field(k));
  if (g.contains("wall_clock_seconds") &&
      (!g["wall_clock_seconds"].is_number() || !(g["wall_clock_seconds"].get<double>() > 0)))
    fail(400, "validation", "must be a positive number", field("wall_clock_seconds"));
}

std::size_t parse_size(const std::map<std::string, std::string> &q, const std::string &key,
                       std::size_t fallback, std::size_t max) {
  const auto it = q.find(key);
  if (it == q.end()) return fallback;
  std::size_t v = 0;
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(it->second, &used);
    if (used != it->second.size() || parsed < 1) throw std::invalid_argument(key);
    v = static_cast<std::size_t>(parsed);
  } catch (const std::exception &) {
    fail(400, "validation", "must be a positive integer", key);
  }
  return std::min(v, max);
}

}  // namespace

ServiceConfig ServiceConfig::from_env() {
  ServiceConfig c;
  if (const char *b = std::getenv("MOLGX_BIND"); b && *b) {
    const std::string s = b;
    const auto colon = s.rfind(':');
    if (colon == std::string::npos) {
      c.host = s;
    } else {
      c.host = s.substr(0, colon);
      try {
        c.port = std::stoi(s.substr(colon + 1));
      } catch (const std::exception &) {
        throw ConfigError("MOLGX_BIND port is not a number: " + s);
      }
      if (c.port < 0 || c.port > 65535) throw ConfigError("MOLGX_BIND port out of range");
    }
  }
  if (const char *d = std::getenv("MOLGX_DATA_DIR"); d && *d) c.data_dir = d;
  if (const char *w = std::getenv("MOLGX_WORKERS"); w && *w) {
    try {
      c.workers = static_cast<std::size_t>(std::stoul(w));
    } catch (const std::exception &) {
      throw ConfigError(std::string("MOLGX_WORKERS is not a number: ") + w);
    }
  }
  if (const char *t = std::getenv("MOLGX_TOKEN")) c.auth_token = t;
  return c;
}

std::size_t ServiceConfig::effective_workers() const {
  if (workers > 0) return workers;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 1 ? hw - 1 : 1;
}

struct Api::Impl {
  ServiceConfig config;
  Store store;
  std::mutex mu;  // guards queue, live, active and project read-modify-write
  std::condition_variable cv;
  std::deque<std::string> queue;
  std::map<std::string, std::shared_ptr<Live>> live;
  std::map<std::string, std::size_t> active;  // project id -> queued/running tasks
  bool stopping = false;
  std::vector<std::thread> workers;
  std::mt19937_64 rng{std::random_device{}()};

  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.data_dir) {
    recover();
    for (std::size_t i = 0; i < config.effective_workers(); ++i)
      workers.emplace_back([this] { worker_loop(); });
  }

  // Tasks left running by a previous process failed; queued ones still hold
  // their immutable payload and run again.
  void recover() {
    std::vector<json> queued;
    for (auto &t : store.list("tasks")) {
      const std::string status = t["status"];
      if (status == "running") {
        t["status"] = "failed";
        t["finished_at"] = now_iso();
        t["error"] = {{"code", "interrupted"},
                      {"message", "service stopped while the task was running"}};
        store.put("tasks", t["id"], t);
      } else if (status == "queued") {
        queued.push_back(t);
      }
    }
    std::sort(queued.begin(), queued.end(), [](const json &a, const json &b) {
      return a["created_at"].get<std::string>() < b["created_at"].get<std::string>();
    });
    for (const auto &t : queued) enqueue(t["id"], t["project_id"]);
  }

  void enqueue(const std::string &task_id, const std::string &project_id) {
    std::lock_guard<std::mutex> lock(mu);
    live[task_id] = std::make_shared<Live>();
    ++active[project_id];
    queue.push_back(task_id);
    cv.notify_one();
  }

  std::string new_task_id() {
    std::lock_guard<std::mutex> lock(mu);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    return buf;
  }

  void shutdown() {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (stopping && workers.empty()) return;
      stopping = true;
      for (auto &[id, l] : live) l->cancel = true;
    }
    cv.notify_all();
    for (auto &w : workers) w.join();
    workers.clear();
  }

  // Worker side.

  void worker_loop() {
    for (;;) {
      std::string id;
      std::shared_ptr<Live> l;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [this] { return stopping || !queue.empty(); });
        if (stopping) return;
        id = queue.front();
        queue.pop_front();
        l = live[id];
      }
      run_task(id, *l);
    }
  }

  void run_task(const std::string &id, Live &l) {
    json task = *store.get("tasks", id);
    const std::string project_id = task["project_id"];
    task["status"] = "running";
    task["started_at"] = now_iso();
    store.put("tasks", id, task);
    try {
      const json result = task["type"] == "train" ? run_train(task, l) : run_generate(task, l);
      bool stopped_by_shutdown = false;
      {
        std::lock_guard<std::mutex> lock(mu);
        stopped_by_shutdown = stopping && l.cancel;
      }
      if (stopped_by_shutdown) return;  // left running; failed on restart
      if (l.cancel) {
        task["status"] = "cancelled";
      } else {
        task["status"] = "succeeded";
        task["result"] = result;
      }
    } catch (const std::exception &e) {
      task["status"] = "failed";
      task["error"] = {{"code", "task_error"}, {"message", e.what()}};
    }
    task["progress"] = {{"nodes_expanded", l.nodes.load()}, {"solutions", l.solutions.load()}};
    task["finished_at"] = now_iso();
    std::lock_guard<std::mutex> lock(mu);
    store.put("tasks", id, task);
    if (task["status"] == "succeeded") {
      if (auto p = store.get("projects", project_id)) {
        if (task["type"] == "train")
          (*p)["model"] = task["result"]["model"];
        else
          (*p)["design_results"] = id;
        (*p)["updated_at"] = now_iso();
        store.put("projects", project_id, *p);
      }
    }
    live.erase(id);
    if (--active[project_id] == 0) active.erase(project_id);
  }

  Dataset load_dataset(const std::string &name, const std::string &property) {
    LoadOptions opts;
    opts.property_columns = {property};
    opts.write_rejects_file = false;
    return load_csv(store.root() / "datasets" / (name + ".csv"), opts).dataset;
  }

  json run_train(const json &task, Live &) {
    const json &p = task["payload"];
    const std::string property = p["property"];
    const Dataset d = load_dataset(p["dataset"], property);
    std::vector<FeatureFamily> families;
    for (const auto &f : p["families"]) families.push_back(parse_family(f.get<std::string>()));
    std::vector<ModelKind> kinds;
    for (const auto &k : p["kinds"]) kinds.push_back(parse_model_kind(k.get<std::string>()));
    const FeatureSchema schema = build_schema(d, families);
    const CvResult cv = cross_validate_select(d, schema, property, kinds, HyperGrid::defaults(),
                                              p["folds"].get<std::size_t>(),
                                              p["seed"].get<std::uint64_t>());
    const std::string id = task["id"];
    save_model(cv.model, store.path("models", id));
    const FeatureMatrix X = encode_all(d.graphs(), schema);
    const auto y = d.column(property);
    const CvEntry &best = cv.report.entries[cv.report.best];
    return {{"model",
             {{"task_id", id},
              {"kind", to_string(cv.model.kind)},
              {"property", property},
              {"lambda", cv.model.hp.lambda},
              {"gamma", cv.model.hp.gamma},
              {"features", schema.dimension()}}},
            {"cv_mean_r2", best.mean_r2},
            {"train_r2", r2_score(cv.model, X, y)},
            {"cv_report", json::parse(cv_report_to_json(cv.report))}};
  }

  json run_generate(const json &task, Live &l) {
    const json &p = task["payload"];
    TrainedModel model = load_model(store.path("models", p["model_task_id"]));
    if (p.contains("target"))
      model.target_range = TargetRange{p["target"]["low"], p["target"]["high"]};
    else
      model.target_range = TargetRange{-std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity()};
    GenerationConfig c;
    c.pool = p.contains("atoms") ? parse_pool(p["atoms"].get<std::string>())
                                 : derive_pool(load_dataset(p["dataset"], model.property));
    for (const auto &f : p["fragments"]) add_fragment_range(c.pool, f.get<std::string>());
    const std::string rules = p["rules"];
    if (rules == "default") c.rules = default_rules();
    else if (rules != "none") c.rules = parse_rules(rules, "payload.rules");
    c.models = {model};
    if (p.contains("max_solutions")) c.limits.max_solutions = p["max_solutions"];
    if (p.contains("max_nodes")) c.limits.max_nodes_expanded = p["max_nodes"];
    c.limits.wall_clock_seconds = p["wall_clock_seconds"];
    c.workers = p["workers"];
    c.cancel = &l.cancel;
    c.progress_nodes = &l.nodes;
    c.validate();

    json rows = json::array();
    const GenerationStats stats = generate(c, [&](const Solution &s) {
      rows.push_back({{"smiles", s.smiles}, {"predictions", {{model.property, s.predictions[0]}}}});
      l.solutions.fetch_add(1, std::memory_order_relaxed);
      return true;
    });
    const std::string id = task["id"];
    json doc = {{"schema_version", kSchemaVersion},
                {"task_id", id},
                {"project_id", task["project_id"]},
                {"property", model.property},
                {"stats", json::parse(stats_to_json(stats))},
                {"rows", rows}};
    store.put("results", id, doc);
    return {{"results_id", id},
            {"solutions", rows.size()},
            {"limit", stats.limit_reached ? json(stats.limit) : json(nullptr)}};
  }

  // Request side.

  json task_snapshot(json t) {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = live.find(t["id"]);
    if (it != live.end()) {
      t["progress"] = {{"nodes_expanded", it->second->nodes.load()},
                       {"solutions", it->second->solutions.load()}};
      t["cancel_requested"] = it->second->cancel.load();
    }
    return t;
  }

  json parse_body(const Request &req) {
    try {
      return json::parse(req.body);
    } catch (const json::parse_error &e) {
      fail(400, "malformed_json", e.what());
    }
  }

  Response upsert_project(const Request &req) {
    json doc = parse_body(req);
    if (!doc.is_object()) fail(400, "validation", "project must be an object");
    if (!doc.contains("id") || !doc["id"].is_string() || !valid_id(doc["id"]))
      fail(400, "validation", "required; letters, digits, '_', '-', '.' (max 64)", "id");
    if (!doc.contains("dataset") || !doc["dataset"].is_string() || doc["dataset"] == "")
      fail(400, "validation", "required dataset reference", "dataset");
    if (!valid_id(doc["dataset"]) ||
        !fs::exists(store.root() / "datasets" / (doc["dataset"].get<std::string>() + ".csv")))
      fail(400, "validation", "no such dataset", "dataset");
    for (const char *k : {"name", "property"})
      if (doc.contains(k) && !doc[k].is_string()) fail(400, "validation", "must be a string", k);
    if (doc.contains("families")) {
      if (!doc["families"].is_array() || doc["families"].empty())
        fail(400, "validation", "must be a non-empty array", "families");
      for (const auto &f : doc["families"]) {
        try {
          parse_family(f.get<std::string>());
        } catch (const std::exception &e) {
          fail(400, "validation", e.what(), "families");
        }
      }
    }
    if (doc.contains("training")) validate_training(doc["training"], "training");
    if (doc.contains("generation")) validate_generation(doc["generation"], "generation");
    for (const auto &k : kServerFields) doc.erase(k);

    const std::string id = doc["id"];
    std::lock_guard<std::mutex> lock(mu);
    if (active.count(id))
      fail(409, "conflict", "a queued or running task references project " + id);
    const auto old = store.get("projects", id);
    const std::string ts = now_iso();
    doc["schema_version"] = kSchemaVersion;
    doc["created_at"] = old ? (*old)["created_at"] : json(ts);
    doc["updated_at"] = ts;
    // A model stays attached only while its training inputs are unchanged.
    const bool same_inputs = old && (*old)["dataset"] == doc["dataset"] &&
                             old->value("property", "") == doc.value("property", "") &&
                             old->value("families", json()) == doc.value("families", json());
    doc["model"] = same_inputs ? old->value("model", json()) : json(nullptr);
    doc["design_results"] = old ? old->value("design_results", json()) : json(nullptr);
    store.put("projects", id, doc);
    return reply(200, doc);
  }

  Response get_project(const std::string &id) {
    const auto p = valid_id(id) ? store.get("projects", id) : std::nullopt;
    if (!p) fail(404, "not_found", "unknown project " + id);
    return reply(200, *p);
  }

  Response list_projects() {
    json out = json::array();
    for (const auto &p : store.list("projects"))
      out.push_back({{"id", p["id"]}, {"name", p.value("name", "")}, {"updated_at", p["updated_at"]}});
    return reply(200, {{"projects", out}});
  }

  Response list_datasets() {
    json out = json::array();
    std::vector<std::string> names;
    for (const auto &e : fs::directory_iterator(store.root() / "datasets"))
      if (e.path().extension() == ".csv") names.push_back(e.path().stem().string());
    std::sort(names.begin(), names.end());
    for (const auto &n : names) {
      json entry = {{"name", n}};
      try {
        LoadOptions opts;
        opts.write_rejects_file = false;
        const auto r = load_csv(store.root() / "datasets" / (n + ".csv"), opts);
        entry["rows"] = r.dataset.size();
        entry["properties"] = r.dataset.properties;
        entry["rejects"] = r.rejects.size();
      } catch (const std::exception &e) {
        entry["error"] = e.what();
      }
      out.push_back(entry);
    }
    return reply(200, {{"datasets", out}});
  }

  Response submit_task(const Request &req) {
    const json body = parse_body(req);
    if (!body.is_object()) fail(400, "validation", "task request must be an object");
    if (!body.contains("project_id") || !body["project_id"].is_string())
      fail(400, "validation", "required", "project_id");
    if (!body.contains("type") || (body["type"] != "train" && body["type"] != "generate"))
      fail(400, "validation", "must be \"train\" or \"generate\"", "type");
    const json overrides = body.value("config", json::object());
    const std::string type = body["type"];
    if (type == "train") validate_training(overrides, "config");
    else validate_generation(overrides, "config");

    const std::string project_id = body["project_id"];
    const auto project = valid_id(project_id) ? store.get("projects", project_id) : std::nullopt;
    if (!project) fail(404, "not_found", "unknown project " + project_id);

    json payload = {{"dataset", (*project)["dataset"]}};
    if (type == "train") {
      if (!project->contains("property"))
        fail(422, "missing_prerequisite", "project has no target property to train on");
      json t = project->value("training", json::object());
      t.update(overrides);
      json families = json::array();
      for (const auto &f : families_of(*project)) families.push_back(to_string(f));
      payload["property"] = (*project)["property"];
      payload["families"] = families;
      payload["kinds"] = t.value("kinds", json{"ridge", "lasso", "kernel_ridge"});
      payload["folds"] = t.value("folds", 5);
      payload["seed"] = t.value("seed", 0);
    } else {
      if (project->value("model", json()).is_null())
        fail(422, "missing_prerequisite", "project has no trained model; submit a train task first");
      json g = project->value("generation", json::object());
      g.update(overrides);
      payload["model_task_id"] = (*project)["model"]["task_id"];
      for (const char *k : {"atoms", "target", "max_solutions", "max_nodes"})
        if (g.contains(k)) payload[k] = g[k];
      payload["fragments"] = g.value("fragments", json::array());
      payload["rules"] = g.value("rules", "default");
      payload["wall_clock_seconds"] = g.value("wall_clock_seconds", 600.0);
      payload["workers"] = g.value("workers", 1);
    }

    const std::string id = new_task_id();
    const json task = {{"schema_version", kSchemaVersion},
                       {"id", id},
                       {"project_id", project_id},
                       {"type", type},
                       {"status", "queued"},
                       {"payload", payload},
                       {"result", nullptr},
                       {"progress", {{"nodes_expanded", 0}, {"solutions", 0}}},
                       {"error", nullptr},
                       {"created_at", now_iso()},
                       {"started_at", nullptr},
                       {"finished_at", nullptr}};
    store.put("tasks", id, task);
    enqueue(id, project_id);
    return reply(202, {{"task_id", id}, {"status", "queued"}});
  }

  Response get_task(const std::string &id) {
    const auto t = valid_id(id) ? store.get("tasks", id) : std::nullopt;
    if (!t) fail(404, "not_found", "unknown task " + id);
    return reply(200, task_snapshot(*t));
  }

  Response cancel_task(const std::string &id) {
    const auto t = valid_id(id) ? store.get("tasks", id) : std::nullopt;
    if (!t) fail(404, "not_found", "unknown task " + id);
    {
      std::lock_guard<std::mutex> lock(mu);
      const auto it = live.find(id);
      if (it == live.end())
        fail(409, "conflict", "task already " + (*t)["status"].get<std::string>());
      it->second->cancel = true;
    }
    return reply(200, task_snapshot(*t));
  }

  Response design_results(const std::string &project_id, const Request &req) {
    const auto p = valid_id(project_id) ? store.get("projects", project_id) : std::nullopt;
    if (!p) fail(404, "not_found", "unknown project " + project_id);
    const std::size_t page = parse_size(req.query, "page", 1, std::numeric_limits<std::size_t>::max());
    const std::size_t size = parse_size(req.query, "page_size", 100, 10000);
    json out = {{"project_id", project_id}, {"page", page}, {"page_size", size}};
    const json ref = p->value("design_results", json());
    json rows = json::array();
    std::size_t total = 0;
    if (!ref.is_null()) {
      const auto doc = store.get("results", ref.get<std::string>());
      if (doc) {
        const json &all = (*doc)["rows"];
        total = all.size();
        const std::size_t begin = page - 1 > total ? total : std::min(total, (page - 1) * size);
        for (std::size_t i = begin; i < std::min(total, begin + size); ++i) rows.push_back(all[i]);
        out["property"] = (*doc)["property"];
      }
    }
    out["task_id"] = ref;
    out["total"] = total;
    out["rows"] = rows;
    return reply(200, out);
  }

  Response validate_smiles(const Request &req) {
    const json body = parse_body(req);
    if (!body.is_object() || !body.contains("smiles") || !body["smiles"].is_string())
      fail(400, "validation", "required", "smiles");
    try {
      const MolGraph g = parse_smiles(body["smiles"].get<std::string>());
      return reply(200, {{"valid", true}, {"canonical", write_smiles(g)}});
    } catch (const SmilesError &e) {
      return reply(200, {{"valid", false},
                         {"error", std::string(to_string(e.kind()))},
                         {"message", e.what()},
                         {"position", e.position()}});
    } catch (const Error &e) {
      return reply(200, {{"valid", false}, {"error", "invalid"}, {"message", e.what()}});
    }
  }

  Response route(const Request &req) {
    const std::string prefix = kApiPrefix;
    if (req.path.rfind(prefix, 0) != 0) fail(404, "not_found", "no route " + req.path);
    std::vector<std::string> parts;
    std::stringstream ss(req.path.substr(prefix.size()));
    for (std::string s; std::getline(ss, s, '/');)
      if (!s.empty()) parts.push_back(s);
    if (req.method != "GET" && !config.auth_token.empty() &&
        req.authorization != "Bearer " + config.auth_token)
      fail(401, "unauthorized", "missing or wrong bearer token");

    const std::string &m = req.method;
    const std::size_t n = parts.size();
    auto is = [&](std::size_t i, const char *s) { return n > i && parts[i] == s; };
    if (n == 1 && is(0, "health") && m == "GET")
      return reply(200, {{"status", "ok"}, {"schema_version", kSchemaVersion}});
    if (n == 1 && is(0, "projects")) {
      if (m == "PUT") return upsert_project(req);
      if (m == "GET") return list_projects();
    }
    if (n == 2 && is(0, "projects") && m == "GET") return get_project(parts[1]);
    if (n == 1 && is(0, "datasets") && m == "GET") return list_datasets();
    if (n == 2 && is(0, "designResults") && m == "GET") return design_results(parts[1], req);
    if (n == 1 && is(0, "tasks") && m == "POST") return submit_task(req);
    if (n == 2 && is(0, "tasks") && m == "GET") return get_task(parts[1]);
    if (n == 3 && is(0, "tasks") && is(2, "cancel") && m == "POST") return cancel_task(parts[1]);
    if (n == 2 && is(0, "smiles") && is(1, "validate") && m == "POST") return validate_smiles(req);
    fail(404, "not_found", "no route " + m + " " + req.path);
  }
};

Api::Api(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Api::~Api() { impl_->shutdown(); }

void Api::shutdown() { impl_->shutdown(); }

const ServiceConfig &Api::config() const { return impl_->config; }

Response Api::handle(const Request &req) {
  try {
    return impl_->route(req);
  } catch (const HttpError &e) {
    return error_reply(e);
  } catch (const std::exception &e) {
    return error_reply({500, "internal", e.what(), {}});
  }
}

}  // namespace molgx::service
