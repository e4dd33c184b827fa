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

#include "molgx/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>

#include "molgx/canonical.hpp"
#include "molgx/dataset.hpp"
#include "molgx/isomorphism.hpp"
#include "molgx/smiles.hpp"

namespace molgx {
namespace {

using Clock = std::chrono::steady_clock;

// Cheap isomorphism invariant used only to bucket candidates before the
// pairwise matcher: sorted (element, degree, bond-order sum) triples.
std::vector<int> bucket_key(const MolGraph &g) {
  std::vector<int> k;
  for (const auto &a : g.atoms())
    k.push_back(a.element() * 10000 + a.degree() * 100 + a.used_valence());
  std::sort(k.begin(), k.end());
  return k;
}

struct ClassStore {
  std::map<std::vector<int>, std::vector<MolGraph>> buckets;

  // True when g is new.
  bool insert(const MolGraph &g) {
    auto &bucket = buckets[bucket_key(g)];
    for (const auto &h : bucket)
      if (is_isomorphic(g, h)) return false;
    bucket.push_back(g);
    return true;
  }
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<MolGraph> brute_force_enumerate(const ResourcePool &pool) {
  const int total = pool.total_atoms();
  if (total > kBruteForceMaxAtoms)
    throw BudgetTooLarge("brute force supports at most " +
                         std::to_string(kBruteForceMaxAtoms) + " atoms, pool has " +
                         std::to_string(total));
  const ElementTable &table = ElementTable::standard();
  std::vector<int> budget(table.size(), 0);
  for (const auto &[el, c] : pool.atoms) budget[table.require(el)] = c;

  std::vector<MolGraph> all;
  std::vector<MolGraph> level;
  for (ElementId e = 0; e < table.size(); ++e)
    if (budget[e] > 0) level.push_back(MolGraph::single_atom(e));
  while (!level.empty()) {
    all.insert(all.end(), level.begin(), level.end());
    ClassStore next;
    std::vector<MolGraph> grown;
    for (const auto &g : level) {
      std::vector<int> left = budget;
      for (const auto &a : g.atoms()) --left[a.element()];
      for (VertexId v = 0; v < g.num_atoms(); ++v) {
        for (ElementId e = 0; e < table.size(); ++e) {
          if (left[e] <= 0) continue;
          for (int b = 1; b <= 3; ++b) {
            if (g.free_valence(v) < b || table.max_valence(e) < b) continue;
            MolGraph h = add_atom_bond(g, v, e, b);
            if (next.insert(h)) grown.push_back(std::move(h));
          }
        }
      }
    }
    level = std::move(grown);
  }
  return all;
}

std::string report_to_json(const BenchReport &r) {
  nlohmann::json metrics = nlohmann::json::object();
  for (const auto &[k, v] : r.metrics)
    metrics[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  nlohmann::json files = nlohmann::json::array();
  for (const auto &f : r.files) files.push_back(f.string());
  nlohmann::json j = {{"scenario", r.scenario},
                      {"stats", nlohmann::json::parse(stats_to_json(r.stats))},
                      {"metrics", metrics},
                      {"files", files}};
  return j.dump(1);
}

bool satisfies(const Solution &s, const GenerationConfig &config) {
  return evaluate_structure(s.graph, config.pool.fragments, config.rules,
                            config.models)
      .accept;
}

BenchReport speed_bench(const GenerationConfig &config, int repetitions) {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  BenchReport r;
  r.scenario = "speed";
  GenerationConfig post = config;
  post.rules = RuleSet{};
  post.models.clear();
  post.pool.fragments.clear();
  post.limits.max_solutions = kUnbounded;
  if (post.limits.max_nodes_expanded == kUnbounded && config.limits.max_solutions != kUnbounded)
    throw ConfigError("speed bench needs a node budget when max_solutions is set");

  std::vector<double> online_rate, post_rate;
  std::size_t online_valid = 0, post_valid = 0, post_invalid = 0, post_nodes = 0;
  for (int rep = 0; rep < repetitions; ++rep) {
    GenerationStats s;
    const auto sols = generate_all(config, &s);
    online_rate.push_back(s.solutions_per_second);
    online_valid = sols.size();
    r.stats = s;

    const auto t0 = Clock::now();
    GenerationStats ps;
    const auto raw = generate_all(post, &ps);
    std::size_t valid = 0;
    for (const auto &sol : raw)
      if (satisfies(sol, config)) ++valid;
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    post_rate.push_back(secs > 0 ? static_cast<double>(valid) / secs : 0.0);
    post_valid = valid;
    post_invalid = raw.size() - valid;
    post_nodes = ps.nodes_expanded;
  }
  r.metrics["online_solutions_per_second"] = median(online_rate);
  r.metrics["posthoc_valid_per_second"] = median(post_rate);
  r.metrics["online_valid"] = static_cast<double>(online_valid);
  r.metrics["posthoc_valid"] = static_cast<double>(post_valid);
  r.metrics["posthoc_invalid"] = static_cast<double>(post_invalid);
  r.metrics["online_nodes"] = static_cast<double>(r.stats.nodes_expanded);
  r.metrics["posthoc_nodes"] = static_cast<double>(post_nodes);
  r.metrics["speedup"] = r.metrics["posthoc_valid_per_second"] > 0
                             ? r.metrics["online_solutions_per_second"] /
                                   r.metrics["posthoc_valid_per_second"]
                             : std::numeric_limits<double>::infinity();
  r.metrics["repetitions"] = repetitions;
  return r;
}

BenchReport filter_ablation(const GenerationConfig &config) {
  if (config.rules.empty()) throw ConfigError("filter ablation needs a non-empty rule set");
  if (config.limits.max_nodes_expanded == kUnbounded)
    throw ConfigError("filter ablation needs a finite max_nodes_expanded");
  BenchReport r;
  r.scenario = "filter_ablation";

  GenerationConfig on = config;
  on.limits.max_solutions = kUnbounded;
  GenerationStats on_stats;
  const auto on_sols = generate_all(on, &on_stats);
  std::size_t on_valid = 0;
  for (const auto &s : on_sols)
    if (check_rules(s.graph, config.rules, CheckMode::Output).pass) ++on_valid;

  GenerationConfig off = on;
  off.rules = RuleSet{};
  GenerationStats off_stats;
  const auto off_sols = generate_all(off, &off_stats);
  std::size_t off_valid = 0;
  for (const auto &s : off_sols)
    if (check_rules(s.graph, config.rules, CheckMode::Output).pass) ++off_valid;

  r.stats = on_stats;
  r.metrics["budget"] = static_cast<double>(config.limits.max_nodes_expanded);
  r.metrics["on_valid"] = static_cast<double>(on_valid);
  r.metrics["on_invalid"] = static_cast<double>(on_sols.size() - on_valid);
  r.metrics["off_valid"] = static_cast<double>(off_valid);
  r.metrics["off_invalid"] = static_cast<double>(off_sols.size() - off_valid);
  r.metrics["on_nodes"] = static_cast<double>(on_stats.nodes_expanded);
  r.metrics["off_nodes"] = static_cast<double>(off_stats.nodes_expanded);
  r.metrics["on_forbidden_prunes"] = static_cast<double>(on_stats.prune_counts.forbidden);
  return r;
}

std::vector<Point2> convex_hull(std::vector<Point2> p) {
  std::sort(p.begin(), p.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  p.erase(std::unique(p.begin(), p.end(),
                      [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
          p.end());
  if (p.size() < 3) return p;
  std::vector<Point2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i - 1]) <= 0) --k;
    h[k++] = p[i - 1];
  }
  h.resize(k - 1);
  return h;
}

double polygon_area(const std::vector<Point2> &hull) {
  if (hull.size() < 3) return 0.0;
  double a = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 &p = hull[i], &q = hull[(i + 1) % hull.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return std::abs(a) / 2.0;
}

bool inside_hull(const std::vector<Point2> &hull, Point2 p, double eps) {
  if (hull.empty()) return false;
  if (hull.size() == 1)
    return std::hypot(p.x - hull[0].x, p.y - hull[0].y) <= eps;
  if (hull.size() == 2) {
    const Point2 a = hull[0], b = hull[1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (std::abs(cross(a, b, p)) / len > eps) return false;
    const double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len);
    return t >= -eps && t <= 1 + eps;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 &a = hull[i], &b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross(a, b, p) / len < -eps) return false;
  }
  return true;
}

VarietyReport variety_report(const std::vector<MolGraph> &generated,
                             const std::vector<MolGraph> &training,
                             const FeatureSchema &schema) {
  if (generated.empty() || training.empty())
    throw EmptyDataset("variety report needs generated and training molecules");
  std::vector<FeatureVector> xs;
  for (const auto &g : training) xs.push_back(encode(g, schema));
  for (const auto &g : generated) xs.push_back(encode(g, schema));
  VarietyReport r;
  const std::size_t dim = schema.dimension();
  r.pca = pca_project(xs, std::max<std::size_t>(dim, 2));
  double spectrum = 0.0;
  for (double v : r.pca.explained_variance) spectrum += v;
  r.variance_residual = std::abs(spectrum - r.pca.total_variance);
  r.pca.explained_variance.resize(2);
  r.pca.components.resize(2);
  for (auto &p : r.pca.projections) p.resize(2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Point2 p{r.pca.projections[i][0], r.pca.projections[i][1]};
    (i < training.size() ? r.training : r.generated).push_back(p);
  }
  const auto th = convex_hull(r.training);
  const auto gh = convex_hull(r.generated);
  r.training_area = polygon_area(th);
  r.generated_area = polygon_area(gh);
  if (r.training_area > 0.0)
    r.area_ratio = r.generated_area / r.training_area;
  else
    r.area_ratio = r.generated_area > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
  // Tolerance scaled to the spread of the data.
  const double eps = 1e-9 * std::max(1.0, std::sqrt(r.pca.total_variance));
  std::size_t outside = 0;
  for (const auto &p : r.generated)
    if (!inside_hull(th, p, eps)) ++outside;
  r.fraction_outside = static_cast<double>(outside) / static_cast<double>(r.generated.size());
  return r;
}

void write_variety_csv(const VarietyReport &r, const std::filesystem::path &path) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot write " + path.string());
  out << "set,pc1,pc2\n";
  out.precision(12);
  for (const auto &p : r.training) out << "training," << p.x << ',' << p.y << '\n';
  for (const auto &p : r.generated) out << "generated," << p.x << ',' << p.y << '\n';
}


DuplicateCheck duplicate_check(const GenerationConfig &config) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> digests;
  DuplicateCheck r;
  r.stats = generate(config, [&](const Solution &s) {
    const std::string label = canonical_label(s.graph);
    digests.emplace_back(fnv1a(label, 0xcbf29ce484222325ULL), std::hash<std::string>{}(label));
    return true;
  });
  r.emitted = digests.size();
  std::sort(digests.begin(), digests.end());
  r.distinct = static_cast<std::size_t>(
      std::unique(digests.begin(), digests.end()) - digests.begin());
  return r;
}

OracleComparison compare_with_oracle(const ResourcePool &pool) {
  GenerationConfig c;
  c.pool = pool;
  const auto sols = generate_all(c);
  const auto oracle = brute_force_enumerate(pool);
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < oracle.size(); ++i) buckets[bucket_key(oracle[i])].push_back(i);
  std::vector<bool> used(oracle.size(), false);
  OracleComparison r;
  r.expected = oracle.size();
  r.emitted = sols.size();
  std::size_t matched = 0;
  for (const auto &s : sols) {
    const auto it = buckets.find(bucket_key(s.graph));
    bool fresh = false, seen = false;
    if (it != buckets.end()) {
      for (std::size_t i : it->second) {
        if (!is_isomorphic(s.graph, oracle[i])) continue;
        if (used[i]) {
          seen = true;
          continue;
        }
        used[i] = fresh = true;
        break;
      }
    }
    if (fresh) ++matched;
    else if (seen) ++r.duplicate;
    else ++r.spurious;
  }
  r.missing = r.expected - matched;
  return r;
}

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

fs::path resolve(const fs::path &dir, const std::string &p) {
  const fs::path path(p);
  return path.is_absolute() ? path : dir / path;
}

template <typename T>
T get_or(const json &j, const char *key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("scenario key '") + key + "': " + e.what());
  }
}

std::vector<std::string> strings(const json &j, const char *key) {
  return get_or<std::vector<std::string>>(j, key, {});
}

GenerationConfig scenario_config(const json &j, const fs::path &dir, const std::string &pool) {
  GenerationConfig c;
  c.pool = parse_pool(pool);
  for (const auto &f : strings(j, "fragments")) add_fragment_range(c.pool, f);
  const std::string rules = get_or<std::string>(j, "rules", "none");
  c.rules = resolve_rules(rules == "default" || rules == "none" ? rules
                                                                : resolve(dir, rules).string());
  for (const auto &m : strings(j, "models")) c.models.push_back(load_model(resolve(dir, m)));
  std::vector<std::pair<std::string, TargetRange>> targets;
  for (const auto &t : strings(j, "targets")) targets.push_back(parse_target(t));
  attach_targets(c.models, targets);
  c.limits.max_nodes_expanded = get_or<std::size_t>(j, "max_nodes", kUnbounded);
  c.limits.max_solutions = get_or<std::size_t>(j, "max_solutions", kUnbounded);
  c.limits.wall_clock_seconds = get_or<double>(j, "wall_clock_seconds", 3600.0);
  c.workers = get_or<std::size_t>(j, "workers", 1);
  for (const auto &s : strings(j, "seed_fragments")) c.seed_fragments.push_back(parse_smiles(s));
  c.validate();
  return c;
}

std::vector<std::string> pools_of(const json &j) {
  auto pools = strings(j, "pools");
  if (j.contains("pool")) pools.push_back(get_or<std::string>(j, "pool", ""));
  if (pools.empty()) throw ConfigError("scenario needs \"pool\" or \"pools\"");
  return pools;
}

BenchReport oracle_scenario(const json &j) {
  BenchReport r;
  r.scenario = "oracle";
  double failures = 0, classes = 0;
  const auto pools = pools_of(j);
  for (const auto &p : pools) {
    const auto cmp = compare_with_oracle(parse_pool(p));
    const std::string k = "pool[" + p + "].";
    r.metrics[k + "expected"] = static_cast<double>(cmp.expected);
    r.metrics[k + "missing"] = static_cast<double>(cmp.missing);
    r.metrics[k + "duplicate"] = static_cast<double>(cmp.duplicate);
    r.metrics[k + "spurious"] = static_cast<double>(cmp.spurious);
    classes += static_cast<double>(cmp.expected);
    if (!cmp.equal()) ++failures;
  }
  r.metrics["pools"] = static_cast<double>(pools.size());
  r.metrics["classes"] = classes;
  r.metrics["failed_pools"] = failures;
  return r;
}

BenchReport duplicates_scenario(const json &j, const fs::path &dir) {
  BenchReport r;
  r.scenario = "duplicates";
  const auto pools = pools_of(j);
  if (pools.size() != 1) throw ConfigError("duplicates scenario takes one pool");
  const auto d = duplicate_check(scenario_config(j, dir, pools[0]));
  r.stats = d.stats;
  r.metrics["emitted"] = static_cast<double>(d.emitted);
  r.metrics["distinct"] = static_cast<double>(d.distinct);
  r.metrics["duplicates"] = static_cast<double>(d.emitted - d.distinct);
  return r;
}

BenchReport ablation_scenario(const json &j, const fs::path &dir) {
  BenchReport r;
  r.scenario = "filter_ablation";
  bool dominance = true, zero_invalid = true;
  const auto pools = pools_of(j);
  for (const auto &p : pools) {
    json jj = j;
    if (!jj.contains("rules")) jj["rules"] = "default";
    const auto one = filter_ablation(scenario_config(jj, dir, p));
    for (const auto &[k, v] : one.metrics) r.metrics["pool[" + p + "]." + k] = v;
    dominance = dominance && one.metrics.at("on_valid") >= one.metrics.at("off_valid");
    zero_invalid = zero_invalid && one.metrics.at("on_invalid") == 0.0;
    r.stats.merge(one.stats);
  }
  r.metrics["pools"] = static_cast<double>(pools.size());
  r.metrics["dominance"] = dominance ? 1.0 : 0.0;
  r.metrics["zero_invalid"] = zero_invalid ? 1.0 : 0.0;
  return r;
}

BenchReport variety_scenario(const json &j, const fs::path &dir, const fs::path &out_dir) {
  const std::string data = get_or<std::string>(j, "data", "");
  if (data.empty()) throw ConfigError("variety scenario needs \"data\"");
  LoadOptions opts;
  opts.write_rejects_file = false;
  const Dataset train = load_csv(resolve(dir, data), opts).dataset;

  std::vector<MolGraph> generated;
  GenerationStats stats;
  if (j.contains("solutions")) {
    std::ifstream in(resolve(dir, get_or<std::string>(j, "solutions", "")));
    if (!in) throw FileError("cannot read solutions file");
    for (std::string line; std::getline(in, line);) {
      const auto tab = line.find('\t');
      const std::string smi = line.substr(0, tab);
      if (!smi.empty()) generated.push_back(parse_smiles(smi));
    }
  } else {
    const auto cfg = scenario_config(j, dir, pools_of(j).at(0));
    for (auto &s : generate_all(cfg, &stats)) generated.push_back(std::move(s.graph));
  }

  FeatureSchema schema;
  const auto models = strings(j, "models");
  if (!models.empty()) {
    schema = load_model(resolve(dir, models[0])).schema;
  } else {
    std::vector<FeatureFamily> fams;
    for (const auto &f : strings(j, "families")) fams.push_back(parse_family(f));
    schema = build_schema(train, fams.empty() ? default_families() : fams);
  }
  const auto v = variety_report(generated, train.graphs(), schema);
  BenchReport r;
  r.scenario = "variety";
  r.stats = stats;
  r.metrics["training_points"] = static_cast<double>(v.training.size());
  r.metrics["generated_points"] = static_cast<double>(v.generated.size());
  r.metrics["training_area"] = v.training_area;
  r.metrics["generated_area"] = v.generated_area;
  r.metrics["area_ratio"] = v.area_ratio;
  r.metrics["fraction_outside"] = v.fraction_outside;
  r.metrics["pc1_variance"] = v.pca.explained_variance[0];
  r.metrics["pc2_variance"] = v.pca.explained_variance[1];
  r.metrics["total_variance"] = v.pca.total_variance;
  r.metrics["variance_residual"] = v.variance_residual;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_variety_csv(v, out_dir / "variety.csv");
    r.files.push_back(out_dir / "variety.csv");
  }
  return r;
}

}  // namespace

BenchReport run_scenario(const fs::path &file, const fs::path &out_dir) {
  std::ifstream in(file);
  if (!in) throw FileError("cannot read scenario " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("scenario " + file.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  const fs::path dir = file.parent_path();
  const std::string kind = get_or<std::string>(j, "scenario", "");
  BenchReport r;
  if (kind == "oracle") {
    r = oracle_scenario(j);
  } else if (kind == "duplicates") {
    r = duplicates_scenario(j, dir);
  } else if (kind == "ablation") {
    r = ablation_scenario(j, dir);
  } else if (kind == "speed") {
    const auto pools = pools_of(j);
    r = speed_bench(scenario_config(j, dir, pools.at(0)), get_or<int>(j, "repetitions", 3));
  } else if (kind == "variety") {
    r = variety_scenario(j, dir, out_dir);
  } else {
    throw ConfigError("unknown scenario '" + kind +
                      "' (oracle, duplicates, ablation, speed, variety)");
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream out(out_dir / "bench_report.json");
    out << report_to_json(r) << '\n';
    r.files.push_back(out_dir / "bench_report.json");
  }
  return r;
}

}  // namespace molgx
