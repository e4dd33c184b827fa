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

#include "molgx/enumerate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <future>
#include <mutex>
#include <thread>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "molgx/canonical.hpp"
#include "molgx/smiles.hpp"
#include "molgx/substructure.hpp"

namespace molgx {
namespace {

using Clock = std::chrono::steady_clock;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return std::string(s.substr(b, s.find_last_not_of(" \t") - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p - start)));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

double parse_real(const std::string &text, std::string_view what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (text.empty() || used != text.size() || !std::isfinite(v))
    throw ConfigError("bad number '" + text + "' in " + std::string(what));
  return v;
}

long long parse_int(const std::string &text, std::string_view what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (text.empty() || used != text.size())
    throw ConfigError("bad integer '" + text + "' in " + std::string(what));
  return v;
}

bool is_cyclic(const MolGraph &g) { return g.num_bonds() >= g.num_atoms(); }

// Same ordering as the initial colours of canonical_form.
using AtomKey = std::array<int, kMaxValence + 4>;

AtomKey atom_key(const MolGraph &g, VertexId v) {
  const Atom &a = g.atom(v);
  AtomKey k;
  k.fill(std::numeric_limits<int>::max());
  k[0] = a.element();
  k[1] = a.formal_charge();
  k[2] = a.degree();
  std::size_t i = 3;
  for (const auto &nb : a.neighbors()) k[i++] = nb.order;
  std::sort(k.begin() + 3, k.begin() + static_cast<std::ptrdiff_t>(i));
  return k;
}

std::optional<PruneCause> monotone_failure(const MolGraph &g,
                                           const std::vector<FragmentRange> &fragments,
                                           const RuleSet &rules) {
  for (const auto &f : fragments) {
    if (f.max != kUnbounded && count_fragment(g, f.fragment) > f.max)
      return PruneCause::OverMaxFragment;
  }
  const RuleVerdict v = check_rules(g, rules, CheckMode::Prune);
  if (!v.pass)
    return v.kind == RuleKind::Forbidden ? PruneCause::Forbidden
                                         : PruneCause::OverMaxFragment;
  return std::nullopt;
}

// Models sharing a schema share one encoding.
struct ModelBank {
  const std::vector<TrainedModel> *models = nullptr;
  std::vector<std::size_t> schema_of;  // model -> slot
  std::vector<const FeatureSchema *> schemas;

  explicit ModelBank(const std::vector<TrainedModel> &ms) : models(&ms) {
    std::vector<std::string> ids;
    for (const auto &m : ms) {
      const std::string id = m.schema.identity();
      const auto it = std::find(ids.begin(), ids.end(), id);
      if (it == ids.end()) {
        schema_of.push_back(ids.size());
        ids.push_back(id);
        schemas.push_back(&m.schema);
      } else {
        schema_of.push_back(static_cast<std::size_t>(it - ids.begin()));
      }
    }
  }

  // Fills predictions; returns the first model index out of range or -1.
  int predict(const MolGraph &g, std::vector<double> &out) const {
    std::vector<FeatureVector> x(schemas.size());
    for (std::size_t s = 0; s < schemas.size(); ++s) x[s] = encode(g, *schemas[s]);
    out.clear();
    int failed = -1;
    for (std::size_t i = 0; i < models->size(); ++i) {
      const TrainedModel &m = (*models)[i];
      out.push_back(molgx::predict(m, x[schema_of[i]]));
      if (failed < 0 && m.target_range && !m.target_range->contains(out.back()))
        failed = static_cast<int>(i);
    }
    return failed;
  }
};

// Shared across worker threads.
struct Control {
  Clock::time_point start = Clock::now();
  std::atomic<std::size_t> nodes{0};
  std::atomic<std::size_t> solutions{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::string limit;

  void trip(const std::string &why) {
    std::lock_guard<std::mutex> lock(mu);
    if (limit.empty()) limit = why;
    stop = true;
  }
};

class Branch {
 public:
  Branch(const GenerationConfig &config, const ModelBank &bank, Control &control,
         std::function<bool(Solution &&)> emit)
      : config_(config), bank_(bank), control_(control), emit_(std::move(emit)) {}

  // Orderly search below a single-atom root.
  void run_orderly(const MolGraph &root) { run(root, nullptr); }

  // Visited-set search below a seed graph; only cyclic graphs are emitted
  // since every tree is reached from the atom roots.
  void run_seeded(const MolGraph &root, std::unordered_set<std::string> &visited) {
    if (!is_cyclic(root)) return;
    if (!visited.insert(canonical_label(root)).second) return;
    run(root, &visited);
  }

  GenerationStats stats;

 private:
  struct Frame {
    std::vector<Augmentation> children;
    std::size_t next = 0;
  };

  bool limit_hit() {
    if (control_.stop) return true;
    const auto &lim = config_.limits;
    if (config_.cancel && config_.cancel->load()) {
      control_.trip("cancelled");
      return true;
    }
    if (control_.nodes.load() >= lim.max_nodes_expanded) {
      control_.trip("max_nodes_expanded");
      return true;
    }
    if (control_.solutions.load() >= lim.max_solutions) {
      control_.trip("max_solutions");
      return true;
    }
    const double elapsed =
        std::chrono::duration<double>(Clock::now() - control_.start).count();
    if (elapsed >= lim.wall_clock_seconds) {
      control_.trip("wall_clock_seconds");
      return true;
    }
    return false;
  }

  // Processes one node; fills children when the node is expanded further.
  bool visit(const MolGraph &g, const std::string &label,
             std::unordered_set<std::string> *visited, Frame &frame) {
    if (limit_hit()) return false;
    ++control_.nodes;
    ++stats.nodes_expanded;
    if (config_.progress_nodes) config_.progress_nodes->fetch_add(1, std::memory_order_relaxed);
    const AtomBudget remaining = remaining_atoms(g, config_.pool);

    if (const auto cause = monotone_failure(g, config_.pool.fragments, config_.rules)) {
      if (*cause == PruneCause::Forbidden) ++stats.prune_counts.forbidden;
      else ++stats.prune_counts.over_max_fragment;
      return false;
    }

    if (!visited || is_cyclic(g)) {
      bool accept = true;
      for (const auto &f : config_.pool.fragments) {
        if (f.min > 0 && count_fragment(g, f.fragment) < f.min) {
          accept = false;
          break;
        }
      }
      if (accept) accept = check_rules(g, config_.rules, CheckMode::Output).pass;
      Solution s;
      if (accept && !config_.models.empty())
        accept = bank_.predict(g, s.predictions) < 0;
      if (accept) {
        s.graph = g;
        s.smiles = write_smiles(g);
        ++control_.solutions;
        ++stats.solutions_emitted;
        if (!emit_(std::move(s))) {
          control_.trip("cancelled");
          return false;
        }
      }
    }

    if (std::all_of(remaining.begin(), remaining.end(), [](int c) { return c <= 0; })) {
      ++stats.prune_counts.termination;
      return false;
    }
    if (g.total_free_valence() == 0) {
      ++stats.prune_counts.valence;
      return false;
    }
    if (visited) {
      frame.children = seeded_children(g, remaining, *visited);
    } else {
      frame.children =
          canonical_augmentations(g, label, remaining, &stats.canonical_rejections);
    }
    frame.next = 0;
    return !frame.children.empty();
  }

  std::vector<Augmentation> seeded_children(const MolGraph &g,
                                            const AtomBudget &remaining,
                                            std::unordered_set<std::string> &visited) {
    std::vector<Augmentation> out;
    const ElementTable &table = g.table();
    for (VertexId v = 0; v < g.num_atoms(); ++v) {
      const int fv = g.free_valence(v);
      for (ElementId e = 0; e < table.size(); ++e) {
        if (remaining[e] <= 0) continue;
        const int top = std::min({3, fv, table.max_valence(e)});
        for (int b = 1; b <= top; ++b) {
          Augmentation a{v, e, b, add_atom_bond(g, v, e, b), {}};
          a.child_label = canonical_label(a.child);
          if (!visited.insert(a.child_label).second) {
            ++stats.canonical_rejections;
            continue;
          }
          out.push_back(std::move(a));
        }
      }
    }
    return out;
  }

  void run(const MolGraph &root, std::unordered_set<std::string> *visited) {
    std::vector<Frame> stack;
    Frame first;
    if (!visit(root, canonical_label(root), visited, first)) return;
    stack.push_back(std::move(first));
    while (!stack.empty()) {
      if (control_.stop) return;
      Frame &top = stack.back();
      if (top.next == top.children.size()) {
        stack.pop_back();
        continue;
      }
      Augmentation &a = top.children[top.next++];
      const MolGraph child = std::move(a.child);
      const std::string label = std::move(a.child_label);
      Frame next;
      if (visit(child, label, visited, next)) stack.push_back(std::move(next));
    }
  }

  const GenerationConfig &config_;
  const ModelBank &bank_;
  Control &control_;
  std::function<bool(Solution &&)> emit_;
};

}  // namespace

int ResourcePool::total_atoms() const {
  int n = 0;
  for (const auto &[el, c] : atoms) n += c;
  return n;
}

ResourcePool parse_pool(std::string_view text) {
  ResourcePool pool;
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty atom pool");
  for (const auto &item : split(t, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2 || parts[0].empty())
      throw ConfigError("pool entry '" + item + "' is not El:count");
    if (!ElementTable::standard().find(parts[0]))
      throw ConfigError("unknown element '" + parts[0] + "' in pool");
    const long long c = parse_int(parts[1], "pool");
    if (c < 0) throw ConfigError("negative count for " + parts[0]);
    if (pool.atoms.count(parts[0]))
      throw ConfigError("element " + parts[0] + " listed twice in pool");
    pool.atoms[parts[0]] = static_cast<int>(c);
  }
  return pool;
}

std::string format_pool(const ResourcePool &pool) {
  std::string out;
  for (const auto &[el, c] : pool.atoms) {
    if (!out.empty()) out += ',';
    out += el + ':' + std::to_string(c);
  }
  return out;
}

void add_fragment_range(ResourcePool &pool, std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw ConfigError("fragment range '" + std::string(text) + "' is not SMILES:min:max");
  FragmentRange f;
  f.smiles = parts[0];
  f.fragment = parse_smiles(parts[0]);
  if (!f.fragment.is_connected())
    throw ConfigError("fragment " + parts[0] + " is disconnected");
  const long long lo = parse_int(parts[1], "fragment range");
  if (lo < 0) throw ConfigError("fragment minimum must be >= 0");
  f.min = static_cast<std::size_t>(lo);
  if (parts[2] == "inf") {
    f.max = kUnbounded;
  } else {
    const long long hi = parse_int(parts[2], "fragment range");
    if (hi < lo) throw ConfigError("fragment range min exceeds max");
    f.max = static_cast<std::size_t>(hi);
  }
  pool.fragments.push_back(std::move(f));
}

ResourcePool derive_pool(const Dataset &train) {
  if (train.empty()) throw EmptyDataset("cannot derive a pool from no molecules");
  ResourcePool pool;
  for (const auto &r : train.records) {
    std::map<std::string, int> counts;
    for (VertexId v = 0; v < r.graph.num_atoms(); ++v) ++counts[r.graph.symbol(v)];
    for (const auto &[el, c] : counts) pool.atoms[el] = std::max(pool.atoms[el], c);
  }
  return pool;
}

std::pair<std::string, TargetRange> parse_target(std::string_view text) {
  // The property name may not contain ':'; bounds may be negative.
  const auto parts = split(text, ':');
  if (parts.size() != 3 || parts[0].empty())
    throw ConfigError("target '" + std::string(text) + "' is not prop:low:high");
  const double lo = parse_real(parts[1], "target");
  const double hi = parse_real(parts[2], "target");
  if (lo > hi) throw ConfigError("target low exceeds high");
  return {parts[0], TargetRange{lo, hi}};
}

void attach_targets(std::vector<TrainedModel> &models,
                    const std::vector<std::pair<std::string, TargetRange>> &targets) {
  for (auto &m : models)
    m.target_range = TargetRange{-std::numeric_limits<double>::infinity(),
                                 std::numeric_limits<double>::infinity()};
  for (const auto &[prop, range] : targets) {
    bool used = false;
    for (auto &m : models) {
      if (m.property != prop) continue;
      m.target_range = range;
      used = true;
    }
    if (!used) throw ConfigError("target '" + prop + "' matches no model property");
  }
}

RuleSet resolve_rules(const std::string &spec) {
  if (spec == "default") return default_rules();
  if (spec == "none" || spec.empty()) return RuleSet{};
  return load_rules(spec);
}

void GenerationConfig::validate() const {
  const ElementTable &table = ElementTable::standard();
  for (const auto &[el, c] : pool.atoms) {
    if (!table.find(el)) throw ConfigError("unknown element '" + el + "' in pool");
    if (c < 0) throw ConfigError("negative count for " + el);
  }
  for (const auto &f : pool.fragments) {
    if (f.fragment.empty() || !f.fragment.is_connected())
      throw ConfigError("fragment " + f.smiles + " must be connected");
    if (f.min > f.max) throw ConfigError("fragment " + f.smiles + ": min exceeds max");
  }
  if (limits.max_solutions == kUnbounded && limits.max_nodes_expanded == kUnbounded &&
      !std::isfinite(limits.wall_clock_seconds))
    throw ConfigError("at least one generation limit must be finite");
  if (!(limits.wall_clock_seconds > 0.0))
    throw ConfigError("wall_clock_seconds must be positive");
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto &m = models[i];
    if (!m.target_range)
      throw ConfigError("model " + std::to_string(i) + " has no target range");
    if (m.schema.dimension() != m.dimension())
      throw ConfigError("model " + std::to_string(i) + " schema has " +
                        std::to_string(m.schema.dimension()) + " patterns, model " +
                        std::to_string(m.dimension()) + " features");
  }
  for (const auto &s : seed_fragments) {
    if (s.empty() || !s.is_connected()) throw ConfigError("seed fragments must be connected");
    for (int c : remaining_atoms(s, pool))
      if (c < 0) throw ConfigError("seed " + write_smiles(s) + " exceeds the atom pool");
  }
  if (workers == 0) throw ConfigError("workers must be >= 1");
}

void GenerationStats::merge(const GenerationStats &o) {
  nodes_expanded += o.nodes_expanded;
  canonical_rejections += o.canonical_rejections;
  prune_counts.valence += o.prune_counts.valence;
  prune_counts.forbidden += o.prune_counts.forbidden;
  prune_counts.over_max_fragment += o.prune_counts.over_max_fragment;
  prune_counts.termination += o.prune_counts.termination;
  solutions_emitted += o.solutions_emitted;
  if (o.limit_reached && !limit_reached) {
    limit_reached = true;
    limit = o.limit;
  }
}

std::string stats_to_json(const GenerationStats &s) {
  nlohmann::json j = {
      {"nodes_expanded", s.nodes_expanded},
      {"canonical_rejections", s.canonical_rejections},
      {"prune_counts",
       {{"valence", s.prune_counts.valence},
        {"forbidden", s.prune_counts.forbidden},
        {"over_max_fragment", s.prune_counts.over_max_fragment},
        {"termination", s.prune_counts.termination}}},
      {"solutions_emitted", s.solutions_emitted},
      {"elapsed_seconds", s.elapsed_seconds},
      {"solutions_per_second", s.solutions_per_second},
      {"limit_reached", s.limit_reached},
      {"limit", s.limit.empty() ? nlohmann::json(nullptr) : nlohmann::json(s.limit)}};
  return j.dump(1);
}

std::string format_solution(const Solution &s) {
  std::string line = s.smiles;
  for (double p : s.predictions) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", p);
    line += '\t';
    line += buf;
  }
  return line;
}

AtomBudget remaining_atoms(const MolGraph &g, const ResourcePool &pool) {
  const ElementTable &table = g.table();
  AtomBudget r(table.size(), 0);
  for (const auto &[el, c] : pool.atoms) {
    if (const auto id = table.find(el)) r[*id] = c;
  }
  for (const auto &a : g.atoms()) --r[a.element()];
  return r;
}

std::vector<Augmentation> canonical_augmentations(const MolGraph &g,
                                                  const std::string &g_label,
                                                  const AtomBudget &remaining,
                                                  std::size_t *rejections) {
  std::vector<Augmentation> out;
  std::vector<std::string> taken;
  const ElementTable &table = g.table();
  const auto fresh = static_cast<VertexId>(g.num_atoms());
  auto reject = [&] {
    if (rejections) ++*rejections;
  };
  for (VertexId v = 0; v < g.num_atoms(); ++v) {
    const int fv = g.free_valence(v);
    for (ElementId e = 0; e < table.size(); ++e) {
      if (remaining[e] <= 0) continue;
      const int top = std::min({3, fv, table.max_valence(e)});
      for (int b = 1; b <= top; ++b) {
        MolGraph child = add_atom_bond(g, v, e, b);
        // Canonical ranks respect the initial colour order, so a non-cut
        // vertex with a larger (element, charge, degree, orders) key than the
        // new atom would be chosen instead and the parent test must fail.
        const auto noncut = child.non_cut_vertices();
        const AtomKey fresh_key = atom_key(child, fresh);
        if (std::any_of(noncut.begin(), noncut.end(), [&](VertexId u) {
              return atom_key(child, u) > fresh_key;
            })) {
          reject();
          continue;
        }
        CanonicalForm cf = canonical_form(child);
        if (std::find(taken.begin(), taken.end(), cf.label) != taken.end()) {
          reject();
          continue;
        }
        // Canonical parent: drop the highest-ranked non-cut vertex.
        VertexId last = fresh;
        for (VertexId u : noncut)
          if (cf.rank[u] > cf.rank[last]) last = u;
        bool ok = last == fresh;
        if (!ok) {
          const Atom &m = child.atom(last);
          ok = m.element() == e && m.degree() == 1 && m.neighbors()[0].order == b &&
               canonical_label(child.without_atom(last)) == g_label;
        }
        if (!ok) {
          reject();
          continue;
        }
        taken.push_back(cf.label);
        out.push_back({v, e, b, std::move(child), std::move(cf.label)});
      }
    }
  }
  return out;
}

std::vector<Augmentation> canonical_augmentations(const MolGraph &g,
                                                  const AtomBudget &remaining) {
  return canonical_augmentations(g, canonical_label(g), remaining);
}

Evaluation evaluate_structure(const MolGraph &g,
                              const std::vector<FragmentRange> &fragments,
                              const RuleSet &rules,
                              const std::vector<TrainedModel> &models) {
  Evaluation ev;
  const ModelBank bank(models);
  const int out_of_range = bank.predict(g, ev.predictions);
  for (const auto &f : fragments) {
    const std::size_t n = count_fragment(g, f.fragment);
    if (n < f.min || n > f.max) {
      ev.accept = false;
      ev.reason = "fragment:" + f.smiles;
      return ev;
    }
  }
  const RuleVerdict v = check_rules(g, rules, CheckMode::Output);
  if (!v.pass) {
    ev.accept = false;
    ev.reason = "rule:" + v.rule_id;
    return ev;
  }
  if (out_of_range >= 0) {
    ev.accept = false;
    ev.reason = "target:" + std::to_string(out_of_range);
  }
  return ev;
}

std::optional<PruneCause> check_termination(const MolGraph &g,
                                            const AtomBudget &remaining,
                                            const std::vector<FragmentRange> &fragments,
                                            const RuleSet &rules) {
  if (auto cause = monotone_failure(g, fragments, rules)) return cause;
  if (std::all_of(remaining.begin(), remaining.end(), [](int c) { return c <= 0; }))
    return PruneCause::Termination;
  if (g.total_free_valence() == 0) return PruneCause::Valence;
  return std::nullopt;
}

GenerationStats generate(const GenerationConfig &config, const SolutionSink &sink) {
  config.validate();
  const ModelBank bank(config.models);
  Control control;
  const ElementTable &table = ElementTable::standard();

  // Roots: one per available element (table order), then the seeds as one
  // branch sharing a visited set.
  std::vector<MolGraph> roots;
  for (ElementId e = 0; e < table.size(); ++e) {
    const auto it = config.pool.atoms.find(table.specs()[e].symbol);
    if (it != config.pool.atoms.end() && it->second > 0)
      roots.push_back(MolGraph::single_atom(e));
  }
  const std::size_t branches = roots.size() + (config.seed_fragments.empty() ? 0 : 1);

  auto run_branch = [&](std::size_t i, Branch &b) {
    if (i < roots.size()) {
      b.run_orderly(roots[i]);
    } else {
      std::unordered_set<std::string> visited;
      for (const auto &s : config.seed_fragments) b.run_seeded(s, visited);
    }
  };

  GenerationStats total;
  if (config.workers <= 1 || branches <= 1) {
    for (std::size_t i = 0; i < branches && !control.stop; ++i) {
      Branch b(config, bank, control, [&](Solution &&s) { return sink(s); });
      run_branch(i, b);
      total.merge(b.stats);
    }
  } else {
    // Branches run concurrently into buffers; output flushed in root order.
    struct Result {
      std::vector<Solution> solutions;
      GenerationStats stats;
    };
    std::vector<std::future<Result>> futures(branches);
    std::atomic<std::size_t> next{0};
    std::vector<std::promise<Result>> promises(branches);
    for (std::size_t i = 0; i < branches; ++i) futures[i] = promises[i].get_future();
    std::vector<std::thread> threads;
    const std::size_t nthreads = std::min(config.workers, branches);
    for (std::size_t t = 0; t < nthreads; ++t) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < branches; i = next++) {
          Result r;
          Branch b(config, bank, control, [&r](Solution &&s) {
            r.solutions.push_back(std::move(s));
            return true;
          });
          try {
            run_branch(i, b);
            r.stats = b.stats;
            promises[i].set_value(std::move(r));
          } catch (...) {
            control.trip("cancelled");
            promises[i].set_exception(std::current_exception());
          }
        }
      });
    }
    bool sink_open = true;
    std::exception_ptr error;
    std::size_t emitted = 0;
    for (std::size_t i = 0; i < branches; ++i) {
      Result r;
      try {
        r = futures[i].get();
      } catch (...) {
        if (!error) error = std::current_exception();
        continue;
      }
      for (auto &s : r.solutions) {
        if (!sink_open || emitted >= config.limits.max_solutions) break;
        ++emitted;
        if (!sink(s)) {
          sink_open = false;
          control.trip("cancelled");
        }
      }
      total.merge(r.stats);
    }
    for (auto &th : threads) th.join();
    if (error) std::rethrow_exception(error);
    total.solutions_emitted = std::min(total.solutions_emitted, emitted);
  }

  if (control.stop) {
    total.limit_reached = true;
    total.limit = control.limit;
  }
  total.elapsed_seconds =
      std::chrono::duration<double>(Clock::now() - control.start).count();
  total.solutions_per_second =
      total.elapsed_seconds > 0.0
          ? static_cast<double>(total.solutions_emitted) / total.elapsed_seconds
          : 0.0;
  return total;
}

std::vector<Solution> generate_all(const GenerationConfig &config,
                                   GenerationStats *stats) {
  std::vector<Solution> out;
  const GenerationStats s = generate(config, [&out](const Solution &sol) {
    out.push_back(sol);
    return true;
  });
  if (stats) *stats = s;
  return out;
}

}  // namespace molgx
