#pragma once

// The inductive construction: input graphs, covers, quotients and the
// certified transcript.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gsc/covers.hpp"
#include "gsc/group.hpp"
#include "gsc/io.hpp"
#include "gsc/quotients.hpp"
#include "gsc/smallcancel.hpp"
#include "gsc/walls.hpp"

namespace gsc {

struct PipelineBudgets {
  std::size_t max_cover_vertices = kDefaultCoverBudget;
  std::size_t max_cover_iterations = 8;
  std::size_t n_max = 7;
  std::size_t quotient_nodes = kDefaultQuotientNodes;
  std::size_t ball_elements = kDefaultBallBudget;
  std::size_t group_order = kDefaultGroupOrderBudget;
  std::size_t graph_attempts = 2000;
  std::size_t labelling_restarts = 200;
  std::size_t repair_steps = 5000;
};

struct PipelineConfig {
  Alphabet alphabet{std::vector<std::string>{"a", "b", "c"}};
  Rational lambda{1, 24};
  std::size_t degree = 3;
  // Allows lambda in (1/24, 1/6] and degree 2.
  bool overrides = false;
  // Vertex count of each input graph.
  std::vector<std::size_t> input_vertices{10, 14, 18};
  // Minimum number of Z2-homology stages per level.
  std::size_t min_cover_stages = 0;
  // Radius of the partial isometric-embedding check.
  std::size_t embed_radius = 4;
  std::uint64_t seed = 1;
  PipelineBudgets budgets;

  void validate() const {
    const Rational hi = overrides ? Rational(1, 6) : Rational(1, 24);
    if (lambda <= 0 || lambda > hi)
      throw PreconditionError("pipeline: lambda " + format_rational(lambda) + " outside (0, " +
                              format_rational(hi) + "]" + (overrides ? "" : "; set overrides to relax"));
    const std::size_t dmin = overrides ? 2 : 3;
    if (degree < dmin)
      throw PreconditionError("pipeline: degree " + std::to_string(degree) + " below " + std::to_string(dmin) +
                              (overrides ? "" : "; set overrides to relax"));
    if (alphabet.size() == 0) throw PreconditionError("pipeline: empty alphabet");
    for (auto n : input_vertices)
      if (n <= degree || (n * degree) % 2 != 0)
        throw PreconditionError("pipeline: no simple " + std::to_string(degree) + "-regular graph on " +
                                std::to_string(n) + " vertices");
  }
};

inline Json to_json(const PipelineBudgets& b) {
  return {{"max_cover_vertices", b.max_cover_vertices}, {"max_cover_iterations", b.max_cover_iterations},
          {"n_max", b.n_max},
          {"quotient_nodes", b.quotient_nodes},
          {"ball_elements", b.ball_elements},
          {"group_order", b.group_order},
          {"graph_attempts", b.graph_attempts},
          {"labelling_restarts", b.labelling_restarts},
          {"repair_steps", b.repair_steps}};
}

inline Json to_json(const PipelineConfig& c) {
  return {{"alphabet", to_json(c.alphabet)}, {"lambda", format_rational(c.lambda)},
          {"degree", c.degree},
          {"overrides", c.overrides},
          {"input_vertices", c.input_vertices},
          {"min_cover_stages", c.min_cover_stages},
          {"embed_radius", c.embed_radius},
          {"seed", c.seed},
          {"budgets", to_json(c.budgets)}};
}

inline PipelineConfig pipeline_config_from_json(const Json& j, const std::string& at = "") {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  PipelineConfig c;
  auto uint_field = [&](const Json& obj, const std::string& base, const char* key, std::size_t& out) {
    if (obj.contains(key)) out = detail::as_uint(obj[key], detail::child(base, key));
  };
  if (j.contains("alphabet")) c.alphabet = alphabet_from_json(j["alphabet"], detail::child(at, "alphabet"));
  if (j.contains("lambda")) c.lambda = rational_from_json(j["lambda"], detail::child(at, "lambda"));
  uint_field(j, at, "degree", c.degree);
  if (j.contains("overrides")) {
    if (!j["overrides"].is_boolean()) throw SchemaError(detail::child(at, "overrides"), "expected a boolean");
    c.overrides = j["overrides"].get<bool>();
  }
  if (j.contains("input_vertices")) {
    const auto p = detail::child(at, "input_vertices");
    const auto& arr = detail::as_array(j["input_vertices"], p);
    c.input_vertices.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) c.input_vertices.push_back(detail::as_uint(arr[i], detail::child(p, i)));
  }
  uint_field(j, at, "min_cover_stages", c.min_cover_stages);
  uint_field(j, at, "embed_radius", c.embed_radius);
  if (j.contains("seed")) c.seed = detail::as_uint(j["seed"], detail::child(at, "seed"));
  if (j.contains("budgets")) {
    const auto p = detail::child(at, "budgets");
    const auto& b = j["budgets"];
    if (!b.is_object()) throw SchemaError(p, "expected an object");
    auto& B = c.budgets;
    for (auto it = b.begin(); it != b.end(); ++it) {
      static const std::vector<std::string> known{"max_cover_vertices", "max_cover_iterations", "n_max",
                                                  "quotient_nodes", "ball_elements", "group_order",
                                                  "graph_attempts", "labelling_restarts", "repair_steps"};
      if (std::find(known.begin(), known.end(), it.key()) == known.end())
        throw SchemaError(detail::child(p, it.key()), "unknown budget");
    }
    uint_field(b, p, "max_cover_vertices", B.max_cover_vertices);
    uint_field(b, p, "max_cover_iterations", B.max_cover_iterations);
    uint_field(b, p, "n_max", B.n_max);
    uint_field(b, p, "quotient_nodes", B.quotient_nodes);
    uint_field(b, p, "ball_elements", B.ball_elements);
    uint_field(b, p, "group_order", B.group_order);
    uint_field(b, p, "graph_attempts", B.graph_attempts);
    uint_field(b, p, "labelling_restarts", B.labelling_restarts);
    uint_field(b, p, "repair_steps", B.repair_steps);
  }
  return c;
}

// ---- input sequence

struct InputStatistics {
  std::size_t graphs_generated = 0;
  std::size_t graphs_rejected = 0;
  std::size_t labelling_restarts = 0;
  std::size_t repair_steps = 0;
};

namespace detail {

inline std::string padded(std::size_t i, std::size_t n) {
  std::string s = std::to_string(i);
  std::string w = std::to_string(n > 0 ? n - 1 : 0);
  return "v" + std::string(w.size() > s.size() ? w.size() - s.size() : 0, '0') + s;
}

// Simple connected D-regular graph by the configuration model.
// Returns edge lists over vertices 0..n-1, or nullopt when the pairing is rejected.
inline std::optional<std::vector<std::pair<std::size_t, std::size_t>>> random_regular(std::size_t n, std::size_t d,
                                                                                     std::mt19937_64& rng) {
  std::vector<std::size_t> points;
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < d; ++k) points.push_back(v);
  std::shuffle(points.begin(), points.end(), rng);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
    auto u = points[i], v = points[i + 1];
    if (u == v) return std::nullopt;
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) return std::nullopt;
    edges.emplace_back(u, v);
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  std::size_t parts = n;
  for (auto [u, v] : edges)
    if (root(u) != root(v)) {
      parent[root(u)] = root(v);
      --parts;
    }
  if (parts != 1) return std::nullopt;
  return edges;
}

// Labels edges one at a time with letters unused at both endpoints.
// Returns false at a dead end.
inline bool random_reduced_labelling(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                     std::size_t letters, std::mt19937_64& rng, std::vector<Letter>& out) {
  std::vector<std::set<std::uint32_t>> used(n);
  out.assign(edges.size(), Letter{0});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    std::vector<std::uint32_t> ok;
    for (std::uint32_t c = 0; c < letters; ++c)
      if (!used[u].count(c) && !used[v].count(c ^ 1u)) ok.push_back(c);
    if (ok.empty()) return false;
    auto c = ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
    out[e] = Letter{c};
    used[u].insert(c);
    used[v].insert(c ^ 1u);
  }
  return true;
}

inline LabelledGraph build_labelled(const Alphabet& a, const std::string& name, std::size_t n,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                    const std::vector<Letter>& labels) {
  GraphSpec s;
  s.alphabet = a;
  s.name = name;
  for (std::size_t v = 0; v < n; ++v) s.vertices.push_back(padded(v, n));
  for (std::size_t e = 0; e < edges.size(); ++e)
    s.edges.push_back({padded(edges[e].first, n), padded(edges[e].second, n), labels[e]});
  return LabelledGraph(s);
}

// Relabels one edge of `path` (in the graph being built) with a random letter
// that keeps the labelling reduced. Returns false if no edge can change.
inline bool repair_once(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                        const LabelledGraph& g, const Path& path, std::size_t letters, std::mt19937_64& rng,
                        std::vector<Letter>& labels) {
  // Map graph edges back to generator edges through vertex names.
  std::vector<std::size_t> candidates;
  for (EdgeId ge : path.edges) {
    const auto& ed = g.edges()[ge];
    const auto& fn = g.vertex_name(ed.from);
    const auto& tn = g.vertex_name(ed.to);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto un = padded(edges[e].first, n), vn = padded(edges[e].second, n);
      if ((un == fn && vn == tn) || (un == tn && vn == fn)) candidates.push_back(e);
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  for (auto e : candidates) {
    auto [u, v] = edges[e];
    std::set<std::uint32_t> at_u, at_v;
    for (std::size_t f = 0; f < edges.size(); ++f) {
      if (f == e) continue;
      auto [x, y] = edges[f];
      auto c = labels[f].code;
      if (x == u) at_u.insert(c);
      if (y == u) at_u.insert(c ^ 1u);
      if (x == v) at_v.insert(c);
      if (y == v) at_v.insert(c ^ 1u);
    }
    std::vector<std::uint32_t> ok;
    for (std::uint32_t c = 0; c < letters; ++c)
      if (c != labels[e].code && !at_u.count(c) && !at_v.count(c ^ 1u)) ok.push_back(c);
    if (ok.empty()) continue;
    labels[e] = Letter{ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)]};
    return true;
  }
  return false;
}

}  // namespace detail

// D-regular graphs of strictly increasing girth whose labellings satisfy the
// strong condition for the sequence built so far. Graph i is named "theta<i>".
inline std::vector<LabelledGraph> make_input_sequence(const PipelineConfig& cfg, std::size_t count,
                                                      InputStatistics* stats_out = nullptr) {
  cfg.validate();
  if (count > cfg.input_vertices.size())
    throw PreconditionError("make_input_sequence: only " + std::to_string(cfg.input_vertices.size()) +
                            " input sizes configured");
  std::mt19937_64 rng(cfg.seed);
  InputStatistics stats;
  std::vector<LabelledGraph> seq;
  const std::size_t letters = cfg.alphabet.letter_count();
  std::size_t prev_girth = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t n = cfg.input_vertices[k];
    const std::string name = "theta" + std::to_string(k + 1);
    bool done = false;
    for (std::size_t attempt = 0; attempt < cfg.budgets.graph_attempts && !done; ++attempt) {
      auto edges = detail::random_regular(n, cfg.degree, rng);
      ++stats.graphs_generated;
      if (!edges) {
        ++stats.graphs_rejected;
        continue;
      }
      // Girth filter on an arbitrary labelling; girth does not depend on labels.
      std::vector<Letter> labels;
      bool labelled = false;
      for (std::size_t t = 0; t < 64 && !labelled; ++t) labelled = detail::random_reduced_labelling(n, *edges, letters, rng, labels);
      if (!labelled) {
        ++stats.graphs_rejected;
        continue;
      }
      auto probe = detail::build_labelled(cfg.alphabet, name, n, *edges, labels);
      auto g0 = girth(probe);
      if (g0.is_infinite() || g0.value() <= prev_girth) {
        ++stats.graphs_rejected;
        continue;
      }
      for (std::size_t restart = 0; restart < cfg.budgets.labelling_restarts && !done; ++restart) {
        ++stats.labelling_restarts;
        if (restart > 0 && !detail::random_reduced_labelling(n, *edges, letters, rng, labels)) continue;
        for (std::size_t step = 0; step <= cfg.budgets.repair_steps; ++step) {
          auto g = detail::build_labelled(cfg.alphabet, name, n, *edges, labels);
          auto seqp = seq;
          seqp.push_back(g);
          auto v = check_strong_condition(Presentation(cfg.alphabet, seqp, cfg.lambda));
          if (v.pass) {
            seq.push_back(std::move(g));
            prev_girth = g0.value();
            done = true;
            break;
          }
          if (step == cfg.budgets.repair_steps) break;
          ++stats.repair_steps;
          // Repair an occurrence lying in the new graph.
          const Path* target = nullptr;
          if (v.first && v.first->component == k) target = &v.first->path;
          else if (v.second && v.second->component == k) target = &v.second->path;
          if (!target || !detail::repair_once(n, *edges, g, *target, letters, rng, labels)) break;
        }
      }
    }
    if (!done) {
      if (stats_out) *stats_out = stats;
      throw BudgetError("make_input_sequence: no admissible labelled graph " + std::to_string(k + 1) + " on " +
                        std::to_string(n) + " vertices (" + std::to_string(stats.graphs_generated) +
                        " graphs, " + std::to_string(stats.labelling_restarts) + " labelling restarts, " +
                        std::to_string(stats.repair_steps) + " repair steps)");
    }
  }
  if (stats_out) *stats_out = stats;
  return seq;
}

// ---- construction state

struct LevelFailure {
  std::size_t level = 0;
  std::string stage;  // precondition | cover | quotient
  std::string message;
  bool budget = false;  // caused by an exhausted budget
};

struct LevelRecord {
  std::size_t level = 0;
  // Provenance: the cover of input `level` is the pullback along the regular
  // action of phi_1..phi_{level-1} followed by `z2_stages` Z2-homology covers.
  std::size_t pullback_order = 1;
  std::size_t z2_stages = 0;
  Cover cover;
  std::size_t girth = 0;
  bool regular = false;

  bool a_pass = false;
  std::optional<Piece> a_witness;
  std::size_t a_component = 0;

  bool walls_available = false;
  WallDiagnostics walls;

  std::optional<QuotientSearchResult> search;
  std::optional<FiniteQuotient> quotient;

  std::optional<BallInjectivity> injectivity;
  std::vector<WellDefinedness> well_defined;
  std::vector<Factorization> factorization;
  bool c_pass = false;
  bool d_pass = false;

  std::optional<EmbeddingReport> embedding;
};

struct ConstructionState {
  PipelineConfig config;
  std::vector<LabelledGraph> inputs;
  std::vector<LevelRecord> levels;
  std::optional<LevelFailure> failure;

  bool complete() const { return !failure && levels.size() == inputs.size(); }
};

namespace detail {

// (Theta^_1..Theta^_i, Theta_{i+1}..Theta_k) at the configured lambda.
inline Presentation a_sequence(const ConstructionState& s, const std::vector<LabelledGraph>& covers) {
  std::vector<LabelledGraph> comps = covers;
  for (std::size_t k = covers.size(); k < s.inputs.size(); ++k) comps.push_back(s.inputs[k]);
  return Presentation(s.config.alphabet, comps, s.config.lambda);
}

inline std::vector<LabelledGraph> cover_totals(const ConstructionState& s) {
  std::vector<LabelledGraph> out;
  for (const auto& l : s.levels) out.push_back(l.cover.total);
  return out;
}

inline Presentation level_presentation(const ConstructionState& s, std::size_t upto) {
  std::vector<LabelledGraph> comps;
  for (std::size_t k = 0; k < upto; ++k) comps.push_back(s.levels[k].cover.total);
  return Presentation(s.config.alphabet, comps, s.config.lambda);
}

inline QuotientTower tower_of(const ConstructionState& s, std::size_t upto) {
  std::vector<TowerLevel> t;
  for (std::size_t k = 0; k < upto; ++k) t.push_back({level_presentation(s, k + 1), *s.levels[k].quotient});
  return QuotientTower(std::move(t));
}

inline std::string cover_name(std::size_t level) { return "theta_hat" + std::to_string(level); }

// Theta-bar for the next level: input `level` pulled back along the regular
// action of the quotients found so far.
inline Cover pullback_cover(const ConstructionState& s, std::size_t level, std::size_t* order) {
  const auto& input = s.inputs[level - 1];
  if (level == 1) {
    if (order) *order = 1;
    return identity_cover(input);
  }
  std::vector<Action> factors;
  for (std::size_t k = 0; k + 1 < level; ++k) factors.push_back(s.levels[k].quotient->action);
  auto reg = regular_action(factors, s.config.budgets.group_order);
  if (order) *order = reg.n;
  return cover_from_action(input, reg, false, s.config.budgets.max_cover_vertices);
}

inline Cover named(Cover c, std::size_t level) {
  c.total = c.total.renamed(cover_name(level));
  return c;
}

// Recomputes the stored cover of `level` from its provenance.
inline Cover rebuild_cover(const ConstructionState& s, std::size_t level, std::size_t z2_stages,
                           Cover* last_stage, std::size_t* order) {
  Cover acc = pullback_cover(s, level, order);
  for (std::size_t k = 0; k < z2_stages; ++k) {
    auto step = z2_homology_cover(acc.total, s.config.budgets.max_cover_vertices);
    acc = compose(acc, step);
    if (last_stage) *last_stage = step;
  }
  return named(acc, level);
}

inline void record_walls(LevelRecord& rec, const std::optional<Cover>& last_stage) {
  rec.walls_available = last_stage.has_value();
  rec.walls = last_stage ? walling_diagnostics(walls_from_cover(*last_stage)) : WallDiagnostics{};
}

// (C), (D) and the isometric-embedding check for the last level of `s`.
inline void certify_last(ConstructionState& s) {
  auto& rec = s.levels.back();
  const std::size_t i = s.levels.size();
  auto tower = tower_of(s, i);
  auto cert = check_conditions(tower, s.config.budgets.ball_elements);
  rec.injectivity = cert.injectivity.back();
  rec.well_defined.clear();
  rec.factorization.clear();
  for (const auto& w : cert.well_defined)
    if (w.i == i) rec.well_defined.push_back(w);
  for (const auto& f : cert.factorization)
    if (f.l == i) rec.factorization.push_back(f);
  rec.c_pass = cert.c_bits.back();
  rec.d_pass = cert.d_bits.back();
  DehnEngine engine(tower.level(i).presentation);
  rec.embedding = verify_isometric_embedding(engine, i - 1, s.config.embed_radius, true, s.config.budgets.ball_elements);
}

inline void record_a(LevelRecord& rec, const ConstructionState& s, const std::vector<LabelledGraph>& covers) {
  auto v = check_cprime(a_sequence(s, covers));
  rec.a_pass = v.pass;
  rec.a_witness = v.witness;
  rec.a_component = v.component;
}

}  // namespace detail

// Builds level `s.levels.size() + 1`. On failure the state carries a marker
// and earlier levels are untouched.
inline void inductive_step(ConstructionState& s) {
  if (s.failure) throw PreconditionError("inductive_step: the construction already failed");
  const std::size_t level = s.levels.size() + 1;
  if (level > s.inputs.size()) throw PreconditionError("inductive_step: no input graph for level " + std::to_string(level));
  const auto& cfg = s.config;
  auto fail = [&](const std::string& stage, const std::string& msg, bool budget = false) {
    s.failure = LevelFailure{level, stage, msg, budget};
  };

  // The input prefix must satisfy the strong condition.
  std::vector<LabelledGraph> prefix(s.inputs.begin(), s.inputs.begin() + static_cast<std::ptrdiff_t>(level));
  auto strong = check_strong_condition(Presentation(cfg.alphabet, prefix, cfg.lambda));
  if (!strong.pass) {
    fail("precondition", "input " + std::to_string(level) + " violates the strong condition: word '" +
                             cfg.alphabet.format(strong.first->path.word) + "' occurs twice");
    return;
  }
  for (const auto& w : strong.warnings) {
    fail("precondition", w);
    return;
  }

  LevelRecord rec;
  rec.level = level;
  const std::size_t prev_girth = level > 1 ? s.levels.back().girth : 0;
  std::optional<Cover> last_stage;
  try {
    Cover acc = detail::pullback_cover(s, level, &rec.pullback_order);
    auto covers = detail::cover_totals(s);
    for (std::size_t stage = 0;; ++stage) {
      auto g = girth(acc.total);
      if (stage >= cfg.min_cover_stages && g.is_finite() && g.value() > prev_girth) {
        auto trial = covers;
        trial.push_back(acc.total);
        if (check_cprime(detail::a_sequence(s, trial)).pass) break;
      }
      if (stage == cfg.budgets.max_cover_iterations) {
        fail("cover", "no Z2-homology stage up to " + std::to_string(stage) + " satisfies (A_" +
                          std::to_string(level) + ") with growing girth", true);
        return;
      }
      auto step = z2_homology_cover(acc.total, cfg.budgets.max_cover_vertices);
      acc = compose(acc, step);
      last_stage = step;
      rec.z2_stages = stage + 1;
    }
    rec.cover = detail::named(acc, level);
  } catch (const BudgetError& e) {
    fail("cover", e.what(), true);
    return;
  }
  rec.girth = girth(rec.cover.total).value();
  rec.regular = regular_degree(rec.cover.total) == cfg.degree &&
                degree_profile(rec.cover.base).size() * rec.cover.degree == rec.cover.total.vertex_count();
  auto covers = detail::cover_totals(s);
  covers.push_back(rec.cover.total);
  detail::record_a(rec, s, covers);
  detail::record_walls(rec, last_stage);

  s.levels.push_back(std::move(rec));
  auto& cur = s.levels.back();
  try {
    DehnEngine engine(detail::level_presentation(s, level));
    cur.search = search_quotient(engine, cfg.budgets.n_max, level, cfg.budgets.quotient_nodes, cfg.budgets.ball_elements);
  } catch (const BudgetError& e) {
    fail("quotient", e.what(), true);
    return;
  }
  if (cur.search->status != QuotientSearchResult::Status::found) {
    fail("quotient", std::string("quotient search ") + to_string(cur.search->status) + " at n_max " +
                         std::to_string(cfg.budgets.n_max),
         cur.search->status == QuotientSearchResult::Status::budget);
    return;
  }
  cur.quotient = cur.search->quotient;
  detail::certify_last(s);
}

inline ConstructionState induction_basis(const PipelineConfig& cfg, std::vector<LabelledGraph> inputs) {
  cfg.validate();
  if (inputs.empty()) throw PreconditionError("induction_basis: no input graphs");
  for (const auto& g : inputs) {
    auto d = regular_degree(g);
    if (!d || *d != cfg.degree)
      throw PreconditionError("induction_basis: input '" + g.name() + "' is not " + std::to_string(cfg.degree) + "-regular");
    if (girth(g).is_infinite()) throw PreconditionError("induction_basis: input '" + g.name() + "' is a tree");
  }
  ConstructionState s;
  s.config = cfg;
  s.inputs = std::move(inputs);
  inductive_step(s);
  return s;
}

inline ConstructionState run_pipeline(const PipelineConfig& cfg, std::size_t levels) {
  auto inputs = make_input_sequence(cfg, levels);
  auto s = induction_basis(cfg, std::move(inputs));
  while (!s.failure && s.levels.size() < levels) inductive_step(s);
  return s;
}

// ---- transcript

inline constexpr const char* kWallingNote =
    "(B) is reported as diagnostics of the walls induced by the last Z2-homology stage; no lacunarity claim is made";

inline Json to_json(const WallDiagnostics& d, bool available) {
  Json j = {{"status", "diagnostic"}, {"note", kWallingNote}, {"available", available},
            {"walls", d.wall_count}, {"failed_candidates", d.failed_candidates},
            {"pairs", d.pairs}, {"sampled", d.sampled},
            {"min_walls_per_edge", d.min_walls_per_edge}, {"max_walls_per_edge", d.max_walls_per_edge},
            {"every_edge_on_exactly_one_wall", d.every_edge_on_exactly_one_wall}};
  // Ratios are rounded so that the document is stable across platforms.
  auto r = [](double x) { return std::round(x * 1e6) / 1e6; };
  j["min_ratio"] = r(d.min_ratio);
  j["max_ratio"] = r(d.max_ratio);
  j["mean_ratio"] = r(d.mean_ratio);
  return j;
}

inline Json path_json(const Alphabet& a, const Presentation& p, const Occurrence& o) {
  const auto& g = p.component(o.component);
  Json vs = Json::array();
  for (auto v : o.path.vertices) vs.push_back(g.vertex_name(v));
  return {{"component", g.name()}, {"vertices", vs}, {"word", a.format(o.path.word)}};
}

inline Json level_json(const ConstructionState& s, const LevelRecord& r) {
  const auto& a = s.config.alphabet;
  Json j;
  j["level"] = r.level;
  j["girth"] = r.girth;
  j["vertices"] = r.cover.total.vertex_count();
  j["cover_degree"] = r.cover.degree;
  j["regular"] = r.regular;
  Json factors = Json::array();
  for (std::size_t k = 1; k < r.level; ++k) factors.push_back(k);
  j["provenance"] = {{"input", s.inputs[r.level - 1].name()}, {"pullback_factors", factors},
                     {"pullback_order", r.pullback_order}, {"z2_stages", r.z2_stages}};
  j["cover"] = to_json(r.cover);

  Json A = {{"pass", r.a_pass}, {"lambda", format_rational(s.config.lambda)}, {"witness", nullptr}};
  if (r.a_witness) {
    auto covers = detail::cover_totals(s);
    covers.resize(r.level);
    auto seq = detail::a_sequence(s, covers);
    A["witness"] = {{"word", a.format(r.a_witness->word)}, {"first", path_json(a, seq, r.a_witness->a)},
                    {"second", path_json(a, seq, r.a_witness->b)}};
  }
  j["A"] = A;
  j["B"] = to_json(r.walls, r.walls_available);

  if (r.search)
    j["search"] = {{"status", to_string(r.search->status)}, {"n_max", r.search->n_max},
                   {"nodes", r.search->nodes}, {"largest_degree", r.search->largest_degree_searched},
                   {"ball_elements", r.search->ball_elements}, {"relators", r.search->relators}};
  else
    j["search"] = nullptr;
  if (r.quotient) {
    Json q = to_json(r.quotient->action, a);
    q["source"] = r.quotient->source;
    j["quotient"] = q;
  } else {
    j["quotient"] = nullptr;
  }

  if (!r.quotient) {
    j["C"] = {{"status", "not established"}};
    j["D"] = {{"status", "not established"}};
    j["embedding"] = nullptr;
    return j;
  }
  Json fails = Json::array();
  for (const auto& w : r.injectivity->failures) fails.push_back(a.format(w));
  j["C"] = {{"status", r.c_pass ? "pass" : "fail"}, {"radius", r.injectivity->radius},
            {"checked", r.injectivity->checked}, {"truncated", r.injectivity->truncated}, {"failures", fails}};
  Json wd = Json::array();
  for (const auto& w : r.well_defined) {
    Json f = nullptr;
    if (w.failure) f = {{"component", w.failure->component}, {"word", a.format(w.failure->word)}};
    wd.push_back({{"i", w.i}, {"j", w.j}, {"pass", w.pass}, {"failure", f}});
  }
  Json fz = Json::array();
  for (const auto& f : r.factorization)
    fz.push_back({{"j", f.j}, {"k", f.k}, {"l", f.l}, {"evaluations", f.evaluations}, {"mismatches", f.mismatches}});
  j["D"] = {{"status", r.d_pass ? "pass" : "fail"}, {"well_defined", wd}, {"factorization", fz}};
  const auto& e = *r.embedding;
  Json viol = Json::array();
  for (const auto& v : e.violations)
    viol.push_back({{"u", r.cover.total.vertex_name(v.u)}, {"v", r.cover.total.vertex_name(v.v)},
                    {"graph_distance", v.graph_distance}, {"group_distance", v.group_distance}});
  j["embedding"] = {{"pass", e.violations.empty()}, {"radius", e.radius}, {"partial", e.partial},
                    {"vertices_checked", e.vertices_checked}, {"pairs_checked", e.pairs_checked},
                    {"violations", viol}};
  return j;
}

// Per-level bits that `verify` must reproduce.
struct LevelBits {
  std::size_t level = 0;
  bool a = false;
  std::string c, d;  // pass | fail | not established
  bool regular = false;
  std::optional<bool> embedding;
  std::size_t girth = 0;
  friend bool operator==(const LevelBits&, const LevelBits&) = default;
};

inline std::vector<LevelBits> level_bits(const ConstructionState& s) {
  std::vector<LevelBits> out;
  for (const auto& r : s.levels) {
    LevelBits b;
    b.level = r.level;
    b.a = r.a_pass;
    b.c = r.quotient ? (r.c_pass ? "pass" : "fail") : "not established";
    b.d = r.quotient ? (r.d_pass ? "pass" : "fail") : "not established";
    b.regular = r.regular;
    if (r.embedding) b.embedding = r.embedding->violations.empty();
    b.girth = r.girth;
    out.push_back(b);
  }
  return out;
}

inline bool girths_increase(const ConstructionState& s) {
  for (std::size_t k = 1; k < s.levels.size(); ++k)
    if (s.levels[k].girth <= s.levels[k - 1].girth) return false;
  return true;
}

inline Json certify(const ConstructionState& s) {
  Json j;
  j["config"] = to_json(s.config);
  Json inputs = Json::array();
  for (const auto& g : s.inputs) inputs.push_back(to_json(g));
  j["inputs"] = inputs;
  Json levels = Json::array();
  Json girths = Json::array();
  for (const auto& r : s.levels) {
    levels.push_back(level_json(s, r));
    girths.push_back(r.girth);
  }
  j["levels"] = levels;
  j["girths"] = girths;
  j["girth_increasing"] = girths_increase(s);
  j["status"] = s.failure ? "failed" : (s.levels.empty() ? "empty" : "complete");
  j["failure"] = s.failure ? Json{{"level", s.failure->level}, {"stage", s.failure->stage},
                                  {"message", s.failure->message}, {"budget", s.failure->budget}}
                           : Json(nullptr);
  Json bits = Json::array();
  for (const auto& b : level_bits(s)) {
    bits.push_back({{"level", b.level}, {"A", b.a}, {"C", b.c}, {"D", b.d}, {"regular", b.regular},
                    {"embedding", b.embedding ? Json(*b.embedding) : Json(nullptr)}, {"girth", b.girth}});
  }
  j["bits"] = bits;
  return j;
}

struct VerifyReport {
  bool identical = true;
  std::vector<std::string> mismatches;
  std::vector<LevelBits> recomputed;
};

// Recomputes every level from the stored config, inputs, provenance and
// quotients, and compares the resulting bits and covers with the transcript.
inline VerifyReport verify_transcript(const Json& t) {
  VerifyReport rep;
  auto miss = [&](std::string m) {
    rep.identical = false;
    rep.mismatches.push_back(std::move(m));
  };
  ConstructionState s;
  s.config = pipeline_config_from_json(detail::require(t, "", "config"), "/config");
  const auto& ins = detail::as_array(detail::require(t, "", "inputs"), "/inputs");
  for (std::size_t k = 0; k < ins.size(); ++k) s.inputs.push_back(graph_from_json(ins[k], detail::child("/inputs", k)));
  const auto& lv = detail::as_array(detail::require(t, "", "levels"), "/levels");
  for (std::size_t k = 0; k < lv.size(); ++k) {
    const auto at = detail::child("/levels", k);
    const auto& lj = lv[k];
    const auto& prov = detail::require(lj, at, "provenance");
    LevelRecord rec;
    rec.level = k + 1;
    rec.z2_stages = detail::as_uint(detail::require(prov, at + "/provenance", "z2_stages"), at + "/provenance/z2_stages");
    if (rec.level > s.inputs.size()) throw SchemaError(at, "level without an input graph");
    std::optional<Cover> last;
    Cover last_stage;
    rec.cover = detail::rebuild_cover(s, rec.level, rec.z2_stages, &last_stage, &rec.pullback_order);
    if (rec.z2_stages > 0) last = last_stage;
    auto stored = cover_from_json(detail::require(lj, at, "cover"), at + "/cover");
    if (!(stored.total == rec.cover.total) || stored.projection != rec.cover.projection)
      miss("level " + std::to_string(rec.level) + ": stored cover differs from its provenance");
    rec.girth = girth(rec.cover.total).value();
    rec.regular = regular_degree(rec.cover.total) == s.config.degree &&
                  rec.cover.base.vertex_count() * rec.cover.degree == rec.cover.total.vertex_count();
    auto covers = detail::cover_totals(s);
    covers.push_back(rec.cover.total);
    detail::record_a(rec, s, covers);
    detail::record_walls(rec, last);
    const auto& qj = detail::require(lj, at, "quotient");
    if (!qj.is_null()) {
      auto act = action_from_json(qj, s.config.alphabet, at + "/quotient");
      std::string src = qj.contains("source") ? detail::as_string(qj["source"], at + "/quotient/source") : "";
      rec.quotient = FiniteQuotient{std::move(act), src};
    }
    s.levels.push_back(std::move(rec));
    if (s.levels.back().quotient) detail::certify_last(s);
    else break;
  }
  rep.recomputed = level_bits(s);
  const auto& bits = detail::as_array(detail::require(t, "", "bits"), "/bits");
  if (bits.size() != rep.recomputed.size()) miss("bit rows: stored " + std::to_string(bits.size()) +
                                                 ", recomputed " + std::to_string(rep.recomputed.size()));
  for (std::size_t k = 0; k < std::min(bits.size(), rep.recomputed.size()); ++k) {
    const auto& b = rep.recomputed[k];
    const auto& sj = bits[k];
    Json mine = {{"level", b.level}, {"A", b.a}, {"C", b.c}, {"D", b.d}, {"regular", b.regular},
                 {"embedding", b.embedding ? Json(*b.embedding) : Json(nullptr)}, {"girth", b.girth}};
    for (auto it = mine.begin(); it != mine.end(); ++it)
      if (!sj.contains(it.key()) || sj[it.key()] != it.value())
        miss("level " + std::to_string(b.level) + ": bit " + it.key() + " stored " +
             (sj.contains(it.key()) ? sj[it.key()].dump() : std::string("missing")) + ", recomputed " + it.value().dump());
  }
  if (detail::require(t, "", "girth_increasing") != Json(girths_increase(s))) miss("girth_increasing differs");
  return rep;
}

inline std::string summary_csv(const ConstructionState& s) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& b : level_bits(s)) {
    const auto& r = s.levels[b.level - 1];
    rows.push_back({std::to_string(b.level), std::to_string(r.girth), std::to_string(r.cover.total.vertex_count()),
                    std::to_string(r.cover.degree), r.quotient ? std::to_string(r.quotient->action.n) : "",
                    b.a ? "pass" : "fail", b.c, b.d});
  }
  return to_csv({"level", "girth", "vertices", "cover_degree", "quotient_n", "A", "C", "D"}, rows);
}

}  // namespace gsc
