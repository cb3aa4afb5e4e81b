#pragma once

// Word problem, Cayley balls and isometric-embedding checks for graphical
// C'(1/6) presentations.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsc/graph.hpp"
#include "gsc/smallcancel.hpp"

namespace gsc {

// One word per non-tree edge of the canonical spanning tree rooted at
// `basepoint`: tree path out, the edge, tree path back.
inline std::vector<Word> cycle_words(const LabelledGraph& g, VertexId basepoint) {
  if (g.vertex_count() == 0) return {};
  if (basepoint >= g.vertex_count()) throw InputError("cycle_words: unknown basepoint");
  if (!is_connected(g)) throw InputError("cycle_words: graph '" + g.name() + "' is not connected");
  auto tree = spanning_tree(g, basepoint);
  // Word from the basepoint to each vertex along the tree.
  std::vector<Word> to(g.vertex_count());
  for (VertexId v : tree.order) {
    if (!tree.parent_edge[v]) continue;
    const auto& e = g.edges()[*tree.parent_edge[v]];
    VertexId parent = e.from == v ? e.to : e.from;
    to[v] = to[parent];
    to[v].push_back(g.label_from(*tree.parent_edge[v], parent));
  }
  std::vector<Word> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (tree.in_tree[e]) continue;
    const auto& ed = g.edges()[e];
    Word w = to[ed.from];
    w.push_back(ed.label);
    auto back = inverse(to[ed.to]);
    w.insert(w.end(), back.begin(), back.end());
    out.push_back(std::move(w));
  }
  return out;
}

// Canonical representatives in the abelianisation Z^S / <relator exponent
// vectors>, via a Hermite normal form. Equal group elements get equal keys.
class AbelianInvariant {
 public:
  AbelianInvariant() = default;

  explicit AbelianInvariant(const Presentation& p) : n_(p.alphabet().size()) {
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& c : p.components())
      for (const auto& w : cycle_words(c, 0)) rows.push_back(exponents(w));
    hermite(rows);
  }

  std::vector<std::int64_t> exponents(const Word& w) const {
    std::vector<std::int64_t> v(n_, 0);
    for (Letter l : w) v[l.generator_index()] += l.is_inverse() ? -1 : 1;
    return v;
  }

  std::vector<std::int64_t> key(const Word& w) const {
    auto v = exponents(w);
    for (const auto& [col, row] : basis_) {
      auto d = row[col];
      auto q = floor_div(v[col], d);
      if (q != 0)
        for (std::size_t j = col; j < n_; ++j) v[j] -= q * row[j];
    }
    return v;
  }

 private:
  static std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    auto q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }

  void hermite(std::vector<std::vector<std::int64_t>> rows) {
    std::size_t col = 0;
    while (col < n_ && !rows.empty()) {
      // Euclid on column `col` across all rows.
      for (;;) {
        std::size_t pivot = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (rows[i][col] != 0 && (pivot == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[pivot][col])))
            pivot = i;
        if (pivot == rows.size()) break;
        bool done = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (i == pivot || rows[i][col] == 0) continue;
          auto q = rows[i][col] / rows[pivot][col];
          for (std::size_t j = col; j < n_; ++j) rows[i][j] -= q * rows[pivot][j];
          if (rows[i][col] != 0) done = false;
        }
        if (done) {
          auto r = rows[pivot];
          if (r[col] < 0)
            for (auto& x : r) x = -x;
          basis_.emplace_back(col, std::move(r));
          rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pivot));
          break;
        }
      }
      ++col;
      std::erase_if(rows, [](const auto& r) {
        return std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; });
      });
    }
  }

  std::size_t n_ = 0;
  std::vector<std::pair<std::size_t, std::vector<std::int64_t>>> basis_;
};

struct RewriteStep {
  std::size_t position = 0;  // start of the replaced subword (in the rotated word for cyclic steps)
  Word removed;
  Word inserted;
  std::size_t component = 0;
  bool cyclic = false;
  Word result;  // after free (and, for cyclic steps, cyclic) reduction
};

struct DehnResult {
  Word word;
  std::vector<RewriteStep> trace;
};

// Dehn-style rewriting: a subword reading a simple path p of some component
// that lies on a simple cycle c with |p| > |c|/2 is replaced by the
// complementary arc of c read in the same direction, which is strictly shorter.
class DehnEngine {
 public:
  explicit DehnEngine(Presentation p) : p_(std::move(p)) {
    auto verdict = check_cprime(p_.with_lambda(Rational(1, 6)));
    if (!verdict.pass)
      throw PreconditionError("presentation is not C'(1/6); the word problem solver refuses it");
    for (std::size_t c = 0; c < p_.size(); ++c) {
      auto g = girth(p_.component(c));
      girth_.push_back(g.is_finite() ? g.value() : std::numeric_limits<std::size_t>::max());
    }
    starts_.assign(p_.alphabet().letter_count(), {});
    for (std::size_t c = 0; c < p_.size(); ++c) {
      const auto& g = p_.component(c);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (const auto& a : g.arcs(v)) starts_[a.label.code].push_back({c, v});
    }
    abelian_ = AbelianInvariant(p_);
    mark_.resize(p_.size());
    for (std::size_t c = 0; c < p_.size(); ++c) mark_[c].assign(p_.component(c).vertex_count(), 0);
  }

  const Presentation& presentation() const { return p_; }
  const AbelianInvariant& abelian() const { return abelian_; }

  // Linear reduction: free reduction plus rewrites of (non-cyclic) subwords.
  DehnResult reduce(const Word& w) const {
    DehnResult r;
    r.word = free_reduce(w);
    while (auto step = best_rewrite(r.word, false)) {
      r.word = step->result;
      r.trace.push_back(std::move(*step));
    }
    return r;
  }

  // Triviality: linear reduction, then cyclic rewriting of a cyclically
  // reduced conjugate.
  bool is_trivial(const Word& w) const {
    Word x = reduce(w).word;
    if (x.empty()) return true;
    x = cyclic_reduce(x);
    while (!x.empty()) {
      auto step = best_rewrite(x, true);
      if (!step) return false;
      x = step->result;
    }
    return true;
  }

  bool is_equal(const Word& a, const Word& b) const { return is_trivial(concat(a, inverse(b))); }

 private:
  struct Start {
    std::size_t comp;
    VertexId vertex;
  };

  // Shortest path from `from` to `to` avoiding marked vertices (other than
  // `to`), of length < limit, never using `banned` edge. Returns its word.
  std::optional<Word> complement(std::size_t comp, VertexId from, VertexId to, std::size_t limit,
                                 EdgeId banned) const {
    const auto& g = p_.component(comp);
    if (limit == 0) return std::nullopt;
    std::unordered_map<VertexId, std::pair<VertexId, Letter>> parent;
    std::deque<std::pair<VertexId, std::size_t>> q{{from, 0}};
    parent.emplace(from, std::pair(from, Letter{}));
    while (!q.empty()) {
      auto [v, d] = q.front();
      q.pop_front();
      if (d + 1 >= limit) continue;
      for (const auto& a : g.arcs(v)) {
        if (a.edge == banned) continue;
        if (a.target != to && mark_[comp][a.target] == stamp_) continue;
        if (parent.count(a.target)) continue;
        parent.emplace(a.target, std::pair(v, a.label));
        if (a.target == to) {
          Word w;
          for (VertexId x = to; x != from;) {
            auto [pv, l] = parent[x];
            w.push_back(l);
            x = pv;
          }
          std::reverse(w.begin(), w.end());
          return w;
        }
        q.emplace_back(a.target, d + 1);
      }
    }
    return std::nullopt;
  }

  // Best rewrite by (resulting length, position, component, start vertex, length).
  std::optional<RewriteStep> best_rewrite(const Word& w, bool cyclic) const {
    const std::size_t n = w.size();
    std::optional<RewriteStep> best;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    std::vector<VertexId> path;
    std::vector<EdgeId> path_edges;
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& s : starts_[w[i].code]) {
        const auto& g = p_.component(s.comp);
        const std::size_t gir = girth_[s.comp];
        ++stamp_;
        path.assign(1, s.vertex);
        path_edges.clear();
        mark_[s.comp][s.vertex] = stamp_;
        VertexId cur = s.vertex;
        const std::size_t max_len = cyclic ? n : n - i;
        for (std::size_t len = 1; len <= max_len; ++len) {
          auto a = g.arc(cur, w[(i + len - 1) % n]);
          if (!a) break;
          cur = a->target;
          path_edges.push_back(a->edge);
          std::optional<Word> comp_word;
          bool closes = cur == s.vertex;
          if (closes) {
            if (len < 3) break;
            comp_word = Word{};  // the path is itself a simple cycle
          } else if (mark_[s.comp][cur] == stamp_) {
            break;  // no longer simple
          } else {
            mark_[s.comp][cur] = stamp_;
            path.push_back(cur);
            if (2 * len > gir) {
              // Inner vertices of p are marked; s.vertex is marked but is the target.
              comp_word = complement(s.comp, cur, s.vertex, len,
                                     len == 1 ? a->edge : std::numeric_limits<EdgeId>::max());
            }
          }
          if (comp_word) {
            std::size_t result_len = n - len + comp_word->size();
            if (result_len < best_len) {
              best_len = result_len;
              RewriteStep step;
              step.position = i;
              step.component = s.comp;
              step.cyclic = cyclic;
              for (std::size_t k = 0; k < len; ++k) step.removed.push_back(w[(i + k) % n]);
              // complement runs end -> start; the replacement runs start -> end.
              step.inserted = inverse(*comp_word);
              Word out;
              if (cyclic) {
                out = step.inserted;
                for (std::size_t k = len; k < n; ++k) out.push_back(w[(i + k) % n]);
                out = cyclic_reduce(out);
              } else {
                out.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
                out.insert(out.end(), step.inserted.begin(), step.inserted.end());
                out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(i + len), w.end());
                out = free_reduce(out);
              }
              step.result = std::move(out);
              best = std::move(step);
            }
          }
          if (closes) break;
        }
      }
    }
    return best;
  }

  Presentation p_;
  std::vector<std::size_t> girth_;
  std::vector<std::vector<Start>> starts_;
  AbelianInvariant abelian_;
  mutable std::vector<std::vector<std::uint64_t>> mark_;
  mutable std::uint64_t stamp_ = 0;
};

// Shortlex order on words (letter codes: a < a' < b < b' < ...).
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline constexpr std::size_t kDefaultBallBudget = 500000;

// B_r(1, Cay(G, S)) with shortlex-least normal forms.
class CayleyBall {
 public:
  struct Edge {
    std::size_t from, to;
    Letter label;
  };

  std::size_t radius = 0;
  bool truncated = false;
  std::vector<Word> elements;       // normal forms, in shortlex order; elements[0] is the identity
  std::vector<std::size_t> depth;   // word length of each element
  std::vector<Edge> adjacency;      // u . s = v, both inside the ball (on request)

  std::size_t size() const { return elements.size(); }
  // Number of elements of length <= r.
  std::size_t count_within(std::size_t r) const {
    return static_cast<std::size_t>(std::count_if(depth.begin(), depth.end(), [&](auto d) { return d <= r; }));
  }

  // Index of the element equal to w, if it lies in the ball.
  std::optional<std::size_t> find(const DehnEngine& engine, const Word& w) const {
    auto it = buckets_.find(engine.abelian().key(w));
    if (it == buckets_.end()) return std::nullopt;
    for (auto id : it->second)
      if (engine.is_equal(elements[id], w)) return id;
    return std::nullopt;
  }

  std::size_t insert(const DehnEngine& engine, Word w, std::size_t d) {
    auto id = elements.size();
    buckets_[engine.abelian().key(w)].push_back(id);
    elements.push_back(std::move(w));
    depth.push_back(d);
    return id;
  }

 private:
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> buckets_;
};

// Breadth-first growth by right multiplication; the first word found for an
// element is its shortlex-least geodesic.
inline CayleyBall cayley_ball(const DehnEngine& engine, std::size_t radius,
                              std::size_t max_elements = kDefaultBallBudget,
                              bool with_adjacency = false) {
  CayleyBall b;
  b.radius = radius;
  b.insert(engine, Word{}, 0);
  const auto letters = static_cast<std::uint32_t>(engine.presentation().alphabet().letter_count());
  std::size_t layer_begin = 0;
  for (std::size_t r = 0; r < radius && !b.truncated; ++r) {
    std::size_t layer_end = b.size();
    for (std::size_t u = layer_begin; u < layer_end && !b.truncated; ++u) {
      for (std::uint32_t code = 0; code < letters; ++code) {
        Letter l{code};
        if (!b.elements[u].empty() && b.elements[u].back() == l.inverse()) continue;
        Word w = b.elements[u];
        w.push_back(l);
        if (b.find(engine, w)) continue;
        if (b.size() >= max_elements) {
          b.truncated = true;
          break;
        }
        b.insert(engine, std::move(w), r + 1);
      }
    }
    layer_begin = layer_end;
  }
  for (std::size_t u = 0; with_adjacency && u < b.size(); ++u)
    for (std::uint32_t code = 0; code < letters; ++code) {
      Letter l{code};
      Word w = b.elements[u];
      w.push_back(l);
      if (auto v = b.find(engine, w)) b.adjacency.push_back({u, *v, l});
    }
  return b;
}

// Word length of g, provided it is at most `upper` <= 2 * ball.radius;
// nullopt otherwise. Either g lies in the ball, or g = y x with x on the
// sphere of radius ball.radius and y in the ball.
inline std::optional<std::size_t> word_length(const DehnEngine& engine, const CayleyBall& ball,
                                              const Word& g, std::size_t upper) {
  if (auto direct = ball.find(engine, g)) {
    if (ball.depth[*direct] > upper) return std::nullopt;
    return ball.depth[*direct];
  }
  if (ball.truncated || ball.radius >= upper) return std::nullopt;
  std::optional<std::size_t> best;
  for (std::size_t x = 0; x < ball.size(); ++x) {
    if (ball.depth[x] != ball.radius) continue;
    auto y = ball.find(engine, concat(g, inverse(ball.elements[x])));
    if (!y) continue;
    auto total = ball.radius + ball.depth[*y];
    if (!best || total < *best) best = total;
    if (*best == ball.radius + 1) break;
  }
  if (best && *best > upper) return std::nullopt;
  return best;
}

struct EmbeddingViolation {
  VertexId u, v;
  std::size_t graph_distance;
  std::size_t group_distance;
};

struct EmbeddingReport {
  std::size_t component = 0;
  VertexId basepoint = 0;
  std::size_t radius = 0;
  std::size_t vertices_checked = 0;
  std::size_t pairs_checked = 0;
  bool partial = false;  // only vertices within `radius` of the basepoint were used
  std::vector<EmbeddingViolation> violations;
};

// Maps each vertex v to the element read along a path from the basepoint and
// compares d_graph(u, v) with the word metric between the images.
// With `partial`, only vertices within `radius` of the basepoint are used;
// otherwise the component must fit in the radius.
inline EmbeddingReport verify_isometric_embedding(const DehnEngine& engine, std::size_t component,
                                                  std::size_t radius, bool partial = false,
                                                  std::size_t max_elements = kDefaultBallBudget) {
  const auto& p = engine.presentation();
  if (component >= p.size()) throw InputError("verify_isometric_embedding: no such component");
  const auto& g = p.component(component);
  EmbeddingReport rep;
  rep.component = component;
  rep.radius = radius;
  rep.partial = partial;
  auto from_base = distances(g, 0);
  std::size_t ecc = 0;
  for (const auto& d : from_base) ecc = std::max(ecc, d.value());
  if (ecc > radius && !partial)
    throw BudgetError("verify_isometric_embedding: radius " + std::to_string(radius) +
                      " does not cover the component (eccentricity " + std::to_string(ecc) + ")");
  std::vector<VertexId> used;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (from_base[v].value() <= radius) used.push_back(v);
  rep.vertices_checked = used.size();

  // Words from the basepoint along a BFS tree.
  auto tree = spanning_tree(g, 0);
  std::vector<Word> image(g.vertex_count());
  for (VertexId v : tree.order) {
    if (!tree.parent_edge[v]) continue;
    const auto& e = g.edges()[*tree.parent_edge[v]];
    VertexId parent = e.from == v ? e.to : e.from;
    image[v] = image[parent];
    image[v].push_back(g.label_from(*tree.parent_edge[v], parent));
  }
  std::size_t max_pair = 0;
  std::vector<std::vector<Distance>> dist(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    dist[i] = distances(g, used[i]);
    for (auto v : used) max_pair = std::max(max_pair, dist[i][v].value());
  }
  // |g| < d  iff  g lies in B_{d-1}; split d-1 across two balls.
  const std::size_t half = max_pair / 2;
  auto b = cayley_ball(engine, half, max_elements);
  if (b.truncated) throw BudgetError("verify_isometric_embedding: Cayley ball budget exceeded");
  for (std::size_t i = 0; i < used.size(); ++i)
    for (std::size_t j = i + 1; j < used.size(); ++j) {
      auto u = used[i], v = used[j];
      std::size_t dg = dist[i][v].value();
      Word h = free_reduce(concat(inverse(image[u]), image[v]));
      ++rep.pairs_checked;
      if (dg == 0) continue;
      auto len = word_length(engine, b, h, dg - 1);
      if (len) rep.violations.push_back({u, v, dg, *len});
    }
  return rep;
}

}  // namespace gsc
