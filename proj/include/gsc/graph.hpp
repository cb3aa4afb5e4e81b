#pragma once

// Finite simplicial graphs with reduced S-labellings.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsc/alphabet.hpp"
#include "gsc/error.hpp"

namespace gsc {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

// A non-negative integer or "infinite" (girth of a forest, distance between
// components). Never encoded as a sentinel.
class Distance {
 public:
  constexpr Distance() = default;
  constexpr explicit Distance(std::size_t v) : finite_(true), value_(v) {}
  static constexpr Distance infinite() { return Distance{}; }

  constexpr bool is_finite() const { return finite_; }
  constexpr bool is_infinite() const { return !finite_; }
  std::size_t value() const {
    if (!finite_) throw PreconditionError("value() of an infinite distance");
    return value_;
  }

  friend constexpr bool operator==(const Distance& a, const Distance& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr bool operator<(const Distance& a, const Distance& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.value_ < b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Distance& d) {
    if (d.finite_) return os << d.value_;
    return os << "inf";
  }

 private:
  bool finite_ = false;
  std::size_t value_ = 0;
};

// Unvalidated graph data as read from a file.
struct GraphSpec {
  struct Entry {
    std::string from;
    std::string to;
    Letter label;
  };
  Alphabet alphabet;
  std::string name;
  std::vector<std::string> vertices;
  std::vector<Entry> edges;
};

struct Violation {
  enum class Kind { loop, multiple_edge, involution, reducedness };
  Kind kind;
  std::string vertex;
  std::string detail;
};

inline const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::loop: return "loop";
    case Violation::Kind::multiple_edge: return "multiple-edge";
    case Violation::Kind::involution: return "involution";
    case Violation::Kind::reducedness: return "reducedness";
  }
  return "?";
}

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

struct MergedGraph {
  std::vector<std::string> names;  // sorted
  struct E {
    VertexId from, to;
    Letter label;
  };
  std::vector<E> edges;
  ValidationReport report;
};

// Sorts vertices, resolves entries to indices, merges duplicate entries and
// records every violation of simpliciality, involution and reducedness.
inline MergedGraph merge_spec(const GraphSpec& spec) {
  MergedGraph m;
  m.names = spec.vertices;
  std::sort(m.names.begin(), m.names.end());
  if (std::adjacent_find(m.names.begin(), m.names.end()) != m.names.end())
    throw InputError("graph '" + spec.name + "': duplicate vertex name");
  auto index_of = [&](const std::string& n) -> VertexId {
    auto it = std::lower_bound(m.names.begin(), m.names.end(), n);
    if (it == m.names.end() || *it != n)
      throw InputError("graph '" + spec.name + "': unknown vertex '" + n + "'");
    return static_cast<VertexId>(it - m.names.begin());
  };

  // Normalised to orientation (lo -> hi).
  struct Seen {
    Letter label;
    bool forward;  // entry was given as lo -> hi
  };
  std::map<std::pair<VertexId, VertexId>, std::vector<Seen>> pairs;
  for (const auto& e : spec.edges) {
    if (e.label.generator_index() >= spec.alphabet.size())
      throw InputError("graph '" + spec.name + "': label outside the alphabet");
    VertexId u = index_of(e.from), v = index_of(e.to);
    if (u == v) {
      m.report.violations.push_back(
          {Violation::Kind::loop, e.from, "loop labelled " + spec.alphabet.format(e.label)});
      continue;
    }
    bool fwd = u < v;
    Letter norm = fwd ? e.label : e.label.inverse();
    pairs[{std::min(u, v), std::max(u, v)}].push_back({norm, fwd});
  }
  for (const auto& [key, seen] : pairs) {
    const Seen& first = seen.front();
    bool conflict = false;
    for (const auto& s : seen) {
      if (s.label == first.label) continue;
      conflict = true;
      auto kind = s.forward == first.forward ? Violation::Kind::multiple_edge
                                             : Violation::Kind::involution;
      std::string detail = m.names[key.first] + " -- " + m.names[key.second] + " carries " +
                           spec.alphabet.format(first.label) + " and " +
                           spec.alphabet.format(s.label);
      m.report.violations.push_back({kind, m.names[key.first], detail});
      break;
    }
    if (!conflict) m.edges.push_back({key.first, key.second, first.label});
  }
  // Reducedness: outgoing labels at each vertex are pairwise distinct.
  std::vector<std::vector<std::pair<Letter, VertexId>>> out(m.names.size());
  for (const auto& e : m.edges) {
    out[e.from].push_back({e.label, e.to});
    out[e.to].push_back({e.label.inverse(), e.from});
  }
  for (VertexId v = 0; v < out.size(); ++v) {
    auto arcs = out[v];
    std::sort(arcs.begin(), arcs.end());
    for (std::size_t i = 1; i < arcs.size(); ++i) {
      if (arcs[i].first == arcs[i - 1].first &&
          (i < 2 || arcs[i - 2].first != arcs[i].first)) {
        m.report.violations.push_back(
            {Violation::Kind::reducedness, m.names[v],
             "two outgoing edges labelled " + spec.alphabet.format(arcs[i].first) + " (to " +
                 m.names[arcs[i - 1].second] + " and " + m.names[arcs[i].second] + ")"});
      }
    }
  }
  return m;
}

}  // namespace detail

inline ValidationReport validate(const GraphSpec& spec) { return detail::merge_spec(spec).report; }

inline std::string describe(const ValidationReport& r) {
  std::string s;
  for (const auto& v : r.violations) {
    if (!s.empty()) s += "; ";
    s += std::string(to_string(v.kind)) + " at " + v.vertex + ": " + v.detail;
  }
  return s;
}

// A finite simplicial graph with a reduced S-labelling. Instances always
// satisfy the three labelling invariants and are immutable.
//
// Each edge stores the label of one orientation (from -> to); the reverse
// orientation reads the inverse letter.
class LabelledGraph {
 public:
  struct Edge {
    VertexId from;
    VertexId to;
    Letter label;
  };
  struct Arc {
    Letter label;
    VertexId target;
    EdgeId edge;
  };

  LabelledGraph() = default;

  explicit LabelledGraph(const GraphSpec& spec) {
    auto merged = detail::merge_spec(spec);
    if (!merged.report.ok())
      throw InputError("graph '" + spec.name + "' is not a reduced labelled graph: " +
                       describe(merged.report));
    init(spec.alphabet, spec.name, std::move(merged.names), merged.edges);
  }

  // Builds from indexed data; vertex names need not be sorted. Validates.
  static LabelledGraph from_indexed(const Alphabet& alphabet, std::string name,
                                    const std::vector<std::string>& names,
                                    const std::vector<Edge>& edges) {
    GraphSpec spec;
    spec.alphabet = alphabet;
    spec.name = std::move(name);
    spec.vertices = names;
    spec.edges.reserve(edges.size());
    for (const auto& e : edges) spec.edges.push_back({names[e.from], names[e.to], e.label});
    return LabelledGraph(spec);
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& vertex_names() const { return names_; }
  const std::string& vertex_name(VertexId v) const { return names_.at(v); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Arc>& arcs(VertexId v) const { return arcs_.at(v); }
  std::size_t degree(VertexId v) const { return arcs_.at(v).size(); }

  std::optional<VertexId> find_vertex(const std::string& n) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), n);
    if (it == names_.end() || *it != n) return std::nullopt;
    return static_cast<VertexId>(it - names_.begin());
  }

  VertexId vertex(const std::string& n) const {
    auto v = find_vertex(n);
    if (!v) throw InputError("graph '" + name_ + "': unknown vertex '" + n + "'");
    return *v;
  }

  // The unique neighbour of v along an outgoing edge labelled l.
  std::optional<VertexId> step(VertexId v, Letter l) const {
    for (const auto& a : arcs_[v])
      if (a.label == l) return a.target;
    return std::nullopt;
  }

  std::optional<Arc> arc(VertexId v, Letter l) const {
    for (const auto& a : arcs_[v])
      if (a.label == l) return a;
    return std::nullopt;
  }

  // Label read along edge e leaving `from`.
  Letter label_from(EdgeId e, VertexId from) const {
    const auto& ed = edges_[e];
    return ed.from == from ? ed.label : ed.label.inverse();
  }

  std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
    for (const auto& a : arcs_[u])
      if (a.target == v) return a.edge;
    return std::nullopt;
  }

  GraphSpec spec() const {
    GraphSpec s;
    s.alphabet = alphabet_;
    s.name = name_;
    s.vertices = names_;
    for (const auto& e : edges_) s.edges.push_back({names_[e.from], names_[e.to], e.label});
    return s;
  }

  LabelledGraph renamed(std::string n) const {
    LabelledGraph g = *this;
    g.name_ = std::move(n);
    return g;
  }

  friend bool operator==(const LabelledGraph& a, const LabelledGraph& b) {
    if (!(a.alphabet_ == b.alphabet_) || a.name_ != b.name_ || a.names_ != b.names_ ||
        a.edges_.size() != b.edges_.size())
      return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const auto &x = a.edges_[i], &y = b.edges_[i];
      if (x.from != y.from || x.to != y.to || x.label != y.label) return false;
    }
    return true;
  }

 private:
  void init(const Alphabet& alphabet, std::string name, std::vector<std::string> names,
            const std::vector<detail::MergedGraph::E>& edges) {
    alphabet_ = alphabet;
    name_ = std::move(name);
    names_ = std::move(names);
    for (const auto& e : edges) edges_.push_back({e.from, e.to, e.label});
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.from, a.to) < std::pair(b.from, b.to);
    });
    arcs_.assign(names_.size(), {});
    for (EdgeId i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      arcs_[e.from].push_back({e.label, e.to, i});
      arcs_[e.to].push_back({e.label.inverse(), e.from, i});
    }
    for (auto& list : arcs_)
      std::sort(list.begin(), list.end(),
                [](const Arc& a, const Arc& b) { return a.target < b.target; });
  }

  Alphabet alphabet_;
  std::string name_;
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Arc>> arcs_;
};

// A walk in a labelled graph. Length is the number of edges.
struct Path {
  std::vector<VertexId> vertices;  // length + 1 entries
  std::vector<EdgeId> edges;
  Word word;

  std::size_t length() const { return edges.size(); }
  VertexId start() const { return vertices.front(); }
  VertexId end() const { return vertices.back(); }
  bool is_closed() const { return !vertices.empty() && vertices.front() == vertices.back(); }

  bool is_non_backtracking() const {
    for (std::size_t i = 1; i < edges.size(); ++i)
      if (edges[i] == edges[i - 1]) return false;
    return true;
  }

  // No repeated vertex, except that a closed path may return to its start.
  bool is_simple() const {
    std::set<VertexId> seen;
    std::size_t n = vertices.size();
    if (is_closed() && n > 1) --n;
    for (std::size_t i = 0; i < n; ++i)
      if (!seen.insert(vertices[i]).second) return false;
    return true;
  }

  bool is_cycle() const { return is_closed() && length() >= 3 && is_simple(); }
};

struct LiftResult {
  std::optional<Path> path;
  std::size_t failed_at = 0;  // meaningful when !path

  explicit operator bool() const { return path.has_value(); }
};

// The unique path from `start` reading `word`, or the index of the first
// letter that has no outgoing edge. Deterministic because labellings are reduced.
inline LiftResult lift_word(const LabelledGraph& g, VertexId start, const Word& word) {
  if (start >= g.vertex_count()) throw InputError("lift_word: unknown start vertex");
  Path p;
  p.vertices.reserve(word.size() + 1);
  p.vertices.push_back(start);
  VertexId cur = start;
  for (std::size_t i = 0; i < word.size(); ++i) {
    auto a = g.arc(cur, word[i]);
    if (!a) return LiftResult{std::nullopt, i};
    p.edges.push_back(a->edge);
    p.word.push_back(word[i]);
    cur = a->target;
    p.vertices.push_back(cur);
  }
  return LiftResult{std::move(p), 0};
}

// Path-metric distances from `from`; unreachable vertices are infinite.
inline std::vector<Distance> distances(const LabelledGraph& g, VertexId from) {
  if (from >= g.vertex_count()) throw InputError("distances: unknown vertex");
  std::vector<Distance> d(g.vertex_count(), Distance::infinite());
  std::vector<std::size_t> raw(g.vertex_count(), std::numeric_limits<std::size_t>::max());
  std::deque<VertexId> q{from};
  raw[from] = 0;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    for (const auto& a : g.arcs(v)) {
      if (raw[a.target] == std::numeric_limits<std::size_t>::max()) {
        raw[a.target] = raw[v] + 1;
        q.push_back(a.target);
      }
    }
  }
  for (std::size_t i = 0; i < d.size(); ++i)
    if (raw[i] != std::numeric_limits<std::size_t>::max()) d[i] = Distance(raw[i]);
  return d;
}

inline std::vector<VertexId> ball(const LabelledGraph& g, VertexId center, std::size_t radius) {
  auto d = distances(g, center);
  std::vector<VertexId> out;
  for (VertexId v = 0; v < d.size(); ++v)
    if (d[v].is_finite() && d[v].value() <= radius) out.push_back(v);
  return out;
}

// Connected component index per vertex, numbered in order of least vertex.
inline std::vector<std::size_t> component_labels(const LabelledGraph& g, std::size_t* count = nullptr) {
  const auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(g.vertex_count(), none);
  std::size_t next = 0;
  for (VertexId s = 0; s < g.vertex_count(); ++s) {
    if (comp[s] != none) continue;
    std::deque<VertexId> q{s};
    comp[s] = next;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (const auto& a : g.arcs(v))
        if (comp[a.target] == none) {
          comp[a.target] = next;
          q.push_back(a.target);
        }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

inline bool is_connected(const LabelledGraph& g) {
  std::size_t c = 0;
  component_labels(g, &c);
  return c <= 1;
}

// Splits into connected components (named "<name>#k" when more than one).
inline std::vector<LabelledGraph> connected_components(const LabelledGraph& g) {
  std::size_t count = 0;
  auto comp = component_labels(g, &count);
  if (count <= 1) return {g};
  std::vector<LabelledGraph> out;
  for (std::size_t c = 0; c < count; ++c) {
    GraphSpec s;
    s.alphabet = g.alphabet();
    s.name = g.name() + "#" + std::to_string(c);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (comp[v] == c) s.vertices.push_back(g.vertex_name(v));
    for (const auto& e : g.edges())
      if (comp[e.from] == c) s.edges.push_back({g.vertex_name(e.from), g.vertex_name(e.to), e.label});
    out.emplace_back(s);
  }
  return out;
}

// Length of a shortest simple cycle. One BFS per root; every non-tree edge
// (x, y) met from root r closes a walk of length d(x) + d(y) + 1, and the
// minimum over all roots is attained by a simple cycle.
inline Distance girth(const LabelledGraph& g) {
  const auto unseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = unseen;
  std::vector<std::size_t> dist(g.vertex_count());
  std::vector<EdgeId> parent_edge(g.vertex_count());
  for (VertexId r = 0; r < g.vertex_count(); ++r) {
    std::fill(dist.begin(), dist.end(), unseen);
    dist[r] = 0;
    parent_edge[r] = std::numeric_limits<EdgeId>::max();
    std::deque<VertexId> q{r};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      if (2 * dist[v] + 1 >= best) break;
      for (const auto& a : g.arcs(v)) {
        if (a.edge == parent_edge[v]) continue;
        if (dist[a.target] == unseen) {
          dist[a.target] = dist[v] + 1;
          parent_edge[a.target] = a.edge;
          q.push_back(a.target);
        } else {
          best = std::min(best, dist[v] + dist[a.target] + 1);
        }
      }
    }
  }
  return best == unseen ? Distance::infinite() : Distance(best);
}

// Sorted multiset of vertex degrees.
inline std::vector<std::size_t> degree_profile(const LabelledGraph& g) {
  std::vector<std::size_t> d;
  for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

// The common degree if the graph is regular.
inline std::optional<std::size_t> regular_degree(const LabelledGraph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  std::size_t d = g.degree(0);
  for (VertexId v = 1; v < g.vertex_count(); ++v)
    if (g.degree(v) != d) return std::nullopt;
  return d;
}

// Canonical BFS spanning tree from `root`: neighbours visited in vertex order.
// Returns the parent edge of each reached vertex (root and unreached: nullopt)
// and the BFS order.
struct SpanningTree {
  std::vector<std::optional<EdgeId>> parent_edge;
  std::vector<VertexId> order;
  std::vector<bool> in_tree;  // per edge
};

inline SpanningTree spanning_tree(const LabelledGraph& g, VertexId root) {
  SpanningTree t;
  t.parent_edge.assign(g.vertex_count(), std::nullopt);
  t.in_tree.assign(g.edge_count(), false);
  std::vector<bool> seen(g.vertex_count(), false);
  std::deque<VertexId> q{root};
  seen[root] = true;
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    t.order.push_back(v);
    for (const auto& a : g.arcs(v)) {
      if (seen[a.target]) continue;
      seen[a.target] = true;
      t.parent_edge[a.target] = a.edge;
      t.in_tree[a.edge] = true;
      q.push_back(a.target);
    }
  }
  return t;
}

// First Betti number of a connected graph.
inline std::size_t betti_number(const LabelledGraph& g) {
  std::size_t comps = 0;
  component_labels(g, &comps);
  return g.edge_count() + comps - g.vertex_count();
}

}  // namespace gsc
