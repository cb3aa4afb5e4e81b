#pragma once

// Finite covers of labelled graphs: Z2-homology covers, their iterates, and
// covers pulled back from permutation actions.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gsc/graph.hpp"
#include "gsc/perm.hpp"
#include "gsc/smallcancel.hpp"

namespace gsc {

inline constexpr std::size_t kDefaultCoverBudget = 200000;

struct Cover {
  LabelledGraph total;
  LabelledGraph base;
  std::vector<VertexId> projection;  // total vertex -> base vertex
  std::size_t degree = 1;
};

// Checks that `projection` is a label-preserving local bijection with
// fibers of equal size. Returns an empty string when it is.
inline std::string covering_defect(const Cover& c) {
  if (c.projection.size() != c.total.vertex_count()) return "projection has wrong size";
  std::vector<std::size_t> fiber(c.base.vertex_count(), 0);
  for (VertexId x = 0; x < c.total.vertex_count(); ++x) {
    VertexId b = c.projection[x];
    if (b >= c.base.vertex_count()) return "projection outside base";
    ++fiber[b];
    if (c.total.degree(x) != c.base.degree(b))
      return "degree mismatch at " + c.total.vertex_name(x);
    for (const auto& a : c.total.arcs(x)) {
      auto target = c.base.step(b, a.label);
      if (!target || *target != c.projection[a.target])
        return "edge at " + c.total.vertex_name(x) + " does not project to a base edge";
    }
  }
  for (auto f : fiber)
    if (f != c.degree) return "fiber size differs from degree";
  return {};
}

namespace detail {

inline Cover assemble_cover(const LabelledGraph& base, const std::string& name,
                            const std::vector<std::string>& names,
                            const std::vector<VertexId>& base_of,
                            const std::vector<LabelledGraph::Edge>& edges, std::size_t degree) {
  Cover c;
  c.total = LabelledGraph::from_indexed(base.alphabet(), name, names, edges);
  c.base = base;
  c.degree = degree;
  c.projection.assign(c.total.vertex_count(), 0);
  for (std::size_t i = 0; i < names.size(); ++i) c.projection[c.total.vertex(names[i])] = base_of[i];
  return c;
}

}  // namespace detail

// The cover associated with pi_1 -> H_1(.; Z2). Vertices are pairs
// (v, x) with x in GF(2)^b1; tree edges of the canonical BFS spanning tree
// keep x, the j-th non-tree edge flips coordinate j.
inline Cover z2_homology_cover(const LabelledGraph& g, std::size_t max_vertices = kDefaultCoverBudget) {
  if (g.vertex_count() == 0 || !is_connected(g))
    throw InputError("z2_homology_cover: graph '" + g.name() + "' must be connected and nonempty");
  const std::size_t b1 = betti_number(g);
  if (b1 >= 40 || (g.vertex_count() << b1) > max_vertices)
    throw BudgetError("z2_homology_cover: " + std::to_string(g.vertex_count()) + " x 2^" +
                      std::to_string(b1) + " vertices exceeds the budget of " +
                      std::to_string(max_vertices));
  auto tree = spanning_tree(g, 0);
  std::vector<std::uint64_t> flip(g.edge_count(), 0);
  std::size_t j = 0;
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    if (!tree.in_tree[e]) flip[e] = std::uint64_t{1} << j++;

  const std::uint64_t fiber = std::uint64_t{1} << b1;
  std::vector<std::string> names;
  std::vector<VertexId> base_of;
  names.reserve(g.vertex_count() * fiber);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (std::uint64_t x = 0; x < fiber; ++x) {
      std::string n = g.vertex_name(v);
      if (b1 > 0) {
        n += '|';
        for (std::size_t k = 0; k < b1; ++k) n += ((x >> k) & 1) ? '1' : '0';
      }
      names.push_back(std::move(n));
      base_of.push_back(v);
    }
  std::vector<LabelledGraph::Edge> edges;
  edges.reserve(g.edge_count() * fiber);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto& ed = g.edges()[e];
    for (std::uint64_t x = 0; x < fiber; ++x)
      edges.push_back({static_cast<VertexId>(ed.from * fiber + x),
                       static_cast<VertexId>(ed.to * fiber + (x ^ flip[e])), ed.label});
  }
  return detail::assemble_cover(g, g.name() + "^z2", names, base_of, edges, fiber);
}

// outer covers inner.total; the result covers inner.base.
inline Cover compose(const Cover& inner, const Cover& outer) {
  Cover c;
  c.total = outer.total;
  c.base = inner.base;
  c.degree = inner.degree * outer.degree;
  c.projection.resize(outer.projection.size());
  for (std::size_t x = 0; x < outer.projection.size(); ++x)
    c.projection[x] = inner.projection[outer.projection[x]];
  return c;
}

inline Cover identity_cover(const LabelledGraph& g) {
  Cover c{g, g, {}, 1};
  c.projection.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) c.projection[v] = v;
  return c;
}

// k-fold iterated Z2-homology cover. The BudgetError names the stage reached.
inline Cover iterate_z2_cover(const LabelledGraph& g, std::size_t k,
                              std::size_t max_vertices = kDefaultCoverBudget) {
  Cover acc = identity_cover(g);
  for (std::size_t stage = 1; stage <= k; ++stage) {
    try {
      acc = compose(acc, z2_homology_cover(acc.total, max_vertices));
    } catch (const BudgetError& e) {
      throw BudgetError("iterate_z2_cover: stage " + std::to_string(stage) + " of " +
                        std::to_string(k) + ": " + e.what());
    }
  }
  return acc;
}

// Iterates Z2-homology covers until `done(total)` holds; at most max_iterations stages.
inline std::optional<Cover> iterate_z2_until(const Cover& start,
                                             const std::function<bool(const LabelledGraph&)>& done,
                                             std::size_t max_iterations,
                                             std::size_t max_vertices = kDefaultCoverBudget,
                                             std::size_t* stages = nullptr) {
  Cover acc = start;
  for (std::size_t stage = 0;; ++stage) {
    if (done(acc.total)) {
      if (stages) *stages = stage;
      return acc;
    }
    if (stage == max_iterations) return std::nullopt;
    acc = compose(acc, z2_homology_cover(acc.total, max_vertices));
  }
}

// The connected component through (base_vertex, start) of the pullback of a
// right action of the free group on `Point`s. `act(x, l)` is x . l and `name`
// renders a point for vertex names.
template <class Point, class Act, class Name>
Cover pullback_component(const LabelledGraph& g, VertexId base_vertex, const Point& start, Act act,
                         Name name, std::size_t max_vertices = kDefaultCoverBudget) {
  std::map<std::pair<VertexId, Point>, VertexId> ids;
  std::vector<std::pair<VertexId, Point>> verts;
  std::vector<LabelledGraph::Edge> edges;
  auto id_of = [&](VertexId v, const Point& x) {
    auto [it, inserted] = ids.emplace(std::pair(v, x), static_cast<VertexId>(verts.size()));
    if (inserted) {
      if (verts.size() >= max_vertices)
        throw BudgetError("pullback cover exceeds the budget of " + std::to_string(max_vertices) +
                          " vertices");
      verts.emplace_back(v, x);
    }
    return it->second;
  };
  id_of(base_vertex, start);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    auto [v, x] = verts[i];
    for (const auto& a : g.arcs(v)) {
      // Record each edge once, from its stored orientation.
      if (g.edges()[a.edge].from != v) continue;
      Point y = act(x, a.label);
      VertexId j = id_of(a.target, y);
      edges.push_back({static_cast<VertexId>(i), j, a.label});
    }
    // Reach vertices along reverse orientations as well.
    for (const auto& a : g.arcs(v)) {
      if (g.edges()[a.edge].from == v) continue;
      id_of(a.target, act(x, a.label));
    }
  }
  std::vector<std::string> names;
  std::vector<VertexId> base_of;
  std::size_t fiber = 0;
  for (const auto& [v, x] : verts) {
    names.push_back(g.vertex_name(v) + "@" + name(x));
    base_of.push_back(v);
    if (v == base_vertex) ++fiber;
  }
  return detail::assemble_cover(g, g.name() + "^act", names, base_of, edges, fiber);
}

// Pulls back the action of `images` on {0..n-1}. Returns the component
// through (least vertex, point 0), or the full pullback when `full` is set.
inline Cover cover_from_action(const LabelledGraph& g, const Action& action, bool full = false,
                               std::size_t max_vertices = kDefaultCoverBudget) {
  if (action.images.size() != g.alphabet().size())
    throw InputError("cover_from_action: one image per generator is required");
  for (const auto& p : action.images)
    if (p.degree() != action.n) throw InputError("cover_from_action: image of wrong degree");
  if (g.vertex_count() == 0 || !is_connected(g))
    throw InputError("cover_from_action: graph must be connected and nonempty");
  std::vector<Perm> inv;
  for (const auto& p : action.images) inv.push_back(p.inverse());
  auto act = [&](std::uint32_t x, Letter l) {
    return l.is_inverse() ? inv[l.generator_index()][x] : action.images[l.generator_index()][x];
  };
  auto name = [](std::uint32_t x) { return std::to_string(x); };
  if (!full) return pullback_component(g, 0, std::uint32_t{0}, act, name, max_vertices);

  if (g.vertex_count() * action.n > max_vertices) throw BudgetError("full pullback exceeds budget");
  std::vector<std::string> names;
  std::vector<VertexId> base_of;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (std::uint32_t x = 0; x < action.n; ++x) {
      names.push_back(g.vertex_name(v) + "@" + std::to_string(x));
      base_of.push_back(v);
    }
  std::vector<LabelledGraph::Edge> edges;
  for (const auto& e : g.edges())
    for (std::uint32_t x = 0; x < action.n; ++x)
      edges.push_back({static_cast<VertexId>(e.from * action.n + x),
                       static_cast<VertexId>(e.to * action.n + act(x, e.label)), e.label});
  return detail::assemble_cover(g, g.name() + "^act", names, base_of, edges, action.n);
}

struct DeckReport {
  std::vector<Automorphism> deck;
  bool is_normal = false;
  std::size_t fiber_size = 0;
  std::size_t orbit_size = 0;  // size of the deck orbit of the root vertex
};

// Label-preserving automorphisms of the (connected) total space that commute
// with the projection. Normal iff they act transitively on a fiber.
inline DeckReport deck_and_normality(const Cover& c) {
  if (!is_connected(c.total)) throw InputError("deck_and_normality: total space is not connected");
  DeckReport r;
  if (c.total.vertex_count() == 0) return r;
  VertexId root = 0;
  for (VertexId y = 0; y < c.total.vertex_count(); ++y) {
    if (c.projection[y] != c.projection[root]) continue;
    ++r.fiber_size;
    auto a = extend_automorphism(c.total, root, y);
    if (!a) continue;
    bool commutes = true;
    for (VertexId x = 0; x < a->size(); ++x)
      if (c.projection[(*a)[x]] != c.projection[x]) {
        commutes = false;
        break;
      }
    if (commutes) r.deck.push_back(std::move(*a));
  }
  r.orbit_size = r.deck.size();
  r.is_normal = r.orbit_size == r.fiber_size;
  return r;
}

}  // namespace gsc
