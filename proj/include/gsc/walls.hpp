#pragma once

// Walls: edge sets whose removal leaves exactly two connected pieces.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "gsc/covers.hpp"
#include "gsc/graph.hpp"

namespace gsc {

struct WallCheck {
  bool valid = false;
  std::size_t component_count = 0;
  std::vector<bool> side;  // per vertex, valid only when `valid`; false = side containing vertex 0
};

// Counts the components of host minus the open edges.
inline WallCheck verify_wall(const LabelledGraph& host, const std::vector<EdgeId>& edges) {
  std::vector<bool> removed(host.edge_count(), false);
  for (auto e : edges) {
    if (e >= host.edge_count()) throw InputError("verify_wall: unknown edge " + std::to_string(e));
    removed[e] = true;
  }
  const auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(host.vertex_count(), none);
  std::size_t count = 0;
  for (VertexId s = 0; s < host.vertex_count(); ++s) {
    if (comp[s] != none) continue;
    std::deque<VertexId> q{s};
    comp[s] = count;
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (const auto& a : host.arcs(v))
        if (!removed[a.edge] && comp[a.target] == none) {
          comp[a.target] = count;
          q.push_back(a.target);
        }
    }
    ++count;
  }
  WallCheck r;
  r.component_count = count;
  r.valid = count == 2;
  if (r.valid) {
    r.side.resize(host.vertex_count());
    for (VertexId v = 0; v < host.vertex_count(); ++v) r.side[v] = comp[v] == 1;
    // Every wall edge must join the two sides.
    for (auto e : edges) {
      const auto& ed = host.edges()[e];
      if (r.side[ed.from] == r.side[ed.to]) {
        r.valid = false;
        r.side.clear();
        break;
      }
    }
  }
  return r;
}

struct Wall {
  std::vector<EdgeId> edges;
  std::vector<bool> side;
  std::size_t base_edge = 0;
};

struct WallFailure {
  std::size_t base_edge;
  std::size_t component_count;
};

struct WallSystem {
  LabelledGraph host;
  std::vector<Wall> walls;
  std::vector<WallFailure> failures;  // candidates that are not walls
};

// One candidate per base edge: its full preimage in the total space.
inline WallSystem walls_from_cover(const Cover& c) {
  WallSystem s;
  s.host = c.total;
  std::vector<std::vector<EdgeId>> preimage(c.base.edge_count());
  for (EdgeId e = 0; e < c.total.edge_count(); ++e) {
    const auto& ed = c.total.edges()[e];
    auto be = c.base.find_edge(c.projection[ed.from], c.projection[ed.to]);
    if (!be) throw InputError("walls_from_cover: projection is not a covering map");
    preimage[*be].push_back(e);
  }
  for (EdgeId be = 0; be < c.base.edge_count(); ++be) {
    auto check = verify_wall(c.total, preimage[be]);
    if (check.valid)
      s.walls.push_back({preimage[be], std::move(check.side), be});
    else
      s.failures.push_back({be, check.component_count});
  }
  return s;
}

// Number of walls separating u from v.
inline std::size_t wall_pseudometric(const WallSystem& s, VertexId u, VertexId v) {
  if (u >= s.host.vertex_count() || v >= s.host.vertex_count())
    throw InputError("wall_pseudometric: unknown vertex");
  std::size_t n = 0;
  for (const auto& w : s.walls)
    if (w.side[u] != w.side[v]) ++n;
  return n;
}

struct WallSample {
  VertexId u, v;
  std::size_t path_distance;
  std::size_t wall_distance;
};

struct WallDiagnostics {
  std::size_t wall_count = 0;
  std::size_t failed_candidates = 0;
  std::size_t pairs = 0;
  bool sampled = false;
  double min_ratio = 0, max_ratio = 0, mean_ratio = 0;
  std::size_t min_walls_per_edge = 0, max_walls_per_edge = 0;
  bool every_edge_on_exactly_one_wall = false;
  std::vector<WallSample> samples;
};

inline constexpr std::size_t kAllPairsLimit = 200;
inline constexpr std::size_t kSampledPairs = 10000;
inline constexpr std::uint64_t kWallSampleSeed = 0x5eed5eedull;

// Ratios of wall distance to path distance (all pairs up to 200 vertices,
// otherwise a fixed-seed sample of 10,000 pairs) and wall multiplicity per edge.
inline WallDiagnostics walling_diagnostics(const WallSystem& s) {
  WallDiagnostics d;
  const auto& g = s.host;
  d.wall_count = s.walls.size();
  d.failed_candidates = s.failures.size();
  std::vector<std::size_t> per_edge(g.edge_count(), 0);
  for (const auto& w : s.walls)
    for (auto e : w.edges) ++per_edge[e];
  if (!per_edge.empty()) {
    d.min_walls_per_edge = *std::min_element(per_edge.begin(), per_edge.end());
    d.max_walls_per_edge = *std::max_element(per_edge.begin(), per_edge.end());
    d.every_edge_on_exactly_one_wall = d.min_walls_per_edge == 1 && d.max_walls_per_edge == 1;
  }
  std::vector<std::pair<VertexId, VertexId>> pairs;
  const auto n = static_cast<VertexId>(g.vertex_count());
  if (n <= kAllPairsLimit) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  } else {
    d.sampled = true;
    std::mt19937_64 rng(kWallSampleSeed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    while (pairs.size() < kSampledPairs) {
      VertexId u = pick(rng), v = pick(rng);
      if (u != v) pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(pairs.begin(), pairs.end());
  }
  std::vector<Distance> from_u;
  VertexId current = n;
  double sum = 0;
  bool first = true;
  for (auto [u, v] : pairs) {
    if (u != current) {
      from_u = distances(g, u);
      current = u;
    }
    const auto& du = from_u[v];
    if (du.is_infinite()) continue;
    std::size_t wd = wall_pseudometric(s, u, v);
    double ratio = static_cast<double>(wd) / static_cast<double>(du.value());
    if (first) {
      d.min_ratio = d.max_ratio = ratio;
      first = false;
    }
    d.min_ratio = std::min(d.min_ratio, ratio);
    d.max_ratio = std::max(d.max_ratio, ratio);
    sum += ratio;
    d.samples.push_back({u, v, du.value(), wd});
  }
  d.pairs = d.samples.size();
  if (d.pairs) d.mean_ratio = sum / static_cast<double>(d.pairs);
  return d;
}

}  // namespace gsc
