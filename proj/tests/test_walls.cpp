#include <catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "gsc/walls.hpp"

using namespace gsc;

namespace {

// Walls separating u and v, counted by crossing parity along one path.
std::size_t crossing_parity_count(const WallSystem& s, const Cover& c, VertexId u, VertexId v) {
  const auto& g = s.host;
  auto d = distances(g, v);
  std::map<std::pair<VertexId, VertexId>, int> parity;
  VertexId cur = u;
  while (cur != v) {
    for (const auto& a : g.arcs(cur))
      if (d[a.target].value() + 1 == d[cur].value()) {
        auto p = c.projection[cur], q = c.projection[a.target];
        parity[{std::min(p, q), std::max(p, q)}] ^= 1;
        cur = a.target;
        break;
      }
  }
  std::size_t n = 0;
  for (const auto& w : s.walls) {
    const auto& be = c.base.edges()[w.base_edge];
    if (parity[{std::min(be.from, be.to), std::max(be.from, be.to)}]) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("verify_wall counts complementary components") {
  Alphabet a = fx::letters(1);
  auto g = fx::cycle(a, "aaaaaa");
  CHECK_FALSE(verify_wall(g, {0}).valid);
  CHECK(verify_wall(g, {0}).component_count == 1);
  auto two = verify_wall(g, {0, 3});
  CHECK(two.valid);
  CHECK(two.component_count == 2);
  CHECK(verify_wall(g, {0, 2, 4}).component_count == 3);
  CHECK_THROWS_AS(verify_wall(g, {99}), InputError);
}

TEST_CASE("walls of the Z2 cover of K4") {
  auto g = fx::k4_distinct();
  auto c = z2_homology_cover(g);
  auto s = walls_from_cover(c);
  CHECK(s.walls.size() == g.edge_count());
  CHECK(s.failures.empty());
  auto d = walling_diagnostics(s);
  CHECK(d.every_edge_on_exactly_one_wall);
  CHECK_FALSE(d.sampled);
  CHECK(d.pairs == c.total.vertex_count() * (c.total.vertex_count() - 1) / 2);
  CHECK(d.max_ratio <= 1.0);
  CHECK(d.min_ratio > 0.0);
  for (VertexId u = 0; u < c.total.vertex_count(); u += 3)
    for (VertexId v = 0; v < c.total.vertex_count(); v += 5)
      CHECK(wall_pseudometric(s, u, v) == crossing_parity_count(s, c, u, v));
}

TEST_CASE("bridges do not give walls") {
  Alphabet a = fx::letters(4);
  // triangle with a pendant edge
  auto g = fx::graph(a, 4, {{0, 1, "a"}, {1, 2, "b"}, {2, 0, "c"}, {2, 3, "d"}}, "lolli");
  auto c = z2_homology_cover(g);
  auto s = walls_from_cover(c);
  CHECK(s.walls.size() == 3);
  REQUIRE(s.failures.size() == 1);
  CHECK(s.failures[0].component_count == 3);
}

TEST_CASE("large hosts are sampled deterministically") {
  auto c = iterate_z2_cover(fx::theta(), 2);
  auto s = walls_from_cover(c);
  auto d1 = walling_diagnostics(s);
  auto d2 = walling_diagnostics(s);
  CHECK(d1.sampled);
  CHECK(d1.pairs == kSampledPairs);
  CHECK(d1.mean_ratio == d2.mean_ratio);
}
