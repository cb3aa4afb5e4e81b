#include <catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "gsc/covers.hpp"
#include "oracles.hpp"

using namespace gsc;

namespace {

// Random closed non-backtracking walk at `v`: random walk, then return along BFS tree.
Word random_closed_word(std::mt19937& rng, const LabelledGraph& g, VertexId v, std::size_t len) {
  Word w;
  VertexId cur = v;
  for (std::size_t i = 0; i < len; ++i) {
    const auto& arcs = g.arcs(cur);
    const auto& a = arcs[rng() % arcs.size()];
    w.push_back(a.label);
    cur = a.target;
  }
  auto d = distances(g, v);
  while (cur != v) {
    for (const auto& a : g.arcs(cur))
      if (d[a.target].value() + 1 == d[cur].value()) {
        w.push_back(a.label);
        cur = a.target;
        break;
      }
  }
  return w;
}

// The parity of traversals of each base edge.
std::vector<int> edge_parity(const LabelledGraph& g, VertexId v, const Word& w) {
  std::vector<int> par(g.edge_count(), 0);
  for (Letter l : w) {
    auto a = g.arc(v, l);
    par[a->edge] ^= 1;
    v = a->target;
  }
  return par;
}

}  // namespace

TEST_CASE("Z2 homology cover of the theta graph") {
  auto g = fx::theta();
  auto c = z2_homology_cover(g);
  CHECK(covering_defect(c).empty());
  CHECK(c.degree == 4);
  CHECK(c.total.vertex_count() == 16);
  CHECK(is_connected(c.total));
  CHECK(girth(c.total).value() >= girth(g).value());
  auto deck = deck_and_normality(c);
  CHECK(deck.is_normal);
  CHECK(deck.deck.size() == 4);
  CHECK(c.total.find_vertex("v00|00"));
}

TEST_CASE("a tree is its own Z2 cover with unchanged names") {
  Alphabet a = fx::letters(2);
  auto g = fx::graph(a, 3, {{0, 1, "a"}, {1, 2, "b"}});
  auto c = z2_homology_cover(g);
  CHECK(c.degree == 1);
  CHECK(c.total.vertex_names() == g.vertex_names());
}

TEST_CASE("a closed walk lifts closed iff it uses every edge an even number of times") {
  std::mt19937 rng(21);
  for (auto g : {fx::theta(), fx::k4_distinct(), fx::petersen_distinct()}) {
    auto c = z2_homology_cover(g);
    REQUIRE(covering_defect(c).empty());
    VertexId root = c.total.vertex(g.vertex_name(0) + "|" + std::string(betti_number(g), '0'));
    for (int t = 0; t < 60; ++t) {
      Word w = random_closed_word(rng, g, 0, rng() % 12);
      auto par = edge_parity(g, 0, w);
      bool even = std::all_of(par.begin(), par.end(), [](int x) { return x == 0; });
      auto lift = lift_word(c.total, root, w);
      REQUIRE(lift);
      CHECK(lift.path->is_closed() == even);
    }
  }
}

TEST_CASE("iterated Z2 covers grow girth and report the failing stage") {
  auto g = fx::theta();
  auto c2 = iterate_z2_cover(g, 2);
  CHECK(covering_defect(c2).empty());
  CHECK(c2.base == g);
  CHECK(girth(c2.total).value() > girth(g).value());
  CHECK(oracle::girth(iterate_z2_cover(g, 1).total) == girth(iterate_z2_cover(g, 1).total).value());
  try {
    iterate_z2_cover(g, 3);
    FAIL("expected a budget error");
  } catch (const BudgetError& e) {
    CHECK(std::string(e.what()).find("stage") != std::string::npos);
  }
}

TEST_CASE("iterate until a predicate holds") {
  auto g = fx::theta();
  std::size_t stages = 0;
  auto c = iterate_z2_until(identity_cover(g), [](const LabelledGraph& t) { return girth(t).value() >= 8; }, 3,
                            kDefaultCoverBudget, &stages);
  REQUIRE(c);
  CHECK(stages >= 1);
  CHECK(girth(c->total).value() >= 8);
  CHECK_FALSE(iterate_z2_until(identity_cover(g), [](const LabelledGraph&) { return false; }, 1));
}

TEST_CASE("full pullback of an action: lifts close exactly at fixed points") {
  std::mt19937 rng(4);
  auto g = fx::theta();
  for (int t = 0; t < 10; ++t) {
    std::size_t n = 2 + rng() % 4;
    Action act;
    act.n = n;
    for (std::size_t k = 0; k < g.alphabet().size(); ++k) {
      std::vector<std::uint32_t> img(n);
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      act.images.emplace_back(img);
    }
    auto c = cover_from_action(g, act, true);
    REQUIRE(covering_defect(c).empty());
    CHECK(c.total.vertex_count() == n * g.vertex_count());
    for (int s = 0; s < 20; ++s) {
      Word w = random_closed_word(rng, g, 0, rng() % 8);
      Perm p = act.evaluate(w);
      for (std::uint32_t x = 0; x < n; ++x) {
        auto lift = lift_word(c.total, c.total.vertex("v00@" + std::to_string(x)), w);
        REQUIRE(lift);
        CHECK(lift.path->is_closed() == (p[x] == x));
      }
    }
  }
}

TEST_CASE("a stabiliser cover of Sym(3) is not normal") {
  auto g = fx::theta();
  Action act = Action::trivial(5, 3);
  act.images[1] = Perm({1, 0, 2});  // b
  act.images[3] = Perm({0, 2, 1});  // d
  auto c = cover_from_action(g, act);
  CHECK(covering_defect(c).empty());
  CHECK(c.degree == 3);
  auto deck = deck_and_normality(c);
  CHECK(deck.fiber_size == 3);
  CHECK(deck.deck.size() == 1);
  CHECK_FALSE(deck.is_normal);

  act.images[3] = Perm({1, 0, 2});
  auto c2 = cover_from_action(g, act);
  CHECK(c2.degree == 2);
  CHECK(deck_and_normality(c2).is_normal);
}

TEST_CASE("pullback over a custom point type") {
  auto g = fx::theta();
  // Z/4 acting by a -> +1, everything else trivially.
  auto act = [](int x, Letter l) {
    if (l.generator_index() != 0) return x;
    return l.is_inverse() ? (x + 3) % 4 : (x + 1) % 4;
  };
  auto c = pullback_component(g, 0, 0, act, [](int x) { return std::to_string(x); });
  CHECK(covering_defect(c).empty());
  CHECK(c.degree == 4);
  CHECK_THROWS_AS(pullback_component(g, 0, 0, act, [](int x) { return std::to_string(x); }, 5), BudgetError);
}
