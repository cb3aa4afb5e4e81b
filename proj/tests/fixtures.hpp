#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "gsc/graph.hpp"

namespace fx {

using namespace gsc;

inline Alphabet letters(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(names);
}

inline std::string vname(std::size_t i) {
  auto s = std::to_string(i);
  return "v" + std::string(s.size() < 2 ? 2 - s.size() : 0, '0') + s;
}

// Cycle v00 -> v01 -> ... -> v00 reading the given word.
inline LabelledGraph cycle(const Alphabet& a, const std::string& word, const std::string& name = "cycle") {
  Word w = a.parse_word(word);
  GraphSpec s{a, name, {}, {}};
  for (std::size_t i = 0; i < w.size(); ++i) s.vertices.push_back(vname(i));
  for (std::size_t i = 0; i < w.size(); ++i) s.edges.push_back({vname(i), vname((i + 1) % w.size()), w[i]});
  return LabelledGraph(s);
}

// Edges given as (from, to, label) triples of vertex indices.
inline GraphSpec spec(const Alphabet& a, std::size_t n, const std::vector<std::tuple<int, int, std::string>>& edges,
                      const std::string& name = "g") {
  GraphSpec s{a, name, {}, {}};
  for (std::size_t i = 0; i < n; ++i) s.vertices.push_back(vname(i));
  for (auto& [u, v, l] : edges) s.edges.push_back({vname(u), vname(v), a.parse_letter(l)});
  return s;
}

inline LabelledGraph graph(const Alphabet& a, std::size_t n,
                           const std::vector<std::tuple<int, int, std::string>>& edges, const std::string& name = "g") {
  return LabelledGraph(spec(a, n, edges, name));
}

// Petersen graph with a proper 3-edge-colouring-free labelling: each edge its own letter.
inline LabelledGraph petersen_distinct() {
  std::vector<std::pair<int, int>> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                     {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < e.size(); ++i) names.push_back("x" + std::to_string(i));
  Alphabet a(names);
  std::vector<std::tuple<int, int, std::string>> t;
  for (std::size_t i = 0; i < e.size(); ++i) t.emplace_back(e[i].first, e[i].second, names[i]);
  return graph(a, 10, t, "petersen");
}

}  // namespace fx

namespace fx {

// Two vertices joined by paths of lengths 1, 2 and 2.
inline LabelledGraph theta() {
  Alphabet a = letters(5);
  return graph(a, 4, {{0, 1, "a"}, {0, 2, "b"}, {2, 1, "c"}, {0, 3, "d"}, {3, 1, "e"}}, "theta");
}

// K4 with six distinct letters.
inline LabelledGraph k4_distinct() {
  Alphabet a = letters(6);
  return graph(a, 4, {{0, 1, "a"}, {0, 2, "b"}, {0, 3, "c"}, {1, 2, "d"}, {1, 3, "e"}, {2, 3, "f"}}, "k4");
}

}  // namespace fx

namespace fx {

inline LabelledGraph random_connected(std::mt19937& rng, const Alphabet& a, std::size_t n, std::size_t extra) {
  // Random spanning tree plus extra edges, labels drawn until reduced.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::tuple<int, int, std::string>> e;
    std::set<std::pair<int, int>> used;
    auto add = [&](int u, int v) {
      if (u == v || !used.insert({std::min(u, v), std::max(u, v)}).second) return;
      std::string l = a.names()[rng() % a.size()];
      if (rng() % 2) l += "'";
      e.emplace_back(u, v, l);
    };
    for (std::size_t v = 1; v < n; ++v) add(static_cast<int>(rng() % v), static_cast<int>(v));
    for (std::size_t k = 0; k < extra; ++k) add(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    auto s = spec(a, n, e, "r" + std::to_string(attempt));
    if (validate(s).ok()) return LabelledGraph(s);
  }
  throw std::runtime_error("no reduced labelling found");
}

inline std::string random_cycle_word(std::mt19937& rng, std::size_t letters, std::size_t len) {
  while (true) {
    std::string w;
    std::vector<std::pair<int, bool>> seq;
    for (std::size_t i = 0; i < len; ++i) seq.push_back({static_cast<int>(rng() % letters), rng() % 3 == 0});
    bool ok = true;
    for (std::size_t i = 0; i < len; ++i) {
      auto x = seq[i], y = seq[(i + 1) % len];
      if (x.first == y.first && x.second != y.second) ok = false;
    }
    if (!ok) continue;
    for (auto [l, inv] : seq) {
      w += static_cast<char>('a' + l);
      if (inv) w += '\'';
    }
    return w;
  }
}

}  // namespace fx
