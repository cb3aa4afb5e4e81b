#pragma once

// Pieces, automorphisms and the C'(lambda) / unique-long-path conditions.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gsc/graph.hpp"
#include "gsc/rational.hpp"

namespace gsc {

// <S | (Theta_1, l_1), ..., (Theta_k, l_k)> with a small-cancellation parameter.
class Presentation {
 public:
  Presentation() = default;

  Presentation(Alphabet alphabet, std::vector<LabelledGraph> components,
               Rational lambda = Rational(1, 6))
      : alphabet_(std::move(alphabet)), components_(std::move(components)), lambda_(lambda) {
    if (lambda_ <= 0 || lambda_ > Rational(1, 6))
      throw InputError("lambda must lie in (0, 1/6], got " + format_rational(lambda_));
    for (const auto& c : components_) {
      if (!(c.alphabet() == alphabet_))
        throw InputError("component '" + c.name() + "' uses a different alphabet");
      if (c.vertex_count() == 0) throw InputError("component '" + c.name() + "' is empty");
      if (!is_connected(c))
        throw InputError("component '" + c.name() + "' is not connected");
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<LabelledGraph>& components() const { return components_; }
  const LabelledGraph& component(std::size_t i) const { return components_.at(i); }
  std::size_t size() const { return components_.size(); }
  const Rational& lambda() const { return lambda_; }

  Presentation with_lambda(Rational l) const { return Presentation(alphabet_, components_, l); }

  Presentation with_component(std::size_t i, LabelledGraph g) const {
    auto comps = components_;
    comps.at(i) = std::move(g);
    return Presentation(alphabet_, std::move(comps), lambda_);
  }

  Presentation appended(LabelledGraph g) const {
    auto comps = components_;
    comps.push_back(std::move(g));
    return Presentation(alphabet_, std::move(comps), lambda_);
  }

 private:
  Alphabet alphabet_;
  std::vector<LabelledGraph> components_;
  Rational lambda_{1, 6};
};

using Automorphism = std::vector<VertexId>;  // image of each vertex

// Extends v0 -> image to a label-preserving map by deterministic lifting.
inline std::optional<Automorphism> extend_automorphism(const LabelledGraph& g, VertexId root,
                                                       VertexId image) {
  const auto unset = std::numeric_limits<VertexId>::max();
  Automorphism map(g.vertex_count(), unset);
  std::vector<bool> used(g.vertex_count(), false);
  map[root] = image;
  used[image] = true;
  std::deque<VertexId> q{root};
  while (!q.empty()) {
    VertexId v = q.front();
    q.pop_front();
    if (g.degree(v) != g.degree(map[v])) return std::nullopt;
    for (const auto& a : g.arcs(v)) {
      auto m = g.step(map[v], a.label);
      if (!m) return std::nullopt;
      if (map[a.target] == unset) {
        if (used[*m]) return std::nullopt;
        map[a.target] = *m;
        used[*m] = true;
        q.push_back(a.target);
      } else if (map[a.target] != *m) {
        return std::nullopt;
      }
    }
  }
  for (auto x : map)
    if (x == unset) return std::nullopt;
  return map;
}

// All label-preserving automorphisms of a connected reduced graph. Each is
// determined by the image of vertex 0; identity first.
inline std::vector<Automorphism> automorphisms(const LabelledGraph& g) {
  if (g.vertex_count() == 0) return {Automorphism{}};
  if (!is_connected(g))
    throw InputError("automorphisms: graph '" + g.name() + "' is not connected");
  std::vector<Automorphism> out;
  for (VertexId c = 0; c < g.vertex_count(); ++c)
    if (auto a = extend_automorphism(g, 0, c)) out.push_back(std::move(*a));
  return out;
}

// Orbit representative (least vertex) of each vertex under the automorphism group.
inline std::vector<VertexId> automorphism_orbits(const LabelledGraph& g) {
  auto auts = automorphisms(g);
  std::vector<VertexId> rep(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    VertexId best = v;
    for (const auto& a : auts) best = std::min(best, a[v]);
    rep[v] = best;
  }
  // The group acts transitively on orbits, so min over images is the orbit minimum.
  return rep;
}

struct Occurrence {
  std::size_t component = 0;
  Path path;
};

struct Piece {
  Word word;
  Occurrence a;
  Occurrence b;
  std::size_t length() const { return word.size(); }
};

namespace detail {

struct Occ {
  std::size_t comp;
  VertexId start;
  VertexId end;
  EdgeId last_edge;
};

using OccMap = std::map<Word, std::vector<Occ>>;

// Cached per-presentation data used by the piece machinery.
class PieceContext {
 public:
  explicit PieceContext(const Presentation& p) : p_(p) {
    for (const auto& c : p.components()) {
      orbits_.push_back(automorphism_orbits(c));
      girths_.push_back(girth(c));
    }
  }

  const Presentation& presentation() const { return p_; }
  const Distance& girth_of(std::size_t i) const { return girths_[i]; }
  VertexId orbit(std::size_t comp, VertexId v) const { return orbits_[comp][v]; }

  // Two occurrences are equivalent when they lie in one component and an
  // automorphism carries one start vertex to the other.
  bool equivalent(std::size_t c1, VertexId v1, std::size_t c2, VertexId v2) const {
    return c1 == c2 && orbits_[c1][v1] == orbits_[c2][v2];
  }

  bool is_piece(const std::vector<Occ>& occs) const {
    for (std::size_t i = 1; i < occs.size(); ++i)
      if (!equivalent(occs[0].comp, occs[0].start, occs[i].comp, occs[i].start)) return true;
    return false;
  }

  // All occurrences of a word (start vertices where it lifts).
  std::vector<Occ> occurrences(const Word& w) const {
    std::vector<Occ> out;
    for (std::size_t c = 0; c < p_.size(); ++c) {
      const auto& g = p_.component(c);
      for (VertexId v = 0; v < g.vertex_count(); ++v) {
        VertexId cur = v;
        EdgeId last = std::numeric_limits<EdgeId>::max();
        bool ok = true;
        for (Letter l : w) {
          auto a = g.arc(cur, l);
          if (!a) {
            ok = false;
            break;
          }
          cur = a->target;
          last = a->edge;
        }
        if (ok) out.push_back({c, v, cur, last});
      }
    }
    return out;
  }

  // Piece words of lengths 1..max_length, each level holding only words
  // that are pieces. A sub-word of a piece is a piece, so each level is
  // obtained by extending the previous one.
  std::vector<OccMap> piece_levels(std::size_t max_length) const {
    std::vector<OccMap> levels;
    if (max_length == 0) return levels;
    OccMap level;
    for (std::size_t c = 0; c < p_.size(); ++c) {
      const auto& g = p_.component(c);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (const auto& a : g.arcs(v)) level[{a.label}].push_back({c, v, a.target, a.edge});
    }
    prune(level);
    while (!level.empty()) {
      levels.push_back(level);
      if (levels.size() >= max_length) break;
      OccMap next;
      for (const auto& [w, occs] : level) {
        for (const auto& o : occs) {
          const auto& g = p_.component(o.comp);
          for (const auto& a : g.arcs(o.end)) {
            if (a.edge == o.last_edge) continue;
            Word w2 = w;
            w2.push_back(a.label);
            next[w2].push_back({o.comp, o.start, a.target, a.edge});
          }
        }
      }
      prune(next);
      level = std::move(next);
    }
    return levels;
  }

  // All freely reduced words of length n occurring anywhere.
  OccMap all_words(std::size_t n) const {
    OccMap level;
    for (std::size_t c = 0; c < p_.size(); ++c) {
      const auto& g = p_.component(c);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (const auto& a : g.arcs(v)) level[{a.label}].push_back({c, v, a.target, a.edge});
    }
    for (std::size_t len = 1; len < n; ++len) {
      OccMap next;
      for (const auto& [w, occs] : level)
        for (const auto& o : occs)
          for (const auto& a : p_.component(o.comp).arcs(o.end)) {
            if (a.edge == o.last_edge) continue;
            Word w2 = w;
            w2.push_back(a.label);
            next[w2].push_back({o.comp, o.start, a.target, a.edge});
          }
      level = std::move(next);
    }
    return level;
  }

  Occurrence materialize(const Occ& o, const Word& w) const {
    auto lifted = lift_word(p_.component(o.comp), o.start, w);
    return Occurrence{o.comp, std::move(*lifted.path)};
  }

  Piece make_piece(const Word& w, std::vector<Occ> occs) const {
    std::sort(occs.begin(), occs.end(), [](const Occ& x, const Occ& y) {
      return std::pair(x.comp, x.start) < std::pair(y.comp, y.start);
    });
    const Occ& a = occs.front();
    const Occ* b = nullptr;
    for (const auto& o : occs)
      if (!equivalent(a.comp, a.start, o.comp, o.start)) {
        b = &o;
        break;
      }
    return Piece{w, materialize(a, w), materialize(*b, w)};
  }

 private:
  void prune(OccMap& m) const {
    for (auto it = m.begin(); it != m.end();) {
      if (is_piece(it->second))
        ++it;
      else
        it = m.erase(it);
    }
  }

  const Presentation& p_;
  std::vector<std::vector<VertexId>> orbits_;
  std::vector<Distance> girths_;
};

inline bool canonical_orientation(const Word& w) { return w <= inverse(w); }

}  // namespace detail

// Largest finite girth over the components (0 if none).
inline std::size_t max_finite_girth(const Presentation& p) {
  std::size_t m = 0;
  for (const auto& c : p.components()) {
    auto g = girth(c);
    if (g.is_finite()) m = std::max(m, g.value());
  }
  return m;
}

inline std::size_t default_piece_length(const Presentation& p) {
  return ceil_times(p.lambda(), max_finite_girth(p));
}

// Inclusion-maximal pieces of length <= max_length. A word and its inverse
// describe the same pair of paths traversed backwards; only the orientation
// with the lexicographically smaller word is reported.
inline std::vector<Piece> enumerate_pieces(const Presentation& p, std::size_t max_length) {
  detail::PieceContext ctx(p);
  auto levels = ctx.piece_levels(max_length);
  std::vector<Piece> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::set<Word> extended;
    if (i + 1 < levels.size()) {
      for (const auto& [w, occs] : levels[i + 1]) {
        extended.insert(Word(w.begin(), w.end() - 1));
        extended.insert(Word(w.begin() + 1, w.end()));
      }
    }
    for (const auto& [w, occs] : levels[i]) {
      if (extended.count(w) || !detail::canonical_orientation(w)) continue;
      out.push_back(ctx.make_piece(w, occs));
    }
  }
  std::sort(out.begin(), out.end(), [](const Piece& x, const Piece& y) {
    return std::tuple(x.a.component, x.a.path.start(), x.word) <
           std::tuple(y.a.component, y.a.path.start(), y.word);
  });
  return out;
}

inline std::vector<Piece> enumerate_pieces(const Presentation& p) {
  return enumerate_pieces(p, default_piece_length(p));
}

struct CPrimeVerdict {
  bool pass = true;
  std::optional<Piece> witness;
  std::size_t component = 0;
  Distance girth;
  Rational bound{0};  // lambda * girth of the failing component
  std::vector<std::string> warnings;
};

// C'(lambda): every piece in Theta_i is strictly shorter than lambda * girth(Theta_i).
// Since pieces are closed under taking sub-paths, Theta_i fails iff it
// contains a piece of length exactly ceil(lambda * girth).
inline CPrimeVerdict check_cprime(const Presentation& p) {
  detail::PieceContext ctx(p);
  CPrimeVerdict v;
  std::size_t needed = 0;
  std::vector<std::size_t> threshold(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& g = ctx.girth_of(i);
    if (g.is_infinite()) {
      v.warnings.push_back("component '" + p.component(i).name() +
                           "' is a tree; the C'(lambda) bound is vacuous there");
      continue;
    }
    threshold[i] = ceil_times(p.lambda(), g.value());
    needed = std::max(needed, threshold[i]);
  }
  auto levels = ctx.piece_levels(needed);
  std::size_t cap = std::max(needed, max_finite_girth(p));
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t L = threshold[i];
    if (L == 0 || L > levels.size()) continue;
    for (const auto& [w, occs] : levels[L - 1]) {
      auto hit = std::find_if(occs.begin(), occs.end(), [&](const detail::Occ& o) { return o.comp == i; });
      if (hit == occs.end()) continue;
      // Greedily lengthen the witness (right, then left) while it stays a
      // piece touching Theta_i, up to the largest girth.
      Word word = w;
      auto touches = [&](const std::vector<detail::Occ>& os) {
        return ctx.is_piece(os) &&
               std::any_of(os.begin(), os.end(), [&](const detail::Occ& o) { return o.comp == i; });
      };
      for (int side = 0; side < 2; ++side) {
        bool grew = true;
        while (grew && word.size() < cap) {
          grew = false;
          for (std::uint32_t code = 0; code < p.alphabet().letter_count(); ++code) {
            Letter l{code};
            Word cand = word;
            if (side == 0) {
              if (cand.back() == l.inverse()) continue;
              cand.push_back(l);
            } else {
              if (cand.front() == l.inverse()) continue;
              cand.insert(cand.begin(), l);
            }
            auto os = ctx.occurrences(cand);
            if (touches(os)) {
              word = std::move(cand);
              grew = true;
              break;
            }
          }
        }
      }
      auto occs2 = ctx.occurrences(word);
      // Put the occurrence in Theta_i first.
      std::stable_partition(occs2.begin(), occs2.end(), [&](const detail::Occ& o) { return o.comp == i; });
      Piece piece;
      piece.word = word;
      const auto& a = occs2.front();
      const detail::Occ* b = nullptr;
      for (const auto& o : occs2)
        if (!ctx.equivalent(a.comp, a.start, o.comp, o.start)) {
          b = &o;
          break;
        }
      piece.a = ctx.materialize(a, word);
      piece.b = ctx.materialize(*b, word);
      v.pass = false;
      v.witness = std::move(piece);
      v.component = i;
      v.girth = ctx.girth_of(i);
      v.bound = p.lambda() * Rational(static_cast<std::int64_t>(ctx.girth_of(i).value()));
      return v;
    }
  }
  return v;
}

struct StrongVerdict {
  bool pass = true;
  std::optional<Occurrence> first;
  std::optional<Occurrence> second;
  std::size_t component = 0;
  std::vector<std::string> warnings;
};

// Every path in Theta_i of length >= lambda * girth(Theta_i) reads a word that
// no other path (in any component, at any position) reads.
inline StrongVerdict check_strong_condition(const Presentation& p) {
  detail::PieceContext ctx(p);
  StrongVerdict v;
  std::map<std::size_t, detail::OccMap> by_length;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& g = ctx.girth_of(i);
    if (g.is_infinite()) {
      v.warnings.push_back("component '" + p.component(i).name() + "' is a tree");
      continue;
    }
    std::size_t L = ceil_times(p.lambda(), g.value());
    auto it = by_length.find(L);
    if (it == by_length.end()) it = by_length.emplace(L, ctx.all_words(L)).first;
    for (const auto& [w, occs] : it->second) {
      if (occs.size() < 2) continue;
      auto hit = std::find_if(occs.begin(), occs.end(), [&](const detail::Occ& o) { return o.comp == i; });
      if (hit == occs.end()) continue;
      const detail::Occ* other = nullptr;
      for (const auto& o : occs)
        if (&o != &*hit) { other = &o; break; }
      v.pass = false;
      v.component = i;
      v.first = ctx.materialize(*hit, w);
      v.second = ctx.materialize(*other, w);
      return v;
    }
  }
  return v;
}

}  // namespace gsc
