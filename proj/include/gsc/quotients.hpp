#pragma once

// Finite quotients as permutation images, quotient towers with their
// certificates, and box-space diagnostics.

#include <algorithm>
#include <cmath>
#include <set>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsc/group.hpp"
#include "gsc/perm.hpp"

namespace gsc {

struct FiniteQuotient {
  Action action;
  std::string source;
};

// First cycle-basis word of some component that does not act trivially.
struct RelatorFailure {
  std::size_t component;
  Word word;
};

inline std::optional<RelatorFailure> first_unkilled_relator(const Presentation& p, const Action& a) {
  for (std::size_t c = 0; c < p.size(); ++c)
    for (const auto& w : cycle_words(p.component(c), 0))
      if (!a.evaluate(w).is_identity()) return RelatorFailure{c, w};
  return std::nullopt;
}

inline std::string presentation_id(const Presentation& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.alphabet().size(); ++i) s += (i ? "," : "") + p.alphabet().names()[i];
  s += " |";
  for (const auto& c : p.components()) s += " " + c.name();
  return s + ">";
}

namespace detail {

inline std::vector<std::vector<std::uint32_t>> all_permutations(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline void partitions(std::size_t n, std::size_t max_part, std::vector<std::size_t>& cur,
                       std::vector<std::vector<std::size_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

// One permutation per cycle type: cycles on consecutive points, longest first.
inline std::vector<std::vector<std::uint32_t>> conjugacy_representatives(std::size_t n) {
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> cur;
  partitions(n, n, cur, parts);
  std::vector<std::vector<std::uint32_t>> reps;
  for (const auto& part : parts) {
    std::vector<std::uint32_t> img(n);
    std::uint32_t start = 0;
    for (auto len : part) {
      for (std::uint32_t k = 0; k < len; ++k)
        img[start + k] = start + static_cast<std::uint32_t>((k + 1) % len);
      start += static_cast<std::uint32_t>(len);
    }
    reps.push_back(std::move(img));
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

inline std::uint32_t max_generator(const Word& w) {
  std::uint32_t m = 0;
  for (Letter l : w) m = std::max(m, l.generator_index());
  return m;
}

}  // namespace detail

struct QuotientSearchResult {
  enum class Status { found, exhausted, budget };
  Status status = Status::exhausted;
  std::optional<FiniteQuotient> quotient;
  std::size_t n_max = 0;
  std::size_t nodes = 0;            // permutation assignments tried
  std::size_t ball_elements = 0;    // nontrivial elements that must survive
  std::size_t relators = 0;
  std::size_t largest_degree_searched = 0;
};

inline const char* to_string(QuotientSearchResult::Status s) {
  switch (s) {
    case QuotientSearchResult::Status::found: return "found";
    case QuotientSearchResult::Status::exhausted: return "exhausted";
    case QuotientSearchResult::Status::budget: return "budget";
  }
  return "?";
}

inline constexpr std::size_t kDefaultQuotientNodes = 50'000'000;

// Searches for letter images in Sym(n), n = 1..n_max, that kill every
// cycle-basis word and keep every nontrivial element of B_radius off the
// identity. Generators are assigned in order, images in lexicographic order;
// the first generator ranges over cycle-type representatives only.
// Constraints are checked as soon as all their letters are assigned.
inline QuotientSearchResult search_quotient(const DehnEngine& engine, std::size_t n_max,
                                            std::size_t radius,
                                            std::size_t node_budget = kDefaultQuotientNodes,
                                            std::size_t ball_budget = kDefaultBallBudget) {
  const auto& p = engine.presentation();
  const std::size_t gens = p.alphabet().size();
  QuotientSearchResult res;
  res.n_max = n_max;
  auto ball = cayley_ball(engine, radius, ball_budget);
  if (ball.truncated) throw BudgetError("search_quotient: Cayley ball budget exceeded");

  std::vector<std::vector<Word>> relators_at(std::max<std::size_t>(gens, 1)), survivors_at(std::max<std::size_t>(gens, 1));
  for (const auto& c : p.components())
    for (auto& w : cycle_words(c, 0)) {
      ++res.relators;
      if (!w.empty()) relators_at[detail::max_generator(w)].push_back(std::move(w));
    }
  for (std::size_t i = 1; i < ball.size(); ++i) {
    ++res.ball_elements;
    survivors_at[detail::max_generator(ball.elements[i])].push_back(ball.elements[i]);
  }
  if (gens == 0) {
    res.status = QuotientSearchResult::Status::found;
    res.quotient = FiniteQuotient{Action{1, {}}, presentation_id(p)};
    return res;
  }

  for (std::size_t n = 1; n <= n_max; ++n) {
    res.largest_degree_searched = n;
    auto perms = detail::all_permutations(n);
    auto firsts = detail::conjugacy_representatives(n);
    std::vector<std::vector<std::uint32_t>> img(2 * gens, std::vector<std::uint32_t>(n));

    auto assign = [&](std::size_t g, const std::vector<std::uint32_t>& perm) {
      img[2 * g] = perm;
      for (std::uint32_t x = 0; x < n; ++x) img[2 * g + 1][perm[x]] = x;
    };
    auto fixes_all = [&](const Word& w) {
      for (std::uint32_t x = 0; x < n; ++x) {
        std::uint32_t y = x;
        for (Letter l : w) y = img[l.code][y];
        if (y != x) return false;
      }
      return true;
    };
    auto consistent = [&](std::size_t g) {
      for (const auto& w : relators_at[g])
        if (!fixes_all(w)) return false;
      for (const auto& w : survivors_at[g])
        if (fixes_all(w)) return false;
      return true;
    };

    std::vector<std::size_t> choice(gens, 0);
    std::size_t g = 0;
    bool found = false;
    // Iterative DFS; choice[g] is the next candidate index for generator g.
    while (true) {
      const auto& cands = g == 0 ? firsts : perms;
      if (choice[g] >= cands.size()) {
        if (g == 0) break;
        choice[g] = 0;
        --g;
        continue;
      }
      assign(g, cands[choice[g]++]);
      if (++res.nodes > node_budget) {
        res.status = QuotientSearchResult::Status::budget;
        return res;
      }
      if (!consistent(g)) continue;
      if (g + 1 == gens) {
        found = true;
        break;
      }
      ++g;
      choice[g] = 0;
    }
    if (found) {
      Action a;
      a.n = n;
      for (std::size_t k = 0; k < gens; ++k) a.images.emplace_back(img[2 * k]);
      res.status = QuotientSearchResult::Status::found;
      res.quotient = FiniteQuotient{std::move(a), presentation_id(p)};
      return res;
    }
  }
  res.status = QuotientSearchResult::Status::exhausted;
  return res;
}

// G_1 ->> G_2 ->> ... with phi_i : G_i -> F_i. Each presentation extends the
// previous one by exactly one component.
struct TowerLevel {
  Presentation presentation;
  FiniteQuotient quotient;
};

class QuotientTower {
 public:
  QuotientTower() = default;
  explicit QuotientTower(std::vector<TowerLevel> levels) : levels_(std::move(levels)) {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const auto& p = levels_[i].presentation;
      if (levels_[i].quotient.action.images.size() != p.alphabet().size())
        throw InputError("tower level " + std::to_string(i + 1) + ": one image per generator is required");
      if (i == 0) continue;
      const auto& prev = levels_[i - 1].presentation;
      if (!(prev.alphabet() == p.alphabet()))
        throw InputError("tower level " + std::to_string(i + 1) + ": alphabet changed");
      if (p.size() != prev.size() + 1)
        throw InputError("tower level " + std::to_string(i + 1) + " must add exactly one component");
      for (std::size_t c = 0; c < prev.size(); ++c)
        if (!(p.component(c) == prev.component(c)))
          throw InputError("tower level " + std::to_string(i + 1) + " changes component " +
                           std::to_string(c + 1));
    }
  }

  std::size_t size() const { return levels_.size(); }
  const TowerLevel& level(std::size_t i) const { return levels_.at(i - 1); }  // 1-based
  const std::vector<TowerLevel>& levels() const { return levels_; }

 private:
  std::vector<TowerLevel> levels_;
};

// phi_{i,j} : G_i -> F_j, evaluated letter-wise through phi_j.
class InducedMap {
 public:
  InducedMap(const Action& phi_j, std::size_t i, std::size_t j) : phi_(phi_j), i_(i), j_(j) {}
  Perm operator()(const Word& w) const { return phi_.evaluate(w); }
  std::size_t source_level() const { return i_; }
  std::size_t target_level() const { return j_; }

 private:
  Action phi_;
  std::size_t i_, j_;
};

// phi_{i,j} is well defined iff phi_j kills every relator of G_i, including
// those of components added after level j.
inline std::optional<RelatorFailure> well_definedness_failure(const QuotientTower& t, std::size_t i, std::size_t j) {
  return first_unkilled_relator(t.level(i).presentation, t.level(j).quotient.action);
}

inline InducedMap induced_map(const QuotientTower& t, std::size_t i, std::size_t j) {
  if (j < 1 || j > i || i > t.size()) throw InputError("induced_map: need 1 <= j <= i <= levels");
  if (auto f = well_definedness_failure(t, i, j)) {
    const auto& p = t.level(i).presentation;
    throw PreconditionError("phi_{" + std::to_string(i) + "," + std::to_string(j) +
                            "} is not well defined: cycle word '" + p.alphabet().format(f->word) +
                            "' of component " + std::to_string(f->component + 1) + " (level " +
                            std::to_string(i) + ") does not map to the identity");
  }
  return InducedMap(t.level(j).quotient.action, i, j);
}

struct BallInjectivity {
  std::size_t level = 0;
  std::size_t radius = 0;
  std::size_t checked = 0;
  bool pass = true;
  bool truncated = false;
  std::vector<Word> failures;  // nontrivial ball elements mapped to the identity
};

struct WellDefinedness {
  std::size_t i = 0, j = 0;
  bool pass = true;
  std::optional<RelatorFailure> failure;
};

struct Factorization {
  std::size_t j = 0, k = 0, l = 0;
  std::size_t evaluations = 0;
  std::size_t mismatches = 0;
};

struct TowerCertificate {
  std::vector<BallInjectivity> injectivity;     // one per level j
  std::vector<WellDefinedness> well_defined;    // all j <= i
  std::vector<Factorization> factorization;     // all j <= k <= l
  std::vector<bool> c_bits;                     // (C_i)
  std::vector<bool> d_bits;                     // (D_i)
};

// Balls are computed once per level and shared by the (C) and (D) checks.
inline TowerCertificate check_conditions(const QuotientTower& t, std::size_t ball_budget = kDefaultBallBudget) {
  TowerCertificate cert;
  std::vector<CayleyBall> balls;
  for (std::size_t j = 1; j <= t.size(); ++j) {
    DehnEngine engine(t.level(j).presentation);
    balls.push_back(cayley_ball(engine, j, ball_budget));
    const auto& b = balls.back();
    BallInjectivity inj;
    inj.level = j;
    inj.radius = j;
    inj.truncated = b.truncated;
    const auto& phi = t.level(j).quotient.action;
    for (std::size_t e = 1; e < b.size(); ++e) {
      ++inj.checked;
      if (phi.evaluate(b.elements[e]).is_identity()) {
        inj.pass = false;
        if (inj.failures.size() < 20) inj.failures.push_back(b.elements[e]);
      }
    }
    if (b.truncated) inj.pass = false;
    cert.injectivity.push_back(std::move(inj));
  }
  std::map<std::pair<std::size_t, std::size_t>, bool> wd;
  for (std::size_t i = 1; i <= t.size(); ++i)
    for (std::size_t j = 1; j <= i; ++j) {
      WellDefinedness w{i, j, true, well_definedness_failure(t, i, j)};
      w.pass = !w.failure;
      wd[{i, j}] = w.pass;
      cert.well_defined.push_back(std::move(w));
    }
  for (std::size_t l = 1; l <= t.size(); ++l)
    for (std::size_t k = 1; k <= l; ++k)
      for (std::size_t j = 1; j <= k; ++j) {
        Factorization f{j, k, l, 0, 0};
        const auto& phi = t.level(j).quotient.action;
        // q_{k,l} sends a word to the same word; both sides evaluate through phi_j.
        for (const auto& w : balls[k - 1].elements) {
          ++f.evaluations;
          if (!(phi.evaluate(w) == InducedMap(phi, k, j)(w))) ++f.mismatches;
        }
        cert.factorization.push_back(f);
      }
  for (std::size_t i = 1; i <= t.size(); ++i) {
    bool c = true;
    for (std::size_t j = 1; j <= i; ++j) c = c && cert.injectivity[j - 1].pass;
    cert.c_bits.push_back(c);
    bool d = true;
    for (const auto& w : cert.well_defined)
      if (w.i <= i) d = d && w.pass;
    for (const auto& f : cert.factorization)
      if (f.l <= i) d = d && f.mismatches == 0;
    cert.d_bits.push_back(d);
  }
  return cert;
}

inline constexpr std::size_t kDefaultGroupOrderBudget = 100000;

struct QuotientCayleyGraph {
  LabelledGraph graph;
  std::vector<Perm> elements;       // vertex k <-> elements[k]
  std::size_t expected_degree = 0;  // distinct non-identity images of the signed letters
};

inline std::size_t expected_cayley_degree(const Action& action) {
  std::set<Perm> s;
  for (std::uint32_t code = 0; code < 2 * action.images.size(); ++code) {
    Perm p = action.image(Letter{code});
    if (!p.is_identity()) s.insert(std::move(p));
  }
  return s.size();
}

// Cayley graph of the subgroup of Sym(n) generated by the letter images.
// Letters mapping to the identity and repeated images contribute no edges.
inline QuotientCayleyGraph quotient_cayley_graph(const Alphabet& alphabet, const Action& action,
                                                 std::size_t max_order = kDefaultGroupOrderBudget) {
  std::map<Perm, std::size_t> index;
  std::vector<Perm> elems{Perm::identity(action.n)};
  index.emplace(elems[0], 0);
  std::vector<Perm> gens;
  for (std::uint32_t code = 0; code < 2 * action.images.size(); ++code) gens.push_back(action.image(Letter{code}));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) {
      Perm h = elems[i] * s;
      if (index.emplace(h, elems.size()).second) {
        if (elems.size() >= max_order)
          throw BudgetError("quotient_cayley_graph: group order exceeds " + std::to_string(max_order));
        elems.push_back(std::move(h));
      }
    }
  const std::size_t width = std::to_string(elems.size()).size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto s = std::to_string(i);
    names.push_back("g" + std::string(width - s.size(), '0') + s);
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<LabelledGraph::Edge> edges;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::uint32_t g = 0; g < action.images.size(); ++g) {
      std::size_t j = index.at(elems[i] * action.images[g]);
      if (i == j) continue;
      if (!seen.insert({std::min(i, j), std::max(i, j)}).second) continue;
      edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j), Letter::generator(g)});
    }
  QuotientCayleyGraph q;
  q.graph = LabelledGraph::from_indexed(alphabet, "cayley", names, edges);
  // from_indexed keeps the zero-padded names in discovery order.
  q.elements = std::move(elems);
  q.expected_degree = expected_cayley_degree(action);
  if (regular_degree(q.graph) != std::optional<std::size_t>(q.expected_degree))
    throw PreconditionError("quotient_cayley_graph: degree check failed");
  return q;
}

// Right regular action of the subgroup of F_1 x ... x F_k generated by the
// tuples of letter images. Point 0 is the identity, so closed paths through
// it in a pullback read words that every factor maps to the identity.
inline Action regular_action(const std::vector<Action>& factors,
                             std::size_t max_order = kDefaultGroupOrderBudget) {
  if (factors.empty()) throw InputError("regular_action: no factors");
  const std::size_t gens = factors[0].images.size();
  for (const auto& f : factors)
    if (f.images.size() != gens) throw InputError("regular_action: factors disagree on the alphabet");
  using Tuple = std::vector<Perm>;
  std::map<Tuple, std::uint32_t> index;
  std::vector<Tuple> elems;
  Tuple id;
  for (const auto& f : factors) id.push_back(Perm::identity(f.n));
  index.emplace(id, 0);
  elems.push_back(id);
  std::vector<std::vector<std::uint32_t>> images(gens);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t g = 0; g < gens; ++g) {
      Tuple t = elems[i];
      for (std::size_t k = 0; k < factors.size(); ++k) t[k] = t[k] * factors[k].images[g];
      auto [it, inserted] = index.emplace(t, static_cast<std::uint32_t>(elems.size()));
      if (inserted) {
        if (elems.size() >= max_order)
          throw BudgetError("regular_action: group order exceeds " + std::to_string(max_order));
        elems.push_back(std::move(t));
      }
      images[g].push_back(it->second);
    }
  Action a;
  a.n = elems.size();
  for (auto& img : images) a.images.emplace_back(std::move(img));
  return a;
}

inline Eigen::MatrixXd adjacency_matrix(const LabelledGraph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.vertex_count()),
                                            static_cast<Eigen::Index>(g.vertex_count()));
  for (const auto& e : g.edges()) {
    a(e.from, e.to) = 1.0;
    a(e.to, e.from) = 1.0;
  }
  return a;
}

// Adjacency eigenvalues in non-increasing order (dense symmetric solver).
inline std::vector<double> adjacency_spectrum(const LabelledGraph& g) {
  if (g.vertex_count() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency_matrix(g), Eigen::EigenvaluesOnly);
  std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.rbegin(), ev.rend());
  return ev;
}

inline constexpr std::size_t kSpectralLimit = 500;

struct BoxSpaceLevel {
  std::size_t level = 0;
  std::size_t order = 0;
  std::optional<std::size_t> degree;
  Distance girth;
  std::size_t diameter = 0;
  std::vector<double> spectrum;        // empty when order > kSpectralLimit
  std::optional<double> spectral_gap;  // largest minus second-largest eigenvalue
  bool top_eigenvalue_is_degree = false;
  std::size_t offset = 0;
  LabelledGraph graph;
};

struct BoxSpaceReport {
  std::vector<BoxSpaceLevel> levels;
};

// Level k is placed at offset[k] = offset[k-1] + diam[k-1] + max(max_{m<k} diam[m], k),
// so distinct levels are at least max(previous diameters, k) apart.
inline BoxSpaceReport box_space(const QuotientTower& t, std::size_t max_order = kDefaultGroupOrderBudget) {
  BoxSpaceReport r;
  std::size_t max_diam = 0;
  for (std::size_t i = 1; i <= t.size(); ++i) {
    BoxSpaceLevel lv;
    lv.level = i;
    auto q = quotient_cayley_graph(t.level(i).presentation.alphabet(), t.level(i).quotient.action, max_order);
    lv.order = q.graph.vertex_count();
    lv.degree = regular_degree(q.graph);
    lv.girth = girth(q.graph);
    for (const auto& d : distances(q.graph, 0)) lv.diameter = std::max(lv.diameter, d.value());
    if (lv.order <= kSpectralLimit) {
      lv.spectrum = adjacency_spectrum(q.graph);
      if (lv.spectrum.size() >= 2) lv.spectral_gap = lv.spectrum[0] - lv.spectrum[1];
      else if (lv.spectrum.size() == 1) lv.spectral_gap = 0.0;
      lv.top_eigenvalue_is_degree =
          lv.degree && std::abs(lv.spectrum[0] - static_cast<double>(*lv.degree)) < 1e-9;
    }
    if (i == 1) {
      lv.offset = 0;
    } else {
      const auto& prev = r.levels.back();
      lv.offset = prev.offset + prev.diameter + std::max(max_diam, i);
    }
    max_diam = std::max(max_diam, lv.diameter);
    lv.graph = std::move(q.graph);
    r.levels.push_back(std::move(lv));
  }
  return r;
}

}  // namespace gsc
