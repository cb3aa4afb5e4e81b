#pragma once

// JSON codecs for graphs, presentations, covers, actions and towers, plus
// DOT and CSV emitters. Object keys are emitted in sorted order.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsc/covers.hpp"
#include "gsc/quotients.hpp"
#include "gsc/rational.hpp"
#include "gsc/smallcancel.hpp"

namespace gsc {

using Json = nlohmann::json;

// Schema violation at a JSON pointer.
class SchemaError : public InputError {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : InputError((pointer.empty() ? std::string("/") : pointer) + ": " + what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

namespace detail {

inline std::string child(const std::string& at, const std::string& key) {
  std::string k;
  for (char c : key) {
    if (c == '~') k += "~0";
    else if (c == '/') k += "~1";
    else k += c;
  }
  return at + "/" + k;
}
inline std::string child(const std::string& at, std::size_t i) { return at + "/" + std::to_string(i); }

inline const Json& require(const Json& j, const std::string& at, const std::string& key) {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(child(at, key), "missing");
  return *it;
}

inline std::string as_string(const Json& j, const std::string& at) {
  if (!j.is_string()) throw SchemaError(at, "expected a string");
  return j.get<std::string>();
}

inline std::uint64_t as_uint(const Json& j, const std::string& at) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw SchemaError(at, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline const Json& as_array(const Json& j, const std::string& at) {
  if (!j.is_array()) throw SchemaError(at, "expected an array");
  return j;
}

template <class F>
auto at_path(const std::string& at, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const InputError& e) {
    throw SchemaError(at, e.what());
  }
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& source = "input") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) { return parse_json_text(read_text_file(path), path); }

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---- alphabet, words, rationals

inline Json to_json(const Alphabet& a) { return Json(a.names()); }

inline Alphabet alphabet_from_json(const Json& j, const std::string& at) {
  detail::as_array(j, at);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.size(); ++i) names.push_back(detail::as_string(j[i], detail::child(at, i)));
  return detail::at_path(at, [&] { return Alphabet(names); });
}

inline Word word_from_json(const Alphabet& a, const Json& j, const std::string& at) {
  auto s = detail::as_string(j, at);
  return detail::at_path(at, [&] { return a.parse_word(s); });
}

inline Rational rational_from_json(const Json& j, const std::string& at) {
  auto s = detail::as_string(j, at);
  return detail::at_path(at, [&] { return parse_rational(s); });
}

// ---- graphs

// Members shared by graph files and presentation components.
inline Json graph_body(const LabelledGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"from", g.vertex_name(e.from)}, {"to", g.vertex_name(e.to)}, {"label", g.alphabet().format(e.label)}});
  return {{"name", g.name()}, {"vertices", g.vertex_names()}, {"edges", edges}};
}

inline Json to_json(const LabelledGraph& g) {
  Json j = graph_body(g);
  j["alphabet"] = to_json(g.alphabet());
  return j;
}

inline GraphSpec graph_spec_from_json(const Json& j, const Alphabet& a, const std::string& at,
                                      const std::string& default_name = "graph") {
  if (!j.is_object()) throw SchemaError(at, "expected an object");
  GraphSpec s;
  s.alphabet = a;
  s.name = j.contains("name") ? detail::as_string(j["name"], detail::child(at, "name")) : default_name;
  const auto vat = detail::child(at, "vertices");
  const auto& vs = detail::as_array(detail::require(j, at, "vertices"), vat);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& v = vs[i];
    if (v.is_string()) s.vertices.push_back(v.get<std::string>());
    else if (v.is_number_integer()) s.vertices.push_back(std::to_string(v.get<std::int64_t>()));
    else throw SchemaError(detail::child(vat, i), "vertex names are strings or integers");
  }
  auto vname = [&](const Json& v, const std::string& p) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    throw SchemaError(p, "vertex names are strings or integers");
  };
  const auto eat = detail::child(at, "edges");
  const Json empty = Json::array();
  const auto& es = j.contains("edges") ? detail::as_array(j["edges"], eat) : empty;
  std::set<std::string> known(s.vertices.begin(), s.vertices.end());
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto ep = detail::child(eat, i);
    const auto& e = es[i];
    auto from = vname(detail::require(e, ep, "from"), detail::child(ep, "from"));
    auto to = vname(detail::require(e, ep, "to"), detail::child(ep, "to"));
    if (!known.count(from)) throw SchemaError(detail::child(ep, "from"), "unknown vertex '" + from + "'");
    if (!known.count(to)) throw SchemaError(detail::child(ep, "to"), "unknown vertex '" + to + "'");
    auto lp = detail::child(ep, "label");
    auto label = detail::as_string(detail::require(e, ep, "label"), lp);
    Letter l = detail::at_path(lp, [&] { return a.parse_letter(label); });
    s.edges.push_back({from, to, l});
  }
  if (std::set<std::string>(s.vertices.begin(), s.vertices.end()).size() != s.vertices.size())
    throw SchemaError(vat, "duplicate vertex name");
  return s;
}

inline GraphSpec graph_spec_from_json(const Json& j, const std::string& at = "") {
  auto a = alphabet_from_json(detail::require(j, at, "alphabet"), detail::child(at, "alphabet"));
  return graph_spec_from_json(j, a, at);
}

inline LabelledGraph graph_from_json(const Json& j, const std::string& at = "") {
  auto s = graph_spec_from_json(j, at);
  return detail::at_path(at, [&] { return LabelledGraph(s); });
}

// ---- presentations

inline Json to_json(const Presentation& p) {
  Json comps = Json::array();
  for (const auto& c : p.components()) comps.push_back(graph_body(c));
  return {{"alphabet", to_json(p.alphabet())}, {"lambda", format_rational(p.lambda())}, {"components", comps}};
}

// Accepts a presentation document or a single graph document. A graph with
// no vertices is the empty presentation.
inline Presentation presentation_from_json(const Json& j, const std::string& at = "") {
  auto a = alphabet_from_json(detail::require(j, at, "alphabet"), detail::child(at, "alphabet"));
  Rational lambda(1, 6);
  if (j.contains("lambda")) lambda = rational_from_json(j["lambda"], detail::child(at, "lambda"));
  std::vector<LabelledGraph> comps;
  if (j.contains("components")) {
    const auto cat = detail::child(at, "components");
    const auto& cs = detail::as_array(j["components"], cat);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      auto p = detail::child(cat, i);
      auto s = graph_spec_from_json(cs[i], a, p, "component" + std::to_string(i + 1));
      comps.push_back(detail::at_path(p, [&] { return LabelledGraph(s); }));
    }
  } else {
    auto s = graph_spec_from_json(j, a, at);
    if (!s.vertices.empty()) {
      auto g = detail::at_path(at, [&] { return LabelledGraph(s); });
      auto parts = connected_components(g);
      comps.insert(comps.end(), parts.begin(), parts.end());
    }
  }
  return detail::at_path(at, [&] { return Presentation(a, comps, lambda); });
}

// ---- actions and quotients

inline Json to_json(const Action& act, const Alphabet& a) {
  Json images = Json::object();
  for (std::size_t g = 0; g < act.images.size(); ++g) images[a.names()[g]] = act.images[g].images();
  return {{"n", act.n}, {"images", images}};
}

inline Action action_from_json(const Json& j, const Alphabet& a, const std::string& at = "") {
  Action act;
  act.n = detail::as_uint(detail::require(j, at, "n"), detail::child(at, "n"));
  if (act.n == 0) throw SchemaError(detail::child(at, "n"), "degree must be positive");
  const auto iat = detail::child(at, "images");
  const auto& imgs = detail::require(j, at, "images");
  if (!imgs.is_object()) throw SchemaError(iat, "expected an object keyed by letter");
  for (auto it = imgs.begin(); it != imgs.end(); ++it)
    if (!a.contains(it.key())) throw SchemaError(detail::child(iat, it.key()), "unknown letter");
  for (const auto& name : a.names()) {
    const auto p = detail::child(iat, name);
    std::vector<std::uint32_t> img;
    if (!imgs.contains(name)) {
      for (std::uint32_t x = 0; x < act.n; ++x) img.push_back(x);
    } else {
      const auto& arr = detail::as_array(imgs[name], p);
      for (std::size_t i = 0; i < arr.size(); ++i)
        img.push_back(static_cast<std::uint32_t>(detail::as_uint(arr[i], detail::child(p, i))));
    }
    if (img.size() != act.n) throw SchemaError(p, "image must list n points");
    act.images.push_back(detail::at_path(p, [&] { return Perm(img); }));
  }
  return act;
}

inline Json to_json(const QuotientTower& t) {
  Json levels = Json::array();
  for (const auto& lv : t.levels()) {
    Json q = to_json(lv.quotient.action, lv.presentation.alphabet());
    q["source"] = lv.quotient.source;
    levels.push_back({{"presentation", to_json(lv.presentation)}, {"quotient", q}});
  }
  return {{"levels", levels}};
}

inline QuotientTower tower_from_json(const Json& j, const std::string& at = "") {
  const auto lat = detail::child(at, "levels");
  const auto& ls = detail::as_array(detail::require(j, at, "levels"), lat);
  std::vector<TowerLevel> levels;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const auto p = detail::child(lat, i);
    auto pres = presentation_from_json(detail::require(ls[i], p, "presentation"), detail::child(p, "presentation"));
    const auto qp = detail::child(p, "quotient");
    const auto& qj = detail::require(ls[i], p, "quotient");
    auto act = action_from_json(qj, pres.alphabet(), qp);
    std::string source = qj.contains("source") ? detail::as_string(qj["source"], detail::child(qp, "source"))
                                               : presentation_id(pres);
    levels.push_back({std::move(pres), FiniteQuotient{std::move(act), source}});
  }
  return detail::at_path(at, [&] { return QuotientTower(std::move(levels)); });
}

// ---- covers

inline Json to_json(const Cover& c) {
  Json proj = Json::array();
  for (VertexId x = 0; x < c.projection.size(); ++x)
    proj.push_back({c.total.vertex_name(x), c.base.vertex_name(c.projection[x])});
  return {{"total", to_json(c.total)}, {"base", to_json(c.base)}, {"projection", proj}, {"degree", c.degree}};
}

inline Cover cover_from_json(const Json& j, const std::string& at = "") {
  Cover c;
  c.total = graph_from_json(detail::require(j, at, "total"), detail::child(at, "total"));
  c.base = graph_from_json(detail::require(j, at, "base"), detail::child(at, "base"));
  if (!(c.total.alphabet() == c.base.alphabet())) throw SchemaError(at, "total and base alphabets differ");
  c.degree = detail::as_uint(detail::require(j, at, "degree"), detail::child(at, "degree"));
  const auto pat = detail::child(at, "projection");
  const auto& ps = detail::as_array(detail::require(j, at, "projection"), pat);
  const auto unset = std::numeric_limits<VertexId>::max();
  c.projection.assign(c.total.vertex_count(), unset);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto p = detail::child(pat, i);
    if (!ps[i].is_array() || ps[i].size() != 2) throw SchemaError(p, "expected [total_vertex, base_vertex]");
    auto x = c.total.find_vertex(detail::as_string(ps[i][0], detail::child(p, 0)));
    auto b = c.base.find_vertex(detail::as_string(ps[i][1], detail::child(p, 1)));
    if (!x || !b) throw SchemaError(p, "unknown vertex");
    c.projection[*x] = *b;
  }
  for (auto v : c.projection)
    if (v == unset) throw SchemaError(pat, "projection must cover every total vertex");
  if (auto defect = covering_defect(c); !defect.empty()) throw SchemaError(at, "not a covering map: " + defect);
  return c;
}

// ---- DOT and CSV

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string to_dot(const LabelledGraph& g) {
  std::ostringstream os;
  os << "digraph " << dot_quote(g.name()) << " {\n";
  for (const auto& v : g.vertex_names()) os << "  " << dot_quote(v) << ";\n";
  for (const auto& e : g.edges())
    os << "  " << dot_quote(g.vertex_name(e.from)) << " -> " << dot_quote(g.vertex_name(e.to))
       << " [label=" << dot_quote(g.alphabet().format(e.label)) << "];\n";
  os << "}\n";
  return os.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

}  // namespace gsc
