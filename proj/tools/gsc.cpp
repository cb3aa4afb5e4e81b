#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gsc/manifest.hpp"
#include "gsc/pipeline.hpp"

using namespace gsc;

namespace {

enum Exit { kPass = 0, kFail = 1, kInput = 2, kBudget = 3 };

struct Budgets {
  std::size_t ball = kDefaultBallBudget;
  std::size_t cover = kDefaultCoverBudget;
  std::size_t nodes = kDefaultQuotientNodes;
  std::size_t order = kDefaultGroupOrderBudget;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> n_max;
};

std::size_t env_budget(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v) return fallback;
  std::string s(v);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw InputError(std::string(name) + ": expected a non-negative integer, got '" + s + "'");
  return std::stoull(s);
}

Budgets read_budgets() {
  Budgets b;
  b.ball = env_budget("GSC_BUDGET_BALL", b.ball);
  b.cover = env_budget("GSC_BUDGET_COVER", b.cover);
  b.nodes = env_budget("GSC_BUDGET_NODES", b.nodes);
  b.order = env_budget("GSC_BUDGET_ORDER", b.order);
  if (std::getenv("GSC_BUDGET_ITERATIONS")) b.iterations = env_budget("GSC_BUDGET_ITERATIONS", 0);
  if (std::getenv("GSC_BUDGET_NMAX")) b.n_max = env_budget("GSC_BUDGET_NMAX", 0);
  return b;
}

Json budgets_json(const Budgets& b) {
  Json j = {{"ball", b.ball}, {"cover", b.cover}, {"nodes", b.nodes}, {"order", b.order}};
  if (b.iterations) j["iterations"] = *b.iterations;
  if (b.n_max) j["n_max"] = *b.n_max;
  return j;
}

struct Common {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t jobs = 1;
  bool clock = false;
};

// Per-invocation context: reads inputs, records digests, writes outputs.
class Run {
 public:
  Run(std::string command, const Common& c, const Budgets& b) : common_(c) {
    manifest_.command = std::move(command);
    manifest_.seed = c.seed;
    manifest_.config = {{"budgets", budgets_json(b)}, {"jobs", c.jobs}};
    if (c.clock) manifest_.stamp_clock();
  }

  Json read_json(const std::string& path) {
    auto text = read_text_file(path);
    manifest_.add_input(path, text);
    return parse_json_text(text, path);
  }

  void set(const std::string& key, Json v) { manifest_.config[key] = std::move(v); }
  RunManifest& manifest() { return manifest_; }

  // JSON document with the manifest embedded, to --out or stdout.
  void emit(Json doc) {
    doc["manifest"] = to_json(manifest_);
    write(common_.out, dump(doc));
  }

  // Side outputs carry the manifest in a leading comment line.
  void emit_side(const std::string& path, const std::string& comment, const std::string& body) {
    write(path, comment + " manifest: " + to_json(manifest_).dump() + "\n" + body);
  }

 private:
  static void write(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_text_file(path, text);
  }
  Common common_;
  RunManifest manifest_;
};

Json occurrence_json(const Presentation& p, const Occurrence& o) {
  const auto& g = p.component(o.component);
  Json vs = Json::array();
  for (auto v : o.path.vertices) vs.push_back(g.vertex_name(v));
  return {{"component", g.name()}, {"vertices", vs}, {"word", p.alphabet().format(o.path.word)}};
}

Json piece_json(const Presentation& p, const Piece& pc) {
  return {{"word", p.alphabet().format(pc.word)}, {"length", pc.length()},
          {"first", occurrence_json(p, pc.a)}, {"second", occurrence_json(p, pc.b)}};
}

// Graph specs of a graph or presentation document, without validation.
std::vector<GraphSpec> document_specs(const Json& j) {
  auto a = alphabet_from_json(detail::require(j, "", "alphabet"), "/alphabet");
  std::vector<GraphSpec> specs;
  if (j.contains("components")) {
    const auto& cs = detail::as_array(j["components"], "/components");
    for (std::size_t i = 0; i < cs.size(); ++i)
      specs.push_back(graph_spec_from_json(cs[i], a, detail::child("/components", i), "component" + std::to_string(i + 1)));
  } else {
    specs.push_back(graph_spec_from_json(j, a, ""));
  }
  return specs;
}

std::string usage_text(CLI::App& app) { return app.help(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gsc: graphical small-cancellation workbench"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out,-o", common.out, "Output file (default: stdout)");
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--jobs,-j", common.jobs, "Worker count")->check(CLI::PositiveNumber);
    sub->add_flag("--manifest-clock", common.clock, "Record wall-clock time in the manifest");
  };

  std::string file, file2, lambda_text, word_text, action_file, tower_file, csv_file, dot_file, config_file;
  std::size_t iterate = 1, max_length = 0, radius = 1, component = 0, n_max = 8, levels = 3;
  bool z2 = false, full = false, strong = false, partial = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check labelling invariants of a graph or presentation");
  validate_cmd->add_option("file", file)->required();
  add_common(validate_cmd);

  auto* pieces_cmd = app.add_subcommand("pieces", "Enumerate maximal pieces");
  pieces_cmd->add_option("file", file)->required();
  pieces_cmd->add_option("--max-length", max_length, "Longest piece considered (default: largest girth)");
  add_common(pieces_cmd);

  auto* check_cmd = app.add_subcommand("check", "Decide C'(lambda) or the strong condition");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--lambda", lambda_text, "Rational p/q overriding the file");
  check_cmd->add_flag("--strong", strong, "Check the strong condition instead");
  add_common(check_cmd);

  auto* cover_cmd = app.add_subcommand("cover", "Build a covering graph");
  cover_cmd->add_option("file", file)->required();
  cover_cmd->add_flag("--z2", z2, "Z2-homology cover");
  cover_cmd->add_option("--iterate", iterate, "Number of Z2 stages")->check(CLI::PositiveNumber);
  cover_cmd->add_option("--action", action_file, "Pull back a permutation action");
  cover_cmd->add_flag("--full", full, "Keep every component of the pullback");
  add_common(cover_cmd);

  auto* walls_cmd = app.add_subcommand("walls", "Walls induced by a cover");
  walls_cmd->add_option("file", file, "Cover JSON, or a graph (its Z2-homology cover is used)")->required();
  walls_cmd->add_option("--csv", csv_file, "CSV of sampled distance ratios");
  add_common(walls_cmd);

  auto* word_cmd = app.add_subcommand("word", "Solve the word problem");
  word_cmd->add_option("file", file)->required();
  word_cmd->add_option("--check", word_text, "Word to test, letters separated by spaces")->required();
  add_common(word_cmd);

  auto* ball_cmd = app.add_subcommand("ball", "Cayley-graph ball");
  ball_cmd->add_option("file", file)->required();
  ball_cmd->add_option("--radius", radius)->required();
  ball_cmd->add_option("--dot", dot_file, "Write the ball as DOT");
  add_common(ball_cmd);

  auto* embed_cmd = app.add_subcommand("embed", "Check the isometric embedding of a component");
  embed_cmd->add_option("file", file)->required();
  embed_cmd->add_option("--component", component, "Component index (0-based)");
  embed_cmd->add_option("--radius", radius)->required();
  embed_cmd->add_flag("--partial", partial, "Only use vertices within the radius of the basepoint");
  add_common(embed_cmd);

  auto* quotient_cmd = app.add_subcommand("quotient", "Search a finite permutation quotient");
  quotient_cmd->add_option("file", file)->required();
  quotient_cmd->add_option("--nmax", n_max, "Largest permutation degree");
  quotient_cmd->add_option("--radius", radius, "Ball radius that must inject")->required();
  add_common(quotient_cmd);

  auto* tower_cmd = app.add_subcommand("tower", "Quotient towers");
  tower_cmd->require_subcommand(1);
  auto* tower_check_cmd = tower_cmd->add_subcommand("check", "Certify conditions (C) and (D)");
  tower_check_cmd->add_option("file", tower_file)->required();
  add_common(tower_check_cmd);

  auto* box_cmd = app.add_subcommand("boxspace", "Box-space report of a tower");
  box_cmd->add_option("file", tower_file)->required();
  box_cmd->add_option("--csv", csv_file, "CSV of per-level statistics");
  add_common(box_cmd);

  auto* pipe_cmd = app.add_subcommand("pipeline", "Inductive construction");
  pipe_cmd->require_subcommand(1);
  auto* run_cmd = pipe_cmd->add_subcommand("run", "Run the construction");
  run_cmd->add_option("--config", config_file, "Pipeline config JSON");
  run_cmd->add_option("--levels", levels)->check(CLI::PositiveNumber);
  run_cmd->add_option("--csv", csv_file, "CSV summary");
  add_common(run_cmd);
  auto* verify_cmd = pipe_cmd->add_subcommand("verify", "Recompute every certificate of a transcript");
  verify_cmd->add_option("file", file)->required();
  add_common(verify_cmd);

  if (argc > 1 && argv[1][0] != '-') {
    const std::string cmd = argv[1];
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == cmd;
    if (!known) {
      std::cerr << "gsc: unknown command '" << cmd << "'\n\n" << usage_text(app);
      return kInput;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "gsc: " << e.what() << "\n\n" << usage_text(app);
    return kInput;
  }

  try {
    const auto budgets = read_budgets();
    auto input_presentation = [&](Run& run) { return presentation_from_json(run.read_json(file)); };

    if (validate_cmd->parsed()) {
      Run run("validate", common, budgets);
      auto specs = document_specs(run.read_json(file));
      bool ok = true;
      Json comps = Json::array();
      for (const auto& s : specs) {
        auto r = validate(s);
        Json vs = Json::array();
        for (const auto& v : r.violations)
          vs.push_back({{"kind", to_string(v.kind)}, {"vertex", v.vertex}, {"detail", v.detail}});
        bool connected = true;
        if (r.ok()) connected = s.vertices.empty() || is_connected(LabelledGraph(s));
        ok = ok && r.ok();
        comps.push_back({{"name", s.name}, {"valid", r.ok()}, {"connected", connected}, {"violations", vs}});
      }
      run.emit({{"valid", ok}, {"components", comps}});
      return ok ? kPass : kFail;
    }

    if (pieces_cmd->parsed()) {
      Run run("pieces", common, budgets);
      auto p = input_presentation(run);
      auto pieces = max_length ? enumerate_pieces(p, max_length) : enumerate_pieces(p);
      Json arr = Json::array();
      for (const auto& pc : pieces) arr.push_back(piece_json(p, pc));
      run.emit({{"count", pieces.size()}, {"pieces", arr}});
      return kPass;
    }

    if (check_cmd->parsed()) {
      Run run("check", common, budgets);
      auto p = input_presentation(run);
      if (!lambda_text.empty()) p = p.with_lambda(parse_rational(lambda_text));
      run.set("lambda", format_rational(p.lambda()));
      Json doc = {{"lambda", format_rational(p.lambda())}, {"condition", strong ? "strong" : "C'"}};
      bool pass;
      if (strong) {
        auto v = check_strong_condition(p);
        pass = v.pass;
        doc["warnings"] = v.warnings;
        doc["witness"] = v.first ? Json{{"first", occurrence_json(p, *v.first)}, {"second", occurrence_json(p, *v.second)}}
                                 : Json(nullptr);
      } else {
        auto v = check_cprime(p);
        pass = v.pass;
        doc["warnings"] = v.warnings;
        doc["witness"] = v.witness ? piece_json(p, *v.witness) : Json(nullptr);
        if (!v.pass) {
          doc["component"] = p.component(v.component).name();
          doc["girth"] = v.girth.value();
          doc["bound"] = format_rational(v.bound);
        }
      }
      doc["pass"] = pass;
      run.emit(doc);
      return pass ? kPass : kFail;
    }

    if (cover_cmd->parsed()) {
      Run run("cover", common, budgets);
      auto g = graph_from_json(run.read_json(file));
      if (z2 == !action_file.empty()) throw InputError("cover: give exactly one of --z2 and --action");
      Cover c;
      if (z2) {
        run.set("iterate", iterate);
        c = iterate_z2_cover(g, iterate, budgets.cover);
      } else {
        auto act = action_from_json(run.read_json(action_file), g.alphabet());
        run.set("full", full);
        c = cover_from_action(g, act, full, budgets.cover);
      }
      run.emit(to_json(c));
      return kPass;
    }

    if (walls_cmd->parsed()) {
      Run run("walls", common, budgets);
      auto j = run.read_json(file);
      Cover c = j.contains("total") ? cover_from_json(j) : z2_homology_cover(graph_from_json(j), budgets.cover);
      auto sys = walls_from_cover(c);
      auto d = walling_diagnostics(sys);
      const auto& h = sys.host;
      Json walls = Json::array();
      for (const auto& w : sys.walls) {
        Json es = Json::array();
        for (auto e : w.edges) {
          const auto& ed = h.edges()[e];
          es.push_back({h.vertex_name(ed.from), h.vertex_name(ed.to)});
        }
        const auto& be = c.base.edges()[w.base_edge];
        walls.push_back({{"base_edge", {c.base.vertex_name(be.from), c.base.vertex_name(be.to)}}, {"edges", es}});
      }
      Json fails = Json::array();
      for (const auto& f : sys.failures) {
        const auto& be = c.base.edges()[f.base_edge];
        fails.push_back({{"base_edge", {c.base.vertex_name(be.from), c.base.vertex_name(be.to)}},
                         {"complement_components", f.component_count}});
      }
      Json diag = to_json(d, true);
      diag.erase("note");
      diag.erase("status");
      diag.erase("available");
      run.emit({{"walls", walls}, {"failures", fails}, {"diagnostics", diag}});
      if (!csv_file.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& s : d.samples)
          rows.push_back({h.vertex_name(s.u), h.vertex_name(s.v), std::to_string(s.path_distance),
                          std::to_string(s.wall_distance)});
        run.emit_side(csv_file, "#", to_csv({"u", "v", "path_distance", "wall_distance"}, rows));
      }
      return kPass;
    }

    if (word_cmd->parsed()) {
      Run run("word", common, budgets);
      auto p = input_presentation(run);
      DehnEngine engine(p);
      auto w = p.alphabet().parse_word(word_text);
      auto r = engine.reduce(w);
      Json steps = Json::array();
      for (const auto& s : r.trace)
        steps.push_back({{"component", p.component(s.component).name()}, {"position", s.position},
                         {"removed", p.alphabet().format(s.removed)}, {"inserted", p.alphabet().format(s.inserted)},
                         {"cyclic", s.cyclic}, {"result", p.alphabet().format(s.result)}});
      run.emit({{"word", p.alphabet().format(w)}, {"reduced", p.alphabet().format(r.word)},
                {"trivial", engine.is_trivial(w)}, {"steps", steps}});
      return kPass;
    }

    if (ball_cmd->parsed()) {
      Run run("ball", common, budgets);
      auto p = input_presentation(run);
      run.set("radius", radius);
      DehnEngine engine(p);
      auto b = cayley_ball(engine, radius, budgets.ball, !dot_file.empty());
      if (b.truncated) throw BudgetError("ball: more than " + std::to_string(budgets.ball) + " elements");
      Json spheres = Json::array();
      for (std::size_t r = 0; r <= radius; ++r) spheres.push_back(b.count_within(r) - (r ? b.count_within(r - 1) : 0));
      Json elems = Json::array();
      for (const auto& w : b.elements) elems.push_back(p.alphabet().format(w));
      run.emit({{"radius", radius}, {"size", b.size()}, {"spheres", spheres}, {"elements", elems}});
      if (!dot_file.empty()) {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < b.size(); ++i) names.push_back("e" + std::to_string(i));
        std::ostringstream os;
        os << "digraph \"ball\" {\n";
        for (std::size_t i = 0; i < b.size(); ++i)
          os << "  " << names[i] << " [label=" << dot_quote(b.elements[i].empty() ? "1" : p.alphabet().format(b.elements[i])) << "];\n";
        for (const auto& e : b.adjacency)
          if (!e.label.is_inverse())
            os << "  " << names[e.from] << " -> " << names[e.to] << " [label=" << dot_quote(p.alphabet().format(e.label)) << "];\n";
        os << "}\n";
        run.emit_side(dot_file, "//", os.str());
      }
      return kPass;
    }

    if (embed_cmd->parsed()) {
      Run run("embed", common, budgets);
      auto p = input_presentation(run);
      run.set("radius", radius);
      run.set("component", component);
      run.set("partial", partial);
      DehnEngine engine(p);
      auto rep = verify_isometric_embedding(engine, component, radius, partial, budgets.ball);
      const auto& g = p.component(component);
      Json viol = Json::array();
      for (const auto& v : rep.violations)
        viol.push_back({{"u", g.vertex_name(v.u)}, {"v", g.vertex_name(v.v)}, {"graph_distance", v.graph_distance},
                        {"group_distance", v.group_distance}});
      run.emit({{"component", g.name()}, {"basepoint", g.vertex_name(rep.basepoint)}, {"radius", rep.radius},
                {"partial", rep.partial}, {"vertices_checked", rep.vertices_checked},
                {"pairs_checked", rep.pairs_checked}, {"violations", viol}, {"pass", rep.violations.empty()}});
      return rep.violations.empty() ? kPass : kFail;
    }

    if (quotient_cmd->parsed()) {
      Run run("quotient", common, budgets);
      auto p = input_presentation(run);
      if (budgets.n_max) n_max = *budgets.n_max;
      run.set("n_max", n_max);
      run.set("radius", radius);
      DehnEngine engine(p);
      auto r = search_quotient(engine, n_max, radius, budgets.nodes, budgets.ball);
      Json doc = {{"status", to_string(r.status)}, {"n_max", r.n_max}, {"nodes", r.nodes},
                  {"largest_degree", r.largest_degree_searched}, {"ball_elements", r.ball_elements},
                  {"relators", r.relators}, {"radius", radius}};
      if (r.quotient) {
        Json q = to_json(r.quotient->action, p.alphabet());
        q["source"] = r.quotient->source;
        doc["quotient"] = q;
      } else {
        doc["quotient"] = nullptr;
      }
      run.emit(doc);
      switch (r.status) {
        case QuotientSearchResult::Status::found: return kPass;
        case QuotientSearchResult::Status::exhausted: return kFail;
        case QuotientSearchResult::Status::budget: return kBudget;
      }
    }

    if (tower_check_cmd->parsed()) {
      Run run("tower check", common, budgets);
      auto t = tower_from_json(run.read_json(tower_file));
      auto cert = check_conditions(t, budgets.ball);
      const auto& a = t.level(1).presentation.alphabet();
      Json inj = Json::array();
      for (const auto& c : cert.injectivity) {
        Json fails = Json::array();
        for (const auto& w : c.failures) fails.push_back(a.format(w));
        inj.push_back({{"level", c.level}, {"radius", c.radius}, {"checked", c.checked}, {"pass", c.pass},
                       {"truncated", c.truncated}, {"failures", fails}});
      }
      Json wd = Json::array();
      for (const auto& w : cert.well_defined) {
        Json f = nullptr;
        if (w.failure) f = {{"component", w.failure->component}, {"word", a.format(w.failure->word)}};
        wd.push_back({{"i", w.i}, {"j", w.j}, {"pass", w.pass}, {"failure", f}});
      }
      Json fz = Json::array();
      for (const auto& f : cert.factorization)
        fz.push_back({{"j", f.j}, {"k", f.k}, {"l", f.l}, {"evaluations", f.evaluations}, {"mismatches", f.mismatches}});
      bool pass = true;
      for (bool b : cert.c_bits) pass = pass && b;
      for (bool b : cert.d_bits) pass = pass && b;
      run.emit({{"injectivity", inj}, {"well_defined", wd}, {"factorization", fz}, {"C", cert.c_bits},
                {"D", cert.d_bits}, {"pass", pass}});
      return pass ? kPass : kFail;
    }

    if (box_cmd->parsed()) {
      Run run("boxspace", common, budgets);
      auto t = tower_from_json(run.read_json(tower_file));
      auto rep = box_space(t, budgets.order);
      Json lv = Json::array();
      std::vector<std::vector<std::string>> rows;
      for (const auto& l : rep.levels) {
        Json j = {{"level", l.level}, {"order", l.order}, {"diameter", l.diameter}, {"offset", l.offset},
                  {"spectrum", l.spectrum}, {"top_eigenvalue_is_degree", l.top_eigenvalue_is_degree}};
        j["degree"] = l.degree ? Json(*l.degree) : Json(nullptr);
        j["girth"] = l.girth.is_finite() ? Json(l.girth.value()) : Json(nullptr);
        j["spectral_gap"] = l.spectral_gap ? Json(*l.spectral_gap) : Json(nullptr);
        lv.push_back(j);
        rows.push_back({std::to_string(l.level), std::to_string(l.order), l.degree ? std::to_string(*l.degree) : "",
                        l.girth.is_finite() ? std::to_string(l.girth.value()) : "inf", std::to_string(l.diameter),
                        l.spectral_gap ? std::to_string(*l.spectral_gap) : "", std::to_string(l.offset)});
      }
      run.emit({{"levels", lv}});
      if (!csv_file.empty())
        run.emit_side(csv_file, "#",
                      to_csv({"level", "order", "degree", "girth", "diameter", "spectral_gap", "offset"}, rows));
      return kPass;
    }

    if (run_cmd->parsed()) {
      Run run("pipeline run", common, budgets);
      PipelineConfig cfg;
      if (!config_file.empty()) cfg = pipeline_config_from_json(run.read_json(config_file));
      if (common.seed) cfg.seed = *common.seed;
      run.manifest().seed = cfg.seed;
      auto& B = cfg.budgets;
      if (std::getenv("GSC_BUDGET_BALL")) B.ball_elements = budgets.ball;
      if (std::getenv("GSC_BUDGET_COVER")) B.max_cover_vertices = budgets.cover;
      if (std::getenv("GSC_BUDGET_NODES")) B.quotient_nodes = budgets.nodes;
      if (std::getenv("GSC_BUDGET_ORDER")) B.group_order = budgets.order;
      if (budgets.iterations) B.max_cover_iterations = *budgets.iterations;
      if (budgets.n_max) B.n_max = *budgets.n_max;
      run.set("levels", levels);
      run.set("pipeline", to_json(cfg));
      auto state = run_pipeline(cfg, levels);
      run.emit(certify(state));
      if (!csv_file.empty()) run.emit_side(csv_file, "#", summary_csv(state));
      if (state.failure) {
        std::cerr << "gsc: level " << state.failure->level << " failed at stage " << state.failure->stage << ": "
                  << state.failure->message << "\n";
        return state.failure->budget ? kBudget : kFail;
      }
      for (const auto& b : level_bits(state))
        if (!b.a || b.c != "pass" || b.d != "pass") return kFail;
      return kPass;
    }

    if (verify_cmd->parsed()) {
      Run run("pipeline verify", common, budgets);
      auto rep = verify_transcript(run.read_json(file));
      Json bits = Json::array();
      for (const auto& b : rep.recomputed)
        bits.push_back({{"level", b.level}, {"A", b.a}, {"C", b.c}, {"D", b.d}, {"regular", b.regular},
                        {"embedding", b.embedding ? Json(*b.embedding) : Json(nullptr)}, {"girth", b.girth}});
      run.emit({{"identical", rep.identical}, {"mismatches", rep.mismatches}, {"bits", bits}});
      return rep.identical ? kPass : kFail;
    }
  } catch (const BudgetError& e) {
    std::cerr << "gsc: budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const InputError& e) {
    std::cerr << "gsc: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "gsc: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
