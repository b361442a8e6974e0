#include "arbor/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

  namespace {
    [[noreturn]] void bad(std::string const& field, std::string const& what) {
      throw InputError("field '" + field + "': " + what);
    }

    Json const& require(Json const& j, char const* key, std::string const& where) {
      if (!j.is_object() || !j.contains(key)) {
        bad(where.empty() ? key : where + "." + key, "missing");
      }
      return j.at(key);
    }

    template <typename T>
    T get(Json const& j, std::string const& field) {
      try {
        return j.get<T>();
      } catch (nlohmann::json::exception const& e) {
        bad(field, e.what());
      }
    }

    void check_kind(Json const& j, char const* kind) {
      if (!j.is_object()) {
        bad("", "expected an object");
      }
      if (j.contains("schema") && j.at("schema") != json_schema) {
        bad("schema", "unsupported version " + j.at("schema").dump());
      }
      if (j.contains("kind") && j.at("kind") != kind) {
        bad("kind", "expected \"" + std::string(kind) + "\", got " + j.at("kind").dump());
      }
    }

    Json header(char const* kind) {
      return Json{{"schema", json_schema}, {"kind", kind}};
    }

    Json edges_json(std::vector<Edge> const& edges, Alphabet const& names) {
      Json out = Json::array();
      for (auto e : edges) {
        out.push_back(Json::array({e.source, names.name(e.letter)}));
      }
      return out;
    }

    Json words_json(std::vector<Word> const& ws, Alphabet const& names) {
      Json out = Json::array();
      for (auto const& w : ws) {
        out.push_back(names.format(w));
      }
      return out;
    }
  }  // namespace

  Json to_json(LabeledGraph const& g) {
    Alphabet const names(g.alphabet_size());
    Json           j = header("graph");
    j["alphabet"]    = names.names();
    j["vertices"]    = g.num_vertices();
    j["basepoint"]   = g.basepoint() ? Json(*g.basepoint()) : Json(nullptr);
    Json edges       = Json::array();
    for (auto const& e : g.edges()) {
      edges.push_back(Json::array({e.src, names.name(e.label), e.dst}));
    }
    j["edges"] = std::move(edges);
    return j;
  }

  LabeledGraph graph_from_json(Json const& j) {
    check_kind(j, "graph");
    auto const names = get<std::vector<std::string>>(require(j, "alphabet", ""), "alphabet");
    if (names.empty()) {
      bad("alphabet", "empty");
    }
    Alphabet const alphabet(names);
    auto const     n = get<std::size_t>(require(j, "vertices", ""), "vertices");
    LabeledGraph   g(names.size(), n);
    auto const&    edges = require(j, "edges", "");
    if (!edges.is_array()) {
      bad("edges", "expected an array");
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto const  field = "edges[" + std::to_string(i) + "]";
      auto const& e     = edges[i];
      if (!e.is_array() || e.size() != 3) {
        bad(field, "expected [source, letter, target]");
      }
      auto const src   = get<VertexId>(e[0], field + "[0]");
      auto const label = get<std::string>(e[1], field + "[1]");
      auto const dst   = get<VertexId>(e[2], field + "[2]");
      if (src >= n || dst >= n) {
        bad(field, "vertex out of range");
      }
      LetterIndex a = 0;
      try {
        a = alphabet.index(label);
      } catch (InputError const& err) {
        bad(field + "[1]", err.what());
      }
      g.add_edge(src, a, dst);
    }
    if (j.contains("basepoint") && !j.at("basepoint").is_null()) {
      auto const b = get<VertexId>(j.at("basepoint"), "basepoint");
      if (b >= n) {
        bad("basepoint", "vertex out of range");
      }
      g.set_basepoint(b);
    }
    return g;
  }

  Json to_json(FinGroup const& g) {
    Json j        = header("group");
    j["name"]     = g.name();
    j["degree"]   = g.degree();
    Json gens     = Json::array();
    for (LetterIndex a = 0; a < g.alphabet_size(); ++a) {
      gens.push_back(g.generator(a));
    }
    j["generators"] = std::move(gens);
    return j;
  }

  FinGroup group_from_json(Json const& j) {
    if (j.is_string()) {
      try {
        return builtin_group(j.get<std::string>());
      } catch (InputError const& e) {
        bad("group", e.what());
      }
    }
    check_kind(j, "group");
    auto const degree = get<std::size_t>(require(j, "degree", ""), "degree");
    auto const gens   = get<std::vector<Permutation>>(require(j, "generators", ""), "generators");
    auto const name   = j.contains("name") ? get<std::string>(j.at("name"), "name") : std::string();
    try {
      return FinGroup::from_permutations(degree, gens, name);
    } catch (InputError const& e) {
      bad("generators", e.what());
    }
  }

  Json to_json(DissolveReport const& r, std::size_t alphabet_size) {
    Alphabet const names(alphabet_size);
    Json           j   = header("dissolve");
    j["h"]             = {{"name", r.h_name}, {"order", r.h_order}};
    j["g"]             = {{"name", r.g_name}, {"order", r.g_order}};
    j["mode"]          = describe(r.mode);
    j["constellations"] = r.constellations;
    j["dissolved"]      = r.dissolved;
    j["counterexamples"] = r.counterexamples;
    j["inconclusive"]   = r.inconclusive;
    j["passed"]         = r.all_dissolved();
    Json listed         = Json::array();
    for (auto const& l : r.listed) {
      listed.push_back({{"g", l.g},
                        {"x_edges", edges_json(l.x_edges, names)},
                        {"t_edges", edges_json(l.t_edges, names)},
                        {"verdict", to_string(l.verdict)},
                        {"u", names.format(l.u)},
                        {"v", names.format(l.v)}});
    }
    j["listed"] = std::move(listed);
    return j;
  }

  Json to_json(Certificate const& c, std::size_t alphabet_size) {
    Alphabet const names(alphabet_size);
    auto const     edge = [&](Edge e) { return Json::array({e.source, names.name(e.letter)}); };
    Json           j    = header("certificate");
    j["g"]              = c.g;
    j["u"]              = names.format(c.u);
    j["v"]              = names.format(c.v);
    j["z"]              = c.z;
    j["x_borders"] = {{"leaving", edges_json(c.x_borders.leaving, names)},
                      {"entering", edges_json(c.x_borders.entering, names)}};
    j["t_borders"] = {{"leaving", edges_json(c.t_borders.leaving, names)},
                      {"entering", edges_json(c.t_borders.entering, names)}};
    j["x_flow"]     = c.x_flow;
    j["t_flow"]     = c.t_flow;
    j["e"]          = edge(c.e);
    j["f"]          = edge(c.f);
    j["u_count"]    = c.u_count;
    j["v_count"]    = c.v_count;
    j["o"]          = c.o;
    j["u_exp"]      = c.u_exp;
    j["v_exp"]      = c.v_exp;
    j["tree_edges"] = edges_json(c.tree_edges, names);
    j["rewrite_e"]  = c.rewrite_e;
    j["rewrite_f"]  = c.rewrite_f;
    return j;
  }

  Json to_json(CampaignReport const& r, std::size_t alphabet_size) {
    Json j      = header("campaign");
    j["base"]   = r.base;
    j["primes"] = r.primes;
    j["seed"]   = r.seed;
    j["passed"] = r.passed();
    Json levels = Json::array();
    for (auto const& l : r.levels) {
      Json lj{{"level", l.level},
              {"method", l.method},
              {"upper_order", l.upper_order},
              {"certificates", l.certificates},
              {"passed", l.passed()}};
      if (!l.error.empty()) {
        lj["error"] = l.error;
      }
      lj["report"] = to_json(l.report, alphabet_size);
      levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
    return j;
  }

  Json to_json(RzReport const& r, std::size_t alphabet_size) {
    Alphabet const names(alphabet_size);
    Json           j = header("rz");
    j["w"]           = names.format(r.w);
    j["member"]      = r.member;
    j["factors"]     = words_json(r.factors, names);
    Json levels      = Json::array();
    for (auto const& l : r.levels) {
      levels.push_back({{"level", l.level},
                        {"order", l.order},
                        {"product_size", l.product_size},
                        {"separated", l.separated}});
    }
    j["levels"]       = std::move(levels);
    j["separated_at"] = r.separated_at ? Json(*r.separated_at) : Json(nullptr);
    j["status"]       = r.status();
    if (!r.stopped.empty()) {
      j["stopped"] = r.stopped;
    }
    return j;
  }

  TowerSpec tower_spec_from_json(Json const& j) {
    if (!j.is_object()) {
      bad("", "tower config must be an object");
    }
    TowerSpec spec;
    spec.base   = group_from_json(require(j, "base", ""));
    spec.primes = get<std::vector<std::uint32_t>>(require(j, "primes", ""), "primes");
    if (j.contains("budgets")) {
      auto const& b = j.at("budgets");
      if (b.contains("enumeration")) {
        spec.enumeration_budget = get<std::size_t>(b.at("enumeration"), "budgets.enumeration");
      }
    }
    if (j.contains("seed")) {
      spec.seed = get<std::uint64_t>(j.at("seed"), "seed");
    }
    if (j.contains("max_level")) {
      spec.max_level = get<std::size_t>(j.at("max_level"), "max_level");
    }
    return spec;
  }

  Json parse_json(std::string const& text, std::string const& origin) {
    try {
      return Json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      // Byte offset into line and column.
      std::size_t line = 1, col = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col)
                       + ": malformed JSON");
    }
  }

  Json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_json(buf.str(), path);
  }

  std::string to_dot(LabeledGraph const& g, std::string const& name) {
    Alphabet const     names(g.alphabet_size());
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n  rankdir=LR;\n";
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      os << "  " << v << " [shape=" << (g.basepoint() == v ? "doublecircle" : "circle") << "];\n";
    }
    for (auto const& e : g.edges()) {
      os << "  " << e.src << " -> " << e.dst << " [label=\"" << names.name(e.label) << "\"];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string to_dot(CayleySubgraph const& x, std::string const& name,
                     std::optional<DotHighlight> const& highlight) {
    auto const&        g = x.group();
    Alphabet const     names(g.alphabet_size());
    std::set<ElementId> z;
    std::set<Edge>      d, c;
    if (highlight) {
      z.insert(highlight->z.begin(), highlight->z.end());
      d.insert(highlight->borders.leaving.begin(), highlight->borders.leaving.end());
      c.insert(highlight->borders.entering.begin(), highlight->borders.entering.end());
    }
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    for (auto v : x.vertices()) {
      os << "  " << v << " [shape=" << (v == 0 ? "doublecircle" : "circle");
      if (z.count(v) != 0) {
        os << ", style=filled, fillcolor=lightgrey";
      }
      os << "];\n";
    }
    for (auto e : x.edges()) {
      os << "  " << e.source << " -> " << x.target(e) << " [label=\"" << names.name(e.letter) << "\"";
      if (d.count(e) != 0) {
        os << ", color=red";
      } else if (c.count(e) != 0) {
        os << ", color=blue";
      }
      os << "];\n";
    }
    os << "}\n";
    return os.str();
  }

  std::string constellation_dot(Constellation const& c, std::string const& name) {
    auto const&         g = c.x.group();
    Alphabet const      names(g.alphabet_size());
    auto const          zv = component_of(c.x.intersection(c.t), 0);
    std::set<ElementId> z(zv.begin(), zv.end());
    auto const          b = borders(c.x, zv);
    std::set<Edge>      d(b.leaving.begin(), b.leaving.end());
    std::set<Edge>      in(b.entering.begin(), b.entering.end());
    auto const          xe = c.x.edges();
    auto const          te = c.t.edges();
    std::set<Edge>      all(xe.begin(), xe.end());
    all.insert(te.begin(), te.end());
    std::set<ElementId> vertices;
    for (auto v : c.x.vertices()) {
      vertices.insert(v);
    }
    for (auto v : c.t.vertices()) {
      vertices.insert(v);
    }
    std::ostringstream os;
    os << "digraph \"" << name << "\" {\n";
    for (auto v : vertices) {
      os << "  " << v << " [shape=" << (v == 0 || v == c.g ? "doublecircle" : "circle");
      if (z.count(v) != 0) {
        os << ", style=filled, fillcolor=lightgrey";
      }
      os << "];\n";
    }
    for (auto e : all) {
      bool const in_x = c.x.contains(e), in_t = c.t.contains(e);
      os << "  " << e.source << " -> " << g.act(e.source, Letter(e.letter)) << " [label=\""
         << names.name(e.letter) << "\"";
      if (in_x && in_t) {
        os << ", style=bold";
      } else if (in_t) {
        os << ", style=dashed";
      }
      if (d.count(e) != 0) {
        os << ", color=red";
      } else if (in.count(e) != 0) {
        os << ", color=blue";
      }
      os << "];\n";
    }
    os << "}\n";
    return os.str();
  }

}  // namespace arbor
