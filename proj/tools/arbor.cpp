// arbor: command line front end.
//
// Exit codes: 0 pass, 1 property failure, 2 budget or resource limit,
// 3 input error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"

#include "arbor/errors.hpp"
#include "arbor/extension.hpp"
#include "arbor/io.hpp"
#include "arbor/rational.hpp"
#include "arbor/stallings.hpp"
#include "arbor/tower.hpp"

using namespace arbor;

namespace {

  enum Exit : int { pass = 0, failure = 1, budget = 2, input = 3 };

  struct Globals {
    std::uint64_t              seed = 1;
    std::size_t                budget_enum = 20'000;
    std::size_t                budget_homs = 100'000'000;
    std::optional<std::size_t> max_level;
    std::string                out;
  };

  struct ModeArgs {
    std::string mode        = "exhaustive";
    std::size_t samples     = 10'000;
    std::size_t max_length  = 6;
    std::size_t edge_budget = 16;
  };

  void add_mode_options(CLI::App* cmd, ModeArgs& m) {
    cmd->add_option("--mode", m.mode, "exhaustive or sampled")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    cmd->add_option("--samples", m.samples, "sampled word pairs");
    cmd->add_option("--max-length", m.max_length, "length of sampled words");
    cmd->add_option("--edge-budget", m.edge_budget, "edge limit for exhaustive search");
  }

  EnumerationMode to_mode(ModeArgs const& m, std::uint64_t seed) {
    if (m.mode == "sampled") {
      return Sampled{m.samples, m.max_length, seed};
    }
    return Exhaustive{m.edge_budget};
  }

  FinGroup load_group(std::string const& spec, std::size_t budget) {
    if (spec.ends_with(".json")) {
      return group_from_json(read_json_file(spec)).with_budget(budget);
    }
    // G^Cp or G^p: the enumerated extension
    if (auto const hat = spec.rfind('^'); hat != std::string::npos) {
      auto digits = std::string_view(spec).substr(hat + 1);
      if (digits.starts_with('C')) {
        digits.remove_prefix(1);
      }
      std::uint32_t p   = 0;
      auto const [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
      if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
        throw InputError("bad extension '" + spec + "'");
      }
      auto const below = load_group(spec.substr(0, hat), budget);
      return UniversalExtension(below, p).enumerate(budget);
    }
    return builtin_group(spec).with_budget(budget);
  }

  void emit(Globals const& g, std::string const& text) {
    if (g.out.empty()) {
      std::cout << text << '\n';
      return;
    }
    std::ofstream os(g.out);
    if (!os) {
      throw InputError("cannot write " + g.out);
    }
    os << text << '\n';
  }

  void write_file(std::string const& path, std::string const& text) {
    std::ofstream os(path);
    if (!os) {
      throw InputError("cannot write " + path);
    }
    os << text;
  }

  std::vector<Word> parse_words(std::vector<std::string> const& texts) {
    Alphabet const    ab(2);
    std::vector<Word> out;
    for (auto const& t : texts) {
      out.push_back(ab.parse(t));
    }
    return out;
  }

  // A graph from --graph, or the bouquet of --gens.
  struct GraphInput {
    std::string              graph;
    std::vector<std::string> gens;

    void add(CLI::App* cmd) {
      auto* g = cmd->add_option("--graph", graph, "graph JSON file");
      auto* h = cmd->add_option("--gens", gens, "generator words")->excludes(g);
      g->excludes(h);
    }

    [[nodiscard]] LabeledGraph load() const {
      if (!graph.empty()) {
        return graph_from_json(read_json_file(graph));
      }
      if (gens.empty()) {
        throw InputError("give --graph or --gens");
      }
      return bouquet(parse_words(gens));
    }
  };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stallings graphs, constellations and universal extension towers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals glob;
  app.add_option("--seed", glob.seed, "random seed (recorded in reports)");
  app.add_option("--budget-enum", glob.budget_enum, "largest group enumerated");
  app.add_option("--budget-homs", glob.budget_homs, "assignments tried by exact S-equality");
  app.add_option("--max-level", glob.max_level, "highest tower level used");
  app.add_option("-o,--out", glob.out, "write the report here instead of stdout");

  // fold / core
  GraphInput  fold_in, core_in;
  std::string fold_dot, core_dot;
  auto*       fold_cmd = app.add_subcommand("fold", "Stallings folding of a graph or bouquet");
  fold_in.add(fold_cmd);
  fold_cmd->add_option("--dot", fold_dot, "also write DOT here");
  auto* core_cmd = app.add_subcommand("core", "core graph of a subgroup");
  core_in.add(core_cmd);
  core_cmd->add_option("--dot", core_dot, "also write DOT here");

  // member
  std::string              member_graph;
  std::vector<std::string> member_words;
  auto* member_cmd = app.add_subcommand("member", "membership of words in a subgroup");
  member_cmd->add_option("graph", member_graph, "graph JSON (folded or not)")->required();
  member_cmd->add_option("words", member_words, "words to test")->required();

  // extend
  std::string              ext_group;
  std::uint32_t            ext_p = 0;
  std::string              ext_s;
  std::vector<std::string> ext_eq, ext_eval;
  std::size_t              ext_samples = 1'000;
  bool                     ext_enumerate = false;
  auto* extend = app.add_subcommand("extend", "the A-universal extension of a finite group");
  extend->add_option("group", ext_group, "builtin name or group JSON")->required();
  auto* p_opt = extend->add_option("--p", ext_p, "prime for C_p");
  auto* s_opt = extend->add_option("--S", ext_s, "finite simple group (builtin or JSON)");
  p_opt->excludes(s_opt);
  s_opt->excludes(p_opt);
  extend->add_option("--eq", ext_eq, "two words to compare")->expected(2);
  extend->add_option("--eval", ext_eval, "words to evaluate (C_p only)");
  extend->add_option("--witness-samples", ext_samples, "sampled assignments in witness mode");
  extend->add_flag("--enumerate", ext_enumerate, "enumerate the extension (C_p only)");

  // tower
  std::string                tower_config, tower_base = "C2xC2";
  std::vector<std::uint32_t> tower_primes{2};
  std::optional<std::size_t> tower_levels;
  ModeArgs                   tower_mode;
  auto* tower = app.add_subcommand("tower", "tree-likeness campaign over an extension tower");
  tower->add_option("--config", tower_config, "tower config JSON (base, primes, budgets, seed)");
  tower->add_option("--base", tower_base, "base group");
  tower->add_option("--primes", tower_primes, "one prime per level (1 = identity step)");
  tower->add_option("--levels", tower_levels, "levels to check (default all)");
  add_mode_options(tower, tower_mode);

  // dissolve
  std::string dis_h = "C2xC2", dis_g = "C2xC2";
  ModeArgs    dis_mode;
  std::size_t dis_listed = 16;
  auto* dissolve = app.add_subcommand("dissolve", "does H dissolve every constellation of G");
  dissolve->add_option("--H", dis_h, "group over G (builtin, JSON, or G^Cp for an extension)");
  dissolve->add_option("--G", dis_g, "group whose constellations are checked");
  dissolve->add_option("--listed", dis_listed, "report entries kept");
  add_mode_options(dissolve, dis_mode);

  // rz
  std::string              rz_config, rz_base = "C2xC2", rz_w;
  std::vector<std::uint32_t> rz_primes{2};
  std::string              rz_h1, rz_h2;
  std::vector<std::string> rz_h;
  auto* rz = app.add_subcommand("rz", "product membership and separation in tower quotients");
  rz->add_option("--config", rz_config, "tower config JSON");
  rz->add_option("--base", rz_base, "base group");
  rz->add_option("--primes", rz_primes, "one prime per level");
  rz->add_option("--h1", rz_h1, "generators of H1, comma separated");
  rz->add_option("--h2", rz_h2, "generators of H2, comma separated");
  rz->add_option("--factor", rz_h, "further factors, comma separated generators each");
  rz->add_option("--w", rz_w, "the word")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? pass : input;
  }

  try {
    auto tower_spec = [&](std::string const& config, std::string const& base,
                          std::vector<std::uint32_t> const& primes) {
      TowerSpec spec;
      spec.enumeration_budget = glob.budget_enum;
      spec.seed               = glob.seed;
      if (!config.empty()) {
        spec = tower_spec_from_json(read_json_file(config));
      } else {
        spec.base   = load_group(base, glob.budget_enum);
        spec.primes = primes;
      }
      if (glob.max_level) {
        spec.max_level = *glob.max_level;
      }
      return spec;
    };

    if (fold_cmd->parsed() || core_cmd->parsed()) {
      auto const& in  = fold_cmd->parsed() ? fold_in : core_in;
      auto const& dot = fold_cmd->parsed() ? fold_dot : core_dot;
      auto const  g   = in.load();
      auto        out = fold_cmd->parsed() ? fold(g) : core(fold(g)).graph();
      if (!dot.empty()) {
        write_file(dot, to_dot(out, fold_cmd->parsed() ? "folded" : "core"));
      }
      emit(glob, to_json(out).dump(2));
      return pass;
    }

    if (member_cmd->parsed()) {
      auto const graph = graph_from_json(read_json_file(member_graph));
      auto const c     = core(fold(graph));
      Alphabet const ab(graph.alphabet_size());
      Json       j{{"schema", json_schema}, {"kind", "member"}, {"results", Json::array()}};
      for (auto const& text : member_words) {
        auto const w = ab.parse(text);
        j["results"].push_back(
            Json{{"word", text}, {"reduced", ab.format(reduce(w))}, {"member", member(c, w)}});
      }
      emit(glob, j.dump(2));
      return pass;
    }

    if (extend->parsed()) {
      auto const     g = load_group(ext_group, glob.budget_enum);
      Alphabet const ab(g.alphabet_size());
      Json           j{{"schema", json_schema}, {"kind", "extension"}, {"group", g.name()},
                       {"order", g.order()}, {"seed", glob.seed}};
      j["separated"] = g.separated();
      if (!g.separated()) {
        std::cerr << "warning: " << g.name() << " violates [a] != [b] != 1; certificates refused\n";
      }
      if (ext_s.empty() && ext_p == 0) {
        throw InputError("give --p or --S");
      }
      if (!ext_s.empty()) {
        auto const s = load_group(ext_s, glob.budget_enum);
        j["S"]       = s.name();
        if (!ext_eq.empty()) {
          auto const u = ab.parse(ext_eq[0]), v = ab.parse(ext_eq[1]);
          SEqualMode mode = WitnessSearch{ext_samples, glob.seed};
          if (s.order() <= 3) {
            mode = ExactSearch{glob.budget_homs};
          }
          auto const r = s_equal(g, s, u, v, mode);
          j["eq"]      = {{"u", ext_eq[0]},
                          {"v", ext_eq[1]},
                          {"verdict", to_string(r.verdict)},
                          {"mode", std::holds_alternative<ExactSearch>(mode) ? "exact" : "witness"},
                          {"evaluated", r.evaluated},
                          {"witness", r.witness}};
        }
        emit(glob, j.dump(2));
        return pass;
      }
      UniversalExtension const ext(g, ext_p);
      j["p"]          = ext_p;
      j["ext_order"]  = ext_order(g, ext_p).str();
      j["rank"]       = ext.rank();
      if (ext_enumerate) {
        j["enumerated"] = ext.enumerate(glob.budget_enum).order();
      }
      for (auto const& text : ext_eval) {
        auto const x = ext.evaluate(ab.parse(text));
        Json       c = Json::array();
        for (auto const& [e, r] : x.cocycle) {
          c.push_back(Json::array({e.source, ab.name(e.letter), r}));
        }
        j["eval"].push_back(Json{{"word", text}, {"base", x.base}, {"cocycle", c}});
      }
      if (!ext_eq.empty()) {
        auto const equal = ext.evaluate(ab.parse(ext_eq[0])) == ext.evaluate(ab.parse(ext_eq[1]));
        j["eq"] = {{"u", ext_eq[0]}, {"v", ext_eq[1]}, {"verdict", equal ? "equal" : "distinct"}};
      }
      emit(glob, j.dump(2));
      return pass;
    }

    if (tower->parsed()) {
      Tower const t(tower_spec(tower_config, tower_base, tower_primes));
      auto const  levels = tower_levels.value_or(t.top_level());
      auto const  report = treelike_campaign(t, levels, to_mode(tower_mode, t.spec().seed));
      emit(glob, to_json(report, t.spec().base.alphabet_size()).dump(2));
      std::cerr << (report.passed() ? "PASS" : "FAIL") << '\n';
      if (report.passed()) {
        return pass;
      }
      return report.budget_exceeded() ? budget : failure;
    }

    if (dissolve->parsed()) {
      auto const h = load_group(dis_h, glob.budget_enum);
      auto const g = load_group(dis_g, glob.budget_enum);
      auto const r = dissolves_all(h, g, to_mode(dis_mode, glob.seed), dis_listed);
      auto       j = to_json(r, g.alphabet_size());
      j["seed"]    = glob.seed;
      emit(glob, j.dump(2));
      std::cerr << (r.all_dissolved() ? "PASS" : "FAIL") << '\n';
      return r.all_dissolved() ? pass : failure;
    }

    if (rz->parsed()) {
      Tower const            t(tower_spec(rz_config, rz_base, rz_primes));
      std::vector<CoreGraph> cores;
      auto add_factor = [&](std::string const& list) {
        std::vector<std::string> parts;
        std::stringstream        ss(list);
        for (std::string item; std::getline(ss, item, ',');) {
          parts.push_back(item);
        }
        cores.push_back(subgroup_core(parse_words(parts)));
      };
      for (auto const* f : {&rz_h1, &rz_h2}) {
        if (!f->empty()) {
          add_factor(*f);
        }
      }
      for (auto const& f : rz_h) {
        add_factor(f);
      }
      if (cores.empty()) {
        throw InputError("give at least one factor with --h1/--h2/--factor");
      }
      auto const r = rz_experiment(t, cores, Alphabet(2).parse(rz_w), glob.max_level);
      emit(glob, to_json(r, 2).dump(2));
      std::cerr << r.status() << '\n';
      // Running out of enumerable levels is a resource limit.
      return r.status() == "inconclusive" && r.stopped.find("not enumerable") != std::string::npos
                 ? budget
                 : pass;
    }
  } catch (BudgetExceeded const& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (TheoremViolation const& e) {
    std::cerr << "theorem violation: " << e.what() << '\n';
    return failure;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input;
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return input;
  }
  return input;
}
