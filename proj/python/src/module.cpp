#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "arbor/errors.hpp"
#include "arbor/extension.hpp"
#include "arbor/io.hpp"
#include "arbor/rational.hpp"
#include "arbor/stallings.hpp"
#include "arbor/tower.hpp"

namespace py = pybind11;
using namespace arbor;

namespace {

  Alphabet const ab(2);

  std::vector<Word> words(std::vector<std::string> const& texts) {
    std::vector<Word> out;
    for (auto const& t : texts) {
      out.push_back(ab.parse(t));
    }
    return out;
  }

  EnumerationMode mode_of(std::string const& mode, std::size_t samples, std::size_t max_length,
                          std::uint64_t seed, std::size_t edge_budget) {
    if (mode == "exhaustive") {
      return Exhaustive{edge_budget};
    }
    if (mode == "sampled") {
      return Sampled{samples, max_length, seed};
    }
    throw InputError("mode must be 'exhaustive' or 'sampled'");
  }

  TowerSpec tower_spec(std::string const& base, std::vector<std::uint32_t> primes,
                       std::size_t max_level) {
    TowerSpec spec;
    spec.base      = builtin_group(base);
    spec.primes    = std::move(primes);
    spec.max_level = max_level;
    return spec;
  }

}  // namespace

PYBIND11_MODULE(_arbor, m) {
  m.doc() = "Stallings graphs, constellations and universal extension towers";

  // Later registrations are tried first, so the base class goes first.
  auto const& error = py::register_exception<Error>(m, "ArborError");
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", error.ptr());
  py::register_exception<TheoremViolation>(m, "TheoremViolation", error.ptr());

  m.def("reduce", [](std::string const& w) { return ab.format(reduce(ab.parse(w))); }, py::arg("word"));

  py::class_<FinGroup>(m, "FinGroup")
      .def_property_readonly("name", &FinGroup::name)
      .def_property_readonly("order", &FinGroup::order)
      .def_property_readonly("separated", &FinGroup::separated)
      .def("evaluate", [](FinGroup const& g, std::string const& w) { return g.evaluate(ab.parse(w)); })
      .def("to_json", [](FinGroup const& g) { return to_json(g).dump(); });
  m.def("builtin_group", &builtin_group, py::arg("name"));
  m.def("builtin_group_names", &builtin_group_names);
  m.def("exponent", &exponent);

  py::class_<CoreGraph>(m, "CoreGraph")
      .def("member", [](CoreGraph const& c, std::string const& w) { return member(c, ab.parse(w)); })
      .def_property_readonly("num_vertices", [](CoreGraph const& c) { return c.graph().num_vertices(); })
      .def_property_readonly("num_edges", [](CoreGraph const& c) { return c.graph().edges().size(); })
      .def("generators", [](CoreGraph const& c) {
        std::vector<std::string> out;
        for (auto const& w : core_generators(c)) {
          out.push_back(ab.format(w));
        }
        return out;
      })
      .def("to_json", [](CoreGraph const& c) { return to_json(c.graph()).dump(); })
      .def("to_dot", [](CoreGraph const& c) { return to_dot(c.graph(), "core"); });
  m.def("subgroup_core", [](std::vector<std::string> const& gens) { return subgroup_core(words(gens)); },
        py::arg("generators"));

  m.def("ext_order", [](FinGroup const& g, std::uint32_t p) { return ext_order(g, p).str(); });
  m.def("ext_enumerate", [](FinGroup const& g, std::uint32_t p, std::size_t budget) {
        return UniversalExtension(g, p).enumerate(budget);
      }, py::arg("group"), py::arg("p"), py::arg("budget") = default_enumeration_budget);
  m.def("ext_equal", [](FinGroup const& g, std::uint32_t p, std::string const& u, std::string const& v) {
    return ext_evaluate(g, p, ab.parse(u)) == ext_evaluate(g, p, ab.parse(v));
  });
  m.def("s_equal",
        [](FinGroup const& g, FinGroup const& s, std::string const& u, std::string const& v,
           std::string const& mode, std::size_t budget, std::uint64_t seed) {
          SEqualMode sm = mode == "exact" ? SEqualMode(ExactSearch{budget})
                                          : SEqualMode(WitnessSearch{budget, seed});
          return to_string(s_equal(g, s, ab.parse(u), ab.parse(v), sm).verdict);
        },
        py::arg("group"), py::arg("simple"), py::arg("u"), py::arg("v"), py::arg("mode") = "exact",
        py::arg("budget") = 100'000'000, py::arg("seed") = 1);
  m.def("free_object_pair_check", &free_object_pair_check);

  m.def("dissolves_all_json",
        [](FinGroup const& h, FinGroup const& g, std::string const& mode, std::size_t samples,
           std::size_t max_length, std::uint64_t seed, std::size_t edge_budget) {
          py::gil_scoped_release release;
          return to_json(dissolves_all(h, g, mode_of(mode, samples, max_length, seed, edge_budget))).dump();
        },
        py::arg("h"), py::arg("g"), py::arg("mode") = "exhaustive", py::arg("samples") = 10'000,
        py::arg("max_length") = 6, py::arg("seed") = 1, py::arg("edge_budget") = 16);

  m.def("member_product",
        [](std::vector<std::vector<std::string>> const& factors, std::string const& w) {
          std::vector<CoreGraph> cores;
          for (auto const& f : factors) {
            cores.push_back(subgroup_core(words(f)));
          }
          auto const r = member_product(cores, ab.parse(w));
          std::vector<std::string> out;
          for (auto const& h : r.factors) {
            out.push_back(ab.format(h));
          }
          return py::make_tuple(r.member, out);
        },
        py::arg("factors"), py::arg("word"));

  py::class_<Tower>(m, "Tower")
      .def(py::init([](std::string const& base, std::vector<std::uint32_t> primes, std::size_t max_level) {
             return Tower(tower_spec(base, std::move(primes), max_level));
           }),
           py::arg("base"), py::arg("primes"), py::arg("max_level") = 3)
      .def_property_readonly("top_level", &Tower::top_level)
      .def("order", &Tower::order_string)
      .def("enumerate", [](Tower const& t, std::size_t n) { return t.enumerate(n); })
      .def("evaluate", [](Tower const& t, std::size_t n, std::string const& w) {
        return tower_evaluate(t, n, ab.parse(w)).encoding();
      })
      .def("equal", [](Tower const& t, std::size_t n, std::string const& u, std::string const& v) {
        return tower_equal(tower_evaluate(t, n, ab.parse(u)), tower_evaluate(t, n, ab.parse(v)));
      })
      .def("campaign_json",
           [](Tower const& t, std::size_t levels, std::string const& mode, std::size_t samples,
              std::size_t max_length, std::uint64_t seed, std::size_t edge_budget) {
             return to_json(treelike_campaign(t, levels, mode_of(mode, samples, max_length, seed, edge_budget))).dump();
           },
           py::arg("levels"), py::arg("mode") = "exhaustive", py::arg("samples") = 10'000,
           py::arg("max_length") = 6, py::arg("seed") = 1, py::arg("edge_budget") = 16)
      .def("rz_json",
           [](Tower const& t, std::vector<std::vector<std::string>> const& factors, std::string const& w) {
             std::vector<CoreGraph> cores;
             for (auto const& f : factors) {
               cores.push_back(subgroup_core(words(f)));
             }
             return to_json(rz_experiment(t, cores, ab.parse(w)), 2).dump();
           });
}
