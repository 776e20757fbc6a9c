#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "setpack/errors.hpp"
#include "setpack/exact.hpp"
#include "setpack/instance.hpp"
#include "setpack/local_search.hpp"
#include "setpack/multigraph.hpp"
#include "setpack/relaxation.hpp"
#include "setpack/weighted_search.hpp"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction; ints and "p/q" strings
// are accepted on input.
namespace pybind11::detail {
template <>
struct type_caster<mpq_class> {
  PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    if (py::isinstance<py::str>(src)) {
      try {
        value = setpack::parse_rational(src.cast<std::string>());
        return true;
      } catch (const setpack::InputError&) {
        return false;
      }
    }
    const auto fraction = py::module_::import("fractions").attr("Fraction");
    if (!py::isinstance<py::int_>(src) && !py::isinstance(src, fraction)) return false;
    const auto f = fraction(src);
    value = mpq_class(py::str(f.attr("numerator")).cast<std::string>() + "/" +
                      py::str(f.attr("denominator")).cast<std::string>());
    value.canonicalize();
    return true;
  }

  static handle cast(const mpq_class& src, return_value_policy, handle) {
    mpq_class c = src;
    c.canonicalize();
    const auto fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::int_(py::str(c.get_num().get_str())), py::int_(py::str(c.get_den().get_str())))
        .release();
  }
};
}  // namespace pybind11::detail

namespace {

using namespace setpack;

py::dict search_dict(const std::vector<std::size_t>& members, std::size_t iterations) {
  py::dict d;
  d["members"] = members;
  d["iterations"] = iterations;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Set packing solvers, local search, relaxations";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::size_t universe_size, std::size_t k, std::vector<std::vector<Element>> sets,
                       std::optional<std::vector<Rational>> weights) {
             Instance inst{universe_size, k, std::move(sets), std::move(weights)};
             require_valid(inst);
             return inst;
           }),
           py::arg("universe_size"), py::arg("k"), py::arg("sets"), py::arg("weights") = py::none())
      .def_readonly("universe_size", &Instance::universe_size)
      .def_readonly("k", &Instance::k)
      .def_readonly("sets", &Instance::sets)
      .def_readonly("weights", &Instance::weights)
      .def("__len__", &Instance::size)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "Instance(N=" + std::to_string(i.universe_size) + ", n=" + std::to_string(i.size()) +
               ", k=" + std::to_string(i.k) + ")";
      });

  py::class_<ConflictGraph>(m, "ConflictGraph")
      .def_static(
          "from_edges",
          [](std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges, std::vector<Rational> weights) {
            return ConflictGraph::from_edges(n, edges, std::move(weights));
          },
          py::arg("vertex_count"), py::arg("edges"), py::arg("weights") = std::vector<Rational>{})
      .def_property_readonly("vertex_count", &ConflictGraph::vertex_count)
      .def("edges", &ConflictGraph::edges)
      .def("neighbors", &ConflictGraph::neighbors)
      .def("weights", &ConflictGraph::weights);

  m.def("projective_plane", &gen_projective_plane, py::arg("q"));
  m.def(
      "random_instance",
      [](std::size_t universe, std::size_t n, std::size_t k, std::uint64_t seed,
         std::optional<std::pair<Rational, Rational>> weights) {
        std::optional<WeightRange> range;
        if (weights) range = WeightRange{weights->first, weights->second};
        return gen_random(universe, n, k, range, seed);
      },
      py::arg("universe_size"), py::arg("n"), py::arg("k"), py::arg("seed"), py::arg("weights") = py::none());
  m.def("instance_from_graph", &instance_from_graph, py::arg("graph"));
  m.def("parse_instance", [](const std::string& text) { return parse_instance(text); });
  m.def("serialize_instance", &serialize_instance);
  m.def("conflict_graph", &conflict_graph);
  m.def("is_packing", [](const Instance& inst, const std::vector<SetId>& ids) { return is_packing(inst, ids); });
  m.def("packing_value",
        [](const Instance& inst, std::vector<SetId> ids) { return packing_value(inst, Packing(std::move(ids))); });

  m.def(
      "max_packing",
      [](const Instance& inst, std::size_t cap) { return max_packing_exact(inst, cap).members; },
      py::arg("instance"), py::arg("cap") = kDefaultExactCap);
  m.def(
      "max_independent_set", [](const ConflictGraph& g, std::size_t cap) { return max_independent_set_exact(g, cap); },
      py::arg("graph"), py::arg("cap") = kDefaultExactCap);

  m.def(
      "local_search",
      [](const Instance& inst, std::size_t t, std::uint64_t budget) {
        WorkBudget b{budget};
        const auto r = t_local_search(inst, t, b);
        return search_dict(r.packing.members, r.iterations);
      },
      py::arg("instance"), py::arg("t"), py::arg("budget") = WorkBudget::kDefaultLimit);
  m.def(
      "log_local_search",
      [](const Instance& inst, const Rational& eps, std::uint64_t budget) {
        WorkBudget b{budget};
        const auto r = log_local_search(inst, eps, b);
        return search_dict(r.packing.members, r.iterations);
      },
      py::arg("instance"), py::arg("epsilon"), py::arg("budget") = WorkBudget::kDefaultLimit);
  m.def(
      "find_improving_set",
      [](const Instance& inst, std::vector<SetId> packing, std::size_t t) -> std::optional<py::tuple> {
        const auto imp = find_improving_set(inst, Packing(std::move(packing)), t);
        if (!imp) return std::nullopt;
        return py::make_tuple(imp->incoming, imp->outgoing);
      },
      py::arg("instance"), py::arg("packing"), py::arg("t"));
  m.def("hs_bound", &hs_bound, py::arg("k"), py::arg("t"));

  m.def("greedy_weighted", &greedy_weighted, py::arg("graph"));
  m.def(
      "wishful_thinking",
      [](const ConflictGraph& g, std::size_t claw_bound) {
        const auto r = wishful_thinking(g, claw_bound);
        return search_dict(r.solution, r.iterations);
      },
      py::arg("graph"), py::arg("claw_bound"));
  m.def(
      "square_imp",
      [](const ConflictGraph& g, std::size_t max_talons, const std::vector<Vertex>& initial, std::uint64_t budget) {
        WorkBudget b{budget};
        const auto r = square_imp(g, max_talons, b, initial);
        return search_dict(r.solution, r.iterations);
      },
      py::arg("graph"), py::arg("max_talons"), py::arg("initial") = std::vector<Vertex>{},
      py::arg("budget") = WorkBudget::kDefaultLimit);
  m.def(
      "power_local_search",
      [](const ConflictGraph& g, const Rational& alpha, std::size_t t,
         std::optional<std::vector<Vertex>> initial, std::uint64_t budget) {
        WorkBudget b{budget};
        std::optional<std::span<const Vertex>> start;
        if (initial) start = std::span<const Vertex>(*initial);
        const auto r = power_local_search(g, alpha, t, b, start);
        return search_dict(r.solution, r.iterations);
      },
      py::arg("graph"), py::arg("alpha"), py::arg("t"), py::arg("initial") = py::none(),
      py::arg("budget") = WorkBudget::kDefaultLimit);
  m.def(
      "rescaled_run",
      [](const ConflictGraph& g, std::size_t k, std::uint64_t budget) {
        WorkBudget b{budget};
        const auto r = rescaled_run(g, k, b);
        auto d = search_dict(r.solution, r.iterations);
        d["scaled_start_weight"] = r.scaled_start_weight;
        return d;
      },
      py::arg("graph"), py::arg("k"), py::arg("budget") = WorkBudget::kDefaultLimit);
  m.def(
      "charge",
      [](const ConflictGraph& g, const std::vector<Vertex>& a, Vertex u, Vertex v) { return charge(g, a, u, v); },
      py::arg("graph"), py::arg("solution"), py::arg("u"), py::arg("v"));
  m.def(
      "find_nice_claw",
      [](const ConflictGraph& g, const std::vector<Vertex>& a) -> std::optional<py::tuple> {
        const auto claw = find_nice_claw(g, a);
        if (!claw) return std::nullopt;
        return py::make_tuple(claw->center, claw->talons);
      },
      py::arg("graph"), py::arg("solution"));

  m.def(
      "find_dense_subgraph",
      [](std::size_t n, const std::vector<Multigraph::Edge>& edges, std::size_t h) {
        return find_dense_subgraph(Multigraph(n, edges), h);
      },
      py::arg("vertex_count"), py::arg("edges"), py::arg("h"));

  m.def(
      "lp_value",
      [](const Instance& inst, const std::string& variant) {
        if (variant != "standard" && variant != "intersecting") throw InputError("unknown variant " + variant);
        const auto lp = variant == "standard" ? build_standard_lp(inst) : build_intersecting_family_lp(inst);
        return solve_lp(lp).objective_value;
      },
      py::arg("instance"), py::arg("variant") = "standard");
  m.def(
      "integrality_gap",
      [](const Instance& inst, const std::string& variant, std::size_t exact_cap) {
        if (variant != "standard" && variant != "intersecting") throw InputError("unknown variant " + variant);
        const auto r = integrality_gap(
            inst, variant == "standard" ? LpVariant::kStandard : LpVariant::kIntersecting, exact_cap);
        py::dict d;
        d["lp_value"] = r.lp_value;
        d["ilp_value"] = r.ilp_value;
        d["gap"] = r.gap;
        return d;
      },
      py::arg("instance"), py::arg("variant") = "standard", py::arg("exact_cap") = kDefaultExactCap);
  m.def("export_theta_sdp", [](const Instance& inst) { return export_theta3_sdp(conflict_graph(inst)); });
}
