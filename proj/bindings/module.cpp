#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lnelab/classify.hpp"
#include "lnelab/contact.hpp"
#include "lnelab/corpus.hpp"
#include "lnelab/io.hpp"
#include "lnelab/sweep.hpp"
#include "lnelab/tangent_cone.hpp"

namespace py = pybind11;
using namespace lnelab;

namespace {

geodesy::ConnectionRule rule_from_args(double epsilon, int k) {
  if (epsilon > 0.0 && k > 0)
    throw std::invalid_argument("pass either epsilon or k, not both");
  if (epsilon > 0.0) return geodesy::ConnectionRule::epsilon_ball(epsilon);
  if (k > 0) return geodesy::ConnectionRule::k_nearest(k);
  throw std::invalid_argument("a connection rule needs epsilon > 0 or k > 0");
}

py::dict verdict_dict(const linkscan::LlneVerdict& v) {
  py::dict d;
  d["classification"] = linkscan::to_string(v.classification);
  d["slope"] = v.slope;
  d["slope_stderr"] = v.slope_stderr;
  d["uniform_constant_estimate"] = v.uniform_constant_estimate;
  d["separation_K"] = v.separation_K;
  d["records_used"] = v.records_used;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Inner-vs-outer metric laboratory for real algebraic germs";

  py::class_<variety::ImplicitGerm>(m, "ImplicitGerm")
      .def_property_readonly("name", [](const variety::ImplicitGerm& g) { return g.name; })
      .def_property_readonly("ambient_dim", &variety::ImplicitGerm::ambient_dim)
      .def_readonly("residual_tol", &variety::ImplicitGerm::residual_tol)
      .def_readonly("domain_radius", &variety::ImplicitGerm::domain_radius)
      .def("max_residual", &variety::ImplicitGerm::max_residual)
      .def("__repr__", [](const variety::ImplicitGerm& g) {
        return "<ImplicitGerm " + g.name + ">";
      });

  py::class_<variety::SampleCloud>(m, "SampleCloud")
      .def_property_readonly("points",
                             [](const variety::SampleCloud& c) { return c.points; })
      .def_readonly("scale", &variety::SampleCloud::scale)
      .def_readonly("rng_seed", &variety::SampleCloud::rng_seed)
      .def_property_readonly("kind",
                             [](const variety::SampleCloud& c) { return to_string(c.kind); })
      .def("__len__", &variety::SampleCloud::size);

  m.def("germ_from_json", &harness::germ_from_json, py::arg("text"));
  m.def("germ_to_json", &harness::germ_to_json, py::arg("germ"));
  m.def(
      "corpus_germ",
      [](const std::string& name, double domain_radius) {
        return harness::corpus_germ(harness::corpus_entry(name), domain_radius);
      },
      py::arg("name"), py::arg("domain_radius") = 1.0);
  m.def("corpus_names", [] {
    std::vector<std::string> names;
    for (const auto& e : harness::standard_corpus()) names.push_back(e.name);
    return names;
  });

  m.def(
      "sample_ball",
      [](const variety::ImplicitGerm& germ, double t, int count, std::uint64_t seed) {
        return variety::sample_ball(germ, t, count, seed);
      },
      py::arg("germ"), py::arg("t"), py::arg("count"), py::arg("seed"));
  m.def(
      "sample_sphere_slice",
      [](const variety::ImplicitGerm& germ, double t, int count, std::uint64_t seed,
         const std::string& norm) {
        return variety::sample_sphere_slice(
            germ, harness::parse_norm(norm, germ.ambient_dim()), t, count, seed);
      },
      py::arg("germ"), py::arg("t"), py::arg("count"), py::arg("seed"),
      py::arg("norm") = "euclidean");
  m.def(
      "project_to_variety",
      [](const variety::ImplicitGerm& germ, const Vec& seed_point) -> py::object {
        const auto x = variety::project_to_variety(germ, seed_point);
        if (!x) return py::none();
        return py::cast(*x);
      },
      py::arg("germ"), py::arg("seed_point"));

  m.def(
      "inner_distance",
      [](const PointMatrix& points, int i, int j, double epsilon, int k) {
        const auto graph = geodesy::build_graph(points, rule_from_args(epsilon, k));
        return geodesy::inner_distance(graph, i, j);
      },
      py::arg("points"), py::arg("i"), py::arg("j"), py::arg("epsilon") = 0.0,
      py::arg("k") = 0);
  m.def(
      "components",
      [](const PointMatrix& points, double epsilon, int k) {
        const auto graph = geodesy::build_graph(points, rule_from_args(epsilon, k));
        const auto parts = geodesy::components(graph);
        py::dict d;
        d["labels"] = parts.labels;
        d["component_count"] = parts.component_count;
        d["d0"] = parts.d0;
        return d;
      },
      py::arg("points"), py::arg("epsilon") = 0.0, py::arg("k") = 0);
  m.def(
      "lne_constant",
      [](const PointMatrix& points, double epsilon, int k, std::int64_t pair_budget,
         std::uint64_t seed) {
        const auto graph = geodesy::build_graph(points, rule_from_args(epsilon, k));
        const auto est = geodesy::lne_constant(graph, pair_budget, seed);
        py::dict d;
        d["defined"] = est.defined;
        d["constant"] = est.constant;
        d["witness_pair"] = est.witness_pair;
        d["pairs_examined"] = est.pairs_examined;
        return d;
      },
      py::arg("points"), py::arg("epsilon") = 0.0, py::arg("k") = 0,
      py::arg("pair_budget") = 4'000'000, py::arg("seed") = 1);

  m.def(
      "sweep",
      [](const variety::ImplicitGerm& germ, const std::vector<double>& schedule,
         int per_slice_count, std::uint64_t seed, const std::string& norm) {
        linkscan::SweepParams params;
        params.per_slice_count = per_slice_count;
        const auto sw = linkscan::sweep(
            germ, harness::parse_norm(norm, germ.ambient_dim()), schedule, params, seed);
        const auto verdict = linkscan::llne_verdict(sw);
        py::list records;
        for (const auto& rec : sw.records) {
          py::dict r;
          r["t"] = rec.t;
          r["n_samples"] = rec.n_samples;
          r["n_components"] = rec.n_components;
          r["C_t"] = rec.constant;
          r["d0"] = rec.d0;
          r["stable"] = rec.stable;
          r["empty"] = rec.empty;
          records.append(r);
        }
        py::dict d;
        d["records"] = records;
        d["verdict"] = verdict_dict(verdict);
        d["csv"] = harness::sweep_csv(sw);
        return d;
      },
      py::arg("germ"), py::arg("schedule"), py::arg("per_slice_count") = 1200,
      py::arg("seed") = 1, py::arg("norm") = "euclidean");

  m.def(
      "classify_brieskorn",
      [](int a, int b, int c) {
        const auto v = classify::classify_brieskorn(classify::BrieskornParams(a, b, c));
        py::dict d;
        d["lne"] = v.lne;
        d["clause"] = classify::to_string(v.clause);
        d["description"] = v.description;
        if (v.witness) {
          d["witness_minus"] = v.witness->arc_minus.to_string();
          d["witness_plus"] = v.witness->arc_plus.to_string();
          d["ratio_slope"] = v.witness->ratio_slope;
        }
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("c"));
  m.def(
      "classify_horn",
      [](int mm, int p, int n) {
        const auto v = classify::classify_horn(mm, p, n);
        py::dict d;
        d["applicable"] = v.applicable;
        d["lne"] = v.lne;
        d["description"] = v.description;
        return d;
      },
      py::arg("m"), py::arg("p"), py::arg("n"));

  m.def("hausdorff_distance", &arcs::hausdorff_distance, py::arg("a"), py::arg("b"));
  m.def(
      "tord_outer",
      [](const std::vector<std::vector<std::tuple<double, long long, long long>>>& a,
         const std::vector<std::vector<std::tuple<double, long long, long long>>>& b,
         const std::vector<double>& ts) {
        auto build = [](const auto& spec) {
          std::vector<std::vector<arcs::ArcTerm>> comps;
          for (const auto& coord : spec) {
            std::vector<arcs::ArcTerm> terms;
            for (const auto& [c, num, den] : coord) terms.push_back({c, num, den});
            comps.push_back(terms);
          }
          return arcs::MonomialArc(comps, 1.0);
        };
        const arcs::MonomialArc arc_a = build(a), arc_b = build(b);
        const auto est = ts.empty() ? arcs::tord_outer(arc_a, arc_b)
                                    : arcs::tord_outer(arc_a, arc_b, ts);
        py::dict d;
        d["order"] = est.order;
        d["stderr"] = est.stderr_;
        d["method"] = est.method == arcs::OrderEstimate::Method::symbolic_exact
                          ? "symbolic_exact"
                          : "regression";
        return d;
      },
      py::arg("arc_a"), py::arg("arc_b"), py::arg("t_values") = std::vector<double>{},
      "Arcs are per-coordinate lists of (coeff, exponent_num, exponent_den).");
}
