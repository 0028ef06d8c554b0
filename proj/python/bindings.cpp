#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <span>
#include <sstream>

#include "coarsebox/boxspace.hpp"
#include "coarsebox/cli.hpp"
#include "coarsebox/error.hpp"
#include "coarsebox/folner.hpp"
#include "coarsebox/generators.hpp"
#include "coarsebox/label.hpp"
#include "coarsebox/onlp.hpp"
#include "coarsebox/propa.hpp"
#include "coarsebox/roeop.hpp"
#include "coarsebox/spacefile.hpp"
#include "coarsebox/wwexpander.hpp"

namespace py = pybind11;
using namespace coarsebox;

namespace {

using PairList = std::vector<std::pair<Index, Index>>;
// pybind11 holders cannot point to const; spaces are immutable after construction.
using SpaceHolder = std::shared_ptr<BoxSpace>;

SpaceHolder hold(const SpacePtr& sp) { return std::const_pointer_cast<BoxSpace>(sp); }

Relation relation_from_lists(const SpaceHolder& space, const std::vector<PairList>& lists) {
  std::vector<std::vector<Pair>> pairs(lists.size());
  for (std::size_t c = 0; c < lists.size(); ++c) {
    for (const auto& [x, y] : lists[c]) pairs[c].push_back({x, y});
  }
  return Relation(space, std::move(pairs));
}

std::vector<PairList> relation_to_lists(const Relation& r) {
  std::vector<PairList> out(r.num_components());
  for (std::size_t c = 0; c < r.num_components(); ++c) {
    for (const Pair& p : r.pairs(c)) out[c].emplace_back(p.x, p.y);
  }
  return out;
}

std::vector<WeightedComponent> default_weights(const Relation& t, const std::optional<std::vector<std::vector<double>>>& w) {
  std::vector<WeightedComponent> out;
  const SpacePtr& sp = t.space();
  for (std::size_t c = 0; c < sp->num_components(); ++c) {
    if (w) {
      out.push_back(WeightedComponent::normalized(static_cast<Index>(c), w->at(c)));
    } else {
      out.push_back(WeightedComponent::uniform(static_cast<Index>(c), sp->size(c)));
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coarse geometry workbench for weighted box spaces";

  py::register_exception<Error>(m, "CoarseboxError", PyExc_ValueError);

  py::class_<BoxSpace, SpaceHolder>(m, "BoxSpace")
      .def(py::init([](std::vector<Index> sizes) { return std::make_shared<BoxSpace>(std::move(sizes)); }),
           py::arg("sizes"))
      .def_property_readonly("num_components", &BoxSpace::num_components)
      .def("size", &BoxSpace::size, py::arg("component"))
      .def_property_readonly("total_points", &BoxSpace::total_points)
      .def("__eq__", [](const BoxSpace& a, const BoxSpace& b) { return a == b; });

  py::class_<Relation>(m, "Relation")
      .def(py::init(&relation_from_lists), py::arg("space"), py::arg("pairs"),
           "pairs[c] lists the (x, y) pairs of component c")
      .def_static("diagonal", [](const SpaceHolder& sp) { return Relation::diagonal(sp); }, py::arg("space"))
      .def_static("full", [](const SpaceHolder& sp) { return Relation::full(sp); }, py::arg("space"))
      .def_static("empty", [](const SpaceHolder& sp) { return Relation::empty(sp); }, py::arg("space"))
      .def_property_readonly("space", [](const Relation& r) { return hold(r.space()); })
      .def_property_readonly("size", &Relation::size)
      .def("pairs", &relation_to_lists)
      .def("contains", &Relation::contains, py::arg("component"), py::arg("x"), py::arg("y"))
      .def("is_subset_of", &Relation::is_subset_of)
      .def("__len__", &Relation::size)
      .def("__eq__", [](const Relation& a, const Relation& b) { return a == b; });

  m.def("compose", &compose, py::arg("a"), py::arg("b"));
  m.def("inverse", &inverse, py::arg("r"));
  m.def("power", &power, py::arg("r"), py::arg("n"));
  m.def("widen", &widen, py::arg("r"), py::arg("n"));
  m.def("union", &relation_union, py::arg("a"), py::arg("b"));
  m.def("max_degree", &max_degree, py::arg("r"));
  m.def(
      "ball", [](const Relation& r, std::size_t c, const PointSet& y) { return ball(r, c, std::span<const Index>(y)); }, py::arg("r"),
      py::arg("component"), py::arg("points"));
  m.def(
      "is_bounded", [](const Relation& r, std::size_t c, const PointSet& y) { return is_bounded(r, c, std::span<const Index>(y)); },
      py::arg("r"), py::arg("component"), py::arg("points"));

  py::class_<Label>(m, "Label")
      .def_readonly("base", &Label::base)
      .def_readonly("classes", &Label::classes)
      .def_property_readonly("non_diagonal_classes", &Label::non_diagonal_classes);
  m.def("build_label", &build_label, py::arg("r"));
  m.def("verify_label", &verify_label, py::arg("label"));

  py::class_<PropagationOperator>(m, "PropagationOperator")
      .def_static("identity", [](const SpaceHolder& sp) { return PropagationOperator::identity(sp); }, py::arg("space"))
      .def_static("indicator", &PropagationOperator::indicator, py::arg("r"), py::arg("value") = 1.0)
      .def_static("adjacency", &PropagationOperator::adjacency, py::arg("r"))
      .def_property_readonly("propagation", &PropagationOperator::propagation)
      .def("dense", &PropagationOperator::dense, py::arg("component"));
  m.def("multiply", &multiply, py::arg("a"), py::arg("b"));
  m.def("operator_norm", &operator_norm, py::arg("a"), py::arg("component"), py::arg("tol") = 1e-13);

  py::class_<LocalizationReport>(m, "LocalizationReport")
      .def_readonly("component", &LocalizationReport::component)
      .def_readonly("operator_norm", &LocalizationReport::operator_norm)
      .def_readonly("best_ratio", &LocalizationReport::best_ratio)
      .def_readonly("per_center_ratios", &LocalizationReport::per_center_ratios)
      .def("localizes", &LocalizationReport::localizes, py::arg("c"));
  m.def("localization_ratio", &localization_ratio, py::arg("a"), py::arg("f"), py::arg("component"),
        py::arg("tol") = 1e-13, py::arg("jobs") = 1);

  py::class_<WitnessWeights>(m, "WitnessWeights")
      .def_readonly("weights", &WitnessWeights::weights)
      .def_readonly("source_eigenvalue", &WitnessWeights::source_eigenvalue)
      .def_readonly("support", &WitnessWeights::support)
      .def_readonly("residual", &WitnessWeights::residual);
  m.def(
      "extract_weights",
      [](const PropagationOperator& a, std::size_t c, const std::vector<Index>& forbidden) {
        return extract_weights(a, c, std::span<const Index>(forbidden));
      },
      py::arg("a"), py::arg("component"), py::arg("forbidden") = std::vector<Index>{});

  py::enum_<ScanMode>(m, "ScanMode")
      .value("exact", ScanMode::exact)
      .value("heuristic", ScanMode::heuristic)
      .value("automatic", ScanMode::automatic);

  py::class_<WitnessCheck>(m, "WitnessCheck")
      .def_readonly("min_ratio", &WitnessCheck::min_ratio)
      .def_readonly("argmin", &WitnessCheck::argmin)
      .def_readonly("holds", &WitnessCheck::holds)
      .def_readonly("exact", &WitnessCheck::exact);
  m.def("verify_witness_inequality", &verify_witness_inequality, py::arg("witness"), py::arg("a"), py::arg("f"),
        py::arg("mode") = ScanMode::exact, py::arg("cap") = kDefaultSubsetCap, py::arg("threshold") = 3.0);

  py::class_<BoundaryRatio>(m, "BoundaryRatio")
      .def_readonly("min_ratio", &BoundaryRatio::min_ratio)
      .def_readonly("argmin", &BoundaryRatio::argmin)
      .def_readonly("exact", &BoundaryRatio::exact)
      .def_readonly("diagonal_added", &BoundaryRatio::diagonal_added);
  m.def(
      "min_boundary_ratio",
      [](const Relation& t, const Relation& f, std::size_t c, std::optional<std::vector<double>> weights,
         ScanMode mode, std::size_t cap) {
        const WeightedComponent w = weights ? WeightedComponent::normalized(static_cast<Index>(c), *weights)
                                            : WeightedComponent::uniform(static_cast<Index>(c), t.space()->size(c));
        return min_boundary_ratio(w, t, f, mode, cap);
      },
      py::arg("t"), py::arg("f"), py::arg("component"), py::arg("weights") = py::none(),
      py::arg("mode") = ScanMode::exact, py::arg("cap") = kDefaultSubsetCap);

  py::class_<FolnerSearch>(m, "FolnerSearch")
      .def_property_readonly("certified", [](const FolnerSearch& s) { return s.certificate.has_value(); })
      .def_readonly("certified_radius", &FolnerSearch::certified_radius)
      .def_readonly("best_ratio", &FolnerSearch::best_ratio)
      .def_property_readonly("relation",
                             [](const FolnerSearch& s) -> std::optional<Relation> {
                               if (!s.certificate) return std::nullopt;
                               return s.certificate->f;
                             })
      .def_property_readonly("ratio", [](const FolnerSearch& s) -> std::optional<double> {
        if (!s.certificate) return std::nullopt;
        return s.certificate->per_component.front().ratio();
      });
  m.def(
      "folner_search",
      [](const Relation& t, std::size_t c, double eps, const std::string& kernel, unsigned min_radius,
         unsigned max_radius, std::optional<std::vector<std::vector<double>>> weights) {
        const auto ws = default_weights(t, weights);
        return folner_search(c, t, build_label(t), eps, ws.at(c), parse_kernel(kernel), min_radius, max_radius);
      },
      py::arg("t"), py::arg("component"), py::arg("eps"), py::arg("kernel") = "tent", py::arg("min_radius") = 1,
      py::arg("max_radius") = 12, py::arg("weights") = py::none());

  m.def(
      "ball_average_epsilon",
      [](const Relation& base, const Relation& t, std::size_t c, unsigned radius) {
        return certificate_quality(ball_average_family(c, base, radius), t).epsilon;
      },
      py::arg("base"), py::arg("t"), py::arg("component"), py::arg("radius"));

  py::class_<WeightedSpace>(m, "WeightedSpace")
      .def_property_readonly("space", [](const WeightedSpace& ws) { return hold(ws.space); })
      .def_readonly("relation", &WeightedSpace::relation)
      .def_property_readonly("weights", [](const WeightedSpace& ws) {
        std::vector<std::vector<double>> out;
        for (const auto& w : ws.weights) out.emplace_back(w.weights().begin(), w.weights().end());
        return out;
      });
  m.def(
      "parse_space", [](const std::string& text) { return realize(parse_space_file(text)); }, py::arg("text"));
  m.def(
      "load_space", [](const std::string& path) { return realize(load_space_file(path)); }, py::arg("path"));
  m.def(
      "gen", [](const std::string& family, const std::vector<Index>& sizes, unsigned degree, std::uint64_t seed) {
        const std::span<const Index> s(sizes);
        if (family == "cycles") return serialize(gen_cycles(s));
        if (family == "torus") return serialize(gen_torus(s));
        if (family == "margulis") return serialize(gen_margulis(s));
        if (family == "random-regular") return serialize(gen_random_regular(degree, s, seed));
        throw Error("unknown family '" + family + "'");
      },
      py::arg("family"), py::arg("sizes"), py::arg("degree") = 3, py::arg("seed") = 0,
      "Space-file text for a generated family");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command; returns (exit_code, stdout, stderr)");
}
