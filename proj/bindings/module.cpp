#include "borbit/counterexample.hpp"
#include "borbit/product.hpp"
#include "borbit/sampling.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace pybind11::detail {

// borbit::Rational <-> fractions.Fraction, carried as exact "p/q" text in
// both directions. Plain ints and "p/q" strings load too.
template <>
struct type_caster<borbit::Rational> {
  PYBIND11_TYPE_CASTER(borbit::Rational, const_name("Fraction"));

  bool load(handle src, bool) {
    if (src.is_none()) {
      return false;
    }
    try {
      if (PyLong_Check(src.ptr()) || isinstance(src, fraction_type())) {
        value = borbit::parse_rational(py::str(src).cast<std::string>());
        return true;
      }
      if (py::isinstance<py::str>(src)) {
        value = borbit::parse_rational(src.cast<std::string>());
        return true;
      }
    } catch (const std::invalid_argument&) {
      return false;
    }
    return false;
  }

  static handle cast(const borbit::Rational& src, return_value_policy, handle) {
    return fraction_type()(borbit::to_string(src)).release();
  }

 private:
  static py::object fraction_type() {
    return py::module_::import("fractions").attr("Fraction");
  }
};

}  // namespace pybind11::detail

namespace {

std::vector<borbit::SamplePair> to_pairs(
    const std::vector<std::pair<borbit::SeqPoint, borbit::SeqPoint>>& raw) {
  std::vector<borbit::SamplePair> pairs;
  pairs.reserve(raw.size());
  for (const auto& [x, y] : raw) {
    pairs.push_back({x, y});
  }
  return pairs;
}

}  // namespace

PYBIND11_MODULE(_borbit, m) {
  using namespace borbit;

  m.doc() = "exact experiments with inexact infinite products of contracting mappings";

  py::class_<SeqPoint>(m, "SeqPoint")
      .def(py::init<>())
      .def(py::init<std::vector<Rational>>(), py::arg("entries"))
      .def_static("zero", &SeqPoint::zero)
      .def_static("from_text", &SeqPoint::from_text, py::arg("text"))
      .def("to_text", &SeqPoint::to_text)
      .def_property_readonly("entries", &SeqPoint::entries)
      .def_property_readonly("support_length", &SeqPoint::support_length)
      .def("coordinate", &SeqPoint::coordinate, py::arg("index"))
      .def("sum", &SeqPoint::sum)
      .def("is_zero", &SeqPoint::is_zero)
      .def("__eq__",
           [](const SeqPoint& a, const SeqPoint& b) { return a == b; })
      .def("__repr__",
           [](const SeqPoint& p) { return "SeqPoint('" + p.to_text() + "')"; });

  py::class_<TargetSet>(m, "TargetSet")
      .def(py::init<std::vector<SeqPoint>>(), py::arg("points"))
      .def_static("zero", &TargetSet::zero)
      .def_property_readonly("points", &TargetSet::points)
      .def("contains", &TargetSet::contains, py::arg("x"));

  m.def("distance", &distance, py::arg("x"), py::arg("y"));
  m.def("distance_to_set", &distance_to_set, py::arg("x"), py::arg("target"));
  m.def("shift_halve", &shift_halve, py::arg("x"));

  py::class_<Mapping>(m, "Mapping")
      .def_property_readonly("name", &Mapping::name)
      .def("apply", &Mapping::apply, py::arg("x"))
      .def("__call__", &Mapping::apply, py::arg("x"));
  m.def("shift_halve_mapping", &shift_halve_mapping);
  m.def("identity_mapping", &identity_mapping);
  m.def("scale_mapping", &scale_mapping, py::arg("ratio"));

  py::class_<ComparisonFunction>(m, "ComparisonFunction")
      .def_property_readonly("name", &ComparisonFunction::name)
      .def("__call__", &ComparisonFunction::eval, py::arg("t"));
  m.def("psi_one_third", &psi_one_third);
  m.def("psi_scale", &psi_scale, py::arg("ratio"));

  m.def("iterate", &iterate, py::arg("map"), py::arg("x"), py::arg("n"));

  py::class_<DiamEstimate>(m, "DiamEstimate")
      .def_readonly("lower", &DiamEstimate::lower)
      .def_readonly("upper", &DiamEstimate::upper)
      .def_readonly("depth", &DiamEstimate::depth)
      .def_readonly("closed", &DiamEstimate::closed)
      .def("bounded", &DiamEstimate::bounded)
      .def("__repr__", [](const DiamEstimate& d) {
        std::string text = "DiamEstimate(lower=" + to_string(d.lower);
        text += d.upper ? ", upper=" + to_string(*d.upper) : std::string(", upper=None");
        return text + ")";
      });
  m.def("orbit_diameter", &orbit_diameter, py::arg("map"), py::arg("x"),
        py::arg("depth") = kDefaultDepth);
  m.def("double_orbit_diameter", &double_orbit_diameter, py::arg("map"), py::arg("x"),
        py::arg("y"), py::arg("depth") = kDefaultDepth);

  py::enum_<Verdict>(m, "Verdict")
      .value("PASS", Verdict::pass)
      .value("FAIL", Verdict::fail)
      .value("INDETERMINATE", Verdict::indeterminate);

  py::class_<PropertyRow>(m, "PropertyRow")
      .def_readonly("instance", &PropertyRow::instance)
      .def_readonly("lhs", &PropertyRow::lhs)
      .def_readonly("rhs", &PropertyRow::rhs)
      .def_readonly("verdict", &PropertyRow::verdict);

  py::class_<PropertyReport>(m, "PropertyReport")
      .def_readonly("property", &PropertyReport::property)
      .def_readonly("rows", &PropertyReport::rows)
      .def("all_pass", &PropertyReport::all_pass)
      .def("aggregate", &PropertyReport::aggregate);

  m.def(
      "check_weak_quasi_contraction",
      [](const Mapping& map, const ComparisonFunction& psi,
         const std::vector<std::pair<SeqPoint, SeqPoint>>& pairs, int depth) {
        return check_weak_quasi_contraction(map, psi, to_pairs(pairs), depth);
      },
      py::arg("map"), py::arg("psi"), py::arg("pairs"), py::arg("depth") = kDefaultDepth);

  py::class_<MappingFamily>(m, "MappingFamily")
      .def(py::init<std::vector<Mapping>, ComparisonFunction>(), py::arg("members"),
           py::arg("psi"))
      .def_property_readonly("size", &MappingFamily::size)
      .def("member", &MappingFamily::member, py::arg("position"))
      .def("member_for", &MappingFamily::member_for, py::arg("selector_value"))
      .def(
          "validate",
          [](const MappingFamily& family,
             const std::vector<std::pair<SeqPoint, SeqPoint>>& pairs, int depth) {
            return family.validate(to_pairs(pairs), depth);
          },
          py::arg("pairs"), py::arg("depth") = kDefaultDepth);

  py::class_<IndexSelector>(m, "IndexSelector")
      .def_property_readonly("name", &IndexSelector::name)
      .def("__call__", [](const IndexSelector& f, std::size_t step) { return f(step); })
      .def("shifted", &IndexSelector::shifted, py::arg("offset"));
  m.def("identity_selector", &identity_selector);
  m.def("constant_selector", &constant_selector, py::arg("value"));

  py::class_<ErrorSchedule>(m, "ErrorSchedule")
      .def_property_readonly("name", &ErrorSchedule::name)
      .def("at", &ErrorSchedule::at, py::arg("step"))
      .def_property_readonly("vanishing", &ErrorSchedule::vanishing);
  m.def("constant_schedule", &constant_schedule, py::arg("value"));
  m.def("geometric_schedule", &geometric_schedule, py::arg("initial"), py::arg("ratio"));

  py::class_<PerturbationRule>(m, "PerturbationRule")
      .def_property_readonly("name", &PerturbationRule::name)
      .def_static("zero", &PerturbationRule::zero)
      .def_static("first_coordinate_bump", &PerturbationRule::first_coordinate_bump,
                  py::arg("magnitude"))
      .def_static("seeded_bump", &PerturbationRule::seeded_bump, py::arg("seed"),
                  py::arg("scale"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("points", &Trajectory::points)
      .def_readonly("selector_trace", &Trajectory::selector_trace)
      .def_readonly("certified_step_errors", &Trajectory::certified_step_errors)
      .def_readonly("schedule_values", &Trajectory::schedule_values);

  m.def("exact_product", &exact_product, py::arg("family"), py::arg("f"), py::arg("x0"),
        py::arg("n"));
  m.def("inexact_orbit", &inexact_orbit, py::arg("family"), py::arg("f"), py::arg("x0"),
        py::arg("schedule"), py::arg("perturb"), py::arg("n"),
        py::arg("depth") = kDefaultDepth);

  m.def("target_error_threshold", &target_error_threshold, py::arg("epsilon"), py::arg("n0"),
        py::arg("s"));
  m.def("coalescence_error_threshold", &coalescence_error_threshold, py::arg("epsilon"),
        py::arg("n"), py::arg("s"));
  m.def("geometric_decay_length", &geometric_decay_length, py::arg("factor"),
        py::arg("initial"), py::arg("epsilon"));
  m.def("first_stable_product_length",
        [](const MappingFamily& family, const IndexSelector& f, const TargetSet& target,
           const Rational& epsilon, const std::vector<SeqPoint>& samples,
           std::size_t horizon) {
          return first_stable_product_length(family, f, target, epsilon, samples, horizon);
        },
        py::arg("family"), py::arg("f"), py::arg("target"), py::arg("epsilon"),
        py::arg("samples"), py::arg("horizon"));

  py::class_<MonitorReport>(m, "MonitorReport")
      .def_readonly("distances", &MonitorReport::distances)
      .def_readonly("n_bar", &MonitorReport::n_bar)
      .def_readonly("epsilon", &MonitorReport::epsilon)
      .def_readonly("peak_after_n_bar", &MonitorReport::peak_after_n_bar);
  m.def("convergence_monitor", &convergence_monitor, py::arg("trajectory"), py::arg("target"),
        py::arg("epsilon"));

  py::class_<PairReport>(m, "PairReport")
      .def_readonly("x", &PairReport::x)
      .def_readonly("y", &PairReport::y)
      .def_readonly("pair_distances", &PairReport::pair_distances)
      .def_readonly("n_check", &PairReport::n_check)
      .def_readonly("epsilon", &PairReport::epsilon);
  m.def("ergodic_pair_run", &ergodic_pair_run, py::arg("family"), py::arg("f"), py::arg("x0"),
        py::arg("y0"), py::arg("schedule"), py::arg("perturb"), py::arg("n"),
        py::arg("epsilon"), py::arg("depth") = kDefaultDepth);

  py::class_<GammaSequence>(m, "GammaSequence")
      .def_static("constant", &GammaSequence::constant, py::arg("value"))
      .def("at", &GammaSequence::at, py::arg("index"))
      .def_property_readonly("description", &GammaSequence::description);

  py::class_<BlockResult>(m, "BlockResult")
      .def_readonly("m", &BlockResult::m)
      .def_readonly("n", &BlockResult::n)
      .def_readonly("q", &BlockResult::q)
      .def_readonly("w", &BlockResult::w)
      .def_readonly("window_sum", &BlockResult::window_sum)
      .def_readonly("prefix_sum", &BlockResult::prefix_sum);
  m.def("build_block", &build_block, py::arg("w0"), py::arg("q"), py::arg("gamma"),
        py::arg("depth") = kDefaultDepth, py::arg("scan_limit") = kDefaultScanLimit);

  py::class_<VerificationRow>(m, "VerificationRow")
      .def_readonly("inequality", &VerificationRow::inequality)
      .def_readonly("lhs", &VerificationRow::lhs)
      .def_readonly("rhs", &VerificationRow::rhs)
      .def_readonly("margin", &VerificationRow::margin)
      .def_readonly("verdict", &VerificationRow::verdict);

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("rows", &VerificationReport::rows)
      .def_readonly("note", &VerificationReport::note)
      .def("all_pass", &VerificationReport::all_pass)
      .def("aggregate", &VerificationReport::aggregate);

  m.def("verify_block", &verify_block, py::arg("block"), py::arg("gamma"),
        py::arg("depth") = kDefaultDepth);

  py::class_<DivergentOrbit>(m, "DivergentOrbit")
      .def_readonly("z", &DivergentOrbit::z)
      .def_readonly("t", &DivergentOrbit::t)
      .def_readonly("delta", &DivergentOrbit::delta);
  m.def("build_divergent_orbit", &build_divergent_orbit, py::arg("x"), py::arg("gamma"),
        py::arg("num_blocks"), py::arg("depth") = kDefaultDepth,
        py::arg("scan_limit") = kDefaultScanLimit);
  m.def("verify_divergence", &verify_divergence, py::arg("orbit"), py::arg("threshold"),
        py::arg("depth") = kDefaultDepth);

  py::class_<SampleGenerator>(m, "SampleGenerator")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("point", &SampleGenerator::point, py::arg("max_support") = 8)
      .def("points", &SampleGenerator::points, py::arg("count"), py::arg("max_support") = 8);

  m.attr("DEFAULT_DEPTH") = kDefaultDepth;
  m.attr("ESCAPE_THRESHOLD") = py::cast(kEscapeThreshold);
  m.attr("__version__") = "0.1.0";
}
