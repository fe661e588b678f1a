#include "momentflow/catalog.hpp"
#include "momentflow/flows.hpp"
#include "momentflow/hesselink.hpp"
#include "momentflow/moment.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace momentflow;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(to_string(r));
}

py::list fractions(const RationalVector& v) {
  py::list out;
  for (const auto& x : v) out.append(fraction(x));
  return out;
}

RationalVector rationals(const py::iterable& xs) {
  RationalVector out;
  for (auto x : xs) out.push_back(parse_rational(py::str(x).cast<std::string>()));
  return out;
}

py::dict label_dict(const HesselinkLabel& l) {
  py::dict d;
  d["eta"] = fractions(l.eta);
  d["q"] = fraction(l.q);
  d["eta_normalized"] = fractions(l.eta_normalized);
  d["eta_coordinates"] = fractions(l.eta_coordinates);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Moment maps, gradient flows and Hesselink strata for GL_n / SL_n representations";

  py::enum_<GroupKind>(m, "GroupKind").value("GL", GroupKind::GL).value("SL", GroupKind::SL);
  py::enum_<Family>(m, "Family")
      .value("Standard", Family::Standard)
      .value("Dual", Family::Dual)
      .value("Adjoint", Family::Adjoint)
      .value("Lambda2", Family::Lambda2)
      .value("Brackets", Family::Brackets)
      .value("TorusWeights", Family::TorusWeights);

  py::class_<CartanContext>(m, "CartanContext")
      .def_property_readonly("n", &CartanContext::n)
      .def_property_readonly("group", &CartanContext::group)
      .def_property_readonly("p_basis", &CartanContext::p_basis)
      .def_property_readonly("k_basis", &CartanContext::k_basis);
  m.def("build_context", &build_context, py::arg("n"), py::arg("group") = GroupKind::GL);
  m.def("spd_sqrt", &spd_sqrt);
  m.def("parabolic_lie_algebra", &parabolic_lie_algebra);

  py::class_<RepSpec>(m, "RepSpec")
      .def(py::init(&RepSpec::make), py::arg("family"), py::arg("n"))
      .def_static("torus", &RepSpec::torus)
      .def_readonly("family", &RepSpec::family)
      .def_readonly("n", &RepSpec::n)
      .def_readonly("weights", &RepSpec::weights);
  m.def("rep_dim", &rep_dim);
  m.def("apply_group", &apply_group);
  m.def("apply_lie", &apply_lie);
  m.def("weights_of", &weights_of);
  m.def("basis_labels", &basis_labels);
  m.def("lambda2_embed", &lambda2_embed);

  py::class_<MomentValue>(m, "MomentValue")
      .def_readonly("matrix", &MomentValue::matrix)
      .def_readonly("energy", &MomentValue::energy)
      .def_readonly("spectrum", &MomentValue::spectrum);
  m.def("moment", &moment);
  m.def("closed_form_moment", &closed_form_moment);
  m.def("energy", &energy);
  m.def("criticality_residual", py::overload_cast<const CartanContext&, const RepSpec&, const Vector&>(&criticality_residual));

  py::class_<FlowParams>(m, "FlowParams")
      .def(py::init<>())
      .def_readwrite("dt0", &FlowParams::dt0)
      .def_readwrite("t_max", &FlowParams::t_max)
      .def_readwrite("residual_tol", &FlowParams::residual_tol)
      .def_readwrite("max_steps", &FlowParams::max_steps)
      .def_readwrite("sample_stride", &FlowParams::sample_stride)
      .def_readwrite("renormalize", &FlowParams::renormalize)
      .def_readwrite("stop_at_critical", &FlowParams::stop_at_critical);
  py::class_<FlowResult>(m, "FlowResult")
      .def_readonly("converged", &FlowResult::converged)
      .def_readonly("limit", &FlowResult::limit)
      .def_readonly("limit_moment", &FlowResult::limit_moment)
      .def_readonly("final_residual", &FlowResult::final_residual)
      .def_readonly("energy_trace", &FlowResult::energy_trace)
      .def_readonly("steps", &FlowResult::steps)
      .def_readonly("diagnostic", &FlowResult::diagnostic);
  m.def("gradient_flow", &gradient_flow, py::arg("ctx"), py::arg("spec"), py::arg("v0"),
        py::arg("params") = FlowParams{});
  m.def(
      "verify_flow_equivalence",
      [](const CartanContext& ctx, const RepSpec& spec, const Vector& vbar, const Matrix& h0, double horizon) {
        const auto r = verify_flow_equivalence(ctx, spec, vbar, h0, horizon, FlowParams{});
        py::dict d;
        d["max_dev_v"] = r.max_dev_v;
        d["max_dev_S"] = r.max_dev_s;
        d["passed"] = r.passed;
        return d;
      },
      py::arg("ctx"), py::arg("spec"), py::arg("vbar"), py::arg("h0"), py::arg("horizon") = 5.0);

  m.def(
      "optimal_class",
      [](const RepSpec& spec, const Vector& v, GroupKind group) -> py::object {
        auto l = optimal_class(spec, v, group);
        if (!l) return py::none();
        return label_dict(*l);
      },
      py::arg("spec"), py::arg("v"), py::arg("group") = GroupKind::GL,
      "Hesselink label as a dict of Fractions, or None when v is semistable for the torus.");
  m.def("min_norm_point", [](const std::vector<py::iterable>& weights) {
    std::vector<RationalVector> ws;
    for (const auto& w : weights) ws.push_back(rationals(w));
    const auto c = min_norm_point(ws);
    py::dict d;
    d["eta"] = fractions(c.eta);
    d["q"] = fraction(c.q);
    d["optimality_margin"] = fraction(c.optimality_margin);
    py::list support;
    for (const auto& s : c.support) support.append(fractions(s));
    d["support"] = support;
    py::list coeffs;
    for (const auto& x : c.coefficients) coeffs.append(fraction(x));
    d["coefficients"] = coeffs;
    return d;
  });
  m.def(
      "enumerate_labels",
      [](const RepSpec& spec, int cap) {
        const auto e = enumerate_labels(spec, cap);
        py::list labels;
        for (const auto& l : e.labels) labels.append(label_dict(l));
        return py::make_tuple(labels, e.includes_zero);
      },
      py::arg("spec"), py::arg("max_weight_count") = 20);
  m.def("project_to_sl", [](const py::iterable& eta) { return fractions(project_to_sl(rationals(eta))); });

  m.def(
      "jordan_label",
      [](const std::vector<int>& parts) {
        const auto j = jordan_label(Partition(parts));
        py::dict d = label_dict(j.label);
        d["beta_paper"] = fractions(j.beta_paper);
        d["q_paper"] = fraction(j.q_paper);
        d["identity_ok"] = j.identity_ok;
        d["display_ok"] = j.display_ok;
        d["formula_ok"] = j.formula_ok;
        d["bound_ok"] = j.bound_ok;
        d["negdef_ok"] = j.negdef_ok;
        return d;
      },
      py::arg("partition"));
  m.def("jordan_vector", [](const std::vector<int>& parts) { return jordan_vector(Partition(parts)); });
  m.def("bracket_preset", [](const std::string& name, int n) { return bracket_preset(parse_bracket_preset(name), n).coords(); });
}
