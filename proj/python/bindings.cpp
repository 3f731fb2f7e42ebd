#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dgbdt/verify.hpp"
#include "dgbdt/version.hpp"

namespace py = pybind11;
using namespace dgbdt;

namespace {

py::dict equality_to_dict(const EqualityReport& r) {
  py::list samples;
  for (const auto& s : r.samples) {
    py::dict d;
    d["z"] = s.z;
    d["real_axis"] = s.real_axis;
    d["skipped"] = s.skipped;
    d["shifted"] = s.shifted;
    d["difference"] = s.difference;
    d["printed_difference"] = s.printed_difference;
    d["note"] = s.note;
    samples.append(d);
  }
  py::dict out;
  out["samples"] = samples;
  out["max_oracle_diff"] = r.max_oracle_diff;
  out["max_weyl_diff"] = r.max_weyl_diff;
  out["max_printed_diff"] = r.max_printed_diff;
  out["printed_rule_matches"] = r.printed_rule_matches;
  out["pass"] = r.pass;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete Dirac systems from GBDT parameter triples";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<SingularError>(m, "SingularError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());
  py::register_exception<GenerationError>(m, "GenerationError", base.ptr());

  py::enum_<SystemKind>(m, "SystemKind")
      .value("SELF_ADJOINT", SystemKind::SelfAdjoint)
      .value("SKEW", SystemKind::SkewSelfAdjoint);

  py::enum_<SkewRule>(m, "SkewRule")
      .value("CORRECTED", SkewRule::Corrected)
      .value("PRINTED", SkewRule::Printed);

  py::class_<Signature>(m, "Signature")
      .def(py::init<int, int>(), py::arg("m1"), py::arg("m2"))
      .def_readwrite("m1", &Signature::m1)
      .def_readwrite("m2", &Signature::m2)
      .def_property_readonly("j", &Signature::j);

  py::class_<ParameterTriple>(m, "ParameterTriple")
      .def(py::init([](SystemKind kind, int m1, int m2, Matrix a, Matrix s0, Matrix pi0) {
             ParameterTriple t{kind, {m1, m2}, std::move(a), std::move(s0), std::move(pi0)};
             t.check_dimensions();
             return t;
           }),
           py::arg("kind"), py::arg("m1"), py::arg("m2"), py::arg("a"), py::arg("s0"), py::arg("pi0"))
      .def_readonly("kind", &ParameterTriple::kind)
      .def_readonly("sig", &ParameterTriple::sig)
      .def_readonly("a", &ParameterTriple::a)
      .def_readonly("s0", &ParameterTriple::s0)
      .def_readonly("pi0", &ParameterTriple::pi0)
      .def_property_readonly("n", &ParameterTriple::n)
      .def("to_json", [](const ParameterTriple& t) { return triple_to_json(t); })
      .def_static("from_json", [](const std::string& s) { return triple_from_json(s); });

  m.def("generate",
        [](SystemKind kind, int n, int m1, int m2, std::uint64_t seed) {
          return generate(kind, n, {m1, m2}, seed);
        },
        py::arg("kind"), py::arg("n"), py::arg("m1"), py::arg("m2"), py::arg("seed"));

  m.def("validate", [](const ParameterTriple& t) {
    const ValidationReport r = validate(t);
    py::dict checks;
    for (const auto& c : r.checks) checks[py::str(c.name)] = py::make_tuple(c.value, c.threshold, c.pass);
    py::dict out;
    out["checks"] = checks;
    out["admissible"] = r.admissible;
    out["strongly_admissible"] = r.strongly_admissible;
    return out;
  });

  py::class_<GbdtSequence>(m, "GbdtSequence")
      .def_static("build", &GbdtSequence::build, py::arg("triple"), py::arg("horizon") = kDefaultHorizon,
                  py::arg("tol") = kDefaultTol)
      .def_property_readonly("horizon", &GbdtSequence::horizon)
      .def("pi", &GbdtSequence::pi)
      .def("s", &GbdtSequence::s)
      .def("r", &GbdtSequence::r)
      .def("c", &GbdtSequence::c)
      .def("q_inverse", &GbdtSequence::q_inverse)
      .def_property_readonly("identity_residuals", &GbdtSequence::identity_residuals);

  py::class_<LimitPair>(m, "LimitPair")
      .def_readonly("kappa_r", &LimitPair::kappa_r)
      .def_readonly("kappa_q", &LimitPair::kappa_q)
      .def_readonly("iterations", &LimitPair::iterations)
      .def_readonly("converged", &LimitPair::converged);
  m.def("limits", py::overload_cast<const ParameterTriple&, double, int>(&limits), py::arg("triple"),
        py::arg("tol"), py::arg("k_max"));

  m.def("transfer_eval", &transfer_eval, py::arg("seq"), py::arg("k"), py::arg("lam"));
  m.def("transfer_at", &transfer_at, py::arg("seq"), py::arg("k"), py::arg("z"));
  m.def("fundamental_direct", &fundamental_direct, py::arg("seq"), py::arg("k"), py::arg("z"));
  m.def("fundamental_closed", &fundamental_closed, py::arg("seq"), py::arg("k"), py::arg("z"));

  m.def("weyl_value", &weyl_value, py::arg("seq"), py::arg("z"));
  m.def("reflection_closed", &reflection_closed, py::arg("triple"), py::arg("z"),
        py::arg("rule") = SkewRule::Corrected);
  m.def("reflection_oracle",
        [](const GbdtSequence& seq, Complex z, int max_k, double tol) {
          return reflection_oracle(seq, z, max_k, tol).value;
        },
        py::arg("seq"), py::arg("z"), py::arg("max_k"), py::arg("tol"));
  m.def("weyl_partial_sums",
        [](const GbdtSequence& seq, Complex z, int max_k) {
          const WeylSumResult r = weyl_sum_check(seq, z, max_k);
          return py::make_tuple(r.partial_sums, r.tail_ratio, r.nondecreasing);
        },
        py::arg("seq"), py::arg("z"), py::arg("max_k"));
  m.def("certify_theorems",
        [](const ParameterTriple& t, const std::vector<Complex>& samples, double tol) {
          return equality_to_dict(certify_theorems(t, samples, tol));
        },
        py::arg("triple"), py::arg("samples"), py::arg("tol"));

  m.def("verify",
        [](const ParameterTriple& t, int kmax, double tol) { return run_verification(t, {kmax, tol}).to_json(); },
        py::arg("triple"), py::arg("kmax") = kDefaultHorizon, py::arg("tol") = 1e-7,
        "Runs the invariant suite and returns the report as JSON text.");
}
