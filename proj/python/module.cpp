#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tlsf/cli.hpp"
#include "tlsf/emit.hpp"
#include "tlsf/lasso.hpp"
#include "tlsf/ltl.hpp"
#include "tlsf/machine.hpp"
#include "tlsf/parser.hpp"
#include "tlsf/reduce.hpp"
#include "tlsf/semantics.hpp"

namespace py = pybind11;
using namespace tlsf;

namespace {

// Formulas are immutable shared trees; the wrapper keeps Python's view of
// them a plain value type.
struct PyFormula {
  Formula f;
};

std::vector<PyFormula> wrap_all(const std::vector<Formula>& fs) {
  std::vector<PyFormula> out;
  for (const auto& f : fs) out.push_back({f});
  return out;
}

std::vector<Formula> unwrap_all(const std::vector<PyFormula>& fs) {
  std::vector<Formula> out;
  for (const auto& f : fs) out.push_back(f.f);
  return out;
}

Semantics semantics_from(const std::string& s) {
  for (auto v : {Semantics::Mealy, Semantics::Moore, Semantics::MealyStrict,
                 Semantics::MooreStrict}) {
    if (s == to_string(v)) return v;
  }
  throw py::value_error("unknown semantics '" + s + "'");
}

Target target_from(const std::string& s) {
  if (s == "Mealy") return Target::Mealy;
  if (s == "Moore") return Target::Moore;
  throw py::value_error("unknown target '" + s + "'");
}

template <class Fn>
auto deep(Fn&& fn) {
  decltype(fn()) out{};
  run_with_large_stack([&] { out = fn(); });
  return out;
}

Letter to_letter(const py::iterable& items) {
  Letter l;
  for (auto item : items) l.insert(py::cast<std::string>(item));
  return l;
}

LassoWord to_lasso(const std::vector<py::iterable>& prefix, const std::vector<py::iterable>& loop) {
  LassoWord w;
  for (const auto& l : prefix) w.prefix.push_back(to_letter(l));
  for (const auto& l : loop) w.loop.push_back(to_letter(l));
  return w;
}

}  // namespace

PYBIND11_MODULE(_tlsf, m) {
  m.doc() = "TLSF parsing, elaboration, interpretation and LTL rewriting";

  // Kept alive by the module attribute for the life of the interpreter.
  static PyObject* tlsf_error = py::exception<Error>(m, "TlsfError").ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(tlsf_error)(e.what());
      exc.attr("kind") = to_string(e.kind());
      exc.attr("line") = e.pos().line;
      exc.attr("column") = e.pos().column;
      PyErr_SetObject(tlsf_error, exc.ptr());
    }
  });

  py::class_<PyFormula>(m, "Formula")
      .def("__str__", [](const PyFormula& p) { return print_formula(p.f); })
      .def("__repr__", [](const PyFormula& p) { return "Formula(" + quote(print_formula(p.f)) + ")"; })
      .def("__eq__", [](const PyFormula& a, const PyFormula& b) { return structural_eq(a.f, b.f); })
      .def("__hash__", [](const PyFormula& p) { return py::hash(py::str(print_formula(p.f))); })
      .def(
          "to_string",
          [](const PyFormula& p, const std::string& profile) {
            return print_formula(p.f, LtlProfile::named(profile));
          },
          py::arg("profile") = "tlsf")
      .def("to_basic", [](const PyFormula& p) { return print_basic_formula(p.f); })
      .def(
          "transform",
          [](const PyFormula& p, const std::string& name) {
            return PyFormula{deep([&] { return apply_transform(name, p.f); })};
          },
          py::arg("name"))
      .def_property_readonly("atoms", [](const PyFormula& p) { return atoms(*p.f); })
      .def_property_readonly("size", [](const PyFormula& p) { return formula_size(*p.f); });

  py::class_<BasicSpec>(m, "BasicSpec")
      .def_property(
          "title", [](const BasicSpec& b) { return b.info.title; },
          [](BasicSpec& b, std::string v) { b.info.title = std::move(v); })
      .def_property(
          "description", [](const BasicSpec& b) { return b.info.description; },
          [](BasicSpec& b, std::string v) { b.info.description = std::move(v); })
      .def_property(
          "semantics", [](const BasicSpec& b) { return std::string(to_string(b.info.semantics)); },
          [](BasicSpec& b, const std::string& v) { b.info.semantics = semantics_from(v); })
      .def_property(
          "target", [](const BasicSpec& b) { return std::string(to_string(b.info.target)); },
          [](BasicSpec& b, const std::string& v) { b.info.target = target_from(v); })
      .def_property(
          "tags", [](const BasicSpec& b) { return b.info.tags; },
          [](BasicSpec& b, std::vector<std::string> v) { b.info.tags = std::move(v); })
      .def_readwrite("inputs", &BasicSpec::inputs)
      .def_readwrite("outputs", &BasicSpec::outputs)
      .def_property(
          "assumptions", [](const BasicSpec& b) { return wrap_all(b.assumptions); },
          [](BasicSpec& b, const std::vector<PyFormula>& v) { b.assumptions = unwrap_all(v); })
      .def_property(
          "invariants", [](const BasicSpec& b) { return wrap_all(b.invariants); },
          [](BasicSpec& b, const std::vector<PyFormula>& v) { b.invariants = unwrap_all(v); })
      .def_property(
          "guarantees", [](const BasicSpec& b) { return wrap_all(b.guarantees); },
          [](BasicSpec& b, const std::vector<PyFormula>& v) { b.guarantees = unwrap_all(v); })
      .def(
          "convert_target",
          [](const BasicSpec& b, const std::string& to) { return convert_target(b, target_from(to)); },
          py::arg("to"))
      .def("__str__", [](const BasicSpec& b) { return print_basic(b); });

  m.def(
      "elaborate",
      [](const std::string& source, const std::map<std::string, Nat>& params) {
        return elaborate(parse_spec(source), params);
      },
      py::arg("source"), py::arg("params") = std::map<std::string, Nat>{},
      "Parse a full-format specification and reduce it to the basic format.");
  m.def("print_basic", &print_basic, py::arg("spec"));
  m.def(
      "interpret", [](const BasicSpec& b) { return PyFormula{deep([&] { return interpret(b); })}; },
      py::arg("spec"), "The single LTL formula a specification denotes under its semantics.");
  m.def(
      "parse_formula",
      [](const std::string& text, const std::string& profile) {
        return PyFormula{parse_formula(text, LtlProfile::named(profile))};
      },
      py::arg("text"), py::arg("profile") = "tlsf");
  m.def("transforms", &transform_names);
  m.def(
      "eval_lasso",
      [](const PyFormula& f, const std::vector<py::iterable>& prefix,
         const std::vector<py::iterable>& loop, std::size_t position) {
        return eval_lasso(f.f, to_lasso(prefix, loop), position);
      },
      py::arg("formula"), py::arg("prefix"), py::arg("loop"), py::arg("position") = 0,
      "Whether the formula holds at `position` of the word prefix (loop)^omega.");
  m.def(
      "check_machine_mealy",
      [](std::vector<std::string> inputs, std::vector<std::string> outputs, std::size_t states,
         const std::function<std::size_t(std::size_t, std::set<std::string>)>& step,
         const std::function<std::set<std::string>(std::size_t, std::set<std::string>)>& out,
         const PyFormula& f, std::size_t k) -> py::object {
        Machine machine = Machine::mealy(
            std::move(inputs), std::move(outputs), states, 0,
            [&](std::size_t q, const Letter& in) { return step(q, in); },
            [&](std::size_t q, const Letter& in) { return out(q, in); });
        LassoWord cex;
        if (check_machine(machine, f.f, k, &cex)) return py::none();
        return py::make_tuple(cex.prefix, cex.loop);
      },
      py::arg("inputs"), py::arg("outputs"), py::arg("states"), py::arg("step"), py::arg("output"),
      py::arg("formula"), py::arg("k"),
      "Checks a Mealy machine (initial state 0) against a formula on all input lassos up to "
      "size k. Returns None or a counterexample (prefix, loop).");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::vector<const char*> argv = {"tlsf"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        std::istringstream in(stdin_text);
        int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err, in);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "",
      "Runs the command line tool in-process. Returns (exit code, stdout, stderr).");
}
