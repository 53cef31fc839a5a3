// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "matlink/cli.hpp"
#include "matlink/connectivity.hpp"
#include "matlink/errors.hpp"
#include "matlink/extension.hpp"
#include "matlink/intertwine.hpp"
#include "matlink/io.hpp"
#include "matlink/matroid.hpp"
#include "matlink/separations.hpp"
#include "matlink/verify.hpp"

namespace py = pybind11;
using namespace matlink;

namespace {

// Accepts any iterable of labels (list, tuple, set, string generator).
ElementSet to_set(const py::iterable& items) {
  ElementSet out;
  for (const auto& item : items) out.insert(py::cast<std::string>(item));
  return out;
}

py::set from_set(const ElementSet& s) {
  py::set out;
  for (const auto& e : s) out.add(py::str(e));
  return out;
}

py::int_ big(const BigInt& value) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(value.str().c_str(), nullptr, 10));
}

py::dict minor_dict(const MinorSpec& spec) {
  py::dict d;
  d["contract"] = from_set(spec.contract);
  d["delete"] = from_set(spec.remove);
  return d;
}

py::dict advice_dict(const RemovalAdvice& a) {
  py::dict d;
  d["element"] = a.element;
  d["action"] = to_string(a.action);
  d["kappa"] = a.kappa;
  d["witness"] = minor_dict(a.witness);
  return d;
}

std::vector<std::vector<std::string>> rows_of(const RepMatroid& m) {
  std::vector<std::vector<std::string>> rows(m.matrix().rows());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) rows[i].push_back(m.matrix().at(i, j).to_string());
  }
  return rows;
}

RepMatroid from_rows(const std::string& field, const std::vector<std::string>& labels,
                     const std::vector<std::vector<std::string>>& rows) {
  std::string text = "field " + field + "\nlabels";
  for (const auto& l : labels) text += " " + l;
  text += "\nrows " + std::to_string(rows.size()) + "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) text += (j ? " " : "") + row[j];
    text += "\n";
  }
  return parse_matroid(text);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Connectivity, linking and minor operations on represented matroids.";

  static py::exception<Error> error_type(mod, "MatlinkError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::handle type = error_type;
      py::object exc = type(std::string(to_string(e.code())) + ": " + e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<RepMatroid>(mod, "Matroid")
      .def(py::init(&from_rows), py::arg("field"), py::arg("labels"), py::arg("rows"),
           "Build from a field name such as 'gf(3)' and rows of entry strings.")
      .def_static("parse", [](const std::string& text) { return parse_matroid(text); })
      .def_static("read", &read_matroid_file, py::arg("path"))
      .def("serialize", &serialize_matroid)
      .def("__str__", &serialize_matroid)
      .def("__len__", &RepMatroid::size)
      .def_property_readonly("labels", &RepMatroid::labels)
      .def_property_readonly("field", [](const RepMatroid& m) { return m.field()->describe(); })
      .def_property_readonly("rows", &rows_of)
      .def(
          "rank", [](const RepMatroid& m, std::optional<py::iterable> x) {
            return x ? rank_of(m, to_set(*x)) : m.rank();
          },
          py::arg("x") = py::none())
      .def("connectivity", [](const RepMatroid& m, const py::iterable& x) { return lambda(m, to_set(x)); })
      .def(
          "closure",
          [](const RepMatroid& m, const py::iterable& x, bool dual) { return from_set(closure(m, to_set(x), dual)); },
          py::arg("x"), py::arg("dual") = false)
      .def("dual", [](const RepMatroid& m) { return dual(m); })
      .def(
          "minor",
          [](const RepMatroid& m, const py::iterable& c, const py::iterable& d) {
            return minor(m, to_set(c), to_set(d));
          },
          py::arg("contract"), py::arg("delete"))
      .def("same_as", [](const RepMatroid& a, const RepMatroid& b) { return same_matroid(a, b); })
      .def("labeled_minor", [](const RepMatroid& m, const RepMatroid& n) -> py::object {
        const auto spec = is_labeled_minor(m, n);
        return spec ? py::object(minor_dict(*spec)) : py::none();
      });

  mod.def(
      "kappa",
      [](const RepMatroid& m, const py::iterable& s, const py::iterable& t, const std::string& method) {
        if (method == "fast") return kappa_fast(m, to_set(s), to_set(t));
        if (method == "bruteforce") return kappa_bruteforce(m, to_set(s), to_set(t));
        throw py::value_error("method must be 'fast' or 'bruteforce'");
      },
      py::arg("m"), py::arg("s"), py::arg("t"), py::arg("method") = "fast");

  mod.def("classify", [](const RepMatroid& m, const py::iterable& s, const py::iterable& t, const std::string& e) {
    const auto c = classify_element(m, to_set(s), to_set(t), e);
    py::dict d;
    d["element"] = c.element;
    d["deletable"] = c.deletable;
    d["contractible"] = c.contractible;
    d["flexible"] = c.flexible();
    return d;
  });

  mod.def("linking_certificate", [](const RepMatroid& m, const py::iterable& s, const py::iterable& t) {
    const auto cert = linking_certificate(m, to_set(s), to_set(t));
    py::dict d = minor_dict(MinorSpec{cert.contract, cert.remove});
    d["achieved"] = cert.achieved;
    return d;
  });

  mod.def("linked_subsets", [](const RepMatroid& m, const py::iterable& s, const py::iterable& t) {
    const auto [a, b] = linked_subsets(m, to_set(s), to_set(t));
    return py::make_tuple(from_set(a), from_set(b));
  });

  mod.def("min_separation",
          [](const RepMatroid& m, const py::iterable& s, const py::iterable& t, const std::string& e) {
            const auto sep = min_separation_through(m, to_set(s), to_set(t), e);
            return py::make_tuple(from_set(sep.side_a), sep.order_minus_one);
          });

  mod.def(
      "nested_sequence",
      [](const RepMatroid& m, const py::iterable& s, const py::iterable& t, const py::iterable& f) {
        const auto seq = nested_sequence(m, to_set(s), to_set(t), to_set(f));
        py::list sets;
        py::list kinds;
        for (const auto& a : seq.sets) sets.append(from_set(a));
        for (const auto k : seq.kinds) kinds.append(to_string(k));
        py::dict d;
        d["ordering"] = seq.ordering;
        d["sets"] = sets;
        d["kinds"] = kinds;
        d["order"] = seq.order;
        return d;
      },
      py::arg("m"), py::arg("s"), py::arg("t"), py::arg("f"));

  mod.def(
      "extend_guts",
      [](const RepMatroid& m, const py::iterable& x, const std::string& prefix) {
        const auto ext = extend_guts(m, make_separation(m, to_set(x)), prefix);
        return py::make_tuple(ext.extended, ext.x);
      },
      py::arg("m"), py::arg("x"), py::arg("prefix") = "x");

  mod.def(
      "good_extension",
      [](const RepMatroid& m, const py::iterable& s, const py::iterable& t, const std::string& label) {
        const auto [ext, added] = good_extension(m, to_set(s), to_set(t), label);
        return py::make_tuple(ext, added);
      },
      py::arg("m"), py::arg("s"), py::arg("t"), py::arg("label") = "p");

  mod.def(
      "find_removable",
      [](const RepMatroid& m, const py::iterable& s, const py::iterable& t, const RepMatroid& n,
         const std::string& method) -> py::object {
        if (method == "direct") {
          const auto a = find_removable_direct(m, to_set(s), to_set(t), n);
          return a ? py::object(advice_dict(*a)) : py::none();
        }
        if (method != "pigeonhole") throw py::value_error("method must be 'direct' or 'pigeonhole'");
        const auto r = find_removable_pigeonhole(m, to_set(s), to_set(t), n);
        py::dict d;
        d["status"] = to_string(r.status);
        d["advice"] = r.advice ? py::object(advice_dict(*r.advice)) : py::none();
        d["dualized"] = r.dualized;
        return d;
      },
      py::arg("m"), py::arg("s"), py::arg("t"), py::arg("n"), py::arg("method") = "direct");

  mod.def("shrink", [](const RepMatroid& m, const py::iterable& q, const py::iterable& r, const py::iterable& s,
                       const py::iterable& t) {
    const auto res = shrink_intertwine(m, to_set(q), to_set(r), to_set(s), to_set(t));
    py::list log;
    for (const auto& step : res.log) log.append(py::make_tuple(step.element, to_string(step.action)));
    py::dict d;
    d["result"] = res.result;
    d["log"] = log;
    d["k"] = res.k;
    d["l"] = res.l;
    d["remaining"] = res.remaining;
    d["bound"] = big(res.bound);
    return d;
  });

  mod.def("c_minor", [](std::uint64_t q, std::uint64_t n) { return big(c_minor(q, n)); });
  mod.def("c_conn", [](std::uint64_t k, std::uint64_t l) { return big(c_conn(k, l)); });

  mod.def(
      "run_command",
      [](const std::vector<std::string>& args) {
        CommandOutput out;
        {
          py::gil_scoped_release release;
          out = run_command(args);
        }
        return py::make_tuple(out.exit_code, out.out, out.err);
      },
      "Run a CLI command (without the program name); returns (exit_code, stdout, stderr).");

  mod.def("suite_names", &suite_names);
  mod.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, std::size_t jobs, double scale) {
        SuiteOptions opt;
        opt.seed = seed;
        opt.jobs = jobs;
        opt.scale = scale;
        SuiteResult r;
        {
          py::gil_scoped_release release;
          r = run_suite(name, opt);
        }
        py::dict d;
        d["suite"] = r.name;
        d["passed"] = r.passed;
        d["instances"] = r.instances;
        d["violations"] = r.violations;
        d["failures"] = r.failures;
        d["stats"] = r.stats;
        return d;
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("jobs") = 1, py::arg("scale") = 1.0);
}
