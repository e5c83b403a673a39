/*
 * Copyright 2026 The mabd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Python bindings. Structured results cross the boundary as JSON text in the
// same schema the CLI emits; the pure-Python wrapper decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mabd/cli.hpp"

namespace py = pybind11;

namespace {

mabd::DesignInput parse_design(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '{') {
    return mabd::design_from_json(nlohmann::json::parse(text));
  }
  return mabd::parse_design_text(text);
}

std::string wlp_json(const std::string& design, bool oracle, const std::string& pair_rule) {
  const auto d = parse_design(design);
  const auto t = d.treatment_spec();
  const auto b = d.block_scheme();
  nlohmann::json j;
  j["design"] = mabd::design_to_json(d);
  if (oracle) {
    const auto w = mabd::dual_word_enumeration(t, b ? &*b : nullptr, std::nullopt,
                                               mabd::EnumerationLimits::from_env());
    j["wlp"] = mabd::wlp_to_json(w);
    return j.dump();
  }
  const auto w = b ? mabd::compute_blocked_wlp(t, *b) : mabd::compute_wlp(t);
  j["wlp"] = mabd::wlp_to_json(w);
  if (b) {
    const auto c = mabd::clear_counts(t, *b, mabd::parse_pair_clear_rule(pair_rule));
    j["clear"] = {{"c1", c.c1}, {"c2", c.c2}};
  }
  return j.dump();
}

std::string bound_json(int n, int m, int p, int s) {
  auto j = mabd::bound_to_json(n, p, mabd::a21_lower_bound(n, m, p, s));
  j["display"] = mabd::format_one_decimal(mabd::a21_lower_bound(n, m, p, s).raw_bound);
  return j.dump();
}

std::string search_json(int s, int m, int n, int p, const std::vector<std::string>& criteria,
                        const std::string& source, std::optional<long> cap, unsigned threads,
                        const std::string& pair_rule) {
  mabd::SearchSpace sp;
  sp.s = s;
  sp.m = m;
  sp.n = n;
  sp.p = p;
  if (!criteria.empty()) {
    sp.criteria.clear();
    for (const auto& c : criteria) sp.criteria.push_back(mabd::parse_criterion(c));
  }
  if (source == "extension") {
    sp.source = mabd::TreatmentSource::Extension;
    sp.a3_cap = cap;
  } else if (source != "all") {
    throw mabd::Error(mabd::Errc::Parse, "source must be 'all' or 'extension'");
  }
  sp.threads = threads;
  sp.pair_rule = mabd::parse_pair_clear_rule(pair_rule);
  sp.limits = mabd::SearchLimits::from_env();
  return mabd::search_result_to_json(sp, mabd::ma_blocked_search(sp)).dump();
}

std::string verify_json(const std::string& text, bool include_ambiguous) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : mabd::parse_catalog(text)) {
    if (e.ambiguous && !include_ambiguous) continue;
    const auto v = mabd::verify_entry(e);
    nlohmann::json diffs = nlohmann::json::array();
    for (const auto& d : v.diffs) {
      diffs.push_back({{"field", d.field}, {"expected", d.expected}, {"actual", d.actual}});
    }
    out.push_back({{"name", v.name}, {"pass", v.pass()}, {"diffs", diffs}});
  }
  return out.dump();
}

py::tuple run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = mabd::run_cli(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Blocked regular fractional factorial designs: wordlength patterns and search";

  py::register_exception<mabd::Error>(m, "MabdError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const nlohmann::json::exception& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("wlp_json", &wlp_json, py::arg("design"), py::arg("oracle") = false,
        py::arg("pair_rule") = "any", py::call_guard<py::gil_scoped_release>());
  m.def("bound_json", &bound_json, py::arg("n"), py::arg("m"), py::arg("p"), py::arg("s") = 2);
  m.def("search_json", &search_json, py::arg("s"), py::arg("m"), py::arg("n"), py::arg("p"),
        py::arg("criteria") = std::vector<std::string>{}, py::arg("source") = "all",
        py::arg("cap") = std::nullopt, py::arg("threads") = 1u, py::arg("pair_rule") = "any",
        py::call_guard<py::gil_scoped_release>());
  m.def("verify_json", &verify_json, py::arg("text"), py::arg("include_ambiguous") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("bundled_catalog", [] { return std::string(mabd::bundled_catalog_text()); });
  m.def("run_cli", &run, py::arg("args"));
}
