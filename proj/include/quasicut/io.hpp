// Copyright 2026 The quasicut Authors
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

#pragma once

// JSON and CSV formats for decompositions, circuits, observables, estimator
// results and sweep rows.

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "quasicut/analysis.hpp"
#include "quasicut/circuit.hpp"
#include "quasicut/decomposition.hpp"
#include "quasicut/sampler.hpp"

namespace quasicut {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Malformed or schema-violating input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Json complex_to_json(cd c) { return Json::array({c.real(), c.imag()}); }

inline cd complex_from_json(const Json &j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers are [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline std::string sequence_label(const ChannelSequence &seq) {
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out += ',';
    out += seq[i].label();
  }
  return out;
}

inline ChannelSequence sequence_from_label(const std::string &text) {
  ChannelSequence seq;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      seq.push_back(BasisChannelId::parse(item));
    } catch (const std::invalid_argument &e) {
      throw ParseError(e.what());
    }
  }
  if (seq.empty()) throw ParseError("empty channel label");
  return seq;
}

inline const Json &require(const Json &j, const char *key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline void check_format(const Json &j) {
  const Json &f = require(j, "format");
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion) {
    throw ParseError("unsupported format version");
  }
}

template <typename T>
T get_as(const Json &j, const char *what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Decompositions: {"u": [[re,im] x 4], "terms": [{"c": [re,im], "left": "A01",
// "right": "B01"}], "W": real}. Composed terms list their channels as
// comma-separated labels in application order.

inline Json to_json(const QPDecomposition &d) {
  Json j = Json::object();
  if (d.source) {
    Json u = Json::array();
    for (int a = 0; a < 4; ++a) u.push_back(detail::complex_to_json((*d.source)[a]));
    j["u"] = u;
  }
  Json terms = Json::array();
  for (const auto &t : d.terms) {
    terms.push_back({{"c", detail::complex_to_json(t.coefficient)},
                     {"left", detail::sequence_label(t.left)},
                     {"right", detail::sequence_label(t.right)}});
  }
  j["terms"] = terms;
  j["W"] = d.weight;
  return j;
}

inline QPDecomposition decomposition_from_json(const Json &j) {
  QPDecomposition d;
  if (j.contains("u")) {
    const Json &u = j.at("u");
    if (!u.is_array() || u.size() != 4) throw ParseError("'u' must hold four complex numbers");
    PauliCoeffs pc;
    for (int a = 0; a < 4; ++a) pc[a] = detail::complex_from_json(u[a]);
    d.source = pc;
  }
  const Json &terms = detail::require(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  for (const Json &t : terms) {
    d.terms.push_back(QPTerm{detail::complex_from_json(detail::require(t, "c")),
                             detail::sequence_from_label(detail::get_as<std::string>(detail::require(t, "left"), "left")),
                             detail::sequence_from_label(detail::get_as<std::string>(detail::require(t, "right"), "right"))});
  }
  d.weight = j.contains("W") ? detail::get_as<double>(j.at("W"), "W") : d.sum_abs_coefficients();
  return d;
}

// ---------------------------------------------------------------------------
// Circuits: {"format": 1, "qubits": n, "gates": [...]} with gate objects
//   {"type": "single", "q": 0, "axis": [x, y, z], "theta": t}
//   {"type": "canonical", "qs": [a, b], "theta": [t1, t2, t3], "cut": true}
//   {"type": "raw1q", "q": 2, "matrix": [[m00, m01], [m10, m11]]}
// Matrix entries are numbers or [re, im] pairs. Structural problems raise
// ParseError; physically invalid gates raise the Circuit validation errors.

inline Circuit circuit_from_json(const Json &j) {
  using detail::get_as;
  using detail::require;
  detail::check_format(j);
  Circuit c(get_as<int>(require(j, "qubits"), "qubits"));
  const Json &gates = require(j, "gates");
  if (!gates.is_array()) throw ParseError("'gates' must be an array");
  for (const Json &g : gates) {
    const std::string type = get_as<std::string>(require(g, "type"), "type");
    if (type == "single") {
      const auto axis = get_as<std::vector<double>>(require(g, "axis"), "axis");
      if (axis.size() != 3) throw ParseError("'axis' needs three components");
      c.add(SingleGate{get_as<int>(require(g, "q"), "q"), Vector3(axis[0], axis[1], axis[2]),
                       get_as<double>(require(g, "theta"), "theta")});
    } else if (type == "canonical") {
      const auto qs = get_as<std::vector<int>>(require(g, "qs"), "qs");
      const auto th = get_as<std::vector<double>>(require(g, "theta"), "theta");
      if (qs.size() != 2 || th.size() != 3) throw ParseError("canonical gates need 2 qubits and 3 angles");
      const bool cut = g.contains("cut") ? get_as<bool>(g.at("cut"), "cut") : false;
      c.add(CanonicalGate{qs[0], qs[1], ThetaVector{th[0], th[1], th[2]}, cut});
    } else if (type == "raw1q") {
      const Json &m = require(g, "matrix");
      if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
          m[1].size() != 2) {
        throw ParseError("'matrix' must be 2x2");
      }
      Matrix2 u;
      for (int r = 0; r < 2; ++r) {
        for (int k = 0; k < 2; ++k) u(r, k) = detail::complex_from_json(m[r][k]);
      }
      c.add(Raw1qGate{get_as<int>(require(g, "q"), "q"), u});
    } else {
      throw ParseError("unknown gate type '" + type + "'");
    }
  }
  return c;
}

inline Json to_json(const Circuit &c) {
  Json gates = Json::array();
  for (const auto &g : c.gates()) {
    if (const auto *s = std::get_if<SingleGate>(&g)) {
      gates.push_back({{"type", "single"},
                       {"q", s->qubit},
                       {"axis", {s->axis[0], s->axis[1], s->axis[2]}},
                       {"theta", s->angle}});
    } else if (const auto *cg = std::get_if<CanonicalGate>(&g)) {
      gates.push_back({{"type", "canonical"},
                       {"qs", {cg->q0, cg->q1}},
                       {"theta", {cg->theta[0], cg->theta[1], cg->theta[2]}},
                       {"cut", cg->cut}});
    } else {
      const auto &r = std::get<Raw1qGate>(g);
      Json m = Json::array();
      for (int row = 0; row < 2; ++row) {
        m.push_back({detail::complex_to_json(r.u(row, 0)), detail::complex_to_json(r.u(row, 1))});
      }
      gates.push_back({{"type", "raw1q"}, {"q", r.qubit}, {"matrix", m}});
    }
  }
  return {{"format", kFormatVersion}, {"qubits", c.num_qubits()}, {"gates", gates}};
}

// Observables: {"format": 1, "terms": [{"coeff": 1.0, "pauli": "ZZI"}]}.

inline Observable observable_from_json(const Json &j) {
  using detail::get_as;
  using detail::require;
  detail::check_format(j);
  const Json &terms = require(j, "terms");
  if (!terms.is_array()) throw ParseError("'terms' must be an array");
  std::vector<PauliTerm> out;
  for (const Json &t : terms) {
    out.push_back(PauliTerm{get_as<double>(require(t, "coeff"), "coeff"),
                            get_as<std::string>(require(t, "pauli"), "pauli")});
  }
  try {
    return Observable(std::move(out));
  } catch (const std::invalid_argument &e) {
    throw ParseError(e.what());
  }
}

inline Json to_json(const Observable &o) {
  Json terms = Json::array();
  for (const auto &t : o.terms()) terms.push_back({{"coeff", t.coeff}, {"pauli", t.pauli}});
  return {{"format", kFormatVersion}, {"terms", terms}};
}

inline Json to_json(const EstimatorResult &r) {
  return {{"mean", r.mean},       {"std_error", r.std_error}, {"shots", r.shots_used},
          {"W_total", r.w_total}, {"o_max", r.o_max},         {"seed", r.seed}};
}

// Sweep rows: CSV with header theta1,theta2,theta3,W,legacy,G, or a JSON
// array of row objects with the same keys.

inline constexpr const char *kSweepCsvHeader = "theta1,theta2,theta3,W,legacy,G";

inline std::string to_csv_line(const SweepRow &r) {
  using detail::format_double;
  return format_double(r.theta[0]) + ',' + format_double(r.theta[1]) + ',' + format_double(r.theta[2]) + ',' +
         format_double(r.w) + ',' + format_double(r.legacy) + ',' + format_double(r.g);
}

inline std::string to_csv(const std::vector<SweepRow> &rows) {
  std::string out = std::string(kSweepCsvHeader) + '\n';
  for (const auto &r : rows) out += to_csv_line(r) + '\n';
  return out;
}

inline Json to_json(const SweepRow &r) {
  return {{"theta1", r.theta[0]}, {"theta2", r.theta[1]}, {"theta3", r.theta[2]},
          {"W", r.w},             {"legacy", r.legacy},   {"G", r.g}};
}

inline Json to_json(const std::vector<SweepRow> &rows) {
  Json arr = Json::array();
  for (const auto &r : rows) arr.push_back(to_json(r));
  return arr;
}

}  // namespace quasicut
