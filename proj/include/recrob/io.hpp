// Copyright 2026 The recrob Authors
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

// Instance files (JSON) and front output (CSV).

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "recrob/error.hpp"
#include "recrob/linalg.hpp"
#include "recrob/model.hpp"
#include "recrob/norm.hpp"
#include "recrob/pareto.hpp"
#include "recrob/portfolio.hpp"
#include "recrob/scalarization.hpp"
#include "recrob/types.hpp"

namespace recrob::io {

using json = nlohmann::json;

/// A parsed instance file. Hyperplane files fill `hyperplanes`, all others
/// fill `problem`.
struct Instance {
  bool hyperplane = false;
  UncertainProblem problem;
  std::vector<HyperplaneScenario> hyperplanes;
  std::optional<BlockNorm> norm;

  friend bool operator==(const Instance&, const Instance&) = default;
};

namespace detail {

inline const json& field(const json& obj, const char* key, const std::string& where) {
  require(obj.is_object(), Errc::ParseError, where + " must be an object");
  const auto it = obj.find(key);
  require(it != obj.end(), Errc::ParseError, where + ": missing field '" + key + "'");
  return *it;
}

inline double number(const json& v, const std::string& where) {
  require(v.is_number(), Errc::ParseError, where + ": expected a number");
  const double d = v.get<double>();
  require(std::isfinite(d), Errc::NonFiniteData, where + ": non-finite number");
  return d;
}

inline Vector vector(const json& v, const std::string& where) {
  require(v.is_array(), Errc::ParseError, where + ": expected an array");
  Vector out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Matrix matrix(const json& v, std::size_t cols, const std::string& where) {
  require(v.is_array(), Errc::ParseError, where + ": expected an array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < v.size(); ++i) {
    rows.push_back(vector(v[i], where + "[" + std::to_string(i) + "]"));
    require(rows.back().size() == cols, Errc::DimensionMismatch,
            where + "[" + std::to_string(i) + "] has " + std::to_string(rows.back().size()) +
                " entries, expected " + std::to_string(cols));
  }
  return Matrix::from_rows(rows, cols);
}

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(Vector(m.row(i).begin(), m.row(i).end()));
  return rows;
}

inline BlockNorm parse_norm(const json& v) {
  const json& kind = field(v, "kind", "norm");
  require(kind.is_string(), Errc::ParseError, "norm.kind must be a string");
  const std::string k = kind.get<std::string>();
  if (k == "l1") return BlockNorm::l1();
  if (k == "l2") return BlockNorm::l2();
  if (k == "linf") return BlockNorm::linf();
  const bool gauge = v.contains("gauge") && v["gauge"].get<bool>();
  const json& g = field(v, "generators", "norm");
  require(g.is_array() && !g.empty(), Errc::ParseError, "norm.generators must be a nonempty array");
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < g.size(); ++i)
    gens.push_back(vector(g[i], "norm.generators[" + std::to_string(i) + "]"));
  if (k == "extreme_points") return BlockNorm::from_extreme_points(std::move(gens), gauge);
  if (k == "polar_extreme_points") return BlockNorm::from_polar_extreme_points(std::move(gens), gauge);
  throw Error(Errc::ParseError, "unknown norm kind '" + k + "'");
}

inline json norm_to_json(const BlockNorm& norm) {
  json out{{"kind", norm_kind_name(norm.kind())}};
  if (!norm.builtin()) {
    out["generators"] = norm.generators();
    if (norm.gauge()) out["gauge"] = true;
  }
  return out;
}

inline std::size_t dimension(const json& doc) {
  const json& n = field(doc, "n", "instance");
  require(n.is_number_unsigned() && n.get<std::size_t>() > 0, Errc::ParseError,
          "n must be a positive integer");
  return n.get<std::size_t>();
}

}  // namespace detail

/// Builds an instance from a parsed document. Shapes are checked here;
/// semantic checks (validate) are left to the caller.
inline Instance from_json(const json& doc) {
  Instance inst;
  if (doc.contains("norm")) inst.norm = detail::parse_norm(doc["norm"]);
  const json& sc = detail::field(doc, "scenarios", "instance");
  require(sc.is_array(), Errc::ParseError, "scenarios must be an array");

  if (doc.contains("type")) {
    require(doc["type"] == "hyperplane", Errc::ParseError, "unknown instance type");
    inst.hyperplane = true;
    const std::size_t n = doc.contains("n") ? detail::dimension(doc) : 0;
    for (std::size_t k = 0; k < sc.size(); ++k) {
      const std::string where = "scenarios[" + std::to_string(k) + "]";
      HyperplaneScenario h;
      h.a = detail::vector(detail::field(sc[k], "a", where), where + ".a");
      h.b = detail::number(detail::field(sc[k], "b", where), where + ".b");
      if (sc[k].contains("kind")) {
        const json& kind = sc[k]["kind"];
        require(kind == "hyperplane" || kind == "halfspace", Errc::ParseError,
                where + ".kind must be \"hyperplane\" or \"halfspace\"");
        h.kind = kind == "halfspace" ? HyperplaneKind::Halfspace : HyperplaneKind::Hyperplane;
      }
      require(n == 0 || h.a.size() == n, Errc::DimensionMismatch, where + ".a length differs from n");
      inst.hyperplanes.push_back(std::move(h));
    }
    return inst;
  }

  UncertainProblem& p = inst.problem;
  p.n = detail::dimension(doc);
  p.x_domain = Polyhedron::whole_space(p.n);
  if (doc.contains("x_domain")) {
    const json& x = doc["x_domain"];
    p.x_domain.d_matrix = detail::matrix(detail::field(x, "D", "x_domain"), p.n, "x_domain.D");
    p.x_domain.e_vector = detail::vector(detail::field(x, "e", "x_domain"), "x_domain.e");
  }
  if (doc.contains("rhs_only")) {
    require(doc["rhs_only"].is_boolean(), Errc::ParseError, "rhs_only must be a boolean");
    p.rhs_only = doc["rhs_only"].get<bool>();
  }
  for (std::size_t k = 0; k < sc.size(); ++k) {
    const std::string where = "scenarios[" + std::to_string(k) + "]";
    Scenario s;
    if (sc[k].contains("id")) {
      require(sc[k]["id"].is_string(), Errc::ParseError, where + ".id must be a string");
      s.id = sc[k]["id"].get<std::string>();
    } else {
      s.id = "s" + std::to_string(k + 1);
    }
    s.a_matrix = detail::matrix(detail::field(sc[k], "A", where), p.n, where + ".A");
    s.rhs = detail::vector(detail::field(sc[k], "b", where), where + ".b");
    s.cost = detail::vector(detail::field(sc[k], "c", where), where + ".c");
    p.scenarios.push_back(std::move(s));
  }
  return inst;
}

inline Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  try {
    return from_json(doc);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline Instance read_instance(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

inline json to_json(const Instance& inst) {
  json doc;
  json sc = json::array();
  if (inst.hyperplane) {
    doc["type"] = "hyperplane";
    if (!inst.hyperplanes.empty()) doc["n"] = inst.hyperplanes.front().a.size();
    for (const auto& h : inst.hyperplanes)
      sc.push_back({{"a", h.a},
                    {"b", h.b},
                    {"kind", h.kind == HyperplaneKind::Halfspace ? "halfspace" : "hyperplane"}});
  } else {
    const UncertainProblem& p = inst.problem;
    doc["n"] = p.n;
    doc["x_domain"] = {{"D", detail::to_json(p.x_domain.d_matrix)}, {"e", p.x_domain.e_vector}};
    if (p.rhs_only) doc["rhs_only"] = true;
    for (const auto& s : p.scenarios)
      sc.push_back({{"id", s.id}, {"A", detail::to_json(s.a_matrix)}, {"b", s.rhs}, {"c", s.cost}});
  }
  doc["scenarios"] = std::move(sc);
  if (inst.norm) doc["norm"] = detail::norm_to_json(*inst.norm);
  return doc;
}

inline std::string serialize_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

inline json solution_to_json(const RecoverableSolution& sol, const UncertainProblem& problem) {
  json out{{"x", sol.x}, {"worst_objective", sol.worst_objective}};
  if (sol.radius.is_finite())
    out["radius"] = sol.radius.value();
  else
    out["radius"] = "inf";
  json rec = json::array();
  for (std::size_t k = 0; k < sol.recoveries.size(); ++k)
    rec.push_back({{"id", k < problem.scenarios.size() ? problem.scenarios[k].id : std::to_string(k)},
                   {"y", sol.recoveries[k]}});
  out["recoveries"] = std::move(rec);
  return out;
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_front_csv(std::ostream& out, const std::vector<ParetoPoint>& points) {
  out << "bound,objective,radius\n";
  for (const auto& p : points)
    out << format_number(p.bound) << ',' << format_number(p.objective_value) << ','
        << format_number(p.radius) << '\n';
}

inline void write_portfolio_csv(std::ostream& out, const std::vector<portfolio::PortfolioPoint>& points) {
  out << "bound,objective,radius,iterations,method\n";
  for (const auto& p : points)
    out << format_number(p.point.bound) << ',' << format_number(p.point.objective_value) << ','
        << format_number(p.point.radius) << ',' << p.iterations << ','
        << portfolio::method_name(p.method) << '\n';
}

}  // namespace recrob::io
