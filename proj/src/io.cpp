// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#include "conelat/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace conelat::io {

namespace {

const json& require_field(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string(where) + ": missing field '" + key + "'");
  }
  return *it;
}

double number_field(const json& j, const char* key, const char* where) {
  const json& f = require_field(j, key, where);
  if (!f.is_number()) throw SchemaError(std::string(where) + ": '" + key + "' must be a number");
  return f.get<double>();
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json to_json(const Vector<double>& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

Vector<double> vector_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) {
    throw SchemaError(std::string(what) + ": expected a nonempty array of numbers");
  }
  Vector<double> v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const json& e : j) {
    if (!e.is_number()) throw SchemaError(std::string(what) + ": entries must be numbers");
    v[i++] = e.get<double>();
  }
  if (!v.allFinite()) throw SchemaError(std::string(what) + ": entries must be finite");
  return v;
}

json to_json(const Cone<double>& k) {
  using Kind = Cone<double>::Kind;
  json j;
  switch (k.kind()) {
    case Kind::Orthant:
      j["type"] = "orthant";
      j["dim"] = k.dim();
      break;
    case Kind::Lorentz:
      j["type"] = "lorentz";
      j["dim"] = k.dim();
      break;
    case Kind::RotatedOrthant: {
      j["type"] = "rotated_orthant";
      json rows = json::array();
      for (Index r = 0; r < k.rotation().rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < k.rotation().cols(); ++c) row.push_back(k.rotation()(r, c));
        rows.push_back(std::move(row));
      }
      j["q"] = std::move(rows);
      break;
    }
    case Kind::Product: {
      j["type"] = "product";
      json parts = json::array();
      for (const Cone<double>& p : k.parts()) parts.push_back(to_json(p));
      j["parts"] = std::move(parts);
      break;
    }
  }
  return j;
}

Cone<double> cone_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("cone: expected an object");
  const json& type = require_field(j, "type", "cone");
  if (!type.is_string()) throw SchemaError("cone: 'type' must be a string");
  const std::string t = type.get<std::string>();
  try {
    if (t == "orthant") {
      return Cone<double>::orthant(static_cast<Index>(number_field(j, "dim", "cone")));
    }
    if (t == "lorentz") {
      return Cone<double>::lorentz(static_cast<Index>(number_field(j, "dim", "cone")));
    }
    if (t == "rotated_orthant") {
      const json& q = require_field(j, "q", "cone");
      if (!q.is_array() || q.empty()) throw SchemaError("cone: 'q' must be a nonempty matrix");
      const Index n = static_cast<Index>(q.size());
      Matrix<double> m(n, n);
      Index r = 0;
      for (const json& row : q) {
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
          throw SchemaError("cone: 'q' must be square");
        }
        Index c = 0;
        for (const json& e : row) m(r, c++) = e.get<double>();
        ++r;
      }
      return Cone<double>::rotated_orthant(std::move(m));
    }
    if (t == "product") {
      const json& parts = require_field(j, "parts", "cone");
      if (!parts.is_array() || parts.empty()) {
        throw SchemaError("cone: 'parts' must be a nonempty array");
      }
      std::vector<Cone<double>> ps;
      for (const json& p : parts) ps.push_back(cone_from_json(p));
      return Cone<double>::product(std::move(ps));
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("cone: ") + e.what());
  }
  throw SchemaError("cone: unknown type '" + t + "'");
}

json to_json(const Hyperplane<double>& h) {
  return json{{"u", to_json(h.u)}, {"b", h.b}};
}

Hyperplane<double> hyperplane_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("hyperplane: expected an object");
  Hyperplane<double> h;
  h.u = vector_from_json(require_field(j, "u", "hyperplane"), "hyperplane.u");
  h.b = number_field(j, "b", "hyperplane");
  if (h.u.norm() == 0) throw SchemaError("hyperplane: zero normal");
  return h;
}

json to_json(const Polyhedron<double>& p) {
  json hs = json::array();
  for (const Halfspace<double>& h : p.halfspaces) {
    hs.push_back(json{{"u", to_json(h.u)}, {"b", h.b}});
  }
  return json{{"halfspaces", std::move(hs)}, {"sharp", p.sharp}};
}

Polyhedron<double> polyhedron_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("polyhedron: expected an object");
  const json& hs = require_field(j, "halfspaces", "polyhedron");
  if (!hs.is_array() || hs.empty()) {
    throw SchemaError("polyhedron: 'halfspaces' must be a nonempty array");
  }
  Polyhedron<double> p;
  for (const json& h : hs) {
    Halfspace<double> half;
    half.u = vector_from_json(require_field(h, "u", "halfspace"), "halfspace.u");
    half.b = number_field(h, "b", "halfspace");
    if (half.u.norm() == 0) throw SchemaError("halfspace: zero normal");
    p.halfspaces.push_back(std::move(half));
  }
  if (j.contains("sharp")) {
    if (!j["sharp"].is_boolean()) throw SchemaError("polyhedron: 'sharp' must be a boolean");
    p.sharp = j["sharp"].get<bool>();
  }
  return p;
}

json to_json(const Certificate<double>& c) {
  json j;
  j["verdict"] = to_string(c.verdict);
  j["method"] = to_string(c.method);
  j["samples_used"] = c.samples_used;
  if (c.witness) {
    j["witness"] = json::array({to_json(c.witness->first), to_json(c.witness->second)});
  }
  if (c.seed) j["seed"] = *c.seed;
  return j;
}

json to_json(const PolyhedronReport<double>& r) {
  json facets = json::array();
  for (std::size_t i = 0; i < r.per_facet.size(); ++i) {
    facets.push_back(json{{"facet", i}, {"certificate", to_json(r.per_facet[i])}});
  }
  return json{{"per_facet", std::move(facets)},
              {"invariant", to_string(r.invariant)},
              {"isotone", to_string(r.isotone)},
              {"sharp_declared", r.sharp_declared}};
}

json to_json(const Trajectory<double>& t, std::size_t thin) {
  json iters = json::array();
  const std::size_t stride = thin > 0 ? thin : 1;
  for (std::size_t i = 0; i < t.iterates.size(); ++i) {
    if (i % stride == 0 || i + 1 == t.iterates.size()) iters.push_back(to_json(t.iterates[i]));
  }
  json res = json::array();
  for (double r : t.residuals) res.push_back(r);
  return json{{"iterates", std::move(iters)},
              {"residuals", std::move(res)},
              {"converged", t.converged},
              {"order_monotone_prefix", t.order_monotone_prefix}};
}

ProblemFile problem_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("problem: expected a JSON object");
  ProblemFile pf(cone_from_json(require_field(j, "cone", "problem")));
  const Index dim = pf.cone.dim();

  if (j.contains("polyhedron")) {
    pf.polyhedron = polyhedron_from_json(j["polyhedron"]);
    for (const Halfspace<double>& h : pf.polyhedron->halfspaces) {
      require_dim(dim, h.u.size(), "problem.polyhedron");
    }
  }
  if (j.contains("hyperplane")) {
    pf.hyperplane = hyperplane_from_json(j["hyperplane"]);
    require_dim(dim, pf.hyperplane->u.size(), "problem.hyperplane");
  }
  if (j.contains("points")) {
    const json& pts = j["points"];
    if (!pts.is_object()) throw SchemaError("problem: 'points' must be an object");
    for (auto it = pts.begin(); it != pts.end(); ++it) {
      Vector<double> v = vector_from_json(it.value(), "point");
      require_dim(dim, v.size(), "problem.points");
      pf.points.emplace(it.key(), std::move(v));
    }
  }
  if (j.contains("vi")) {
    const json& v = j["vi"];
    if (!v.is_object()) throw SchemaError("problem: 'vi' must be an object");
    VISpec spec;
    if (v.contains("domain")) spec.domain = v["domain"].get<std::string>();
    if (spec.domain != "cone" && spec.domain != "polyhedron") {
      throw SchemaError("vi: 'domain' must be \"cone\" or \"polyhedron\"");
    }
    if (v.contains("mode")) spec.mode = v["mode"].get<std::string>();
    if (spec.mode != "vi" && spec.mode != "ncp") {
      throw SchemaError("vi: 'mode' must be \"vi\" or \"ncp\"");
    }
    const json& lin = require_field(v, "linear", "vi");
    if (!lin.is_array() || lin.empty()) throw SchemaError("vi: 'linear' must be a matrix");
    const Index rows = static_cast<Index>(lin.size());
    Index cols = -1;
    for (const json& row : lin) {
      if (!row.is_array()) throw SchemaError("vi: 'linear' rows must be arrays");
      if (cols < 0) cols = static_cast<Index>(row.size());
      if (static_cast<Index>(row.size()) != cols) {
        throw SchemaError("vi: 'linear' rows must have equal length");
      }
    }
    spec.linear.resize(rows, cols);
    Index r = 0;
    for (const json& row : lin) {
      Index c = 0;
      for (const json& e : row) spec.linear(r, c++) = e.get<double>();
      ++r;
    }
    spec.offset = vector_from_json(require_field(v, "offset", "vi"), "vi.offset");
    spec.x0 = vector_from_json(require_field(v, "x0", "vi"), "vi.x0");
    spec.step = number_field(v, "step", "vi");
    if (v.contains("tol")) spec.tol = number_field(v, "tol", "vi");
    if (v.contains("max_iter")) spec.max_iter = v["max_iter"].get<std::size_t>();
    require_dim(dim, spec.x0.size(), "problem.vi.x0");
    require_dim(dim, spec.offset.size(), "problem.vi.offset");
    require_dim(dim, spec.linear.rows(), "problem.vi.linear");
    require_dim(dim, spec.linear.cols(), "problem.vi.linear");
    pf.vi = std::move(spec);
  }
  if (j.contains("seed")) pf.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tol")) pf.tol = number_field(j, "tol", "problem");
  return pf;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open problem file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("JSON parse error: ") + e.what());
  }
  return problem_from_json(j);
}

}  // namespace conelat::io
