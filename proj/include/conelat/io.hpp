// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "conelat/certificate.hpp"
#include "conelat/certify.hpp"
#include "conelat/cone.hpp"
#include "conelat/projection.hpp"
#include "conelat/types.hpp"
#include "conelat/vi.hpp"

namespace conelat::io {

using json = nlohmann::json;

/// Malformed or incomplete problem input (CLI exit code 2).
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

json to_json(const Vector<double>& v);
Vector<double> vector_from_json(const json& j, const char* what);

json to_json(const Cone<double>& k);
Cone<double> cone_from_json(const json& j);

json to_json(const Hyperplane<double>& h);
Hyperplane<double> hyperplane_from_json(const json& j);

json to_json(const Polyhedron<double>& p);
Polyhedron<double> polyhedron_from_json(const json& j);

json to_json(const Certificate<double>& c);
json to_json(const PolyhedronReport<double>& r);
json to_json(const Trajectory<double>& t, std::size_t thin = 0);

/// Parameters of the VI / NCP demonstration block in a problem file.
struct VISpec {
  std::string domain = "cone";  // "cone" or "polyhedron"
  std::string mode = "vi";      // "vi" or "ncp"
  Matrix<double> linear;        // F(x) = linear * x + offset
  Vector<double> offset;
  double step = 0.5;
  Vector<double> x0;
  double tol = 1e-8;
  std::size_t max_iter = 1000;
};

struct ProblemFile {
  Cone<double> cone;
  std::optional<Polyhedron<double>> polyhedron;
  std::optional<Hyperplane<double>> hyperplane;
  std::map<std::string, Vector<double>> points;
  std::optional<VISpec> vi;
  std::uint64_t seed = 42;
  double tol = 1e-9;

  explicit ProblemFile(Cone<double> k) : cone(std::move(k)) {}
};

ProblemFile problem_from_json(const json& j);
ProblemFile load_problem(const std::string& path);

/// Format a double with 17 significant digits (round-trip safe).
std::string format_real(double v);

}  // namespace conelat::io
