// conelat - lattice operations induced by self-dual cones
// Licensed under the Apache License, Version 2.0
//
// Command-line front end: project, meetjoin, certify, falsify, props, vi.
// Exit codes: 0 pass, 1 refuted, 2 schema error, 3 dimension mismatch,
// 4 non-convergence.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "conelat/certify.hpp"
#include "conelat/cone.hpp"
#include "conelat/io.hpp"
#include "conelat/lattice.hpp"
#include "conelat/projection.hpp"
#include "conelat/projection_identities.hpp"
#include "conelat/props.hpp"
#include "conelat/vi.hpp"

namespace {

using conelat::Certificate;
using conelat::Cone;
using conelat::Vector;
using conelat::Verdict;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitSchema = 2;
constexpr int kExitDimension = 3;
constexpr int kExitNoConvergence = 4;

std::string fmt_vec(const Vector<double>& v) {
  std::string s = "(";
  for (conelat::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += conelat::io::format_real(v[i]);
  }
  return s + ")";
}

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

const Vector<double>& named_point(const conelat::io::ProblemFile& pf, const std::string& name) {
  auto it = pf.points.find(name);
  if (it == pf.points.end()) {
    throw conelat::io::SchemaError("problem file has no point named '" + name + "'");
  }
  return it->second;
}

int verdict_exit(Verdict v) { return v == Verdict::Refuted ? kExitRefuted : kExitOk; }

int run_project(const conelat::io::ProblemFile& pf, const std::string& point_name,
                std::string target, const std::string& json_path) {
  const Vector<double>& x = named_point(pf, point_name);
  if (target == "auto") {
    target = pf.polyhedron ? "polyhedron" : (pf.hyperplane ? "hyperplane" : "cone");
  }
  Vector<double> p;
  if (target == "cone") {
    p = project(pf.cone, x);
  } else if (target == "polyhedron") {
    if (!pf.polyhedron) throw conelat::io::SchemaError("no polyhedron in problem file");
    p = project(*pf.polyhedron, x, 1e-10);
  } else if (target == "hyperplane") {
    if (!pf.hyperplane) throw conelat::io::SchemaError("no hyperplane in problem file");
    p = project(*pf.hyperplane, x);
  } else {
    throw conelat::io::SchemaError("unknown projection target '" + target + "'");
  }
  std::cout << "projection[" << target << "] of " << point_name << " = " << fmt_vec(p) << "\n";
  emit_json(json{{"command", "project"},
                 {"target", target},
                 {"point", conelat::io::to_json(x)},
                 {"projection", conelat::io::to_json(p)}},
            json_path);
  return kExitOk;
}

int run_meetjoin(const conelat::io::ProblemFile& pf, const std::string& xname,
                 const std::string& yname, const std::string& json_path) {
  const Vector<double>& x = named_point(pf, xname);
  const Vector<double>& y = named_point(pf, yname);
  const Vector<double> mt = meet(pf.cone, x, y);
  const Vector<double> jn = join(pf.cone, x, y);
  const bool cmp = comparable(pf.cone, x, y, pf.tol);
  std::cout << "meet = " << fmt_vec(mt) << "\n";
  std::cout << "join = " << fmt_vec(jn) << "\n";
  std::cout << (cmp ? "comparable" : "incomparable") << "\n";
  json out{{"command", "meetjoin"},
           {"meet", conelat::io::to_json(mt)},
           {"join", conelat::io::to_json(jn)},
           {"comparable", cmp}};
  if (!cmp) {
    std::cout << "rectangle vertices: " << fmt_vec(x) << " " << fmt_vec(y) << " " << fmt_vec(mt)
              << " " << fmt_vec(jn) << "\n";
    out["rectangle"] = json::array({conelat::io::to_json(x), conelat::io::to_json(y),
                                    conelat::io::to_json(mt), conelat::io::to_json(jn)});
  }
  emit_json(out, json_path);
  return kExitOk;
}

std::vector<Vector<double>> cone_generators(const Cone<double>& k) {
  using Kind = Cone<double>::Kind;
  std::vector<Vector<double>> gens;
  if (k.kind() == Kind::Orthant) {
    for (conelat::Index i = 0; i < k.dim(); ++i) {
      Vector<double> e = Vector<double>::Zero(k.dim());
      e[i] = 1.0;
      gens.push_back(std::move(e));
    }
  } else if (k.kind() == Kind::RotatedOrthant) {
    for (conelat::Index i = 0; i < k.dim(); ++i) {
      gens.push_back(k.rotation().col(i));
    }
  } else {
    throw conelat::io::SchemaError(
        "generator-pair certification needs a polyhedral cone (orthant or rotated orthant)");
  }
  return gens;
}

int run_certify(const conelat::io::ProblemFile& pf, const std::string& target,
                const std::string& method, std::size_t n, std::uint64_t seed, double tol,
                const std::string& json_path) {
  using Kind = Cone<double>::Kind;
  if (target == "hyperplane") {
    if (!pf.hyperplane) throw conelat::io::SchemaError("no hyperplane in problem file");
    const Vector<double>& u = pf.hyperplane->u;
    Certificate<double> cert;
    if (method == "closed") {
      if (pf.cone.kind() == Kind::Orthant) {
        cert = conelat::hyperplane_isotone_orthant(u, tol);
      } else if (pf.cone.kind() == Kind::Lorentz) {
        cert = conelat::hyperplane_isotone_lorentz(u, tol);
      } else {
        throw conelat::io::SchemaError(
            "closed-form certification needs an orthant or Lorentz cone");
      }
    } else if (method == "bilinear") {
      cert = conelat::hyperplane_isotone_bilinear(cone_generators(pf.cone), u, tol);
    } else if (method == "sampled") {
      cert = conelat::hyperplane_isotone_sampled(pf.cone, u, n, seed, tol);
    } else {
      throw conelat::io::SchemaError("unknown method '" + method + "'");
    }
    std::cout << "hyperplane isotonicity: " << to_string(cert.verdict) << " ("
              << to_string(cert.method) << ")\n";
    if (cert.witness) {
      std::cout << "witness: " << fmt_vec(cert.witness->first) << " "
                << fmt_vec(cert.witness->second) << "\n";
    }
    emit_json(json{{"command", "certify"},
                   {"target", "hyperplane"},
                   {"certificate", conelat::io::to_json(cert)}},
              json_path);
    return verdict_exit(cert.verdict);
  }
  if (target == "polyhedron") {
    if (!pf.polyhedron) throw conelat::io::SchemaError("no polyhedron in problem file");
    conelat::PolyhedronReport<double> report =
        method == "bilinear"
            ? certify_polyhedron_generators(cone_generators(pf.cone), *pf.polyhedron, tol)
            : certify_polyhedron(pf.cone, *pf.polyhedron, tol);
    for (std::size_t i = 0; i < report.per_facet.size(); ++i) {
      std::cout << "facet " << i << ": " << to_string(report.per_facet[i].verdict) << "\n";
    }
    std::cout << "invariant: " << to_string(report.invariant)
              << "  isotone: " << to_string(report.isotone) << "\n";
    emit_json(json{{"command", "certify"},
                   {"target", "polyhedron"},
                   {"report", conelat::io::to_json(report)}},
              json_path);
    return verdict_exit(report.invariant);
  }
  throw conelat::io::SchemaError("unknown certify target '" + target + "'");
}

int run_falsify(const conelat::io::ProblemFile& pf, const std::string& target,
                const std::string& check, std::size_t n, std::uint64_t seed, double tol,
                const std::string& json_path) {
  const Cone<double>& k = pf.cone;
  Certificate<double> cert;

  if (target == "polyhedron") {
    if (!pf.polyhedron) throw conelat::io::SchemaError("no polyhedron in problem file");
    const conelat::Polyhedron<double> p = *pf.polyhedron;
    double scale = 1.0;
    for (const auto& h : p.halfspaces) scale = std::max(scale, std::abs(h.b) / h.u.norm());
    auto is_member = [p, tol](const Vector<double>& x) {
      return conelat::member(p, x, std::max(tol, 1e-7));
    };
    auto sampler = [p, scale, dim = k.dim()](std::mt19937_64& rng) {
      return project(p, conelat::gaussian_point<double>(dim, rng, 2.0 * scale), 1e-10);
    };
    if (check == "invariance") {
      cert = falsify_invariance<double>(k, is_member, sampler, n, seed,
                                        polyhedron_invariance_probes(k, p, seed));
    } else if (check == "isotonicity") {
      auto projector = [p](const Vector<double>& x) { return project(p, x, 1e-10); };
      cert = falsify_isotonicity<double>(k, projector,
                                         conelat::make_ordered_pair_sampler(k, scale), n, seed,
                                         std::max(tol, 1e-7));
    } else {
      throw conelat::io::SchemaError("unknown check '" + check + "'");
    }
  } else if (target == "hyperplane") {
    if (!pf.hyperplane) throw conelat::io::SchemaError("no hyperplane in problem file");
    const conelat::Hyperplane<double> h = *pf.hyperplane;
    if (check == "invariance") {
      auto is_member = [h, tol](const Vector<double>& x) {
        return std::abs(h.u.dot(x) - h.b) / h.u.norm() <= std::max(tol, 1e-7);
      };
      auto sampler = [h, dim = k.dim()](std::mt19937_64& rng) {
        return project(h, conelat::gaussian_point<double>(dim, rng, 2.0));
      };
      conelat::WitnessPairs<double> probes;
      for (auto& [a, b] : conelat::hyperplane_invariance_probes(k, h.u, seed)) {
        // Probes live in H(u,0); shift onto H(u,b).
        const Vector<double> shift = (h.b / h.u.squaredNorm()) * h.u;
        probes.emplace_back(a + shift, b + shift);
      }
      cert = falsify_invariance<double>(k, is_member, sampler, n, seed, probes);
    } else if (check == "isotonicity") {
      auto projector = [h](const Vector<double>& x) { return project(h, x); };
      cert = falsify_isotonicity<double>(k, projector, conelat::make_ordered_pair_sampler(k),
                                         n, seed, std::max(tol, 1e-7));
    } else {
      throw conelat::io::SchemaError("unknown check '" + check + "'");
    }
  } else {
    throw conelat::io::SchemaError("unknown falsify target '" + target + "'");
  }

  std::cout << check << ": " << to_string(cert.verdict) << " (samples "
            << cert.samples_used << ")\n";
  if (cert.witness) {
    std::cout << "witness: " << fmt_vec(cert.witness->first) << " "
              << fmt_vec(cert.witness->second) << "\n";
  }
  emit_json(json{{"command", "falsify"},
                 {"target", target},
                 {"check", check},
                 {"certificate", conelat::io::to_json(cert)}},
            json_path);
  return verdict_exit(cert.verdict);
}

std::vector<int> parse_dims(const std::string& spec) {
  std::vector<int> dims;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const auto dash = tok.find('-');
    if (dash != std::string::npos && dash > 0) {
      const int lo = std::stoi(tok.substr(0, dash));
      const int hi = std::stoi(tok.substr(dash + 1));
      for (int d = lo; d <= hi; ++d) dims.push_back(d);
    } else {
      dims.push_back(std::stoi(tok));
    }
  }
  if (dims.empty()) throw conelat::io::SchemaError("empty --dims specification");
  return dims;
}

int run_props(const std::string& cones_csv, const std::string& dims_spec, std::size_t n,
              std::uint64_t seed, const std::string& json_path) {
  std::vector<std::string> kinds;
  std::stringstream ss(cones_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) kinds.push_back(tok);

  const auto cones = conelat::standard_cones(kinds, parse_dims(dims_spec), seed);
  const auto results = conelat::run_property_suite(cones, n, seed);

  bool all_pass = true;
  json arr = json::array();
  for (const auto& r : results) {
    const char* status = r.informational ? "INFO" : (r.pass ? "PASS" : "FAIL");
    std::cout << status << " " << r.cone << " " << r.name
              << " worst=" << conelat::io::format_real(r.worst)
              << " bound=" << conelat::io::format_real(r.bound) << "\n";
    if (!r.informational && !r.pass) all_pass = false;
    arr.push_back(json{{"cone", r.cone},
                       {"property", r.name},
                       {"worst", r.worst},
                       {"bound", r.bound},
                       {"pass", r.pass},
                       {"informational", r.informational}});
  }
  std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  emit_json(json{{"command", "props"}, {"results", std::move(arr)}, {"all_pass", all_pass}},
            json_path);
  return all_pass ? kExitOk : kExitRefuted;
}

int run_vi(const conelat::io::ProblemFile& pf, const std::string& json_path) {
  if (!pf.vi) throw conelat::io::SchemaError("no 'vi' block in problem file");
  const conelat::io::VISpec& spec = *pf.vi;
  const conelat::AffineMap<double> f{spec.linear, spec.offset};

  conelat::Trajectory<double> traj;
  if (spec.mode == "ncp") {
    traj = ncp_solve<double>(pf.cone, f, spec.x0, spec.step, spec.tol, spec.max_iter);
  } else {
    conelat::VIProblem<double> prob;
    if (spec.domain == "polyhedron") {
      if (!pf.polyhedron) throw conelat::io::SchemaError("vi domain 'polyhedron' needs one");
      prob.domain = *pf.polyhedron;
    } else {
      prob.domain = pf.cone;
    }
    prob.map = f;
    prob.step = spec.step;
    prob.x0 = spec.x0;
    prob.tol = spec.tol;
    prob.max_iter = spec.max_iter;
    traj = solve_vi(prob, pf.cone);
  }

  const Vector<double>& final_pt = traj.iterates.back();
  const double final_res = traj.residuals.empty() ? 0.0 : traj.residuals.back();
  std::cout << "final point = " << fmt_vec(final_pt) << "\n";
  std::cout << "residual = " << conelat::io::format_real(final_res) << "\n";
  std::cout << "iterations = " << traj.residuals.size() << "\n";
  std::cout << "order_monotone_prefix = " << traj.order_monotone_prefix << "\n";
  std::cout << (traj.converged ? "converged" : "not converged") << "\n";
  emit_json(json{{"command", "vi"}, {"trajectory", conelat::io::to_json(traj)}}, json_path);
  if (!traj.converged) {
    std::cerr << "non-convergence; residuals:";
    for (double r : traj.residuals) std::cerr << " " << conelat::io::format_real(r);
    std::cerr << "\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conelat: generalized lattice operations induced by self-dual cones"};
  app.require_subcommand(1);

  std::string in_path, json_path;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  std::size_t n = 1000;
  app.add_option("--in", in_path, "problem file (JSON)");
  app.add_option("--json", json_path, "write full JSON output to this path");
  app.add_option("--seed", seed, "RNG seed (default 42)");
  app.add_option("--tol", tol, "tolerance (default 1e-9)");
  app.add_option("--n", n, "sample count for sampled methods (default 1000)");

  auto* project_cmd = app.add_subcommand("project", "project a named point");
  std::string point_name, target = "auto";
  project_cmd->add_option("--point", point_name, "point name")->required();
  project_cmd->add_option("--target", target, "cone|polyhedron|hyperplane|auto");

  auto* meetjoin_cmd = app.add_subcommand("meetjoin", "meet/join of two named points");
  std::string xname, yname;
  meetjoin_cmd->add_option("-x", xname, "first point name")->required();
  meetjoin_cmd->add_option("-y", yname, "second point name")->required();

  auto* certify_cmd = app.add_subcommand("certify", "certify hyperplane/polyhedron isotonicity");
  std::string certify_target = "hyperplane", method = "closed";
  certify_cmd->add_option("--target", certify_target, "hyperplane|polyhedron");
  certify_cmd->add_option("--method", method, "closed|bilinear|sampled");

  auto* falsify_cmd = app.add_subcommand("falsify", "sampled falsifiers");
  std::string falsify_target = "polyhedron", check = "invariance";
  falsify_cmd->add_option("--target", falsify_target, "polyhedron|hyperplane");
  falsify_cmd->add_option("--check", check, "invariance|isotonicity");

  auto* props_cmd = app.add_subcommand("props", "run the property suite");
  std::string cones_csv = "orthant,lorentz", dims_spec = "2-6";
  std::size_t props_n = 500;
  props_cmd->add_option("--cones", cones_csv, "comma list: orthant,lorentz,rotated,product");
  props_cmd->add_option("--dims", dims_spec, "dimension list/range, e.g. 2-6 or 2,4");
  props_cmd->add_option("--props-n", props_n, "samples per property (default 500)");

  auto* vi_cmd = app.add_subcommand("vi", "run the VI/NCP projection iteration");

  CLI11_PARSE(app, argc, argv);

  try {
    auto need_problem = [&]() {
      if (in_path.empty()) throw conelat::io::SchemaError("--in PATH is required");
      return conelat::io::load_problem(in_path);
    };
    if (project_cmd->parsed()) {
      return run_project(need_problem(), point_name, target, json_path);
    }
    if (meetjoin_cmd->parsed()) {
      return run_meetjoin(need_problem(), xname, yname, json_path);
    }
    if (certify_cmd->parsed()) {
      return run_certify(need_problem(), certify_target, method, n, seed, tol, json_path);
    }
    if (falsify_cmd->parsed()) {
      return run_falsify(need_problem(), falsify_target, check, n, seed, tol, json_path);
    }
    if (props_cmd->parsed()) {
      return run_props(cones_csv, dims_spec, props_n, seed, json_path);
    }
    if (vi_cmd->parsed()) {
      return run_vi(need_problem(), json_path);
    }
  } catch (const conelat::DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return kExitDimension;
  } catch (const conelat::IterationLimit& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const conelat::SuspectedInfeasible& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const conelat::io::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitSchema;
  }
  return kExitSchema;
}
