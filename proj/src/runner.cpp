#include "mdem/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdem/config.hpp"
#include "mdem/delaunay.hpp"
#include "mdem/errors.hpp"
#include "mdem/fem.hpp"
#include "mdem/io.hpp"
#include "mdem/losses.hpp"
#include "mdem/train.hpp"

namespace mdem {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string hex16(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Formulation formulation_of(const std::string& method) {
  if (method == "pinn") return Formulation::pinn;
  if (method == "dem") return Formulation::dem;
  return Formulation::mdem;
}

json loss_json(const LossBreakdown& loss) {
  return json{{"total", loss.total},   {"pi", loss.pi},
              {"mse_r", loss.mse_r},   {"mse_t", loss.mse_t},
              {"mse_u", loss.mse_u},   {"mse_p", loss.mse_p}};
}

void run_fem(const RunConfig& cfg, const Triangulation& tri, const fs::path& dir,
             json& meta) {
  const fem::FemMesh mesh = fem::build_fem_mesh(cfg.domain, tri);
  const fem::FemSolution sol =
      fem::solve_static(mesh, cfg.material, cfg.fem.load_steps, cfg.fem.tol_r);
  const FieldSnapshot snap = fem::nodal_fields(sol);

  io::write_fields_csv((dir / "fields.csv").string(), snap);
  io::write_triangles_csv((dir / "triangles.csv").string(), mesh.elements);
  io::write_vtk((dir / "fields.vtk").string(), snap, mesh.elements);

  std::string log = "load_factor,iteration,residual\n";
  for (const fem::NewtonRecord& rec : sol.log) {
    log += g17(rec.load_factor);
    log += ',';
    log += std::to_string(rec.iteration);
    log += ',';
    log += g17(rec.residual);
    log += '\n';
  }
  io::write_text_atomic((dir / "newton.csv").string(), log);

  meta["points_hash"] = hex16(io::points_hash(snap.X));
  meta["points"] = snap.X.size();
  meta["triangles"] = mesh.elements.size();
  meta["potential"] = sol.potential;
  meta["load_steps"] = cfg.fem.load_steps;
  meta["newton_records"] = sol.log.size();
}

void run_network(const RunConfig& cfg, const DomainSampling& sampling,
                 const Triangulation& tri, const fs::path& dir, json& meta) {
  const Formulation form = formulation_of(cfg.method);
  ProblemDefinition prob =
      assemble_problem(cfg.domain, sampling, tri, cfg.material);
  prob.j_floor = cfg.j_floor;
  prob.penalty_scale = cfg.penalty_scale;

  NetworkParams net = init_network(cfg.widths, cfg.activation, cfg.seed);
  const TrainResult result = train(form, net.shape, cfg.activation,
                                   cfg.transform, prob, cfg.weights,
                                   cfg.schedule, net.theta);
  net.theta = result.theta;

  io::write_history_csv((dir / "history.csv").string(), result.history);
  io::write_checkpoint((dir / "checkpoint.bin").string(), net, cfg.seed);

  const FieldSnapshot snap = snapshot_fields(form, net, cfg.transform, prob);
  io::write_fields_csv((dir / "fields.csv").string(), snap);
  io::write_triangles_csv((dir / "triangles.csv").string(), tri.triangles);
  io::write_vtk((dir / "fields.vtk").string(), snap, tri.triangles);

  meta["points_hash"] = hex16(io::points_hash(snap.X));
  meta["points"] = snap.X.size();
  meta["triangles"] = tri.triangles.size();
  meta["seed"] = cfg.seed;
  meta["widths"] = cfg.widths;
  meta["iters_run"] = result.iters_run;
  meta["lbfgs_fallbacks"] = result.lbfgs_fallbacks;
  meta["stopped_early"] = result.stopped_early;
  meta["final_loss"] = loss_json(result.final_loss);
  meta["traction_mismatch"] = traction_mismatch(net, cfg.transform, prob);
}

struct FieldColumn {
  const char* name;
  double (*get)(const FieldSnapshot&, size_t);
};

const FieldColumn kCompareColumns[] = {
    {"u_mag", [](const FieldSnapshot& s, size_t i) { return norm(s.u[i]); }},
    {"ux", [](const FieldSnapshot& s, size_t i) { return s.u[i].x; }},
    {"uy", [](const FieldSnapshot& s, size_t i) { return s.u[i].y; }},
    {"p11", [](const FieldSnapshot& s, size_t i) { return s.P[i].a11; }},
    {"p12", [](const FieldSnapshot& s, size_t i) { return s.P[i].a12; }},
    {"p21", [](const FieldSnapshot& s, size_t i) { return s.P[i].a21; }},
    {"p22", [](const FieldSnapshot& s, size_t i) { return s.P[i].a22; }},
};

}  // namespace

int run_command(const std::string& config_path, const std::string& out_override,
                std::optional<uint64_t> seed_override,
                const std::string& profile) {
  RunConfig cfg;
  try {
    cfg = load_run_config(config_path, profile);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (seed_override) cfg.seed = *seed_override;

  try {
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    const DomainSampling sampling =
        sample_grid(cfg.domain, cfg.nx, cfg.ny, cfg.rule);
    const Triangulation tri = triangulate(sampling, cfg.domain);

    json meta;
    meta["method"] = cfg.method;
    meta["profile"] = profile.empty() ? "base" : profile;
    meta["nx"] = cfg.nx;
    meta["ny"] = cfg.ny;

    if (cfg.method == "fem")
      run_fem(cfg, tri, dir, meta);
    else
      run_network(cfg, sampling, tri, dir, meta);

    io::write_text_atomic((dir / "meta.json").string(), meta.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  std::cout << "run complete: " << cfg.output_dir << "\n";
  return 0;
}

int compare_command(const std::string& dir_a, const std::string& dir_b,
                    const std::string& report_path) {
  try {
    const FieldSnapshot a = io::read_fields_csv(dir_a + "/fields.csv");
    const FieldSnapshot b = io::read_fields_csv(dir_b + "/fields.csv");
    if (a.X.size() != b.X.size() ||
        io::points_hash(a.X) != io::points_hash(b.X))
      throw PointSetMismatch("runs sample different point sets (" +
                             std::to_string(a.X.size()) + " vs " +
                             std::to_string(b.X.size()) + " points)");

    std::string report = "field,rel_l2,max_abs,max_x,max_y\n";
    std::printf("%-6s  %12s  %12s  location of max\n", "field", "rel_l2",
                "max_abs");
    for (const FieldColumn& col : kCompareColumns) {
      double diff2 = 0.0, ref2 = 0.0, max_abs = 0.0;
      size_t arg_max = 0;
      for (size_t i = 0; i < a.X.size(); ++i) {
        const double d = col.get(a, i) - col.get(b, i);
        const double r = col.get(b, i);
        diff2 += d * d;
        ref2 += r * r;
        if (std::abs(d) > max_abs) {
          max_abs = std::abs(d);
          arg_max = i;
        }
      }
      const double rel_l2 =
          ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
      const Vec2 at = a.X.empty() ? Vec2{} : a.X[arg_max];
      report += std::string(col.name) + "," + g17(rel_l2) + "," + g17(max_abs) +
                "," + g17(at.x) + "," + g17(at.y) + "\n";
      std::printf("%-6s  %12.5e  %12.5e  (%g, %g)\n", col.name, rel_l2, max_abs,
                  at.x, at.y);
    }
    io::write_text_atomic(report_path, report);
    std::cout << "report written: " << report_path << "\n";
  } catch (const std::exception& e) {
    std::cerr << "compare failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

int export_vtk_command(const std::string& run_dir) {
  try {
    const FieldSnapshot snap = io::read_fields_csv(run_dir + "/fields.csv");
    const auto triangles = io::read_triangles_csv(run_dir + "/triangles.csv");
    io::write_vtk(run_dir + "/fields.vtk", snap, triangles);
    std::cout << "wrote " << run_dir << "/fields.vtk\n";
  } catch (const std::exception& e) {
    std::cerr << "export failed: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace mdem
