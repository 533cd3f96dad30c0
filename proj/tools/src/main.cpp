// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxfeec/selftest.hpp"
#include "maxfeec/system.hpp"
#include "output.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace maxfeec;
using namespace maxfeec::tools;

namespace
{

// Exit codes.
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct RunOptions
{
  std::string problem = "example1";
  std::string scheme = "cn";
  int order = 1;
  int n = 8;
  std::string mesh_file;
  double dt = 0.01;
  std::optional<double> t_min, t_max;
  std::string out = ".";
  bool vtk = false;
};

const ProblemSpec &lookup_problem(const std::string &name)
{
  // Accept "example3" or a bare "3".
  if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit))
  {
    return get_problem(std::stoi(name));
  }
  return get_problem(name);
}

std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  MAXFEEC_VERIFY(in.good(), "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Mesh make_mesh(const RunOptions &o, int dim)
{
  if (!o.mesh_file.empty())
  {
    Mesh mesh = read_mesh(read_file(o.mesh_file));
    MAXFEEC_VERIFY(mesh.dim() == dim, "mesh dimension does not match the problem");
    return mesh;
  }
  MAXFEEC_VERIFY(o.n >= 1, "--n must be positive");
  return dim == 2 ? generate_unit_square(o.n) : generate_unit_cube(o.n);
}

SchemeConfig make_config(const RunOptions &o, const ProblemSpec &problem)
{
  MAXFEEC_VERIFY(o.order == 1 || o.order == 2, "--order must be 1 or 2");
  SchemeConfig c;
  c.scheme = parse_scheme(o.scheme);
  c.dt = o.dt;
  c.t_min = o.t_min.value_or(problem.t_min);
  c.t_max = o.t_max.value_or(problem.t_max);
  c.r = o.order;
  c.num_steps();
  return c;
}

fs::path prepare_out(const std::string &dir)
{
  std::error_code ec;
  fs::create_directories(dir, ec);
  MAXFEEC_VERIFY(!ec && fs::is_directory(dir), "cannot create output directory " + dir);
  return fs::path(dir);
}

void write_json(const fs::path &file, const json &j)
{
  std::ofstream out(file, std::ios::binary);
  MAXFEEC_VERIFY(out.good(), "cannot write " + file.string());
  out << j.dump(2) << "\n";
}

json errors_json(const ErrorReport &e, const std::string &scheme)
{
  return {{"e_p", e.e_p}, {"e_E", e.e_E},   {"e_H", e.e_H}, {"total", e.total()},
          {"h", e.h},     {"dt", e.dt},     {"r", e.r},     {"scheme", scheme}};
}

std::string timestamp()
{
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int cmd_run(const RunOptions &o)
{
  const ProblemSpec &problem = lookup_problem(o.problem);
  const SchemeConfig config = make_config(o, problem);
  const Mesh mesh = make_mesh(o, problem.dim);
  const fs::path out = prepare_out(o.out);

  const SimulationResult result = run_simulation(mesh, problem, config);
  write_energy_csv(out / "energy.csv", result.trace);
  write_json(out / "errors.json", errors_json(result.errors, result.trace.scheme));

  json stats = {{"dim", mesh.dim()}, {"vertices", mesh.num_vertices()}, {"cells", mesh.num_cells()},
                {"h", mesh.max_edge_length()}};
  json dofs;
  for (int k = 0; k <= mesh.dim(); k++)
  {
    stats["simplices_" + std::to_string(k)] = mesh.num_simplices(k);
  }
  for (int k = 0; k <= 2; k++)
  {
    const DofMap d = build_dof_map(mesh, k, config.r);
    dofs[std::to_string(k) + "-forms"] = {{"total", d.size()},
                                         {"boundary", static_cast<int>(d.boundary_dofs().size())}};
  }
  const json meta = {{"problem", problem.name},
                     {"problem_id", problem.id},
                     {"scheme", scheme_name(config.scheme)},
                     {"order", config.r},
                     {"dt", config.dt},
                     {"t_min", config.t_min},
                     {"t_max", config.t_max},
                     {"steps", config.num_steps()},
                     {"mesh", stats},
                     {"dofs", dofs},
                     {"timings", {{"assemble_seconds", result.assemble_seconds},
                                  {"solve_seconds", result.solve_seconds}}},
                     {"timestamp", timestamp()}};
  write_json(out / "meta.json", meta);

  if (o.vtk)
  {
    const SystemMatrices m = assemble_system(mesh, config.r, CellCoefficient::constant(problem.eps),
                                             CellCoefficient::constant(problem.mu));
    write_vtk(out / "fields.vtk", mesh, m, result.final_state);
  }
  std::cout << fmt::format("{} {} r={} steps={} energy {:.12g} -> {:.12g}, error total {:.6e}\n",
                           problem.name, scheme_name(config.scheme), config.r, config.num_steps(),
                           result.trace.energy.front(), result.trace.energy.back(),
                           result.errors.total());
  return kOk;
}

int thread_cap()
{
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("MAXFEEC_THREADS"))
  {
    const int v = std::atoi(env);
    MAXFEEC_VERIFY(v >= 1, "MAXFEEC_THREADS must be a positive integer");
    return v;
  }
  return static_cast<int>(hw);
}

int cmd_converge(const RunOptions &o, const std::string &sweep, const std::vector<double> &values)
{
  MAXFEEC_VERIFY(sweep == "n" || sweep == "dt", "--sweep must be n or dt");
  MAXFEEC_VERIFY(values.size() >= 2, "a sweep needs at least two points");
  const ProblemSpec &problem = lookup_problem(o.problem);
  const fs::path out = prepare_out(o.out);

  // Validate every point before launching any work.
  std::vector<RunOptions> points;
  for (double v : values)
  {
    RunOptions p = o;
    if (sweep == "n")
    {
      MAXFEEC_VERIFY(v >= 1 && v == std::floor(v), "mesh sweep values must be positive integers");
      MAXFEEC_VERIFY(o.mesh_file.empty(), "--mesh-file cannot be combined with a mesh sweep");
      p.n = static_cast<int>(v);
    }
    else
    {
      p.dt = v;
    }
    make_config(p, problem);
    points.push_back(p);
  }

  std::vector<SweepPoint> results(points.size());
  std::vector<std::exception_ptr> failures(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]()
  {
    for (std::size_t i = next++; i < points.size(); i = next++)
    {
      try
      {
        const Mesh mesh = make_mesh(points[i], problem.dim);
        const SimulationResult r = run_simulation(mesh, problem, make_config(points[i], problem));
        results[i] = {sweep == "n" ? r.errors.h : r.errors.dt, r.errors};
      }
      catch (...)
      {
        failures[i] = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(thread_cap(), static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; t++)
  {
    pool.emplace_back(worker);
  }
  for (std::thread &t : pool)
  {
    t.join();
  }
  for (const auto &f : failures)
  {
    if (f)
    {
      std::rethrow_exception(f);
    }
  }

  write_sweep_csv(out / "convergence.csv", results);
  auto order = [&](auto field)
  {
    std::vector<std::pair<double, double>> s;
    for (const SweepPoint &p : results)
    {
      s.emplace_back(p.param, field(p.errors));
    }
    return estimate_order(s);
  };
  for (const SweepPoint &p : results)
  {
    std::cout << fmt::format("{}={:.6g}  e_p={:.6e}  e_E={:.6e}  e_H={:.6e}  total={:.6e}\n",
                             sweep == "n" ? "h" : "dt", p.param, p.errors.e_p, p.errors.e_E,
                             p.errors.e_H, p.errors.total());
  }
  std::cout << fmt::format("order (total): {:.4f}\n", order([](const ErrorReport &e) { return e.total(); }));
  return kOk;
}

QuadratureRule read_quadrature(const std::string &path)
{
  json j;
  try
  {
    j = json::parse(read_file(path));
  }
  catch (const json::exception &e)
  {
    throw InvalidArgument("malformed quadrature file " + path + ": " + e.what());
  }
  QuadratureRule rule;
  try
  {
    rule.dim = j.at("dim").get<int>();
    rule.degree = j.at("degree").get<int>();
    rule.weights = j.at("weights").get<std::vector<double>>();
    for (const auto &p : j.at("points"))
    {
      for (double x : p.get<std::vector<double>>())
      {
        rule.points.push_back(x);
      }
    }
  }
  catch (const json::exception &e)
  {
    throw InvalidArgument("malformed quadrature file " + path + ": " + e.what());
  }
  return rule;
}

int cmd_selftest(const std::string &mesh_file, const std::string &quadrature_file)
{
  SelftestOptions opts;
  if (!mesh_file.empty())
  {
    opts.mesh_text = read_file(mesh_file);
  }
  if (!quadrature_file.empty())
  {
    opts.quadrature = read_quadrature(quadrature_file);
  }
  int failed = 0;
  for (const CheckResult &r : run_selftest(opts))
  {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    failed += r.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "selftest passed\n" : fmt::format("selftest failed: {} check(s)\n", failed));
  return failed == 0 ? kOk : kFailed;
}

void add_run_options(CLI::App *cmd, RunOptions &o)
{
  cmd->add_option("--problem", o.problem, "example1..example6");
  cmd->add_option("--scheme", o.scheme, "cn, leapfrog or backward-euler");
  cmd->add_option("--order", o.order, "Whitney order r (1 or 2)");
  auto *n = cmd->add_option("--n", o.n, "cells per side of the generated unit square/cube");
  auto *file = cmd->add_option("--mesh-file", o.mesh_file, "mesh in maxfeec text format");
  n->excludes(file);
  cmd->add_option("--dt", o.dt, "time step");
  cmd->add_option("--tmin", o.t_min, "override the problem's start time");
  cmd->add_option("--tmax", o.t_max, "override the problem's final time");
  cmd->add_option("--out", o.out, "output directory");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"maxfeec: mixed (p, E, H) Maxwell solver with Whitney forms"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto *run = app.add_subcommand("run", "run one configuration and write energy/error files");
  add_run_options(run, run_opts);
  run->add_flag("--vtk", run_opts.vtk, "also write fields.vtk with cell-centroid samples");

  RunOptions conv_opts;
  std::string sweep = "n";
  std::vector<double> values;
  auto *converge = app.add_subcommand("converge", "sweep n or dt and estimate the order");
  add_run_options(converge, conv_opts);
  converge->add_option("--sweep", sweep, "n or dt");
  converge->add_option("--values", values, "sweep values")->delimiter(',')->required();

  std::string mesh_file, quadrature_file;
  auto *selftest = app.add_subcommand("selftest", "run the fast invariant checks");
  selftest->add_option("--mesh-file", mesh_file, "also validate this mesh file");
  selftest->add_option("--quadrature-file", quadrature_file,
                       "also check this quadrature table (JSON: dim, degree, points, weights)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return kConfigError;
  }

  try
  {
    if (run->parsed())
    {
      return cmd_run(run_opts);
    }
    if (converge->parsed())
    {
      return cmd_converge(conv_opts, sweep, values);
    }
    return cmd_selftest(mesh_file, quadrature_file);
  }
  catch (const InvalidArgument &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  catch (const SolverError &e)
  {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverError;
  }
  catch (const std::exception &e)
  {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverError;
  }
}
