// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "maxfeec/problems.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace
{

struct Outcome
{
  int code = -1;
  std::string output;
};

fs::path Scratch(const std::string &name)
{
  const fs::path dir = fs::temp_directory_path() / ("maxfeec_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Outcome Invoke(const std::string &args, const fs::path &dir)
{
  const fs::path log = dir / "log.txt";
  const std::string cmd = std::string(MAXFEEC_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  Outcome out;
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  std::ostringstream s;
  s << in.rdbuf();
  out.output = s.str();
  return out;
}

std::string Slurp(const fs::path &file)
{
  std::ifstream in(file, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::pair<double, double>> ReadEnergy(const fs::path &file)
{
  std::ifstream in(file);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,energy");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line))
  {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

std::string Fixture(const std::string &name)
{
  return std::string(MAXFEEC_FIXTURES) + "/" + name;
}

}  // namespace

TEST(CliRun, CrankNicholsonConservesEnergy)
{
  const fs::path dir = Scratch("cn");
  const Outcome r = Invoke("run --problem example1 --scheme cn --order 2 --n 16 --dt 0.01 --out " +
                            dir.string(),
                        dir);
  ASSERT_EQ(r.code, 0) << r.output;
  const auto rows = ReadEnergy(dir / "energy.csv");
  ASSERT_EQ(rows.size(), 201u);
  for (const auto &[t, e] : rows)
  {
    EXPECT_NEAR(e, rows.front().second, 1e-9) << t;
    EXPECT_NEAR(e, 1.0, 1e-5) << t;
  }

  const json errors = json::parse(Slurp(dir / "errors.json"));
  for (const char *key : {"e_p", "e_E", "e_H", "total", "h", "dt", "r", "scheme"})
  {
    EXPECT_TRUE(errors.contains(key)) << key;
  }
  EXPECT_EQ(errors["scheme"], "cn");
  EXPECT_EQ(errors["r"], 2);
  EXPECT_NEAR(errors["total"].get<double>(),
              errors["e_p"].get<double>() + errors["e_E"].get<double>() + errors["e_H"].get<double>(),
              1e-15);

  const json meta = json::parse(Slurp(dir / "meta.json"));
  EXPECT_EQ(meta["mesh"]["cells"], 512);
  EXPECT_EQ(meta["steps"], 200);
  EXPECT_TRUE(meta.contains("timestamp"));
  EXPECT_TRUE(meta["timings"].contains("solve_seconds"));
}

TEST(CliRun, BackwardEulerEnergyDecreases)
{
  const fs::path dir = Scratch("be");
  const Outcome r = Invoke("run --problem example1 --scheme backward-euler --order 2 --n 16 --dt 0.01 --out " +
                            dir.string(),
                        dir);
  ASSERT_EQ(r.code, 0) << r.output;
  const auto rows = ReadEnergy(dir / "energy.csv");
  for (std::size_t i = 1; i < rows.size(); i++)
  {
    EXPECT_LT(rows[i].second, rows[i - 1].second) << rows[i].first;
  }
}

TEST(CliRun, LeapfrogTracksVaryingEnergy)
{
  const fs::path dir = Scratch("lf5");
  const Outcome r = Invoke("run --problem example5 --scheme leapfrog --order 2 --n 16 --dt 0.01 --out " +
                            dir.string(),
                        dir);
  ASSERT_EQ(r.code, 0) << r.output;
  const maxfeec::ProblemSpec &p = maxfeec::get_problem(5);
  for (const auto &[t, e] : ReadEnergy(dir / "energy.csv"))
  {
    EXPECT_LE(std::abs(e - p.exact_energy(t)) / p.exact_energy(t), 0.02) << t;
  }
}

TEST(CliRun, OutputsAreDeterministic)
{
  const fs::path a = Scratch("det_a"), b = Scratch("det_b");
  const std::string args = "run --problem example3 --scheme leapfrog --order 1 --n 4 --dt 0.05 --tmax 0.5 --out ";
  ASSERT_EQ(Invoke(args + a.string(), a).code, 0);
  ASSERT_EQ(Invoke(args + b.string(), b).code, 0);
  EXPECT_EQ(Slurp(a / "energy.csv"), Slurp(b / "energy.csv"));
  EXPECT_EQ(Slurp(a / "errors.json"), Slurp(b / "errors.json"));
}

TEST(CliRun, VtkAndMeshFile)
{
  const fs::path dir = Scratch("vtk");
  const Outcome r = Invoke("run --problem example1 --mesh-file " + Fixture("two_triangles.mesh") +
                            " --dt 0.1 --tmax 0.2 --vtk --out " + dir.string(),
                        dir);
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string vtk = Slurp(dir / "fields.vtk");
  EXPECT_EQ(vtk.rfind("# vtk DataFile Version 3.0", 0), 0u);
  EXPECT_NE(vtk.find("CELL_DATA 2"), std::string::npos);
  EXPECT_NE(vtk.find("VECTORS E double"), std::string::npos);
}

TEST(CliRun, ConfigErrorsExitTwo)
{
  const fs::path dir = Scratch("errors");
  const std::string out = " --out " + dir.string();
  for (const std::string &args :
       {"run --problem example7" + out, "run --scheme rk4" + out, "run --order 3" + out,
        "run --dt 0.03" + out, "run --n 0" + out, "run --no-such-flag" + out,
        "run --mesh-file " + Fixture("bad_index.mesh") + out,
        "run --problem example2 --mesh-file " + Fixture("two_triangles.mesh") + out,
        "converge --values 4" + out, "converge --sweep q --values 4,8" + out, std::string("frobnicate")})
  {
    const Outcome r = Invoke(args, dir);
    EXPECT_EQ(r.code, 2) << args << "\n" << r.output;
    EXPECT_FALSE(r.output.empty()) << args;
  }
}

TEST(CliConverge, SpatialSweep)
{
  const fs::path dir = Scratch("conv");
  const Outcome r = Invoke("converge --problem example1 --order 1 --sweep n --values 4,8,16 --dt 0.0005 "
                        "--tmax 0.1 --out " + dir.string(),
                        dir);
  ASSERT_EQ(r.code, 0) << r.output;
  const auto pos = r.output.find("order (total): ");
  ASSERT_NE(pos, std::string::npos);
  const double order = std::stod(r.output.substr(pos + 15));
  EXPECT_GE(order, 0.7);
  EXPECT_LE(order, 1.3);
  const std::string csv = Slurp(dir / "convergence.csv");
  EXPECT_EQ(csv.rfind("param,e_p,e_E,e_H,total\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(CliConverge, ThreadCapDoesNotChangeResults)
{
  const fs::path a = Scratch("thr_a"), b = Scratch("thr_b");
  const std::string args = "converge --problem example1 --order 1 --sweep dt --values 0.1,0.05 --n 4 "
                           "--tmax 0.2 --out ";
  ASSERT_EQ(std::system(("MAXFEEC_THREADS=1 " + std::string(MAXFEEC_CLI) + " " + args + a.string() +
                         " > /dev/null").c_str()),
            0);
  ASSERT_EQ(std::system(("MAXFEEC_THREADS=4 " + std::string(MAXFEEC_CLI) + " " + args + b.string() +
                         " > /dev/null").c_str()),
            0);
  EXPECT_EQ(Slurp(a / "convergence.csv"), Slurp(b / "convergence.csv"));
}

TEST(CliSelftest, Passes)
{
  const fs::path dir = Scratch("self");
  const Outcome r = Invoke("selftest --quadrature-file " + Fixture("good_quadrature.json"), dir);
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos);
}

TEST(CliSelftest, CorruptedQuadratureIsNamed)
{
  const fs::path dir = Scratch("self_q");
  const Outcome r = Invoke("selftest --quadrature-file " + Fixture("corrupt_quadrature.json"), dir);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.output.find("FAIL quadrature-exactness"), std::string::npos) << r.output;
}

TEST(CliSelftest, BadMeshIndexFailsMeshCheck)
{
  const fs::path dir = Scratch("self_m");
  const Outcome r = Invoke("selftest --mesh-file " + Fixture("bad_index.mesh"), dir);
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.output.find("FAIL mesh-file"), std::string::npos) << r.output;
}
