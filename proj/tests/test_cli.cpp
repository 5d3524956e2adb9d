#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "meshflow/mesh_io.hpp"
#include "meshflow/noise.hpp"
#include "support/shapes.hpp"

using namespace meshflow;
using namespace meshflow::testing;

namespace {

std::string cli_binary() {
  const char* bin = std::getenv("MESHFLOW_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "MESHFLOW_BIN must point at the CLI");
  return bin;
}

std::filesystem::path temp_dir() {
  static int counter = 0;
  const auto dir = std::filesystem::temp_directory_path() /
                   ("meshflow_cli_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run(const std::string& args,
              const std::string& env_prefix = std::string()) {
  const auto dir = temp_dir();
  const std::string out_path = (dir / "stdout").string();
  const std::string err_path = (dir / "stderr").string();
  const std::string cmd = env_prefix + cli_binary() + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult result;
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

std::string file_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("noise subcommand") {
  const auto dir = temp_dir();
  const std::string input = (dir / "in.obj").string();
  save_mesh(icosphere(2), input);

  SUBCASE("level 0 writes the identical mesh") {
    const std::string output = (dir / "out.obj").string();
    const RunResult r =
        run("noise " + input + " --level 0 --seed 1 -o " + output);
    CHECK(r.status == 0);
    CHECK(r.out.find("sigma") != std::string::npos);
    CHECK(r.out.find("l_bar") != std::string::npos);
    const Mesh a = load_mesh(input);
    const Mesh b = load_mesh(output);
    CHECK(max_vertex_distance(a, b) == 0.0);
    CHECK(a.triangles == b.triangles);
  }

  SUBCASE("level 0.7 perturbs the mesh deterministically") {
    const std::string out1 = (dir / "n1.obj").string();
    const std::string out2 = (dir / "n2.obj").string();
    CHECK(run("noise " + input + " --level 0.7 --seed 1 -o " + out1).status ==
          0);
    CHECK(run("noise " + input + " --level 0.7 --seed 1 -o " + out2).status ==
          0);
    CHECK(file_bytes(out1) == file_bytes(out2));
    CHECK(max_vertex_distance(load_mesh(input), load_mesh(out1)) > 0.0);
  }

  SUBCASE("along-normal direction") {
    const std::string output = (dir / "nrm.obj").string();
    const RunResult r = run("noise " + input +
                            " --level 0.5 --seed 2 --direction normal -o " +
                            output);
    CHECK(r.status == 0);
    CHECK(max_vertex_distance(load_mesh(input), load_mesh(output)) > 0.0);
  }

  SUBCASE("missing file names the path") {
    const RunResult r =
        run("noise /no/such/mesh.obj --level 0.5 -o " + (dir / "x.obj").string());
    CHECK(r.status != 0);
    CHECK(r.err.find("/no/such/mesh.obj") != std::string::npos);
  }

  SUBCASE("negative level fails") {
    const RunResult r = run("noise " + input + " --level -1 -o " +
                            (dir / "x.obj").string());
    CHECK(r.status != 0);
  }
}

TEST_CASE("denoise subcommand") {
  const auto dir = temp_dir();
  const std::string noisy = (dir / "noisy.obj").string();
  save_mesh(add_gaussian_noise(icosphere(2), {0.5, 3}), noisy);

  SUBCASE("diffusion run matches the library") {
    const std::string output = (dir / "out.obj").string();
    const RunResult r = run("denoise " + noisy +
                            " --filter diffusion --diffusivity gaussian"
                            " --c 8.3849 --iterations 6 -o " +
                            output);
    CHECK(r.status == 0);
    CHECK(r.out.find("filter=diffusion") != std::string::npos);
    CHECK(std::filesystem::exists(output));
  }

  SUBCASE("laplacian with the usual step size") {
    const std::string output = (dir / "lap.obj").string();
    const RunResult r = run("denoise " + noisy +
                            " --filter laplacian --lambda 0.45"
                            " --iterations 2 -o " +
                            output);
    CHECK(r.status == 0);
  }

  SUBCASE("out-of-range lambda warns but runs") {
    const std::string output = (dir / "lap2.obj").string();
    const RunResult r = run("denoise " + noisy +
                            " --filter laplacian --lambda 1.5"
                            " --iterations 1 -o " +
                            output);
    CHECK(r.status == 0);
    CHECK(r.err.find("warning") != std::string::npos);
  }

  SUBCASE("zero iterations is the identity") {
    const std::string output = (dir / "id.obj").string();
    const RunResult r = run("denoise " + noisy +
                            " --filter median --iterations 0 -o " + output);
    CHECK(r.status == 0);
    CHECK(max_vertex_distance(load_mesh(noisy), load_mesh(output)) == 0.0);
  }

  SUBCASE("unknown filter is a usage error") {
    const RunResult r = run("denoise " + noisy + " --filter wiener -o " +
                            (dir / "x.obj").string());
    CHECK(r.status != 0);
  }

  SUBCASE("diffusion without --c is a usage error") {
    const RunResult r = run("denoise " + noisy +
                            " --filter diffusion --iterations 2 -o " +
                            (dir / "x.obj").string());
    CHECK(r.status != 0);
    CHECK(r.err.find("--c") != std::string::npos);
  }
}

TEST_CASE("compare subcommand") {
  const auto dir = temp_dir();
  const std::string clean = (dir / "clean.obj").string();
  save_mesh(icosphere(2), clean);

  SUBCASE("mesh against itself is all zeros") {
    const RunResult r = run("compare " + clean + " --reference " + clean);
    CHECK(r.status == 0);
    const nlohmann::json report = nlohmann::json::parse(r.out);
    CHECK(report["eps_v"] == 0.0);
    CHECK(report["eps_f"] == 0.0);
  }

  SUBCASE("noisy mesh yields positive metrics") {
    const std::string noisy = (dir / "noisy.obj").string();
    save_mesh(add_gaussian_noise(icosphere(2), {0.8, 5}), noisy);
    const RunResult r = run("compare " + noisy + " --reference " + clean);
    CHECK(r.status == 0);
    const nlohmann::json report = nlohmann::json::parse(r.out);
    CHECK(report["eps_v"].get<double>() > 0.0);
    CHECK(report["eps_f"].get<double>() > 0.0);
  }

  SUBCASE("topology mismatch nulls eps_f with a warning") {
    const std::string other = (dir / "other.obj").string();
    save_mesh(icosphere(1), other);
    const RunResult r = run("compare " + other + " --reference " + clean);
    CHECK(r.status == 0);
    const nlohmann::json report = nlohmann::json::parse(r.out);
    CHECK(report["eps_f"].is_null());
    CHECK(r.err.find("warning") != std::string::npos);
  }
}

TEST_CASE("bench subcommand reproducibility") {
  const auto dir = temp_dir();
  const std::string input = (dir / "in.obj").string();
  save_mesh(icosphere(2), input);
  const std::string flags =
      " --noise-level 0.5 --seed 11 --iterations 4"
      " --run diffusion:diffusivity=cauchy,c=0.1"
      " --run laplacian:lambda=0.45";

  const std::string out_a = (dir / "a").string();
  const std::string out_b = (dir / "b").string();
  const std::string out_c = (dir / "c").string();

  CHECK(run("bench " + input + flags + " -o " + out_a).status == 0);
  CHECK(run("bench " + input + flags + " -o " + out_b).status == 0);
  CHECK(run("bench " + input + flags + " -o " + out_c,
            "MESHFLOW_THREADS=1 ").status == 0);

  for (const char* name :
       {"01_diffusion_cauchy.csv", "02_laplacian.csv", "summary.json"}) {
    const std::string a = file_bytes(std::filesystem::path(out_a) / name);
    CHECK(a == file_bytes(std::filesystem::path(out_b) / name));
    CHECK(a == file_bytes(std::filesystem::path(out_c) / name));
  }

  // CSV rows start at 1 and increase by 1.
  std::ifstream csv(std::filesystem::path(out_a) / "01_diffusion_cauchy.csv");
  std::string line;
  std::getline(csv, line);
  CHECK(line == "iteration,eps_v,eps_f");
  int expected = 1;
  while (std::getline(csv, line)) {
    CHECK(line.rfind(std::to_string(expected) + ",", 0) == 0);
    ++expected;
  }
  CHECK(expected == 5);
}

TEST_CASE("bench aborts cleanly on a bad run spec") {
  const auto dir = temp_dir();
  const std::string input = (dir / "in.obj").string();
  save_mesh(icosphere(1), input);
  const RunResult r = run("bench " + input +
                          " --noise-level 0.2 --run nosuchfilter -o " +
                          (dir / "out").string());
  CHECK(r.status != 0);
}
