#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dcp::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dcp_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

// Second column of the first data row.
double first_value(const std::string& csv, int column) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::istringstream row(line);
  std::string cell;
  for (int i = 0; i <= column; ++i) std::getline(row, cell, ',');
  return std::stod(cell);
}

}  // namespace

TEST_CASE("quantum-loop reproduces phi = 2") {
  const auto dir = scratch("quantum");
  const auto r = run({"--out", dir.string(), "quantum-loop", "--alpha", "1", "--beta", "i",
                      "--dim", "64"});
  CHECK(r.code == 0);
  CHECK(std::abs(first_value(r.out, 1) - 2.0) < 1e-6);
  CHECK(fs::exists(dir / "quantum_loop.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("quantum-loop with alpha = 0 gives zero") {
  const auto dir = scratch("quantum0");
  const auto r = run({"--out", dir.string(), "quantum-loop", "--alpha", "0", "--beta", "i"});
  CHECK(r.code == 0);
  CHECK(std::abs(first_value(r.out, 1)) < 1e-12);
}

TEST_CASE("quantum-loop truncation guard names the minimum dim") {
  const auto dir = scratch("quantum_guard");
  const auto r = run({"--out", dir.string(), "quantum-loop", "--dim", "8", "--alpha", "2"});
  CHECK(r.code == dcp::cli::kUsage);
  CHECK(r.err.find("16") != std::string::npos);
}

TEST_CASE("quantum-loop rejects bad literals") {
  const auto dir = scratch("quantum_bad");
  CHECK(run({"--out", dir.string(), "quantum-loop", "--alpha", "1+x"}).code == dcp::cli::kUsage);
}

TEST_CASE("wave-loop cases") {
  const auto dir = scratch("wave");
  SUBCASE("X = 0") {
    const auto r = run({"--out", dir.string(), "wave-loop", "--X", "0", "--mode", "3"});
    CHECK(r.code == 0);
    CHECK(std::abs(first_value(r.out, 2)) < 1e-12);
  }
  SUBCASE("X = L/4, K = 2 pi / L") {
    const auto r = run({"--out", dir.string(), "wave-loop", "--X", "0.5", "--L", "2",
                        "--mode", "1", "--wave", "sine"});
    CHECK(r.code == 0);
    CHECK(std::abs(first_value(r.out, 2) - M_PI / 2) < 1e-10);
  }
  SUBCASE("random wave, K = 6 pi / L, X = 0.7 L") {
    const auto r = run({"--out", dir.string(), "--seed", "9", "wave-loop", "--X", "0.7",
                        "--mode", "3", "--wave", "random"});
    CHECK(r.code == 0);
    const double expected = std::remainder(2 * M_PI * 3 * 0.7, 2 * M_PI);
    CHECK(std::abs(first_value(r.out, 2) - expected) < 1e-10);
    CHECK(first_value(r.out, 3) < 1e-10);
  }
  SUBCASE("non-commensurate K") {
    const auto r = run({"--out", dir.string(), "wave-loop", "--K", "7.0"});
    CHECK(r.code == dcp::cli::kUsage);
    CHECK(r.err.find("nearest valid K") != std::string::npos);
  }
}

TEST_CASE("action-loop files") {
  const auto dir = scratch("action");
  SUBCASE("rectangle") {
    write(dir / "rect.csv", "x,p,duration\n1,2,1\n4,2,1\n4,4,3\n1,4,2\n");
    const auto r = run({"--out", dir.string(), "action-loop", (dir / "rect.csv").string()});
    CHECK(r.code == 0);
    const auto summary = slurp(dir / "action_summary.csv");
    CHECK(first_value(summary, 0) == 6.0);
    CHECK(first_value(summary, 1) == 6.0);
  }
  SUBCASE("triangle") {
    write(dir / "tri.csv", "0,0,1\n2,0,1\n2,3,1\n");
    const auto r = run({"--out", dir.string(), "action-loop", (dir / "tri.csv").string()});
    CHECK(r.code == 0);
    CHECK(first_value(slurp(dir / "action_summary.csv"), 0) == 3.0);
  }
  SUBCASE("degenerate") {
    write(dir / "deg.csv", "1,1,1\n3,2,1\n1,1,1\n");
    const auto r = run({"--out", dir.string(), "action-loop", (dir / "deg.csv").string()});
    CHECK(r.code == 0);
    CHECK(first_value(slurp(dir / "action_summary.csv"), 0) == 0.0);
  }
  SUBCASE("missing file") {
    CHECK(run({"--out", dir.string(), "action-loop", (dir / "nope.csv").string()}).code ==
          dcp::cli::kUsage);
  }
}

TEST_CASE("interferometer run writes csv, svg and fringes") {
  const auto dir = scratch("interf");
  write(dir / "run.cfg",
        "fiber_length = 195\n"
        "rf_sweep = -6.283185307179586e6, -3.141592653589793e6, 0, 3.141592653589793e6, "
        "6.283185307179586e6\n"
        "noise_sigma = 0\n");
  const auto out = dir / "out";
  const auto r = run({"--out", out.string(), "--format", "csv+svg", "interferometer",
                      (dir / "run.cfg").string(), "--dump-fringes"});
  CHECK(r.code == 0);
  const auto csv = slurp(out / "sweep.csv");
  CHECK(csv.rfind("delta_rf_hz,delta_k_per_m,fitted_phase_rad,predicted_phase_rad\n", 0) == 0);
  CHECK(first_value(csv, 0) == -1e6);
  CHECK(fs::exists(out / "sweep.svg"));
  CHECK(fs::exists(out / "fringes_0.csv"));
  CHECK(fs::exists(out / "fringes_4.csv"));
}

TEST_CASE("interferometer warns on coarse sweeps") {
  const auto dir = scratch("interf_coarse");
  write(dir / "run.cfg", "fiber_length = 295\nrf_sweep = 0, 6.283185307179586e6\n");
  const auto r = run({"--out", (dir / "out").string(), "interferometer",
                      (dir / "run.cfg").string()});
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("interferometer rejects bad config") {
  const auto dir = scratch("interf_bad");
  write(dir / "run.cfg", "fiber_length = 95\nbogus = 1\n");
  CHECK(run({"--out", dir.string(), "interferometer", (dir / "run.cfg").string()}).code ==
        dcp::cli::kUsage);
}

TEST_CASE("replaying a manifest reproduces outputs byte for byte") {
  const auto dir = scratch("replay");
  write(dir / "run.cfg",
        "fiber_length = 95\nnoise_sigma = 0.01\nrng_seed = 5\n"
        "rf_sweep = -3.141592653589793e6, 0, 3.141592653589793e6, 6.283185307179586e6\n");
  const auto first = dir / "first";
  const auto second = dir / "second";
  REQUIRE(run({"--out", first.string(), "interferometer", (dir / "run.cfg").string()}).code == 0);
  REQUIRE(run({"--out", second.string(), "replay", (first / "manifest.json").string()}).code == 0);
  CHECK(slurp(first / "sweep.csv") == slurp(second / "sweep.csv"));

  const auto q1 = dir / "q1";
  const auto q2 = dir / "q2";
  REQUIRE(run({"--out", q1.string(), "--seed", "77", "quantum-loop", "--alpha", "0.3+0.4i",
               "--beta", "-0.2i", "--dim", "32", "--trials", "4"}).code == 0);
  REQUIRE(run({"--out", q2.string(), "replay", (q1 / "manifest.json").string()}).code == 0);
  CHECK(slurp(q1 / "quantum_loop.csv") == slurp(q2 / "quantum_loop.csv"));

  const auto manifest = nlohmann::json::parse(slurp(q1 / "manifest.json"));
  CHECK(manifest["subcommand"] == "quantum-loop");
  CHECK(manifest["rng_seed"] == 77);
  CHECK(manifest["tool_version"] == dcp::cli::kVersion);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == dcp::cli::kUsage);
  CHECK(run({"frobnicate"}).code == dcp::cli::kUsage);
  CHECK(run({"--format", "png", "quantum-loop"}).code == dcp::cli::kUsage);
}
