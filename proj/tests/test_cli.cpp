#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string cli_path() { return P1N_CLI_PATH; }

int run_cli(const std::string& args, const std::string& log) {
  const std::string cmd = cli_path() + " " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

/// Column extraction from a t,re,im series; header skipped.
std::vector<double> csv_column(const fs::path& path, int col) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::string line;
  std::getline(is, line);
  std::vector<double> out;
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string item;
    for (int c = 0; std::getline(ss, item, ','); ++c)
      if (c == col) out.push_back(std::stod(item));
  }
  return out;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("p1n_cli_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("cli verify runs the documented example and is deterministic") {
  TempDir dir("verify");
  const std::string log = dir.str() + "/log.txt";

  const int rc = run_cli("--out-dir " + dir.str() +
                             "/a verify --n 4 --class I --picture schrodinger "
                             "--rep 0,1/2 --kappa 1 --eps +1",
                         log);
  CHECK(rc == 0);
  const json report = json::parse(slurp(dir.path / "a" / "verify_report.json"));
  CHECK(report.at("pass").get<bool>());
  CHECK(report.at("reports").size() >= 3);

  // Same seed, same artifact bytes.
  const std::string args =
      " --seed 42 verify --n 3 --class III --picture heisenberg --rep spin:1/2 --eta 1.5";
  CHECK(run_cli("--out-dir " + dir.str() + "/r1" + args, log) == 0);
  CHECK(run_cli("--out-dir " + dir.str() + "/r2" + args, log) == 0);
  CHECK(slurp(dir.path / "r1" / "verify_report.json") ==
        slurp(dir.path / "r2" / "verify_report.json"));
}

TEST_CASE("cli evolve conserves the norm and drifts at the group velocity") {
  TempDir dir("evolve");
  const std::string log = dir.str() + "/log.txt";

  const int rc = run_cli(
      "--out-dir " + dir.str() +
          "/run evolve --grid-min -6 -6 --grid-max 6 6 --grid-count 32 32 "
          "--center 1 -0.5 --width 0.7 0.7 --class I --mass 1 --times 0 0.4 0.8",
      log);
  CHECK(rc == 0);

  const std::vector<double> t = csv_column(dir.path / "run" / "obs_norm.csv", 0);
  const std::vector<double> norm = csv_column(dir.path / "run" / "obs_norm.csv", 1);
  REQUIRE(t.size() == 3);
  for (double v : norm) CHECK(v == doctest::Approx(norm[0]).epsilon(1e-13));

  for (int k = 1; k <= 2; ++k) {
    const auto x = csv_column(dir.path / "run" / ("obs_x" + std::to_string(k) + ".csv"), 1);
    const auto vel = csv_column(dir.path / "run" / ("obs_v" + std::to_string(k) + ".csv"), 1);
    // <x_k>(t) is exactly linear with slope <eps q_k / omega>.
    const double slope = (x[2] - x[0]) / (t[2] - t[0]);
    CHECK(slope == doctest::Approx(vel[0]).epsilon(1e-6));
    CHECK(vel[2] == doctest::Approx(vel[0]).epsilon(1e-12));
  }

  // Zero-time propagation from a snapshot reproduces it byte for byte.
  CHECK(run_cli("--out-dir " + dir.str() + "/rt evolve --input " + dir.str() +
                    "/run/state_000.bin --times 0",
                log) == 0);
  CHECK(slurp(dir.path / "run" / "state_000.bin") == slurp(dir.path / "rt" / "state_000.bin"));
}

TEST_CASE("cli spectrum and export-rep emit well-formed artifacts") {
  TempDir dir("spectrum");
  const std::string log = dir.str() + "/log.txt";

  CHECK(run_cli("--out-dir " + dir.str() +
                    "/ev evolve --grid-min -4 -4 -4 -4 --grid-max 4 4 4 4 "
                    "--grid-count 8 8 8 16 --width 0.8 0.8 0.8 0.7 --class I "
                    "--mass 1.3 --rep 0,1/2 --times 0",
                log) == 0);
  CHECK(run_cli("--out-dir " + dir.str() + "/sp spectrum --input " + dir.str() +
                    "/ev/state_000.bin --m2-max 6 --m2-count 33",
                log) == 0);

  std::ifstream csv(dir.path / "sp" / "spectrum.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "m2,s3,t3,rho");

  const json summary = json::parse(slurp(dir.path / "sp" / "spectrum_summary.json"));
  CHECK(summary.at("peaks").size() >= 1);
  CHECK(summary.at("mean_lifetime").get<double>() > 0.0);
  double total_norm = 0.0;
  for (const auto& v : summary.at("component_norm")) total_norm += v.get<double>();
  CHECK(summary.at("quadrature_norm").get<double>() ==
        doctest::Approx(total_norm).epsilon(0.05));

  CHECK(run_cli("export-rep --n 4 --rep 1/2,1/2", log) == 0);
  const json rep = json::parse(slurp(fs::path(log)));
  CHECK(rep.at("dim").get<int>() == 4);
  CHECK(rep.at("kind").get<std::string>() == "o4");
}

TEST_CASE("cli reports configuration errors with exit code 2") {
  TempDir dir("errors");
  const std::string log = dir.str() + "/log.txt";

  CHECK(run_cli("verify --n 4 --class I --rep bogus", log) == 2);
  CHECK(slurp(fs::path(log)).find("--rep") != std::string::npos);

  CHECK(run_cli("spectrum --input " + dir.str() + "/missing.bin", log) == 2);
  CHECK(run_cli("", log) == 2);
  CHECK(run_cli("verify --class IV", log) == 2);

  std::ofstream(dir.path / "bad.json") << "{ not json";
  CHECK(run_cli("--config " + dir.str() + "/bad.json verify", log) == 2);

  // Config values are overridden by explicit flags.
  std::ofstream(dir.path / "cfg.json")
      << R"({"n": 3, "class": "I", "picture": "heisenberg", "rep": "spin:1", "kappa": 2.0})";
  CHECK(run_cli("--config " + dir.str() + "/cfg.json --out-dir " + dir.str() + "/cfg verify",
                log) == 0);
  const json report = json::parse(slurp(dir.path / "cfg" / "verify_report.json"));
  CHECK(report.at("config").at("rep").get<std::string>() == "spin:1");
  CHECK(run_cli("--config " + dir.str() + "/cfg.json --out-dir " + dir.str() +
                    "/cfg2 verify --rep vector",
                log) == 0);
  const json report2 = json::parse(slurp(dir.path / "cfg2" / "verify_report.json"));
  CHECK(report2.at("config").at("rep").get<std::string>() == "vector");
}
