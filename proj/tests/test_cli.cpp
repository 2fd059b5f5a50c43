#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string binary_path() {
  const char* env = std::getenv("LNELAB_BIN");
  REQUIRE_MESSAGE(env != nullptr, "LNELAB_BIN must point at the CLI binary");
  return env;
}

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / "lnelab_cli_out.txt";
  const std::string cmd = binary_path() + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream in(out);
  std::ostringstream buf;
  buf << in.rdbuf();
  return {WEXITSTATUS(raw), buf.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("classify subcommand prints verdicts with clause tags") {
  const RunResult r1 = run("classify brieskorn 2 3 3");
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("non-LNE (clause n1)") != std::string::npos);

  const RunResult r2 = run("classify brieskorn 2 2 4");
  CHECK(r2.exit_code == 0);
  CHECK(r2.output.find("LNE") == 0);

  const RunResult r3 = run("classify horn 3 2 2");
  CHECK(r3.exit_code == 0);
  CHECK(r3.output.find("LNE") == 0);

  const RunResult r4 = run("classify brieskorn 2 3 3 --json");
  CHECK(r4.exit_code == 0);
  CHECK(r4.output.find("\"clause\": \"n1\"") != std::string::npos);
}

TEST_CASE("malformed classify input exits 2") {
  CHECK(run("classify brieskorn 3 2 1").exit_code == 2);  // violates a <= b <= c
  CHECK(run("classify brieskorn x y z").exit_code == 2);
  CHECK(run("classify").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("sweep writes the table and summary deterministically") {
  const fs::path dir = fs::temp_directory_path() / "lnelab_cli_sweep";
  fs::create_directories(dir);
  const std::string base = "sweep --corpus horn --schedule 0.25,0.125,0.0625,0.03125 "
                           "--count 300 --seed 42";
  const RunResult r1 = run(base + " --csv " + (dir / "a.csv").string() + " --summary " +
                           (dir / "a.json").string());
  CHECK(r1.exit_code == 0);
  const RunResult r2 = run(base + " --csv " + (dir / "b.csv").string() + " --summary " +
                           (dir / "b.json").string());
  CHECK(r2.exit_code == 0);
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.csv").find("t,n_samples,n_components,C_t,d0,stable") == 0);
  fs::remove_all(dir);
}

TEST_CASE("sweep on an empty real locus exits 3 with a diagnostic") {
  const fs::path dir = fs::temp_directory_path() / "lnelab_cli_empty";
  fs::create_directories(dir);
  const fs::path germ = dir / "point.json";
  {
    std::ofstream out(germ);
    out << R"({"ambient_dim": 3, "basepoint": [0,0,0],
      "equations": [{"terms": [{"coeff": 1, "exponents": [2,0,0]},
                               {"coeff": 1, "exponents": [0,2,0]},
                               {"coeff": 1, "exponents": [0,0,2]}]}],
      "residual_tol": 1e-9, "domain_radius": 1.0})";
  }
  const RunResult r = run("sweep --germ " + germ.string() + " --csv " +
                          (dir / "out.csv").string());
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("empty or too thin") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("report consumes summaries and fails cleanly on missing input") {
  const fs::path dir = fs::temp_directory_path() / "lnelab_cli_report";
  fs::create_directories(dir);
  const std::string sweep_cmd = "sweep --corpus line --schedule 0.4,0.2,0.1,0.05 "
                                "--count 60 --seed 7 --csv " +
                                (dir / "line.csv").string() + " --summary " +
                                (dir / "line.json").string();
  REQUIRE(run(sweep_cmd).exit_code == 0);
  const RunResult ok = run("report --inputs " + (dir / "line.json").string() + " --out " +
                           (dir / "report.md").string());
  CHECK(ok.exit_code == 0);
  CHECK(slurp(dir / "report.md").find("| line |") != std::string::npos);

  const RunResult missing = run("report --inputs " + (dir / "absent.json").string() +
                                " --out " + (dir / "r2.md").string());
  CHECK(missing.exit_code == 4);
  fs::remove_all(dir);
}

TEST_CASE("corpus emit writes a germ spec the sweep can consume") {
  const fs::path dir = fs::temp_directory_path() / "lnelab_cli_corpus";
  fs::create_directories(dir);
  const RunResult emit =
      run("corpus emit brieskorn233 --out " + (dir / "b233.json").string());
  CHECK(emit.exit_code == 0);
  const RunResult list = run("corpus list");
  CHECK(list.exit_code == 0);
  CHECK(list.output.find("brieskorn233") != std::string::npos);
  const RunResult sweep = run("sweep --germ " + (dir / "b233.json").string() +
                              " --schedule 0.25,0.125 --count 150 --seed 3 --csv " +
                              (dir / "b.csv").string());
  CHECK(sweep.exit_code == 0);
  fs::remove_all(dir);
}

TEST_CASE("the seed environment variable steers runs when --seed is absent") {
  const fs::path dir = fs::temp_directory_path() / "lnelab_cli_env";
  fs::create_directories(dir);
  const std::string base = "sweep --corpus line --schedule 0.4,0.2 --count 30 "
                           "--csv ";
  const std::string cmd1 = "LNELAB_SEED=1 " + binary_path() + " " + base +
                           (dir / "e1.csv").string() + " >/dev/null 2>&1";
  const std::string cmd2 = "LNELAB_SEED=1 " + binary_path() + " " + base +
                           (dir / "e2.csv").string() + " >/dev/null 2>&1";
  REQUIRE(std::system(cmd1.c_str()) == 0);
  REQUIRE(std::system(cmd2.c_str()) == 0);
  CHECK(slurp(dir / "e1.csv") == slurp(dir / "e2.csv"));
  fs::remove_all(dir);
}
