#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("collapse-kit-cli-" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

const Workspace& ws() {
  static Workspace w;
  return w;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " '" COLLAPSE_KIT_EXE "' " + args + " > /dev/null 2> '" + (ws() / "stderr.txt") + "'";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("minkowski criterion never fires") {
  REQUIRE(run("generate --family minkowski --n 257 --rmax 2 --out " + (ws() / "mk.json")) == 0);
  REQUIRE(run("criterion " + (ws() / "mk.json") + " --mode future --out " + (ws() / "mk.csv")) == 0);
  const auto rows = csv_rows(ws() / "mk.csv");
  REQUIRE(rows.size() == 257);
  CHECK(rows[0] == std::vector<std::string>{"r", "lhs_matter", "lhs_bending", "rhs", "margin",
                                            "fires", "horizon_in_ball"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][5] == "false");
  const std::string text = slurp(ws() / "mk.csv");
  CHECK(text.find("# config_digest=") == 0);
  CHECK(text.find("# j_sign=vacuum-calibrated") != std::string::npos);
  CHECK(text.find("# mo_measure=proper") != std::string::npos);
}

TEST_CASE("painleve_gullstrand Jang run reaches v(10) = -sqrt(0.2)") {
  REQUIRE(run("generate --family pg --mass 1 --rmin 3 --rmax 10 --out " + (ws() / "pg.json")) == 0);
  REQUIRE(run("jang " + (ws() / "pg.json") + " --bc r1=3,matched --out " + (ws() / "pg.csv")) == 0);
  const auto rows = csv_rows(ws() / "pg.csv");
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == std::vector<std::string>{"r", "v", "s", "phi", "rho_s", "geroch_m", "a_t",
                                            "q_s"});
  CHECK(std::stod(rows.back()[0]) == 10.0);
  CHECK(std::abs(std::stod(rows.back()[1]) + std::sqrt(0.2)) <= 1e-6);
  REQUIRE(run("jang " + (ws() / "pg.json") + " --bc r1=3,matched --reconstruct-f --out " +
              (ws() / "pgf.csv")) == 0);
  CHECK(csv_rows(ws() / "pgf.csv")[0].back() == "f");
}

TEST_CASE("verify on minkowski passes") {
  REQUIRE(run("generate --family minkowski --n 257 --rmax 2 --out " + (ws() / "mk.json")) == 0);
  CHECK(run("verify " + (ws() / "mk.json") + " --check geroch,de --refine 3 --out " +
            (ws() / "v.json")) == 0);
  const auto j = nlohmann::json::parse(slurp(ws() / "v.json"));
  CHECK(j["passed"] == true);
  CHECK(j["checks"]["geroch"]["levels"].size() == 3);
  CHECK(j["checks"]["de"]["passed"] == true);
}

TEST_CASE("repeated runs produce identical bytes") {
  REQUIRE(run("generate --family blob --amplitude 0.3 --rmax 6 --n 129 --out " +
              (ws() / "blob.json")) == 0);
  for (const char* cmd : {"analyze", "energy", "jang"}) {
    CAPTURE(cmd);
    const std::string base = std::string(cmd) + " " + (ws() / "blob.json") + " --out ";
    REQUIRE(run(base + (ws() / "a.out"), "COLLAPSE_KIT_THREADS=1") == 0);
    REQUIRE(run(base + (ws() / "b.out"), "COLLAPSE_KIT_THREADS=8") == 0);
    CHECK(slurp(ws() / "a.out") == slurp(ws() / "b.out"));
  }
  REQUIRE(run("sweep --trials 20 --out " + (ws() / "s1.json"), "COLLAPSE_KIT_THREADS=1") == 0);
  REQUIRE(run("sweep --trials 20 --out " + (ws() / "s2.json"), "COLLAPSE_KIT_THREADS=8") == 0);
  CHECK(slurp(ws() / "s1.json") == slurp(ws() / "s2.json"));
}

TEST_CASE("analyze marks the center row as a limit") {
  REQUIRE(run("generate --family uc --K0 1 --beta 0.5 --rmax 1 --n 33 --out " +
              (ws() / "uc.json")) == 0);
  REQUIRE(run("analyze " + (ws() / "uc.json") + " --out " + (ws() / "uc.csv") + " --json " +
              (ws() / "uc_a.json")) == 0);
  const auto rows = csv_rows(ws() / "uc.csv");
  REQUIRE(rows.size() == 34);
  CHECK(rows[1][4].empty());
  CHECK(rows[1][6].empty());
  CHECK_FALSE(rows[2][4].empty());
  const auto j = nlohmann::json::parse(slurp(ws() / "uc_a.json"));
  CHECK(j["dec"]["holds"] == true);
  CHECK(j["geometry"]["H"][0].is_null());
  CHECK(j["conventions"]["mo_measure"] == "proper");
}

TEST_CASE("criterion --mode both and --malec write one file per mode") {
  REQUIRE(run("generate --family uc --K0 2 --beta 2.9 --rmax 1 --out " + (ws() / "uc2.json")) == 0);
  REQUIRE(run("criterion " + (ws() / "uc2.json") + " --mode both --out " + (ws() / "c.csv") +
              " --malec " + (ws() / "mo.csv")) == 0);
  for (const char* f : {"c.future.csv", "c.past.csv", "mo.future.csv", "mo.past.csv"}) {
    CHECK(fs::exists(ws() / f));
  }
  CHECK(slurp(ws() / "mo.future.csv").find("HYPOTHESIS VIOLATED") != std::string::npos);
  const auto rows = csv_rows(ws() / "c.future.csv");
  CHECK(rows.back()[5] == "true");
}

TEST_CASE("energy CSV columns") {
  REQUIRE(run("generate --family pg --mass 1 --rmin 0.5 --rmax 10 --out " + (ws() / "pg2.json")) == 0);
  REQUIRE(run("energy " + (ws() / "pg2.json") + " --use-family --out " + (ws() / "e.csv")) == 0);
  const auto rows = csv_rows(ws() / "e.csv");
  CHECK(rows[0] == std::vector<std::string>{"r", "E", "dE_numeric", "dE_identity", "untrapped",
                                            "monotone_ok", "bound_ok", "rigidity_flag"});
  CHECK(rows.back()[7] == "schwarzschild_candidate");
}

TEST_CASE("configuration files: values, precedence, unknown keys") {
  {
    std::ofstream cfg(ws() / "gen.toml");
    cfg << "[generate]\nfamily = \"blob\"\namplitude = 0.2\nn = 65\nrmax = 4.0\n";
  }
  REQUIRE(run("--config " + (ws() / "gen.toml") + " generate --n 33 --out " + (ws() / "g.json")) == 0);
  const auto j = nlohmann::json::parse(slurp(ws() / "g.json"));
  CHECK(j["family"]["amplitude"] == 0.2);
  CHECK(j["family"]["grid"]["count"] == 33);
  {
    std::ofstream cfg(ws() / "bad.toml");
    cfg << "[generate]\nfamily = \"blob\"\ncolour = 3\n";
  }
  CHECK(run("--config " + (ws() / "bad.toml") + " generate") == 1);
}

TEST_CASE("usage and validation errors exit 1 with a named cause") {
  CHECK(run("") == 1);
  CHECK(run("--help") == 0);
  CHECK(run("generate --family kerr") == 1);
  CHECK(slurp(ws() / "stderr.txt").find("kerr") != std::string::npos);
  CHECK(run("generate --family ts --rmin 1 --rmax 4") == 1);
  CHECK(run("criterion " + (ws() / "missing.json")) == 1);
  CHECK(slurp(ws() / "stderr.txt").find("missing.json") != std::string::npos);
  REQUIRE(run("generate --family pg --mass 1 --rmin 3 --rmax 10 --out " + (ws() / "pg.json")) == 0);
  CHECK(run("criterion " + (ws() / "pg.json")) == 1);
  CHECK(run("jang " + (ws() / "pg.json") + " --bc r1=3,v1=1.5") == 1);
  CHECK(run("jang " + (ws() / "pg.json") + " --rtol -1") == 1);
  CHECK(run("verify " + (ws() / "pg.json") + " --check nope") == 1);
  CHECK(run("criterion " + (ws() / "pg.json") + " --mode sideways") == 1);
}

TEST_CASE("verification failures exit 2") {
  // Too coarse a tolerance spoils the oracle's tolerance-response check.
  REQUIRE(run("generate --family pg --mass 1 --rmin 3 --rmax 10 --n 17 --out " +
              (ws() / "pgc.json")) == 0);
  CHECK(run("verify " + (ws() / "pgc.json") + " --check pg --rtol 0.1 --atol 0.1") == 2);
}
