#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "hyperperc/experiment.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and returns exit status and stdout.
Result cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + HYPERPERC_CLI + std::string(" ") + args +
                          " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string fixture(const char* name) { return std::string(HYPERPERC_FIXTURES) + "/" + name; }

const fs::path& scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "hyperperc_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

}  // namespace

TEST_CASE("generate is byte-reproducible") {
  const auto a = scratch() / "a.json", b = scratch() / "b.json";
  const std::string base = "generate --n 1000 --alpha 0.7 --nu 1 --seed 1 --out ";
  REQUIRE(cli(base + a.string()).code == 0);
  REQUIRE(cli(base + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  const Result r = cli(base + a.string());
  const json doc = json::parse(r.out);
  CHECK(doc["N"] == 1000);
  CHECK(doc.contains("edge_count"));
  CHECK(doc.contains("mean_degree"));
  CHECK(doc.contains("max_degree"));
  CHECK(doc["config"]["options"]["seed"] == "1");
}

TEST_CASE("exit codes") {
  CHECK(cli("generate --n 0 --out " + (scratch() / "x.json").string()).code == 2);
  CHECK(cli("generate --alpha -1 --n 10 --out " + (scratch() / "x.json").string()).code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("").code == 2);
  CHECK(cli("run --graph " + (scratch() / "missing.json").string()).code == 3);
  CHECK(cli("run --graph " + fixture("k5.json") + " --rho 0").code == 2);
  CHECK(cli("run --graph " + fixture("k5.json") + " --p 0.5 --p-mult 2").code == 2);

  const auto bad = scratch() / "corrupt.json";
  std::string text = slurp(fixture("k5.json"));
  std::ofstream(bad) << text.substr(0, text.size() / 2);
  CHECK(cli("stats --graph " + bad.string()).code == 3);

  // nu = 20 bands stall near t = 5.8, so C = 5 cannot be reached
  CHECK(cli("bands --n 20000 --alpha 0.7 --nu 20 --big-c 5").code == 4);
  CHECK(cli("bands --n 20000 --alpha 0.7 --big-c auto --c-block 1e-12").code == 4);
  CHECK(cli("bands --n 20000 --alpha 0.7 --big-c nonsense").code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("run extremes") {
  const std::string g = (scratch() / "g.json").string();
  REQUIRE(cli("generate --n 2000 --alpha 0.75 --seed 4 --out " + g).code == 0);
  const json all = json::parse(cli("run --graph " + g + " --p 1").out);
  CHECK(all["af_size"] == 2000);
  CHECK(all["rounds"] == 0);
  const json none = json::parse(cli("run --graph " + g + " --p 0").out);
  CHECK(none["af_size"] == 0);
  CHECK(none["config"]["model"]["N"] == 2000);
  CHECK_FALSE(none["config"]["options"].contains("n"));

  const auto csv = scratch() / "run.csv";
  REQUIRE(cli("run --graph " + g + " --p-mult 3 --format csv --out " + csv.string()).code == 0);
  std::istringstream in(slurp(csv));
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  CHECK(header == hyperperc::csv_header());
  const auto row = hyperperc::parse_csv_line(line);
  CHECK(row.p_multiplier == 3.0);
  CHECK(fs::exists(csv.string() + ".config.json"));
}

TEST_CASE("stats on fixtures") {
  const json k5 = json::parse(cli("stats --graph " + fixture("k5.json")).out);
  CHECK(k5["N"] == 5);
  CHECK(k5["edge_count"] == 10);
  CHECK(k5["clustering"].get<double>() == doctest::Approx(1.0));
  CHECK(k5["l1"] == 5);
  const json none = json::parse(cli("stats --graph " + fixture("edgeless.json")).out);
  CHECK(none["edge_count"] == 0);
  CHECK(none["clustering"].get<double>() == 0.0);
  CHECK(none["l1"] == 1);
  CHECK(none.contains("degree_histogram"));
  CHECK(none.contains("hill_exponent"));
  CHECK(none.contains("band_census"));
}

TEST_CASE("sweep output") {
  const auto a = scratch() / "s1.csv", b = scratch() / "s2.csv";
  const std::string args =
      "sweep --n 1500 --alpha 0.7 0.8 --p-mult 0.1 10 --rho 1 0.5 --r 2 --seeds 2 --no-timing --quiet";
  REQUIRE(cli(args + " --out " + a.string()).code == 0);
  REQUIRE(cli(args + " --workers 2 --out " + b.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  std::istringstream in(slurp(a));
  std::string line;
  std::getline(in, line);
  CHECK(line == hyperperc::csv_header());
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16);
  const json cfg = json::parse(slurp(a.string() + ".config.json"));
  CHECK(cfg["rows"] == 16);
  CHECK(cfg["command"] == "sweep");

  const json env = json::parse(slurp(cli(args + " --out " + a.string(), "HYPERPERC_WORKERS=3").code == 0
                                         ? a.string() + ".config.json"
                                         : "/nonexistent"));
  CHECK(env["options"]["workers"] == "3");

  const json js = json::parse(cli("sweep --n 800 --p-mult 1 --format json --no-timing --quiet").out);
  CHECK(js["rows"].size() == 1);
  CHECK(js["rows"][0]["N"] == 800);
}

TEST_CASE("config file") {
  const auto cfg = scratch() / "run.toml";
  std::ofstream(cfg) << "[generate]\nn = 600\nalpha = 0.8\nseed = 9\n";
  const auto g = scratch() / "cfg.json";
  const Result r = cli("--config " + cfg.string() + " generate --out " + g.string());
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["N"] == 600);
  CHECK(doc["config"]["model"]["alpha"] == 0.8);
}

TEST_CASE("bands output") {
  const json d = json::parse(cli("bands --n 20000 --alpha 0.7 --nu 20 --big-c 6.0 --rho 1 --r 1").out);
  for (const char* key : {"t", "T", "C", "theta_i", "B_i", "K_i", "census", "S_i", "Theta_i",
                          "error_sums", "flags", "C_conditions"}) {
    CHECK(d.contains(key));
  }
  const auto t = d["t"].get<std::vector<double>>();
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] < t[i - 1]);
  const int T = d["T"];
  CHECK(T >= 1);
  CHECK(T <= 3.0 * std::log(2.0 * std::log(1000.0)) / std::log(1 / 0.7) + 10.0);
  CHECK(d["theta_i"].size() == static_cast<std::size_t>(T));

  const json a = json::parse(cli("bands --n 20000 --alpha 0.7").out);
  CHECK(a["T"] == 0);
  CHECK(a["C"].get<double>() > 100.0);
}
