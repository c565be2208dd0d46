#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ASPIRE_CLI;
const fs::path kScenarios = ASPIRE_SCENARIOS;

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("aspire_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > " + (scratch() / "stdout.txt").string() +
                          " 2> " + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("eval reproduces the triangular example") {
  const auto csv = scratch() / "eval.csv";
  const auto js = scratch() / "eval.json";
  REQUIRE(run("eval --scenario " + (kScenarios / "paper_sec2.json").string() + " --csv " +
              csv.string() + " --json " + js.string()) == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        "lottery,utility,expected_utility,expected_disutility,certain_equivalent,"
        "aspiration_equivalent,duality_residual");
  CHECK(rows[1].rfind("symmetric triangular,gamma 0.03,0.901912883,", 0) == 0);
  const auto doc = nlohmann::json::parse(slurp(js));
  CHECK(doc["command"] == "eval");
  CHECK(doc["results"][0]["expected_utility"].get<double>() == doctest::Approx(0.901912883));
  CHECK(doc["reference_comparison"][0]["within_tolerance"] == false);
  CHECK(slurp(scratch() / "stdout.txt").find("reference comparison") != std::string::npos);
}

TEST_CASE("matrix CSV has four tagged blocks") {
  const auto csv = scratch() / "matrix.csv";
  REQUIRE(run("matrix --scenario " + (kScenarios / "table2.json").string() + " --csv " +
              csv.string()) == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 4 * 4 + 3);
  CHECK(rows[0] == "EU,gamma 3,gamma 6,gamma 9");
  CHECK(rows[1].rfind("\"Beta(2,8)\",", 0) == 0);
  CHECK(rows[4].empty());
  CHECK(rows[5].rfind("EDU,", 0) == 0);
  CHECK(rows[10].rfind("CE,", 0) == 0);
  CHECK(rows[15].rfind("AE,", 0) == 0);
}

TEST_CASE("sweep output decreases in gamma") {
  const auto csv = scratch() / "sweep.csv";
  REQUIRE(run("sweep --scenario " + (kScenarios / "paper_sec2.json").string() + " --csv " +
              csv.string()) == 0);
  const auto rows = lines(slurp(csv));
  REQUIRE(rows.size() == 22);
  CHECK(rows[0] == "gamma,expected_utility,certain_equivalent,aspiration_equivalent");
  double prev_ce = 1e300;
  double prev_ae = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double g, eu, ce, ae;
    char c;
    std::istringstream in(rows[i]);
    in >> g >> c >> eu >> c >> ce >> c >> ae;
    CHECK(ce < prev_ce);
    CHECK(ae < prev_ae);
    if (g == 0.0) {
      CHECK(ce == doctest::Approx(100.0));
      CHECK(ae == doctest::Approx(100.0));
    }
    prev_ce = ce;
    prev_ae = ae;
  }
}

TEST_CASE("update-target prints the round-trip check") {
  REQUIRE(run("update-target --scenario " + (kScenarios / "paper_sec4.json").string()) == 0);
  const auto out = slurp(scratch() / "stdout.txt");
  CHECK(out.find("round-trip check") != std::string::npos);
  CHECK(out.find(": PASS") != std::string::npos);
  CHECK(out.find("WARNING tolerance exceeded") != std::string::npos);
}

TEST_CASE("allocate, dominance, approx, solve-gamma and delegate run") {
  CHECK(run("allocate --scenario " + (kScenarios / "table2.json").string()) == 0);
  CHECK(slurp(scratch() / "stdout.txt").find("Beta(4,8)  gamma 3") != std::string::npos);
  CHECK(run("dominance --scenario " + (kScenarios / "table2.json").string() + " --grid 512") == 0);
  CHECK(slurp(scratch() / "stdout.txt").find("gamma 3 utility-dominates gamma 6") !=
        std::string::npos);
  CHECK(run("approx --scenario " + (kScenarios / "paper_sec7.json").string()) == 0);
  CHECK(run("solve-gamma --scenario " + (kScenarios / "paper_sec4.json").string()) == 0);
  CHECK(run("delegate --scenario " + (kScenarios / "table2.json").string() + " --fractile 0.4") == 0);
}

TEST_CASE("exit codes") {
  const auto empty = write("empty.json", R"({"domain": {"lo": 0, "hi": 1},
      "lotteries": [{"name": "a", "kind": "uniform"}], "utilities": []})");
  CHECK(run("eval --scenario " + empty.string()) == 2);
  CHECK(slurp(scratch() / "stderr.txt").find("utilities") != std::string::npos);

  const auto broken = write("broken.json", "{ not json");
  CHECK(run("eval --scenario " + broken.string()) == 2);
  CHECK(run("eval --scenario " + (scratch() / "missing.json").string()) == 2);
  CHECK(run("eval") == 2);
  CHECK(run("frobnicate --scenario x") == 2);
  CHECK(run("sweep --scenario " + (kScenarios / "table1.json").string()) == 2);  // no gamma grid

  const auto at_bound = write("bound.json", R"({"domain": {"lo": 0, "hi": 1},
      "lotteries": [{"name": "a", "kind": "uniform"}],
      "utilities": [{"name": "u", "kind": "linear"}], "target": 1.0})");
  CHECK(run("solve-gamma --scenario " + at_bound.string()) == 3);
  CHECK(run("--help") == 0);
}

TEST_CASE("every bundled fixture is deterministic") {
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"eval", "paper_sec2.json"},       {"sweep", "paper_sec2.json"},
      {"update-target", "paper_sec4.json"}, {"eval", "table1.json"},
      {"matrix", "table2.json"},         {"allocate", "table2.json"},
      {"approx", "paper_sec7.json"},     {"dominance", "table2.json"}};
  for (const auto& [cmd, file] : jobs) {
    CAPTURE(cmd);
    const auto a = scratch() / "a.csv";
    const auto b = scratch() / "b.csv";
    const auto ja = scratch() / "a.json";
    const auto jb = scratch() / "b.json";
    const std::string base = cmd + " --scenario " + (kScenarios / file).string();
    REQUIRE(run(base + " --csv " + a.string() + " --json " + ja.string()) == 0);
    REQUIRE(run(base + " --csv " + b.string() + " --json " + jb.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(ja) == slurp(jb));
    CHECK_FALSE(slurp(a).empty());
  }
}
