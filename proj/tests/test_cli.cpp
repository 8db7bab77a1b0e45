#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sandtorsor/io.hpp"
#include "sandtorsor/verify.hpp"

using namespace sandtorsor;
namespace fs = std::filesystem;

namespace {

const std::string kCli = SANDPILE_CLI;
const std::string kData = SANDPILE_DATA;

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args, const std::string& env = {}) {
  fs::path out = fs::temp_directory_path() / ("sandpile_cli_" + std::to_string(::getpid()) + ".out");
  std::string cmd = env + (env.empty() ? "" : " ") + kCli + " " + args + " > " + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  fs::remove(out);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

Json strip_time(Json j) {
  j.erase("wallTimeSeconds");
  return j;
}

}  // namespace

TEST_CASE("graph, ribbon and matroid JSON round trip", "[io]") {
  auto rg = ribbon_from_json(read_json_file(data("k4e.json")));
  CHECK(ribbon_from_json(ribbon_to_json(rg)) == rg);
  CHECK(graph_from_json(graph_to_json(rg.graph())) == rg.graph());
  auto m = matroid_from_json(read_json_file(data("ex66_matroid.json")));
  auto back = matroid_from_json(matroid_to_json(m));
  CHECK(back.labels() == m.labels());
  CHECK(back.bases() == m.bases());
  CHECK_THROWS_AS(tree_from_json(rg.graph(), Json::array({"sa", "cs"})), InputError);
  CHECK_THROWS_AS(read_json_file(data("missing.json")), InputError);
}

TEST_CASE("CLI reproduces the routed tree and the BBY example", "[cli]") {
  auto route = run_cli("rotor route " + data("k4e.json") + " --tree " + data("k4e_tree.json") + " --sink s --chip c --trace");
  REQUIRE(route.code == 0);
  auto j = Json::parse(route.out);
  CHECK(j.at("tree") == Json::array({"ac", "e1", "sa"}));
  CHECK(j.at("trace").size() == 2);

  auto bby = run_cli("bby act " + data("ex66_matroid.json") + " --basis " + data("ex66_basis.json") + " --element e3");
  REQUIRE(bby.code == 0);
  CHECK(Json::parse(bby.out).at("result") == Json::array({"e1", "e3", "e4"}));

  auto group = run_cli("group " + data("k4e.json"));
  REQUIRE(group.code == 0);
  CHECK(Json::parse(group.out).at("order") == 8);
}

TEST_CASE("CLI exit codes", "[cli]") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("group " + data("missing.json")).code == 2);
  CHECK(run_cli("act " + data("triple_edge_torus.json") + " --tree " + data("k4e_tree.json") + " --divisor " +
                data("k4e_chip.json"))
            .code == 2);
  CHECK(run_cli("verify nonsense").code == 2);
  CHECK(run_cli("verify torsor --max-edges 3").code == 0);
}

TEST_CASE("verify reports follow the schema and are deterministic", "[cli][report]") {
  fs::path dir = fs::temp_directory_path();
  std::string a = (dir / "sandpile_report_a.json").string(), b = (dir / "sandpile_report_b.json").string();
  for (std::string suite : {"torsor", "consistency", "telescope", "unicycle", "matroid"}) {
    std::string args = "verify " + suite + " --max-edges 4 --max-ground-set 6 --matroid-graph-edges 3";
    REQUIRE(run_cli(args + " --report " + a).code == 0);
    REQUIRE(run_cli(args + " --report " + b, "SANDPILE_WORKERS=3").code == 0);
    Json ja = read_json_file(a), jb = read_json_file(b);
    INFO(suite);
    CHECK_FALSE(report_schema_problem(ja).has_value());
    CHECK(strip_time(ja) == strip_time(jb));
  }
  fs::remove(a);
  fs::remove(b);
  Json broken = {{"schema", "other"}};
  CHECK(report_schema_problem(broken).has_value());
}

TEST_CASE("run configuration validation", "[report]") {
  RunConfig cfg;
  cfg.suite = "torsor";
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), InputError);
}
