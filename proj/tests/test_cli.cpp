#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "rulemon/cli/commands.hpp"
#include "rulemon/cli/config.hpp"
#include "rulemon/monitor/dump.hpp"
#include "support/scenarios.hpp"

using namespace rulemon;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err, [&env](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("rulemon_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

}  // namespace

TEST_CASE("compile prints the state count") {
  const auto r = run({"compile", "G a"});
  CHECK(r.code == 0);
  CHECK(r.out == "2 states\n");
  CHECK(run({"compile", "--rule", "zipper_merge"}).code == 0);
}

TEST_CASE("compile reports parse errors with their position") {
  const auto r = run({"compile", "a U"});
  CHECK(r.code == 1);
  CHECK(r.err.find("offset 3") != std::string::npos);
  CHECK(run({"compile", "--rule", "nope"}).code == 1);
  CHECK(run({"compile"}).code == 1);
  CHECK(run({"frobnicate"}).code != 0);
}

TEST_CASE("compile dump of no_right_passing matches the golden file and parses back") {
  const auto dir = scratch_dir("golden");
  const auto path = (dir / "nrp.txt").string();
  const auto r = run({"compile", "--rule", "no_right_passing", "--dump", "text", "-o", path});
  REQUIRE(r.code == 0);
  CHECK(r.out == "4 states\n");
  const std::string text = slurp(path);
  CHECK(text == slurp(fs::path(RULEMON_TEST_DATA_DIR) / "golden" / "no_right_passing.txt"));
  CHECK(monitor::dump_text(monitor::parse_text_dump(text, path)) == text);
  const auto dot = run({"compile", "G a", "--dump", "dot"});
  CHECK(dot.out.find("digraph") != std::string::npos);
  CHECK(dot.err == "2 states\n");
}

TEST_CASE("eval over a proposition CSV") {
  const auto dir = scratch_dir("eval");
  write(dir / "ok.csv", "a\n1\n1\n1\n");
  write(dir / "bad.csv", "a\n1\n0\n1\n");
  CHECK(run({"eval", "G a", "--trace", (dir / "ok.csv").string()}).out == "satisfied\n");
  CHECK(run({"eval", "G a", "--trace", (dir / "bad.csv").string()}).out == "violated at position 1\n");

  write(dir / "overtaken.csv",
        "right_ij,near_ij,accelerate_i\n"
        "0,0,1\n"
        "1,0,1\n"
        "1,1,0\n"
        "1,1,1\n"
        "0,0,0\n");
  CHECK(run({"eval", "--rule", "being_overtaken", "--trace", (dir / "overtaken.csv").string()}).out ==
        "violated at position 3\n");

  const auto missing = run({"eval", "G b", "--trace", (dir / "ok.csv").string()});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("ok.csv:1: missing column 'b'") != std::string::npos);
  write(dir / "junk.csv", "a\n1\nx\n");
  const auto junk = run({"eval", "G a", "--trace", (dir / "junk.csv").string()});
  CHECK(junk.code == 1);
  CHECK(junk.err.find("junk.csv:3:") != std::string::npos);
}

TEST_CASE("check writes reports and sets the exit code") {
  const auto dir = scratch_dir("check");
  const auto [clean_map, clean_traj] = testing::write_scenario(testing::clean(), dir.string(), "clean");
  const auto [tail_map, tail_traj] = testing::write_scenario(testing::tailgate(), dir.string(), "tailgate");

  const auto out_clean = (dir / "out_clean").string();
  const auto r = run({"check", "--map", clean_map, "--traj", clean_traj, "--rules", "all", "--out", out_clean});
  CHECK(r.code == 0);
  const auto report = nlohmann::json::parse(slurp(fs::path(out_clean) / "report.json"));
  CHECK(report.size() == 6);
  for (const auto& [name, entry] : report.items()) {
    CHECK(entry["once_per_agent"] == 0.0);
    CHECK(entry["per_time_total"] == 0.0);
    CHECK(entry["violations"].empty());
  }
  CHECK(fs::exists(fs::path(out_clean) / "metrics.csv"));
  CHECK(slurp(fs::path(out_clean) / "metrics.csv").rfind("# generated ", 0) == 0);

  const auto out_tail = (dir / "out_tail").string();
  const auto t = run({"check", "--map", tail_map, "--traj", tail_traj, "--out", out_tail, "--deterministic"});
  CHECK(t.code == 0);
  const auto tail_report = nlohmann::json::parse(slurp(fs::path(out_tail) / "report.json"));
  CHECK(tail_report["safe_distance"]["per_time_total"].get<double>() > 0.0);
  CHECK(slurp(fs::path(out_tail) / "metrics.csv").rfind("rule,metric,value\n", 0) == 0);

  CHECK(run({"check", "--map", tail_map, "--traj", tail_traj, "--out", out_tail, "--fail-on-violation"}).code == 2);
  CHECK(run({"check", "--map", clean_map, "--traj", clean_traj, "--out", out_clean, "--fail-on-violation"}).code == 0);

  const auto unknown = run({"check", "--map", tail_map, "--traj", tail_traj, "--rules", "no_such_rule"});
  CHECK(unknown.code == 1);
  CHECK(unknown.err.find("unknown rule") != std::string::npos);

  const auto only = (dir / "only").string();
  CHECK(run({"check", "--map", tail_map, "--traj", tail_traj, "--rules", "safe_distance,safe_lane_change", "--out",
             only, "--report-format", "json"})
            .code == 0);
  CHECK(nlohmann::json::parse(slurp(fs::path(only) / "report.json")).size() == 2);
  CHECK_FALSE(fs::exists(fs::path(only) / "metrics.csv"));
}

TEST_CASE("check errors name the offending file") {
  const auto dir = scratch_dir("errors");
  const auto [map, traj] = testing::write_scenario(testing::clean(), dir.string(), "clean");
  write(dir / "broken.csv", "track_id,frame,timestamp_ms,x,y,psi_rad,length,width\n1,0,0,abc,0,0,4.5,1.8\n");
  const auto r = run({"check", "--map", map, "--traj", (dir / "broken.csv").string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("broken.csv:2") != std::string::npos);
  write(dir / "broken.json", "{\"lanes\": 3}");
  const auto m = run({"check", "--map", (dir / "broken.json").string(), "--traj", traj, "--out", dir.string()});
  CHECK(m.code == 1);
  CHECK(m.err.find("broken.json") != std::string::npos);
  const auto dt = run({"check", "--map", map, "--traj", traj, "--out", dir.string(), "--dt", "0.04"});
  CHECK(dt.code == 1);
  CHECK(dt.err.find("does not match") != std::string::npos);
  CHECK(run({"check", "--map", map, "--traj", traj, "--out", dir.string(), "--dt", "0.1"}).code == 0);
  const auto env = run({"check", "--map", map, "--traj", traj, "--out", dir.string()}, {{"RULEMON_WORKERS", "many"}});
  CHECK(env.code == 1);
  CHECK(env.err.find("RULEMON_WORKERS") != std::string::npos);
  const auto param = run({"check", "--map", map, "--traj", traj, "--param", "rho=3"});
  CHECK(param.code == 1);
  CHECK(param.err.find("unknown parameter 'rho'") != std::string::npos);
}

TEST_CASE("config file, environment and flags combine with flags winning") {
  const auto dir = scratch_dir("config");
  const auto [map, traj] = testing::write_scenario(testing::tailgate(), dir.string(), "tailgate");
  // A 0.1 s reaction time makes the 15 m gap safe: 2 + 400/12 - 400/12 = 2 m.
  const std::string config = (dir / "run.json").string();
  write(config, nlohmann::json{{"map", map},
                               {"trajectories", traj},
                               {"params", {{"reaction_time", 0.1}}},
                               {"output_dir", (dir / "out").string()},
                               {"workers", 2}}
                    .dump());
  auto r = run({"check", "--config", config, "--fail-on-violation"}, {{"RULEMON_WORKERS", "3"}});
  CHECK(r.code == 0);
  r = run({"check", "--config", config, "--fail-on-violation", "--param", "reaction_time=1"});
  CHECK(r.code == 2);
  r = run({"check", "--config", config, "--fail-on-violation", "--param", "safe_distance.reaction_time=1"});
  CHECK(r.code == 2);
  r = run({"check", "--config", config, "--param", "no_such_rule.reaction_time=1"});
  CHECK(r.code == 1);
  CHECK(r.err.find("unknown rule") != std::string::npos);

  write(dir / "bad.json", "{\"mapp\": \"x\"}");
  r = run({"check", "--config", (dir / "bad.json").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("bad.json: unknown key 'mapp'") != std::string::npos);
}

TEST_CASE("config parsing") {
  const auto c = cli::parse_config_json(
      R"({"rules": ["safe_distance"], "params": {"delta_near": 4}, "rule_params": {"zipper_merge": {"delta_rem": 55}},
          "format": "interaction", "workers": 8, "report_formats": ["csv"], "agent_denominator": "instantiated",
          "dt": 0.1, "prune": false})",
      "c.json");
  CHECK(c.rules == std::vector<std::string>{"safe_distance"});
  CHECK(c.params.at("delta_near") == 4.0);
  CHECK(c.rule_params.at("zipper_merge").at("delta_rem") == 55.0);
  CHECK(c.format == world::TrajectoryFormat::Interaction);
  CHECK(c.workers == 8);
  CHECK(c.denominator == engine::AgentDenominator::InstantiatedAgents);
  CHECK_FALSE(c.prune);
  CHECK(cli::effective_params(c).delta_near == 4.0);
  CHECK_THROWS_AS((void)cli::parse_config_json(R"({"workers": 0})"), cli::ConfigError);
  CHECK_THROWS_AS((void)cli::parse_config_json(R"({"params": {"n_dense": 2.5}})"), cli::ConfigError);
  CHECK_THROWS_AS((void)cli::parse_config_json(R"({"params": {"delta_near": "5"}})"), cli::ConfigError);
  CHECK_THROWS_AS((void)cli::parse_config_json("{"), cli::ConfigError);
  cli::RunConfig r;
  cli::apply_param_override(r, "being_overtaken.delta_near=2.5");
  CHECK(r.rule_params.at("being_overtaken").at("delta_near") == 2.5);
  CHECK(cli::resolve_rules(r)[4].params.at("delta_near") == 2.5);
  CHECK_THROWS_AS(cli::apply_param_override(r, "delta_near"), cli::ConfigError);
  CHECK_THROWS_AS(cli::apply_param_override(r, "delta_near=x"), cli::ConfigError);
}

TEST_CASE("deterministic reports are byte-identical across runs and worker counts") {
  const auto dir = scratch_dir("determinism");
  const auto [map, traj] = testing::write_scenario(testing::right_pass(testing::RightPassVariant::Dense), dir.string(), "dense");
  std::vector<std::string> outputs;
  for (const char* workers : {"1", "8", "1", "8"}) {
    const auto out = (dir / ("out" + std::to_string(outputs.size()))).string();
    REQUIRE(run({"check", "--map", map, "--traj", traj, "--out", out, "--deterministic", "--workers", workers}).code == 0);
    outputs.push_back(slurp(fs::path(out) / "report.json") + slurp(fs::path(out) / "metrics.csv") +
                      slurp(fs::path(out) / "violations.csv"));
  }
  for (const auto& o : outputs) CHECK(o == outputs.front());
}

TEST_CASE("labels dump") {
  const auto dir = scratch_dir("labels");
  const auto [map, traj] = testing::write_scenario(testing::tailgate(), dir.string(), "tailgate");
  auto r = run({"labels", "--map", map, "--traj", traj, "--agents", "1:2", "--props", "in_direct_front_ij,sd_front_i"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("frame,tuple,proposition,value\n0,1:2,in_direct_front_ij,1\n", 0) == 0);
  CHECK(r.out.find("50,1:2,sd_front_i,0\n") != std::string::npos);

  r = run({"labels", "--map", map, "--traj", traj});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("0,2,motorway_i,1\n") != std::string::npos);
  CHECK(r.out.find("_ij") == std::string::npos);

  r = run({"labels", "--map", map, "--traj", traj, "--rule", "being_overtaken", "--agents", "1:2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("near_ij") != std::string::npos);

  CHECK(run({"labels", "--map", map, "--traj", traj, "--rule", "being_overtaken"}).code == 1);
  CHECK(run({"labels", "--map", map, "--traj", traj, "--props", "behind_ij"}).code == 1);
  CHECK(run({"labels", "--map", map, "--traj", traj, "--agents", "1:99"}).code == 1);
}
