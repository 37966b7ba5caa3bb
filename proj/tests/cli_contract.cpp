// End-to-end checks of the command-line tool: exit codes, emitted JSON, and
// file outputs, run through a shell the way a user would.
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

int failures = 0;

void require(bool cond, const std::string& what) {
  if (!cond) {
    ++failures;
    std::printf("FAIL: %s\n", what.c_str());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code = -1;
  std::string out;
};

// Runs the tool with stdout captured and stderr silenced.
Result run(const std::string& args) {
  const std::string out_path = "/tmp/sheetgrasp_cli_out.txt";
  const std::string cmd =
      std::string(CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  std::remove(out_path.c_str());
  return r;
}

const std::string kScene = std::string(DATA_DIR) + "/scene_example.json";

}  // namespace

int main() {
  // Feasible plan: exit 0 and a parseable JSON document.
  {
    const Result r = run("plan --strategy top_grasp --scene " + kScene + " --x-mm 90");
    require(r.code == 0, "feasible plan should exit 0, got " + std::to_string(r.code));
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    require(!j.is_discarded() && j.at("verdict") == "feasible",
            "plan output must carry a feasible verdict");
    require(j.at("stages").size() == 4, "press plan should have four stages");
  }

  // Model-infeasible plan: exit 2 with the reason in the JSON.
  {
    const Result r = run("plan --strategy wall_grasp --scene " + kScene +
                         " --tilt-deg 60 --distance-mm 100");
    require(r.code == 2, "infeasible plan should exit 2, got " + std::to_string(r.code));
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    require(!j.is_discarded() && j.at("reason") == "bulge_out_of_reach",
            "far wall case must report bulge_out_of_reach");
  }

  // Usage errors: missing file, unknown flag, malformed axis.
  {
    require(run("plan --strategy top_grasp --scene /tmp/no_such_scene.json --x-mm 90").code == 1,
            "missing scene file should exit 1");
    require(run("plan --strategy top_grasp --scene " + kScene + " --frobnicate").code == 1,
            "unknown flag should exit 1");
    require(run("sweep --strategy top_grasp --scene " + kScene + " --axis gsm=").code == 1,
            "empty axis should exit 1");
    require(run("plan --strategy wall_grasp --scene " + kScene +
                " --tilt-deg 60 --distance-mm 100 --wrinkle-mm 500").code == 1,
            "wrinkle longer than the sheet should exit 1");
  }

  // A scene without the needed constraint is an input error, not a verdict.
  {
    const std::string path = "/tmp/sheetgrasp_cli_bare_scene.json";
    nlohmann::json scene = nlohmann::json::parse(slurp(kScene));
    scene["constraints"] = nlohmann::json::array();
    std::ofstream(path) << scene.dump(2) << "\n";
    const Result r = run("plan --strategy wall_grasp --scene " + path +
                         " --tilt-deg 60 --distance-mm 50");
    require(r.code == 1, "wall grasp without a wall should exit 1, got " +
                             std::to_string(r.code));
    std::remove(path.c_str());
  }

  // Strategy selection: feasible case exits 0, impossible case exits 2.
  {
    const Result ok = run("select --gsm 80 --surface good");
    require(ok.code == 0, "routine selection should exit 0");
    const auto j = nlohmann::json::parse(ok.out, nullptr, false);
    require(!j.is_discarded() && !j.at("ranked").empty(), "selection must emit a ranking");
    require(run("select --gsm 300 --size exceeds_workspace").code == 2,
            "unsatisfiable requirements should exit 2");
  }

  // Sweep writes both the CSV and the metadata file.
  {
    const std::string csv = "/tmp/sheetgrasp_cli_map.csv";
    const std::string meta = "/tmp/sheetgrasp_cli_map.json";
    const Result r = run("sweep --strategy top_grasp --scene " + kScene +
                         " --axis x_mm=50:130:40 --out-csv " + csv + " --out-meta " + meta);
    require(r.code == 0, "sweep should exit 0");
    const std::string body = slurp(csv);
    require(body.rfind("x_mm,feasible,reason", 0) == 0, "sweep CSV must start with its header");
    require(!slurp(meta).empty(), "sweep must write the metadata file");
    const auto j = nlohmann::json::parse(slurp(meta), nullptr, false);
    require(!j.is_discarded() && j.at("axes").size() == 1, "metadata must list the axes");
    std::remove(csv.c_str());
    std::remove(meta.c_str());
  }

  // Calibration from the sample data set.
  {
    const Result r = run("calibrate --samples " + std::string(DATA_DIR) +
                         "/cantilever_80gsm.csv --gsm 80");
    require(r.code == 0, "calibrate should exit 0");
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    require(!j.is_discarded() && j.at("EI").get<double>() > 0.0,
            "calibrate must report a positive stiffness");
  }

  // Simulation: feasible plan writes a trace, infeasible exits 2.
  {
    const std::string csv = "/tmp/sheetgrasp_cli_trace.csv";
    const Result r = run("simulate --strategy edge_grasp --scene " + kScene +
                         " --protrusion-mm 60 --out-csv " + csv);
    require(r.code == 0, "simulate should exit 0");
    require(slurp(csv).rfind("time,stage,F_Z,F_Y", 0) == 0,
            "trace CSV must start with its header");
    std::remove(csv.c_str());
    require(run("simulate --strategy wall_grasp --scene " + kScene +
                " --tilt-deg 90 --distance-mm 50").code == 2,
            "simulating an infeasible plan should exit 2");
  }

  // Gripper geometry report.
  {
    const Result r = run("scoop-geometry --tilt-deg 5");
    require(r.code == 0, "scoop-geometry should exit 0");
    const auto j = nlohmann::json::parse(r.out, nullptr, false);
    require(!j.is_discarded() && j.at("w_min_mm").get<double>() > 80.0,
            "geometry report must include the minimum span");
  }

  if (failures == 0) {
    std::printf("all CLI contract checks passed\n");
    return 0;
  }
  std::printf("%d CLI contract checks failed\n", failures);
  return 1;
}
