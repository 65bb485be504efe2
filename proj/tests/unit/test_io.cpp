#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "common.hpp"

using namespace floq;
using test::MHz;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = std::string(FLOQ_SOURCE_DIR) + "/examples/configs/";

json load(const std::string& name)
{
    std::ifstream in(kConfigs + name);
    return json::parse(in);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("floq_io_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> run(const json& doc, const fs::path& dir, RunOptions opt = {})
{
    opt.out_dir = dir.string();
    return run_task(parse_config_json(doc), opt);
}

// Output with the wall-clock lines removed.
std::string stable_content(const fs::path& p)
{
    const std::string text = slurp(p);
    if (p.extension() == ".json") {
        json j = json::parse(text);
        j["provenance"].erase("generated");
        return j.dump();
    }
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line))
        if (line.rfind("# generated:", 0) != 0)
            out += line + "\n";
    return out;
}

json minimal_zx()
{
    return json::parse(R"({
      "units": "GHz_over_2pi",
      "task": "effective",
      "circuit": {
        "qubits": [{"omega": 12.0}, {"omega": 9.0}],
        "couplings": [{"type": "capacitive", "qubits": [1, 2], "g_c": 0.3}],
        "drives": [{"qubit": 1, "axis": "x", "tones": [{"frequency": 9.0, "amplitude": 0.5}]}]
      },
      "modes": [{"frequency": 9.0, "truncation": 4}],
      "frame": [12.0, 0.0],
      "effective": {"orders": [2], "exact": "none"}
    })");
}

std::string error_of(const json& doc)
{
    try {
        parse_config_json(doc);
    } catch (const UsageError& e) {
        return e.what();
    }
    return "";
}

int cli(const std::string& args)
{
    const std::string cmd = std::string(FLOQ_BINARY) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("minimal config parses")
{
    const auto cfg = parse_config_json(minimal_zx());
    CHECK(cfg.task == "effective");
    CHECK(cfg.mode_frequencies() == std::vector<double>{9.0});
    CHECK(cfg.circuit.qubits.size() == 2);
}

TEST_CASE("schema violations are reported")
{
    auto doc = minimal_zx();
    doc["circuit"]["drives"][0]["tones"][0]["frequency"] = 4.4;
    const auto e1 = error_of(doc);
    CHECK(e1.find("/circuit/drives/0/tones/0") != std::string::npos);

    doc = minimal_zx();
    doc["modes"][0]["truncaton"] = 4;
    CHECK(error_of(doc).find("truncaton") != std::string::npos);

    doc = minimal_zx();
    doc.erase("units");
    CHECK(error_of(doc).find("units") != std::string::npos);

    doc = minimal_zx();
    doc["units"] = "MHz";
    CHECK_FALSE(error_of(doc).empty());
}

TEST_CASE("qubit state labels")
{
    CHECK(parse_qubit_state("11", 2) == 0);
    CHECK(parse_qubit_state("10", 2) == 1);
    CHECK(parse_qubit_state("01", 2) == 2);
    CHECK(parse_qubit_state("00", 2) == 3);
    for (Index a = 0; a < 8; ++a)
        CHECK(parse_qubit_state(qubit_state_label(a, 3), 3) == a);
    CHECK_THROWS_AS(parse_qubit_state("1", 2), UsageError);
    CHECK_THROWS_AS(parse_qubit_state("12", 2), UsageError);
}

TEST_CASE("effective task reproduces the ZX coupling")
{
    const auto dir = scratch("table1");
    RunOptions opt;
    opt.order = 6;
    run(load("table1_zx.json"), dir, opt);
    const json out = json::parse(slurp(dir / "effective.json"));
    bool seen = false;
    for (auto& r : out["results"])
        if (r["method"] == "series" && r["order"] == 6) {
            CHECK(std::abs(r["couplings"]["ZX"].get<double>()) == doctest::Approx(20.860 * MHz).epsilon(0.005 / 20.86));
            seen = true;
        }
    CHECK(seen);
    CHECK(out["provenance"]["units"] == kUnits);
    CHECK(out["provenance"]["orders"] == std::vector<int>{6});

    const std::string csv = slurp(dir / "effective.csv");
    CHECK(csv.rfind("# units: GHz_over_2pi\n", 0) == 0);
    CHECK(csv.find("method,order,term,value_GHz\n") != std::string::npos);
}

TEST_CASE("fan sweep columns")
{
    auto doc = load("fig2a_quasienergy_fan.json");
    doc["sweep"]["axes"][0]["values"] = {{"start", 8.5}, {"stop", 9.5}, {"num", 3}};
    const auto dir = scratch("fan");
    RunOptions opt;
    opt.threads = 2;
    run(doc, dir, opt);
    std::istringstream in(slurp(dir / "sweep.csv"));
    std::string line;
    std::vector<std::string> body;
    while (std::getline(in, line))
        if (line.rfind("# ", 0) != 0)
            body.push_back(line);
    REQUIRE(body.size() == 4);
    std::string expect = "point,/modes/0/frequency";
    for (int i = 1; i <= 8; ++i)
        expect += ",eps_" + std::to_string(i) + "_GHz";
    CHECK(body[0] == expect + ",status");
    for (size_t i = 1; i < body.size(); ++i)
        CHECK(body[i].substr(body[i].size() - 3) == ",ok");
    const json j = json::parse(slurp(dir / "sweep.json"));
    REQUIRE(j["points"].size() == 3);
    CHECK(j["columns"].size() == 8);
    CHECK(j["points"][2]["axes"][0] == 9.5);
}

TEST_CASE("honeycomb validate writes diagnostics within the ratio bound")
{
    const auto dir = scratch("module");
    run(load("honeycomb_driven_qubit_module.json"), dir);
    const json out = json::parse(slurp(dir / "module.json"));
    CHECK(out["diagnostics"]["pass"] == true);
    CHECK(out["diagnostics"]["max_ratio"].get<double>() <= 0.1);
    CHECK(out["edges"].size() == 3);
    CHECK(fs::exists(dir / "diagnostics.csv"));
}

TEST_CASE("outputs are deterministic apart from the timestamp")
{
    auto doc = load("table1_zx.json");
    doc["modes"][0]["truncation"] = 4;
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    RunOptions one, two;
    two.threads = 3;
    const auto files = run(doc, a, one);
    run(doc, b, two);
    REQUIRE_FALSE(files.empty());
    for (auto& f : files) {
        const auto name = fs::path(f).filename();
        CHECK(stable_content(a / name) == stable_content(b / name));
    }

    RunOptions o;
    const auto h0 = config_hash(doc, o);
    CHECK(h0 == config_hash(doc, o));
    auto changed = doc;
    changed["circuit"]["couplings"][0]["g_c"] = 0.31;
    CHECK(config_hash(changed, o) != h0);
    o.order = 4;
    CHECK(config_hash(doc, o) != h0);
}

TEST_CASE("exit codes")
{
    const auto dir = scratch("cli");
    const auto good = dir / "good.json";
    std::ofstream(good) << minimal_zx().dump(2);
    CHECK(cli("effective --config " + good.string() + " --out-dir " + dir.string()) == 0);

    auto bad = minimal_zx();
    bad["modes"][0]["truncaton"] = 4;
    const auto bad_path = dir / "bad.json";
    std::ofstream(bad_path) << bad.dump(2);
    CHECK(cli("--config " + bad_path.string() + " --out-dir " + dir.string()) == 1);
    CHECK(cli("--config " + (dir / "missing.json").string()) == 1);
    CHECK(cli("--config " + good.string() + " --order 0 --out-dir " + dir.string()) == 1);

    // The declared slow states are not degenerate in this frame.
    auto physics = minimal_zx();
    physics["frame"] = {11.9, 0.0};
    physics["slow_states"] = json::parse(
        R"([{"state": "11", "m": [-1]}, {"state": "10", "m": [0]},
            {"state": "01", "m": [-1]}, {"state": "00", "m": [0]}])");
    const auto physics_path = dir / "physics.json";
    std::ofstream(physics_path) << physics.dump(2);
    CHECK(cli("--config " + physics_path.string() + " --out-dir " + dir.string()) == 2);
}

}
