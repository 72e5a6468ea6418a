#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run_lab(const std::string& args, const std::string& env = "") {
    const std::string cmd =
        env + (env.empty() ? "" : " ") + LAB_BINARY " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

fs::path fresh_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("lab_cli_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json record(const fs::path& dir) { return json::parse(slurp(dir / "run_record.json")); }

}  // namespace

TEST_CASE("bad invocations exit with the configuration code") {
    CHECK(run_lab("") != 0);
    const fs::path d = fresh_dir("unknown_scenario");
    CHECK(run_lab("no_such_scenario --out " + d.string()) == 2);
}

TEST_CASE("unknown config keys are rejected and recorded") {
    const fs::path d = fresh_dir("unknown_key");
    CHECK(run_lab("hilbert_probe --set nonsense=1 --out " + d.string()) == 2);
    const json rec = record(d);
    CHECK(rec["status"] == "config_error");
    CHECK(rec["error"].get<std::string>().find("nonsense") != std::string::npos);
}

TEST_CASE("numerical failures exit with their own code") {
    // the Cauchy profile has nonnegative initial slope at every default
    // probe, so the blow-up estimate has nothing to report
    const fs::path d = fresh_dir("numeric");
    CHECK(run_lab("blowup --set data=cauchy --out " + d.string()) == 3);
    const json rec = record(d);
    CHECK(rec["status"] == "numeric_error");
    CHECK(!rec["error"].get<std::string>().empty());
}

TEST_CASE("a healthy run writes tables, metrics, and the record") {
    const fs::path d = fresh_dir("tables");
    CHECK(run_lab("oracle_tables --out " + d.string()) == 0);
    const json rec = record(d);
    CHECK(rec["status"] == "ok");
    CHECK(rec["scenario"] == "oracle_tables");
    CHECK(rec["wall_seconds"].get<double>() >= 0.0);
    CHECK(rec["metrics"].is_object());
    CHECK(!rec["metrics"].empty());
    const std::string csv = slurp(d / "selfsim.csv");
    CHECK(csv.rfind("x,", 0) == 0);  // header row first
    CHECK(csv.find('\n') != std::string::npos);
}

TEST_CASE("identical configurations reproduce identical bytes") {
    const fs::path d1 = fresh_dir("repro1"), d2 = fresh_dir("repro2");
    CHECK(run_lab("characteristics_trace --set data=cauchy --set t=0.5 --out " + d1.string()) ==
          0);
    CHECK(run_lab("characteristics_trace --set data=cauchy --set t=0.5 --out " + d2.string()) ==
          0);
    CHECK(slurp(d1 / "trace.csv") == slurp(d2 / "trace.csv"));
}

TEST_CASE("the seed steers random scenarios and is honored from the environment") {
    const fs::path a = fresh_dir("seed_a"), b = fresh_dir("seed_b"), c = fresh_dir("seed_c");
    CHECK(run_lab("hamiltonian_verify --out " + a.string(), "LAB_SEED=1") == 0);
    CHECK(run_lab("hamiltonian_verify --out " + b.string(), "LAB_SEED=1") == 0);
    CHECK(run_lab("hamiltonian_verify --out " + c.string(), "LAB_SEED=2") == 0);
    CHECK(slurp(a / "fields.csv") == slurp(b / "fields.csv"));
    CHECK(slurp(a / "fields.csv") != slurp(c / "fields.csv"));
    CHECK(record(a)["seed"] == 1);
    CHECK(record(c)["seed"] == 2);

    // --set seed=... does the same through the config channel
    const fs::path e = fresh_dir("seed_e");
    CHECK(run_lab("hamiltonian_verify --set seed=2 --out " + e.string()) == 0);
    CHECK(slurp(e / "fields.csv") == slurp(c / "fields.csv"));
}

TEST_CASE("plots are written on request and listed in the record") {
    const fs::path d = fresh_dir("plot");
    CHECK(run_lab("hilbert_probe --plot --out " + d.string()) == 0);
    CHECK(fs::exists(d / "hilbert.svg"));
    const json rec = record(d);
    bool listed = false;
    for (const auto& name : rec["outputs"])
        if (name.get<std::string>().find(".svg") != std::string::npos) listed = true;
    CHECK(listed);
    const std::string svg = slurp(d / "hilbert.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("config files and overrides compose") {
    const fs::path d = fresh_dir("config_file");
    const fs::path cfg = d / "cfg.json";
    {
        std::ofstream out(cfg);
        out << "{\"t\": 0.25, \"n\": 128}\n";
    }
    CHECK(run_lab("characteristics_trace --config " + cfg.string() +
                  " --set data=cauchy --out " + d.string()) == 0);
    const json rec = record(d);
    CHECK(rec["status"] == "ok");
    CHECK(rec["config"]["t"] == 0.25);
    CHECK(rec["config"]["data"] == "cauchy");
    // n=128 cells means 128 data rows after the header
    const std::string csv = slurp(d / "trace.csv");
    long rows = -1;  // discount the header
    for (const char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 128);
}

TEST_CASE("the blow-up scenario reports the catastrophe diagnostics") {
    const fs::path d = fresh_dir("blowup");
    CHECK(run_lab("blowup --set data=bump --out " + d.string()) == 0);
    const json rec = record(d);
    CHECK(rec["status"] == "ok");
    const double t_star = rec["metrics"]["t_star"].get<double>();
    const double t_cross = rec["metrics"]["t_cross"].get<double>();
    CHECK(t_star > 1.5);
    CHECK(t_star < 1.65);
    CHECK(t_cross < t_star);
}
