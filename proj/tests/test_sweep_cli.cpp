#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "circleflow/circleflow.hpp"

using namespace circleflow;

TEST_CASE("sweep cells are deterministic and match the classifier") {
    SweepGrid grid;
    grid.a_min = 0.0;
    grid.a_max = 2.0;
    grid.a_step = 0.5;
    grid.b_min = -2.0;
    grid.b_max = 3.0;
    grid.b_step = 0.5;

    auto cells1 = sweep_classify(grid, SweepRoute::ZeroMeanFourier);
    auto cells2 = sweep_classify(grid, SweepRoute::ZeroMeanFourier, {}, 3);
    REQUIRE(cells1.size() == static_cast<std::size_t>(grid.a_count() * grid.b_count()));
    CHECK(sweep_csv(cells1) == sweep_csv(cells2));

    // a-major order, b fastest
    CHECK(cells1[0].a == 0.0);
    CHECK(cells1[0].b == -2.0);
    CHECK(cells1[1].b == -1.5);

    for (const SweepCell& c : cells1) {
        Verdict v = classify_fourier_type(RealParam(c.a), RealParam(c.b));
        CHECK(v.kind == c.kind);
    }

    // the (2, 2) cell is metric; the a = 1 row hits the excluded values
    bool saw_metric = false;
    for (const SweepCell& c : cells1)
        if (c.a == 2.0 && c.b == 2.0) saw_metric = (c.kind == VerdictKind::Metric);
    CHECK(saw_metric);
}

TEST_CASE("sweep svg is self-contained geometry") {
    SweepGrid grid;
    grid.a_min = 0.0;
    grid.a_max = 1.0;
    grid.a_step = 0.5;
    grid.b_min = 0.0;
    grid.b_max = 1.0;
    grid.b_step = 0.5;
    auto cells = sweep_classify(grid, SweepRoute::ZeroMeanFourier);
    std::string svg = sweep_svg(grid, cells);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<rect") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(sweep_svg(grid, cells) == svg);
}

// ---------------------------------------------------------------------------
// End-to-end checks of the command line tool
// ---------------------------------------------------------------------------

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(CIRCLEFLOW_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CliResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("cli analyze matches the library verdicts") {
    CliResult res = run_cli("analyze --a 2 --b 3 --format json");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    REQUIRE(j.is_array());
    bool saw_full = false;
    for (const auto& verdict : j) {
        if (verdict["route"] == "full-group") {
            saw_full = true;
            CHECK(verdict["verdict"] == "non-metric");
            json lib = to_json(classify_full_group(RealParam(2.0), RealParam(3.0)));
            CHECK(verdict == lib);
        }
    }
    CHECK(saw_full);

    CliResult met = run_cli("analyze --a 1 --b 2 --format json");
    json jm = json::parse(met.out);
    std::size_t routes = 0;
    for (const auto& verdict : jm) {
        ++routes;
        CHECK(verdict["verdict"] == "metric");
    }
    CHECK(routes == 3);  // a = 1 also engages the full-group fourier analysis

    CliResult open_case = run_cli("analyze --a 1 --b -3 --format json");
    json jo = json::parse(open_case.out);
    for (const auto& verdict : jo)
        if (verdict["route"] == "full-group") CHECK(verdict["verdict"] == "undetermined");
}

TEST_CASE("cli accepts rational literals") {
    CliResult res = run_cli("analyze --a 1 --b -5/4 --format json");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    bool saw = false;
    for (const auto& verdict : j)
        if (verdict["route"] == "full-group-fourier") {
            saw = true;
            CHECK(verdict["verdict"] == "undetermined");
            CHECK(verdict["excluded_set_member"] == "-5/4");
        }
    CHECK(saw);
}

TEST_CASE("cli catalog") {
    CliResult res = run_cli("catalog --format json");
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    CHECK(j.size() == 9);

    CliResult one = run_cli("catalog hunter-saxton --format json");
    json j1 = json::parse(one.out);
    CHECK(j1["a"] == 2.0);
    CHECK(j1["b"] == 2.0);
    CHECK(j1["convention"] == "zero-mean");
    CHECK(j1["verdict"]["verdict"] == "metric");

    CliResult gclm = run_cli("\"catalog\" \"gclm(0.5)\" --format json");
    json jg = json::parse(gclm.out);
    CHECK(jg["b"] == -2.0);

    CHECK(run_cli("catalog kdv").exit_code == 1);
}

TEST_CASE("cli verify suite") {
    CliResult res = run_cli("verify recursions");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("PASS") != std::string::npos);
    CHECK(res.out.find("FAIL") == std::string::npos);

    CHECK(run_cli("verify no-such-suite").exit_code == 1);
}

TEST_CASE("cli simulate writes diagnostics and reports blowup as exit 0") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "circleflow_cli_test";
    fs::remove_all(dir);

    CliResult res = run_cli("simulate --a 2 --b 2 --N 16 --dt 0.01 --T 0.05 --u0 cos --out " +
                            dir.string());
    REQUIRE(res.exit_code == 0);
    CHECK(fs::exists(dir / "diagnostics.jsonl"));
    CHECK(fs::exists(dir / "diagnostics.csv"));
    CHECK(res.out.find("completed") != std::string::npos);

    // a run that trips the slope threshold still exits 0, with the
    // termination recorded
    CliResult blow = run_cli(
        "simulate --a 0 --b 2 --N 32 --dt 0.01 --T 5 --u0 cos --blowup-threshold 1.5 --out " +
        dir.string());
    CHECK(blow.exit_code == 0);
    CHECK(blow.out.find("blowup") != std::string::npos);

    fs::remove_all(dir);
}

TEST_CASE("cli simulate is byte-deterministic for identical inputs and seed") {
    namespace fs = std::filesystem;
    fs::path dir1 = fs::temp_directory_path() / "circleflow_sim1";
    fs::path dir2 = fs::temp_directory_path() / "circleflow_sim2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    std::string args = "simulate --a 1 --b -1 --N 32 --dt 0.005 --T 0.05 --u0 random --seed 9 "
                       "--save-every 4 --out ";
    REQUIRE(run_cli(args + dir1.string()).exit_code == 0);
    REQUIRE(run_cli(args + dir2.string()).exit_code == 0);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    for (const char* f : {"diagnostics.jsonl", "diagnostics.csv", "states.jsonl"}) {
        std::string body = slurp(dir1 / f);
        CHECK(!body.empty());
        CHECK(body == slurp(dir2 / f));
    }
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("cli config file drives simulate with flag overrides") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "circleflow_cfg";
    fs::remove_all(dir);
    fs::create_directories(dir);
    fs::path cfg = dir / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# short Hunter-Saxton run\n"
            << "a = 2\n"
            << "b = 2\n"
            << "N = 16\n"
            << "dt = 0.01\n"
            << "T = 1.0   # overridden below\n"
            << "u0 = cos\n";
    }
    CliResult res = run_cli("simulate --config " + cfg.string() + " --T 0.05 --format json --out " +
                            dir.string());
    REQUIRE(res.exit_code == 0);
    json j = json::parse(res.out);
    CHECK(j["termination"] == "completed");
    CHECK(j["steps"] == 5);  // T came from the flag, not the file
    fs::remove_all(dir);
}

TEST_CASE("cli sweep output is byte-stable") {
    namespace fs = std::filesystem;
    fs::path dir1 = fs::temp_directory_path() / "circleflow_sweep1";
    fs::path dir2 = fs::temp_directory_path() / "circleflow_sweep2";
    fs::remove_all(dir1);
    fs::remove_all(dir2);
    std::string grid = "--a-min 0 --a-max 2 --a-step 1 --b-min -2 --b-max 3 --b-step 0.5 --svg";
    REQUIRE(run_cli("sweep " + grid + " --out " + dir1.string()).exit_code == 0);
    REQUIRE(run_cli("sweep " + grid + " --out " + dir2.string()).exit_code == 0);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string csv1 = slurp(dir1 / "sweep.csv");
    CHECK(!csv1.empty());
    CHECK(csv1 == slurp(dir2 / "sweep.csv"));
    CHECK(slurp(dir1 / "sweep.svg") == slurp(dir2 / "sweep.svg"));
    fs::remove_all(dir1);
    fs::remove_all(dir2);
}

TEST_CASE("cli usage errors exit 1") {
    CHECK(run_cli("analyze --a oops --b 1").exit_code == 1);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("analyze").exit_code == 1);
}
