#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace stdfs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

const char* cli_path() {
    const char* p = std::getenv("FERMISCATTER_CLI");
    REQUIRE_MESSAGE(p != nullptr,
                    "FERMISCATTER_CLI must point at the CLI binary (set by ctest)");
    return p;
}

RunResult run_cli(const std::string& args, const stdfs::path& dir) {
    const stdfs::path log = dir / "cmd_output.txt";
    const std::string cmd =
        std::string(cli_path()) + " " + args + " > " + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    return {WEXITSTATUS(rc), ss.str()};
}

std::string slurp(const stdfs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ScratchDir {
    stdfs::path path;
    ScratchDir() : path(stdfs::current_path() / "cli_test_tmp") {
        stdfs::remove_all(path);
        stdfs::create_directories(path);
    }
    ~ScratchDir() { stdfs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("constants report") {
    ScratchDir dir;
    const RunResult r = run_cli("constants", dir.path);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("t_fermi_uK = 70.7548857") != std::string::npos);
    CHECK(r.output.find("recoil_kHz = 73.6694439") != std::string::npos);
    CHECK(r.output.find("q_over_k = 1.41421356") != std::string::npos);
}

TEST_CASE("fig2 determinism and sanity") {
    ScratchDir dir;
    const std::string out1 = (dir.path / "a.csv").string();
    const std::string out2 = (dir.path / "b.csv").string();
    const std::string grid = "--grid t_over_tf=0.2:3:6:log";
    CHECK(run_cli("fig2 " + grid + " --out " + out1, dir.path).exit_code == 0);
    CHECK(run_cli("fig2 " + grid + " --out " + out2, dir.path).exit_code == 0);
    const std::string bytes = slurp(out1);
    CHECK(bytes == slurp(out2));
    CHECK(bytes.rfind("t_over_tf,suppression,overlap,product\n", 0) == 0);
    CHECK(bytes.find("0.2,0.59") != std::string::npos);  // suppression(0.2) ~ 0.59
}

TEST_CASE("json format carries metadata") {
    ScratchDir dir;
    const std::string out = (dir.path / "sq.json").string();
    CHECK(run_cli("sq --format json --grid qlam=0:4:5 --out " + out, dir.path).exit_code ==
          0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["meta"]["tool"] == "fermiscatter");
    CHECK(j["meta"]["config_hash"].get<std::string>().size() == 16);
    CHECK(j["data"]["beta"].size() == 5);
}

TEST_CASE("sq output matches the Gaussian column in the Boltzmann regime") {
    ScratchDir dir;
    const std::string out = (dir.path / "sq.csv").string();
    CHECK(run_cli("sq --grid qlam=0:10:11 --out " + out, dir.path).exit_code == 0);
    std::ifstream in(out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "q_lambda,beta,gaussian");
    while (std::getline(in, line)) {
        const auto c1 = line.find(','), c2 = line.rfind(',');
        const double beta = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        const double gauss = std::stod(line.substr(c2 + 1));
        CHECK(std::abs(beta - gauss) <= 2e-3);
    }
}

TEST_CASE("config file overlay and exit codes") {
    ScratchDir dir;

    SUBCASE("missing config file -> exit 2") {
        const RunResult r = run_cli("constants --config no_such.ini", dir.path);
        CHECK(r.exit_code == 2);
    }

    SUBCASE("malformed config -> exit 2 with line number") {
        const stdfs::path cfg = dir.path / "bad.ini";
        std::ofstream(cfg) << "[trap\n";
        const RunResult r = run_cli("constants --config " + cfg.string(), dir.path);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find(":1:") != std::string::npos);
    }

    SUBCASE("trap override changes T_F") {
        const stdfs::path cfg = dir.path / "trap.ini";
        std::ofstream(cfg) << "[trap]\natom_number = 4800000\n";  // N x8 -> T_F x2
        const RunResult r = run_cli("constants --config " + cfg.string(), dir.path);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("t_fermi_uK = 141.509771") != std::string::npos);
    }
}

TEST_CASE("fit command") {
    ScratchDir dir;
    const stdfs::path csv = dir.path / "loss.csv";
    std::ofstream(csv) << "delta_ghz,loss\n110,1.1e-3\n220,2.75e-4\n440,6.875e-5\n";

    SUBCASE("exact quadratic decay") {
        const RunResult r = run_cli("fit --input " + csv.string(), dir.path);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("exponent = -2\n") != std::string::npos);
        CHECK(r.output.find("exponent_stderr = 0\n") != std::string::npos);
    }

    SUBCASE("refuses data below delta_min") {
        const stdfs::path cfg = dir.path / "fit.ini";
        std::ofstream(cfg) << "[fit]\ndelta_min_ghz = 150\n";
        const RunResult r =
            run_cli("fit --input " + csv.string() + " --config " + cfg.string(), dir.path);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("refusing") != std::string::npos);
    }

    SUBCASE("degenerate data -> exit 3") {
        const stdfs::path flat = dir.path / "flat.csv";
        std::ofstream(flat) << "delta_ghz,loss\n100,1e-3\n100,2e-3\n100,3e-3\n";
        CHECK(run_cli("fit --input " + flat.string(), dir.path).exit_code == 3);
    }

    SUBCASE("selftest is seeded and deterministic") {
        const RunResult a = run_cli("fit --selftest --seed 42", dir.path);
        const RunResult b = run_cli("fit --selftest --seed 42", dir.path);
        CHECK(a.exit_code == 0);
        CHECK(a.output == b.output);
        CHECK(a.output.find("stderr_coverage") != std::string::npos);
    }
}

TEST_CASE("fig4 determinism") {
    ScratchDir dir;
    const std::string out1 = (dir.path / "f1.csv").string();
    const std::string out2 = (dir.path / "f2.csv").string();
    CHECK(run_cli("fig4 --out " + out1, dir.path).exit_code == 0);
    CHECK(run_cli("fig4 --out " + out2, dir.path).exit_code == 0);
    const std::string bytes = slurp(out1);
    CHECK(bytes == slurp(out2));
    CHECK(bytes.rfind("delta_ghz,loss\n", 0) == 0);
}

}  // TEST_SUITE
