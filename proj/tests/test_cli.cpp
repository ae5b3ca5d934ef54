#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path log = fs::temp_directory_path() /
                         ("qaos_cli_out_" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        std::string(QAOS_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    r.output = buf.str();
    fs::remove(log);
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("qaos_cli_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("solve: level-matched N=1 even benchmark") {
    TempDir tmp("solve1");
    const RunResult r = run_cli("solve --n 1 --parity even --beta1 -0.7 --beta3 0.1 --out " +
                                tmp.path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0.2807143") != std::string::npos);
    CHECK(r.output.find("0.4185714") != std::string::npos);

    const nlohmann::json report = nlohmann::json::parse(slurp(tmp.path / "solve.json"));
    REQUIRE(report.contains("params"));
    REQUIRE(report.contains("solutions"));
    REQUIRE(report.contains("checks"));
    bool found = false;
    for (const auto& sol : report["solutions"]) {
        if (std::abs(sol["energy"].get<double>() - 0.2807142857142857) < 1e-9) {
            found = true;
            CHECK(std::abs(sol["beta2"].get<double>() - 0.4185714285714286) < 1e-9);
            CHECK(sol["checks"]["node_count"].get<int>() == 2);
            CHECK(sol["checks"]["matrix_residual"].get<double>() <= 1e-10);
        }
    }
    CHECK(found);
}

TEST_CASE("solve: no odd N=0 sector") {
    const RunResult r = run_cli("solve --n 0 --parity odd --beta1 0.3 --beta3 1.0");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("no solution") != std::string::npos);
}

TEST_CASE("solve: shared-beta2 N=2 point prints both sectors") {
    const RunResult r = run_cli("solve --n 2 --parity both --beta1 0.4 --simultaneous");
    CHECK(r.exit_code == 0);
    // Both rows carry the same beta2 = 0.6053779.
    size_t first = r.output.find("0.6053779");
    REQUIRE(first != std::string::npos);
    CHECK(r.output.find("0.6053779", first + 1) != std::string::npos);
}

TEST_CASE("solve: invalid arguments exit with the usage code") {
    CHECK(run_cli("solve --parity even").exit_code == 1);        // missing --n
    CHECK(run_cli("solve --n 1 --parity sideways").exit_code == 1);
    CHECK(run_cli("nonsense").exit_code == 1);
}

TEST_CASE("oracle: benchmark levels and rank comparison") {
    const RunResult r = run_cli(
        "oracle --n 1 --parity even --beta1 -0.7 --beta3 0.1 --grid 1001 --levels 2 "
        "--eigen-count 4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("-0.36618") != std::string::npos);
    CHECK(r.output.find("-0.18310") != std::string::npos);
    CHECK(r.output.find("0.28071") != std::string::npos);
    CHECK(r.output.find("rank 2") != std::string::npos);
}

TEST_CASE("oracle: a coarse grid that fails to converge exits 3") {
    const RunResult r = run_cli(
        "oracle --n 1 --parity even --beta1 -0.7 --beta3 0.1 --grid 201 --levels 2");
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("warning") != std::string::npos);
}

TEST_CASE("oracle: undersized grid is a usage error") {
    const RunResult r = run_cli("oracle --alpha -1 --beta2 0.3 --beta1 0 --beta3 0.6 --grid 51");
    CHECK(r.exit_code == 1);
}

TEST_CASE("table1: reference ratios reproduce, extra roots are reported") {
    const RunResult r = run_cli("table1 --beta1 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("N=4 even") != std::string::npos);
    CHECK(r.output.find("max deviation") != std::string::npos);
    // The sectors the reference table leaves empty do have genuine roots.
    CHECK(r.output.find("extra zero-energy root") != std::string::npos);
    CHECK(r.output.find("reference expects none") != std::string::npos);
}

TEST_CASE("figure-data: every figure id emits CSV with a header") {
    TempDir tmp("figs");
    for (int id = 1; id <= 5; ++id) {
        const RunResult r = run_cli("figure-data --id " + std::to_string(id) + " --grid 201 --out " +
                                    tmp.path.string());
        CHECK(r.exit_code == 0);
    }
    for (const char* name :
         {"figure1_left.csv", "figure1_right.csv", "figure2_left.csv", "figure2_right.csv",
          "figure3_left.csv", "figure3_right.csv", "figure4.csv", "figure5.csv"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(tmp.path / name));
        std::ifstream in(tmp.path / name);
        std::string header;
        std::getline(in, header);
        CHECK(header.find("y,") == 0);
        size_t rows = 0;
        for (std::string line; std::getline(in, line);) ++rows;
        CHECK(rows == 201);
    }
    CHECK(run_cli("figure-data --id 9 --out " + tmp.path.string()).exit_code == 1);
}

TEST_CASE("scan: rowwise closed-form agreement and CSV output") {
    TempDir tmp("scan");
    const RunResult r = run_cli(
        "scan --n 1 --parity even --beta1-min 0.3 --beta1-max 1.0 --steps 4 --beta3 0.1 "
        "--out " + tmp.path.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp(tmp.path / "scan.csv");
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "beta1,beta3,energy,beta2,casimir,scale_defect,status");
    int ok_rows = 0;
    for (std::string line; std::getline(lines, line);) {
        if (line.find(",ok") == std::string::npos) continue;
        ++ok_rows;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        const double b1 = std::stod(cell);
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        const double energy = std::stod(cell);
        const double expect = 0.5 * b1 * b1 - 0.1 / (4.0 * b1);
        CHECK(std::abs(energy - expect) <= 1e-8);
    }
    CHECK(ok_rows >= 4);

    CHECK(run_cli("scan --n 1 --parity even --beta1-min 1.0 --beta1-max 0.3 --steps 4")
              .exit_code == 1);
}

TEST_CASE("identical configuration produces byte-identical files") {
    TempDir a("det_a"), b("det_b");
    const std::string args =
        "solve --n 1 --parity even --beta1 -0.7 --beta3 0.1 --seed 7 --format json --out ";
    CHECK(run_cli(args + a.path.string()).exit_code == 0);
    CHECK(run_cli(args + b.path.string()).exit_code == 0);
    CHECK(slurp(a.path / "solve.json") == slurp(b.path / "solve.json"));

    // The same run driven by a config file matches the flag-driven run.
    TempDir c("det_c");
    const fs::path cfg = c.path / "run.ini";
    {
        std::ofstream out(cfg);
        out << "[solve]\nn=1\nparity=even\nbeta1=-0.7\nbeta3=0.1\nseed=7\nformat=json\nout=" +
                   c.path.string() + "\n";
    }
    CHECK(run_cli("--config " + cfg.string() + " solve").exit_code == 0);
    CHECK(slurp(c.path / "solve.json") == slurp(a.path / "solve.json"));
}

TEST_CASE("csv format emits the documented header") {
    TempDir tmp("csvfmt");
    CHECK(run_cli("solve --n 1 --parity even --beta1 -0.7 --beta3 0.1 --format csv --out " +
                  tmp.path.string())
              .exit_code == 0);
    const std::string csv = slurp(tmp.path / "solve.csv");
    CHECK(csv.find("parity,energy,beta2,casimir") == 0);
    // 17-significant-digit emission of the benchmark energy.
    CHECK(csv.find("0.28071428571428") != std::string::npos);
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line);
    REQUIRE(std::getline(rows, line));
    std::istringstream cells(line);
    std::string cell;
    std::getline(cells, cell, ',');  // parity
    std::getline(cells, cell, ',');  // energy
    CHECK(std::stod(cell) == doctest::Approx(0.2807142857142857).epsilon(1e-12));
    CHECK(cell.size() >= 18);  // 17 significant digits plus the leading "0."
}
