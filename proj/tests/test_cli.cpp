#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
};

// Runs the installed CLI with stdout/stderr captured into files under `dir`.
RunResult run_cli(const std::string& args, const fs::path& dir) {
    fs::create_directories(dir);
    const std::string cmd = std::string(ABLATION_CLI_PATH) + " " + args + " > " +
                            (dir / "stdout.txt").string() + " 2> " +
                            (dir / "stderr.txt").string();
    const int raw = std::system(cmd.c_str());
    return {WEXITSTATUS(raw)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / "ablation_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("tables: ratio reproduces the reference within printing accuracy") {
    auto dir = temp_dir("ratio");
    auto res = run_cli("--out " + dir.string() + " tables --which ratio", dir);
    CHECK(res.exit_code == 0);
    const auto csv = slurp(dir / "table_ratio.csv");
    CHECK(csv.find("tissue,lambda_nm,computed,reference,rel_deviation,g") != std::string::npos);
    CHECK(csv.find("breast_tumor,810") != std::string::npos);
    // 12 data rows
    int rows = 0;
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows >= 12 + 4);
}

TEST_CASE("tables run deterministically: byte-identical reruns") {
    auto dir1 = temp_dir("det1");
    auto dir2 = temp_dir("det2");
    CHECK(run_cli("--out " + dir1.string() + " tables --which zeta0 --g 0.99", dir1)
              .exit_code == 0);
    CHECK(run_cli("--out " + dir2.string() + " tables --which zeta0 --g 0.99", dir2)
              .exit_code == 0);
    CHECK(slurp(dir1 / "table_zeta0.csv") == slurp(dir2 / "table_zeta0.csv"));
    CHECK(!slurp(dir1 / "table_zeta0.csv").empty());
}

TEST_CASE("unknown tissue exits with the config code") {
    auto dir = temp_dir("badtissue");
    auto res = run_cli("--out " + dir.string() + " --tissue liver tables --which ratio", dir);
    CHECK(res.exit_code == 2);
    CHECK(slurp(dir / "stderr.txt").find("liver") != std::string::npos);
}

TEST_CASE("source profile along z decays and jumps at the interface") {
    auto dir = temp_dir("srcprofile");
    auto res = run_cli("--out " + dir.string() +
                           " profile --field source --axis z --min 1e-5 --max 8e-3 "
                           "--samples 64 --t 0",
                       dir);
    CHECK(res.exit_code == 0);
    const auto csv = slurp(dir / "profile_source.csv");
    CHECK(csv.find("r_m,z_m,t_s,value,unit,region") != std::string::npos);
    CHECK(csv.find("tumor") != std::string::npos);
    CHECK(csv.find("healthy") != std::string::npos);
}

TEST_CASE("fluence overflow regime surfaces as exit code 3 with the exponent") {
    auto dir = temp_dir("overflow");
    auto res = run_cli("--out " + dir.string() +
                           " --lambda-nm 1064 --power-w 1.3 --tp-s 1e-11 --g 0.99 "
                           "profile --field fluence --axis r --min 0 --max 1e-4 "
                           "--samples 4 --z 0 --t 5e-12",
                       dir);
    CHECK(res.exit_code == 3);
    const auto err = slurp(dir / "stderr.txt");
    CHECK(err.find("exponent") != std::string::npos);
}

TEST_CASE("validate --suite damage passes and writes the report") {
    auto dir = temp_dir("validate");
    auto res = run_cli("--out " + dir.string() + " validate --suite damage", dir);
    CHECK(res.exit_code == 0);
    const auto report = slurp(dir / "validate_damage.json");
    CHECK(report.find("\"pass\": true") != std::string::npos);
    CHECK(slurp(dir / "stdout.txt").find("PASS") != std::string::npos);
}

TEST_CASE("fd-run radiative writes the field table") {
    auto dir = temp_dir("fdrun");
    auto res = run_cli("--out " + dir.string() +
                           " --tp-s 1e-13 fd-run --equation radiative --nr 24 --nz 24 "
                           "--rmax 7.5e-4 --zmax 1e-3 --horizon-s 5e-14",
                       dir);
    CHECK(res.exit_code == 0);
    const auto csv = slurp(dir / "fd_radiative.csv");
    CHECK(csv.find("# dt_s:") != std::string::npos);
    CHECK(csv.find("r_m,z_m,t_s,value,unit,region") != std::string::npos);
}

TEST_CASE("json format mirrors the csv table") {
    auto dir = temp_dir("jsonfmt");
    auto res = run_cli("--out " + dir.string() + " --format json tables --which ratio", dir);
    CHECK(res.exit_code == 0);
    const auto text = slurp(dir / "table_ratio.json");
    CHECK(text.find("\"rows\"") != std::string::npos);
    CHECK(text.find("\"rel_deviation\"") != std::string::npos);
    // 12 data rows in the json array as well
    std::size_t count = 0, pos = 0;
    while ((pos = text.find("\"tissue\"", pos)) != std::string::npos) {
        ++count;
        pos += 8;
    }
    CHECK(count == 12);
}

TEST_CASE("ABLATION_PARAMS environment fallback") {
    auto dir = temp_dir("envparams");
    const std::string cmd = "ABLATION_PARAMS=" ABLATION_PARAMS_FILE " " +
                            std::string(ABLATION_CLI_PATH) + " --out " + dir.string() +
                            " tables --which ratio > " + (dir / "stdout.txt").string() +
                            " 2> " + (dir / "stderr.txt").string();
    CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    CHECK(!slurp(dir / "table_ratio.csv").empty());

    const std::string bad = "ABLATION_PARAMS=/does/not/exist " +
                            std::string(ABLATION_CLI_PATH) + " --out " + dir.string() +
                            " tables --which ratio > /dev/null 2>&1";
    CHECK(WEXITSTATUS(std::system(bad.c_str())) == 2);
}

TEST_CASE("parameter file loading via --params") {
    auto dir = temp_dir("paramsfile");
    auto res = run_cli("--out " + dir.string() + " --params " ABLATION_PARAMS_FILE
                           " tables --which ratio",
                       dir);
    CHECK(res.exit_code == 0);

    // the bundled file reproduces the builtin registry byte-for-byte
    auto dir2 = temp_dir("paramsfile_builtin");
    CHECK(run_cli("--out " + dir2.string() + " tables --which ratio", dir2).exit_code == 0);
    CHECK(slurp(dir / "table_ratio.csv") == slurp(dir2 / "table_ratio.csv"));

    auto bad = run_cli("--out " + dir.string() + " --params /nonexistent.txt tables", dir);
    CHECK(bad.exit_code == 2);
}

TEST_SUITE_END();
