// End-to-end checks of the installed command surface. The binary path
// arrives via the NILREP_CLI environment variable set by ctest.

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("NILREP_CLI");
    REQUIRE_MESSAGE(p != nullptr, "NILREP_CLI must point at the CLI binary");
    return p;
}

CliResult run_cli(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult res;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe))
        res.out.append(buf, n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("nilrep_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("cli: dim and mu") {
    auto res = run_cli("dim --r 3 --k 2 --format json");
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["total"] == 6);
    CHECK(j["dims"] == nlohmann::json({3, 3}));

    res = run_cli("dim --r 2 --k 2");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("total dimension 3") != std::string::npos);

    res = run_cli("dim --r 2 --k 4 --format json");
    CHECK(nlohmann::json::parse(res.out)["total"] == 8);

    res = run_cli("mu --r 8 --format json");
    CHECK(res.exit_code == 0);
    CHECK(nlohmann::json::parse(res.out)["mu"] == 13);
    CHECK(run_cli("mu --r 12 --format json").out.find("19") != std::string::npos);
    res = run_cli("mu --r 2 --format json");
    CHECK(nlohmann::json::parse(res.out)["mu"] == 3);
}

TEST_CASE("cli: flag errors exit with 2") {
    CHECK(run_cli("dim --r 3").exit_code == 2);          // missing --k
    CHECK(run_cli("bogus").exit_code == 2);              // unknown subcommand
    CHECK(run_cli("dim --r 1 --k 2").exit_code == 2);    // rejected argument
    CHECK(run_cli("mu --r 1").exit_code == 2);
}

TEST_CASE("cli: construct then verify round-trips with exit 0") {
    auto rep_path = temp_file("rep6.json");
    auto res = run_cli("construct --r 6 --seed 1 --out " + rep_path.string());
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(slurp(rep_path));
    CHECK(j["certificate"]["dimension"] == 10);
    CHECK(j["certificate"]["checks"]["is_faithful"] == true);
    CHECK(j["profile"].size() == 3);

    auto verify = run_cli("verify --in " + rep_path.string());
    CHECK(verify.exit_code == 0);
    auto report = nlohmann::json::parse(verify.out);
    CHECK(report["is_homomorphism"] == true);
    CHECK(report["is_faithful"] == true);
    CHECK(report["dimension"] == 10);
    CHECK(report["witness"].is_null());

    std::filesystem::remove(rep_path);
}

TEST_CASE("cli: verify on a corrupted representation exits 3 with a witness") {
    auto rep_path = temp_file("rep4.json");
    auto corrupt_path = temp_file("rep4_corrupt.json");
    REQUIRE(run_cli("construct --r 4 --seed 1 --out " + rep_path.string()).exit_code == 0);
    auto j = nlohmann::json::parse(slurp(rep_path));
    // zero out one generator tuple: the extension stays a homomorphism but
    // loses injectivity on the center
    for (auto& block : j["generators"][0])
        for (auto& e : block["entries"])
            e = "0";
    std::ofstream(corrupt_path) << j.dump(2) << "\n";

    auto verify = run_cli("verify --in " + corrupt_path.string());
    CHECK(verify.exit_code == 3);
    auto report = nlohmann::json::parse(verify.out);
    CHECK(report["is_faithful"] == false);
    CHECK(report["witness"]["kind"] == "faithfulness");
    CHECK(!report["witness"]["elements"].empty());

    std::filesystem::remove(rep_path);
    std::filesystem::remove(corrupt_path);
}

TEST_CASE("cli: sab subcommand") {
    auto res = run_cli("sab --a 4 --b 3 --seed 2");
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    CHECK(j["a"] == 4);
    CHECK(j["certificate"]["verify_sab"] == true);

    CHECK(run_cli("sab --a 13 --b 13 --strategy recursive").exit_code == 2);
}

TEST_CASE("cli: search meets the step-3 bound for r=2") {
    auto out_path = temp_file("search23.json");
    auto res = run_cli("search --r 2 --k 3 --seed 1 --out " + out_path.string());
    CHECK(res.exit_code == 0);
    auto j = nlohmann::json::parse(slurp(out_path));
    REQUIRE(j["found"] == true);
    CHECK(j["best_dim"].get<int>() <= 6);
    std::filesystem::remove(out_path);
}

TEST_CASE("cli: byte-identical artifacts for identical flags and seed") {
    auto p1 = temp_file("det1.json");
    auto p2 = temp_file("det2.json");
    REQUIRE(run_cli("construct --r 5 --seed 9 --out " + p1.string()).exit_code == 0);
    REQUIRE(run_cli("construct --r 5 --seed 9 --out " + p2.string()).exit_code == 0);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(!slurp(p1).empty());

    auto s1 = run_cli("sab --a 4 --b 4 --seed 3");
    auto s2 = run_cli("sab --a 4 --b 4 --seed 3");
    CHECK(s1.out == s2.out);

    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("cli: NILREP_THREADS leaves artifacts unchanged") {
    auto serial = run_cli("construct --r 6 --seed 4");
    CliResult threaded;
    {
        std::string cmd = "NILREP_THREADS=2 " + cli_path() + " construct --r 6 --seed 4 2>/dev/null";
        FILE* pipe = popen(cmd.c_str(), "r");
        REQUIRE(pipe != nullptr);
        char buf[4096];
        while (size_t n = fread(buf, 1, sizeof buf, pipe))
            threaded.out.append(buf, n);
        int status = pclose(pipe);
        threaded.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    CHECK(serial.exit_code == 0);
    CHECK(threaded.exit_code == 0);
    CHECK(serial.out == threaded.out);
}

TEST_CASE("cli: search --report writes the markdown summary") {
    auto out_path = temp_file("search22.json");
    auto md_path = temp_file("search22.md");
    auto res = run_cli("search --r 2 --k 2 --seed 1 --out " + out_path.string() + " --report " +
                       md_path.string());
    CHECK(res.exit_code == 0);
    std::string md = slurp(md_path);
    CHECK(md.find("Best certified faithful dimension: **3**") != std::string::npos);
    CHECK(md.find("| profile | trials | successes |") != std::string::npos);

    auto report = run_cli("report --results " + out_path.string());
    CHECK(report.exit_code == 0);
    CHECK(report.out.find("| 2 | 2 | 3 |") != std::string::npos);

    std::filesystem::remove(out_path);
    std::filesystem::remove(md_path);
}

TEST_CASE("cli: emitted JSON carries no floating point entries") {
    auto res = run_cli("construct --r 4 --seed 3");
    REQUIRE(res.exit_code == 0);
    auto j = nlohmann::json::parse(res.out);
    for (const auto& tuple : j["generators"])
        for (const auto& block : tuple)
            for (const auto& e : block["entries"]) {
                REQUIRE(e.is_string());
                const std::string s = e.get<std::string>();
                CHECK(s.find('.') == std::string::npos);
                CHECK(s.find('e') == std::string::npos);
            }
}

TEST_CASE("cli: report renders the summary tables") {
    auto res = run_cli("report");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("| 16 | 24 |") != std::string::npos);   // mu table row
    CHECK(res.out.find("| 2 | 3 | - | ") != std::string::npos);  // bounds row, no results merged
}
