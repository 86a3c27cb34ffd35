// End-to-end checks of the batch front-end: exit codes, report schema, and
// byte-for-byte determinism of the emitted reports.  The binary under test is
// located through the LAB_BIN environment variable set by CTest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string lab_bin() {
    const char* v = std::getenv("LAB_BIN");
    REQUIRE(v != nullptr);
    return v;
}

fs::path scratch_dir() {
    fs::path dir = fs::temp_directory_path() / "lab_cli_test";
    fs::create_directories(dir);
    return dir;
}

int run_cmd(const std::string& args, const fs::path& stdout_file,
            const std::string& env_prefix = "") {
    std::string cmd = env_prefix + "\"" + lab_bin() + "\" " + args + " > \"" +
                      stdout_file.string() + "\" 2> \"" + stdout_file.string() + ".err\"";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    // POSIX wait status: exit code in the high byte
    return (status >> 8) & 0xff;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("all-desk on the default instance passes and emits the full report set") {
    fs::path out = scratch_dir() / "alldesk.json";
    int rc = run_cmd("all-desk --p 3 --d 2", out);
    CHECK(rc == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("version") == "lab 1.0.0");
    CHECK(doc.at("config_hash").get<std::string>().size() == 16);
    auto& reports = doc.at("reports");
    CHECK(reports.size() >= 15);
    CHECK(reports.size() <= 20);
    for (auto& r : reports) {
        CHECK(r.contains("check"));
        CHECK(r.contains("params"));
        CHECK(r.at("pass").get<bool>());
    }
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    fs::path d1 = scratch_dir() / "run1", d2 = scratch_dir() / "run2",
             d4 = scratch_dir() / "run4";
    fs::path devnull = scratch_dir() / "null.txt";
    CHECK(run_cmd("all-desk --out \"" + d1.string() + "\"", devnull) == 0);
    CHECK(run_cmd("all-desk --out \"" + d2.string() + "\"", devnull) == 0);
    CHECK(run_cmd("all-desk --out \"" + d4.string() + "\"", devnull,
                  "LAB_THREADS=4 ") == 0);
    std::string j1 = slurp(d1 / "all-desk.json");
    CHECK(!j1.empty());
    CHECK(j1 == slurp(d2 / "all-desk.json"));
    CHECK(j1 == slurp(d4 / "all-desk.json"));
    std::string c1 = slurp(d1 / "all-desk.csv");
    CHECK(c1 == slurp(d4 / "all-desk.csv"));
    CHECK(c1.rfind("check,params,lhs,rhs,pass\n", 0) == 0);
}

TEST_CASE("single suite writes JSON to stdout by default") {
    fs::path out = scratch_dir() / "orth.json";
    CHECK(run_cmd("orthogonality --p 3 --d 2 --e 1", out) == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("reports").size() == 1);
    CHECK(doc.at("reports")[0].at("check") == "orthogonality");
    CHECK(doc.at("reports")[0].at("lhs") == doc.at("reports")[0].at("rhs"));
}

TEST_CASE("invalid inputs exit with code 2") {
    fs::path out = scratch_dir() / "bad.json";
    // p divides d: the diagonal certificate refuses
    CHECK(run_cmd("weyl --p 3 --d 3", out) == 2);
    // unknown suite is a parse error
    CHECK(run_cmd("no-such-suite", out) == 2);
    // malformed spec file
    fs::path spec = scratch_dir() / "broken.json";
    std::ofstream(spec) << "{ not json";
    CHECK(run_cmd("orthogonality --spec \"" + spec.string() + "\"", out) == 2);
    // well-formed JSON with a bad field
    std::ofstream(spec, std::ios::trunc)
        << R"({"p":3,"n":2,"d":2,"monomials":[{"exps":[2,0],"coeff":1}],"smooth":"nope"})";
    CHECK(run_cmd("orthogonality --spec \"" + spec.string() + "\"", out) == 2);
}

TEST_CASE("budget refusals exit with code 3 and print the estimate") {
    fs::path out = scratch_dir() / "budget.json";
    CHECK(run_cmd("orthogonality --budget 10", out) == 3);
    std::string err = slurp(fs::path(out.string() + ".err"));
    CHECK(err.find("budget refusal") != std::string::npos);
    CHECK(err.find("estimated state count") != std::string::npos);
}

TEST_CASE("a spec file overrides the default instance") {
    fs::path spec = scratch_dir() / "conic3.json";
    std::ofstream(spec) << R"({"p":3,"n":3,"d":2,"monomials":[)"
                        << R"({"exps":[2,0,0],"coeff":1},)"
                        << R"({"exps":[0,2,0],"coeff":1},)"
                        << R"({"exps":[0,0,2],"coeff":1}],"smooth":"diagonal"})";
    fs::path out = scratch_dir() / "spec.json";
    CHECK(run_cmd("local-density --spec \"" + spec.string() + "\" --N 3", out) == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc.at("reports")[0].at("params").at("n") == 3);
    CHECK(doc.at("reports")[0].at("rhs") == "4/3");
}
