#include "doctest.h"
#include "exmeasure/report.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// End-to-end coverage of the command line tool: every invocation spawns
// the real binary and checks stdout bytes and the exit code contract
// (0 success, 1 failed check, 2 parse or usage error).

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

const std::filesystem::path& fixture_dir() {
    static const std::filesystem::path dir = [] {
        std::string tmpl = (std::filesystem::temp_directory_path() / "exm_cli_XXXXXX").string();
        REQUIRE(mkdtemp(tmpl.data()) != nullptr);
        return std::filesystem::path(tmpl);
    }();
    return dir;
}

std::string fixture(const std::string& name, const std::string& text) {
    const auto path = fixture_dir() / name;
    if (!std::filesystem::exists(path)) {
        std::ofstream out(path);
        out << text;
    }
    return path.string();
}

std::string dirac_file() {
    return fixture("dirac.json",
                   R"({"ground_set": ["a", "b", "c"],
                       "measure": {"type": "dirac", "point": "a"}})");
}

std::string weighted_file() {
    return fixture("weighted.json",
                   R"({"ground_set": ["a", "b", "c"],
                       "measure": {"type": "weighted",
                                   "weights": {"a": "1", "b": "1/3", "c": "5/2"}}})");
}

// modularity fails: both complementary pieces of a one-point set claim mass 1
std::string mutant_file() {
    return fixture("mutant.json",
                   R"({"ground_set": ["a"],
                       "measure": {"type": "table",
                                   "family": [["1", "0"], ["0", "1"]],
                                   "values": ["1", "1"]}})");
}

std::string broken_file() {
    return fixture("broken.json",
                   R"({"ground_set": ["a", "b"],
                       "measure": {"type": "weighted",
                                   "weights": {"a": "1", "b": "-1/3"}}})");
}

RunResult run(const std::string& args) {
    RunResult r;
    const std::string err_path = (fixture_dir() / "stderr.txt").string();
    const std::string command = std::string(EXM_BINARY) + " " + args + " 2>" + err_path;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char chunk[4096];
    std::size_t got = 0;
    while ((got = fread(chunk, 1, sizeof chunk, pipe)) > 0) r.out.append(chunk, got);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    r.code = WEXITSTATUS(status);
    std::ifstream err(err_path);
    r.err.assign(std::istreambuf_iterator<char>(err), std::istreambuf_iterator<char>());
    return r;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("pair encodes and decodes grid positions") {
    const auto enc = run("pair 4 1");
    CHECK(enc.code == 0);
    CHECK(enc.out == "7\n");

    const auto dec = run("pair --inverse 1");
    CHECK(dec.code == 0);
    CHECK(dec.out == "(1,1)\n");

    const auto back = run("pair --inverse 7");
    CHECK(back.code == 0);
    CHECK(back.out == "(4,1)\n");

    const auto wrong = run("pair 5");
    CHECK(wrong.code == 2);
    CHECK(wrong.err.find("two indices") != std::string::npos);
}

TEST_CASE("integrate prints exact rationals for simple function literals") {
    const auto r = run("integrate " + dirac_file() +
                       R"( --simple '[["2", "100"], ["3", "010"]]')");
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    const auto zero = run("integrate " + dirac_file() + " --simple '[]'");
    CHECK(zero.code == 0);
    CHECK(zero.out == "0\n");

    const auto weighted = run("integrate " + weighted_file() +
                              R"( --simple '[["3/2", "110"], ["-2", "011"]]')");
    CHECK(weighted.code == 0);
    CHECK(weighted.out == "-11/3\n");
}

TEST_CASE("integrate prints certified approximations for stream literals") {
    const auto g = run("integrate " + weighted_file() +
                       R"( --rep '{"geometric": {"base": [["1", "100"]], "ratio": "1/2"}}')");
    CHECK(g.code == 0);
    CHECK(g.out == "1 ± 2^-16\n");

    const auto coarse = run("integrate " + weighted_file() + " --precision 8" +
                            R"( --rep '{"geometric": {"base": [["1", "100"]], "ratio": "1/2"}}')");
    CHECK(coarse.code == 0);
    CHECK(coarse.out == "1 ± 2^-8\n");

    // finite support stays exact
    const auto finite = run("integrate " + weighted_file() +
                            R"( --rep '{"support": [[["1", "100"]], [["1/2", "010"]]]}')");
    CHECK(finite.code == 0);
    CHECK(finite.out == "7/6\n");
}

TEST_CASE("norm prints the absolute-integral distance to zero") {
    const auto zero = run("norm " + weighted_file() + R"( --rep '{"support": []}')");
    CHECK(zero.code == 0);
    CHECK(zero.out == "0\n");

    const auto v = run("norm " + weighted_file() +
                       R"( --rep '{"support": [[["3/2", "110"], ["-2", "011"]]]}')");
    CHECK(v.code == 0);
    CHECK(v.out == "20/3\n");

    const auto g = run("norm " + weighted_file() +
                       R"( --rep '{"geometric": {"base": [["1", "100"]], "ratio": "1/2"}}')");
    CHECK(g.code == 0);
    CHECK(g.out == "1 ± 2^-16\n");
}

TEST_CASE("check exits zero on a sound space and prints a parseable report") {
    const auto r = run("check " + weighted_file() + " --seed 7");
    CHECK(r.code == 0);
    const exm::Report report = exm::report_from_json_string(r.out);
    CHECK(report.ok());
    CHECK(report.entries.size() > 30);
}

TEST_CASE("check exits one on a broken measure and names the failing law") {
    const auto r = run("check " + mutant_file() + " --suite pms");
    CHECK(r.code == 1);
    const exm::Report report = exm::report_from_json_string(r.out);
    CHECK(!report.ok());
    bool found = false;
    for (const auto& e : report.entries)
        if (e.status == exm::CheckEntry::Status::fail &&
            e.id.find("pms2-difference-split") != std::string::npos)
            found = true;
    CHECK(found);
}

TEST_CASE("parse and usage problems exit with code two") {
    const auto missing = run("integrate /no/such/file.json --simple '[]'");
    CHECK(missing.code == 2);
    CHECK(missing.err.rfind("error: ", 0) == 0);

    const auto negative = run("integrate " + broken_file() + " --simple '[]'");
    CHECK(negative.code == 2);
    CHECK(negative.err == "error: space: weight for 'b' is negative\n");

    const auto both = run("integrate " + dirac_file() +
                          R"( --simple '[]' --rep '{"support": []}')");
    CHECK(both.code == 2);
    CHECK(both.err.find("exactly one") != std::string::npos);

    const auto neither = run("integrate " + dirac_file());
    CHECK(neither.code == 2);

    const auto bad_literal = run("integrate " + dirac_file() + " --simple '[[1]]'");
    CHECK(bad_literal.code == 2);
    CHECK(bad_literal.err.rfind("error: ", 0) == 0);

    const auto no_sub = run("");
    CHECK(no_sub.code == 2);

    const auto help = run("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("check") != std::string::npos);
}

TEST_SUITE_END();
