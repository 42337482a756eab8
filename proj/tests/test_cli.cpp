#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include "deltalog/cli.hpp"
#include "deltalog/parser.hpp"
#include "helpers.hpp"

using namespace deltalog;
using namespace deltalog::testutil;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("deltalog_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
    fs::path write(const std::string& name, const std::string& text) const {
        fs::path p = path / name;
        std::ofstream(p) << text;
        return p;
    }
};

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = deltalog::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const char* name) {
    return std::string(DELTALOG_CORPUS_DIR) + "/" + name;
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("eval prints the fixpoint as facts") {
    auto r = run_cli({"eval", corpus("tc.dl"), corpus("tc.facts")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("tc(1, 2).") != std::string::npos);
    CHECK(r.out.find("tc(1, 4).") != std::string::npos);
    // stdout re-parses as a fact file
    Program target = parse_program("p(X, Y) :- tc(X, Y).");
    auto parsed = parse_facts(r.out, target);
    CHECK(parsed.at("tc").size() == 6);
}

TEST_CASE("eval output is byte-identical across runs and engines") {
    std::vector<std::string> base{"eval", corpus("tc.dl"), corpus("tc.facts")};
    auto a = run_cli(base);
    auto b = run_cli(base);
    CHECK(a.out == b.out);
    auto naive = run_cli({"eval", corpus("tc.dl"), corpus("tc.facts"),
                          "--engine", "naive"});
    CHECK(naive.out == a.out);
}

TEST_CASE("eval --trace shows shrinking deltas") {
    auto r = run_cli({"eval", corpus("tc.dl"), corpus("tc.facts"), "--trace"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("stratum 0 iter 0") != std::string::npos);
    CHECK(r.out.find("+(1, 4)") != std::string::npos);
    CHECK(r.out.find("(no change)") != std::string::npos);
}

TEST_CASE("maintain applies a delta file") {
    auto r = run_cli({"maintain", corpus("tc.dl"), corpus("tc.facts"),
                      corpus("tc_insert.delta"), "--validate"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("+tc(1, 5).") != std::string::npos);
    CHECK(r.out.find("+tc(4, 5).") != std::string::npos);
    CHECK(r.out.find("-tc(") == std::string::npos);
    CHECK(r.err.find("validated") != std::string::npos);
}

TEST_CASE("maintain handles deletions") {
    auto r = run_cli({"maintain", corpus("tc.dl"), corpus("tc.facts"),
                      corpus("tc_delete.delta")});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("-tc(1, 3).") != std::string::npos);
    CHECK(r.out.find("-tc(2, 3).") != std::string::npos);
    CHECK(r.out.find("-tc(1, 4).") != std::string::npos);
    CHECK(r.out.find("-tc(2, 4).") != std::string::npos);
    CHECK(r.out.find("+tc(") == std::string::npos);
}

TEST_CASE("derive prints the gain and loss rules") {
    TempDir dir;
    auto prog = dir.write("simple.dl", "p(X) :- q(X).");
    auto r = run_cli({"derive", prog.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("delta_p(X) :- delta_q(X).") != std::string::npos);
    CHECK(r.out.find("nabla_p(X) :- nabla_q(X).") != std::string::npos);
}

TEST_CASE("check passes on the shipped programs") {
    for (const char* name : {"tc.dl", "treep.dl", "orphan.dl"}) {
        CAPTURE(name);
        auto r = run_cli({"check", corpus(name), "--samples", "40", "--seed", "7"});
        CHECK(r.code == 0);
        CHECK(r.out.find("pass:") != std::string::npos);
    }
}

TEST_CASE("exit code 1 on bad input") {
    TempDir dir;
    auto bad_syntax = dir.write("bad.dl", "p(X :- q(X).");
    auto facts = dir.write("empty.facts", "% none\n");
    CHECK(run_cli({"eval", bad_syntax.string(), facts.string()}).code == 1);

    auto odd = dir.write("odd.dl", "p(X) :- q(X), !p(X).");
    auto r = run_cli({"eval", odd.string(), facts.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("parity") != std::string::npos);

    CHECK(run_cli({"eval", (dir.path / "missing.dl").string(), facts.string()}).code == 1);
    CHECK(run_cli({"frobnicate"}).code == 1);
}

TEST_CASE("exit code 2 on divergence cap") {
    auto r = run_cli({"eval", corpus("tc.dl"), corpus("tc.facts"),
                      "--max-iters", "1"});
    CHECK(r.code == 2);
}

TEST_CASE("empty facts still evaluate cleanly") {
    TempDir dir;
    auto facts = dir.write("empty.facts", "% nothing here\n");
    auto r = run_cli({"eval", corpus("tc.dl"), facts.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("tc(") == std::string::npos);
}

TEST_CASE("rendered facts and deltas re-parse to the same values") {
    Relation tc = rel2("tc", {{2, 4}, {1, 2}});
    std::string facts_text = render_facts("tc", tc);
    Program target = parse_program("p(X, Y) :- tc(X, Y).");
    CHECK(parse_facts(facts_text, target).at("tc") == tc);

    BooleanDelta d = d2("tc", {{1, 5}}, {{2, 4}});
    std::string delta_text = render_delta("tc", d);
    CHECK(parse_delta(delta_text, target).at("tc") == d);
}

TEST_CASE("--output writes the result file") {
    TempDir dir;
    fs::path out_file = dir.path / "result.facts";
    auto r = run_cli({"eval", corpus("tc.dl"), corpus("tc.facts"),
                      "--output", out_file.string()});
    REQUIRE(r.code == 0);
    std::ifstream in(out_file);
    std::stringstream contents;
    contents << in.rdbuf();
    CHECK(contents.str().find("tc(1, 4).") != std::string::npos);
}

TEST_SUITE_END();
