#include <doctest.h>

#include "deltalog/checks.hpp"
#include "deltalog/parser.hpp"
#include "helpers.hpp"

using namespace deltalog;
using namespace deltalog::testutil;

namespace {

Term v(const char* name) { return Variable{std::string(name)}; }

const char* kTc = "tc(X,Y) :- e(X,Y). tc(X,Y) :- e(X,Z), tc(Z,Y).";
const char* kTreeP = "treeP(X) :- p(X), !( child(X,Y), !treeP(Y) ).";

}  // namespace

TEST_SUITE_BEGIN("frontend");

TEST_CASE("tc parses to the expected defining formula") {
    Program p = parse_program(kTc);
    CHECK(p.idb.at("tc") == 2);
    CHECK(p.edb.at("e") == 2);
    FormulaPtr expected = make_or(
        make_atom("e", {v("tc$1"), v("tc$2")}),
        make_exists("Z", make_and(make_atom("e", {v("tc$1"), v("Z")}),
                                  make_atom("tc", {v("Z"), v("tc$2")}))));
    CHECK(formula_equal(*p.defining.at("tc"), *expected));
}

TEST_CASE("body-only variables are implicitly quantified") {
    Program p = parse_program("p(X) :- q(X,Y).");
    FormulaPtr expected = make_exists("Y", make_atom("q", {v("p$1"), v("Y")}));
    CHECK(formula_equal(*p.defining.at("p"), *expected));
}

TEST_CASE("treeP quantifies inside the negation") {
    Program p = parse_program(kTreeP);
    FormulaPtr expected = make_and(
        make_atom("p", {v("treeP$1")}),
        make_not(make_exists(
            "Y", make_and(make_atom("child", {v("treeP$1"), v("Y")}),
                          make_not(make_atom("treeP", {v("Y")}))))));
    CHECK(formula_equal(*p.defining.at("treeP"), *expected));
}

TEST_CASE("parity stratification accepts tc and treeP") {
    Program tc = parse_program(kTc);
    check_program(tc);
    REQUIRE(tc.strata.strata.size() == 1);
    CHECK(tc.strata.strata[0] == std::vector<std::string>{"tc"});

    Program tree = parse_program(kTreeP);
    check_program(tree);  // recursion under two negations is even parity
    CHECK(tree.strata.strata.size() == 1);
}

TEST_CASE("odd-parity recursion is rejected with the cycle") {
    Program p = parse_program("p(X) :- q(X), !p(X).");
    CHECK_THROWS_WITH_AS(check_parity_stratification(p), doctest::Contains("p"),
                         CheckError);
}

TEST_CASE("strata come out in dependency order") {
    Program p = parse_program(
        "hasparent(X) :- child(P, X). "
        "orphan(X) :- person(X), !hasparent(X).");
    check_program(p);
    REQUIRE(p.strata.strata.size() == 2);
    CHECK(p.strata.strata[0] == std::vector<std::string>{"hasparent"});
    CHECK(p.strata.strata[1] == std::vector<std::string>{"orphan"});
}

TEST_CASE("safety rejects variables bound only under negation") {
    Program p = parse_program("p(X) :- !q(X).");
    CHECK_THROWS_WITH_AS(check_safety(p), doctest::Contains("X"), CheckError);
    Program ok = parse_program(kTreeP);
    CHECK_NOTHROW(check_safety(ok));
    Program tc = parse_program(kTc);
    CHECK_NOTHROW(check_safety(tc));
}

TEST_CASE("head variables must occur in the body") {
    CHECK_THROWS_AS(parse_program("p(X, Y) :- q(X)."), Error);
}

TEST_CASE("arity conflicts are rejected") {
    CHECK_THROWS_AS(parse_program("p(X) :- q(X). p(X, Y) :- q(X), q(Y)."), Error);
    CHECK_THROWS_AS(parse_program("p(X) :- q(X), q(X, X)."), Error);
}

TEST_CASE("a predicate cannot have both facts and rules") {
    CHECK_THROWS_AS(parse_program("p(1). p(X) :- q(X)."), Error);
}

TEST_CASE("program facts must be ground") {
    CHECK_THROWS_AS(parse_program("e(X, 2)."), Error);
}

TEST_CASE("syntax errors carry a source location") {
    try {
        parse_program("tc(X,Y) :- e(X Y).");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column > 1);
    }
}

TEST_CASE("parse then render then parse is stable") {
    for (const char* text : {kTc, kTreeP, "p(X) :- q(X, Y); r(X). e(1, 2). e(2, 3)."}) {
        CAPTURE(text);
        Program p1 = parse_program(text);
        std::string rendered = render_program(p1);
        Program p2 = parse_program(rendered);
        CHECK(render_program(p2) == rendered);
        for (const auto& [pred, body] : p1.defining) {
            CHECK(formula_equal(*body, *p2.defining.at(pred)));
        }
        CHECK(p1.facts == p2.facts);
    }
}

TEST_CASE("rule order does not change the denotation modulo Or order") {
    Program ab = parse_program("p(X) :- q(X). p(X) :- r(X).");
    Program ba = parse_program("p(X) :- r(X). p(X) :- q(X).");
    FormulaPtr swapped = make_or(make_atom("r", {v("p$1")}), make_atom("q", {v("p$1")}));
    CHECK(formula_equal(*ba.defining.at("p"), *swapped));
    CHECK(!formula_equal(*ab.defining.at("p"), *ba.defining.at("p")));
}

TEST_CASE("fact files parse against the program's EDB") {
    Program p = parse_program(kTc);
    auto facts = parse_facts("e(1, 2). % comment\ne(2, 3).", p);
    CHECK(facts.at("e") == rel2("e", {{1, 2}, {2, 3}}));
    CHECK_THROWS_AS(parse_facts("tc(1, 2).", p), Error);
    CHECK_THROWS_AS(parse_facts("e(1).", p), Error);
    CHECK_THROWS_AS(parse_facts("e(X, 2).", p), Error);
}

TEST_CASE("delta files parse with disjoint signs") {
    Program p = parse_program(kTc);
    auto delta = parse_delta("+e(1, 3).\n-e(1, 2).", p);
    CHECK(delta.at("e") == d2("e", {{1, 3}}, {{1, 2}}));
    CHECK_THROWS_AS(parse_delta("+e(1, 2). -e(1, 2).", p), Error);
    CHECK_THROWS_AS(parse_delta("+tc(1, 2).", p), Error);
}

TEST_SUITE_END();
