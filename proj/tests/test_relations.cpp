#include <doctest.h>

#include <random>

#include "deltalog/relation.hpp"
#include "helpers.hpp"

using namespace deltalog;
using namespace deltalog::testutil;

namespace {

Relation rel_xy(std::initializer_list<std::pair<std::int64_t, std::int64_t>> xs) {
    Relation r(Schema{{"x", "y"}});
    for (const auto& [a, b] : xs) r.insert({Constant{a}, Constant{b}});
    return r;
}

Relation rel_x(std::initializer_list<std::int64_t> xs) {
    Relation r(Schema{{"x"}});
    for (auto a : xs) r.insert({Constant{a}});
    return r;
}

}  // namespace

TEST_SUITE_BEGIN("relations");

TEST_CASE("select_to restricts and collapses") {
    CHECK(select_to(rel_xy({{1, 2}}), Schema{{"x"}}) == rel_x({1}));
    Relation r = rel_xy({{1, 2}, {3, 4}});
    CHECK(select_to(r, r.schema()) == r);
    CHECK(select_to(rel_xy({{1, 2}, {1, 3}}), Schema{{"x"}}) == rel_x({1}));
    CHECK_THROWS_AS(select_to(rel_x({1}), Schema{{"z"}}), SchemaError);
}

TEST_CASE("rename re-keys through a bijection") {
    Relation r(Schema{{"a"}});
    r.insert({Constant{std::int64_t{1}}});
    CHECK(rename(r, {{"a", "x"}}) == rel_x({1}));
    CHECK(rename(r, {{"a", "a"}}) == r);
    CHECK(rename(rename(r, {{"a", "x"}}), {{"x", "a"}}) == r);
    CHECK_THROWS_AS(rename(rel_xy({{1, 2}}), {{"x", "q"}, {"y", "q"}}), SchemaError);
    CHECK_THROWS_AS(rename(rel_xy({{1, 2}}), {{"x", "q"}}), SchemaError);
}

TEST_CASE("extend_to cylindrifies over the domain") {
    ActiveDomain dom = dom_of_ints({1, 2});
    CHECK(extend_to(rel_x({1}), Schema{{"x", "y"}}, dom) == rel_xy({{1, 1}, {1, 2}}));
    CHECK(extend_to(rel_x({1}), Schema{{"x"}}, dom) == rel_x({1}));
    CHECK(extend_to(rel_x({}), Schema{{"x", "y"}}, dom) == rel_xy({}));
    CHECK_THROWS_AS(extend_to(rel_xy({{1, 2}}), Schema{{"x"}}, dom), SchemaError);
}

TEST_CASE("complement is the universe-relative negation") {
    ActiveDomain dom = dom_of_ints({1, 2});
    CHECK(complement(rel_x({}), dom) == rel_x({1, 2}));
    Relation r = rel_x({2});
    CHECK(complement(complement(r, dom), dom) == r);
    CHECK(complement(rel_xy({{1, 1}}), dom) == rel_xy({{1, 2}, {2, 1}, {2, 2}}));
    CHECK_THROWS_AS(complement(rel_x({7}), dom), EvalError);
}

TEST_CASE("set operations require matching schemas") {
    Relation r = rel_x({1, 2});
    ActiveDomain dom = dom_of_ints({1, 2, 3});
    CHECK(set_union(r, rel_x({})) == r);
    CHECK(set_intersect(r, universe(r.schema(), dom)) == r);
    CHECK(set_intersect(rel_x({1, 2}), rel_x({2, 3})) == rel_x({2}));
    CHECK(set_difference(rel_x({1, 2}), rel_x({2})) == rel_x({1}));
    CHECK_THROWS_AS(set_union(rel_x({1}), rel_xy({})), SchemaError);
}

TEST_CASE("De Morgan holds on random relations") {
    ActiveDomain dom = dom_of_ints({1, 2, 3});
    std::mt19937_64 rng(7);
    Relation all = universe(Schema{{"x", "y"}}, dom);
    for (int round = 0; round < 50; ++round) {
        Relation r1(all.schema()), r2(all.schema());
        for (const auto& t : all.tuples()) {
            if (rng() % 2) r1.insert(t);
            if (rng() % 2) r2.insert(t);
        }
        CHECK(complement(set_union(r1, r2), dom) ==
              set_intersect(complement(r1, dom), complement(r2, dom)));
        CHECK(complement(set_intersect(r1, r2), dom) ==
              set_union(complement(r1, dom), complement(r2, dom)));
    }
}

TEST_CASE("boolean algebra axioms hold exhaustively on a unary schema") {
    ActiveDomain dom = dom_of_ints({1, 2, 3});
    Relation top = universe(Schema{{"x"}}, dom);
    auto subset = [&](unsigned mask) {
        Relation r(Schema{{"x"}});
        unsigned i = 0;
        for (const auto& t : top.tuples()) {
            if (mask & (1u << i)) r.insert(t);
            ++i;
        }
        return r;
    };
    for (unsigned am = 0; am < 8; ++am) {
        Relation a = subset(am);
        CHECK(set_union(a, complement(a, dom)) == top);
        CHECK(set_intersect(a, complement(a, dom)) == Relation(a.schema()));
        for (unsigned bm = 0; bm < 8; ++bm) {
            Relation b = subset(bm);
            CHECK(set_union(a, b) == set_union(b, a));
            CHECK(set_intersect(a, b) == set_intersect(b, a));
            for (unsigned cm = 0; cm < 8; ++cm) {
                Relation c = subset(cm);
                CHECK(set_intersect(a, set_union(b, c)) ==
                      set_union(set_intersect(a, b), set_intersect(a, c)));
            }
        }
    }
}

TEST_CASE("select_to distributes over union") {
    std::mt19937_64 rng(11);
    ActiveDomain dom = dom_of_ints({1, 2, 3});
    Relation all = universe(Schema{{"x", "y"}}, dom);
    for (int round = 0; round < 30; ++round) {
        Relation a(all.schema()), b(all.schema());
        for (const auto& t : all.tuples()) {
            if (rng() % 2) a.insert(t);
            if (rng() % 3 == 0) b.insert(t);
        }
        CHECK(select_to(set_union(a, b), Schema{{"x"}}) ==
              set_union(select_to(a, Schema{{"x"}}), select_to(b, Schema{{"x"}})));
    }
}

TEST_CASE("extend then select back is the identity") {
    ActiveDomain dom = dom_of_ints({1, 2, 3});
    Relation r = rel_x({1, 3});
    CHECK(select_to(extend_to(r, Schema{{"x", "y"}}, dom), r.schema()) == r);
}

TEST_CASE("universe enumerates dom^arity and respects the cap") {
    ActiveDomain dom = dom_of_ints({1, 2});
    CHECK(universe(Schema{{"x"}}, dom) == rel_x({1, 2}));
    Relation nullary = universe(Schema{}, dom);
    CHECK(nullary.size() == 1);
    CHECK(nullary.contains(Tuple{}));
    ActiveDomain dom3 = dom_of_ints({1, 2, 3});
    CHECK(universe(Schema{{"x", "y"}}, dom3).size() == 9);

    ActiveDomain big;
    for (std::int64_t i = 0; i < 40; ++i) big.add(Constant{i});
    CHECK_THROWS_AS(universe(Schema{{"a", "b", "c", "d"}}, big), SizeCapError);
}

TEST_SUITE_END();
