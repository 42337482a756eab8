#include <doctest.h>

#include <vector>

#include "deltalog/boolean_delta.hpp"
#include "helpers.hpp"

using namespace deltalog;
using namespace deltalog::testutil;

TEST_SUITE_BEGIN("boolean_delta");

TEST_CASE("apply_delta follows (base ∪ adds) \\ removes") {
    CHECK(apply_delta(rel1("s", {1, 2, 3}), d1("s", {3, 4}, {1})) ==
          rel1("s", {2, 3, 4}));
    CHECK(apply_delta(rel1("s", {1, 2, 3}), d1("s", {}, {})) == rel1("s", {1, 2, 3}));
    CHECK(apply_delta(rel1("s", {}), d1("s", {7}, {8})) == rel1("s", {7}));
}

TEST_CASE("apply_delta rejects mismatched schemas") {
    CHECK_THROWS_AS(apply_delta(rel2("p", {}), d1("s", {1}, {})), SchemaError);
}

TEST_CASE("the constructor enforces disjointness") {
    CHECK_THROWS_AS(BooleanDelta(rel1("s", {1, 2}), rel1("s", {2})), SchemaError);
    CHECK_THROWS_AS(BooleanDelta(rel1("s", {1}), rel2("p", {})), SchemaError);
}

TEST_CASE("compose_delta follows the monoid formula and the action law") {
    BooleanDelta left = d1("s", {3, 4}, {1});
    BooleanDelta right = d1("s", {1}, {4});
    BooleanDelta composed = compose_delta(left, right);
    CHECK(composed == d1("s", {1, 3}, {4}));

    // Oracle: all 16 subsets of {1,2,3,4}.
    for (unsigned mask = 0; mask < 16; ++mask) {
        Relation base(canonical_schema("s", 1));
        for (unsigned bit = 0; bit < 4; ++bit) {
            if (mask & (1u << bit)) base.insert({Constant{std::int64_t(bit + 1)}});
        }
        CHECK(apply_delta(base, composed) ==
              apply_delta(apply_delta(base, left), right));
    }
}

TEST_CASE("zero is the identity of the delta monoid") {
    BooleanDelta d = d1("s", {2}, {5});
    BooleanDelta zero = BooleanDelta::zero(canonical_schema("s", 1));
    CHECK(compose_delta(d, zero) == d);
    CHECK(compose_delta(zero, d) == d);
}

TEST_CASE("a later remove cancels an earlier add") {
    CHECK(compose_delta(d1("s", {1}, {}), d1("s", {}, {1})) == d1("s", {}, {1}));
}

TEST_CASE("minus_bot produces the least delta sending b to a") {
    Relation a = rel1("s", {1, 2});
    Relation b = rel1("s", {2, 3});
    Relation u = rel1("s", {1, 2, 3, 4});
    BooleanDelta d = minus_bot(a, b, u);
    CHECK(d == d1("s", {1}, {3, 4}));
    CHECK(apply_delta(b, d) == a);

    CHECK(minus_bot(a, a, u) == d1("s", {}, {3, 4}));
    CHECK(apply_delta(a, minus_bot(a, a, u)) == a);
    CHECK(minus_bot(u, rel1("s", {}), u) == d1("s", {1, 2, 3, 4}, {}));

    CHECK_THROWS_AS(minus_bot(rel1("s", {9}), b, u), SchemaError);
}

TEST_CASE("minus_top produces the greatest delta sending b to a") {
    Relation a = rel1("s", {1, 2});
    Relation b = rel1("s", {2, 3});
    BooleanDelta d = minus_top(a, b);
    CHECK(d == d1("s", {1, 2}, {3}));
    CHECK(apply_delta(b, d) == a);
    CHECK(minus_top(a, a) == d1("s", {1, 2}, {}));
    CHECK(minus_top(a, rel1("s", {})) == d1("s", {1, 2}, {}));
}

TEST_CASE("delta_leq is the adds-fewer/removes-more order") {
    Relation u = rel1("s", {1, 2, 3});
    BooleanDelta bottom(rel1("s", {}), u);
    CHECK(delta_leq(bottom, d1("s", {1}, {2})) == DeltaOrdering::Less);
    BooleanDelta d = d1("s", {1}, {2});
    CHECK(delta_leq(d, d) == DeltaOrdering::Equal);
    // a pure add and a pure remove are comparable: removing is lower
    CHECK(delta_leq(d1("s", {1}, {}), d1("s", {}, {1})) == DeltaOrdering::Greater);
    CHECK(delta_leq(d1("s", {1}, {}), d1("s", {2}, {})) == DeltaOrdering::Incomparable);
    CHECK(delta_leq(d1("s", {1}, {2}), d1("s", {}, {2})) == DeltaOrdering::Greater);
}

TEST_CASE("delta_sup joins a directed collection") {
    std::vector<BooleanDelta> single{d1("s", {1}, {2})};
    CHECK(delta_sup(single) == single[0]);

    std::vector<BooleanDelta> directed{d1("s", {}, {1, 2}), d1("s", {3}, {1})};
    CHECK(delta_sup(directed) == d1("s", {3}, {1}));
    for (const auto& d : directed) {
        auto ord = delta_leq(d, delta_sup(directed));
        CHECK((ord == DeltaOrdering::Less || ord == DeltaOrdering::Equal));
    }

    std::vector<BooleanDelta> chain{d1("s", {}, {1, 2, 3}), d1("s", {1}, {2}),
                                    d1("s", {1, 3}, {2})};
    CHECK(delta_sup(chain) == d1("s", {1, 3}, {2}));
}

TEST_CASE("delta_sup rejects non-directed input") {
    std::vector<BooleanDelta> bad{d1("s", {1}, {}), d1("s", {2}, {})};
    CHECK_THROWS_WITH_AS(delta_sup(bad), doctest::Contains("not directed"), SchemaError);
    CHECK_THROWS_AS(delta_sup(std::vector<BooleanDelta>{}), SchemaError);
}

TEST_CASE("minus operators are sandwich bounds for every valid delta") {
    // Universe {1,2,3}: enumerate all subsets a, b, and every valid delta d
    // with b ⊕ d = a; each must sit between ⊖⊥ and ⊖⊤.
    const std::int64_t atoms[] = {1, 2, 3};
    Relation u = rel1("s", {1, 2, 3});
    auto subset = [&](unsigned mask) {
        Relation r(canonical_schema("s", 1));
        for (unsigned i = 0; i < 3; ++i) {
            if (mask & (1u << i)) r.insert({Constant{atoms[i]}});
        }
        return r;
    };
    for (unsigned am = 0; am < 8; ++am) {
        for (unsigned bm = 0; bm < 8; ++bm) {
            Relation a = subset(am), b = subset(bm);
            BooleanDelta low = minus_bot(a, b, u);
            BooleanDelta high = minus_top(a, b);
            CHECK(apply_delta(b, low) == a);
            CHECK(apply_delta(b, high) == a);
            for (unsigned pm = 0; pm < 8; ++pm) {
                for (unsigned qm = 0; qm < 8; ++qm) {
                    if (pm & qm) continue;
                    BooleanDelta d(subset(pm), subset(qm));
                    if (apply_delta(b, d) != a) continue;
                    auto lo = delta_leq(low, d);
                    auto hi = delta_leq(d, high);
                    CHECK((lo == DeltaOrdering::Less || lo == DeltaOrdering::Equal));
                    CHECK((hi == DeltaOrdering::Less || hi == DeltaOrdering::Equal));
                }
            }
        }
    }
}

TEST_SUITE_END();
