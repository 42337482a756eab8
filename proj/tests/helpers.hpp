#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "deltalog/ast.hpp"
#include "deltalog/boolean_delta.hpp"
#include "deltalog/relation.hpp"

namespace deltalog::testutil {

inline Relation rel1(const std::string& pred, std::initializer_list<std::int64_t> xs) {
    Relation r(canonical_schema(pred, 1));
    for (auto x : xs) r.insert({Constant{x}});
    return r;
}

inline Relation rel2(const std::string& pred,
                     std::initializer_list<std::pair<std::int64_t, std::int64_t>> xs) {
    Relation r(canonical_schema(pred, 2));
    for (const auto& [a, b] : xs) r.insert({Constant{a}, Constant{b}});
    return r;
}

inline BooleanDelta d1(const std::string& pred,
                       std::initializer_list<std::int64_t> adds,
                       std::initializer_list<std::int64_t> removes) {
    return BooleanDelta(rel1(pred, adds), rel1(pred, removes));
}

inline BooleanDelta d2(const std::string& pred,
                       std::initializer_list<std::pair<std::int64_t, std::int64_t>> adds,
                       std::initializer_list<std::pair<std::int64_t, std::int64_t>> removes) {
    return BooleanDelta(rel2(pred, adds), rel2(pred, removes));
}

inline ActiveDomain dom_of_ints(std::initializer_list<std::int64_t> xs) {
    ActiveDomain d;
    for (auto x : xs) d.add(Constant{x});
    return d;
}

}  // namespace deltalog::testutil
