#include "deltalog/boolean_delta.hpp"

#include <cassert>

namespace deltalog {

BooleanDelta::BooleanDelta(Relation adds, Relation removes)
    : adds_(std::move(adds)), removes_(std::move(removes)) {
    if (adds_.schema() != removes_.schema()) {
        throw SchemaError("delta: adds schema " + adds_.schema().to_string() +
                          " differs from removes schema " + removes_.schema().to_string());
    }
    for (const auto& t : adds_.tuples()) {
        if (removes_.contains(t)) {
            std::string fact;
            for (const auto& c : t) fact += (fact.empty() ? "" : ",") + to_string(c);
            throw SchemaError("delta: adds and removes overlap on tuple (" + fact + ")");
        }
    }
}

Relation apply_delta(const Relation& base, const BooleanDelta& d) {
    if (base.schema() != d.schema()) {
        throw SchemaError("apply_delta: base schema " + base.schema().to_string() +
                          " differs from delta schema " + d.schema().to_string());
    }
    return set_difference(set_union(base, d.adds()), d.removes());
}

BooleanDelta compose_delta(const BooleanDelta& d1, const BooleanDelta& d2) {
    if (d1.schema() != d2.schema()) {
        throw SchemaError("compose_delta: schema mismatch");
    }
    // (p, q) ⋈ (r, s) = ((p \ s) ∪ r, (q \ r) ∪ s)
    Relation adds = set_union(set_difference(d1.adds(), d2.removes()), d2.adds());
    Relation removes = set_union(set_difference(d1.removes(), d2.adds()), d2.removes());
    return BooleanDelta(std::move(adds), std::move(removes));
}

BooleanDelta minus_bot(const Relation& a, const Relation& b, const Relation& universe) {
    if (a.schema() != b.schema() || a.schema() != universe.schema()) {
        throw SchemaError("minus_bot: schema mismatch");
    }
    for (const auto& t : a.tuples()) {
        if (!universe.contains(t)) throw SchemaError("minus_bot: a is not contained in universe");
    }
    for (const auto& t : b.tuples()) {
        if (!universe.contains(t)) throw SchemaError("minus_bot: b is not contained in universe");
    }
    return BooleanDelta(set_difference(a, b), set_difference(universe, a));
}

BooleanDelta minus_top(const Relation& a, const Relation& b) {
    if (a.schema() != b.schema()) {
        throw SchemaError("minus_top: schema mismatch");
    }
    return BooleanDelta(a, set_difference(b, a));
}

namespace {

bool subset(const Relation& a, const Relation& b) {
    for (const auto& t : a.tuples()) {
        if (!b.contains(t)) return false;
    }
    return true;
}

}  // namespace

DeltaOrdering delta_leq(const BooleanDelta& d1, const BooleanDelta& d2) {
    if (d1.schema() != d2.schema()) {
        throw SchemaError("delta_leq: schema mismatch");
    }
    bool le = subset(d1.adds(), d2.adds()) && subset(d2.removes(), d1.removes());
    bool ge = subset(d2.adds(), d1.adds()) && subset(d1.removes(), d2.removes());
    if (le && ge) return DeltaOrdering::Equal;
    if (le) return DeltaOrdering::Less;
    if (ge) return DeltaOrdering::Greater;
    return DeltaOrdering::Incomparable;
}

BooleanDelta delta_sup(std::span<const BooleanDelta> ds) {
    if (ds.empty()) {
        throw SchemaError("delta_sup: empty collection");
    }
    for (std::size_t i = 1; i < ds.size(); ++i) {
        if (ds[i].schema() != ds[0].schema()) throw SchemaError("delta_sup: schema mismatch");
    }
    // Directedness: each pair must be dominated by some member of the collection.
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
            bool dominated = false;
            for (std::size_t k = 0; k < ds.size() && !dominated; ++k) {
                auto oi = delta_leq(ds[i], ds[k]);
                auto oj = delta_leq(ds[j], ds[k]);
                bool i_le = oi == DeltaOrdering::Less || oi == DeltaOrdering::Equal;
                bool j_le = oj == DeltaOrdering::Less || oj == DeltaOrdering::Equal;
                dominated = i_le && j_le;
            }
            if (!dominated) {
                throw SchemaError(
                    "delta_sup: input is not directed; elements " + std::to_string(i) + " and " +
                    std::to_string(j) + " have no upper bound in the collection");
            }
        }
    }
    Relation adds = ds[0].adds();
    Relation removes = ds[0].removes();
    for (std::size_t i = 1; i < ds.size(); ++i) {
        adds = set_union(adds, ds[i].adds());
        removes = set_intersect(removes, ds[i].removes());
    }
    return BooleanDelta(std::move(adds), std::move(removes));
}

}  // namespace deltalog
