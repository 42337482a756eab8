#pragma once

#include <span>
#include <vector>

#include "deltalog/relation.hpp"

namespace deltalog {

/// A change to a relation: disjoint (adds, removes) over one schema.
/// Together with compose_delta this is the change monoid acting on relations
/// through apply_delta.
class BooleanDelta {
public:
    BooleanDelta(Relation adds, Relation removes);

    static BooleanDelta zero(const Schema& schema) {
        return BooleanDelta(Relation(schema), Relation(schema));
    }

    const Relation& adds() const { return adds_; }
    const Relation& removes() const { return removes_; }
    const Schema& schema() const { return adds_.schema(); }
    bool is_zero() const { return adds_.empty() && removes_.empty(); }

    bool operator==(const BooleanDelta& other) const {
        return adds_ == other.adds_ && removes_ == other.removes_;
    }
    bool operator!=(const BooleanDelta& other) const { return !(*this == other); }

private:
    Relation adds_;
    Relation removes_;
};

/// (base ∪ adds) \ removes.
Relation apply_delta(const Relation& base, const BooleanDelta& d);

/// Monoid operation: applying the result equals applying d1 then d2.
BooleanDelta compose_delta(const BooleanDelta& d1, const BooleanDelta& d2);

/// The least delta (under delta_leq) sending b to a: (a \ b, universe \ a).
BooleanDelta minus_bot(const Relation& a, const Relation& b, const Relation& universe);

/// The greatest delta sending b to a: (a, b \ a).
BooleanDelta minus_top(const Relation& a, const Relation& b);

enum class DeltaOrdering { Less, Greater, Equal, Incomparable };

/// d1 is below d2 iff d1 adds less and removes more.
DeltaOrdering delta_leq(const BooleanDelta& d1, const BooleanDelta& d2);

/// Least upper bound (union of adds, intersection of removes) of a directed
/// collection; rejects non-directed input.
BooleanDelta delta_sup(std::span<const BooleanDelta> ds);

}  // namespace deltalog
