#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "deltalog/errors.hpp"

namespace deltalog {

/// Interned constant: an integer or a lowercase symbol. Variant ordering
/// (integers before symbols) is the canonical order used everywhere.
using Constant = std::variant<std::int64_t, std::string>;

std::string to_string(const Constant& c);

/// Ordered, duplicate-free attribute names. Internally kept sorted so tuple
/// layout is canonical; the order in which names were first supplied is kept
/// for display.
class Schema {
public:
    Schema() = default;
    explicit Schema(std::vector<std::string> names);

    const std::vector<std::string>& names() const { return sorted_; }
    const std::vector<std::string>& display_names() const { return display_; }
    std::size_t size() const { return sorted_.size(); }
    bool empty() const { return sorted_.empty(); }
    bool contains(const std::string& name) const;
    /// Index of `name` in the canonical (sorted) layout.
    std::size_t index_of(const std::string& name) const;
    bool subset_of(const Schema& other) const;

    Schema union_with(const Schema& other) const;

    bool operator==(const Schema& other) const { return sorted_ == other.sorted_; }
    bool operator!=(const Schema& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    std::vector<std::string> sorted_;
    std::vector<std::string> display_;
};

/// A tuple's constants, positionally aligned with the canonical schema layout.
using Tuple = std::vector<Constant>;

/// Finite set of named tuples over a schema.
class Relation {
public:
    Relation() = default;
    explicit Relation(Schema schema) : schema_(std::move(schema)) {}
    Relation(Schema schema, std::set<Tuple> tuples);

    const Schema& schema() const { return schema_; }
    const std::set<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    bool contains(const Tuple& t) const { return tuples_.count(t) > 0; }

    void insert(Tuple t);

    bool operator==(const Relation& other) const {
        return schema_ == other.schema_ && tuples_ == other.tuples_;
    }
    bool operator!=(const Relation& other) const { return !(*this == other); }

private:
    Schema schema_;
    std::set<Tuple> tuples_;
};

/// The set of constants the closed world ranges over.
class ActiveDomain {
public:
    ActiveDomain() = default;
    explicit ActiveDomain(std::set<Constant> constants) : constants_(std::move(constants)) {}

    const std::set<Constant>& constants() const { return constants_; }
    std::size_t size() const { return constants_.size(); }
    bool empty() const { return constants_.empty(); }
    bool contains(const Constant& c) const { return constants_.count(c) > 0; }
    void add(const Constant& c) { constants_.insert(c); }
    void add_all(const ActiveDomain& other) {
        constants_.insert(other.constants_.begin(), other.constants_.end());
    }

private:
    std::set<Constant> constants_;
};

/// Restriction of every tuple to `target` (projection); duplicates collapse.
Relation select_to(const Relation& r, const Schema& target);

/// Re-key attributes through a bijection old-name -> new-name.
Relation rename(const Relation& r, const std::map<std::string, std::string>& mapping);

/// Cylindrification: all tuples over `target` whose restriction to schema(r)
/// is in r, extra attributes ranging over `dom`.
Relation extend_to(const Relation& r, const Schema& target, const ActiveDomain& dom);

/// universe(schema(r), dom) minus r. Every constant of r must lie in dom.
Relation complement(const Relation& r, const ActiveDomain& dom);

Relation set_union(const Relation& a, const Relation& b);
Relation set_intersect(const Relation& a, const Relation& b);
Relation set_difference(const Relation& a, const Relation& b);

/// All |dom|^|schema| tuples; the one-element relation of the empty tuple for
/// the empty schema. Throws SizeCapError past the configured cap.
Relation universe(const Schema& schema, const ActiveDomain& dom);

/// Universe size cap: DELTALOG_MAX_RELATION_SIZE if set, else 10^6 tuples.
std::size_t universe_cap();

}  // namespace deltalog
