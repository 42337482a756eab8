#include "deltalog/relation.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace deltalog {

std::string to_string(const Constant& c) {
    if (std::holds_alternative<std::int64_t>(c)) {
        return std::to_string(std::get<std::int64_t>(c));
    }
    return std::get<std::string>(c);
}

Schema::Schema(std::vector<std::string> names) : display_(names) {
    sorted_ = std::move(names);
    std::sort(sorted_.begin(), sorted_.end());
    auto dup = std::adjacent_find(sorted_.begin(), sorted_.end());
    if (dup != sorted_.end()) {
        throw SchemaError("duplicate attribute name '" + *dup + "' in schema");
    }
}

bool Schema::contains(const std::string& name) const {
    return std::binary_search(sorted_.begin(), sorted_.end(), name);
}

std::size_t Schema::index_of(const std::string& name) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), name);
    if (it == sorted_.end() || *it != name) {
        throw SchemaError("attribute '" + name + "' not in schema " + to_string());
    }
    return static_cast<std::size_t>(it - sorted_.begin());
}

bool Schema::subset_of(const Schema& other) const {
    return std::includes(other.sorted_.begin(), other.sorted_.end(), sorted_.begin(),
                         sorted_.end());
}

Schema Schema::union_with(const Schema& other) const {
    std::vector<std::string> merged;
    std::set_union(sorted_.begin(), sorted_.end(), other.sorted_.begin(), other.sorted_.end(),
                   std::back_inserter(merged));
    return Schema(std::move(merged));
}

std::string Schema::to_string() const {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < sorted_.size(); ++i) {
        if (i > 0) out << ",";
        out << sorted_[i];
    }
    out << "}";
    return out.str();
}

Relation::Relation(Schema schema, std::set<Tuple> tuples) : schema_(std::move(schema)) {
    for (auto& t : tuples) {
        if (t.size() != schema_.size()) {
            throw SchemaError("tuple arity " + std::to_string(t.size()) +
                              " does not cover schema " + schema_.to_string());
        }
    }
    tuples_ = std::move(tuples);
}

void Relation::insert(Tuple t) {
    if (t.size() != schema_.size()) {
        throw SchemaError("tuple arity " + std::to_string(t.size()) + " does not cover schema " +
                          schema_.to_string());
    }
    tuples_.insert(std::move(t));
}

namespace {

void require_same_schema(const Relation& a, const Relation& b, const char* op) {
    if (a.schema() != b.schema()) {
        throw SchemaError(std::string(op) + ": schema mismatch between " +
                          a.schema().to_string() + " and " + b.schema().to_string());
    }
}

}  // namespace

Relation select_to(const Relation& r, const Schema& target) {
    if (!target.subset_of(r.schema())) {
        std::string missing;
        for (const auto& n : target.names()) {
            if (!r.schema().contains(n)) missing += (missing.empty() ? "" : ", ") + n;
        }
        throw SchemaError("select_to: target attributes not in source schema: " + missing);
    }
    std::vector<std::size_t> idx;
    idx.reserve(target.size());
    for (const auto& n : target.names()) idx.push_back(r.schema().index_of(n));
    Relation out(target);
    for (const auto& t : r.tuples()) {
        Tuple u;
        u.reserve(idx.size());
        for (auto i : idx) u.push_back(t[i]);
        out.insert(std::move(u));
    }
    return out;
}

Relation rename(const Relation& r, const std::map<std::string, std::string>& mapping) {
    if (mapping.size() != r.schema().size()) {
        throw SchemaError("rename: mapping domain does not equal source schema");
    }
    std::vector<std::string> new_names;
    new_names.reserve(mapping.size());
    for (const auto& [from, to] : mapping) {
        if (!r.schema().contains(from)) {
            throw SchemaError("rename: attribute '" + from + "' not in source schema");
        }
        new_names.push_back(to);
    }
    Schema target(new_names);  // rejects duplicates, i.e. non-injective mappings
    // Position i of the target layout is fed from the source attribute mapped to it.
    std::vector<std::size_t> src_idx(target.size());
    for (const auto& [from, to] : mapping) {
        src_idx[target.index_of(to)] = r.schema().index_of(from);
    }
    Relation out(target);
    for (const auto& t : r.tuples()) {
        Tuple u(target.size());
        for (std::size_t i = 0; i < target.size(); ++i) u[i] = t[src_idx[i]];
        out.insert(std::move(u));
    }
    return out;
}

Relation extend_to(const Relation& r, const Schema& target, const ActiveDomain& dom) {
    if (!r.schema().subset_of(target)) {
        throw SchemaError("extend_to: source schema " + r.schema().to_string() +
                          " is not a subset of target " + target.to_string());
    }
    // Positions of target already covered by r, and the fresh positions.
    std::vector<std::optional<std::size_t>> from_src(target.size());
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < target.size(); ++i) {
        const auto& name = target.names()[i];
        if (r.schema().contains(name)) {
            from_src[i] = r.schema().index_of(name);
        } else {
            fresh.push_back(i);
        }
    }
    Relation out(target);
    if (r.empty()) return out;
    std::vector<Constant> doms(dom.constants().begin(), dom.constants().end());
    if (!fresh.empty() && doms.empty()) return out;
    for (const auto& t : r.tuples()) {
        Tuple base(target.size());
        for (std::size_t i = 0; i < target.size(); ++i) {
            if (from_src[i]) base[i] = t[*from_src[i]];
        }
        // Enumerate dom^fresh extensions.
        std::vector<std::size_t> counter(fresh.size(), 0);
        while (true) {
            Tuple u = base;
            for (std::size_t k = 0; k < fresh.size(); ++k) u[fresh[k]] = doms[counter[k]];
            out.insert(std::move(u));
            std::size_t k = 0;
            for (; k < counter.size(); ++k) {
                if (++counter[k] < doms.size()) break;
                counter[k] = 0;
            }
            if (k == counter.size()) break;
        }
    }
    return out;
}

Relation complement(const Relation& r, const ActiveDomain& dom) {
    for (const auto& t : r.tuples()) {
        for (const auto& c : t) {
            if (!dom.contains(c)) {
                throw EvalError("complement: constant '" + to_string(c) +
                                "' outside the active domain (closed-world violation)");
            }
        }
    }
    Relation all = universe(r.schema(), dom);
    return set_difference(all, r);
}

Relation set_union(const Relation& a, const Relation& b) {
    require_same_schema(a, b, "union");
    Relation out = a;
    for (const auto& t : b.tuples()) out.insert(t);
    return out;
}

Relation set_intersect(const Relation& a, const Relation& b) {
    require_same_schema(a, b, "intersect");
    Relation out(a.schema());
    const Relation& small = a.size() <= b.size() ? a : b;
    const Relation& large = a.size() <= b.size() ? b : a;
    for (const auto& t : small.tuples()) {
        if (large.contains(t)) out.insert(t);
    }
    return out;
}

Relation set_difference(const Relation& a, const Relation& b) {
    require_same_schema(a, b, "difference");
    Relation out(a.schema());
    for (const auto& t : a.tuples()) {
        if (!b.contains(t)) out.insert(t);
    }
    return out;
}

std::size_t universe_cap() {
    static const std::size_t cap = [] {
        if (const char* env = std::getenv("DELTALOG_MAX_RELATION_SIZE")) {
            return static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
        }
        return static_cast<std::size_t>(1000000);
    }();
    return cap;
}

Relation universe(const Schema& schema, const ActiveDomain& dom) {
    if (schema.empty()) {
        Relation out(schema);
        out.insert(Tuple{});
        return out;
    }
    if (dom.empty()) {
        return Relation(schema);  // |dom|^n = 0 tuples
    }
    double size = 1.0;
    for (std::size_t i = 0; i < schema.size(); ++i) size *= static_cast<double>(dom.size());
    if (size > static_cast<double>(universe_cap())) {
        throw SizeCapError("universe over " + schema.to_string() + " would hold " +
                           std::to_string(size) + " tuples, over the cap of " +
                           std::to_string(universe_cap()) +
                           "; use a smaller domain or raise DELTALOG_MAX_RELATION_SIZE");
    }
    std::vector<Constant> doms(dom.constants().begin(), dom.constants().end());
    Relation out(schema);
    std::vector<std::size_t> counter(schema.size(), 0);
    while (true) {
        Tuple t;
        t.reserve(schema.size());
        for (auto i : counter) t.push_back(doms[i]);
        out.insert(std::move(t));
        std::size_t k = 0;
        for (; k < counter.size(); ++k) {
            if (++counter[k] < doms.size()) break;
            counter[k] = 0;
        }
        if (k == counter.size()) break;
    }
    return out;
}

}  // namespace deltalog
