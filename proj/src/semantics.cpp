#include "deltalog/semantics.hpp"

#include <algorithm>

#include "deltalog/errors.hpp"

namespace deltalog {

ActiveDomain domain_of(const Relation& r) {
    ActiveDomain dom;
    for (const auto& t : r.tuples()) {
        for (const auto& c : t) dom.add(c);
    }
    return dom;
}

ActiveDomain active_domain(const Program& p, const Interpretation& interp) {
    ActiveDomain dom(p.constants);
    for (const auto& [pred, r] : interp.base) dom.add_all(domain_of(r));
    for (const auto& [pred, d] : interp.deltas) {
        dom.add_all(domain_of(d.adds()));
        dom.add_all(domain_of(d.removes()));
    }
    return dom;
}

Interpretation initial_interpretation(const Program& p,
                                      const std::map<std::string, Relation>& extra_facts) {
    Interpretation interp;
    for (const auto& [pred, arity] : p.edb) {
        auto it = p.facts.find(pred);
        interp.base[pred] =
            it != p.facts.end() ? it->second : Relation(canonical_schema(pred, arity));
    }
    for (const auto& [pred, r] : extra_facts) {
        auto it = p.edb.find(pred);
        if (it == p.edb.end()) {
            throw SchemaError("facts given for undeclared EDB predicate '" + pred + "'");
        }
        if (r.schema() != canonical_schema(pred, it->second)) {
            throw SchemaError("facts for '" + pred + "' have the wrong arity");
        }
        Relation merged = interp.base[pred];
        for (const auto& t : r.tuples()) merged.insert(t);
        interp.base[pred] = std::move(merged);
    }
    for (const auto& [pred, arity] : p.idb) {
        interp.base[pred] = Relation(canonical_schema(pred, arity));
    }
    return interp;
}

namespace {

// Evaluate over exactly the formula's free-variable schema; the public entry
// point cylindrifies to the requested target.
Relation eval_tight(const Formula& f, const Interpretation& interp,
                    const ActiveDomain& dom);

Relation eval_atom(const Formula::Atom& atom, const Interpretation& interp) {
    const Relation* source = nullptr;
    Relation zero_holder;
    switch (atom.kind) {
        case AtomKind::Base: {
            auto it = interp.base.find(atom.pred);
            if (it == interp.base.end()) {
                throw EvalError("no relation for predicate '" + atom.pred + "'");
            }
            source = &it->second;
            break;
        }
        case AtomKind::DeltaAdd:
        case AtomKind::DeltaRemove: {
            auto it = interp.deltas.find(atom.pred);
            if (it == interp.deltas.end()) {
                auto base_it = interp.base.find(atom.pred);
                if (base_it == interp.base.end()) {
                    throw EvalError("no relation for predicate '" + atom.pred + "'");
                }
                zero_holder = Relation(base_it->second.schema());
                source = &zero_holder;
            } else {
                source = atom.kind == AtomKind::DeltaAdd ? &it->second.adds()
                                                         : &it->second.removes();
            }
            break;
        }
    }
    if (source->schema().size() != atom.args.size()) {
        throw EvalError("arity mismatch for predicate '" + atom.pred + "'");
    }

    // Position of argument i in the canonical tuple layout.
    std::vector<std::size_t> slot(atom.args.size());
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
        slot[i] = source->schema().index_of(canonical_attr(atom.pred, i + 1));
    }

    std::vector<std::string> vars;
    for (const auto& t : atom.args) {
        if (const auto* v = std::get_if<Variable>(&t)) vars.push_back(v->name);
    }
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    Schema out_schema{vars};

    Relation out(out_schema);
    for (const auto& tuple : source->tuples()) {
        std::map<std::string, Constant> binding;
        bool ok = true;
        for (std::size_t i = 0; i < atom.args.size() && ok; ++i) {
            const Constant& value = tuple[slot[i]];
            if (const auto* c = std::get_if<Constant>(&atom.args[i])) {
                ok = *c == value;
            } else {
                const auto& name = std::get<Variable>(atom.args[i]).name;
                auto [it, inserted] = binding.emplace(name, value);
                if (!inserted) ok = it->second == value;
            }
        }
        if (!ok) continue;
        Tuple projected;
        projected.reserve(vars.size());
        for (const auto& name : out_schema.names()) projected.push_back(binding.at(name));
        out.insert(std::move(projected));
    }
    return out;
}

// Natural join; on shared-schema inputs this is intersection, on disjoint
// schemas the cross product. Equivalent to cylindrifying both sides to the
// union schema and intersecting, without materialising the cylinders.
Relation natural_join(const Relation& l, const Relation& r) {
    const Schema joint = l.schema().union_with(r.schema());
    std::vector<std::size_t> key_l, key_r;  // shared attributes, same order
    for (const auto& name : l.schema().names()) {
        if (r.schema().contains(name)) {
            key_l.push_back(l.schema().index_of(name));
            key_r.push_back(r.schema().index_of(name));
        }
    }
    // out attr -> (take from l?, source index)
    std::vector<std::pair<bool, std::size_t>> slots;
    for (const auto& name : joint.names()) {
        if (l.schema().contains(name)) slots.emplace_back(true, l.schema().index_of(name));
        else slots.emplace_back(false, r.schema().index_of(name));
    }
    std::map<Tuple, std::vector<const Tuple*>> by_key;
    for (const auto& rt : r.tuples()) {
        Tuple key;
        key.reserve(key_r.size());
        for (std::size_t i : key_r) key.push_back(rt[i]);
        by_key[std::move(key)].push_back(&rt);
    }
    Relation out(joint);
    for (const auto& lt : l.tuples()) {
        Tuple key;
        key.reserve(key_l.size());
        for (std::size_t i : key_l) key.push_back(lt[i]);
        auto it = by_key.find(key);
        if (it == by_key.end()) continue;
        for (const Tuple* rt : it->second) {
            Tuple merged;
            merged.reserve(slots.size());
            for (const auto& [from_l, idx] : slots)
                merged.push_back(from_l ? lt[idx] : (*rt)[idx]);
            out.insert(std::move(merged));
        }
    }
    return out;
}

Relation eval_tight(const Formula& f, const Interpretation& interp,
                    const ActiveDomain& dom) {
    return std::visit(
        [&](const auto& node) -> Relation {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Top>) {
                return universe(Schema{}, dom);
            } else if constexpr (std::is_same_v<T, Formula::Bottom>) {
                return Relation(Schema{});
            } else if constexpr (std::is_same_v<T, Formula::Atom>) {
                return eval_atom(node, interp);
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                Relation l = eval_tight(*node.left, interp, dom);
                Relation r = eval_tight(*node.right, interp, dom);
                return natural_join(l, r);
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                Relation l = eval_tight(*node.left, interp, dom);
                Relation r = eval_tight(*node.right, interp, dom);
                Schema joint = l.schema().union_with(r.schema());
                return set_union(extend_to(l, joint, dom), extend_to(r, joint, dom));
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return complement(eval_tight(*node.body, interp, dom), dom);
            } else {
                Relation body = eval_tight(*node.body, interp, dom);
                if (!body.schema().contains(node.var)) {
                    // Vacuous binder: witness needed only when dom is empty.
                    return dom.empty() ? Relation(body.schema()) : body;
                }
                std::vector<std::string> kept;
                for (const auto& name : body.schema().names()) {
                    if (name != node.var) kept.push_back(name);
                }
                return select_to(body, Schema{kept});
            }
        },
        f.node);
}

}  // namespace

Relation eval(const Formula& f, const Schema& target, const Interpretation& interp,
              const ActiveDomain& dom) {
    Relation tight = eval_tight(f, interp, dom);
    if (!tight.schema().subset_of(target)) {
        throw EvalError("target schema " + target.to_string() +
                        " does not cover free variables " + tight.schema().to_string());
    }
    return extend_to(tight, target, dom);
}

}  // namespace deltalog
