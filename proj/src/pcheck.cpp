#include "deltalog/pcheck.hpp"

#include <algorithm>
#include <random>

#include "deltalog/derivative.hpp"
#include "deltalog/errors.hpp"

namespace deltalog {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(Rng& rng) { return pick(rng, 2) == 0; }

struct Signature {
    std::map<std::string, std::size_t> preds;  // name -> arity
};

Relation random_relation(Rng& rng, const Schema& schema, const ActiveDomain& dom) {
    Relation all = universe(schema, dom);
    Relation out(schema);
    for (const auto& t : all.tuples()) {
        if (pick(rng, 3) == 0) out.insert(t);
    }
    return out;
}

BooleanDelta random_delta(Rng& rng, const Schema& schema, const ActiveDomain& dom) {
    Relation all = universe(schema, dom);
    Relation adds(schema), removes(schema);
    for (const auto& t : all.tuples()) {
        switch (pick(rng, 4)) {
            case 0: adds.insert(t); break;
            case 1: removes.insert(t); break;
            default: break;
        }
    }
    return BooleanDelta(std::move(adds), std::move(removes));
}

std::string describe_interp(const Interpretation& interp) {
    std::string out;
    auto show_rel = [&](const Relation& r) {
        out += "{";
        bool first_t = true;
        for (const auto& t : r.tuples()) {
            if (!first_t) out += ",";
            first_t = false;
            out += "(";
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) out += ",";
                out += to_string(t[i]);
            }
            out += ")";
        }
        out += "}";
    };
    for (const auto& [pred, r] : interp.base) {
        out += " " + pred + "=";
        show_rel(r);
    }
    for (const auto& [pred, d] : interp.deltas) {
        out += " d" + pred + "=+";
        show_rel(d.adds());
        out += "/-";
        show_rel(d.removes());
    }
    return out;
}

// One failing property of the formula under the given state, or "" if all
// four families hold. `split` supplies a two-stage decomposition of the
// deltas for the additivity check.
std::string check_case(const FormulaPtr& T, const Interpretation& state,
                       const std::map<std::string, BooleanDelta>& half1,
                       const std::map<std::string, BooleanDelta>& half2,
                       const ActiveDomain& dom) {
    std::set<std::string> free_set = free_variables(*T);
    std::vector<std::string> frees(free_set.begin(), free_set.end());
    Schema schema{frees};
    Relation uni = universe(schema, dom);

    Interpretation base{state.base, {}};
    Interpretation next = base;
    for (const auto& [pred, d] : state.deltas) {
        next.base[pred] = apply_delta(next.base.at(pred), d);
    }

    FormulaPtr up = delta_transform(T);
    FormulaPtr down = nabla_transform(T);

    Relation old_v = eval(*T, schema, base, dom);
    Relation new_v = eval(*T, schema, next, dom);
    Relation d_add = eval(*up, schema, state, dom);
    Relation d_rem = eval(*down, schema, state, dom);

    if (!set_intersect(d_add, d_rem).empty()) {
        return "disjointness: evaluated gain and loss overlap";
    }
    BooleanDelta d(d_add, d_rem);
    if (apply_delta(old_v, d) != new_v) {
        return "derivative condition: old value plus derivative misses the new value";
    }
    auto low = minus_bot(new_v, old_v, uni);
    auto high = minus_top(new_v, old_v);
    auto ord_low = delta_leq(low, d);
    auto ord_high = delta_leq(d, high);
    if ((ord_low != DeltaOrdering::Less && ord_low != DeltaOrdering::Equal) ||
        (ord_high != DeltaOrdering::Less && ord_high != DeltaOrdering::Equal)) {
        return "sandwich: derivative escapes the minus-operator bounds";
    }

    // Regularity at zero: no pending changes means no derivative.
    Interpretation at_zero = base;
    for (const auto& [pred, r] : base.base) {
        at_zero.deltas.emplace(pred, BooleanDelta::zero(r.schema()));
    }
    if (!eval(*up, schema, at_zero, dom).empty() ||
        !eval(*down, schema, at_zero, dom).empty()) {
        return "regularity: nonzero derivative at the zero change";
    }

    // Regularity under composition: d(a, δ1·δ2) = d(a, δ1) · d(a⊕δ1, δ2).
    Interpretation first = base;
    first.deltas = half1;
    Interpretation shifted;
    for (const auto& [pred, r] : base.base) {
        auto it = half1.find(pred);
        shifted.base[pred] = it != half1.end() ? apply_delta(r, it->second) : r;
    }
    shifted.deltas = half2;
    BooleanDelta d1(set_difference(eval(*up, schema, first, dom),
                                   eval(*down, schema, first, dom)),
                    eval(*down, schema, first, dom));
    BooleanDelta d2(set_difference(eval(*up, schema, shifted, dom),
                                   eval(*down, schema, shifted, dom)),
                    eval(*down, schema, shifted, dom));
    Relation composed_new = eval(*T, schema, [&] {
        Interpretation two = shifted;
        two.deltas.clear();
        for (const auto& [pred, r] : shifted.base) {
            auto it = half2.find(pred);
            two.base[pred] = it != half2.end() ? apply_delta(r, it->second) : r;
        }
        return two;
    }(), dom);
    if (apply_delta(old_v, compose_delta(d1, d2)) != composed_new) {
        return "regularity: composed stepwise derivatives miss the final value";
    }
    return "";
}

FormulaPtr random_formula(Rng& rng, const Signature& sig,
                          const std::vector<std::string>& vars,
                          const ActiveDomain& dom, std::size_t depth) {
    auto random_atom = [&]() -> FormulaPtr {
        auto it = sig.preds.begin();
        std::advance(it, pick(rng, sig.preds.size()));
        std::vector<Term> args;
        std::vector<Constant> consts(dom.constants().begin(), dom.constants().end());
        for (std::size_t i = 0; i < it->second; ++i) {
            if (pick(rng, 4) == 0) {
                args.emplace_back(consts[pick(rng, consts.size())]);
            } else {
                args.emplace_back(Variable{vars[pick(rng, vars.size())]});
            }
        }
        return make_atom(it->first, std::move(args));
    };
    if (depth == 0) {
        std::size_t k = pick(rng, 8);
        if (k == 0) return make_top();
        if (k == 1) return make_bottom();
        return random_atom();
    }
    switch (pick(rng, 10)) {
        case 0:
        case 1:
        case 2:
            return random_atom();
        case 3:
        case 4:
            return make_and(random_formula(rng, sig, vars, dom, depth - 1),
                            random_formula(rng, sig, vars, dom, depth - 1));
        case 5:
        case 6:
            return make_or(random_formula(rng, sig, vars, dom, depth - 1),
                           random_formula(rng, sig, vars, dom, depth - 1));
        case 7:
        case 8:
            return make_not(random_formula(rng, sig, vars, dom, depth - 1));
        default:
            return make_exists(vars[pick(rng, vars.size())],
                               random_formula(rng, sig, vars, dom, depth - 1));
    }
}

std::vector<FormulaPtr> children_of(const FormulaPtr& f) {
    return std::visit(
        [&](const auto& node) -> std::vector<FormulaPtr> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::And> ||
                          std::is_same_v<T, Formula::Or>) {
                return {node.left, node.right};
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return {node.body};
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                return {node.body};
            } else {
                return {};
            }
        },
        f->node);
}

// Greedy shrink: while some direct subformula still fails, descend into it.
FormulaPtr shrink(FormulaPtr f, const Interpretation& state,
                  const std::map<std::string, BooleanDelta>& half1,
                  const std::map<std::string, BooleanDelta>& half2,
                  const ActiveDomain& dom) {
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (const auto& child : children_of(f)) {
            if (!check_case(child, state, half1, half2, dom).empty()) {
                f = child;
                progressed = true;
                break;
            }
        }
    }
    return f;
}

void run_case(const FormulaPtr& T, Rng& rng,
              const std::map<std::string, Schema>& schemas, const ActiveDomain& dom,
              bool do_shrink, PropertyReport& report) {
    Interpretation state;
    std::map<std::string, BooleanDelta> half1, half2;
    for (const auto& [pred, schema] : schemas) {
        state.base[pred] = random_relation(rng, schema, dom);
        BooleanDelta a = random_delta(rng, schema, dom);
        BooleanDelta b = random_delta(rng, schema, dom);
        half1.emplace(pred, a);
        half2.emplace(pred, b);
        state.deltas.emplace(pred, compose_delta(a, b));
    }
    ++report.cases_run;
    std::string why = check_case(T, state, half1, half2, dom);
    if (why.empty()) return;
    FormulaPtr culprit = do_shrink ? shrink(T, state, half1, half2, dom) : T;
    why = check_case(culprit, state, half1, half2, dom);
    report.failures.push_back(why + " — formula: " + render_formula(*culprit) +
                              " — state:" + describe_interp(state));
}

}  // namespace

PropertyReport check_random_formulas(const PropertyOptions& opt) {
    Rng rng(opt.seed);
    Signature sig{{{"r", 1}, {"s", 1}, {"p", 2}, {"q", 2}}};
    std::map<std::string, Schema> schemas;
    for (const auto& [pred, arity] : sig.preds) {
        schemas.emplace(pred, canonical_schema(pred, arity));
    }
    std::set<Constant> consts;
    for (std::int64_t i = 1; i <= static_cast<std::int64_t>(opt.max_domain); ++i) {
        consts.insert(Constant{i});
    }
    ActiveDomain dom(consts);
    std::vector<std::string> vars{"X", "Y"};

    PropertyReport report;
    for (std::size_t i = 0; i < opt.cases; ++i) {
        std::size_t depth = 1 + pick(rng, opt.max_depth);
        FormulaPtr T = random_formula(rng, sig, vars, dom, depth);
        run_case(T, rng, schemas, dom, /*do_shrink=*/true, report);
        if (report.failures.size() >= 8) break;
    }
    return report;
}

PropertyReport check_program_formulas(const Program& p, const PropertyOptions& opt) {
    Rng rng(opt.seed);
    std::map<std::string, Schema> schemas;
    for (const auto& [pred, arity] : p.edb) {
        schemas.emplace(pred, canonical_schema(pred, arity));
    }
    for (const auto& [pred, arity] : p.idb) {
        schemas.emplace(pred, canonical_schema(pred, arity));
    }
    std::set<Constant> consts = p.constants;
    for (std::int64_t i = 1;
         consts.size() < opt.max_domain && i <= static_cast<std::int64_t>(opt.max_domain);
         ++i) {
        consts.insert(Constant{i});
    }
    ActiveDomain dom(consts);

    PropertyReport report;
    std::size_t budget = std::max<std::size_t>(1, opt.cases / std::max<std::size_t>(
                                                       1, p.defining.size()));
    for (const auto& [pred, body] : p.defining) {
        for (std::size_t i = 0; i < budget; ++i) {
            run_case(body, rng, schemas, dom, /*do_shrink=*/false, report);
            if (report.failures.size() >= 8) return report;
        }
    }
    return report;
}

}  // namespace deltalog
