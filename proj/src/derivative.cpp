#include "deltalog/derivative.hpp"

#include "deltalog/errors.hpp"

namespace deltalog {

namespace {

void reject_delta_atoms(const Formula& f) {
    if (has_delta_atoms(f)) {
        throw CheckError("cannot take the derivative of a formula that already "
                         "contains delta atoms");
    }
}

FormulaPtr dlt(const FormulaPtr& f, OrVariant v);
FormulaPtr nbl(const FormulaPtr& f, OrVariant v);
FormulaPtr nxt(const FormulaPtr& f, OrVariant v);

FormulaPtr dlt(const FormulaPtr& f, OrVariant v) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Top> ||
                          std::is_same_v<T, Formula::Bottom>) {
                return make_bottom();
            } else if constexpr (std::is_same_v<T, Formula::Atom>) {
                return make_atom(node.pred, node.args, AtomKind::DeltaAdd);
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                if (v == OrVariant::Symmetric) {
                    return make_or(
                        make_and(dlt(node.left, v), make_not(node.right)),
                        make_and(dlt(node.right, v), make_not(node.left)));
                }
                return make_or(dlt(node.left, v), dlt(node.right, v));
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                return make_or(make_and(dlt(node.left, v), nxt(node.right, v)),
                               make_and(dlt(node.right, v), nxt(node.left, v)));
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return nbl(node.body, v);
            } else {
                return make_exists(node.var, dlt(node.body, v));
            }
        },
        f->node);
}

FormulaPtr nbl(const FormulaPtr& f, OrVariant v) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Top> ||
                          std::is_same_v<T, Formula::Bottom>) {
                return make_bottom();
            } else if constexpr (std::is_same_v<T, Formula::Atom>) {
                return make_atom(node.pred, node.args, AtomKind::DeltaRemove);
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                return make_or(
                    make_and(nbl(node.left, v), make_not(nxt(node.right, v))),
                    make_and(nbl(node.right, v), make_not(nxt(node.left, v))));
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                return make_or(make_and(nbl(node.left, v), node.right),
                               make_and(node.left, nbl(node.right, v)));
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return dlt(node.body, v);
            } else {
                return make_and(make_exists(node.var, nbl(node.body, v)),
                                make_not(make_exists(node.var, nxt(node.body, v))));
            }
        },
        f->node);
}

// Next state: the formula over updated relations, atoms rewritten to
// (R ∨ ΔR) ∧ ¬∇R, connectives untouched.
FormulaPtr nxt(const FormulaPtr& f, OrVariant v) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Top> ||
                          std::is_same_v<T, Formula::Bottom>) {
                return f;
            } else if constexpr (std::is_same_v<T, Formula::Atom>) {
                return make_and(
                    make_or(f, make_atom(node.pred, node.args, AtomKind::DeltaAdd)),
                    make_not(make_atom(node.pred, node.args, AtomKind::DeltaRemove)));
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                return make_or(nxt(node.left, v), nxt(node.right, v));
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                return make_and(nxt(node.left, v), nxt(node.right, v));
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return make_not(nxt(node.body, v));
            } else {
                return make_exists(node.var, nxt(node.body, v));
            }
        },
        f->node);
}

}  // namespace

FormulaPtr delta_transform(const FormulaPtr& f, OrVariant v) {
    reject_delta_atoms(*f);
    return dlt(f, v);
}

FormulaPtr nabla_transform(const FormulaPtr& f) {
    reject_delta_atoms(*f);
    return nbl(f, OrVariant::AsPrinted);
}

FormulaPtr next_transform(const FormulaPtr& f) {
    reject_delta_atoms(*f);
    return nxt(f, OrVariant::AsPrinted);
}

std::map<std::string, DerivedRules> derive_program(const Program& p) {
    std::map<std::string, DerivedRules> out;
    for (const auto& [pred, body] : p.defining) {
        out[pred] = DerivedRules{delta_transform(body), nabla_transform(body)};
    }
    return out;
}

namespace {

bool is_top(const Formula& f) { return std::holds_alternative<Formula::Top>(f.node); }
bool is_bottom(const Formula& f) { return std::holds_alternative<Formula::Bottom>(f.node); }

}  // namespace

FormulaPtr simplify(const FormulaPtr& f) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::And>) {
                auto l = simplify(node.left);
                auto r = simplify(node.right);
                if (is_bottom(*l) || is_bottom(*r)) return make_bottom();
                if (is_top(*l)) return r;
                if (is_top(*r)) return l;
                return make_and(l, r);
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                auto l = simplify(node.left);
                auto r = simplify(node.right);
                if (is_top(*l) || is_top(*r)) return make_top();
                if (is_bottom(*l)) return r;
                if (is_bottom(*r)) return l;
                return make_or(l, r);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                auto b = simplify(node.body);
                if (is_top(*b)) return make_bottom();
                if (is_bottom(*b)) return make_top();
                if (const auto* inner = std::get_if<Formula::Not>(&b->node)) {
                    return inner->body;
                }
                return make_not(b);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                auto b = simplify(node.body);
                if (is_bottom(*b)) return make_bottom();
                if (!free_variables(*b).count(node.var)) return b;
                return make_exists(node.var, b);
            } else {
                return f;
            }
        },
        f->node);
}

FormulaPtr assume_static(const FormulaPtr& f, const std::set<std::string>& static_preds) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                if (node.kind != AtomKind::Base && static_preds.count(node.pred)) {
                    return make_bottom();
                }
                return f;
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                return make_and(assume_static(node.left, static_preds),
                                assume_static(node.right, static_preds));
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                return make_or(assume_static(node.left, static_preds),
                               assume_static(node.right, static_preds));
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return make_not(assume_static(node.body, static_preds));
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                return make_exists(node.var, assume_static(node.body, static_preds));
            } else {
                return f;
            }
        },
        f->node);
}

namespace {

FormulaPtr freshen_rec(const FormulaPtr& f, std::map<std::string, std::string>& env,
                       std::set<std::string>& used, int& counter) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                std::vector<Term> args;
                args.reserve(node.args.size());
                for (const auto& t : node.args) {
                    if (const auto* v = std::get_if<Variable>(&t)) {
                        auto it = env.find(v->name);
                        args.push_back(
                            Variable{it != env.end() ? it->second : v->name});
                    } else {
                        args.push_back(t);
                    }
                }
                return make_atom(node.pred, std::move(args), node.kind);
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                auto l = freshen_rec(node.left, env, used, counter);
                auto r = freshen_rec(node.right, env, used, counter);
                return make_and(l, r);
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                auto l = freshen_rec(node.left, env, used, counter);
                auto r = freshen_rec(node.right, env, used, counter);
                return make_or(l, r);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return make_not(freshen_rec(node.body, env, used, counter));
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                std::string fresh = node.var;
                while (used.count(fresh)) fresh = node.var + "_" + std::to_string(++counter);
                used.insert(fresh);
                auto saved = env.find(node.var) != env.end()
                                 ? std::optional<std::string>(env[node.var])
                                 : std::nullopt;
                env[node.var] = fresh;
                auto body = freshen_rec(node.body, env, used, counter);
                if (saved) {
                    env[node.var] = *saved;
                } else {
                    env.erase(node.var);
                }
                return make_exists(fresh, body);
            } else {
                return f;
            }
        },
        f->node);
}

}  // namespace

FormulaPtr freshen_binders(const FormulaPtr& f) {
    std::map<std::string, std::string> env;
    std::set<std::string> used = free_variables(*f);
    int counter = 0;
    return freshen_rec(f, env, used, counter);
}

}  // namespace deltalog
