#include "deltalog/ast.hpp"

#include <sstream>

namespace deltalog {

FormulaPtr make_top() { return std::make_shared<Formula>(Formula{Formula::Top{}}); }
FormulaPtr make_bottom() { return std::make_shared<Formula>(Formula{Formula::Bottom{}}); }

FormulaPtr make_atom(std::string pred, std::vector<Term> args, AtomKind kind) {
    return std::make_shared<Formula>(
        Formula{Formula::Atom{std::move(pred), kind, std::move(args)}});
}

FormulaPtr make_and(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<Formula>(Formula{Formula::And{std::move(l), std::move(r)}});
}

FormulaPtr make_or(FormulaPtr l, FormulaPtr r) {
    return std::make_shared<Formula>(Formula{Formula::Or{std::move(l), std::move(r)}});
}

FormulaPtr make_not(FormulaPtr f) {
    return std::make_shared<Formula>(Formula{Formula::Not{std::move(f)}});
}

FormulaPtr make_exists(std::string var, FormulaPtr f) {
    return std::make_shared<Formula>(Formula{Formula::Exists{std::move(var), std::move(f)}});
}

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                for (const auto& t : node.args) {
                    if (const auto* v = std::get_if<Variable>(&t)) {
                        if (!bound.count(v->name)) out.insert(v->name);
                    }
                }
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                collect_free(*node.left, bound, out);
                collect_free(*node.right, bound, out);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                collect_free(*node.body, bound, out);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                bool fresh = bound.insert(node.var).second;
                collect_free(*node.body, bound, out);
                if (fresh) bound.erase(node.var);
            }
        },
        f.node);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> referenced_predicates(const Formula& f) {
    std::set<std::string> out;
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                out.insert(node.pred);
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                auto l = referenced_predicates(*node.left);
                auto r = referenced_predicates(*node.right);
                out.insert(l.begin(), l.end());
                out.insert(r.begin(), r.end());
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                out = referenced_predicates(*node.body);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                out = referenced_predicates(*node.body);
            }
        },
        f.node);
    return out;
}

bool has_delta_atoms(const Formula& f) {
    return std::visit(
        [&](const auto& node) -> bool {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                return node.kind != AtomKind::Base;
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                return has_delta_atoms(*node.left) || has_delta_atoms(*node.right);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return has_delta_atoms(*node.body);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                return has_delta_atoms(*node.body);
            } else {
                return false;
            }
        },
        f.node);
}

FormulaPtr substitute_vars(const FormulaPtr& f,
                           const std::map<std::string, std::string>& mapping) {
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                auto args = node.args;
                for (auto& t : args) {
                    if (auto* v = std::get_if<Variable>(&t)) {
                        auto it = mapping.find(v->name);
                        if (it != mapping.end()) v->name = it->second;
                    }
                }
                return make_atom(node.pred, std::move(args), node.kind);
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                return make_and(substitute_vars(node.left, mapping),
                                substitute_vars(node.right, mapping));
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                return make_or(substitute_vars(node.left, mapping),
                               substitute_vars(node.right, mapping));
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return make_not(substitute_vars(node.body, mapping));
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                // Bound variables shadow the mapping.
                auto inner = mapping;
                inner.erase(node.var);
                return make_exists(node.var, substitute_vars(node.body, inner));
            } else {
                return f;
            }
        },
        f->node);
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                return na.pred == nb.pred && na.kind == nb.kind && na.args == nb.args;
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                return formula_equal(*na.left, *nb.left) && formula_equal(*na.right, *nb.right);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return formula_equal(*na.body, *nb.body);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                return na.var == nb.var && formula_equal(*na.body, *nb.body);
            } else {
                return true;
            }
        },
        a.node);
}

namespace {

std::string render_term(const Term& t) {
    if (const auto* v = std::get_if<Variable>(&t)) return v->name;
    return to_string(std::get<Constant>(t));
}

std::string render_atom(const Formula::Atom& a) {
    std::string name = a.pred;
    if (a.kind == AtomKind::DeltaAdd) name = "delta_" + name;
    if (a.kind == AtomKind::DeltaRemove) name = "nabla_" + name;
    std::string out = name + "(";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i > 0) out += ",";
        out += render_term(a.args[i]);
    }
    return out + ")";
}

// Precedence: Or < And < literal.
enum class Ctx { Disj, Conj, Literal };

std::string render(const Formula& f, Ctx ctx) {
    return std::visit(
        [&](const auto& node) -> std::string {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Top>) {
                return "true";
            } else if constexpr (std::is_same_v<T, Formula::Bottom>) {
                return "false";
            } else if constexpr (std::is_same_v<T, Formula::Atom>) {
                return render_atom(node);
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                std::string s =
                    render(*node.left, Ctx::Conj) + ", " + render(*node.right, Ctx::Conj);
                return ctx == Ctx::Literal ? "(" + s + ")" : s;
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                std::string s =
                    render(*node.left, Ctx::Disj) + "; " + render(*node.right, Ctx::Disj);
                return ctx != Ctx::Disj ? "(" + s + ")" : s;
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return "!" + render(*node.body, Ctx::Literal);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                return render(*node.body, ctx);
            } else {
                return "";
            }
        },
        f.node);
}

}  // namespace

std::string render_formula(const Formula& f) { return render(f, Ctx::Disj); }

std::string canonical_attr(const std::string& pred, std::size_t i) {
    return pred + "$" + std::to_string(i);
}

Schema canonical_schema(const std::string& pred, std::size_t arity) {
    std::vector<std::string> names;
    names.reserve(arity);
    for (std::size_t i = 1; i <= arity; ++i) names.push_back(canonical_attr(pred, i));
    return Schema(std::move(names));
}

std::string render_program(const Program& p) {
    std::ostringstream out;
    for (const auto& [pred, rel] : p.facts) {
        std::size_t arity = p.edb.at(pred);
        for (const auto& t : rel.tuples()) {
            out << pred << "(";
            for (std::size_t i = 1; i <= arity; ++i) {
                if (i > 1) out << ",";
                out << to_string(t[rel.schema().index_of(canonical_attr(pred, i))]);
            }
            out << ").\n";
        }
    }
    for (const auto& rule : p.rules) {
        out << render_atom(rule.head) << " :- " << render_formula(*rule.body) << ".\n";
    }
    return out.str();
}

}  // namespace deltalog
