#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "deltalog/relation.hpp"

namespace deltalog {

enum class AtomKind { Base, DeltaAdd, DeltaRemove };

struct Variable {
    std::string name;
    bool operator==(const Variable& o) const { return name == o.name; }
};

/// Atom argument: a variable or a constant.
using Term = std::variant<Variable, Constant>;

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    struct Top {};
    struct Bottom {};
    struct Atom {
        std::string pred;
        AtomKind kind = AtomKind::Base;
        std::vector<Term> args;
    };
    struct And {
        FormulaPtr left, right;
    };
    struct Or {
        FormulaPtr left, right;
    };
    struct Not {
        FormulaPtr body;
    };
    struct Exists {
        std::string var;
        FormulaPtr body;
    };

    std::variant<Top, Bottom, Atom, And, Or, Not, Exists> node;
};

FormulaPtr make_top();
FormulaPtr make_bottom();
FormulaPtr make_atom(std::string pred, std::vector<Term> args,
                     AtomKind kind = AtomKind::Base);
FormulaPtr make_and(FormulaPtr l, FormulaPtr r);
FormulaPtr make_or(FormulaPtr l, FormulaPtr r);
FormulaPtr make_not(FormulaPtr f);
FormulaPtr make_exists(std::string var, FormulaPtr f);

/// Variables not bound by an enclosing Exists.
std::set<std::string> free_variables(const Formula& f);

/// Predicates referenced by atoms (any kind).
std::set<std::string> referenced_predicates(const Formula& f);

/// True if the formula contains a DeltaAdd or DeltaRemove atom.
bool has_delta_atoms(const Formula& f);

/// Capture-free renaming of free variables.
FormulaPtr substitute_vars(const FormulaPtr& f,
                           const std::map<std::string, std::string>& mapping);

/// Structural equality.
bool formula_equal(const Formula& a, const Formula& b);

/// Surface rendering: `,` for ∧, `;` for ∨, `!` for ¬; Exists binders are
/// implicit. Delta atoms render as delta_p / nabla_p.
std::string render_formula(const Formula& f);

/// A parsed rule, kept for diagnostics and rendering.
struct Rule {
    Formula::Atom head;
    FormulaPtr body;  // lowered: implicit existentials made explicit
    int line = 0;
};

/// Canonical attribute name for parameter position i (1-based) of `pred`.
std::string canonical_attr(const std::string& pred, std::size_t i);
/// Canonical schema p$1..p$arity for a predicate.
Schema canonical_schema(const std::string& pred, std::size_t arity);

struct StratumCertificate {
    /// Strongly-connected components of the predicate dependency graph in
    /// topological order (dependencies first). IDB predicates only.
    std::vector<std::vector<std::string>> strata;
};

struct Program {
    std::map<std::string, std::size_t> edb;  // name -> arity
    std::map<std::string, std::size_t> idb;  // name -> arity
    std::vector<Rule> rules;
    /// Per-IDB defining formula over the canonical schema (Or over rule
    /// bodies renamed apart).
    std::map<std::string, FormulaPtr> defining;
    /// Ground facts given in the program text (their predicates are EDB).
    std::map<std::string, Relation> facts;
    StratumCertificate strata;  // filled by check_parity_stratification

    /// Constants appearing anywhere in the program text.
    std::set<Constant> constants;
};

/// Canonical textual rendering of a program: one rule line per source rule.
std::string render_program(const Program& p);

}  // namespace deltalog
