#pragma once

#include <map>
#include <set>
#include <string>

#include "deltalog/ast.hpp"

namespace deltalog {

/// Gain-side disjunction case: the cheap form Δ(T)∨Δ(U), or the precise
/// symmetric form (Δ(T)∧¬U)∨(Δ(U)∧¬T).
enum class OrVariant { AsPrinted, Symmetric };

/// Upward derivative Δ(f): tuples the formula gains under the pending
/// changes. Rejects formulas that already contain delta atoms.
FormulaPtr delta_transform(const FormulaPtr& f, OrVariant v = OrVariant::AsPrinted);

/// Downward derivative ∇(f): tuples the formula loses.
FormulaPtr nabla_transform(const FormulaPtr& f);

/// Next-state form X(f): the formula's value after the changes apply.
FormulaPtr next_transform(const FormulaPtr& f);

struct DerivedRules {
    FormulaPtr up;    // Δ of the defining formula
    FormulaPtr down;  // ∇ of the defining formula
};

/// Δ/∇ pair for every IDB predicate's defining formula.
std::map<std::string, DerivedRules> derive_program(const Program& p);

/// Unit folding: ⊥∧T, ⊤∨T, ¬¬T, ∃x.⊥ and friends.
FormulaPtr simplify(const FormulaPtr& f);

/// Replace delta atoms over `static_preds` with ⊥ (those predicates are
/// assumed unchanged).
FormulaPtr assume_static(const FormulaPtr& f, const std::set<std::string>& static_preds);

/// Rename bound variables apart so no two binders share a name and no binder
/// shadows a free variable. Needed before rendering derived rules.
FormulaPtr freshen_binders(const FormulaPtr& f);

}  // namespace deltalog
