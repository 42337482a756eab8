#pragma once

#include <map>
#include <string>

#include "deltalog/ast.hpp"
#include "deltalog/boolean_delta.hpp"
#include "deltalog/relation.hpp"

namespace deltalog {

/// Assignment of relations to predicates, plus pending changes for delta
/// atoms. A predicate with no entry in `deltas` has the zero change.
struct Interpretation {
    std::map<std::string, Relation> base;
    std::map<std::string, BooleanDelta> deltas;
};

/// Every constant mentioned by the program text, the EDB facts, or the
/// interpretation's deltas.
ActiveDomain active_domain(const Program& p, const Interpretation& interp);

ActiveDomain domain_of(const Relation& r);

/// Interpretation with program facts for EDB predicates and empty relations
/// (canonical schemas) for IDB predicates. Extra facts override/extend the
/// program's.
Interpretation initial_interpretation(const Program& p,
                                      const std::map<std::string, Relation>& extra_facts);

/// Closed-world evaluation of `f` as a relation over `target`, which must
/// cover the formula's free variables (extra attributes cylindrify over
/// `dom`). Complement and Top range over dom.
Relation eval(const Formula& f, const Schema& target, const Interpretation& interp,
              const ActiveDomain& dom);

}  // namespace deltalog
