#include "deltalog/engine.hpp"

#include <algorithm>

#include "deltalog/checks.hpp"
#include "deltalog/errors.hpp"

namespace deltalog {

namespace {

Relation eval_pred(const Program& p, const std::string& pred, const FormulaPtr& body,
                   const Interpretation& interp, const ActiveDomain& dom) {
    return eval(*body, canonical_schema(pred, p.idb.at(pred)), interp, dom);
}

// Drop adds already present and removes that hit nothing: same action on
// `state`, and guarantees progress in the semi-naive loop.
BooleanDelta normalize_against(const Relation& adds, const Relation& removes,
                               const Relation& state) {
    Relation eff_adds = set_difference(set_difference(adds, removes), state);
    Relation eff_removes = set_intersect(removes, set_union(state, adds));
    return BooleanDelta(std::move(eff_adds), std::move(eff_removes));
}

bool all_zero(const std::map<std::string, BooleanDelta>& ds) {
    return std::all_of(ds.begin(), ds.end(),
                       [](const auto& kv) { return kv.second.is_zero(); });
}

void solve_stratum_naive(const Program& p, const std::vector<std::string>& stratum,
                         std::size_t stratum_idx, Interpretation& interp,
                         const ActiveDomain& dom, const SolverConfig& cfg,
                         Solution& sol) {
    for (std::size_t i = 0;; ++i) {
        if (i > cfg.max_iters) {
            throw DivergenceError("naive iteration did not converge within " +
                                  std::to_string(cfg.max_iters) + " steps");
        }
        auto next = immediate_consequence(p, stratum, interp, dom);
        IterationRecord rec;
        rec.stratum = stratum_idx;
        rec.index = i;
        bool changed = false;
        for (const auto& pred : stratum) {
            const Relation& cur = interp.base.at(pred);
            rec.states[pred] = cur;
            rec.derived_total += next.at(pred).size();
            rec.fresh_total += set_difference(next.at(pred), cur).size();
            if (next.at(pred) != cur) changed = true;
        }
        sol.trace.push_back(rec);
        ++sol.iterations;
        for (const auto& pred : stratum) interp.base[pred] = next.at(pred);
        if (!changed) break;
    }
}

void solve_stratum_seminaive(const Program& p, const std::vector<std::string>& stratum,
                             std::size_t stratum_idx,
                             const std::map<std::string, DerivedRules>& derived,
                             Interpretation& interp, const ActiveDomain& dom,
                             const SolverConfig& cfg, Solution& sol) {
    // Seed: the step from ⊥ is pure gain, so δ₀ = ℐ(⊥) ⊖⊤ ⊥ = (ℐ(⊥), ∅).
    auto first = immediate_consequence(p, stratum, interp, dom);
    std::map<std::string, BooleanDelta> delta;
    for (const auto& pred : stratum) {
        delta.emplace(pred, minus_top(first.at(pred), interp.base.at(pred)));
    }

    for (std::size_t i = 0;; ++i) {
        if (i > cfg.max_iters) {
            throw DivergenceError("semi-naive iteration did not converge within " +
                                  std::to_string(cfg.max_iters) + " steps");
        }
        IterationRecord rec;
        rec.stratum = stratum_idx;
        rec.index = i;
        rec.deltas = delta;
        for (const auto& pred : stratum) {
            rec.states[pred] = interp.base.at(pred);
            rec.derived_total +=
                delta.at(pred).adds().size() + delta.at(pred).removes().size();
            rec.fresh_total +=
                set_difference(delta.at(pred).adds(), interp.base.at(pred)).size();
        }
        sol.trace.push_back(rec);
        ++sol.iterations;
        if (all_zero(delta)) break;

        // recur: next delta is the derivative at the pre-step state.
        Interpretation step = interp;
        step.deltas = delta;
        std::map<std::string, BooleanDelta> next;
        std::map<std::string, Relation> next_state;
        for (const auto& pred : stratum) {
            next_state[pred] = apply_delta(interp.base.at(pred), delta.at(pred));
        }
        if (cfg.validate) {
            // a_{i+1} must stay on the naive chain: a_i ⊕ δ_i = ℐ(a_i).
            auto naive = immediate_consequence(p, stratum, interp, dom);
            for (const auto& pred : stratum) {
                if (naive.at(pred) != next_state.at(pred)) {
                    throw EvalError("semi-naive soundness check failed at iteration " +
                                    std::to_string(i + 1) + " for predicate '" + pred +
                                    "'");
                }
            }
        }
        for (const auto& pred : stratum) {
            Relation up = eval_pred(p, pred, derived.at(pred).up, step, dom);
            Relation down = eval_pred(p, pred, derived.at(pred).down, step, dom);
            next.emplace(pred, normalize_against(up, down, next_state.at(pred)));
        }
        for (const auto& pred : stratum) interp.base[pred] = next_state.at(pred);
        delta = std::move(next);
    }
}

}  // namespace

std::map<std::string, Relation> immediate_consequence(
    const Program& p, const std::vector<std::string>& stratum,
    const Interpretation& interp, const ActiveDomain& dom) {
    std::map<std::string, Relation> out;
    for (const auto& pred : stratum) {
        out[pred] = eval_pred(p, pred, p.defining.at(pred), interp, dom);
    }
    return out;
}

Solution solve(const Program& p, const std::map<std::string, Relation>& edb_facts,
               const SolverConfig& cfg) {
    Program prog = p;
    if (prog.strata.strata.empty() && !prog.idb.empty()) check_program(prog);

    Interpretation interp = initial_interpretation(prog, edb_facts);
    ActiveDomain dom = active_domain(prog, interp);

    auto derived = cfg.engine == EngineKind::SemiNaive
                       ? derive_program(prog)
                       : std::map<std::string, DerivedRules>{};

    Solution sol;
    for (std::size_t s = 0; s < prog.strata.strata.size(); ++s) {
        const auto& stratum = prog.strata.strata[s];
        if (cfg.engine == EngineKind::Naive) {
            solve_stratum_naive(prog, stratum, s, interp, dom, cfg, sol);
        } else {
            solve_stratum_seminaive(prog, stratum, s, derived, interp, dom, cfg, sol);
        }
    }
    for (const auto& [pred, arity] : prog.idb) sol.idb[pred] = interp.base.at(pred);
    return sol;
}

std::string first_difference(const std::map<std::string, Relation>& a,
                             const std::map<std::string, Relation>& b) {
    for (const auto& [pred, ra] : a) {
        auto it = b.find(pred);
        if (it == b.end()) return "predicate '" + pred + "' missing on the right";
        const Relation& rb = it->second;
        if (ra == rb) continue;
        Relation only_a = set_difference(ra, rb);
        Relation only_b = set_difference(rb, ra);
        std::string msg = "relation '" + pred + "' differs:";
        if (!only_a.empty()) {
            msg += " left-only tuple (";
            const Tuple& t = *only_a.tuples().begin();
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) msg += ", ";
                msg += to_string(t[i]);
            }
            msg += ")";
        }
        if (!only_b.empty()) {
            msg += " right-only tuple (";
            const Tuple& t = *only_b.tuples().begin();
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (i) msg += ", ";
                msg += to_string(t[i]);
            }
            msg += ")";
        }
        return msg;
    }
    for (const auto& [pred, rb] : b) {
        if (!a.count(pred)) return "predicate '" + pred + "' missing on the left";
    }
    return "";
}

namespace {

std::map<std::string, Relation> apply_edb_delta(
    const std::map<std::string, Relation>& facts,
    const std::map<std::string, BooleanDelta>& edb_delta) {
    std::map<std::string, Relation> out = facts;
    for (const auto& [pred, d] : edb_delta) {
        auto it = out.find(pred);
        if (it == out.end()) {
            out[pred] = apply_delta(Relation(d.schema()), d);
        } else {
            it->second = apply_delta(it->second, d);
        }
    }
    return out;
}

// One adjustment step: derivative of the combined (operator, point) change.
std::map<std::string, BooleanDelta> adjust_step(
    const Program& p, const std::map<std::string, DerivedRules>& derived,
    const Interpretation& old_interp,
    const std::map<std::string, Relation>& new_edb_facts,
    const std::map<std::string, BooleanDelta>& edb_delta,
    const std::map<std::string, BooleanDelta>& idb_delta, const ActiveDomain& dom,
    EvalStrategy strategy) {
    // Part one: operator fixed, point moves by idb_delta.
    Interpretation i1 = old_interp;
    if (strategy == EvalStrategy::Ev2) {
        // Updated operator: evaluate over the new EDB.
        for (const auto& [pred, r] : new_edb_facts) i1.base[pred] = r;
    }
    i1.deltas = idb_delta;
    // Part two: point shifted (Ev1) or original (Ev2), operator moves.
    Interpretation i2 = old_interp;
    if (strategy == EvalStrategy::Ev1) {
        for (const auto& [pred, d] : idb_delta) {
            i2.base[pred] = apply_delta(i2.base.at(pred), d);
        }
    }
    i2.deltas = edb_delta;

    std::map<std::string, BooleanDelta> out;
    for (const auto& [pred, rules] : derived) {
        Schema schema = canonical_schema(pred, p.idb.at(pred));
        auto eval_delta = [&](const Interpretation& interp) {
            Relation up = eval(*rules.up, schema, interp, dom);
            Relation down = eval(*rules.down, schema, interp, dom);
            Relation gain = set_difference(up, down);
            return BooleanDelta(std::move(gain), std::move(down));
        };
        BooleanDelta point_part = eval_delta(i1);
        BooleanDelta op_part = eval_delta(i2);
        // dEv1: d·f(a, δa) then δf at the shifted point; dEv2 swaps roles.
        out.emplace(pred, strategy == EvalStrategy::Ev1
                              ? compose_delta(point_part, op_part)
                              : compose_delta(op_part, point_part));
    }
    return out;
}

}  // namespace

MaintainResult maintain(const Program& p,
                        const std::map<std::string, Relation>& old_edb_facts,
                        const std::map<std::string, Relation>& old_idb,
                        const std::map<std::string, BooleanDelta>& edb_delta,
                        const SolverConfig& cfg) {
    Program prog = p;
    if (prog.strata.strata.empty() && !prog.idb.empty()) check_program(prog);

    for (const auto& [pred, d] : edb_delta) {
        if (!prog.edb.count(pred)) {
            throw SchemaError("delta given for non-EDB predicate '" + pred + "'");
        }
    }

    auto new_edb_facts = apply_edb_delta(old_edb_facts, edb_delta);

    auto trivial = [&](std::size_t base_iters) {
        Solution fresh = solve(prog, new_edb_facts, cfg);
        MaintainResult res;
        res.used_fallback = true;
        res.iterations = base_iters + fresh.iterations;
        for (const auto& [pred, r] : fresh.idb) {
            res.idb_delta.emplace(pred, minus_top(r, old_idb.at(pred)));
        }
        return res;
    };

    if (cfg.maintenance == MaintenanceKind::Trivial) {
        MaintainResult res = trivial(0);
        res.used_fallback = false;  // trivial was the requested strategy
        return res;
    }

    Interpretation old_interp = initial_interpretation(prog, old_edb_facts);
    for (const auto& [pred, r] : old_idb) old_interp.base[pred] = r;
    ActiveDomain dom = active_domain(prog, old_interp);
    for (const auto& [pred, d] : edb_delta) {
        dom.add_all(domain_of(d.adds()));
        dom.add_all(domain_of(d.removes()));
    }

    auto derived = derive_program(prog);

    // Adjustment: iterate the derivative of the evaluation map from the zero
    // change until the delta stabilizes.
    std::map<std::string, BooleanDelta> delta;
    for (const auto& [pred, arity] : prog.idb) {
        delta.emplace(pred, BooleanDelta::zero(canonical_schema(pred, arity)));
    }
    std::size_t iters = 0;
    while (true) {
        if (iters > cfg.max_iters) {
            throw MaintenanceError("maintenance adjustment did not converge within " +
                                   std::to_string(cfg.max_iters) + " steps");
        }
        auto next = adjust_step(prog, derived, old_interp, new_edb_facts, edb_delta,
                                delta, dom, cfg.strategy);
        ++iters;
        if (next == delta) break;
        delta = std::move(next);
    }

    MaintainResult res;
    res.idb_delta = delta;
    res.iterations = iters;

    if (cfg.validate) {
        std::map<std::string, Relation> candidate;
        for (const auto& [pred, r] : old_idb) {
            candidate[pred] = apply_delta(r, delta.at(pred));
        }
        Solution fresh = solve(prog, new_edb_facts, cfg);
        if (!first_difference(candidate, fresh.idb).empty()) {
            return trivial(iters);
        }
    }
    return res;
}

}  // namespace deltalog
