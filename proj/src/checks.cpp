#include "deltalog/checks.hpp"

#include <algorithm>
#include <functional>

#include "deltalog/errors.hpp"

namespace deltalog {

namespace {

// Variables guaranteed bound by a positive Base atom within this formula.
// Checks each Exists binder is bound inside its own scope.
std::set<std::string> bound_vars(const Formula& f, const std::string& rule_name) {
    return std::visit(
        [&](const auto& node) -> std::set<std::string> {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                std::set<std::string> out;
                if (node.kind == AtomKind::Base) {
                    for (const auto& t : node.args) {
                        if (const auto* v = std::get_if<Variable>(&t)) out.insert(v->name);
                    }
                }
                return out;
            } else if constexpr (std::is_same_v<T, Formula::And>) {
                auto l = bound_vars(*node.left, rule_name);
                auto r = bound_vars(*node.right, rule_name);
                l.insert(r.begin(), r.end());
                return l;
            } else if constexpr (std::is_same_v<T, Formula::Or>) {
                auto l = bound_vars(*node.left, rule_name);
                auto r = bound_vars(*node.right, rule_name);
                std::set<std::string> out;
                std::set_intersection(l.begin(), l.end(), r.begin(), r.end(),
                                      std::inserter(out, out.begin()));
                return out;
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                bound_vars(*node.body, rule_name);  // still check inner binders
                return {};
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                auto inner = bound_vars(*node.body, rule_name);
                if (!inner.count(node.var)) {
                    throw CheckError("unsafe variable '" + node.var + "' in rule for '" +
                                     rule_name +
                                     "': not bound by a positive atom in its scope");
                }
                inner.erase(node.var);
                return inner;
            } else {
                return {};
            }
        },
        f.node);
}

}  // namespace

void check_safety(const Program& p) {
    for (const auto& rule : p.rules) {
        auto bound = bound_vars(*rule.body, rule.head.pred);
        for (const auto& t : rule.head.args) {
            const auto& v = std::get<Variable>(t);
            if (!bound.count(v.name)) {
                throw CheckError("unsafe variable '" + v.name + "' in rule for '" +
                                 rule.head.pred +
                                 "': head variable not bound by a positive atom");
            }
        }
    }
}

namespace {

struct Edge {
    std::string to;
    int parity;  // 0 even, 1 odd
};

void collect_edges(const Formula& f, int parity, std::vector<Edge>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                out.push_back({node.pred, parity});
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                collect_edges(*node.left, parity, out);
                collect_edges(*node.right, parity, out);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                collect_edges(*node.body, parity ^ 1, out);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                collect_edges(*node.body, parity, out);
            }
        },
        f.node);
}

struct SccState {
    std::map<std::string, std::vector<Edge>> graph;
    std::map<std::string, int> index, lowlink;
    std::map<std::string, bool> on_stack;
    std::vector<std::string> stack;
    int counter = 0;
    std::vector<std::vector<std::string>> sccs;  // reverse topological order

    void strongconnect(const std::string& v) {
        index[v] = lowlink[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (const auto& e : graph[v]) {
            if (!index.count(e.to)) {
                strongconnect(e.to);
                lowlink[v] = std::min(lowlink[v], lowlink[e.to]);
            } else if (on_stack[e.to]) {
                lowlink[v] = std::min(lowlink[v], index[e.to]);
            }
        }
        if (lowlink[v] == index[v]) {
            std::vector<std::string> scc;
            while (true) {
                std::string w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                scc.push_back(w);
                if (w == v) break;
            }
            sccs.push_back(std::move(scc));
        }
    }
};

}  // namespace

void check_parity_stratification(Program& p) {
    SccState scc;
    for (const auto& [pred, body] : p.defining) {
        collect_edges(*body, 0, scc.graph[pred]);
    }
    for (const auto& entry : p.edb) scc.graph[entry.first];  // nodes without edges

    for (const auto& [pred, edges] : scc.graph) {
        if (!scc.index.count(pred)) scc.strongconnect(pred);
    }

    // Parity consistency within each SCC: label predicates over GF(2) along
    // intra-SCC edges; a conflict witnesses an odd cycle.
    for (const auto& component : scc.sccs) {
        std::set<std::string> members(component.begin(), component.end());
        std::map<std::string, int> label;
        std::map<std::string, std::string> parent;
        std::function<void(const std::string&)> dfs = [&](const std::string& v) {
            for (const auto& e : scc.graph[v]) {
                if (!members.count(e.to)) continue;
                int want = label[v] ^ e.parity;
                auto it = label.find(e.to);
                if (it == label.end()) {
                    label[e.to] = want;
                    parent[e.to] = v;
                    dfs(e.to);
                } else if (it->second != want) {
                    std::string cycle = e.to;
                    for (std::string w = v; w != e.to && parent.count(w); w = parent[w]) {
                        cycle += " -> " + w;
                    }
                    cycle += " -> " + e.to;
                    throw CheckError(
                        "program is not parity-stratified: recursive cycle with odd "
                        "negation parity through " +
                        cycle);
                }
            }
        };
        label[component.front()] = 0;
        dfs(component.front());
        // Self-loops with odd parity inside singleton components.
        for (const auto& v : component) {
            for (const auto& e : scc.graph[v]) {
                if (e.to == v && e.parity == 1) {
                    throw CheckError(
                        "program is not parity-stratified: predicate '" + v +
                        "' depends on itself through an odd number of negations");
                }
            }
        }
    }

    // Tarjan emits SCCs in reverse topological order; keep IDB components,
    // dependencies first.
    p.strata.strata.clear();
    for (const auto& component : scc.sccs) {
        std::vector<std::string> idb_members;
        for (const auto& pred : component) {
            if (p.idb.count(pred)) idb_members.push_back(pred);
        }
        if (!idb_members.empty()) {
            std::sort(idb_members.begin(), idb_members.end());
            p.strata.strata.push_back(std::move(idb_members));
        }
    }
}

void check_program(Program& p) {
    check_safety(p);
    check_parity_stratification(p);
}

}  // namespace deltalog
