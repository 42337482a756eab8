#include "deltalog/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "deltalog/checks.hpp"
#include "deltalog/derivative.hpp"
#include "deltalog/engine.hpp"
#include "deltalog/errors.hpp"
#include "deltalog/parser.hpp"
#include "deltalog/pcheck.hpp"

namespace deltalog {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string render_fact(const std::string& pred, const Schema& schema,
                        const Tuple& t) {
    std::string out = pred + "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t[schema.index_of(canonical_attr(pred, i + 1))]);
    }
    return out + ")";
}

Program load_program(const std::string& path) {
    Program p = parse_program(read_file(path));
    check_program(p);
    return p;
}

// Display names X, Y, Z, W, V5... for canonical attribute positions.
std::string display_var(std::size_t i) {
    static const char* first[] = {"X", "Y", "Z", "W"};
    return i <= 4 ? first[i - 1] : "V" + std::to_string(i);
}

struct EvalFlags {
    std::string program_path, facts_path;
    std::string engine = "seminaive";
    std::string output = "-";
    bool trace = false;
    std::size_t max_iters = 10000;
};

void print_trace(const Solution& sol, bool seminaive, std::ostream& out) {
    for (const auto& rec : sol.trace) {
        out << "% stratum " << rec.stratum << " iter " << rec.index;
        if (!seminaive) {
            out << ": derived=" << rec.derived_total << " fresh=" << rec.fresh_total
                << "\n";
            continue;
        }
        out << "\n";
        for (const auto& [pred, d] : rec.deltas) {
            out << "%   " << pred << ":";
            if (d.is_zero()) {
                out << " (no change)";
            } else {
                for (const auto& t : d.adds().tuples()) {
                    out << " +" << render_fact(pred, d.schema(), t).substr(pred.size());
                }
                for (const auto& t : d.removes().tuples()) {
                    out << " -" << render_fact(pred, d.schema(), t).substr(pred.size());
                }
            }
            out << "\n";
        }
    }
}

int cmd_eval(const EvalFlags& f, std::ostream& out, std::ostream& err) {
    Program p = load_program(f.program_path);
    auto facts = parse_facts(read_file(f.facts_path), p);
    SolverConfig cfg;
    cfg.engine = f.engine == "naive" ? EngineKind::Naive : EngineKind::SemiNaive;
    cfg.max_iters = f.max_iters;

    auto start = std::chrono::steady_clock::now();
    Solution sol = solve(p, facts, cfg);
    auto elapsed = std::chrono::steady_clock::now() - start;

    std::ofstream file_out;
    std::ostream* sink = &out;
    if (f.output != "-") {
        file_out.open(f.output, std::ios::binary);
        if (!file_out) throw Error("cannot open '" + f.output + "' for writing");
        sink = &file_out;
    }
    if (f.trace) {
        print_trace(sol, cfg.engine == EngineKind::SemiNaive, *sink);
        err << "% wall time "
            << std::chrono::duration_cast<std::chrono::microseconds>(elapsed).count()
            << "us\n";
    }
    for (const auto& [pred, r] : sol.idb) *sink << render_facts(pred, r);
    return 0;
}

struct MaintainFlags {
    std::string program_path, facts_path, delta_path;
    std::string strategy = "derivative";
    bool validate = false;
    std::size_t max_iters = 10000;
};

int cmd_maintain(const MaintainFlags& f, std::ostream& out, std::ostream& err) {
    Program p = load_program(f.program_path);
    auto facts = parse_facts(read_file(f.facts_path), p);
    auto delta = parse_delta(read_file(f.delta_path), p);

    SolverConfig cfg;
    cfg.maintenance = f.strategy == "trivial" ? MaintenanceKind::Trivial
                                              : MaintenanceKind::Derivative;
    cfg.validate = f.validate;
    cfg.max_iters = f.max_iters;

    Solution old = solve(p, facts, cfg);
    MaintainResult res = maintain(p, facts, old.idb, delta, cfg);

    for (const auto& [pred, d] : res.idb_delta) {
        out << render_delta(pred, d);
        out << render_facts(pred, apply_delta(old.idb.at(pred), d));
    }
    if (f.validate) {
        err << (res.used_fallback ? "% fallback: derivative strategy disagreed, "
                                    "recomputed from scratch\n"
                                  : "% validated: derivative strategy matched "
                                    "recomputation\n");
    }
    return 0;
}

int cmd_derive(const std::string& program_path, std::ostream& out) {
    Program p = load_program(program_path);
    auto derived = derive_program(p);
    for (const auto& [pred, rules] : derived) {
        std::size_t arity = p.idb.at(pred);
        std::map<std::string, std::string> nice;
        std::string head_args;
        for (std::size_t i = 1; i <= arity; ++i) {
            nice[canonical_attr(pred, i)] = display_var(i);
            if (i > 1) head_args += ", ";
            head_args += display_var(i);
        }
        auto show = [&](const char* prefix, const FormulaPtr& body) {
            FormulaPtr pretty =
                freshen_binders(substitute_vars(simplify(body), nice));
            out << prefix << pred << "(" << head_args
                << ") :- " << render_formula(*pretty) << ".\n";
        };
        show("delta_", rules.up);
        show("nabla_", rules.down);
    }
    return 0;
}

struct CheckFlags {
    std::string program_path;
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    std::size_t universe = 4;
};

int cmd_check(const CheckFlags& f, std::ostream& out, std::ostream& err) {
    Program p = load_program(f.program_path);
    PropertyOptions opt;
    opt.cases = f.samples;
    opt.seed = f.seed;
    opt.max_domain = f.universe;
    PropertyReport report = check_program_formulas(p, opt);
    if (report.ok()) {
        out << "pass: " << report.cases_run << " cases\n";
        return 0;
    }
    out << "fail: " << report.failures.size() << " failing case(s) of "
        << report.cases_run << "\n";
    for (const auto& failure : report.failures) err << failure << "\n";
    return 4;
}

}  // namespace

std::string render_facts(const std::string& pred, const Relation& r) {
    std::string out;
    for (const auto& t : r.tuples()) {
        out += render_fact(pred, r.schema(), t) + ".\n";
    }
    return out;
}

std::string render_delta(const std::string& pred, const BooleanDelta& d) {
    std::string out;
    for (const auto& t : d.adds().tuples()) {
        out += "+" + render_fact(pred, d.schema(), t) + ".\n";
    }
    for (const auto& t : d.removes().tuples()) {
        out += "-" + render_fact(pred, d.schema(), t) + ".\n";
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"incremental datalog engine"};
    app.require_subcommand(1);

    EvalFlags ef;
    auto* ev = app.add_subcommand("eval", "compute the least fixpoint");
    ev->add_option("program", ef.program_path)->required();
    ev->add_option("facts", ef.facts_path)->required();
    ev->add_option("--engine", ef.engine)
        ->check(CLI::IsMember({"naive", "seminaive"}));
    ev->add_flag("--trace", ef.trace);
    ev->add_option("--max-iters", ef.max_iters);
    ev->add_option("--output", ef.output);

    MaintainFlags mf;
    auto* mt = app.add_subcommand("maintain", "update an existing fixpoint");
    mt->add_option("program", mf.program_path)->required();
    mt->add_option("facts", mf.facts_path)->required();
    mt->add_option("delta", mf.delta_path)->required();
    mt->add_option("--strategy", mf.strategy)
        ->check(CLI::IsMember({"derivative", "trivial"}));
    mt->add_flag("--validate", mf.validate);
    mt->add_option("--max-iters", mf.max_iters);

    std::string derive_path;
    auto* dv = app.add_subcommand("derive", "print derivative rules");
    dv->add_option("program", derive_path)->required();

    CheckFlags cf;
    auto* ck = app.add_subcommand("check", "randomized property check");
    ck->add_option("program", cf.program_path)->required();
    ck->add_option("--samples", cf.samples);
    ck->add_option("--seed", cf.seed);
    ck->add_option("--universe", cf.universe);

    std::vector<const char*> argv;
    argv.push_back("deltalog");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (*ev) return cmd_eval(ef, out, err);
        if (*mt) return cmd_maintain(mf, out, err);
        if (*dv) return cmd_derive(derive_path, out);
        return cmd_check(cf, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const CheckError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const MaintenanceError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const SizeCapError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace deltalog
