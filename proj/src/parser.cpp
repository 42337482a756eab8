#include "deltalog/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace deltalog {

namespace {

enum class Tok {
    Ident,
    Var,
    Int,
    Implies,  // :-
    Dot,
    Comma,
    Semi,
    LParen,
    RParen,
    Bang,
    Plus,
    Minus,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws();
        int line = line_, col = col_;
        if (pos_ >= text_.size()) return {Tok::End, "", line, col};
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                num += text_[pos_];
                advance();
            }
            return {Tok::Int, num, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                id += text_[pos_];
                advance();
            }
            bool var = std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_';
            return {var ? Tok::Var : Tok::Ident, id, line, col};
        }
        advance();
        switch (c) {
            case '.': return {Tok::Dot, ".", line, col};
            case ',': return {Tok::Comma, ",", line, col};
            case ';': return {Tok::Semi, ";", line, col};
            case '(': return {Tok::LParen, "(", line, col};
            case ')': return {Tok::RParen, ")", line, col};
            case '!': return {Tok::Bang, "!", line, col};
            case '+': return {Tok::Plus, "+", line, col};
            case '-': return {Tok::Minus, "-", line, col};
            case ':':
                if (pos_ < text_.size() && text_[pos_] == '-') {
                    advance();
                    return {Tok::Implies, ":-", line, col};
                }
                throw ParseError("expected ':-'", line, col);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    const Token& peek() const { return current_; }

    Token expect(Tok kind, const char* what) {
        if (current_.kind != kind) {
            throw ParseError(std::string("expected ") + what + ", found '" + current_.text + "'",
                             current_.line, current_.column);
        }
        Token t = current_;
        shift();
        return t;
    }

    bool accept(Tok kind) {
        if (current_.kind != kind) return false;
        shift();
        return true;
    }

    Term term() {
        if (current_.kind == Tok::Var) {
            Term t = Variable{current_.text};
            shift();
            return t;
        }
        if (current_.kind == Tok::Minus || current_.kind == Tok::Int) {
            bool neg = accept(Tok::Minus);
            Token num = expect(Tok::Int, "integer");
            std::int64_t v = std::stoll(num.text);
            return Constant{neg ? -v : v};
        }
        if (current_.kind == Tok::Ident) {
            Term t = Constant{current_.text};
            shift();
            return t;
        }
        throw ParseError("expected a term", current_.line, current_.column);
    }

    Formula::Atom atom() {
        Token name = expect(Tok::Ident, "predicate name");
        expect(Tok::LParen, "'('");
        Formula::Atom a{name.text, AtomKind::Base, {}};
        a.args.push_back(term());
        while (accept(Tok::Comma)) a.args.push_back(term());
        expect(Tok::RParen, "')'");
        return a;
    }

    FormulaPtr body() { return disj(); }

private:
    FormulaPtr disj() {
        FormulaPtr f = conj();
        while (accept(Tok::Semi)) f = make_or(f, conj());
        return f;
    }

    FormulaPtr conj() {
        FormulaPtr f = literal();
        while (accept(Tok::Comma)) f = make_and(f, literal());
        return f;
    }

    FormulaPtr literal() {
        if (accept(Tok::Bang)) return make_not(literal());
        if (current_.kind == Tok::LParen) {
            shift();
            FormulaPtr f = disj();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (current_.kind == Tok::Ident) {
            if (current_.text == "true") {
                shift();
                return make_top();
            }
            if (current_.text == "false") {
                shift();
                return make_bottom();
            }
            auto a = atom();
            return make_atom(a.pred, std::move(a.args));
        }
        throw ParseError("expected a literal", current_.line, current_.column);
    }

    void shift() { current_ = lexer_.next(); }

    Lexer lexer_;
    Token current_{Tok::End, "", 0, 0};
};

// --- implicit existential lowering ------------------------------------------

bool occurs_free(const Formula& f, const std::string& var) {
    return free_variables(f).count(var) > 0;
}

// Wrap Exists binders for `vars` around `f`, outermost = earliest in `order`.
FormulaPtr wrap_exists(FormulaPtr f, const std::set<std::string>& vars,
                       const std::vector<std::string>& order) {
    std::vector<std::string> sorted;
    for (const auto& v : order) {
        if (vars.count(v)) sorted.push_back(v);
    }
    for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
        f = make_exists(*it, f);
    }
    return f;
}

// Push each quantified variable down to the smallest subformula containing all
// of its occurrences; variables needed by both children of a binary node are
// quantified at that node.
FormulaPtr quantify(const FormulaPtr& f, const std::set<std::string>& vars,
                    const std::vector<std::string>& order) {
    if (vars.empty()) return f;
    return std::visit(
        [&](const auto& node) -> FormulaPtr {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::And> || std::is_same_v<T, Formula::Or>) {
                std::set<std::string> left_only, right_only, both;
                for (const auto& v : vars) {
                    bool l = occurs_free(*node.left, v);
                    bool r = occurs_free(*node.right, v);
                    if (l && r) {
                        both.insert(v);
                    } else if (l) {
                        left_only.insert(v);
                    } else if (r) {
                        right_only.insert(v);
                    }
                }
                FormulaPtr left = quantify(node.left, left_only, order);
                FormulaPtr right = quantify(node.right, right_only, order);
                FormulaPtr joined = std::is_same_v<T, Formula::And> ? make_and(left, right)
                                                                    : make_or(left, right);
                return wrap_exists(joined, both, order);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                return make_not(quantify(node.body, vars, order));
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                auto inner = vars;
                inner.erase(node.var);
                return make_exists(node.var, quantify(node.body, inner, order));
            } else if constexpr (std::is_same_v<T, Formula::Atom>) {
                std::set<std::string> here;
                for (const auto& v : vars) {
                    if (occurs_free(*f, v)) here.insert(v);
                }
                return wrap_exists(f, here, order);
            } else {
                return f;
            }
        },
        f->node);
}

// Textual order of variable occurrences in a body.
void occurrence_order(const Formula& f, std::vector<std::string>& order,
                      std::set<std::string>& seen) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                for (const auto& t : node.args) {
                    if (const auto* v = std::get_if<Variable>(&t)) {
                        if (seen.insert(v->name).second) order.push_back(v->name);
                    }
                }
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                occurrence_order(*node.left, order, seen);
                occurrence_order(*node.right, order, seen);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                occurrence_order(*node.body, order, seen);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                occurrence_order(*node.body, order, seen);
            }
        },
        f.node);
}

void collect_constants(const Formula& f, std::set<Constant>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                for (const auto& t : node.args) {
                    if (const auto* c = std::get_if<Constant>(&t)) out.insert(*c);
                }
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                collect_constants(*node.left, out);
                collect_constants(*node.right, out);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                collect_constants(*node.body, out);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                collect_constants(*node.body, out);
            }
        },
        f.node);
}

struct Clause {
    Formula::Atom head;
    FormulaPtr body;  // null for facts
    int line;
};

void note_arity(std::map<std::string, std::size_t>& arities, const std::string& pred,
                std::size_t arity, int line) {
    auto [it, fresh] = arities.emplace(pred, arity);
    if (!fresh && it->second != arity) {
        throw ParseError("predicate '" + pred + "' used with arity " + std::to_string(arity) +
                             " but previously with " + std::to_string(it->second),
                         line, 1);
    }
}

void note_body_arities(const Formula& f, std::map<std::string, std::size_t>& arities, int line) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Formula::Atom>) {
                note_arity(arities, node.pred, node.args.size(), line);
            } else if constexpr (std::is_same_v<T, Formula::And> ||
                                 std::is_same_v<T, Formula::Or>) {
                note_body_arities(*node.left, arities, line);
                note_body_arities(*node.right, arities, line);
            } else if constexpr (std::is_same_v<T, Formula::Not>) {
                note_body_arities(*node.body, arities, line);
            } else if constexpr (std::is_same_v<T, Formula::Exists>) {
                note_body_arities(*node.body, arities, line);
            }
        },
        f.node);
}

}  // namespace

Program parse_program(const std::string& text) {
    Parser parser(text);
    std::vector<Clause> clauses;
    while (parser.peek().kind != Tok::End) {
        int line = parser.peek().line;
        Formula::Atom head = parser.atom();
        FormulaPtr body;
        if (parser.accept(Tok::Implies)) body = parser.body();
        parser.expect(Tok::Dot, "'.'");
        clauses.push_back({std::move(head), std::move(body), line});
    }

    Program p;
    std::map<std::string, std::size_t> arities;

    // First pass: predicate roles and arities.
    for (const auto& c : clauses) {
        note_arity(arities, c.head.pred, c.head.args.size(), c.line);
        if (c.body) {
            p.idb[c.head.pred] = c.head.args.size();
            note_body_arities(*c.body, arities, c.line);
        }
    }
    for (const auto& c : clauses) {
        if (!c.body) {
            if (p.idb.count(c.head.pred)) {
                throw ParseError("predicate '" + c.head.pred +
                                     "' has both facts and rules; EDB predicates may not appear "
                                     "in rule heads",
                                 c.line, 1);
            }
            for (const auto& t : c.head.args) {
                if (std::holds_alternative<Variable>(t)) {
                    throw ParseError("fact for '" + c.head.pred + "' contains a variable",
                                     c.line, 1);
                }
            }
        }
    }
    for (const auto& [pred, arity] : arities) {
        if (!p.idb.count(pred)) p.edb[pred] = arity;
    }

    // Facts.
    for (const auto& [pred, arity] : p.edb) {
        p.facts.emplace(pred, Relation(canonical_schema(pred, arity)));
    }
    for (const auto& c : clauses) {
        if (c.body) continue;
        Tuple t;
        t.reserve(c.head.args.size());
        // Canonical schema attrs p$1..p$n sort by string; map positions in.
        Schema schema = canonical_schema(c.head.pred, c.head.args.size());
        t.resize(c.head.args.size());
        for (std::size_t i = 0; i < c.head.args.size(); ++i) {
            const auto& con = std::get<Constant>(c.head.args[i]);
            t[schema.index_of(canonical_attr(c.head.pred, i + 1))] = con;
            p.constants.insert(con);
        }
        p.facts.at(c.head.pred).insert(std::move(t));
    }

    // Rules: lower implicit existentials, collect constants.
    for (const auto& c : clauses) {
        if (!c.body) continue;
        std::set<std::string> head_vars;
        for (const auto& t : c.head.args) {
            const auto* v = std::get_if<Variable>(&t);
            if (v && !head_vars.insert(v->name).second) {
                throw ParseError("head of rule for '" + c.head.pred +
                                     "' repeats variable '" + v->name + "'",
                                 c.line, 1);
            }
            if (!v) {
                throw ParseError("head of rule for '" + c.head.pred +
                                     "' must use distinct variables, found a constant",
                                 c.line, 1);
            }
        }
        auto body_free = free_variables(*c.body);
        for (const auto& v : head_vars) {
            if (!body_free.count(v)) {
                throw ParseError("head variable '" + v + "' of rule for '" + c.head.pred +
                                     "' does not occur in the body",
                                 c.line, 1);
            }
        }
        std::set<std::string> body_only;
        for (const auto& v : body_free) {
            if (!head_vars.count(v)) body_only.insert(v);
        }
        std::vector<std::string> order;
        std::set<std::string> seen;
        occurrence_order(*c.body, order, seen);
        FormulaPtr lowered = quantify(c.body, body_only, order);
        collect_constants(*lowered, p.constants);
        p.rules.push_back({c.head, lowered, c.line});
    }

    // Defining formulas: rename every rule into the canonical schema and Or
    // the bodies together in source order.
    for (const auto& r : p.rules) {
        std::map<std::string, std::string> mapping;
        for (std::size_t i = 0; i < r.head.args.size(); ++i) {
            mapping[std::get<Variable>(r.head.args[i]).name] =
                canonical_attr(r.head.pred, i + 1);
        }
        FormulaPtr canonical = substitute_vars(r.body, mapping);
        auto it = p.defining.find(r.head.pred);
        if (it == p.defining.end()) {
            p.defining.emplace(r.head.pred, canonical);
        } else {
            it->second = make_or(it->second, canonical);
        }
    }

    return p;
}

namespace {

struct GroundFact {
    std::string pred;
    Tuple tuple;  // canonical layout
    std::vector<Constant> positional;
    int line;
};

GroundFact read_fact(Parser& parser, const Program& p, const char* what) {
    int line = parser.peek().line;
    Formula::Atom a = parser.atom();
    auto it = p.edb.find(a.pred);
    if (it == p.edb.end()) {
        if (p.idb.count(a.pred)) {
            throw ParseError(std::string(what) + " names IDB predicate '" + a.pred +
                                 "'; only EDB predicates may be given extensionally",
                             line, 1);
        }
        throw ParseError(std::string(what) + " names unknown predicate '" + a.pred + "'", line,
                         1);
    }
    if (a.args.size() != it->second) {
        throw ParseError("fact for '" + a.pred + "' has arity " +
                             std::to_string(a.args.size()) + ", expected " +
                             std::to_string(it->second),
                         line, 1);
    }
    GroundFact f{a.pred, Tuple(a.args.size()), {}, line};
    Schema schema = canonical_schema(a.pred, a.args.size());
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        const auto* c = std::get_if<Constant>(&a.args[i]);
        if (!c) throw ParseError("fact for '" + a.pred + "' contains a variable", line, 1);
        f.tuple[schema.index_of(canonical_attr(a.pred, i + 1))] = *c;
        f.positional.push_back(*c);
    }
    return f;
}

}  // namespace

std::map<std::string, Relation> parse_facts(const std::string& text, const Program& p) {
    Parser parser(text);
    std::map<std::string, Relation> out;
    for (const auto& [pred, arity] : p.edb) {
        out.emplace(pred, Relation(canonical_schema(pred, arity)));
    }
    while (parser.peek().kind != Tok::End) {
        GroundFact f = read_fact(parser, p, "fact");
        parser.expect(Tok::Dot, "'.'");
        out.at(f.pred).insert(std::move(f.tuple));
    }
    return out;
}

std::map<std::string, BooleanDelta> parse_delta(const std::string& text, const Program& p) {
    Parser parser(text);
    std::map<std::string, Relation> adds, removes;
    for (const auto& [pred, arity] : p.edb) {
        adds.emplace(pred, Relation(canonical_schema(pred, arity)));
        removes.emplace(pred, Relation(canonical_schema(pred, arity)));
    }
    while (parser.peek().kind != Tok::End) {
        bool insert;
        if (parser.accept(Tok::Plus)) {
            insert = true;
        } else if (parser.accept(Tok::Minus)) {
            insert = false;
        } else {
            throw ParseError("delta line must start with '+' or '-'", parser.peek().line,
                             parser.peek().column);
        }
        GroundFact f = read_fact(parser, p, "delta fact");
        parser.expect(Tok::Dot, "'.'");
        auto& target = insert ? adds : removes;
        auto& other = insert ? removes : adds;
        if (other.at(f.pred).contains(f.tuple)) {
            throw ParseError("delta lists a fact for '" + f.pred + "' with both signs", f.line,
                             1);
        }
        target.at(f.pred).insert(std::move(f.tuple));
    }
    std::map<std::string, BooleanDelta> out;
    for (const auto& [pred, arity] : p.edb) {
        out.emplace(pred, BooleanDelta(adds.at(pred), removes.at(pred)));
    }
    return out;
}

}  // namespace deltalog
