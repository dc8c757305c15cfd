#pragma once

// Logic-program AST: terms, atoms, rules, programs and interpretations.
//
// Rules store their head and body literals as ordered sets, so duplicate
// literals collapse and printing is canonical. Programs keep source order
// for diagnostics but every analysis works on program_rules(), the set view.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace asphint {

struct Term {
    enum class Kind { constant, variable };

    Kind kind = Kind::constant;
    std::string name;

    static Term constant(std::string n) { return {Kind::constant, std::move(n)}; }
    static Term variable(std::string n) { return {Kind::variable, std::move(n)}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }
    bool is_constant() const noexcept { return kind == Kind::constant; }

    friend bool operator==(const Term&, const Term&) = default;
    friend bool operator<(const Term& a, const Term& b) {
        if (a.name != b.name) return a.name < b.name;
        return a.kind < b.kind;
    }
};

struct Signature {
    std::string predicate;
    std::size_t arity = 0;

    friend bool operator==(const Signature&, const Signature&) = default;
    friend auto operator<=>(const Signature&, const Signature&) = default;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }

    friend bool operator==(const Atom&, const Atom&) = default;
    // predicate, then arity, then argument tuple
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        if (a.args.size() != b.args.size()) return a.args.size() < b.args.size();
        return a.args < b.args;
    }
};

using AtomSet = std::set<Atom>;

struct SourceSpan {
    std::size_t start_line = 0;
    std::size_t start_col = 0;
    std::size_t end_line = 0;
    std::size_t end_col = 0;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct Rule {
    AtomSet head;
    AtomSet pos_body;
    AtomSet neg_body;
    SourceSpan span;

    bool is_fact() const noexcept { return pos_body.empty() && neg_body.empty(); }
    bool is_constraint() const noexcept { return head.empty(); }
    bool is_disjunctive() const noexcept { return head.size() > 1; }

    // Structural equality; the source span is not part of a rule's identity.
    friend bool operator==(const Rule& a, const Rule& b) {
        return a.head == b.head && a.pos_body == b.pos_body && a.neg_body == b.neg_body;
    }
    friend bool operator<(const Rule& a, const Rule& b) {
        if (a.head != b.head) return a.head < b.head;
        if (a.pos_body != b.pos_body) return a.pos_body < b.pos_body;
        return a.neg_body < b.neg_body;
    }
};

using RuleSet = std::set<Rule>;

struct Program {
    std::vector<Rule> rules;

    friend bool operator==(const Program& a, const Program& b);
};

struct Interpretation {
    AtomSet atoms;

    bool contains(const Atom& a) const { return atoms.count(a) != 0; }
    std::size_t size() const noexcept { return atoms.size(); }

    friend bool operator==(const Interpretation&, const Interpretation&) = default;
    friend bool operator<(const Interpretation& a, const Interpretation& b) {
        return a.atoms < b.atoms;
    }
};

using InterpretationSet = std::set<Interpretation>;

// ---------------------------------------------------------------------------
// Construction helpers

inline Term make_term(std::string_view text) {
    std::string name(text);
    if (!name.empty() && name.front() >= 'A' && name.front() <= 'Z') return Term::variable(std::move(name));
    return Term::constant(std::move(name));
}

inline Atom make_atom(std::string predicate, std::initializer_list<std::string_view> args = {}) {
    Atom a{std::move(predicate), {}};
    a.args.reserve(args.size());
    for (auto arg : args) a.args.push_back(make_term(arg));
    return a;
}

// ---------------------------------------------------------------------------
// Structural queries

inline bool is_ground(const Term& t) noexcept { return t.is_constant(); }

inline bool is_ground(const Atom& a) noexcept {
    for (const auto& t : a.args)
        if (!is_ground(t)) return false;
    return true;
}

inline bool is_ground(const AtomSet& atoms) noexcept {
    for (const auto& a : atoms)
        if (!is_ground(a)) return false;
    return true;
}

inline bool is_ground(const Rule& r) noexcept {
    return is_ground(r.head) && is_ground(r.pos_body) && is_ground(r.neg_body);
}

inline bool is_ground(const Program& p) noexcept {
    for (const auto& r : p.rules)
        if (!is_ground(r)) return false;
    return true;
}

inline Signature signature(const Atom& a) { return {a.predicate, a.args.size()}; }

inline RuleSet program_rules(const Program& p) { return RuleSet(p.rules.begin(), p.rules.end()); }

inline bool operator==(const Program& a, const Program& b) { return program_rules(a) == program_rules(b); }

// Rules of both programs, in order: a's rules first.
inline Program combine(const Program& a, const Program& b) {
    Program out = a;
    out.rules.insert(out.rules.end(), b.rules.begin(), b.rules.end());
    return out;
}

inline std::set<std::string> variables_of(const AtomSet& atoms) {
    std::set<std::string> vars;
    for (const auto& a : atoms)
        for (const auto& t : a.args)
            if (t.is_variable()) vars.insert(t.name);
    return vars;
}

inline std::set<std::string> variables_of(const Rule& r) {
    auto vars = variables_of(r.head);
    vars.merge(variables_of(r.pos_body));
    vars.merge(variables_of(r.neg_body));
    return vars;
}

inline std::set<std::string> constants_of(const Program& p) {
    std::set<std::string> out;
    auto collect = [&out](const AtomSet& atoms) {
        for (const auto& a : atoms)
            for (const auto& t : a.args)
                if (t.is_constant()) out.insert(t.name);
    };
    for (const auto& r : p.rules) {
        collect(r.head);
        collect(r.pos_body);
        collect(r.neg_body);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical text: mirrors the input syntax.

inline std::string to_string(const Term& t) { return t.name; }

inline std::string to_string(const Atom& a) {
    std::string out = a.predicate;
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i].name;
    }
    out += ')';
    return out;
}

inline std::string to_string(const Rule& r) {
    std::string out;
    bool first = true;
    for (const auto& h : r.head) {
        if (!first) out += " | ";
        out += to_string(h);
        first = false;
    }
    if (!r.pos_body.empty() || !r.neg_body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        first = true;
        for (const auto& b : r.pos_body) {
            if (!first) out += ", ";
            out += to_string(b);
            first = false;
        }
        for (const auto& b : r.neg_body) {
            if (!first) out += ", ";
            out += "not ";
            out += to_string(b);
            first = false;
        }
    }
    out += '.';
    return out;
}

// One rule per line in canonical (sorted, deduplicated) order.
inline std::string to_string(const Program& p) {
    std::string out;
    for (const auto& r : program_rules(p)) {
        out += to_string(r);
        out += '\n';
    }
    return out;
}

inline std::string to_string(const Interpretation& i) {
    std::string out = "{";
    bool first = true;
    for (const auto& a : i.atoms) {
        if (!first) out += ", ";
        out += to_string(a);
        first = false;
    }
    out += '}';
    return out;
}

}  // namespace asphint
