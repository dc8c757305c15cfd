#pragma once

// Safety checking, Herbrand base and ground instantiation.

#include <asphint/budget.hpp>
#include <asphint/model.hpp>

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asphint {

struct SafetyViolation {
    Rule rule;
    std::set<std::string> unsafe_variables;

    friend bool operator==(const SafetyViolation&, const SafetyViolation&) = default;
};

struct GroundProgram {
    RuleSet rules;
    AtomSet herbrand_base;

    friend bool operator==(const GroundProgram&, const GroundProgram&) = default;
};

class UnsafeProgramError : public std::runtime_error {
public:
    explicit UnsafeProgramError(std::vector<SafetyViolation> v)
        : std::runtime_error("program is unsafe"), violations_(std::move(v)) {}

    const std::vector<SafetyViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<SafetyViolation> violations_;
};

// A rule is safe when every variable of its head and negative body also
// occurs in its positive body. Violations come back in canonical rule order.
inline std::vector<SafetyViolation> check_safety(const Program& p) {
    std::vector<SafetyViolation> out;
    for (const auto& r : program_rules(p)) {
        auto bound = variables_of(r.pos_body);
        auto needed = variables_of(r.head);
        needed.merge(variables_of(r.neg_body));
        std::set<std::string> unsafe;
        for (const auto& v : needed)
            if (!bound.count(v)) unsafe.insert(v);
        if (!unsafe.empty()) out.push_back({r, std::move(unsafe)});
    }
    return out;
}

inline std::set<Signature> signatures_of(const Program& p) {
    std::set<Signature> sigs;
    for (const auto& r : p.rules) {
        for (const auto& a : r.head) sigs.insert(signature(a));
        for (const auto& a : r.pos_body) sigs.insert(signature(a));
        for (const auto& a : r.neg_body) sigs.insert(signature(a));
    }
    return sigs;
}

// All atoms formable from the program's predicate/arity pairs and constants.
inline AtomSet herbrand_base(const Program& p) {
    AtomSet base;
    auto constants = constants_of(p);
    std::vector<std::string> consts(constants.begin(), constants.end());
    for (const auto& sig : signatures_of(p)) {
        if (sig.arity > 0 && consts.empty()) continue;
        std::vector<std::size_t> idx(sig.arity, 0);
        while (true) {
            Atom a{sig.predicate, {}};
            for (auto i : idx) a.args.push_back(Term::constant(consts[i]));
            base.insert(std::move(a));
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == consts.size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return base;
}

namespace detail {

using Binding = std::map<std::string, std::string>;

inline Atom substitute(const Atom& a, const Binding& b) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) {
        if (t.is_variable()) out.args.push_back(Term::constant(b.at(t.name)));
        else out.args.push_back(t);
    }
    return out;
}

inline Rule substitute(const Rule& r, const Binding& b) {
    Rule out;
    for (const auto& a : r.head) out.head.insert(substitute(a, b));
    for (const auto& a : r.pos_body) out.pos_body.insert(substitute(a, b));
    for (const auto& a : r.neg_body) out.neg_body.insert(substitute(a, b));
    return out;
}

// Extends `b` so that `pattern` matches the ground atom `fact`.
inline bool match(const Atom& pattern, const Atom& fact, Binding& b) {
    if (pattern.predicate != fact.predicate || pattern.args.size() != fact.args.size()) return false;
    for (std::size_t i = 0; i < pattern.args.size(); ++i) {
        const auto& t = pattern.args[i];
        const auto& value = fact.args[i].name;
        if (t.is_constant()) {
            if (t.name != value) return false;
            continue;
        }
        auto [it, inserted] = b.emplace(t.name, value);
        if (!inserted && it->second != value) return false;
    }
    return true;
}

inline void naive_instances(const Rule& r, const std::vector<std::string>& consts, RuleSet& out, const Budget& budget) {
    auto vars = variables_of(r);
    if (vars.empty()) {
        out.insert(Rule{r.head, r.pos_body, r.neg_body, {}});
        return;
    }
    if (consts.empty()) return;
    std::vector<std::string> names(vars.begin(), vars.end());
    std::vector<std::size_t> idx(names.size(), 0);
    std::size_t count = 0;
    while (true) {
        if ((++count & 0xFFF) == 0) budget.check_time();
        Binding b;
        for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = consts[idx[i]];
        out.insert(substitute(r, b));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == consts.size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
}

class PositiveBodyGrounder {
public:
    PositiveBodyGrounder(const RuleSet& rules, const Budget& budget) : rules_(rules), budget_(budget) {}

    RuleSet run() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& r : rules_) {
                std::vector<const Atom*> body;
                for (const auto& a : r.pos_body) body.push_back(&a);
                Binding b;
                join(r, body, 0, b, changed);
            }
        }
        return std::move(out_);
    }

private:
    void join(const Rule& r, const std::vector<const Atom*>& body, std::size_t i, Binding& b, bool& changed) {
        if ((++steps_ & 0xFFF) == 0) budget_.check_time();
        if (i == body.size()) {
            Rule g = substitute(r, b);
            if (out_.insert(g).second) {
                for (const auto& h : g.head)
                    if (possible_[signature(h)].insert(h).second) changed = true;
            }
            return;
        }
        auto it = possible_.find(signature(*body[i]));
        if (it == possible_.end()) return;
        // copy: the set may grow while we recurse
        std::vector<Atom> candidates(it->second.begin(), it->second.end());
        for (const auto& fact : candidates) {
            Binding next = b;
            if (match(*body[i], fact, next)) join(r, body, i + 1, next, changed);
        }
    }

    const RuleSet& rules_;
    const Budget& budget_;
    std::map<Signature, AtomSet> possible_;
    RuleSet out_;
    std::size_t steps_ = 0;
};

}  // namespace detail

struct GroundOptions {
    // Instantiate only rules whose positive body can be derived. Preserves
    // answer sets; off means the full naive instantiation.
    bool prune = false;
};

inline GroundProgram ground(const Program& p, const GroundOptions& opts = {}, const Budget& budget = {}) {
    auto violations = check_safety(p);
    if (!violations.empty()) throw UnsafeProgramError(std::move(violations));

    GroundProgram g;
    g.herbrand_base = herbrand_base(p);
    auto rules = program_rules(p);
    if (opts.prune) {
        g.rules = detail::PositiveBodyGrounder(rules, budget).run();
    } else {
        auto constants = constants_of(p);
        std::vector<std::string> consts(constants.begin(), constants.end());
        for (const auto& r : rules) detail::naive_instances(r, consts, g.rules, budget);
    }
    return g;
}

}  // namespace asphint
