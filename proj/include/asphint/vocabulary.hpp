#pragma once

// Vocabulary of a program (predicates, predicate/arity pairs, constants) and
// the student-minus-reference differences that drive phase-2 hints.

#include <asphint/grounder.hpp>
#include <asphint/hint.hpp>
#include <asphint/model.hpp>

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asphint {

struct Vocabulary {
    std::set<std::string> preds;
    std::set<Signature> predarities;
    std::set<std::string> constants;

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

    Vocabulary& operator|=(const Vocabulary& o) {
        preds.insert(o.preds.begin(), o.preds.end());
        predarities.insert(o.predarities.begin(), o.predarities.end());
        constants.insert(o.constants.begin(), o.constants.end());
        return *this;
    }
    friend Vocabulary operator|(Vocabulary a, const Vocabulary& b) { return a |= b; }
};

inline Vocabulary extract_vocab(const AtomSet& atoms) {
    Vocabulary v;
    for (const auto& a : atoms) {
        v.preds.insert(a.predicate);
        v.predarities.insert(signature(a));
        for (const auto& t : a.args)
            if (t.is_constant()) v.constants.insert(t.name);
    }
    return v;
}

enum class Scope { head, body, all };

inline Vocabulary scoped_vocab(const Rule& r, Scope scope) {
    Vocabulary v;
    if (scope != Scope::body) v |= extract_vocab(r.head);
    if (scope != Scope::head) {
        v |= extract_vocab(r.pos_body);
        v |= extract_vocab(r.neg_body);
    }
    return v;
}

inline Vocabulary scoped_vocab(const Program& p, Scope scope) {
    Vocabulary v;
    for (const auto& r : p.rules) v |= scoped_vocab(r, scope);
    return v;
}

namespace detail {

template <class T>
std::set<T> minus(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

}  // namespace detail

inline std::set<std::string> wrongpred(const Program& pu, const Program& pr) {
    return detail::minus(scoped_vocab(pu, Scope::all).preds, scoped_vocab(pr, Scope::all).preds);
}

inline std::set<Signature> wrongarity(const Program& pu, const Program& pr) {
    return detail::minus(scoped_vocab(pu, Scope::all).predarities, scoped_vocab(pr, Scope::all).predarities);
}

inline std::set<std::string> wrongcons(const Program& pu, const Program& pr) {
    return detail::minus(scoped_vocab(pu, Scope::all).constants, scoped_vocab(pr, Scope::all).constants);
}

struct VocabDiff {
    std::set<std::string> wrong_preds;
    std::set<Signature> wrong_arities;
    std::set<std::string> wrong_constants;

    bool empty() const noexcept { return wrong_preds.empty() && wrong_arities.empty() && wrong_constants.empty(); }

    friend bool operator==(const VocabDiff&, const VocabDiff&) = default;
};

inline VocabDiff vocab_diff(const Program& pu, const Program& pr) {
    auto u = scoped_vocab(pu, Scope::all);
    auto r = scoped_vocab(pr, Scope::all);
    return {detail::minus(u.preds, r.preds), detail::minus(u.predarities, r.predarities),
            detail::minus(u.constants, r.constants)};
}

// Reference-minus-student. Kept for instructors; never hinted.
inline VocabDiff missing_vocab(const Program& pu, const Program& pr) { return vocab_diff(pr, pu); }

// Phase-2 hints in order: predicates, arities, constants. Level 1 also
// reveals the reference arities of a predicate used with a wrong arity.
// An arity finding for a predicate that is already unknown is not repeated.
inline std::vector<Hint> vocab_hint(const VocabDiff& d, const Program& pr, int level) {
    if (d.empty()) throw std::invalid_argument("vocab_hint needs a non-empty diff");
    level = std::clamp(level, 0, 1);
    std::vector<Hint> hints;

    for (const auto& p : d.wrong_preds) {
        hints.push_back({2, level, "Predicate " + p + " should not be used.",
                         {{"kind", "wrong_predicate"}, {"predicate", p}}, {}, {}, false});
    }

    std::map<std::string, std::set<std::size_t>> reference_arities;
    for (const auto& sig : scoped_vocab(pr, Scope::all).predarities) reference_arities[sig.predicate].insert(sig.arity);

    for (const auto& sig : d.wrong_arities) {
        if (d.wrong_preds.count(sig.predicate)) continue;
        std::string msg = "Predicate " + sig.predicate + " was used with arity " + std::to_string(sig.arity) +
                          " which is unexpected.";
        nlohmann::json payload = {{"kind", "wrong_arity"}, {"predicate", sig.predicate}, {"arity", sig.arity}};
        if (level >= 1) {
            auto it = reference_arities.find(sig.predicate);
            if (it != reference_arities.end()) {
                std::vector<std::string> arities;
                for (auto a : it->second) arities.push_back(std::to_string(a));
                msg += " In the sample solution, predicate " + sig.predicate + " has arity " +
                       detail::join_and(arities) + ".";
                payload["reference_arities"] = it->second;
            }
        }
        hints.push_back({2, level, std::move(msg), std::move(payload), {}, {}, false});
    }

    if (!d.wrong_constants.empty()) {
        std::vector<std::string> names(d.wrong_constants.begin(), d.wrong_constants.end());
        std::string list;
        for (std::size_t i = 0; i < names.size(); ++i) list += (i ? ", " : "") + names[i];
        hints.push_back({2, level,
                         "The program contains the following unexpected constants which are not required in the "
                         "solution: " + list + ".",
                         {{"kind", "wrong_constants"}, {"constants", names}}, {}, {}, false});
    }
    return hints;
}

// Safety findings share phase 2 with the vocabulary findings.
inline Hint safety_hint(const SafetyViolation& v, int level) {
    std::vector<std::string> names(v.unsafe_variables.begin(), v.unsafe_variables.end());
    bool plural = names.size() > 1;
    std::string msg = std::string(plural ? "Variables " : "Variable ") + detail::join_and(names);
    nlohmann::json payload = {{"kind", "unsafe_variables"}, {"variables", names}};
    if (v.rule.span.start_line > 0) {
        msg += " in the rule on line " + std::to_string(v.rule.span.start_line);
        payload["line"] = v.rule.span.start_line;
    }
    msg += std::string(plural ? " appear" : " appears") +
           " only under 'not' or in the head of a rule. Every variable must also occur in a positive body atom.";
    return {2, std::clamp(level, 0, 1), std::move(msg), std::move(payload), {}, {}, false};
}

}  // namespace asphint
