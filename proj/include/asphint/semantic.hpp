#pragma once

// Phase 3: compare the student's answer sets with the reference answer sets
// and turn the difference into graduated hints.

#include <asphint/hint.hpp>
#include <asphint/model.hpp>

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace asphint {

struct SemanticDiff {
    bool matched = false;
    AtomSet extra;    // student minus reference
    AtomSet missing;  // reference minus student
    Interpretation student_set;
    Interpretation reference_set;
    bool multiplicity_note = false;  // answer-set counts differ
    std::size_t student_count = 0;
    std::size_t reference_count = 0;
    bool both_inconsistent = false;  // neither program has an answer set

    friend bool operator==(const SemanticDiff&, const SemanticDiff&) = default;
};

namespace detail {

inline AtomSet atom_minus(const AtomSet& a, const AtomSet& b) {
    AtomSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline std::size_t symmetric_difference_size(const Interpretation& a, const Interpretation& b) {
    return atom_minus(a.atoms, b.atoms).size() + atom_minus(b.atoms, a.atoms).size();
}

}  // namespace detail

// With several answer sets on either side, every reference set is paired
// with a student set, cheapest symmetric difference first. Ties break on the
// unordered pair in canonical order, so swapping the arguments swaps extra
// and missing. Unpaired sets are compared against the empty interpretation.
// The worst pair is reported.
inline SemanticDiff compare(const InterpretationSet& as_u, const InterpretationSet& as_r) {
    SemanticDiff d;
    d.student_count = as_u.size();
    d.reference_count = as_r.size();
    if (as_u == as_r) {
        d.matched = true;
        d.both_inconsistent = as_u.empty();
        if (!as_u.empty()) d.student_set = d.reference_set = *as_u.begin();
        return d;
    }
    d.multiplicity_note = as_u.size() != as_r.size();

    std::vector<Interpretation> us(as_u.begin(), as_u.end());
    std::vector<Interpretation> rs(as_r.begin(), as_r.end());
    struct Candidate {
        std::size_t cost;
        const Interpretation* lo;
        const Interpretation* hi;
        std::size_t u;
        std::size_t r;
    };
    std::vector<Candidate> candidates;
    for (std::size_t u = 0; u < us.size(); ++u)
        for (std::size_t r = 0; r < rs.size(); ++r) {
            const auto* a = &us[u];
            const auto* b = &rs[r];
            if (*b < *a) std::swap(a, b);
            candidates.push_back({detail::symmetric_difference_size(us[u], rs[r]), a, b, u, r});
        }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
        if (x.cost != y.cost) return x.cost < y.cost;
        if (!(*x.lo == *y.lo)) return *x.lo < *y.lo;
        return *x.hi < *y.hi;
    });

    std::vector<char> u_used(us.size(), 0), r_used(rs.size(), 0);
    std::vector<std::pair<Interpretation, Interpretation>> pairs;  // (student, reference)
    for (const auto& c : candidates) {
        if (u_used[c.u] || r_used[c.r]) continue;
        u_used[c.u] = r_used[c.r] = 1;
        pairs.emplace_back(us[c.u], rs[c.r]);
    }
    for (std::size_t u = 0; u < us.size(); ++u)
        if (!u_used[u]) pairs.emplace_back(us[u], Interpretation{});
    for (std::size_t r = 0; r < rs.size(); ++r)
        if (!r_used[r]) pairs.emplace_back(Interpretation{}, rs[r]);

    // Worst pair: largest difference; ties again on the unordered pair.
    const std::pair<Interpretation, Interpretation>* worst = nullptr;
    std::size_t worst_cost = 0;
    auto key = [](const std::pair<Interpretation, Interpretation>& p) {
        return p.first < p.second ? std::tie(p.first, p.second) : std::tie(p.second, p.first);
    };
    for (const auto& p : pairs) {
        std::size_t cost = detail::symmetric_difference_size(p.first, p.second);
        if (!worst || cost > worst_cost || (cost == worst_cost && key(p) < key(*worst))) {
            worst = &p;
            worst_cost = cost;
        }
    }
    if (worst) {
        d.student_set = worst->first;
        d.reference_set = worst->second;
        d.extra = detail::atom_minus(worst->first.atoms, worst->second.atoms);
        d.missing = detail::atom_minus(worst->second.atoms, worst->first.atoms);
    }
    return d;
}

namespace detail {

inline std::vector<std::string> predicate_names(const AtomSet& atoms) {
    std::set<std::string> names;
    for (const auto& a : atoms) names.insert(a.predicate);
    return {names.begin(), names.end()};
}

inline std::vector<std::string> atom_strings(const AtomSet& atoms) {
    std::vector<std::string> out;
    for (const auto& a : atoms) out.push_back(to_string(a));
    return out;
}

inline std::string of_predicates(const AtomSet& atoms) {
    auto names = predicate_names(atoms);
    return (names.size() == 1 ? " of predicate " : " of predicates ") + join_and(names);
}

}  // namespace detail

// Level 0 gives the direction only, level 1 adds predicate names, level 2
// lists the ground atoms.
inline std::vector<Hint> semantic_hint(const SemanticDiff& d, int level) {
    if (d.matched) throw std::invalid_argument("semantic_hint needs an unmatched diff");
    level = std::clamp(level, 0, 2);
    std::vector<Hint> hints;

    if (d.multiplicity_note) {
        std::string msg = d.student_count == 0 ? "The program has no answer set, but a solution exists."
                                               : "The program has a different number of answer sets than expected.";
        hints.push_back({3, level, std::move(msg),
                         {{"kind", "answer_set_count"}, {"student_count", d.student_count}}, {}, {}, false});
    }

    if (!d.extra.empty()) {
        nlohmann::json payload = {{"kind", "extra_atoms"}, {"count", d.extra.size()}};
        std::string msg;
        if (level == 0) {
            msg = "The answer set contains more true atoms than it should.";
        } else if (level == 1) {
            msg = "The answer set contains more true atoms" + detail::of_predicates(d.extra) + " than it should.";
            payload["predicates"] = detail::predicate_names(d.extra);
        } else {
            msg = "The answer set contains true atoms which should be false: " +
                  detail::join_and(detail::atom_strings(d.extra)) + ".";
            payload["predicates"] = detail::predicate_names(d.extra);
            payload["atoms"] = detail::atom_strings(d.extra);
        }
        hints.push_back({3, level, std::move(msg), std::move(payload), {}, {}, false});
    }

    if (!d.missing.empty()) {
        nlohmann::json payload = {{"kind", "missing_atoms"}, {"count", d.missing.size()}};
        std::string msg;
        if (level == 0) {
            msg = "The answer set contains fewer true atoms than it should.";
        } else if (level == 1) {
            msg = "The answer set contains fewer true atoms" + detail::of_predicates(d.missing) + " than it should.";
            payload["predicates"] = detail::predicate_names(d.missing);
        } else {
            msg = "The answer set contains false atoms which should be true: " +
                  detail::join_and(detail::atom_strings(d.missing)) + ".";
            payload["predicates"] = detail::predicate_names(d.missing);
            payload["atoms"] = detail::atom_strings(d.missing);
        }
        hints.push_back({3, level, std::move(msg), std::move(payload), {}, {}, false});
    }
    return hints;
}

}  // namespace asphint
