#pragma once

// Stable-model semantics over ground programs: rule satisfaction, the
// reduct, answer-set recognition and enumeration.
//
// Enumeration takes a layered fixpoint for stratified normal programs and
// otherwise searches the subsets of head atoms that are not forced by the
// definite rules.

#include <asphint/budget.hpp>
#include <asphint/grounder.hpp>
#include <asphint/model.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asphint {

enum class SolveMethod { stratified_fixpoint, exhaustive };

inline std::string_view to_string(SolveMethod m) {
    return m == SolveMethod::stratified_fixpoint ? "stratified-fixpoint" : "exhaustive";
}

struct SolveStats {
    std::uint64_t candidates = 0;
    double elapsed_ms = 0.0;
};

struct AnswerSetResult {
    InterpretationSet answer_sets;
    SolveMethod method = SolveMethod::stratified_fixpoint;
    SolveStats stats;
};

namespace detail {

inline void require_ground(const Rule& r) {
    if (!is_ground(r)) throw std::invalid_argument("rule is not ground: " + to_string(r));
}

inline bool subset_of(const AtomSet& atoms, const Interpretation& i) {
    for (const auto& a : atoms)
        if (!i.contains(a)) return false;
    return true;
}

inline bool intersects(const AtomSet& atoms, const Interpretation& i) {
    for (const auto& a : atoms)
        if (i.contains(a)) return true;
    return false;
}

}  // namespace detail

inline bool satisfies(const Interpretation& i, const Rule& r) {
    detail::require_ground(r);
    return detail::intersects(r.head, i) || !detail::subset_of(r.pos_body, i) || detail::intersects(r.neg_body, i);
}

inline bool is_model(const Interpretation& i, const GroundProgram& g) {
    for (const auto& r : g.rules)
        if (!satisfies(i, r)) return false;
    return true;
}

// Drops rules whose negative body meets `i` and strips the negative body
// from the rest. The Herbrand base is kept.
inline GroundProgram reduct(const GroundProgram& g, const Interpretation& i) {
    GroundProgram out;
    out.herbrand_base = g.herbrand_base;
    for (const auto& r : g.rules) {
        detail::require_ground(r);
        if (detail::intersects(r.neg_body, i)) continue;
        out.rules.insert(Rule{r.head, r.pos_body, {}, {}});
    }
    return out;
}

namespace detail {

// Ground program over dense atom ids.
class IndexedProgram {
public:
    struct IRule {
        std::vector<int> head;
        std::vector<int> pos;
        std::vector<int> neg;
    };

    explicit IndexedProgram(const GroundProgram& g) {
        for (const auto& a : g.herbrand_base) id_of(a);
        for (const auto& r : g.rules) {
            IRule ir;
            for (const auto& a : r.head) ir.head.push_back(id_of(a));
            for (const auto& a : r.pos_body) ir.pos.push_back(id_of(a));
            for (const auto& a : r.neg_body) ir.neg.push_back(id_of(a));
            rules_.push_back(std::move(ir));
        }
    }

    int id_of(const Atom& a) {
        auto [it, inserted] = ids_.emplace(a, static_cast<int>(atoms_.size()));
        if (inserted) atoms_.push_back(a);
        return it->second;
    }

    std::size_t atom_count() const noexcept { return atoms_.size(); }
    const std::vector<IRule>& rules() const noexcept { return rules_; }
    const Atom& atom(int id) const { return atoms_[static_cast<std::size_t>(id)]; }

    Interpretation decode(const std::vector<char>& bits) const {
        Interpretation i;
        for (std::size_t k = 0; k < bits.size(); ++k)
            if (bits[k]) i.atoms.insert(atoms_[k]);
        return i;
    }

    std::vector<char> encode(const Interpretation& i) {
        std::vector<char> bits(atoms_.size(), 0);
        for (const auto& a : i.atoms) {
            auto id = static_cast<std::size_t>(id_of(a));
            if (id >= bits.size()) bits.resize(atoms_.size(), 0);
            bits[id] = 1;
        }
        bits.resize(atoms_.size(), 0);
        return bits;
    }

private:
    std::map<Atom, int> ids_;
    std::vector<Atom> atoms_;
    std::vector<IRule> rules_;
};

inline bool all_in(const std::vector<int>& ids, const std::vector<char>& bits) {
    for (int id : ids)
        if (!bits[static_cast<std::size_t>(id)]) return false;
    return true;
}

inline bool any_in(const std::vector<int>& ids, const std::vector<char>& bits) {
    for (int id : ids)
        if (bits[static_cast<std::size_t>(id)]) return true;
    return false;
}

// Least model of the single-head rules accepted by `keep`, read without their
// negative body. Every model of a program containing those rules includes it.
inline std::vector<char> definite_closure(const IndexedProgram& prog, const std::function<bool(std::size_t)>& keep) {
    std::vector<char> bits(prog.atom_count(), 0);
    const auto& rules = prog.rules();
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k < rules.size(); ++k) {
            const auto& r = rules[k];
            if (r.head.size() != 1 || !keep(k)) continue;
            auto h = static_cast<std::size_t>(r.head[0]);
            if (!bits[h] && all_in(r.pos, bits)) {
                bits[h] = 1;
                changed = true;
            }
        }
    }
    return bits;
}

class StableChecker {
public:
    StableChecker(const IndexedProgram& prog, std::uint64_t& counter, const Budget& budget)
        : prog_(prog), counter_(counter), budget_(budget) {
        for (const auto& r : prog_.rules())
            if (r.head.size() > 1) disjunctive_ = true;
    }

    bool is_model(const std::vector<char>& bits) const {
        for (const auto& r : prog_.rules())
            if (!any_in(r.head, bits) && all_in(r.pos, bits) && !any_in(r.neg, bits)) return false;
        return true;
    }

    // Model of the reduct wrt `reference`: rules with a negative body meeting
    // `reference` are gone, the rest lose their negative body.
    bool is_reduct_model(const std::vector<char>& bits, const std::vector<char>& reference) const {
        for (const auto& r : prog_.rules()) {
            if (any_in(r.neg, reference)) continue;
            if (!any_in(r.head, bits) && all_in(r.pos, bits)) return false;
        }
        return true;
    }

    bool is_stable(const std::vector<char>& bits) {
        if (!is_reduct_model(bits, bits)) return false;
        const auto& rules = prog_.rules();
        auto kept = [&](std::size_t k) { return !any_in(rules[k].neg, bits); };
        auto forced = definite_closure(prog_, kept);
        if (!disjunctive_) return forced == bits;

        // Disjunctive reduct: no proper subset between `forced` and `bits`
        // may be a model.
        for (std::size_t k = 0; k < bits.size(); ++k)
            if (forced[k] && !bits[k]) return false;
        std::vector<std::size_t> optional;
        for (std::size_t k = 0; k < bits.size(); ++k)
            if (bits[k] && !forced[k]) optional.push_back(k);
        if (optional.size() >= 63) throw ResourceExhausted(ResourceExhausted::Reason::candidates, "minimality check too large");
        std::uint64_t full = (std::uint64_t{1} << optional.size()) - 1;
        for (std::uint64_t mask = 0; mask < full; ++mask) {
            tick();
            std::vector<char> sub = forced;
            for (std::size_t j = 0; j < optional.size(); ++j)
                if (mask >> j & 1) sub[optional[j]] = 1;
            if (is_reduct_model(sub, bits)) return false;
        }
        return true;
    }

    void tick() {
        ++counter_;
        if (counter_ > budget_.max_candidates)
            throw ResourceExhausted(ResourceExhausted::Reason::candidates, "candidate budget exceeded");
        if ((counter_ & 0x3FF) == 0) budget_.check_time();
    }

private:
    const IndexedProgram& prog_;
    std::uint64_t& counter_;
    const Budget& budget_;
    bool disjunctive_ = false;
};

// Predicate dependency graph: head predicate -> body predicate, marking
// edges that pass through `not`.
struct DependencyGraph {
    std::vector<Signature> nodes;
    std::vector<std::vector<std::pair<std::size_t, bool>>> edges;  // (target, negative)

    explicit DependencyGraph(const RuleSet& rules) {
        std::map<Signature, std::size_t> index;
        auto node = [&](const Atom& a) {
            auto [it, inserted] = index.emplace(signature(a), nodes.size());
            if (inserted) {
                nodes.push_back(signature(a));
                edges.emplace_back();
            }
            return it->second;
        };
        for (const auto& r : rules) {
            std::vector<std::size_t> heads;
            for (const auto& h : r.head) heads.push_back(node(h));
            for (const auto& b : r.pos_body) {
                auto t = node(b);
                for (auto h : heads) edges[h].push_back({t, false});
            }
            for (const auto& b : r.neg_body) {
                auto t = node(b);
                for (auto h : heads) edges[h].push_back({t, true});
            }
        }
    }

    // Tarjan's algorithm. Components come out dependencies-first.
    std::vector<std::size_t> components(std::size_t& count) const {
        std::size_t n = nodes.size();
        std::vector<std::size_t> comp(n, SIZE_MAX), low(n, 0), order(n, SIZE_MAX);
        std::vector<std::size_t> stack;
        std::vector<char> on_stack(n, 0);
        std::size_t counter = 0;
        count = 0;
        std::function<void(std::size_t)> visit = [&](std::size_t v) {
            order[v] = low[v] = counter++;
            stack.push_back(v);
            on_stack[v] = 1;
            for (auto [w, neg] : edges[v]) {
                if (order[w] == SIZE_MAX) {
                    visit(w);
                    low[v] = std::min(low[v], low[w]);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], order[w]);
                }
            }
            if (low[v] == order[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = count;
                } while (w != v);
                ++count;
            }
        };
        for (std::size_t v = 0; v < n; ++v)
            if (order[v] == SIZE_MAX) visit(v);
        return comp;
    }

    bool stratified() const {
        std::size_t count = 0;
        auto comp = components(count);
        for (std::size_t v = 0; v < nodes.size(); ++v)
            for (auto [w, neg] : edges[v])
                if (neg && comp[v] == comp[w]) return false;
        return true;
    }
};

}  // namespace detail

// True iff `i` is a subset-minimal model of the reduct of `g` wrt `i`.
inline bool is_answer_set(const GroundProgram& g, const Interpretation& i) {
    for (const auto& r : g.rules) detail::require_ground(r);
    detail::IndexedProgram prog(g);
    auto bits = prog.encode(i);
    std::uint64_t counter = 0;
    Budget unlimited;
    unlimited.max_candidates = UINT64_MAX;
    detail::StableChecker checker(prog, counter, unlimited);
    return checker.is_stable(bits);
}

inline bool is_stratified(const Program& p) { return detail::DependencyGraph(program_rules(p)).stratified(); }

inline bool is_disjunctive(const Program& p) {
    return std::any_of(p.rules.begin(), p.rules.end(), [](const Rule& r) { return r.is_disjunctive(); });
}

struct SolveOptions {
    Budget budget;
    // Force a method; the fixpoint is only valid for stratified normal programs.
    std::optional<SolveMethod> method;
    GroundOptions grounding{.prune = true};
};

namespace detail {

inline InterpretationSet solve_fixpoint(const Program& p, const GroundProgram& g, SolveStats& stats, const Budget& budget) {
    DependencyGraph graph(program_rules(p));
    std::size_t count = 0;
    auto comp = graph.components(count);
    std::map<Signature, std::size_t> layer_of;
    for (std::size_t v = 0; v < graph.nodes.size(); ++v) layer_of[graph.nodes[v]] = comp[v];

    IndexedProgram prog(g);
    std::vector<std::vector<std::size_t>> layers(count);
    std::vector<std::size_t> constraints;
    const auto& rules = prog.rules();
    for (std::size_t k = 0; k < rules.size(); ++k) {
        if (rules[k].head.empty()) constraints.push_back(k);
        else layers[layer_of.at(signature(prog.atom(rules[k].head[0])))].push_back(k);
    }

    std::vector<char> bits(prog.atom_count(), 0);
    for (const auto& layer : layers) {
        bool changed = true;
        while (changed) {
            changed = false;
            budget.check_time();
            for (auto k : layer) {
                const auto& r = rules[k];
                auto h = static_cast<std::size_t>(r.head[0]);
                if (!bits[h] && all_in(r.pos, bits) && !any_in(r.neg, bits)) {
                    bits[h] = 1;
                    changed = true;
                }
            }
        }
    }
    stats.candidates = 1;
    for (auto k : constraints)
        if (all_in(rules[k].pos, bits) && !any_in(rules[k].neg, bits)) return {};
    return {prog.decode(bits)};
}

inline InterpretationSet solve_exhaustive(const GroundProgram& g, SolveStats& stats, const Budget& budget) {
    IndexedProgram prog(g);
    const auto& rules = prog.rules();
    auto forced = definite_closure(prog, [&](std::size_t k) { return rules[k].neg.empty(); });

    std::vector<char> in_head(prog.atom_count(), 0);
    for (const auto& r : rules)
        for (int h : r.head) in_head[static_cast<std::size_t>(h)] = 1;
    std::vector<std::size_t> free_atoms;
    for (std::size_t k = 0; k < prog.atom_count(); ++k)
        if (in_head[k] && !forced[k]) free_atoms.push_back(k);

    if (free_atoms.size() >= 63 || (std::uint64_t{1} << free_atoms.size()) > budget.max_candidates)
        throw ResourceExhausted(ResourceExhausted::Reason::candidates,
                                "search space of 2^" + std::to_string(free_atoms.size()) + " candidates exceeds budget");

    StableChecker checker(prog, stats.candidates, budget);
    InterpretationSet out;
    std::uint64_t end = std::uint64_t{1} << free_atoms.size();
    for (std::uint64_t mask = 0; mask < end; ++mask) {
        checker.tick();
        std::vector<char> bits = forced;
        for (std::size_t j = 0; j < free_atoms.size(); ++j)
            if (mask >> j & 1) bits[free_atoms[j]] = 1;
        if (!checker.is_model(bits)) continue;
        if (checker.is_stable(bits)) out.insert(prog.decode(bits));
    }
    return out;
}

}  // namespace detail

inline AnswerSetResult answer_sets(const Program& p, const SolveOptions& opts = {}) {
    auto start = std::chrono::steady_clock::now();
    AnswerSetResult result;
    GroundProgram g = ground(p, opts.grounding, opts.budget);

    bool fast = !is_disjunctive(p) && is_stratified(p);
    SolveMethod method = opts.method.value_or(fast ? SolveMethod::stratified_fixpoint : SolveMethod::exhaustive);
    if (method == SolveMethod::stratified_fixpoint && !fast)
        throw std::invalid_argument("fixpoint evaluation requires a stratified, non-disjunctive program");

    result.method = method;
    result.answer_sets = method == SolveMethod::stratified_fixpoint
                             ? detail::solve_fixpoint(p, g, result.stats, opts.budget)
                             : detail::solve_exhaustive(g, result.stats, opts.budget);
    result.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace asphint
