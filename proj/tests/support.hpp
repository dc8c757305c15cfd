#pragma once

#include <asphint/bundle.hpp>
#include <asphint/model.hpp>
#include <asphint/parser.hpp>

#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing_support {

using namespace asphint;

inline const std::string source_dir = ASPHINT_SOURCE_DIR;

inline const char* const cities_facts =
    "road(istanbul,kocaeli). road(karabuk,bolu).\n"
    "road(kocaeli,sakarya). road(duzce,karabuk).\n"
    "blocked(duzce,zonguldak). road(bolu,zonguldak).\n"
    "road(duzce,zonguldak). road(sakarya,duzce).\n";
inline const char* const cities_symmetry = "road(X,Y) :- road(Y,X).\n";
inline const char* const cities_expected = "open_road(X,Y) :- road(X,Y), not blocked(X,Y), not blocked(Y,X).\n";

// The six student answers, in the order they are usually discussed.
inline const char* const answer_missing_dot = "open_road(X,Y) :- road(X,Y), not blocked(X,Y)\n";
inline const char* const answer_semicolon = "open_road(X,Y) :- road(X,Y), not blocked(X,Y);\n";
inline const char* const answer_obstacle = "open_road(X,Y) :- road(X,Y), not obstacle(X,Y).\n";
inline const char* const answer_arity = "open_road(X,Y) :- road(X), not blocked(X,Y).\n";
inline const char* const answer_constants = "open_road(X,Y) :- road(x,y), not blocked(X,Y).\n";
inline const char* const answer_one_pair = "open_road(X,Y) :- road(X,Y), not blocked(duzce,bolu).\n";

inline Program parse_or_throw(const std::string& src) {
    auto r = parse_program(src);
    if (!r) throw std::runtime_error("test source does not parse: " + machine_line(r.error()));
    return r.program();
}

inline Program cities_given() { return parse_or_throw(std::string(cities_facts) + cities_symmetry); }
inline Program cities_reference() { return combine(cities_given(), parse_or_throw(cities_expected)); }
inline Program cities_with(const std::string& answer) { return combine(cities_given(), parse_or_throw(answer)); }

inline Exercise cities_exercise() { return load_exercise(source_dir + "/exercises/cities.json"); }

inline std::set<std::string> texts(const Interpretation& i) {
    std::set<std::string> out;
    for (const auto& a : i.atoms) out.insert(to_string(a));
    return out;
}

inline std::set<std::set<std::string>> texts(const InterpretationSet& sets) {
    std::set<std::set<std::string>> out;
    for (const auto& i : sets) out.insert(texts(i));
    return out;
}

inline std::set<std::string> texts(const AtomSet& atoms) {
    std::set<std::string> out;
    for (const auto& a : atoms) out.insert(to_string(a));
    return out;
}

// ---------------------------------------------------------------------------
// Random programs. All generated programs are safe.

struct PredSpec {
    std::string name;
    std::size_t arity;
};

class ProgramGenerator {
public:
    explicit ProgramGenerator(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937& rng() { return rng_; }

    // Herbrand base of at most `max_base` atoms; may contain disjunction and
    // constraints, negation anywhere.
    Program any_program(std::size_t max_base) {
        setup(max_base);
        Program p;
        int n_facts = uniform(0, 2);
        for (int k = 0; k < n_facts; ++k) p.rules.push_back(Rule{{ground_atom(random_pred())}, {}, {}, {}});
        int n_rules = uniform(1, 5);
        for (int k = 0; k < n_rules; ++k) {
            double shape = std::uniform_real_distribution<double>(0, 1)(rng_);
            int heads = shape < 0.12 ? 0 : shape < 0.3 ? 2 : 1;
            p.rules.push_back(random_rule(heads, preds_, preds_, preds_));
        }
        return p;
    }

    // Stratified, non-disjunctive, constraint-free. Predicates get levels;
    // negation only points to strictly lower levels.
    Program stratified_program(std::size_t max_base) {
        setup(max_base);
        std::vector<int> level(preds_.size());
        for (auto& l : level) l = uniform(0, 2);
        Program p;
        int n_facts = uniform(1, 3);
        for (int k = 0; k < n_facts; ++k) p.rules.push_back(Rule{{ground_atom(random_pred())}, {}, {}, {}});
        int n_rules = uniform(1, 5);
        for (int k = 0; k < n_rules; ++k) {
            std::size_t h = static_cast<std::size_t>(uniform(0, static_cast<int>(preds_.size()) - 1));
            std::vector<PredSpec> same_or_lower, lower;
            for (std::size_t i = 0; i < preds_.size(); ++i) {
                if (level[i] <= level[h]) same_or_lower.push_back(preds_[i]);
                if (level[i] < level[h]) lower.push_back(preds_[i]);
            }
            p.rules.push_back(random_rule(1, {preds_[h]}, same_or_lower, lower));
        }
        return p;
    }

    const std::vector<std::string>& constants() const { return consts_; }

private:
    void setup(std::size_t max_base) {
        static const char* const names[] = {"p", "q", "r", "s", "t"};
        while (true) {
            consts_.clear();
            preds_.clear();
            int nc = uniform(1, 2);
            for (int k = 0; k < nc; ++k) consts_.push_back(std::string(1, static_cast<char>('a' + k)));
            int np = uniform(2, 4);
            std::size_t base = 0;
            for (int k = 0; k < np; ++k) {
                std::size_t arity = static_cast<std::size_t>(uniform(0, 2));
                preds_.push_back({names[k], arity});
                std::size_t n = 1;
                for (std::size_t a = 0; a < arity; ++a) n *= consts_.size();
                base += n;
            }
            if (base <= max_base) return;
        }
    }

    const PredSpec& random_pred() {
        return preds_[static_cast<std::size_t>(uniform(0, static_cast<int>(preds_.size()) - 1))];
    }

    Atom ground_atom(const PredSpec& p) {
        Atom a{p.name, {}};
        for (std::size_t k = 0; k < p.arity; ++k) a.args.push_back(Term::constant(random_const()));
        return a;
    }

    std::string random_const() { return consts_[static_cast<std::size_t>(uniform(0, static_cast<int>(consts_.size()) - 1))]; }

    Atom atom_with(const PredSpec& p, const std::vector<std::string>& vars) {
        Atom a{p.name, {}};
        for (std::size_t k = 0; k < p.arity; ++k) {
            if (!vars.empty() && chance(0.7)) a.args.push_back(Term::variable(vars[static_cast<std::size_t>(uniform(0, static_cast<int>(vars.size()) - 1))]));
            else a.args.push_back(Term::constant(random_const()));
        }
        return a;
    }

    Rule random_rule(int heads, const std::vector<PredSpec>& head_preds, const std::vector<PredSpec>& pos_preds,
                     const std::vector<PredSpec>& neg_preds) {
        static const std::vector<std::string> all_vars{"X", "Y"};
        Rule r;
        int n_pos = pos_preds.empty() ? 0 : uniform(0, 2);
        for (int k = 0; k < n_pos; ++k) {
            const auto& p = pos_preds[static_cast<std::size_t>(uniform(0, static_cast<int>(pos_preds.size()) - 1))];
            r.pos_body.insert(atom_with(p, all_vars));
        }
        auto bound_set = variables_of(r.pos_body);
        std::vector<std::string> bound(bound_set.begin(), bound_set.end());
        int n_neg = neg_preds.empty() ? 0 : uniform(0, 2);
        for (int k = 0; k < n_neg; ++k) {
            const auto& p = neg_preds[static_cast<std::size_t>(uniform(0, static_cast<int>(neg_preds.size()) - 1))];
            r.neg_body.insert(atom_with(p, bound));
        }
        for (int k = 0; k < heads; ++k) {
            const auto& p = head_preds[static_cast<std::size_t>(uniform(0, static_cast<int>(head_preds.size()) - 1))];
            r.head.insert(atom_with(p, bound));
        }
        if (r.head.empty() && r.pos_body.empty() && r.neg_body.empty()) r.neg_body.insert(ground_atom(random_pred()));
        return r;
    }

    std::mt19937 rng_;
    std::vector<std::string> consts_;
    std::vector<PredSpec> preds_;
};

}  // namespace testing_support
