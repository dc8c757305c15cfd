#include "oracle.hpp"
#include "support.hpp"

#include <asphint/solver.hpp>

#include <gtest/gtest.h>

namespace {

using namespace asphint;
using namespace testing_support;

Rule rule(const std::string& src) { return parse_or_throw(src).rules.front(); }

Interpretation interp(std::initializer_list<const char*> atoms) {
    Interpretation i;
    for (const auto* a : atoms) i.atoms.insert(parse_or_throw(std::string(a) + ".").rules.front().head.begin().operator*());
    return i;
}

GroundProgram gp(const std::string& src) { return ground(parse_or_throw(src)); }

TEST(Satisfies, Examples) {
    EXPECT_TRUE(satisfies(interp({}), rule("p :- q.")));
    EXPECT_FALSE(satisfies(interp({"q"}), rule("p :- q.")));
    // head p is in I
    EXPECT_TRUE(satisfies(interp({"p", "q"}), rule("p :- q, not s.")));
    EXPECT_TRUE(satisfies(interp({"q", "s"}), rule("p :- q, not s.")));
    EXPECT_FALSE(satisfies(interp({"q"}), rule(":- q.")));
}

TEST(Satisfies, RejectsNonGroundRule) { EXPECT_THROW(satisfies(interp({}), rule("p(X) :- q(X).")), std::invalid_argument); }

TEST(Reduct, NegationFreeIsUnchanged) {
    auto g = gp("p :- q. q. r | s :- q.");
    EXPECT_EQ(reduct(g, interp({"p"})), g);
}

TEST(Reduct, RuleWithBlockedNegationIsDeleted) { EXPECT_TRUE(reduct(gp("p :- not q."), interp({"q"})).rules.empty()); }

TEST(Reduct, EvenLoop) {
    auto g = gp("p :- not q. q :- not p.");
    auto r = reduct(g, interp({"p"}));
    EXPECT_EQ(r.rules, program_rules(parse_or_throw("p.")));
    EXPECT_EQ(r.herbrand_base, g.herbrand_base);
    EXPECT_TRUE(is_answer_set(g, interp({"p"})));
}

TEST(IsAnswerSet, FactsOnly) {
    auto g = gp("a. b(c).");
    EXPECT_TRUE(is_answer_set(g, interp({"a", "b(c)"})));
    EXPECT_FALSE(is_answer_set(g, interp({"a", "b(c)", "d"})));
    EXPECT_FALSE(is_answer_set(g, interp({"a"})));
}

TEST(IsAnswerSet, OddLoopHasNone) {
    auto g = gp("p :- not p.");
    EXPECT_FALSE(is_answer_set(g, interp({})));
    EXPECT_FALSE(is_answer_set(g, interp({"p"})));
}

TEST(IsAnswerSet, DisjunctionNeedsMinimality) {
    auto g = gp("a | b.");
    EXPECT_TRUE(is_answer_set(g, interp({"a"})));
    EXPECT_TRUE(is_answer_set(g, interp({"b"})));
    EXPECT_FALSE(is_answer_set(g, interp({"a", "b"})));
    EXPECT_FALSE(is_answer_set(g, interp({})));
}

TEST(IsAnswerSet, UnsupportedAtomIsNotMinimal) {
    auto g = gp("p :- p.");
    EXPECT_TRUE(is_answer_set(g, interp({})));
    EXPECT_FALSE(is_answer_set(g, interp({"p"})));
}

// Hand-coded closure of the cities facts, independent of the solver.
std::set<std::string> expected_cities_answer(bool respect_blocked) {
    std::vector<std::pair<std::string, std::string>> roads{{"istanbul", "kocaeli"}, {"karabuk", "bolu"},
                                                           {"kocaeli", "sakarya"},  {"duzce", "karabuk"},
                                                           {"bolu", "zonguldak"},   {"duzce", "zonguldak"},
                                                           {"sakarya", "duzce"}};
    std::set<std::pair<std::string, std::string>> blocked{{"duzce", "zonguldak"}};
    std::set<std::pair<std::string, std::string>> sym;
    for (auto [a, b] : roads) {
        sym.insert({a, b});
        sym.insert({b, a});
    }
    std::set<std::string> out;
    for (auto [a, b] : sym) out.insert("road(" + a + "," + b + ")");
    for (auto [a, b] : blocked) out.insert("blocked(" + a + "," + b + ")");
    for (auto [a, b] : sym) {
        bool open = !respect_blocked || (!blocked.count({a, b}) && !blocked.count({b, a}));
        if (open) out.insert("open_road(" + a + "," + b + ")");
    }
    return out;
}

TEST(AnswerSets, CitiesReference) {
    auto result = answer_sets(cities_reference());
    EXPECT_EQ(result.method, SolveMethod::stratified_fixpoint);
    ASSERT_EQ(result.answer_sets.size(), 1u);
    auto atoms = texts(*result.answer_sets.begin());
    EXPECT_EQ(atoms, expected_cities_answer(true));
    EXPECT_EQ(atoms.size(), 27u);
    EXPECT_FALSE(atoms.count("open_road(duzce,zonguldak)"));
    EXPECT_TRUE(atoms.count("open_road(zonguldak,bolu)"));
}

TEST(AnswerSets, CitiesOneBlockedPairAnswer) {
    auto ref = answer_sets(cities_reference()).answer_sets;
    auto stu = answer_sets(cities_with(answer_one_pair)).answer_sets;
    ASSERT_EQ(ref.size(), 1u);
    ASSERT_EQ(stu.size(), 1u);
    EXPECT_EQ(texts(*stu.begin()), expected_cities_answer(false));
    std::set<std::string> extra;
    for (const auto& a : texts(*stu.begin()))
        if (!texts(*ref.begin()).count(a)) extra.insert(a);
    EXPECT_EQ(extra, (std::set<std::string>{"open_road(duzce,zonguldak)", "open_road(zonguldak,duzce)"}));
}

TEST(AnswerSets, CitiesExhaustiveAgrees) {
    SolveOptions opts;
    opts.method = SolveMethod::exhaustive;
    auto result = answer_sets(cities_reference(), opts);
    EXPECT_EQ(result.method, SolveMethod::exhaustive);
    EXPECT_EQ(result.answer_sets, answer_sets(cities_reference()).answer_sets);
}

TEST(AnswerSets, EvenLoopHasTwo) {
    auto result = answer_sets(parse_or_throw("p :- not q. q :- not p."));
    EXPECT_EQ(result.method, SolveMethod::exhaustive);
    EXPECT_EQ(texts(result.answer_sets), (std::set<std::set<std::string>>{{"p"}, {"q"}}));
    EXPECT_EQ(result.stats.candidates >= 4, true);
}

TEST(AnswerSets, OddLoopHasNone) { EXPECT_TRUE(answer_sets(parse_or_throw("p :- not p.")).answer_sets.empty()); }

TEST(AnswerSets, ConstraintKillsStratifiedModel) {
    auto result = answer_sets(parse_or_throw("a. b :- a. :- b."));
    EXPECT_EQ(result.method, SolveMethod::stratified_fixpoint);
    EXPECT_TRUE(result.answer_sets.empty());
}

TEST(AnswerSets, Disjunctive) {
    auto result = answer_sets(parse_or_throw("a | b. c :- a. c :- b."));
    EXPECT_EQ(texts(result.answer_sets), (std::set<std::set<std::string>>{{"a", "c"}, {"b", "c"}}));
}

TEST(AnswerSets, UnsafeThrows) { EXPECT_THROW(answer_sets(parse_or_throw("p(X) :- not q(X). q(a).")), UnsafeProgramError); }

TEST(AnswerSets, FixpointRejectedForUnstratified) {
    SolveOptions opts;
    opts.method = SolveMethod::stratified_fixpoint;
    EXPECT_THROW(answer_sets(parse_or_throw("p :- not q. q :- not p."), opts), std::invalid_argument);
}

TEST(AnswerSets, CandidateBudgetIsAResourceError) {
    // 24 independent choices: 2^24 candidates
    std::string src;
    for (int k = 0; k < 24; ++k) src += "a" + std::to_string(k) + " :- not b" + std::to_string(k) + ". b" +
                                        std::to_string(k) + " :- not a" + std::to_string(k) + ".\n";
    try {
        answer_sets(parse_or_throw(src));
        FAIL();
    } catch (const ResourceExhausted& e) {
        EXPECT_EQ(e.reason(), ResourceExhausted::Reason::candidates);
    }
}

TEST(AnswerSets, TimeBudgetIsAResourceError) {
    // 10 choices: 2^20 candidates fit the budget but not the deadline
    std::string src;
    for (int k = 0; k < 10; ++k) src += "a" + std::to_string(k) + " :- not b" + std::to_string(k) + ". b" +
                                        std::to_string(k) + " :- not a" + std::to_string(k) + ".\n";
    SolveOptions opts;
    opts.budget = Budget::with_timeout(std::chrono::milliseconds(1));
    try {
        answer_sets(parse_or_throw(src), opts);
        FAIL();
    } catch (const ResourceExhausted& e) {
        EXPECT_EQ(e.reason(), ResourceExhausted::Reason::time);
    }
}

TEST(AnswerSets, ForcedAtomsShrinkTheSearch) {
    // The definite part fixes the 15 road/blocked atoms, leaving 14 open_road
    // atoms to search. Each of the 7 roads is opened in exactly one direction.
    auto p = cities_with("open_road(X,Y) :- road(X,Y), not open_road(Y,X).");
    auto result = answer_sets(p);
    EXPECT_EQ(result.method, SolveMethod::exhaustive);
    EXPECT_EQ(result.answer_sets.size(), std::size_t{1} << 7);
    EXPECT_LE(result.stats.candidates, std::uint64_t{1} << 15);
}

TEST(IsStratified, DependencyGraph) {
    EXPECT_TRUE(is_stratified(cities_reference()));
    EXPECT_TRUE(is_stratified(parse_or_throw("a :- not b. b :- c. c :- b.")));
    EXPECT_FALSE(is_stratified(parse_or_throw("a :- not b. b :- a.")));
    EXPECT_FALSE(is_stratified(parse_or_throw("p(X) :- q(X), not p(X). q(a).")));
}

// --- properties against the brute-force oracle ------------------------------

TEST(SolverProperty, MatchesBruteForceOnSmallPrograms) {
    ProgramGenerator gen(2024);
    for (int k = 0; k < 300; ++k) {
        Program p = gen.any_program(10);
        auto got = answer_sets(p);
        EXPECT_EQ(texts(got.answer_sets), oracle::stable_models(p)) << to_string(p);
    }
}

TEST(SolverProperty, SoundModelsAndAntichain) {
    ProgramGenerator gen(77);
    for (int k = 0; k < 200; ++k) {
        Program p = gen.any_program(12);
        auto sets = answer_sets(p).answer_sets;
        auto g = ground(p);
        for (const auto& i : sets) {
            EXPECT_TRUE(is_answer_set(g, i)) << to_string(p);
            EXPECT_TRUE(is_model(i, g)) << to_string(p);
            for (const auto& j : sets) {
                if (i == j) continue;
                EXPECT_FALSE(std::includes(j.atoms.begin(), j.atoms.end(), i.atoms.begin(), i.atoms.end()))
                    << to_string(p);
            }
        }
    }
}

TEST(SolverProperty, StratifiedFixpointAgreesWithSearch) {
    ProgramGenerator gen(99);
    for (int k = 0; k < 200; ++k) {
        Program p = gen.stratified_program(12);
        ASSERT_TRUE(is_stratified(p)) << to_string(p);
        SolveOptions fix, search;
        fix.method = SolveMethod::stratified_fixpoint;
        search.method = SolveMethod::exhaustive;
        auto a = answer_sets(p, fix).answer_sets;
        auto b = answer_sets(p, search).answer_sets;
        EXPECT_EQ(a.size(), 1u) << to_string(p);
        EXPECT_EQ(a, b) << to_string(p);
    }
}

TEST(SolverProperty, RuleOrderAndDuplicationDoNotMatter) {
    ProgramGenerator gen(5);
    for (int k = 0; k < 100; ++k) {
        Program p = gen.any_program(12);
        Program q = p;
        std::shuffle(q.rules.begin(), q.rules.end(), gen.rng());
        q.rules.push_back(q.rules.front());
        EXPECT_EQ(answer_sets(p).answer_sets, answer_sets(q).answer_sets);
    }
}

}  // namespace
