#include "support.hpp"

#include <asphint/semantic.hpp>
#include <asphint/solver.hpp>

#include <gtest/gtest.h>

namespace {

using namespace asphint;
using namespace testing_support;

Interpretation interp(const std::string& facts) {
    Interpretation i;
    for (const auto& r : parse_or_throw(facts).rules) i.atoms.insert(r.head.begin(), r.head.end());
    return i;
}

SemanticDiff one_pair_diff() {
    return compare(answer_sets(cities_with(answer_one_pair)).answer_sets, answer_sets(cities_reference()).answer_sets);
}

const std::set<std::string> one_pair_extra{"open_road(duzce,zonguldak)", "open_road(zonguldak,duzce)"};

TEST(Compare, OneBlockedPairAnswer) {
    auto d = one_pair_diff();
    EXPECT_FALSE(d.matched);
    EXPECT_EQ(texts(d.extra), one_pair_extra);
    EXPECT_TRUE(d.missing.empty());
    EXPECT_FALSE(d.multiplicity_note);
}

TEST(Compare, IdenticalSetsMatch) {
    auto as = answer_sets(cities_reference()).answer_sets;
    auto d = compare(as, as);
    EXPECT_TRUE(d.matched);
    EXPECT_TRUE(d.extra.empty());
    EXPECT_TRUE(d.missing.empty());
}

TEST(Compare, InconsistentStudentProgram) {
    auto student = answer_sets(combine(cities_reference(), parse_or_throw("p :- not p."))).answer_sets;
    ASSERT_TRUE(student.empty());
    auto reference = answer_sets(cities_reference()).answer_sets;
    auto d = compare(student, reference);
    EXPECT_FALSE(d.matched);
    EXPECT_TRUE(d.multiplicity_note);
    EXPECT_TRUE(d.extra.empty());
    EXPECT_EQ(d.missing, reference.begin()->atoms);
}

TEST(Compare, BothInconsistentMatchesWithFlag) {
    auto d = compare({}, {});
    EXPECT_TRUE(d.matched);
    EXPECT_TRUE(d.both_inconsistent);
}

TEST(Compare, SeveralAnswerSetsPairedGreedily) {
    InterpretationSet student{interp("a. c."), interp("b.")};
    InterpretationSet reference{interp("a."), interp("b.")};
    auto d = compare(student, reference);
    EXPECT_FALSE(d.matched);
    EXPECT_FALSE(d.multiplicity_note);
    EXPECT_EQ(texts(d.extra), (std::set<std::string>{"c"}));
    EXPECT_TRUE(d.missing.empty());
}

TEST(Compare, ExtraAnswerSetIsReportedAgainstEmpty) {
    InterpretationSet student{interp("a."), interp("b. c.")};
    InterpretationSet reference{interp("a.")};
    auto d = compare(student, reference);
    EXPECT_TRUE(d.multiplicity_note);
    EXPECT_EQ(texts(d.extra), (std::set<std::string>{"b", "c"}));
}

TEST(SemanticHint, LevelZero) {
    auto hints = semantic_hint(one_pair_diff(), 0);
    ASSERT_EQ(hints.size(), 1u);
    EXPECT_EQ(hints[0].message, "The answer set contains more true atoms than it should.");
}

TEST(SemanticHint, LevelOne) {
    auto hints = semantic_hint(one_pair_diff(), 1);
    ASSERT_EQ(hints.size(), 1u);
    EXPECT_EQ(hints[0].message, "The answer set contains more true atoms of predicate open_road than it should.");
}

TEST(SemanticHint, LevelTwo) {
    auto hints = semantic_hint(one_pair_diff(), 2);
    ASSERT_EQ(hints.size(), 1u);
    EXPECT_EQ(hints[0].message,
              "The answer set contains true atoms which should be false: open_road(duzce,zonguldak) and "
              "open_road(zonguldak,duzce).");
}

TEST(SemanticHint, MissingAtoms) {
    SemanticDiff d;
    d.missing = interp("q(a). q(b).").atoms;
    EXPECT_EQ(semantic_hint(d, 0)[0].message, "The answer set contains fewer true atoms than it should.");
    EXPECT_EQ(semantic_hint(d, 1)[0].message, "The answer set contains fewer true atoms of predicate q than it should.");
    EXPECT_EQ(semantic_hint(d, 2)[0].message, "The answer set contains false atoms which should be true: q(a) and q(b).");
}

TEST(SemanticHint, BothDirections) {
    SemanticDiff d;
    d.extra = interp("p.").atoms;
    d.missing = interp("q.").atoms;
    auto hints = semantic_hint(d, 0);
    ASSERT_EQ(hints.size(), 2u);
    EXPECT_NE(hints[0].message.find("more true atoms"), std::string::npos);
    EXPECT_NE(hints[1].message.find("fewer true atoms"), std::string::npos);
}

TEST(SemanticHint, MatchedIsAnError) {
    SemanticDiff d;
    d.matched = true;
    EXPECT_THROW(semantic_hint(d, 0), std::invalid_argument);
}

// --- properties ------------------------------------------------------------

InterpretationSet random_sets(ProgramGenerator& gen) {
    static const char* const names[] = {"p", "q(a)", "q(b)", "r", "s(a,b)"};
    InterpretationSet out;
    int n = gen.uniform(0, 3);
    for (int k = 0; k < n; ++k) {
        std::string facts;
        for (const char* name : names)
            if (gen.chance(0.5)) facts += std::string(name) + ".";
        out.insert(interp(facts));
    }
    return out;
}

TEST(SemanticProperty, SwappingArgumentsSwapsDirections) {
    ProgramGenerator gen(41);
    for (int k = 0; k < 500; ++k) {
        auto a = random_sets(gen);
        auto b = random_sets(gen);
        auto ab = compare(a, b);
        auto ba = compare(b, a);
        EXPECT_EQ(ab.matched, ba.matched);
        EXPECT_EQ(ab.extra, ba.missing);
        EXPECT_EQ(ab.missing, ba.extra);
        EXPECT_EQ(ab.multiplicity_note, ba.multiplicity_note);
    }
}

TEST(SemanticProperty, MatchedIffEqual) {
    ProgramGenerator gen(42);
    for (int k = 0; k < 500; ++k) {
        auto a = random_sets(gen);
        auto b = random_sets(gen);
        EXPECT_TRUE(compare(a, a).matched);
        EXPECT_EQ(compare(a, b).matched, a == b);
        auto d = compare(a, b);
        if (!d.matched) {
            EXPECT_TRUE(!d.extra.empty() || !d.missing.empty() || d.multiplicity_note);
        }
    }
}

TEST(SemanticProperty, InformationGrowsWithLevel) {
    ProgramGenerator gen(43);
    int checked = 0;
    for (int k = 0; k < 500; ++k) {
        auto d = compare(random_sets(gen), random_sets(gen));
        if (d.matched) continue;
        ++checked;
        AtomSet diff = d.extra;
        diff.insert(d.missing.begin(), d.missing.end());
        std::set<std::string> preds;
        for (const auto& a : diff) preds.insert(a.predicate);
        auto text = [&](int level) {
            std::string out;
            for (const auto& h : semantic_hint(d, level)) out += h.message + "\n";
            return out;
        };
        auto contains_word = [](const std::string& hay, const std::string& word) {
            for (auto pos = hay.find(word); pos != std::string::npos; pos = hay.find(word, pos + 1)) {
                bool left = pos == 0 || !std::isalnum(static_cast<unsigned char>(hay[pos - 1]));
                auto end = pos + word.size();
                bool right = end == hay.size() || !std::isalnum(static_cast<unsigned char>(hay[end]));
                if (left && right) return true;
            }
            return false;
        };
        auto l0 = text(0), l1 = text(1), l2 = text(2);
        for (const auto& p : preds) {
            EXPECT_FALSE(contains_word(l0, p)) << l0;
            EXPECT_TRUE(contains_word(l1, p)) << l1;
        }
        for (const auto& a : diff) {
            auto atom = to_string(a);
            if (!a.args.empty()) {
                EXPECT_EQ(l1.find(atom), std::string::npos) << l1;
            }
            EXPECT_NE(l2.find(atom), std::string::npos) << l2;
        }
    }
    EXPECT_GT(checked, 100);
}

}  // namespace
