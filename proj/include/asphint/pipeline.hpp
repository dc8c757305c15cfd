#pragma once

// Three-phase evaluation of a student attempt: syntax, vocabulary, semantics.
// Processing stops at the first phase that finds a mistake.

#include <asphint/budget.hpp>
#include <asphint/grounder.hpp>
#include <asphint/hint.hpp>
#include <asphint/parser.hpp>
#include <asphint/semantic.hpp>
#include <asphint/solver.hpp>
#include <asphint/vocabulary.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace asphint {

class ExerciseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Exercise {
    std::string id;
    std::string statement;
    std::string given_source;
    std::string reference_source;
    Program given_program;
    Program reference_rules;
    std::set<Signature> question_predicates;
    InterpretationSet reference_answer_sets;  // computed once at validation

    Program reference_program() const { return combine(given_program, reference_rules); }
};

// Parses both programs and checks that their union is safe and consistent.
inline Exercise make_exercise(std::string id, std::string statement, std::string given_source,
                              std::string reference_source, std::set<Signature> question_predicates,
                              const SolveOptions& solve = {}) {
    Exercise ex{std::move(id), std::move(statement), std::move(given_source), std::move(reference_source),
                {}, {}, std::move(question_predicates), {}};
    auto given = parse_program(ex.given_source);
    if (!given) throw ExerciseError("given program: " + machine_line(given.error()));
    auto reference = parse_program(ex.reference_source);
    if (!reference) throw ExerciseError("reference rules: " + machine_line(reference.error()));
    ex.given_program = given.program();
    ex.reference_rules = reference.program();
    if (ex.reference_rules.rules.empty()) throw ExerciseError("reference rules are empty");

    auto combined = ex.reference_program();
    auto unsafe = check_safety(combined);
    if (!unsafe.empty()) throw ExerciseError("reference program is unsafe: " + to_string(unsafe.front().rule));
    try {
        ex.reference_answer_sets = answer_sets(combined, solve).answer_sets;
    } catch (const ResourceExhausted& e) {
        throw ExerciseError(std::string("reference program could not be solved: ") + e.what());
    }
    if (ex.reference_answer_sets.empty()) throw ExerciseError("reference program has no answer set");
    return ex;
}

enum class Phase { syntax = 1, vocabulary = 2, semantics = 3, passed = 4 };

inline std::string_view to_string(Phase p) {
    switch (p) {
    case Phase::syntax: return "syntax";
    case Phase::vocabulary: return "vocabulary";
    case Phase::semantics: return "semantics";
    case Phase::passed: return "passed";
    }
    return "passed";
}

struct VocabFindings {
    VocabDiff diff;
    std::vector<SafetyViolation> safety;
    VocabDiff missing;  // instructor-only

    bool empty() const noexcept { return diff.empty() && safety.empty(); }
    friend bool operator==(const VocabFindings&, const VocabFindings&) = default;
};

struct EvaluationTimeout {
    std::string reason;
    friend bool operator==(const EvaluationTimeout&, const EvaluationTimeout&) = default;
};

using Findings = std::variant<std::monostate, ParseError, VocabFindings, SemanticDiff, EvaluationTimeout>;

struct PhaseTimings {
    double syntax_ms = 0;
    double vocabulary_ms = 0;
    double semantics_ms = 0;
};

struct Diagnosis {
    Phase phase_reached = Phase::passed;
    Findings findings;
    std::vector<Hint> hints;
    PhaseTimings timings;
    int level = 0;                      // level the hints were produced at
    bool internal_error = false;        // a hint had to be redacted
    std::vector<std::string> warnings;

    bool passed() const noexcept { return phase_reached == Phase::passed; }
};

// ---------------------------------------------------------------------------
// Non-reveal guard

namespace detail {

inline std::string strip_space(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline void collect_strings(const nlohmann::json& j, std::vector<std::string>& out) {
    if (j.is_string()) out.push_back(j.get<std::string>());
    else if (j.is_structured())
        for (const auto& item : j) collect_strings(item, out);
}

inline std::string generic_hint_message(int phase) {
    switch (phase) {
    case 1: return "The program contains a syntax error.";
    case 2: return "The program uses vocabulary that is not expected in the solution.";
    default: return "The answer set differs from the expected one.";
    }
}

}  // namespace detail

// Reference rules the hint must never contain, minus those the student wrote
// themselves.
inline std::vector<std::string> protected_rule_texts(const Exercise& ex, std::string_view answer_source) {
    std::string answer = detail::strip_space(answer_source);
    RuleSet student;
    if (auto parsed = parse_program(answer_source)) student = program_rules(parsed.program());
    std::vector<std::string> out;
    for (const auto& r : program_rules(ex.reference_rules)) {
        std::string text = detail::strip_space(to_string(r));
        if (student.count(r) || answer.find(text) != std::string::npos) continue;
        out.push_back(std::move(text));
    }
    return out;
}

inline bool reveals(std::string_view text, const std::vector<std::string>& protected_texts) {
    std::string flat = detail::strip_space(text);
    return std::any_of(protected_texts.begin(), protected_texts.end(),
                       [&](const std::string& p) { return flat.find(p) != std::string::npos; });
}

// Replaces a hint that spells out a reference rule with the generic level-0
// hint of its phase and marks it redacted.
inline Hint non_reveal_guard(Hint h, const Exercise& ex, std::string_view answer_source = {}) {
    auto texts = protected_rule_texts(ex, answer_source);
    std::vector<std::string> fields{h.message, h.caret_rendering, h.reminder};
    detail::collect_strings(h.payload, fields);
    bool leak = std::any_of(fields.begin(), fields.end(), [&](const std::string& f) { return reveals(f, texts); });
    if (!leak) return h;
    Hint safe;
    safe.phase = h.phase;
    safe.level = 0;
    safe.message = detail::generic_hint_message(h.phase);
    safe.payload = {{"kind", "redacted"}};
    safe.redacted = true;
    return safe;
}

// ---------------------------------------------------------------------------

struct EvaluateOptions {
    std::chrono::milliseconds timeout{5000};
    std::uint64_t max_candidates = std::uint64_t{1} << 22;
};

inline Diagnosis evaluate_attempt(const Exercise& ex, std::string_view answer_source, int level,
                                  const EvaluateOptions& opts = {}) {
    using clock = std::chrono::steady_clock;
    auto ms_since = [](clock::time_point t) {
        return std::chrono::duration<double, std::milli>(clock::now() - t).count();
    };
    Diagnosis d;
    d.level = std::clamp(level, 0, 2);

    auto finish = [&](Diagnosis& diag) -> Diagnosis& {
        for (auto& h : diag.hints) {
            h = non_reveal_guard(std::move(h), ex, answer_source);
            diag.internal_error = diag.internal_error || h.redacted;
        }
        return diag;
    };

    // Phase 1
    auto t0 = clock::now();
    auto parsed = parse_program(answer_source);
    d.timings.syntax_ms = ms_since(t0);
    if (!parsed) {
        const auto& err = parsed.error();
        auto sh = syntax_hint(err);
        Hint h;
        h.phase = 1;
        h.level = 0;
        h.message = sh.message;
        h.caret_rendering = sh.caret_rendering;
        h.reminder = sh.reminder;
        h.payload = {{"kind", "syntax_error"},
                     {"category", std::string(to_string(err.kind))},
                     {"location", machine_line(err)}};
        d.level = 0;
        d.phase_reached = Phase::syntax;
        d.findings = err;
        d.hints.push_back(std::move(h));
        return finish(d);
    }

    // Phase 2
    auto t1 = clock::now();
    Program student = combine(ex.given_program, parsed.program());
    Program reference = ex.reference_program();
    VocabFindings vf{vocab_diff(student, reference), check_safety(parsed.program()), missing_vocab(student, reference)};
    d.timings.vocabulary_ms = ms_since(t1);
    if (!vf.empty()) {
        d.level = std::min(d.level, 1);
        d.phase_reached = Phase::vocabulary;
        if (!vf.diff.empty()) d.hints = vocab_hint(vf.diff, reference, d.level);
        for (const auto& v : vf.safety) d.hints.push_back(safety_hint(v, d.level));
        d.findings = std::move(vf);
        return finish(d);
    }

    // Phase 3
    auto t2 = clock::now();
    SolveOptions solve;
    solve.budget = Budget::with_timeout(opts.timeout);
    solve.budget.max_candidates = opts.max_candidates;
    try {
        auto student_sets = answer_sets(student, solve).answer_sets;
        auto diff = compare(student_sets, ex.reference_answer_sets);
        d.timings.semantics_ms = ms_since(t2);
        if (diff.matched) {
            if (diff.both_inconsistent) d.warnings.push_back("neither program has an answer set");
            d.phase_reached = Phase::passed;
            return d;
        }
        d.phase_reached = Phase::semantics;
        d.hints = semantic_hint(diff, d.level);
        d.findings = std::move(diff);
    } catch (const ResourceExhausted& e) {
        d.timings.semantics_ms = ms_since(t2);
        d.phase_reached = Phase::semantics;
        d.level = 0;
        d.findings = EvaluationTimeout{e.what()};
        d.hints.push_back({3, 0, "The program could not be evaluated within the time limit.",
                           {{"kind", "evaluation_timeout"}}, {}, {}, false});
    }
    return finish(d);
}

}  // namespace asphint
