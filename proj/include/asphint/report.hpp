#pragma once

// Diagnosis reports: JSON (full or student-facing) and the plain-text hint block.

#include <asphint/pipeline.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace asphint {

using nlohmann::json;

// Student view leaves out data derived from the reference solution that the
// hints have not disclosed.
enum class Audience { full, student };

namespace detail {

inline json atoms_json(const AtomSet& atoms) {
    json out = json::array();
    for (const auto& a : atoms) out.push_back(to_string(a));
    return out;
}

inline Atom parse_atom(const std::string& text) {
    auto parsed = parse_program(text + ".");
    if (!parsed || parsed.program().rules.size() != 1) throw std::invalid_argument("not an atom: " + text);
    const auto& r = parsed.program().rules.front();
    if (r.head.size() != 1 || !r.is_fact()) throw std::invalid_argument("not an atom: " + text);
    return *r.head.begin();
}

inline AtomSet atoms_from(const json& j) {
    AtomSet out;
    for (const auto& s : j) out.insert(parse_atom(s.get<std::string>()));
    return out;
}

inline json vocab_json(const VocabDiff& d) {
    json arities = json::array();
    for (const auto& s : d.wrong_arities) arities.push_back({{"predicate", s.predicate}, {"arity", s.arity}});
    return {{"wrong_preds", d.wrong_preds}, {"wrong_arities", arities}, {"wrong_constants", d.wrong_constants}};
}

inline VocabDiff vocab_from(const json& j) {
    VocabDiff d;
    d.wrong_preds = j.at("wrong_preds").get<std::set<std::string>>();
    for (const auto& a : j.at("wrong_arities"))
        d.wrong_arities.insert({a.at("predicate").get<std::string>(), a.at("arity").get<std::size_t>()});
    d.wrong_constants = j.at("wrong_constants").get<std::set<std::string>>();
    return d;
}

inline Rule parse_rule(const std::string& text) {
    auto parsed = parse_program(text);
    if (!parsed || parsed.program().rules.size() != 1) throw std::invalid_argument("not a rule: " + text);
    return parsed.program().rules.front();
}

struct FindingsWriter {
    Audience audience;
    int level;

    json operator()(const std::monostate&) const { return nullptr; }

    json operator()(const ParseError& e) const {
        return {{"kind", "syntax_error"},
                {"category", std::string(to_string(e.kind))},
                {"line", e.line},
                {"col_start", e.col_start},
                {"col_end", e.col_end},
                {"expected", e.expected},
                {"found", e.found},
                {"source_line", e.source_line_text},
                {"location", machine_line(e)}};
    }

    json operator()(const VocabFindings& v) const {
        json out = vocab_json(v.diff);
        out["kind"] = "vocabulary";
        json unsafe = json::array();
        for (const auto& s : v.safety) {
            json item = {{"rule", to_string(s.rule)}, {"variables", s.unsafe_variables}};
            item["line"] = s.rule.span.start_line;
            item["col"] = s.rule.span.start_col;
            unsafe.push_back(std::move(item));
        }
        out["unsafe"] = std::move(unsafe);
        if (audience == Audience::full) out["missing"] = vocab_json(v.missing);
        return out;
    }

    json operator()(const SemanticDiff& d) const {
        json out = {{"kind", "semantic"},
                    {"matched", d.matched},
                    {"multiplicity_note", d.multiplicity_note},
                    {"student_count", d.student_count},
                    {"extra_count", d.extra.size()},
                    {"missing_count", d.missing.size()}};
        if (audience == Audience::full || level >= 2) {
            out["extra"] = atoms_json(d.extra);
            out["missing"] = atoms_json(d.missing);
        }
        if (audience == Audience::full) {
            out["reference_count"] = d.reference_count;
            out["both_inconsistent"] = d.both_inconsistent;
            out["student_set"] = atoms_json(d.student_set.atoms);
            out["reference_set"] = atoms_json(d.reference_set.atoms);
        }
        return out;
    }

    json operator()(const EvaluationTimeout& t) const { return {{"kind", "evaluation_timeout"}, {"reason", t.reason}}; }
};

}  // namespace detail

inline json to_json(const Hint& h) {
    json out = {{"phase", h.phase}, {"level", h.level}, {"message", h.message}, {"payload", h.payload}};
    if (!h.caret_rendering.empty()) out["caret_rendering"] = h.caret_rendering;
    if (!h.reminder.empty()) out["reminder"] = h.reminder;
    if (h.redacted) out["redacted"] = true;
    return out;
}

inline Hint hint_from_json(const json& j) {
    Hint h;
    h.phase = j.at("phase").get<int>();
    h.level = j.at("level").get<int>();
    h.message = j.at("message").get<std::string>();
    h.payload = j.value("payload", json::object());
    h.caret_rendering = j.value("caret_rendering", "");
    h.reminder = j.value("reminder", "");
    h.redacted = j.value("redacted", false);
    return h;
}

inline json to_json(const Diagnosis& d, Audience audience = Audience::full) {
    json out;
    out["phase_reached"] = d.passed() ? json("passed") : json(static_cast<int>(d.phase_reached));
    out["level"] = d.level;
    out["findings"] = std::visit(detail::FindingsWriter{audience, d.level}, d.findings);
    json hints = json::array();
    for (const auto& h : d.hints) hints.push_back(to_json(h));
    out["hints"] = std::move(hints);
    out["timings_ms"] = {{"syntax", d.timings.syntax_ms},
                         {"vocabulary", d.timings.vocabulary_ms},
                         {"semantics", d.timings.semantics_ms}};
    out["internal_error"] = d.internal_error;
    out["warnings"] = d.warnings;
    return out;
}

// Inverse of to_json(d, Audience::full).
inline Diagnosis diagnosis_from_json(const json& j) {
    Diagnosis d;
    const auto& phase = j.at("phase_reached");
    if (phase.is_string()) {
        if (phase.get<std::string>() != "passed") throw std::invalid_argument("bad phase_reached");
        d.phase_reached = Phase::passed;
    } else {
        int p = phase.get<int>();
        if (p < 1 || p > 3) throw std::invalid_argument("bad phase_reached");
        d.phase_reached = static_cast<Phase>(p);
    }
    d.level = j.at("level").get<int>();
    for (const auto& h : j.at("hints")) d.hints.push_back(hint_from_json(h));
    const auto& t = j.at("timings_ms");
    d.timings = {t.at("syntax").get<double>(), t.at("vocabulary").get<double>(), t.at("semantics").get<double>()};
    d.internal_error = j.value("internal_error", false);
    d.warnings = j.value("warnings", std::vector<std::string>{});

    const auto& f = j.at("findings");
    if (f.is_null()) return d;
    auto kind = f.at("kind").get<std::string>();
    if (kind == "syntax_error") {
        ParseError e;
        auto cat = syntax_error_kind_from_string(f.at("category").get<std::string>());
        if (!cat) throw std::invalid_argument("bad syntax error category");
        e.kind = *cat;
        e.line = f.at("line").get<std::size_t>();
        e.col_start = f.at("col_start").get<std::size_t>();
        e.col_end = f.at("col_end").get<std::size_t>();
        e.expected = f.at("expected").get<std::set<std::string>>();
        e.found = f.at("found").get<std::string>();
        e.source_line_text = f.at("source_line").get<std::string>();
        d.findings = std::move(e);
    } else if (kind == "vocabulary") {
        VocabFindings v;
        v.diff = detail::vocab_from(f);
        for (const auto& u : f.at("unsafe")) {
            SafetyViolation s{detail::parse_rule(u.at("rule").get<std::string>()),
                              u.at("variables").get<std::set<std::string>>()};
            s.rule.span.start_line = s.rule.span.end_line = u.at("line").get<std::size_t>();
            s.rule.span.start_col = u.at("col").get<std::size_t>();
            s.rule.span.end_col = 0;
            v.safety.push_back(std::move(s));
        }
        if (f.contains("missing")) v.missing = detail::vocab_from(f.at("missing"));
        d.findings = std::move(v);
    } else if (kind == "semantic") {
        SemanticDiff s;
        s.matched = f.at("matched").get<bool>();
        s.multiplicity_note = f.at("multiplicity_note").get<bool>();
        s.student_count = f.at("student_count").get<std::size_t>();
        s.reference_count = f.value("reference_count", std::size_t{0});
        s.both_inconsistent = f.value("both_inconsistent", false);
        if (f.contains("extra")) s.extra = detail::atoms_from(f.at("extra"));
        if (f.contains("missing")) s.missing = detail::atoms_from(f.at("missing"));
        if (f.contains("student_set")) s.student_set.atoms = detail::atoms_from(f.at("student_set"));
        if (f.contains("reference_set")) s.reference_set.atoms = detail::atoms_from(f.at("reference_set"));
        d.findings = std::move(s);
    } else if (kind == "evaluation_timeout") {
        d.findings = EvaluationTimeout{f.at("reason").get<std::string>()};
    } else {
        throw std::invalid_argument("unknown findings kind: " + kind);
    }
    return d;
}

// The hint block as typeset for students: `Hint:` followed by the message.
// Syntax hints put the caret rendering between the two and end with the
// rule-shape reminder.
inline std::string render_text(const Diagnosis& d) {
    if (d.passed()) return "Correct.\n";
    std::string out;
    for (const auto& h : d.hints) {
        if (!h.caret_rendering.empty()) {
            out += "Hint:\n" + h.caret_rendering + "\n" + h.message + "\n";
            if (!h.reminder.empty()) out += h.reminder + "\n";
        } else {
            out += "Hint: " + h.message + "\n";
        }
    }
    return out;
}

}  // namespace asphint
