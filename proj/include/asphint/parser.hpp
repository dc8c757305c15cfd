#pragma once

// Tokenizer and recursive-descent parser for the supported ASP subset:
//
//   program   := statement*
//   statement := head? (":-" body)? "."
//   head      := atom ("|" atom)*
//   body      := literal ("," literal)*
//   literal   := ["not"] atom
//   atom      := identifier ["(" term ("," term)* ")"]
//   term      := identifier | variable | integer
//
// `%` starts a comment running to the end of the line. Parsing stops at the
// first error; positions are 1-based character columns.

#include <asphint/model.hpp>

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace asphint {

enum class TokenKind { identifier, variable, integer, lparen, rparen, comma, dot, if_, bar, semicolon, not_, end };

inline std::string_view token_class_name(TokenKind k) {
    switch (k) {
    case TokenKind::identifier: return "<IDENTIFIER>";
    case TokenKind::variable: return "<VARIABLE>";
    case TokenKind::integer: return "<NUMBER>";
    case TokenKind::lparen: return "(";
    case TokenKind::rparen: return ")";
    case TokenKind::comma: return ",";
    case TokenKind::dot: return ".";
    case TokenKind::if_: return ":-";
    case TokenKind::bar: return "|";
    case TokenKind::semicolon: return ";";
    case TokenKind::not_: return "not";
    case TokenKind::end: return "<EOF>";
    }
    return "?";
}

struct Token {
    TokenKind kind = TokenKind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t col = 1;      // first character
    std::size_t end_col = 1;  // last character, inclusive

    friend bool operator==(const Token&, const Token&) = default;
};

enum class SyntaxErrorKind {
    lexical,           // character outside the alphabet
    missing_dot,       // input ended where a rule terminator was expected
    unexpected_token,  // anything else the grammar does not allow here
    unbalanced_parens,
    function_term,
    empty_rule,        // statement with neither head nor body
};

inline std::string_view to_string(SyntaxErrorKind k) {
    switch (k) {
    case SyntaxErrorKind::lexical: return "lexical";
    case SyntaxErrorKind::missing_dot: return "missing_dot";
    case SyntaxErrorKind::unexpected_token: return "unexpected_token";
    case SyntaxErrorKind::unbalanced_parens: return "unbalanced_parens";
    case SyntaxErrorKind::function_term: return "function_term";
    case SyntaxErrorKind::empty_rule: return "empty_rule";
    }
    return "unexpected_token";
}

inline std::optional<SyntaxErrorKind> syntax_error_kind_from_string(std::string_view s) {
    for (auto k : {SyntaxErrorKind::lexical, SyntaxErrorKind::missing_dot, SyntaxErrorKind::unexpected_token,
                   SyntaxErrorKind::unbalanced_parens, SyntaxErrorKind::function_term, SyntaxErrorKind::empty_rule})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

struct ParseError {
    SyntaxErrorKind kind = SyntaxErrorKind::unexpected_token;
    std::size_t line = 1;
    std::size_t col_start = 1;
    std::size_t col_end = 1;  // inclusive
    std::set<std::string> expected;
    std::string found;        // token class name, or the offending character for lexical errors
    std::string source_line_text;

    friend bool operator==(const ParseError&, const ParseError&) = default;
};

// Grounder-style location line: `-:L:C1-C2: syntax error, unexpected TOK`.
// C2 is exclusive, so a single character at column 8 prints as 8-9.
inline std::string machine_line(const ParseError& e) {
    return "-:" + std::to_string(e.line) + ":" + std::to_string(e.col_start) + "-" + std::to_string(e.col_end + 1) +
           ": syntax error, unexpected " + e.found;
}

class ParseResult {
public:
    ParseResult(Program p) : value_(std::move(p)) {}
    ParseResult(ParseError e) : value_(std::move(e)) {}

    bool ok() const noexcept { return std::holds_alternative<Program>(value_); }
    explicit operator bool() const noexcept { return ok(); }

    const Program& program() const {
        if (!ok()) throw std::logic_error("ParseResult holds an error: " + machine_line(error()));
        return std::get<Program>(value_);
    }
    const ParseError& error() const { return std::get<ParseError>(value_); }

private:
    std::variant<Program, ParseError> value_;
};

namespace detail {

// Splits source into lines without their terminators; "\r\n" counts as one break.
inline std::vector<std::string_view> split_lines(std::string_view src) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i] == '\n') {
            std::size_t end = (i > start && src[i - 1] == '\r') ? i - 1 : i;
            lines.push_back(src.substr(start, end - start));
            start = i + 1;
        }
    }
    lines.push_back(src.substr(start));
    return lines;
}

inline std::string line_text(std::string_view src, std::size_t line) {
    auto lines = split_lines(src);
    if (line == 0 || line > lines.size()) return {};
    return std::string(lines[line - 1]);
}

inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_word(char c) { return is_lower(c) || is_upper(c) || is_digit(c) || c == '_'; }

struct LexOutput {
    std::vector<Token> tokens;  // always ends with an end token
    std::optional<ParseError> error;
};

inline LexOutput lex(std::string_view src) {
    LexOutput out;
    std::size_t line = 1;
    std::size_t col = 1;
    std::size_t i = 0;
    std::size_t last_line = 1;
    std::size_t last_end = 0;

    auto push = [&](TokenKind kind, std::size_t len) {
        Token t{kind, std::string(src.substr(i, len)), line, col, col + len - 1};
        last_line = line;
        last_end = t.end_col;
        out.tokens.push_back(std::move(t));
        i += len;
        col += len;
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            ++i;
            ++col;
            continue;
        }
        if (c == '%') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        if (is_lower(c) || is_upper(c) || is_digit(c)) {
            std::size_t j = i;
            while (j < src.size() && is_word(src[j])) ++j;
            std::string_view word = src.substr(i, j - i);
            TokenKind kind = is_upper(c) ? TokenKind::variable : is_digit(c) ? TokenKind::integer : TokenKind::identifier;
            if (kind == TokenKind::integer) {
                // digits followed by letters, e.g. `3a`, are not a number
                std::size_t k = i;
                while (k < j && is_digit(src[k])) ++k;
                if (k != j) j = k;
            }
            if (kind == TokenKind::identifier && word == "not") kind = TokenKind::not_;
            push(kind, j - i);
            continue;
        }
        switch (c) {
        case '(': push(TokenKind::lparen, 1); continue;
        case ')': push(TokenKind::rparen, 1); continue;
        case ',': push(TokenKind::comma, 1); continue;
        case '.': push(TokenKind::dot, 1); continue;
        case '|': push(TokenKind::bar, 1); continue;
        case ';': push(TokenKind::semicolon, 1); continue;
        case ':':
            if (i + 1 < src.size() && src[i + 1] == '-') {
                push(TokenKind::if_, 2);
                continue;
            }
            break;
        default: break;
        }
        // Outside the alphabet. Report the whole UTF-8 code point.
        std::size_t len = 1;
        auto uc = static_cast<unsigned char>(c);
        if (uc >= 0xF0) len = 4;
        else if (uc >= 0xE0) len = 3;
        else if (uc >= 0xC0) len = 2;
        len = std::min(len, src.size() - i);
        ParseError e;
        e.kind = SyntaxErrorKind::lexical;
        e.line = line;
        e.col_start = col;
        e.col_end = col;
        e.found = std::string(src.substr(i, len));
        e.source_line_text = line_text(src, line);
        out.error = std::move(e);
        // the end token marks where lexing stopped
        out.tokens.push_back(Token{TokenKind::end, "", line, col, col});
        return out;
    }
    // End of input sits right after the last token.
    std::size_t end_col = last_end + 1;
    out.tokens.push_back(Token{TokenKind::end, "", last_line, end_col, end_col});
    return out;
}

// Counts characters (code points) so columns are character-based for UTF-8 input.
inline LexOutput lex_utf8(std::string_view src) {
    LexOutput out = lex(src);
    bool ascii = true;
    for (char c : src)
        if (static_cast<unsigned char>(c) >= 0x80) {
            ascii = false;
            break;
        }
    if (ascii) return out;
    auto lines = split_lines(src);
    auto to_char_col = [&](std::size_t line, std::size_t byte_col) {
        if (line == 0 || line > lines.size()) return byte_col;
        auto text = lines[line - 1];
        std::size_t chars = 0;
        for (std::size_t b = 0; b + 1 < byte_col && b < text.size(); ++b)
            if ((static_cast<unsigned char>(text[b]) & 0xC0) != 0x80) ++chars;
        if (byte_col - 1 > text.size()) chars += byte_col - 1 - text.size();
        return chars + 1;
    };
    for (auto& t : out.tokens) {
        std::size_t width = t.text.empty() ? 1 : t.end_col - t.col + 1;
        std::size_t c = to_char_col(t.line, t.col);
        t.end_col = c + width - 1;
        t.col = c;
    }
    if (out.error) {
        out.error->col_start = to_char_col(out.error->line, out.error->col_start);
        out.error->col_end = out.error->col_start;
    }
    return out;
}

class Parser {
public:
    Parser(std::string_view src, LexOutput lexed) : src_(src), lexed_(std::move(lexed)) {}

    ParseResult run() {
        Program program;
        try {
            while (peek().kind != TokenKind::end) program.rules.push_back(statement());
            if (lexed_.error) return *lexed_.error;
        } catch (const ParseError& e) {
            return e;
        }
        return program;
    }

private:
    const Token& peek() const { return lexed_.tokens[pos_]; }
    const Token& advance() { return lexed_.tokens[pos_++]; }

    [[noreturn]] void fail(const Token& at, SyntaxErrorKind kind, std::set<std::string> expected) const {
        if (at.kind == TokenKind::end && lexed_.error) throw *lexed_.error;
        ParseError e;
        e.kind = kind;
        e.line = at.line;
        e.col_start = at.col;
        e.col_end = at.end_col;
        e.expected = std::move(expected);
        e.found = std::string(token_class_name(at.kind));
        e.source_line_text = line_text(src_, at.line);
        throw e;
    }

    [[noreturn]] void unexpected(std::set<std::string> expected) const {
        const Token& t = peek();
        SyntaxErrorKind kind = SyntaxErrorKind::unexpected_token;
        if (t.kind == TokenKind::end && expected.count(".")) kind = SyntaxErrorKind::missing_dot;
        else if (t.kind == TokenKind::rparen) kind = SyntaxErrorKind::unbalanced_parens;
        fail(t, kind, std::move(expected));
    }

    Rule statement() {
        Rule rule;
        const Token& first = peek();
        rule.span.start_line = first.line;
        rule.span.start_col = first.col;

        if (first.kind == TokenKind::dot) fail(first, SyntaxErrorKind::empty_rule, {"<IDENTIFIER>", ":-"});
        if (first.kind == TokenKind::identifier) {
            rule.head.insert(atom());
            while (peek().kind == TokenKind::bar) {
                advance();
                expect_atom_start();
                rule.head.insert(atom());
            }
            if (peek().kind != TokenKind::if_ && peek().kind != TokenKind::dot) unexpected({".", ":-", "|"});
        } else if (first.kind != TokenKind::if_) {
            unexpected({"<IDENTIFIER>", ":-"});
        }

        if (peek().kind == TokenKind::if_) {
            advance();
            literal(rule);
            while (peek().kind == TokenKind::comma) {
                advance();
                literal(rule);
            }
            if (peek().kind != TokenKind::dot) unexpected({",", "."});
        }

        const Token& dot = advance();
        rule.span.end_line = dot.line;
        rule.span.end_col = dot.end_col;
        return rule;
    }

    void expect_atom_start() {
        if (peek().kind != TokenKind::identifier) unexpected({"<IDENTIFIER>"});
    }

    void literal(Rule& rule) {
        bool negated = false;
        if (peek().kind == TokenKind::not_) {
            advance();
            negated = true;
        } else if (peek().kind != TokenKind::identifier) {
            unexpected({"<IDENTIFIER>", "not"});
        }
        expect_atom_start();
        (negated ? rule.neg_body : rule.pos_body).insert(atom());
    }

    Atom atom() {
        const Token& name = advance();
        Atom a{name.text, {}};
        if (peek().kind != TokenKind::lparen) return a;
        advance();
        a.args.push_back(term());
        while (peek().kind == TokenKind::comma) {
            advance();
            a.args.push_back(term());
        }
        if (peek().kind != TokenKind::rparen) {
            const Token& t = peek();
            bool lost_paren = t.kind == TokenKind::dot || t.kind == TokenKind::end || t.kind == TokenKind::if_ ||
                              t.kind == TokenKind::bar;
            fail(t, lost_paren ? SyntaxErrorKind::unbalanced_parens : SyntaxErrorKind::unexpected_token, {")", ","});
        }
        advance();
        return a;
    }

    Term term() {
        const Token& t = peek();
        switch (t.kind) {
        case TokenKind::identifier:
        case TokenKind::integer: {
            advance();
            if (peek().kind == TokenKind::lparen) fail(peek(), SyntaxErrorKind::function_term, {")", ","});
            return Term::constant(t.text);
        }
        case TokenKind::variable:
            advance();
            if (peek().kind == TokenKind::lparen) fail(peek(), SyntaxErrorKind::function_term, {")", ","});
            return Term::variable(t.text);
        case TokenKind::end:
            fail(t, SyntaxErrorKind::unbalanced_parens, {"<IDENTIFIER>", "<NUMBER>", "<VARIABLE>"});
        default:
            fail(t, SyntaxErrorKind::unexpected_token, {"<IDENTIFIER>", "<NUMBER>", "<VARIABLE>"});
        }
    }

    std::string_view src_;
    LexOutput lexed_;
    std::size_t pos_ = 0;
};

}  // namespace detail

// Lexes the whole input. Fails with the first lexical error.
inline std::variant<std::vector<Token>, ParseError> tokenize(std::string_view source) {
    auto lexed = detail::lex_utf8(source);
    if (lexed.error) return *lexed.error;
    return std::move(lexed.tokens);
}

inline ParseResult parse_program(std::string_view source) {
    return detail::Parser(source, detail::lex_utf8(source)).run();
}

// ---------------------------------------------------------------------------
// Phase-1 hints

struct SyntaxHint {
    std::string message;
    std::string caret_rendering;  // offending line, newline, caret line
    std::string reminder;

    friend bool operator==(const SyntaxHint&, const SyntaxHint&) = default;
};

inline constexpr std::string_view rule_shape_reminder =
    "Remember that rules are of the form\n"
    "    atom :- atom, not atom.\n"
    "and atoms are of the form\n"
    "    predicate\n"
    "or\n"
    "    predicate(arg1,arg2)\n"
    "or similar.";

inline std::string caret_rendering(const ParseError& err) {
    std::string marker;
    // Copy tabs from the source line so the caret lines up in a terminal.
    std::size_t chars = 0;
    for (std::size_t b = 0; b < err.source_line_text.size() && chars + 1 < err.col_start; ++b) {
        unsigned char c = static_cast<unsigned char>(err.source_line_text[b]);
        if ((c & 0xC0) == 0x80) continue;
        marker += c == '\t' ? '\t' : ' ';
        ++chars;
    }
    while (chars + 1 < err.col_start) {
        marker += ' ';
        ++chars;
    }
    marker.append(err.col_end - err.col_start + 1, '^');
    return err.source_line_text + "\n" + marker;
}

inline std::string describe_found(const ParseError& err) {
    if (err.found == "<EOF>") return "<EOF>";
    if (err.kind == SyntaxErrorKind::lexical) return "character '" + err.found + "'";
    if (err.found == "<IDENTIFIER>") return "identifier";
    if (err.found == "<VARIABLE>") return "variable";
    if (err.found == "<NUMBER>") return "number";
    return "'" + err.found + "'";
}

inline SyntaxHint syntax_hint(const ParseError& err) {
    std::string msg = "Syntax error, unexpected " + describe_found(err) + ".";
    switch (err.kind) {
    case SyntaxErrorKind::lexical:
        msg += " This character cannot be used in a program.";
        break;
    case SyntaxErrorKind::missing_dot:
        msg += " The rule is not terminated: every rule must end with a dot '.'.";
        break;
    case SyntaxErrorKind::unbalanced_parens:
        msg += " The parentheses are unbalanced: every '(' needs a matching ')'.";
        break;
    case SyntaxErrorKind::function_term:
        msg += " Arguments must be constants or variables; function terms are not supported.";
        break;
    case SyntaxErrorKind::empty_rule:
        msg += " A rule needs a head, a body, or both before the final '.'.";
        break;
    case SyntaxErrorKind::unexpected_token:
        if (err.expected.count(".")) msg += " Rules must be terminated with '.', not " + describe_found(err) + ".";
        break;
    }
    return {std::move(msg), caret_rendering(err), std::string(rule_shape_reminder)};
}

}  // namespace asphint
