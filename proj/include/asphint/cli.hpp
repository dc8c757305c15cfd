#pragma once

// Command-line front end.
//
//   asphint check --exercise <file> --answer <file> [--level 0|1|2] [--format text|json]
//   asphint validate --exercise <file>
//   asphint serve [--exercise-dir <dir>] [--host H] [--port P] [--attempt-log <file>]
//
// Exit status of `check`: 0 correct, 1 hint issued, 2 usage or internal error.

#include <asphint/bundle.hpp>
#include <asphint/http.hpp>
#include <asphint/report.hpp>
#include <asphint/service.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace asphint::cli {

inline constexpr int exit_correct = 0;
inline constexpr int exit_hint = 1;
inline constexpr int exit_error = 2;

struct CheckArgs {
    std::string exercise;
    std::string answer;
    int level = 0;
    std::string format = "text";
    int timeout_ms = 5000;
};

inline int check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
    Exercise ex;
    std::string answer;
    try {
        ex = load_exercise(args.exercise);
        answer = read_file(args.answer);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    EvaluateOptions opts;
    opts.timeout = std::chrono::milliseconds(args.timeout_ms);
    Diagnosis d = evaluate_attempt(ex, answer, args.level, opts);

    std::string report = args.format == "json" ? to_json(d).dump(2) + "\n" : render_text(d);
    if (reveals(report, protected_rule_texts(ex, answer))) {
        err << "error: internal error while rendering the report\n";
        return exit_error;
    }
    out << report;
    if (d.internal_error) err << "warning: a hint was redacted\n";
    return d.passed() ? exit_correct : exit_hint;
}

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hint engine for answer set programming exercises", "asphint"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand("check", "Evaluate one answer against an exercise");
    check_cmd->add_option("--exercise", check_args.exercise, "Exercise bundle (JSON)")->required();
    check_cmd->add_option("--answer", check_args.answer, "File with the answer rules")->required();
    check_cmd->add_option("--level", check_args.level, "Hint level")->check(CLI::Range(0, 2));
    check_cmd->add_option("--format", check_args.format, "Report format")->check(CLI::IsMember({"text", "json"}));
    check_cmd->add_option("--timeout-ms", check_args.timeout_ms, "Solver wall-clock budget")->check(CLI::PositiveNumber);

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "Load and validate an exercise bundle");
    validate_cmd->add_option("--exercise", validate_path, "Exercise bundle (JSON)")->required();

    std::string dir;
    if (const char* env = std::getenv("ASPHINT_EXERCISE_DIR")) dir = env;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string attempt_log;
    int serve_timeout_ms = 5000;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--exercise-dir", dir, "Directory of exercise bundles (default: $ASPHINT_EXERCISE_DIR)");
    serve_cmd->add_option("--host", host, "Listen address");
    serve_cmd->add_option("--port", port, "Listen port")->check(CLI::Range(1, 65535));
    serve_cmd->add_option("--attempt-log", attempt_log, "Append attempts to this JSON-lines file");
    serve_cmd->add_option("--timeout-ms", serve_timeout_ms, "Per-attempt solver budget")->check(CLI::PositiveNumber);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();  // program name
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_correct;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << app.help();
        return exit_error;
    }

    if (*check_cmd) return check(check_args, out, err);

    if (*validate_cmd) {
        try {
            auto ex = load_exercise(validate_path);
            out << "ok: " << ex.id << " (" << ex.reference_answer_sets.size() << " answer set"
                << (ex.reference_answer_sets.size() == 1 ? "" : "s") << ")\n";
            return exit_correct;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return exit_error;
        }
    }

    if (dir.empty()) {
        err << "error: no exercise directory (use --exercise-dir or ASPHINT_EXERCISE_DIR)\n";
        return exit_error;
    }
    try {
        ServiceConfig config;
        config.evaluation_timeout = std::chrono::milliseconds(serve_timeout_ms);
        if (!attempt_log.empty()) config.attempt_log = attempt_log;
        Service service(load_exercise_dir(dir), config);
        out << "listening on http://" << host << ":" << port << std::endl;
        if (!serve(service, host, port)) {
            err << "error: cannot listen on " << host << ":" << port << '\n';
            return exit_error;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_correct;
}

}  // namespace asphint::cli
