#pragma once

// Exercise service: lists exercises, evaluates attempts and enforces the
// hint escalation policy (level n becomes available after n failed attempts
// on the same exercise within a session). Transport-independent; see http.hpp
// for the HTTP binding.

#include <asphint/pipeline.hpp>
#include <asphint/report.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace asphint {

struct ServiceConfig {
    std::chrono::milliseconds evaluation_timeout{5000};
    std::uint64_t max_candidates = std::uint64_t{1} << 22;
    std::optional<std::filesystem::path> attempt_log;  // JSON lines, append-only
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

class Service {
public:
    static constexpr int max_level = 2;

    explicit Service(std::vector<Exercise> exercises, ServiceConfig config = {})
        : config_(std::move(config)), rng_(std::random_device{}()) {
        for (auto& ex : exercises) {
            auto id = ex.id;
            order_.push_back(id);
            exercises_.emplace(std::move(id), std::move(ex));
        }
    }

    Response list_exercises() const {
        nlohmann::json items = nlohmann::json::array();
        for (const auto& id : order_) {
            const auto& ex = exercises_.at(id);
            items.push_back({{"id", ex.id}, {"statement", ex.statement}});
        }
        return {200, std::move(items)};
    }

    Response get_exercise(const std::string& id) const {
        auto it = exercises_.find(id);
        if (it == exercises_.end()) return not_found(id);
        const auto& ex = it->second;
        nlohmann::json qp = nlohmann::json::array();
        for (const auto& q : ex.question_predicates) qp.push_back({{"predicate", q.predicate}, {"arity", q.arity}});
        return {200, {{"id", ex.id}, {"statement", ex.statement}, {"given", ex.given_source}, {"question_predicates", qp}}};
    }

    // Body: {"answer_source": text, "requested_level": 0..2, "session": optional token}
    Response post_attempt(const std::string& id, const std::string& raw_body) {
        auto it = exercises_.find(id);
        if (it == exercises_.end()) return not_found(id);
        const Exercise& ex = it->second;

        nlohmann::json body;
        try {
            body = nlohmann::json::parse(raw_body);
        } catch (const nlohmann::json::parse_error&) {
            return error(400, "request body is not valid JSON");
        }
        if (!body.is_object()) return error(400, "request body must be a JSON object");
        if (!body.contains("answer_source") || !body.at("answer_source").is_string())
            return error(422, "answer_source is required");
        auto answer = body.at("answer_source").get<std::string>();
        if (detail::strip_space(answer).empty()) return error(422, "answer_source is empty");
        int requested = 0;
        if (body.contains("requested_level")) {
            const auto& lv = body.at("requested_level");
            if (!lv.is_number_integer() || lv.get<int>() < 0 || lv.get<int>() > max_level)
                return error(400, "requested_level must be 0, 1 or 2");
            requested = lv.get<int>();
        }
        std::string token;
        if (body.contains("session") && body.at("session").is_string()) token = body.at("session").get<std::string>();

        int failed_before = 0;
        {
            std::lock_guard lock(mutex_);
            if (token.empty() || !sessions_.count(token)) token = new_token();
            failed_before = sessions_[token][id];
        }
        int available = std::min(failed_before, max_level);
        int served = std::min(requested, available);

        Diagnosis d = evaluate_attempt(ex, answer, served, {config_.evaluation_timeout, config_.max_candidates});
        bool timed_out = std::holds_alternative<EvaluationTimeout>(d.findings);

        int failed_after = failed_before;
        {
            std::lock_guard lock(mutex_);
            if (!d.passed() && !timed_out) failed_after = ++sessions_[token][id];
        }
        log_attempt(token, ex.id, answer, served, d);

        nlohmann::json out = {{"session", token},
                              {"requested_level", requested},
                              {"served_level", d.level},
                              {"available_level", std::min(failed_after, max_level)},
                              {"failed_attempts", failed_after},
                              {"diagnosis", to_json(d, Audience::student)}};
        if (timed_out) {
            out["error"] = "evaluation timeout";
            return guarded(ex, answer, {503, std::move(out)});
        }
        return guarded(ex, answer, {200, std::move(out)});
    }

    const ServiceConfig& config() const noexcept { return config_; }

private:
    static Response error(int status, const std::string& message) { return {status, {{"error", message}}}; }
    static Response not_found(const std::string& id) { return error(404, "unknown exercise: " + id); }

    // Last line of defence: nothing leaves the service that spells out a
    // reference rule the student did not write.
    static Response guarded(const Exercise& ex, const std::string& answer, Response r) {
        if (reveals(r.body.dump(), protected_rule_texts(ex, answer))) return error(500, "internal error");
        return r;
    }

    std::string new_token() {
        std::uniform_int_distribution<std::uint64_t> dist;
        char buf[33];
        std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(dist(rng_)),
                      static_cast<unsigned long long>(dist(rng_)));
        return buf;
    }

    void log_attempt(const std::string& session, const std::string& exercise, const std::string& answer, int level,
                     const Diagnosis& d) {
        if (!config_.attempt_log) return;
        nlohmann::json entry = {{"time", static_cast<long long>(std::time(nullptr))},
                                {"session", session},
                                {"exercise", exercise},
                                {"answer_source", answer},
                                {"served_level", level},
                                {"phase_reached", d.passed() ? nlohmann::json("passed")
                                                             : nlohmann::json(static_cast<int>(d.phase_reached))}};
        std::lock_guard lock(log_mutex_);
        std::ofstream out(*config_.attempt_log, std::ios::app);
        out << entry.dump() << '\n';
    }

    ServiceConfig config_;
    std::map<std::string, Exercise> exercises_;
    std::vector<std::string> order_;
    std::mutex mutex_;
    std::map<std::string, std::map<std::string, int>> sessions_;  // token -> exercise -> failed attempts
    std::mt19937_64 rng_;
    std::mutex log_mutex_;
};

}  // namespace asphint
