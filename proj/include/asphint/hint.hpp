#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace asphint {

// One piece of feedback for the student.
struct Hint {
    int phase = 1;  // 1 syntax, 2 vocabulary, 3 semantics
    int level = 0;  // escalation degree within the phase
    std::string message;
    nlohmann::json payload = nlohmann::json::object();
    // Syntax hints only: offending line plus caret line, and the rule-shape reminder.
    std::string caret_rendering;
    std::string reminder;
    // Set when the non-reveal guard replaced the original message.
    bool redacted = false;

    friend bool operator==(const Hint&, const Hint&) = default;
};

namespace detail {

// "a", "a and b", "a, b and c"
inline std::string join_and(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += (i + 1 == items.size()) ? " and " : ", ";
        out += items[i];
    }
    return out;
}

}  // namespace detail

}  // namespace asphint
