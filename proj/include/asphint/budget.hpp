#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace asphint {

// Thrown when evaluation runs out of candidates or wall-clock time. Distinct
// from "no answer set": a program is only reported inconsistent when proven.
class ResourceExhausted : public std::runtime_error {
public:
    enum class Reason { candidates, time };

    ResourceExhausted(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}

    Reason reason() const noexcept { return reason_; }

private:
    Reason reason_;
};

struct Budget {
    using clock = std::chrono::steady_clock;

    std::uint64_t max_candidates = std::uint64_t{1} << 22;
    std::optional<clock::time_point> deadline;

    static Budget with_timeout(std::chrono::milliseconds ms) {
        Budget b;
        b.deadline = clock::now() + ms;
        return b;
    }

    void check_time() const {
        if (deadline && clock::now() > *deadline)
            throw ResourceExhausted(ResourceExhausted::Reason::time, "evaluation time budget exceeded");
    }
};

}  // namespace asphint
