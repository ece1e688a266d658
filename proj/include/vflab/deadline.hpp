#pragma once

#include <chrono>
#include <stdexcept>

namespace vflab {

struct TimeBudgetExceeded : std::runtime_error {
    TimeBudgetExceeded() : std::runtime_error("time budget exceeded") {}
};

/// Soft wall-clock budget polled cooperatively from long-running loops.
/// Engines abort with TimeBudgetExceeded rather than returning a partial
/// answer.  No budget is set by default.
class Deadline {
public:
    static void set_budget_ms(long ms) {
        instance().armed_ = ms > 0;
        if (ms > 0) instance().deadline_ = Clock::now() + std::chrono::milliseconds(ms);
    }
    static void clear() { instance().armed_ = false; }
    static void poll() {
        const Deadline& d = instance();
        if (d.armed_ && Clock::now() > d.deadline_) throw TimeBudgetExceeded();
    }

private:
    using Clock = std::chrono::steady_clock;
    static Deadline& instance() {
        static Deadline d;
        return d;
    }
    bool armed_ = false;
    Clock::time_point deadline_{};
};

}  // namespace vflab
