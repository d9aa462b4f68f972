#pragma once

#include <chrono>
#include <deque>
#include <mutex>

#include "annogate/provider/clock.hpp"

namespace annogate::provider {

// Sliding-window pacing shared by all threads of a run: at most
// requests_per_minute acquisitions inside any 60-second window.
class RateLimiter {
public:
    RateLimiter(int requests_per_minute, Clock& clock)
        : limit_(requests_per_minute), clock_(clock) {}

    // Blocks (via the clock) until a slot is free, then claims it.
    void acquire() {
        using std::chrono::milliseconds;
        while (true) {
            milliseconds wait(0);
            {
                std::lock_guard<std::mutex> lock(mu_);
                milliseconds now = clock_.now();
                while (!issued_.empty() && issued_.front() + window_ <= now) issued_.pop_front();
                if (static_cast<int>(issued_.size()) < limit_) {
                    issued_.push_back(now);
                    return;
                }
                wait = issued_.front() + window_ - now;
            }
            clock_.sleep_for(wait > milliseconds(0) ? wait : milliseconds(1));
        }
    }

private:
    static constexpr std::chrono::milliseconds window_{60'000};
    int limit_;
    Clock& clock_;
    std::mutex mu_;
    std::deque<std::chrono::milliseconds> issued_;
};

}  // namespace annogate::provider
