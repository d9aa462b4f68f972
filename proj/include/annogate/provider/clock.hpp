#pragma once

#include <chrono>
#include <mutex>
#include <thread>
#include <vector>

namespace annogate::provider {

// Wall/sleep abstraction so pacing and backoff are testable without waiting.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::milliseconds now() = 0;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

class SystemClock : public Clock {
public:
    std::chrono::milliseconds now() override {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now().time_since_epoch());
    }
    void sleep_for(std::chrono::milliseconds d) override { std::this_thread::sleep_for(d); }
};

// Test clock: sleeping advances time instantly and every sleep is recorded.
class ManualClock : public Clock {
public:
    explicit ManualClock(std::chrono::milliseconds start = std::chrono::milliseconds(0))
        : now_(start) {}

    std::chrono::milliseconds now() override {
        std::lock_guard<std::mutex> lock(mu_);
        return now_;
    }
    void sleep_for(std::chrono::milliseconds d) override {
        std::lock_guard<std::mutex> lock(mu_);
        now_ += d;
        sleeps_.push_back(d);
    }
    void advance(std::chrono::milliseconds d) {
        std::lock_guard<std::mutex> lock(mu_);
        now_ += d;
    }
    std::vector<std::chrono::milliseconds> sleeps() const {
        std::lock_guard<std::mutex> lock(mu_);
        return sleeps_;
    }

private:
    mutable std::mutex mu_;
    std::chrono::milliseconds now_;
    std::vector<std::chrono::milliseconds> sleeps_;
};

}  // namespace annogate::provider
