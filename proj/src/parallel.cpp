#include "romanoff/parallel.hpp"

#include <chrono>
#include <cstdint>
#include <thread>
#include <vector>

namespace romanoff {

unsigned default_thread_count() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

void run_workers(unsigned workers, const std::function<void(unsigned, unsigned)>& body) {
    if (workers == 0) workers = default_thread_count();
    if (workers == 1) {
        body(0, 1);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&body, w, workers] { body(w, workers); });
    }
    for (auto& t : pool) t.join();
}

namespace {

std::int64_t now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

} // namespace

ProgressMeter::ProgressMeter(Sink sink, std::uint64_t total)
    : sink_(std::move(sink)), total_(total), last_ms_(now_ms()) {}

void ProgressMeter::tick(std::uint64_t done) {
    if (!sink_) return;
    std::int64_t t = now_ms();
    if (t - last_ms_ < 1000) return;
    last_ms_ = t;
    sink_(done, total_);
}

} // namespace romanoff
