#pragma once

#include <cstdint>
#include <functional>

namespace romanoff {

// Available hardware parallelism, at least 1.
unsigned default_thread_count();

// Runs body(worker, workers) on `workers` threads and joins them all.
// workers == 0 selects default_thread_count(); workers == 1 runs inline.
void run_workers(unsigned workers, const std::function<void(unsigned, unsigned)>& body);

// Rate-limited progress reporting: invokes sink(done, total) at most once
// per second. sink may be empty, in which case ticks are ignored.
class ProgressMeter {
public:
    using Sink = std::function<void(std::uint64_t, std::uint64_t)>;

    ProgressMeter(Sink sink, std::uint64_t total);
    void tick(std::uint64_t done);

private:
    Sink sink_;
    std::uint64_t total_;
    std::int64_t last_ms_;
};

} // namespace romanoff
