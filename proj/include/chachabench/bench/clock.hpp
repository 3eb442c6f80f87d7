#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string_view>
#include <vector>

namespace chachabench::bench {

// Monotonic timestamps in nanoseconds. std::chrono::steady_clock never steps
// backwards, unlike the wall clock, so phase durations cannot go negative
// through clock adjustment; the sample filter still guards against anomalies.

inline std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

inline constexpr std::string_view clock_name = "steady_clock";

// Median of repeated minimal-interval reads: each trial spins until the clock
// advances and records the smallest step seen. An upper bound on the usable
// resolution, reported for reproducibility.
inline std::int64_t estimate_clock_resolution_ns(int trials = 101) {
    std::vector<std::int64_t> deltas;
    deltas.reserve(static_cast<std::size_t>(trials));
    for (int i = 0; i < trials; i++) {
        std::int64_t a = now_ns();
        std::int64_t b = now_ns();
        while (b <= a) {
            b = now_ns();
        }
        deltas.push_back(b - a);
    }
    std::sort(deltas.begin(), deltas.end());
    return deltas[deltas.size() / 2];
}

} // namespace chachabench::bench
