#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#if defined(__unix__) || defined(__APPLE__)
#include <sys/resource.h>
#endif

#include "clock.hpp"

namespace chachabench::bench {

// Best-effort environment probes. Every field degrades gracefully: peak
// memory to nullopt, the frequency policy to "unavailable". Reports must not
// fail on a platform that cannot answer.

inline std::optional<std::uint64_t> peak_rss_bytes() {
#if defined(__unix__) || defined(__APPLE__)
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0) {
        return std::nullopt;
    }
#if defined(__APPLE__)
    return static_cast<std::uint64_t>(usage.ru_maxrss); // already bytes
#else
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024; // kilobytes
#endif
#else
    return std::nullopt;
#endif
}

inline std::string frequency_policy() {
    std::ifstream governor("/sys/devices/system/cpu/cpu0/cpufreq/scaling_governor");
    std::string value;
    if (governor && std::getline(governor, value) && !value.empty()) {
        return value;
    }
    return "unavailable";
}

struct EnvironmentReport {
    std::string clock;
    std::int64_t clock_resolution_ns = 0;
    std::string frequency_policy;
    std::string warning;
};

// Dynamic frequency scaling makes cold measurements bimodal; the report
// always carries the advice, whatever the governor probe finds.
inline constexpr std::string_view frequency_warning =
    "results under dynamic frequency scaling are bimodal-prone; "
    "lock the CPU frequency or rely on warmup iterations";

inline EnvironmentReport environment_probe() {
    EnvironmentReport env;
    env.clock = std::string(clock_name);
    env.clock_resolution_ns = estimate_clock_resolution_ns();
    env.frequency_policy = frequency_policy();
    env.warning = std::string(frequency_warning);
    return env;
}

} // namespace chachabench::bench
