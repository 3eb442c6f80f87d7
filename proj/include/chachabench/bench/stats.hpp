#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace chachabench::bench {

// Latency aggregation. A sample is the four phase durations of one timed
// iteration; it is valid only when every duration is non-negative. Negative
// durations arise from clock anomalies and are filtered out as whole samples,
// never clamped, and the dropped count rides along into every report.

struct PhaseSample {
    std::int64_t random_ns = 0;
    std::int64_t encrypt_ns = 0;
    std::int64_t decrypt_ns = 0;
    std::int64_t functional_ns = 0;

    bool valid() const {
        return random_ns >= 0 && encrypt_ns >= 0 && decrypt_ns >= 0 && functional_ns >= 0;
    }
};

struct FilterOutcome {
    std::vector<PhaseSample> valid; // survivors, original order
    std::size_t dropped = 0;
};

inline FilterOutcome filter_invalid(const std::vector<PhaseSample>& samples) {
    FilterOutcome out;
    out.valid.reserve(samples.size());
    for (const PhaseSample& s : samples) {
        if (s.valid()) {
            out.valid.push_back(s);
        } else {
            out.dropped++;
        }
    }
    return out;
}

struct PhaseStats {
    double mean_ns = 0.0;
    std::int64_t p5_ns = 0;
    std::int64_t p95_ns = 0;
    std::int64_t min_ns = 0;
    std::int64_t max_ns = 0;
};

struct StatsSummary {
    PhaseStats random;
    PhaseStats encrypt;
    PhaseStats decrypt;
    PhaseStats functional;
    std::size_t n_total = 0;
    std::size_t n_valid = 0;
    std::size_t n_dropped = 0; // n_valid + n_dropped = n_total
};

enum class Phase { random, encrypt, decrypt, functional };

inline constexpr Phase all_phases[] = {Phase::random, Phase::encrypt, Phase::decrypt,
                                       Phase::functional};

inline const char* phase_name(Phase p) {
    switch (p) {
    case Phase::random: return "random";
    case Phase::encrypt: return "encrypt";
    case Phase::decrypt: return "decrypt";
    default: return "functional";
    }
}

inline std::int64_t phase_duration(const PhaseSample& s, Phase p) {
    switch (p) {
    case Phase::random: return s.random_ns;
    case Phase::encrypt: return s.encrypt_ns;
    case Phase::decrypt: return s.decrypt_ns;
    default: return s.functional_ns;
    }
}

inline const PhaseStats& phase_stats(const StatsSummary& summary, Phase p) {
    switch (p) {
    case Phase::random: return summary.random;
    case Phase::encrypt: return summary.encrypt;
    case Phase::decrypt: return summary.decrypt;
    default: return summary.functional;
    }
}

// Nearest rank: the smallest sorted value whose cumulative frequency reaches
// p percent, rank = ceil(p * n / 100) in exact integer arithmetic, 1-indexed.
inline std::int64_t nearest_rank_percentile(const std::vector<std::int64_t>& sorted, int p) {
    if (sorted.empty()) {
        throw std::invalid_argument("nearest_rank_percentile: empty sample set");
    }
    if (p < 1 || p > 100) {
        throw std::out_of_range("nearest_rank_percentile: p outside [1, 100]");
    }
    std::size_t rank = (static_cast<std::size_t>(p) * sorted.size() + 99) / 100;
    return sorted[rank - 1];
}

inline PhaseStats summarize_phase(std::vector<std::int64_t>& durations) {
    PhaseStats stats;
    std::sort(durations.begin(), durations.end());
    std::int64_t sum = 0;
    for (std::int64_t v : durations) {
        sum += v;
    }
    stats.mean_ns = static_cast<double>(sum) / static_cast<double>(durations.size());
    stats.p5_ns = nearest_rank_percentile(durations, 5);
    stats.p95_ns = nearest_rank_percentile(durations, 95);
    stats.min_ns = durations.front();
    stats.max_ns = durations.back();
    return stats;
}

// Summarizes pre-filtered samples. n_total is the requested run count, so
// n_valid + n_dropped = n_total holds by construction.
inline StatsSummary summarize(const std::vector<PhaseSample>& valid, std::size_t n_total) {
    if (valid.empty()) {
        throw std::invalid_argument("summarize: empty sample set");
    }
    if (n_total < valid.size()) {
        throw std::invalid_argument("summarize: n_total smaller than the valid count");
    }
    StatsSummary summary;
    summary.n_total = n_total;
    summary.n_valid = valid.size();
    summary.n_dropped = n_total - valid.size();

    std::vector<std::int64_t> durations(valid.size());
    for (Phase p : all_phases) {
        for (std::size_t i = 0; i < valid.size(); i++) {
            durations[i] = phase_duration(valid[i], p);
        }
        PhaseStats stats = summarize_phase(durations);
        switch (p) {
        case Phase::random: summary.random = stats; break;
        case Phase::encrypt: summary.encrypt = stats; break;
        case Phase::decrypt: summary.decrypt = stats; break;
        default: summary.functional = stats; break;
        }
    }
    return summary;
}

} // namespace chachabench::bench
