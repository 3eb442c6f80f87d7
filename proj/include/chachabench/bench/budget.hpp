#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stats.hpp"

namespace chachabench::bench {

// Latency budgets for protection-relay class traffic. A duration meets a
// budget only when strictly below the limit: the protocol limits are
// ceilings, so a value equal to the limit fails.

struct BudgetSpec {
    std::string name;
    std::int64_t limit_ns = 0;
};

inline std::vector<BudgetSpec> default_budgets() {
    return {
        {"GOOSE", 4'000'000},        // protection event messaging, 4 ms class
        {"IEC 60834-1", 10'000'000}, // teleprotection command transfer, 10 ms class
        {"SCADA", 1'000'000'000},    // supervisory traffic, 1 s class
    };
}

// Duration as a percentage of the budget: 100 * duration / limit.
inline double budget_fraction(double duration_ns, const BudgetSpec& budget) {
    if (budget.limit_ns <= 0) {
        throw std::invalid_argument("budget_fraction: limit must be positive");
    }
    return 100.0 * duration_ns / static_cast<double>(budget.limit_ns);
}

enum class Statistic { mean, p95 };

inline const char* statistic_name(Statistic s) {
    return s == Statistic::mean ? "mean" : "p95";
}

struct BudgetVerdict {
    std::string budget_name;
    std::int64_t limit_ns = 0;
    Phase phase = Phase::functional;
    Statistic statistic = Statistic::mean;
    bool pass = false;
    double fraction_percent = 0.0;
};

inline BudgetVerdict budget_verdict(const StatsSummary& summary, const BudgetSpec& budget,
                                    Phase phase, Statistic statistic) {
    if (summary.n_valid == 0) {
        throw std::invalid_argument("budget_verdict: empty summary");
    }
    const PhaseStats& stats = phase_stats(summary, phase);
    double value = statistic == Statistic::mean ? stats.mean_ns
                                                : static_cast<double>(stats.p95_ns);
    BudgetVerdict v;
    v.budget_name = budget.name;
    v.limit_ns = budget.limit_ns;
    v.phase = phase;
    v.statistic = statistic;
    v.pass = value < static_cast<double>(budget.limit_ns);
    v.fraction_percent = budget_fraction(value, budget);
    return v;
}

} // namespace chachabench::bench
