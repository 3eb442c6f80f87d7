#pragma once

#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "../entropy.hpp"
#include "budget.hpp"
#include "probe.hpp"
#include "runner.hpp"
#include "stats.hpp"

namespace chachabench::bench {

// Campaign orchestration and report serialization. Reports are assembled and
// written strictly after all timing completes; the only mid-run output is the
// optional diagnostic stream, and that is touched only between campaigns.

inline constexpr std::string_view timing_note =
    "decryption phase times the in-memory open only; file-backed paths "
    "are excluded from phase timing";

struct CampaignGrid {
    std::vector<std::size_t> sizes = {28, 56, 112, 224};
    std::size_t runs = 100'000;
    std::size_t warmup = 1'000;
    std::vector<BudgetSpec> budgets = default_budgets();
};

struct BudgetOutcome {
    BudgetSpec spec;
    BudgetVerdict mean;
    BudgetVerdict p95;
};

struct CampaignResult {
    std::string label;
    std::size_t payload_bytes = 0;
    std::size_t runs_requested = 0;
    std::size_t warmup_runs = 0;
    bool complete = false;
    std::string abort_reason; // empty when complete
    std::size_t nonce_duplicates = 0;
    std::optional<StatsSummary> summary; // absent when no valid samples exist
    std::vector<BudgetOutcome> budgets;  // functional phase, one entry per budget
};

struct BenchReport {
    EnvironmentReport environment;
    std::optional<std::uint64_t> peak_memory_bytes;
    bool partial = false; // true when any campaign aborted early
    std::vector<CampaignResult> campaigns;
};

inline CampaignResult run_campaign(const RunConfig& config,
                                   const std::vector<BudgetSpec>& budgets,
                                   EntropySource& entropy) {
    CampaignResult result;
    result.label = config.label.empty() ? std::to_string(config.payload_size) + "B"
                                        : config.label;
    result.payload_bytes = config.payload_size;
    result.runs_requested = config.runs;
    result.warmup_runs = config.warmup_runs;

    Key256 key{};
    try {
        entropy.fill(key.data(), key.size());
    } catch (const EntropyError& e) {
        result.complete = false;
        result.abort_reason = e.what();
        return result;
    }

    RunOutcome outcome = run_benchmark(config, key, entropy);
    result.complete = outcome.complete;
    result.abort_reason = outcome.abort_reason;
    result.nonce_duplicates = outcome.nonce_duplicates;

    FilterOutcome filtered = filter_invalid(outcome.samples);
    if (!filtered.valid.empty()) {
        result.summary = summarize(filtered.valid, outcome.samples.size());
        for (const BudgetSpec& b : budgets) {
            BudgetOutcome entry;
            entry.spec = b;
            entry.mean = budget_verdict(*result.summary, b, Phase::functional, Statistic::mean);
            entry.p95 = budget_verdict(*result.summary, b, Phase::functional, Statistic::p95);
            result.budgets.push_back(std::move(entry));
        }
    }
    return result;
}

// Runs one campaign per grid size. Diagnostics are written only before a
// campaign's warmup begins or after its last iteration ends.
inline BenchReport run_grid(const CampaignGrid& grid, EntropySource& entropy,
                            std::ostream* diag = nullptr) {
    BenchReport report;
    report.environment = environment_probe();

    for (std::size_t size : grid.sizes) {
        RunConfig config;
        config.payload_size = size;
        config.runs = grid.runs;
        config.warmup_runs = grid.warmup;
        if (diag) {
            *diag << "campaign " << size << "B: " << grid.runs << " runs, " << grid.warmup
                  << " warmup" << std::endl;
        }
        CampaignResult campaign = run_campaign(config, grid.budgets, entropy);
        if (diag) {
            if (campaign.complete && campaign.summary) {
                *diag << "campaign " << campaign.label << ": mean functional "
                      << campaign.summary->functional.mean_ns / 1000.0 << " us, dropped "
                      << campaign.summary->n_dropped << std::endl;
            } else {
                *diag << "campaign " << campaign.label << ": aborted: " << campaign.abort_reason
                      << std::endl;
            }
        }
        if (!campaign.complete) {
            report.partial = true;
        }
        report.campaigns.push_back(std::move(campaign));
    }

    report.peak_memory_bytes = peak_rss_bytes();
    return report;
}

// CSV: environment and abort notes as '#' comment lines, then one row per
// phase per campaign under a fixed header; durations in integer nanoseconds.
inline void write_csv(const BenchReport& report, std::ostream& out) {
    out << "# clock=" << report.environment.clock << '\n';
    out << "# clock_resolution_ns=" << report.environment.clock_resolution_ns << '\n';
    out << "# frequency_policy=" << report.environment.frequency_policy << '\n';
    out << "# warning=" << report.environment.warning << '\n';
    out << "# timing_note=" << timing_note << '\n';
    if (report.peak_memory_bytes) {
        out << "# peak_memory_bytes=" << *report.peak_memory_bytes << '\n';
    } else {
        out << "# peak_memory_bytes=unavailable\n";
    }
    out << "# partial=" << (report.partial ? "true" : "false") << '\n';
    for (const CampaignResult& c : report.campaigns) {
        if (!c.complete) {
            out << "# campaign " << c.label << " aborted: " << c.abort_reason << '\n';
        }
    }
    out << "phase,mean_ns,p5_ns,p95_ns,n_valid,n_dropped,payload_bytes,label\n";
    for (const CampaignResult& c : report.campaigns) {
        if (!c.summary) {
            continue;
        }
        for (Phase p : all_phases) {
            const PhaseStats& stats = phase_stats(*c.summary, p);
            out << phase_name(p) << ',' << std::llround(stats.mean_ns) << ',' << stats.p5_ns
                << ',' << stats.p95_ns << ',' << c.summary->n_valid << ','
                << c.summary->n_dropped << ',' << c.payload_bytes << ',' << c.label << '\n';
        }
    }
}

inline nlohmann::ordered_json to_json(const PhaseStats& stats) {
    return {
        {"mean_ns", stats.mean_ns}, {"p5_ns", stats.p5_ns},   {"p95_ns", stats.p95_ns},
        {"min_ns", stats.min_ns},   {"max_ns", stats.max_ns},
    };
}

inline nlohmann::ordered_json to_json(const BudgetVerdict& v) {
    return {
        {"pass", v.pass},
        {"percent_of_budget", v.fraction_percent},
    };
}

inline nlohmann::ordered_json to_json(const BenchReport& report) {
    nlohmann::ordered_json doc;
    doc["schema"] = "chachabench-report-v1";
    doc["partial"] = report.partial;
    doc["environment"] = {
        {"clock", report.environment.clock},
        {"clock_resolution_ns", report.environment.clock_resolution_ns},
        {"frequency_policy", report.environment.frequency_policy},
        {"warning", report.environment.warning},
        {"timing_note", timing_note},
    };
    if (report.peak_memory_bytes) {
        doc["peak_memory_bytes"] = *report.peak_memory_bytes;
    } else {
        doc["peak_memory_bytes"] = nullptr;
    }
    doc["campaigns"] = nlohmann::ordered_json::array();
    for (const CampaignResult& c : report.campaigns) {
        nlohmann::ordered_json entry;
        entry["label"] = c.label;
        entry["payload_bytes"] = c.payload_bytes;
        entry["runs"] = c.runs_requested;
        entry["warmup"] = c.warmup_runs;
        entry["complete"] = c.complete;
        if (c.complete) {
            entry["abort_reason"] = nullptr;
        } else {
            entry["abort_reason"] = c.abort_reason;
        }
        entry["nonce_duplicates"] = c.nonce_duplicates;
        if (c.summary) {
            entry["samples"] = {
                {"total", c.summary->n_total},
                {"valid", c.summary->n_valid},
                {"dropped", c.summary->n_dropped},
            };
            entry["phases"] = {
                {"random", to_json(c.summary->random)},
                {"encrypt", to_json(c.summary->encrypt)},
                {"decrypt", to_json(c.summary->decrypt)},
                {"functional", to_json(c.summary->functional)},
            };
        } else {
            entry["samples"] = nullptr;
            entry["phases"] = nullptr;
        }
        entry["budgets"] = nlohmann::ordered_json::array();
        for (const BudgetOutcome& b : c.budgets) {
            entry["budgets"].push_back({
                {"name", b.spec.name},
                {"limit_ns", b.spec.limit_ns},
                {"phase", "functional"},
                {"mean", to_json(b.mean)},
                {"p95", to_json(b.p95)},
            });
        }
        doc["campaigns"].push_back(std::move(entry));
    }
    return doc;
}

inline void write_json(const BenchReport& report, std::ostream& out) {
    out << to_json(report).dump(2) << '\n';
}

} // namespace chachabench::bench
