#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "../bytes.hpp"
#include "../entropy.hpp"
#include "../envelope.hpp"
#include "clock.hpp"
#include "stats.hpp"

namespace chachabench::bench {

// Phase-timed round-trip harness. Each iteration times one full exchange:
//
//   t0 | generate nonce          | random phase      (t1 - t0)
//   t1 | seal payload            | encryption phase  (t2 - t1)
//   t2 | parse and open envelope | decryption phase  (t3 - t2)
//   t3 |                         | functional        (t3 - t0)
//
// Samples accumulate in preallocated memory; nothing between a sample's first
// and last timestamp writes to any stream or file. Plaintext verification and
// nonce bookkeeping happen between iterations, outside the timestamps.

struct RunConfig {
    std::size_t payload_size = 28;
    std::size_t runs = 100'000;
    std::size_t warmup_runs = 1'000;
    std::string label; // defaults to "<payload_size>B" when empty
};

struct RunOutcome {
    std::vector<PhaseSample> samples; // raw, unfiltered, collection order
    bool complete = false;
    std::string abort_reason;    // empty when complete
    std::size_t nonce_duplicates = 0;
};

inline Bytes make_payload(std::size_t size) {
    Bytes payload(size);
    for (std::size_t i = 0; i < size; i++) {
        payload[i] = static_cast<std::uint8_t>(i);
    }
    return payload;
}

inline RunOutcome run_benchmark(const RunConfig& config, const Key256& key,
                                EntropySource& entropy) {
    if (config.runs < 1) {
        throw std::invalid_argument("run_benchmark: runs must be at least 1");
    }
    RunOutcome outcome;
    outcome.samples.reserve(config.runs);

    const Bytes payload = make_payload(config.payload_size);
    std::vector<Nonce96> seen_nonces;
    seen_nonces.reserve(config.runs);

    outcome.complete = true;
    try {
        for (std::size_t i = 0; i < config.warmup_runs + config.runs; i++) {
            const std::int64_t t0 = now_ns();
            const Nonce96 nonce = entropy.nonce();
            const std::int64_t t1 = now_ns();
            const Bytes sealed = seal_with_nonce(key, nonce, payload);
            const std::int64_t t2 = now_ns();
            const OpenResult opened = open(key, sealed);
            const std::int64_t t3 = now_ns();

            // Bookkeeping below runs outside the timestamps on purpose.
            if (!opened || !ct_equal(opened.plaintext, payload)) {
                outcome.complete = false;
                outcome.abort_reason = "round trip verification failed";
                break;
            }
            if (i < config.warmup_runs) {
                continue;
            }
            outcome.samples.push_back({t1 - t0, t2 - t1, t3 - t2, t3 - t0});
            seen_nonces.push_back(nonce);
        }
    } catch (const EntropyError& e) {
        outcome.complete = false;
        outcome.abort_reason = e.what();
    }

    std::sort(seen_nonces.begin(), seen_nonces.end());
    for (std::size_t i = 1; i < seen_nonces.size(); i++) {
        if (seen_nonces[i] == seen_nonces[i - 1]) {
            outcome.nonce_duplicates++;
        }
    }
    return outcome;
}

} // namespace chachabench::bench
