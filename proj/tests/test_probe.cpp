#include <cstring>
#include <memory>
#include <vector>

#include <gtest/gtest.h>

#include <chachabench/bench/clock.hpp>
#include <chachabench/bench/probe.hpp>

using namespace chachabench::bench;

TEST(Clock, MonotonicNonDecreasing) {
    std::int64_t prev = now_ns();
    for (int i = 0; i < 10'000; i++) {
        std::int64_t next = now_ns();
        ASSERT_GE(next, prev);
        prev = next;
    }
}

TEST(Clock, ResolutionIsPositive) {
    std::int64_t resolution = estimate_clock_resolution_ns();
    EXPECT_GT(resolution, 0);
    // A monotonic nanosecond clock coarser than 10 ms would be unusable here.
    EXPECT_LT(resolution, 10'000'000);
}

TEST(PeakMemory, PositiveAndMonotonic) {
    auto first = peak_rss_bytes();
    ASSERT_TRUE(first.has_value());
    EXPECT_GT(*first, 0u);

    auto second = peak_rss_bytes();
    ASSERT_TRUE(second.has_value());
    EXPECT_GE(*second, *first);
}

TEST(PeakMemory, GrowsWhenMemoryIsTouched) {
    auto before = peak_rss_bytes();
    ASSERT_TRUE(before.has_value());

    constexpr std::size_t extra = 64 * 1024 * 1024;
    std::vector<char> block(extra);
    std::memset(block.data(), 0x2a, block.size());
    auto after = peak_rss_bytes();
    ASSERT_TRUE(after.has_value());
    EXPECT_GE(*after, *before);
    EXPECT_GE(*after, extra);
    EXPECT_NE(block[extra / 2], 0);
}

TEST(FrequencyPolicy, AlwaysAnswers) {
    std::string policy = frequency_policy();
    EXPECT_FALSE(policy.empty());
}

TEST(EnvironmentProbe, FieldsDegradeRatherThanFail) {
    EnvironmentReport env = environment_probe();
    EXPECT_EQ(env.clock, "steady_clock");
    EXPECT_GT(env.clock_resolution_ns, 0);
    EXPECT_FALSE(env.frequency_policy.empty());
    // The scaling advice is unconditional.
    EXPECT_NE(env.warning.find("warmup"), std::string::npos);
    EXPECT_NE(env.warning.find("frequency"), std::string::npos);
}
