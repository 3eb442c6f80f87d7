#include <gtest/gtest.h>

#include <chachabench/bytes.hpp>
#include <chachabench/poly1305.hpp>

#include "test_util.hpp"

using namespace chachabench;

namespace {

ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

} // namespace

TEST(Poly1305, ReferenceTag) {
    Key256 key = array_from_hex<32>(
        "85d6be7857556d337f4452fe42d506a80103808afb0db2fd4abff6af4149f51b");
    Tag128 tag = Poly1305::mac(key, as_bytes("Cryptographic Forum Research Group"));
    EXPECT_EQ(to_hex(tag), "a8061dc1305136c6c22b8baf0c0127a9");
}

// With r = s = 0 the polynomial collapses and the tag is zero regardless of
// the message; the clamp must not manufacture key material.
TEST(Poly1305, ZeroKeyGivesZeroTag) {
    Key256 key{};
    Tag128 tag = Poly1305::mac(key, as_bytes("whatever the message says"));
    EXPECT_EQ(to_hex(tag), "00000000000000000000000000000000");
}

TEST(Poly1305, IncrementalMatchesOneShot) {
    std::mt19937_64 rng(21);
    Key256 key = testutil::random_key(rng);
    Bytes message = testutil::random_bytes(rng, 129);
    Tag128 expected = Poly1305::mac(key, message);

    for (std::size_t split : {std::size_t(0), std::size_t(1), std::size_t(15), std::size_t(16),
                              std::size_t(17), std::size_t(64), std::size_t(128),
                              std::size_t(129)}) {
        Poly1305 ctx(key);
        ctx.update(ByteView(message).subspan(0, split));
        ctx.update(ByteView(message).subspan(split));
        EXPECT_EQ(ctx.finalize(), expected) << "split at " << split;
    }
}

TEST(Poly1305, ManySmallUpdatesMatchOneShot) {
    std::mt19937_64 rng(22);
    Key256 key = testutil::random_key(rng);
    Bytes message = testutil::random_bytes(rng, 100);
    Tag128 expected = Poly1305::mac(key, message);

    Poly1305 ctx(key);
    for (std::uint8_t byte : message) {
        ctx.update({&byte, 1});
    }
    EXPECT_EQ(ctx.finalize(), expected);
}

TEST(Poly1305, EmptyMessage) {
    std::mt19937_64 rng(23);
    Key256 key = testutil::random_key(rng);
    // No blocks are absorbed, so the tag is s itself.
    Tag128 tag = Poly1305::mac(key, {});
    Tag128 s;
    std::copy(key.begin() + 16, key.end(), s.begin());
    EXPECT_EQ(tag, s);
}

// A trailing zero byte changes the padded block content, so it must change
// the tag: padding is length-aware, not byte-stuffing.
TEST(Poly1305, TrailingZeroChangesTag) {
    std::mt19937_64 rng(24);
    Key256 key = testutil::random_key(rng);
    Bytes shorter = testutil::random_bytes(rng, 10);
    Bytes longer = shorter;
    longer.push_back(0x00);
    EXPECT_NE(Poly1305::mac(key, shorter), Poly1305::mac(key, longer));
}

TEST(Poly1305, KeySensitivity) {
    std::mt19937_64 rng(25);
    Key256 key_a = testutil::random_key(rng);
    Key256 key_b = key_a;
    key_b[0] ^= 0x01;
    Bytes message = testutil::random_bytes(rng, 40);
    EXPECT_NE(Poly1305::mac(key_a, message), Poly1305::mac(key_b, message));
}

// Messages that stress the final reduction: every block 0xff pushes the
// accumulator near 2^130 - 5 repeatedly.
TEST(Poly1305, AllOnesBlocksReduceCleanly) {
    Key256 key = array_from_hex<32>(
        "ffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffffff");
    Bytes message(64, 0xff);
    Tag128 tag_a = Poly1305::mac(key, message);
    Tag128 tag_b = Poly1305::mac(key, message);
    EXPECT_EQ(tag_a, tag_b);

    Poly1305 ctx(key);
    ctx.update(ByteView(message).subspan(0, 33));
    ctx.update(ByteView(message).subspan(33));
    EXPECT_EQ(ctx.finalize(), tag_a);
}
