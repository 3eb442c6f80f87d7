#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "bytes.hpp"

namespace chachabench {

// ChaCha20 stream cipher, IETF flavour (RFC 8439): 256-bit key, 96-bit nonce,
// 32-bit block counter, 20 rounds. State words are little-endian throughout.

namespace detail {

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) {
    a += b; d ^= a; d = std::rotl(d, 16);
    c += d; b ^= c; b = std::rotl(b, 12);
    a += b; d ^= a; d = std::rotl(d, 8);
    c += d; b ^= c; b = std::rotl(b, 7);
}

} // namespace detail

class ChaCha20 {
public:
    ChaCha20(const Key256& key, const Nonce96& nonce) {
        state_[0] = 0x61707865;
        state_[1] = 0x3320646e;
        state_[2] = 0x79622d32;
        state_[3] = 0x6b206574;
        for (std::size_t i = 0; i < 8; i++) {
            state_[4 + i] = load32_le(key.data() + 4 * i);
        }
        state_[12] = 0;
        state_[13] = load32_le(nonce.data());
        state_[14] = load32_le(nonce.data() + 4);
        state_[15] = load32_le(nonce.data() + 8);
    }

    // Serializes the keystream block for the given counter. The counter wraps
    // at 2^32 per the state layout; callers enforce message-length limits.
    KeystreamBlock block(std::uint32_t counter) const {
        std::uint32_t x0 = state_[0], x1 = state_[1], x2 = state_[2], x3 = state_[3];
        std::uint32_t x4 = state_[4], x5 = state_[5], x6 = state_[6], x7 = state_[7];
        std::uint32_t x8 = state_[8], x9 = state_[9], x10 = state_[10], x11 = state_[11];
        std::uint32_t x12 = counter, x13 = state_[13], x14 = state_[14], x15 = state_[15];

        for (int round = 0; round < 10; round++) {
            detail::quarter_round(x0, x4, x8, x12);
            detail::quarter_round(x1, x5, x9, x13);
            detail::quarter_round(x2, x6, x10, x14);
            detail::quarter_round(x3, x7, x11, x15);
            detail::quarter_round(x0, x5, x10, x15);
            detail::quarter_round(x1, x6, x11, x12);
            detail::quarter_round(x2, x7, x8, x13);
            detail::quarter_round(x3, x4, x9, x14);
        }

        x0 += state_[0]; x1 += state_[1]; x2 += state_[2]; x3 += state_[3];
        x4 += state_[4]; x5 += state_[5]; x6 += state_[6]; x7 += state_[7];
        x8 += state_[8]; x9 += state_[9]; x10 += state_[10]; x11 += state_[11];
        x12 += counter; x13 += state_[13]; x14 += state_[14]; x15 += state_[15];

        KeystreamBlock out;
        store32_le(out.data() + 0, x0);
        store32_le(out.data() + 4, x1);
        store32_le(out.data() + 8, x2);
        store32_le(out.data() + 12, x3);
        store32_le(out.data() + 16, x4);
        store32_le(out.data() + 20, x5);
        store32_le(out.data() + 24, x6);
        store32_le(out.data() + 28, x7);
        store32_le(out.data() + 32, x8);
        store32_le(out.data() + 36, x9);
        store32_le(out.data() + 40, x10);
        store32_le(out.data() + 44, x11);
        store32_le(out.data() + 48, x12);
        store32_le(out.data() + 52, x13);
        store32_le(out.data() + 56, x14);
        store32_le(out.data() + 60, x15);
        return out;
    }

    // XORs the keystream starting at block `counter` into out. in and out may
    // alias exactly; any other overlap is undefined. Keystream addressing is
    // random access: the same (counter, offset) always selects the same byte.
    void xor_stream(ByteView in, std::uint8_t* out, std::uint32_t counter) const {
        constexpr std::size_t max_blocks = std::numeric_limits<std::uint32_t>::max();
        if (in.size() > max_blocks * 64) {
            throw std::length_error("ChaCha20: message exceeds counter range");
        }
        std::size_t offset = 0;
        while (offset < in.size()) {
            KeystreamBlock ks = block(counter++);
            std::size_t n = std::min<std::size_t>(64, in.size() - offset);
            for (std::size_t i = 0; i < n; i++) {
                out[offset + i] = static_cast<std::uint8_t>(in[offset + i] ^ ks[i]);
            }
            offset += n;
        }
    }

private:
    std::uint32_t state_[16];
};

} // namespace chachabench
