#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>

#include "bytes.hpp"

namespace chachabench {

// Poly1305 one-time authenticator (RFC 8439): evaluates the message as a
// polynomial over GF(2^130 - 5) keyed by clamped r, then adds s mod 2^128.
// Limbs use radix 2^26 so products stay within 64 bits.
class Poly1305 {
public:
    explicit Poly1305(const Key256& key) {
        std::uint32_t t0 = load32_le(key.data() + 0);
        std::uint32_t t1 = load32_le(key.data() + 4);
        std::uint32_t t2 = load32_le(key.data() + 8);
        std::uint32_t t3 = load32_le(key.data() + 12);

        // r is clamped: top bits of r[3,7,11,15] and low bits of r[4,8,12] clear.
        r_[0] = t0 & 0x03ffffff;
        r_[1] = ((t0 >> 26) | (t1 << 6)) & 0x03ffff03;
        r_[2] = ((t1 >> 20) | (t2 << 12)) & 0x03ffc0ff;
        r_[3] = ((t2 >> 14) | (t3 << 18)) & 0x03f03fff;
        r_[4] = (t3 >> 8) & 0x000fffff;

        s_[0] = load32_le(key.data() + 16);
        s_[1] = load32_le(key.data() + 20);
        s_[2] = load32_le(key.data() + 24);
        s_[3] = load32_le(key.data() + 28);

        h_[0] = h_[1] = h_[2] = h_[3] = h_[4] = 0;
        buffered_ = 0;
    }

    void update(ByteView data) {
        if (data.empty()) {
            return;
        }
        std::size_t offset = 0;
        if (buffered_ != 0) {
            std::size_t n = std::min<std::size_t>(16 - buffered_, data.size());
            std::memcpy(buffer_ + buffered_, data.data(), n);
            buffered_ += n;
            offset = n;
            if (buffered_ < 16) {
                return;
            }
            absorb(buffer_, 0x01000000);
            buffered_ = 0;
        }
        while (data.size() - offset >= 16) {
            absorb(data.data() + offset, 0x01000000);
            offset += 16;
        }
        if (offset < data.size()) {
            buffered_ = data.size() - offset;
            std::memcpy(buffer_, data.data() + offset, buffered_);
        }
    }

    Tag128 finalize() {
        if (buffered_ != 0) {
            // Partial final block: append 0x01 then zero-pad, without the
            // implicit 2^128 term a full block carries.
            buffer_[buffered_] = 1;
            for (std::size_t i = buffered_ + 1; i < 16; i++) {
                buffer_[i] = 0;
            }
            absorb(buffer_, 0);
            buffered_ = 0;
        }

        std::uint32_t h0 = h_[0], h1 = h_[1], h2 = h_[2], h3 = h_[3], h4 = h_[4];

        // Full carry propagation.
        std::uint32_t c;
        c = h1 >> 26; h1 &= 0x03ffffff;
        h2 += c; c = h2 >> 26; h2 &= 0x03ffffff;
        h3 += c; c = h3 >> 26; h3 &= 0x03ffffff;
        h4 += c; c = h4 >> 26; h4 &= 0x03ffffff;
        h0 += c * 5; c = h0 >> 26; h0 &= 0x03ffffff;
        h1 += c;

        // g = h + 5 - 2^130; select g when h >= 2^130 - 5, without branching.
        std::uint32_t g0, g1, g2, g3, g4;
        g0 = h0 + 5; c = g0 >> 26; g0 &= 0x03ffffff;
        g1 = h1 + c; c = g1 >> 26; g1 &= 0x03ffffff;
        g2 = h2 + c; c = g2 >> 26; g2 &= 0x03ffffff;
        g3 = h3 + c; c = g3 >> 26; g3 &= 0x03ffffff;
        g4 = h4 + c - (1u << 26);

        std::uint32_t mask = (g4 >> 31) - 1;
        h0 = (h0 & ~mask) | (g0 & mask);
        h1 = (h1 & ~mask) | (g1 & mask);
        h2 = (h2 & ~mask) | (g2 & mask);
        h3 = (h3 & ~mask) | (g3 & mask);
        h4 = (h4 & ~mask) | (g4 & mask);

        // Repack to radix 2^32 and add s mod 2^128.
        std::uint64_t f;
        std::uint32_t o0, o1, o2, o3;
        o0 = h0 | (h1 << 26);
        o1 = (h1 >> 6) | (h2 << 20);
        o2 = (h2 >> 12) | (h3 << 14);
        o3 = (h3 >> 18) | (h4 << 8);

        f = static_cast<std::uint64_t>(o0) + s_[0]; o0 = static_cast<std::uint32_t>(f);
        f = static_cast<std::uint64_t>(o1) + s_[1] + (f >> 32); o1 = static_cast<std::uint32_t>(f);
        f = static_cast<std::uint64_t>(o2) + s_[2] + (f >> 32); o2 = static_cast<std::uint32_t>(f);
        f = static_cast<std::uint64_t>(o3) + s_[3] + (f >> 32); o3 = static_cast<std::uint32_t>(f);

        Tag128 tag;
        store32_le(tag.data() + 0, o0);
        store32_le(tag.data() + 4, o1);
        store32_le(tag.data() + 8, o2);
        store32_le(tag.data() + 12, o3);
        return tag;
    }

    static Tag128 mac(const Key256& key, ByteView data) {
        Poly1305 ctx(key);
        ctx.update(data);
        return ctx.finalize();
    }

private:
    // Adds one 16-byte block (plus hibit, 2^128 for full blocks) into the
    // accumulator and multiplies by r modulo 2^130 - 5.
    void absorb(const std::uint8_t* block, std::uint32_t hibit) {
        std::uint32_t t0 = load32_le(block + 0);
        std::uint32_t t1 = load32_le(block + 4);
        std::uint32_t t2 = load32_le(block + 8);
        std::uint32_t t3 = load32_le(block + 12);

        std::uint32_t h0 = h_[0] + (t0 & 0x03ffffff);
        std::uint32_t h1 = h_[1] + (((t0 >> 26) | (t1 << 6)) & 0x03ffffff);
        std::uint32_t h2 = h_[2] + (((t1 >> 20) | (t2 << 12)) & 0x03ffffff);
        std::uint32_t h3 = h_[3] + (((t2 >> 14) | (t3 << 18)) & 0x03ffffff);
        std::uint32_t h4 = h_[4] + ((t3 >> 8) | hibit);

        const std::uint32_t r0 = r_[0], r1 = r_[1], r2 = r_[2], r3 = r_[3], r4 = r_[4];
        const std::uint32_t rr1 = r1 * 5, rr2 = r2 * 5, rr3 = r3 * 5, rr4 = r4 * 5;

        auto m = [](std::uint32_t a, std::uint32_t b) {
            return static_cast<std::uint64_t>(a) * b;
        };

        std::uint64_t d0 = m(h0, r0) + m(h1, rr4) + m(h2, rr3) + m(h3, rr2) + m(h4, rr1);
        std::uint64_t d1 = m(h0, r1) + m(h1, r0) + m(h2, rr4) + m(h3, rr3) + m(h4, rr2);
        std::uint64_t d2 = m(h0, r2) + m(h1, r1) + m(h2, r0) + m(h3, rr4) + m(h4, rr3);
        std::uint64_t d3 = m(h0, r3) + m(h1, r2) + m(h2, r1) + m(h3, r0) + m(h4, rr4);
        std::uint64_t d4 = m(h0, r4) + m(h1, r3) + m(h2, r2) + m(h3, r1) + m(h4, r0);

        std::uint64_t c;
        c = d0 >> 26; h0 = static_cast<std::uint32_t>(d0) & 0x03ffffff;
        d1 += c; c = d1 >> 26; h1 = static_cast<std::uint32_t>(d1) & 0x03ffffff;
        d2 += c; c = d2 >> 26; h2 = static_cast<std::uint32_t>(d2) & 0x03ffffff;
        d3 += c; c = d3 >> 26; h3 = static_cast<std::uint32_t>(d3) & 0x03ffffff;
        d4 += c; c = d4 >> 26; h4 = static_cast<std::uint32_t>(d4) & 0x03ffffff;
        h0 += static_cast<std::uint32_t>(c) * 5; c = h0 >> 26; h0 &= 0x03ffffff;
        h1 += static_cast<std::uint32_t>(c);

        h_[0] = h0; h_[1] = h1; h_[2] = h2; h_[3] = h3; h_[4] = h4;
    }

    std::uint32_t r_[5];
    std::uint32_t s_[4];
    std::uint32_t h_[5];
    std::uint8_t buffer_[16];
    std::size_t buffered_;
};

} // namespace chachabench
