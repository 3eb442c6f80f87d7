#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>

#include "bytes.hpp"
#include "chacha20.hpp"
#include "poly1305.hpp"

namespace chachabench {

// ChaCha20-Poly1305 AEAD (RFC 8439). The one-time Poly1305 key is the first
// half of keystream block 0; ciphertext starts at block counter 1. The tag
// covers aad || pad16(aad) || ciphertext || pad16(ciphertext) ||
// le64(aad length) || le64(ciphertext length).

inline Key256 poly1305_key_gen(const Key256& key, const Nonce96& nonce) {
    KeystreamBlock block0 = ChaCha20(key, nonce).block(0);
    Key256 otk{};
    std::copy(block0.begin(), block0.begin() + 32, otk.begin());
    return otk;
}

namespace detail {

inline Tag128 compute_tag(const Key256& otk, ByteView aad, ByteView ciphertext) {
    static constexpr std::uint8_t zeros[16] = {};
    Poly1305 mac(otk);
    mac.update(aad);
    if (aad.size() % 16 != 0) {
        mac.update({zeros, 16 - aad.size() % 16});
    }
    mac.update(ciphertext);
    if (ciphertext.size() % 16 != 0) {
        mac.update({zeros, 16 - ciphertext.size() % 16});
    }
    std::uint8_t lengths[16];
    store64_le(lengths, aad.size());
    store64_le(lengths + 8, ciphertext.size());
    mac.update({lengths, 16});
    return mac.finalize();
}

} // namespace detail

// Encrypts plaintext into ciphertext_out (same length, may alias plaintext
// exactly) and returns the tag.
inline Tag128 aead_encrypt(const Key256& key, const Nonce96& nonce, ByteView plaintext,
                           ByteView aad, std::uint8_t* ciphertext_out) {
    ChaCha20 cipher(key, nonce);
    KeystreamBlock block0 = cipher.block(0);
    Key256 otk{};
    std::copy(block0.begin(), block0.begin() + 32, otk.begin());
    cipher.xor_stream(plaintext, ciphertext_out, 1);
    return detail::compute_tag(otk, aad, {ciphertext_out, plaintext.size()});
}

struct Sealed {
    Bytes ciphertext;
    Tag128 tag;
};

inline Sealed aead_encrypt(const Key256& key, const Nonce96& nonce, ByteView plaintext,
                           ByteView aad) {
    Sealed out;
    out.ciphertext.resize(plaintext.size());
    out.tag = aead_encrypt(key, nonce, plaintext, aad, out.ciphertext.data());
    return out;
}

// Verifies the tag before any plaintext is produced; returns nullopt on tag
// mismatch. Tag comparison is fixed-time.
inline std::optional<Bytes> aead_decrypt(const Key256& key, const Nonce96& nonce,
                                         ByteView ciphertext, const Tag128& tag, ByteView aad) {
    ChaCha20 cipher(key, nonce);
    KeystreamBlock block0 = cipher.block(0);
    Key256 otk{};
    std::copy(block0.begin(), block0.begin() + 32, otk.begin());
    Tag128 expected = detail::compute_tag(otk, aad, ciphertext);
    if (!ct_equal(expected, tag)) {
        return std::nullopt;
    }
    Bytes plaintext(ciphertext.size());
    cipher.xor_stream(ciphertext, plaintext.data(), 1);
    return plaintext;
}

} // namespace chachabench
