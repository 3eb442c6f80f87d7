#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>

#include "aead.hpp"
#include "bytes.hpp"
#include "entropy.hpp"

namespace chachabench {

// Self-contained wire format: nonce (12) || ciphertext || tag (16). A fresh
// nonce rides in front of every message, so the receiver needs only the key.

inline constexpr std::size_t envelope_overhead = 12 + 16;

enum class OpenStatus {
    ok,
    malformed,   // too short to contain nonce and tag
    auth_failed, // tag mismatch: corrupted, truncated, or wrong key/aad
};

struct OpenResult {
    OpenStatus status = OpenStatus::malformed;
    Bytes plaintext;

    explicit operator bool() const { return status == OpenStatus::ok; }
};

inline Bytes seal_with_nonce(const Key256& key, const Nonce96& nonce, ByteView plaintext,
                             ByteView aad = {}) {
    Bytes out(envelope_overhead + plaintext.size());
    std::copy(nonce.begin(), nonce.end(), out.begin());
    Tag128 tag = aead_encrypt(key, nonce, plaintext, aad, out.data() + 12);
    std::copy(tag.begin(), tag.end(), out.end() - 16);
    return out;
}

inline Bytes seal(const Key256& key, ByteView plaintext, ByteView aad, EntropySource& entropy) {
    return seal_with_nonce(key, entropy.nonce(), plaintext, aad);
}

inline Bytes seal(const Key256& key, ByteView plaintext, ByteView aad = {}) {
    SystemEntropy entropy;
    return seal(key, plaintext, aad, entropy);
}

inline OpenResult open(const Key256& key, ByteView sealed, ByteView aad = {}) {
    OpenResult result;
    if (sealed.size() < envelope_overhead) {
        result.status = OpenStatus::malformed;
        return result;
    }
    Nonce96 nonce;
    std::copy(sealed.begin(), sealed.begin() + 12, nonce.begin());
    Tag128 tag;
    std::copy(sealed.end() - 16, sealed.end(), tag.begin());
    ByteView ciphertext = sealed.subspan(12, sealed.size() - envelope_overhead);

    auto plaintext = aead_decrypt(key, nonce, ciphertext, tag, aad);
    if (!plaintext) {
        result.status = OpenStatus::auth_failed;
        return result;
    }
    result.status = OpenStatus::ok;
    result.plaintext = std::move(*plaintext);
    return result;
}

} // namespace chachabench
