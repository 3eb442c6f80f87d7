#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "aead.hpp"
#include "bytes.hpp"
#include "chacha20.hpp"
#include "envelope.hpp"
#include "poly1305.hpp"

namespace chachabench {

// Known-answer checks against the RFC 8439 vectors, runnable in-process so a
// deployment can refuse to measure or seal with a miscompiled build. On a
// mismatch the outcome names the first differing byte.

struct CheckOutcome {
    bool ok = true;
    std::string detail; // empty on success

    static CheckOutcome pass() { return {}; }
    static CheckOutcome fail(std::string why) { return {false, std::move(why)}; }
};

namespace selftest_detail {

inline CheckOutcome compare_bytes(ByteView actual, ByteView expected) {
    if (actual.size() != expected.size()) {
        return CheckOutcome::fail("length mismatch: expected " + std::to_string(expected.size()) +
                                  " bytes, got " + std::to_string(actual.size()));
    }
    for (std::size_t i = 0; i < actual.size(); i++) {
        if (actual[i] != expected[i]) {
            return CheckOutcome::fail(
                "first differing byte at offset " + std::to_string(i) + ": expected " +
                to_hex({&expected[i], 1}) + ", got " + to_hex({&actual[i], 1}));
        }
    }
    return CheckOutcome::pass();
}

inline CheckOutcome compare_words(const std::uint32_t* actual, const std::uint32_t* expected,
                                  std::size_t count) {
    Bytes a(count * 4), e(count * 4);
    for (std::size_t i = 0; i < count; i++) {
        store32_le(a.data() + 4 * i, actual[i]);
        store32_le(e.data() + 4 * i, expected[i]);
    }
    return compare_bytes(a, e);
}

inline const std::string_view sunscreen_text =
    "Ladies and Gentlemen of the class of '99: If I could offer you "
    "only one tip for the future, sunscreen would be it.";

inline ByteView sunscreen_plaintext() {
    return {reinterpret_cast<const std::uint8_t*>(sunscreen_text.data()),
            sunscreen_text.size()};
}

inline CheckOutcome check_quarter_round() {
    std::uint32_t words[4] = {0x11111111, 0x01020304, 0x9b8d6f43, 0x01234567};
    const std::uint32_t expected[4] = {0xea2a92f4, 0xcb1cf8ce, 0x4581472e, 0x5881c4bb};
    detail::quarter_round(words[0], words[1], words[2], words[3]);
    return compare_words(words, expected, 4);
}

inline CheckOutcome check_quarter_round_on_state() {
    std::uint32_t state[16] = {
        0x879531e0, 0xc5ecf37d, 0x516461b1, 0xc9a62f8a,
        0x44c20ef3, 0x3390af7f, 0xd9fc690b, 0x2a5f714c,
        0x53372767, 0xb00a5631, 0x974c541a, 0x359e9963,
        0x5c971061, 0x3d631689, 0x2098d9d6, 0x91dbd320,
    };
    const std::uint32_t expected[16] = {
        0x879531e0, 0xc5ecf37d, 0xbdb886dc, 0xc9a62f8a,
        0x44c20ef3, 0x3390af7f, 0xd9fc690b, 0xcfacafd2,
        0xe46bea80, 0xb00a5631, 0x974c541a, 0x359e9963,
        0x5c971061, 0xccc07c79, 0x2098d9d6, 0x91dbd320,
    };
    detail::quarter_round(state[2], state[7], state[8], state[13]);
    return compare_words(state, expected, 16);
}

inline CheckOutcome check_block_zero_key() {
    Key256 key{};
    Nonce96 nonce{};
    KeystreamBlock block = ChaCha20(key, nonce).block(0);
    return compare_bytes(block, from_hex(
        "76b8e0ada0f13d90405d6ae55386bd28bdd219b8a08ded1aa836efcc8b770dc7"
        "da41597c5157488d7724e03fb8d84a376a43b8f41518a11cc387b669b2ee6586"));
}

inline CheckOutcome check_block_counter_one() {
    Key256 key = array_from_hex<32>(
        "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
    Nonce96 nonce = array_from_hex<12>("000000090000004a00000000");
    KeystreamBlock block = ChaCha20(key, nonce).block(1);
    return compare_bytes(block, from_hex(
        "10f1e7e4d13b5915500fdd1fa32071c4c7d1f4c733c068030422aa9ac3d46c4e"
        "d2826446079faa0914c2d705d98b02a2b5129cd1de164eb9cbd083e8a2503c4e"));
}

inline CheckOutcome check_stream_encryption() {
    Key256 key = array_from_hex<32>(
        "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
    Nonce96 nonce = array_from_hex<12>("000000000000004a00000000");
    ByteView plaintext = sunscreen_plaintext();
    Bytes ciphertext(plaintext.size());
    ChaCha20(key, nonce).xor_stream(plaintext, ciphertext.data(), 1);
    return compare_bytes(ciphertext, from_hex(
        "6e2e359a2568f98041ba0728dd0d6981e97e7aec1d4360c20a27afccfd9fae0b"
        "f91b65c5524733ab8f593dabcd62b3571639d624e65152ab8f530c359f0861d8"
        "07ca0dbf500d6a6156a38e088a22b65e52bc514d16ccf806818ce91ab7793736"
        "5af90bbf74a35be6b40b8eedf2785e42874d"));
}

inline CheckOutcome check_poly1305_tag() {
    Key256 key = array_from_hex<32>(
        "85d6be7857556d337f4452fe42d506a80103808afb0db2fd4abff6af4149f51b");
    std::string_view msg = "Cryptographic Forum Research Group";
    Tag128 tag = Poly1305::mac(
        key, {reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()});
    return compare_bytes(tag, from_hex("a8061dc1305136c6c22b8baf0c0127a9"));
}

inline CheckOutcome check_poly1305_key_gen() {
    Key256 key = array_from_hex<32>(
        "808182838485868788898a8b8c8d8e8f909192939495969798999a9b9c9d9e9f");
    Nonce96 nonce = array_from_hex<12>("000000000001020304050607");
    Key256 otk = poly1305_key_gen(key, nonce);
    return compare_bytes(otk, from_hex(
        "8ad5a08b905f81cc815040274ab29471a833b637e3fd0da508dbb8e2fdd1a646"));
}

inline Key256 aead_vector_key() {
    return array_from_hex<32>(
        "808182838485868788898a8b8c8d8e8f909192939495969798999a9b9c9d9e9f");
}

inline Bytes aead_vector_ciphertext() {
    return from_hex(
        "d31a8d34648e60db7b86afbc53ef7ec2a4aded51296e08fea9e2b5a736ee62d6"
        "3dbea45e8ca9671282fafb69da92728b1a71de0a9e060b2905d6a5b67ecd3b36"
        "92ddbd7f2d778b8c9803aee328091b58fab324e4fad675945585808b4831d7bc"
        "3ff4def08e4b7a9de576d26586cec64b6116");
}

inline CheckOutcome check_aead_seal() {
    Key256 key = aead_vector_key();
    Nonce96 nonce = array_from_hex<12>("070000004041424344454647");
    Bytes aad = from_hex("50515253c0c1c2c3c4c5c6c7");
    Sealed sealed = aead_encrypt(key, nonce, sunscreen_plaintext(), aad);
    CheckOutcome ct = compare_bytes(sealed.ciphertext, aead_vector_ciphertext());
    if (!ct.ok) {
        return ct;
    }
    return compare_bytes(sealed.tag, from_hex("1ae10b594f09e26a7e902ecbd0600691"));
}

inline CheckOutcome check_aead_open() {
    Key256 key = aead_vector_key();
    Nonce96 nonce = array_from_hex<12>("070000004041424344454647");
    Bytes aad = from_hex("50515253c0c1c2c3c4c5c6c7");
    Tag128 tag = array_from_hex<16>("1ae10b594f09e26a7e902ecbd0600691");
    auto plaintext = aead_decrypt(key, nonce, aead_vector_ciphertext(), tag, aad);
    if (!plaintext) {
        return CheckOutcome::fail("reference ciphertext rejected");
    }
    return compare_bytes(*plaintext, sunscreen_plaintext());
}

inline CheckOutcome check_aead_reject_tampered() {
    Key256 key = aead_vector_key();
    Nonce96 nonce = array_from_hex<12>("070000004041424344454647");
    Bytes aad = from_hex("50515253c0c1c2c3c4c5c6c7");
    Tag128 tag = array_from_hex<16>("1ae10b594f09e26a7e902ecbd0600691");
    Bytes ciphertext = aead_vector_ciphertext();
    ciphertext[0] ^= 0x01;
    if (aead_decrypt(key, nonce, ciphertext, tag, aad).has_value()) {
        return CheckOutcome::fail("tampered ciphertext accepted");
    }
    return CheckOutcome::pass();
}

inline CheckOutcome check_envelope_round_trip() {
    Key256 key = aead_vector_key();
    Nonce96 nonce = array_from_hex<12>("070000004041424344454647");
    Bytes sealed = seal_with_nonce(key, nonce, sunscreen_plaintext());
    if (sealed.size() != envelope_overhead + sunscreen_plaintext().size()) {
        return CheckOutcome::fail("sealed size law violated");
    }
    OpenResult opened = open(key, sealed);
    if (!opened) {
        return CheckOutcome::fail("sealed envelope rejected");
    }
    return compare_bytes(opened.plaintext, sunscreen_plaintext());
}

} // namespace selftest_detail

struct SelftestCase {
    std::string_view name;
    CheckOutcome (*run)();
};

inline const std::vector<SelftestCase>& selftest_cases() {
    static const std::vector<SelftestCase> cases = {
        {"quarter round", selftest_detail::check_quarter_round},
        {"quarter round on state", selftest_detail::check_quarter_round_on_state},
        {"keystream block, zero key", selftest_detail::check_block_zero_key},
        {"keystream block, counter one", selftest_detail::check_block_counter_one},
        {"stream encryption", selftest_detail::check_stream_encryption},
        {"poly1305 tag", selftest_detail::check_poly1305_tag},
        {"poly1305 key generation", selftest_detail::check_poly1305_key_gen},
        {"aead seal", selftest_detail::check_aead_seal},
        {"aead open", selftest_detail::check_aead_open},
        {"aead reject tampered", selftest_detail::check_aead_reject_tampered},
        {"envelope round trip", selftest_detail::check_envelope_round_trip},
    };
    return cases;
}

// Runs every known-answer check; reports one line per check when out is
// non-null. Returns false if any check fails.
inline bool run_selftest(std::ostream* out = nullptr) {
    bool all_ok = true;
    for (const SelftestCase& c : selftest_cases()) {
        const CheckOutcome outcome = c.run();
        all_ok = all_ok && outcome.ok;
        if (out) {
            if (outcome.ok) {
                *out << "ok   " << c.name << '\n';
            } else {
                *out << "FAIL " << c.name << " (" << outcome.detail << ")\n";
            }
        }
    }
    return all_ok;
}

} // namespace chachabench
