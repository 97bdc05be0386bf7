#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <vector>

#include <sodium.h>

namespace sslc {

using Hash32 = std::array<uint8_t, 32>;

// BLAKE2b-256 (libsodium generichash). Used for commitment trees and the
// Fiat-Shamir transcript, where the hash is only ever evaluated natively.
class Blake {
public:
    Blake() { crypto_generichash_init(&st_, nullptr, 0, 32); }

    Blake& update(const void* data, size_t len) {
        crypto_generichash_update(&st_, static_cast<const unsigned char*>(data), len);
        return *this;
    }
    Blake& update(std::string_view s) { return update(s.data(), s.size()); }
    Blake& update_u64(uint64_t x) {
        uint8_t b[8];
        for (int i = 0; i < 8; i++) b[i] = static_cast<uint8_t>(x >> (8 * i));
        return update(b, 8);
    }

    Hash32 finish() {
        Hash32 out;
        crypto_generichash_final(&st_, out.data(), out.size());
        return out;
    }

    static Hash32 digest(const void* data, size_t len) {
        Hash32 out;
        crypto_generichash(out.data(), out.size(), static_cast<const unsigned char*>(data), len,
                           nullptr, 0);
        return out;
    }
    static Hash32 digest(std::string_view s) { return digest(s.data(), s.size()); }

private:
    crypto_generichash_state st_;
};

inline std::string hex_encode(const uint8_t* data, size_t len) {
    static const char* k = "0123456789abcdef";
    std::string s;
    s.reserve(len * 2);
    for (size_t i = 0; i < len; i++) {
        s.push_back(k[data[i] >> 4]);
        s.push_back(k[data[i] & 15]);
    }
    return s;
}

inline std::string hex_encode(const Hash32& h) { return hex_encode(h.data(), h.size()); }

inline bool hex_decode(std::string_view s, std::vector<uint8_t>& out) {
    if (s.size() % 2) return false;
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    out.clear();
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        int hi = nib(s[i]), lo = nib(s[i + 1]);
        if (hi < 0 || lo < 0) return false;
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return true;
}

}  // namespace sslc
