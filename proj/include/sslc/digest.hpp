#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "sslc/blake.hpp"
#include "sslc/field.hpp"

namespace sslc {

// Fixed-width 4-element hash output; equality is element-wise, ordering
// is lexicographic over the canonical integer representatives.
struct Digest {
    std::array<Fe, 4> e{};

    Fe& operator[](size_t i) { return e[i]; }
    Fe operator[](size_t i) const { return e[i]; }

    friend bool operator==(const Digest& a, const Digest& b) { return a.e == b.e; }
    friend bool operator!=(const Digest& a, const Digest& b) { return !(a == b); }
    friend std::strong_ordering operator<=>(const Digest& a, const Digest& b) {
        for (int i = 0; i < 4; i++) {
            if (a.e[i].v != b.e[i].v) return a.e[i].v <=> b.e[i].v;
        }
        return std::strong_ordering::equal;
    }

    bool is_zero() const {
        return e[0].is_zero() && e[1].is_zero() && e[2].is_zero() && e[3].is_zero();
    }

    // 64 hex chars: four limbs, each little-endian, in order.
    std::string to_hex() const {
        std::string s;
        for (auto x : e) {
            uint8_t b[8];
            for (int i = 0; i < 8; i++) b[i] = static_cast<uint8_t>(x.v >> (8 * i));
            s += hex_encode(b, 8);
        }
        return s;
    }

    static bool from_hex(std::string_view s, Digest& out) {
        std::vector<uint8_t> bytes;
        if (!hex_decode(s, bytes) || bytes.size() != 32) return false;
        for (int i = 0; i < 4; i++) {
            uint64_t v = 0;
            for (int j = 0; j < 8; j++) v |= static_cast<uint64_t>(bytes[i * 8 + j]) << (8 * j);
            if (v >= Fe::P) return false;
            out.e[i] = Fe::raw(v);
        }
        return true;
    }
};

}  // namespace sslc
