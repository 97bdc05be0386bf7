#pragma once

#include <cstdint>
#include <vector>

namespace sslc {

// Arithmetic in the 64-bit Goldilocks field, p = 2^64 - 2^32 + 1.
// The multiplicative group has order 2^32 * (2^32 - 1), so radix-2 NTTs
// up to size 2^32 are available.
struct Fe {
    static constexpr uint64_t P = 0xffffffff00000001ull;
    static constexpr uint64_t EPSILON = 0xffffffffull;  // 2^64 mod p

    uint64_t v = 0;

    constexpr Fe() = default;
    constexpr explicit Fe(uint64_t x) : v(x >= P ? x - P : x) {}

    static constexpr Fe zero() { return Fe(); }
    static constexpr Fe one() { return Fe(1); }

    static Fe from_u64(uint64_t x) { return Fe(x >= P ? x - P : x); }
    static Fe from_i64(int64_t x) {
        return x >= 0 ? Fe(static_cast<uint64_t>(x)) : Fe(P - static_cast<uint64_t>(-x));
    }

    friend Fe operator+(Fe a, Fe b) {
        uint64_t s = a.v + b.v;
        if (s < a.v || s >= P) s -= P;
        return Fe::raw(s);
    }
    friend Fe operator-(Fe a, Fe b) {
        uint64_t s = a.v - b.v;
        if (a.v < b.v) s += P;
        return Fe::raw(s);
    }
    friend Fe operator*(Fe a, Fe b) { return Fe::raw(mul_reduce(a.v, b.v)); }

    Fe& operator+=(Fe o) { *this = *this + o; return *this; }
    Fe& operator-=(Fe o) { *this = *this - o; return *this; }
    Fe& operator*=(Fe o) { *this = *this * o; return *this; }

    friend bool operator==(Fe a, Fe b) { return a.v == b.v; }
    friend bool operator!=(Fe a, Fe b) { return a.v != b.v; }

    Fe neg() const { return v == 0 ? Fe() : Fe::raw(P - v); }

    Fe pow(uint64_t e) const {
        Fe r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    // Inverse via Fermat; undefined for zero (returns zero).
    Fe inv() const { return pow(P - 2); }

    bool is_zero() const { return v == 0; }

    static constexpr Fe raw(uint64_t x) {
        Fe f;
        f.v = x;
        return f;
    }

    // Reduce a 128-bit product. Uses 2^64 = 2^32 - 1 (mod p).
    static uint64_t mul_reduce(uint64_t a, uint64_t b) {
        unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
        return reduce128(t);
    }

    static uint64_t reduce128(unsigned __int128 t) {
        uint64_t lo = static_cast<uint64_t>(t);
        uint64_t hi = static_cast<uint64_t>(t >> 64);
        uint64_t hi_hi = hi >> 32;
        uint64_t hi_lo = hi & 0xffffffffull;
        // lo - hi_hi (mod p)
        uint64_t r = lo - hi_hi;
        if (lo < hi_hi) r -= EPSILON;  // wraps: equivalent to adding p
        uint64_t t1 = hi_lo * EPSILON;
        uint64_t s = r + t1;
        if (s < r) s += EPSILON;  // carry: 2^64 = epsilon (mod p)
        if (s >= P) s -= P;
        return s;
    }

    // Generator of the full multiplicative group.
    static constexpr uint64_t MULTIPLICATIVE_GENERATOR = 7;
    static constexpr unsigned TWO_ADICITY = 32;

    // Primitive 2^bits-th root of unity.
    static Fe two_adic_root(unsigned bits);
};

inline Fe Fe::two_adic_root(unsigned bits) {
    // g^( (p-1) / 2^32 ) has order exactly 2^32; square down to the request.
    Fe r = Fe(MULTIPLICATIVE_GENERATOR).pow((P - 1) >> TWO_ADICITY);
    for (unsigned i = bits; i < TWO_ADICITY; i++) r *= r;
    return r;
}

// Quadratic extension F_p[u] / (u^2 - 7). 7 is a non-residue mod p
// (checked in tests), so this is a field.
struct Fe2 {
    static constexpr uint64_t W = 7;
    Fe a, b;  // a + b*u

    constexpr Fe2() = default;
    constexpr Fe2(Fe a_, Fe b_) : a(a_), b(b_) {}
    explicit constexpr Fe2(Fe a_) : a(a_) {}

    static Fe2 zero() { return {}; }
    static Fe2 one() { return Fe2(Fe::one()); }
    static Fe2 from(Fe x) { return Fe2(x); }

    friend Fe2 operator+(Fe2 x, Fe2 y) { return {x.a + y.a, x.b + y.b}; }
    friend Fe2 operator-(Fe2 x, Fe2 y) { return {x.a - y.a, x.b - y.b}; }
    friend Fe2 operator*(Fe2 x, Fe2 y) {
        Fe t0 = x.a * y.a;
        Fe t1 = x.b * y.b;
        Fe t2 = (x.a + x.b) * (y.a + y.b);
        return {t0 + Fe(W) * t1, t2 - t0 - t1};
    }
    friend Fe2 operator*(Fe x, Fe2 y) { return {x * y.a, x * y.b}; }
    friend Fe2 operator*(Fe2 x, Fe y) { return {x.a * y, x.b * y}; }

    Fe2& operator+=(Fe2 o) { *this = *this + o; return *this; }
    Fe2& operator-=(Fe2 o) { *this = *this - o; return *this; }
    Fe2& operator*=(Fe2 o) { *this = *this * o; return *this; }

    friend bool operator==(Fe2 x, Fe2 y) { return x.a == y.a && x.b == y.b; }
    friend bool operator!=(Fe2 x, Fe2 y) { return !(x == y); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }

    Fe2 inv() const {
        // 1/(a+bu) = (a-bu) / (a^2 - 7 b^2)
        Fe norm = a * a - Fe(W) * (b * b);
        Fe ni = norm.inv();
        return {a * ni, (b * ni).neg()};
    }

    Fe2 pow(uint64_t e) const {
        Fe2 r = one(), x = *this;
        while (e) {
            if (e & 1) r *= x;
            x *= x;
            e >>= 1;
        }
        return r;
    }
};

// Batch inversion (Montgomery's trick); zero entries stay zero.
template <class F>
void batch_invert(std::vector<F>& xs) {
    std::vector<F> prefix(xs.size());
    F acc = F::one();
    for (size_t i = 0; i < xs.size(); i++) {
        prefix[i] = acc;
        if (!xs[i].is_zero()) acc *= xs[i];
    }
    F inv = acc.inv();
    for (size_t i = xs.size(); i-- > 0;) {
        if (xs[i].is_zero()) continue;
        F x = xs[i];
        xs[i] = inv * prefix[i];
        inv *= x;
    }
}

}  // namespace sslc
