#include "sslc/poseidon.hpp"

namespace sslc {
namespace poseidon {

static inline Fe sbox(Fe x) {
    Fe x2 = x * x;
    Fe x3 = x2 * x;
    Fe x6 = x3 * x3;
    return x6 * x;
}

static inline void mds_mul(State& s, const SpongeParams& sp) {
    State out;
    for (unsigned i = 0; i < SpongeParams::WIDTH; i++) {
        unsigned __int128 acc_lo = 0, acc_hi = 0;
        for (unsigned j = 0; j < SpongeParams::WIDTH; j++) {
            unsigned __int128 t =
                static_cast<unsigned __int128>(sp.mds[i][j].v) * s[j].v;
            acc_lo += static_cast<uint64_t>(t);
            acc_hi += static_cast<uint64_t>(t >> 64);
        }
        // acc_hi < 2^68, so acc_hi * (2^64 mod p) stays within 128 bits
        Fe lo = Fe::raw(Fe::reduce128(acc_lo));
        Fe hi = Fe::raw(Fe::reduce128(acc_hi * Fe::EPSILON));
        out[i] = lo + hi;
    }
    s = out;
}

void permute(State& s) {
    const auto& sp = SystemParams::get().sponge;
    constexpr unsigned HALF = SpongeParams::FULL_ROUNDS / 2;
    unsigned r = 0;
    for (unsigned k = 0; k < HALF; k++, r++) {
        for (unsigned i = 0; i < SpongeParams::WIDTH; i++)
            s[i] = sbox(s[i] + sp.round_constants[r][i]);
        mds_mul(s, sp);
    }
    for (unsigned k = 0; k < SpongeParams::PARTIAL_ROUNDS; k++, r++) {
        for (unsigned i = 0; i < SpongeParams::WIDTH; i++) s[i] += sp.round_constants[r][i];
        s[0] = sbox(s[0]);
        mds_mul(s, sp);
    }
    for (unsigned k = 0; k < HALF; k++, r++) {
        for (unsigned i = 0; i < SpongeParams::WIDTH; i++)
            s[i] = sbox(s[i] + sp.round_constants[r][i]);
        mds_mul(s, sp);
    }
}

Digest sponge(std::span<const Fe> input, uint64_t tag) {
    State s{};
    s[SpongeParams::RATE] = Fe::from_u64(tag);
    s[SpongeParams::RATE + 1] = Fe::from_u64(input.size());
    size_t off = 0;
    do {
        for (unsigned i = 0; i < SpongeParams::RATE; i++)
            if (off + i < input.size()) s[i] += input[off + i];
        permute(s);
        off += SpongeParams::RATE;
    } while (off < input.size());
    Digest d;
    for (int i = 0; i < 4; i++) d.e[i] = s[i];
    return d;
}

}  // namespace poseidon

Digest hash_elements(std::span<const Fe> input) {
    return poseidon::sponge(input, DomainTags::ELEMENTS);
}

Digest hash_two(const Digest& left, const Digest& right) {
    std::array<Fe, 8> in{left.e[0], left.e[1], left.e[2], left.e[3],
                         right.e[0], right.e[1], right.e[2], right.e[3]};
    return poseidon::sponge(in, DomainTags::NODE2);
}

Digest hash_lone(const Digest& left) {
    return poseidon::sponge(left.e, DomainTags::NODE1);
}

}  // namespace sslc
