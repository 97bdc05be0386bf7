#include "sslc/params.hpp"

#include <sstream>

#include "sslc/rng.hpp"

namespace sslc {

static SystemParams build_params() {
    SystemParams p;

    // Cauchy matrix: m[i][j] = 1 / (i + 12 + j); entries are nonzero and
    // all square submatrices are nonsingular.
    for (unsigned i = 0; i < SpongeParams::WIDTH; i++)
        for (unsigned j = 0; j < SpongeParams::WIDTH; j++)
            p.sponge.mds[i][j] = Fe(i + SpongeParams::WIDTH + j).inv();

    // Round constants from a seeded stream; seed is the hash of the
    // version tag so the constants are pinned by the version string.
    Hash32 seed_h = Blake::digest(p.version + "/poseidon-rc");
    uint64_t seed = 0;
    for (int i = 0; i < 8; i++) seed |= static_cast<uint64_t>(seed_h[i]) << (8 * i);
    SplitMix64 rng(seed);
    for (auto& row : p.sponge.round_constants)
        for (auto& c : row) {
            uint64_t v;
            do { v = rng.next(); } while (v >= Fe::P);
            c = Fe::raw(v);
        }
    return p;
}

const SystemParams& SystemParams::get() {
    static const SystemParams p = build_params();
    return p;
}

std::string SystemParams::canonical_bytes() const {
    std::string out;
    auto put_u64 = [&](uint64_t x) {
        for (int i = 0; i < 8; i++) out.push_back(static_cast<char>(x >> (8 * i)));
    };
    out += version;
    out.push_back('\0');
    put_u64(Fe::P);
    put_u64(SpongeParams::WIDTH);
    put_u64(SpongeParams::RATE);
    put_u64(SpongeParams::FULL_ROUNDS);
    put_u64(SpongeParams::PARTIAL_ROUNDS);
    put_u64(SpongeParams::SBOX);
    for (auto& row : sponge.mds)
        for (auto c : row) put_u64(c.v);
    for (auto& row : sponge.round_constants)
        for (auto c : row) put_u64(c.v);
    put_u64(DomainTags::ELEMENTS);
    put_u64(DomainTags::NODE2);
    put_u64(DomainTags::NODE1);
    put_u64(DomainTags::RECORD);
    put_u64(DomainTags::ROOTSACC);
    put_u64(DomainTags::GENESIS);
    put_u64(DomainTags::SPEC);
    put_u64(fri.blowup_bits);
    put_u64(fri.num_queries);
    put_u64(fri.grind_bits);
    put_u64(fri.final_poly_len);
    return out;
}

}  // namespace sslc
