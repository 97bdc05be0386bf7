#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "sslc/blake.hpp"
#include "sslc/field.hpp"

namespace sslc {

// Pinned sponge/proof-system parameters, version "sslc-v1".
//
// The permutation is a Poseidon instance over Goldilocks: width 12
// (rate 8, capacity 4), x^7 S-box, 8 full + 22 partial rounds. The MDS
// matrix is the Cauchy matrix 1/(x_i + y_j) with x_i = i, y_j = 12 + j,
// which is MDS by construction. Round constants are derived from a
// SplitMix64 stream seeded with the version tag, rejection-sampled to
// canonical field elements.
//
// Everything here is serialized into a versioned parameter file whose
// digest is bound into every proof-system setup, so proofs are
// reproducible across builds.
struct SpongeParams {
    static constexpr unsigned WIDTH = 12;
    static constexpr unsigned RATE = 8;
    static constexpr unsigned CAPACITY = 4;
    static constexpr unsigned FULL_ROUNDS = 8;   // 4 before + 4 after
    static constexpr unsigned PARTIAL_ROUNDS = 22;
    static constexpr unsigned ROUNDS = FULL_ROUNDS + PARTIAL_ROUNDS;
    static constexpr unsigned SBOX = 7;

    std::array<std::array<Fe, WIDTH>, WIDTH> mds;
    std::array<std::array<Fe, WIDTH>, ROUNDS> round_constants;
};

// Capacity-slot domain tags; distinct tags give disjoint hash domains
// for leaves, internal nodes, lone nodes and the record sponges.
struct DomainTags {
    static constexpr uint64_t ELEMENTS = 0x73736c632d656c31ull;  // "sslc-el1"
    static constexpr uint64_t NODE2 = 0x73736c632d6e6432ull;     // "sslc-nd2"
    static constexpr uint64_t NODE1 = 0x73736c632d6e6431ull;     // "sslc-nd1"
    static constexpr uint64_t RECORD = 0x73736c632d726563ull;    // "sslc-rec"
    static constexpr uint64_t ROOTSACC = 0x73736c632d726f74ull;  // "sslc-rot"
    static constexpr uint64_t GENESIS = 0x73736c632d67656eull;   // "sslc-gen"
    static constexpr uint64_t SPEC = 0x73736c632d737063ull;      // "sslc-spc"
};

struct FriParams {
    unsigned blowup_bits = 3;   // rate 1/8
    unsigned num_queries = 28;
    unsigned grind_bits = 20;
    unsigned final_poly_len = 64;  // coefficients of the last FRI layer
};

struct SystemParams {
    std::string version = "sslc-v1";
    SpongeParams sponge;
    FriParams fri;

    // Canonical byte serialization of every pinned constant.
    std::string canonical_bytes() const;
    Hash32 digest() const { return Blake::digest(canonical_bytes()); }

    // Deterministic construction from the pinned version tag.
    static const SystemParams& get();
};

}  // namespace sslc
