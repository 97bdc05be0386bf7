#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "sslc/blake.hpp"
#include "sslc/field.hpp"

namespace sslc {

// Fiat-Shamir transcript over BLAKE2b. Every absorbed item is framed by a
// label and its length, challenges are drawn in counter mode from the
// running state, so prover and verifier stay in lockstep byte for byte.
class Transcript {
public:
    Transcript() { state_.fill(0); }

    void absorb(std::string_view label, const void* data, size_t len);
    void absorb(std::string_view label, const Hash32& h) { absorb(label, h.data(), h.size()); }
    void absorb_u64(std::string_view label, uint64_t v);
    void absorb_fes(std::string_view label, const std::vector<Fe>& xs);
    void absorb_fe2s(std::string_view label, const std::vector<Fe2>& xs);

    Fe challenge_fe(std::string_view label);
    Fe2 challenge_fe2(std::string_view label);
    // Uniform indices in [0, bound); bound need not be a power of two.
    std::vector<uint32_t> challenge_indices(std::string_view label, size_t count, uint32_t bound);

    // Proof-of-work grind: prover searches a nonce, verifier checks it.
    uint64_t grind(unsigned bits) const;
    bool check_grind(uint64_t nonce, unsigned bits) const;
    void absorb_grind(uint64_t nonce) { absorb_u64("grind", nonce); }

private:
    Hash32 state_;
    uint64_t draw_u64(uint64_t ctr) const;
};

}  // namespace sslc
