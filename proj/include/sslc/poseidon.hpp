#pragma once

#include <span>
#include <vector>

#include "sslc/digest.hpp"
#include "sslc/field.hpp"
#include "sslc/params.hpp"

namespace sslc {

// Poseidon permutation over Goldilocks, width 12, and the sponge modes
// built on it. Capacity slot 8 carries a domain tag, slot 9 the input
// length, so different uses and input lengths never share a domain.
namespace poseidon {

using State = std::array<Fe, SpongeParams::WIDTH>;

void permute(State& s);

// Sponge over an arbitrary-length element list under a capacity tag.
Digest sponge(std::span<const Fe> input, uint64_t tag);

}  // namespace poseidon

// The algebraic hash used everywhere a statement commits to data.
// Deterministic; output width is fixed at 4.
Digest hash_elements(std::span<const Fe> input);
inline Digest hash_elements(const std::vector<Fe>& v) {
    return hash_elements(std::span<const Fe>(v));
}

// Internal tree node from two children.
Digest hash_two(const Digest& left, const Digest& right);

// Internal tree node from a lone left child (odd level end, and the
// root of a single-leaf tree).
Digest hash_lone(const Digest& left);

}  // namespace sslc
