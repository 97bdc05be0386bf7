#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sslc/poseidon.hpp"

namespace sslc {

struct EmptyLeafSet : std::runtime_error {
    EmptyLeafSet() : std::runtime_error("EmptyLeafSet") {}
};
struct IndexOutOfRange : std::runtime_error {
    IndexOutOfRange() : std::runtime_error("IndexOutOfRange") {}
};

// Opening from leaf to root, one entry per level. A level where the
// current node is hashed alone (odd level end) carries the all-zero
// sentinel digest instead of a sibling. A single-leaf tree opens with an
// empty list: its root is the leaf hashed once under the lone-node tag,
// so leaf digests can never be replayed as internal nodes.
struct MerklePath {
    uint64_t leaf_index = 0;
    std::vector<Digest> siblings;
};

// Binary hash tree per the missing-right-child rule: an internal node is
// hash_two of its children, or hash_lone of the left child alone.
struct TxTree {
    std::vector<std::vector<Digest>> levels;  // levels[0] = leaves, back() = {root}

    const std::vector<Digest>& leaves() const { return levels.front(); }
    const Digest& root() const { return levels.back().front(); }
    size_t depth() const { return levels.size() - 1; }
};

TxTree build_tree(const std::vector<Digest>& leaves);
MerklePath open(const TxTree& tree, uint64_t index);
bool verify_path(const Digest& root, const Digest& leaf, const MerklePath& path);

}  // namespace sslc
