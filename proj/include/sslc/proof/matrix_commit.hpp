#pragma once

#include <cstdint>
#include <vector>

#include "sslc/blake.hpp"
#include "sslc/field.hpp"

namespace sslc {

// BLAKE2b Merkle tree over a column-major matrix of field elements.
// Rows i and i + rows/2 are bundled into one leaf, matching the point
// pairing (x, -x) that both the DEEP openings and the FRI folds consume,
// so a single authentication path opens an antipodal pair.
class MatrixCommit {
public:
    // data: columns, each of length `rows` (rows is a power of two >= 2).
    MatrixCommit() = default;
    static MatrixCommit build(const std::vector<std::vector<Fe>>* cols, size_t rows);

    const Hash32& root() const { return nodes_[1]; }
    size_t leaves() const { return n_leaves_; }

    // Opening for pair index i in [0, rows/2): path only (the opened row
    // values travel separately in the proof).
    std::vector<Hash32> open(size_t pair_index) const;

    static Hash32 leaf_hash(const std::vector<Fe>& lo_row, const std::vector<Fe>& hi_row);
    static bool verify(const Hash32& root, size_t pair_index, size_t n_leaves,
                       const std::vector<Fe>& lo_row, const std::vector<Fe>& hi_row,
                       const std::vector<Hash32>& path);

private:
    size_t n_leaves_ = 0;
    std::vector<Hash32> nodes_;  // heap layout, nodes_[1] = root
};

}  // namespace sslc
