#include "sslc/proof/matrix_commit.hpp"

#include <cassert>

namespace sslc {

Hash32 MatrixCommit::leaf_hash(const std::vector<Fe>& lo_row, const std::vector<Fe>& hi_row) {
    Blake b;
    b.update("leaf");
    b.update_u64(lo_row.size());
    for (Fe x : lo_row) b.update_u64(x.v);
    for (Fe x : hi_row) b.update_u64(x.v);
    return b.finish();
}

MatrixCommit MatrixCommit::build(const std::vector<std::vector<Fe>>* cols, size_t rows) {
    assert(rows >= 2 && (rows & (rows - 1)) == 0);
    MatrixCommit mc;
    mc.n_leaves_ = rows / 2;
    mc.nodes_.resize(2 * mc.n_leaves_);
    size_t half = rows / 2;
    std::vector<Fe> lo(cols->size()), hi(cols->size());
    for (size_t i = 0; i < half; i++) {
        for (size_t c = 0; c < cols->size(); c++) {
            lo[c] = (*cols)[c][i];
            hi[c] = (*cols)[c][i + half];
        }
        mc.nodes_[mc.n_leaves_ + i] = leaf_hash(lo, hi);
    }
    for (size_t i = mc.n_leaves_; i-- > 1;) {
        Blake b;
        b.update("node");
        b.update(mc.nodes_[2 * i].data(), 32);
        b.update(mc.nodes_[2 * i + 1].data(), 32);
        mc.nodes_[i] = b.finish();
    }
    return mc;
}

std::vector<Hash32> MatrixCommit::open(size_t pair_index) const {
    std::vector<Hash32> path;
    size_t i = n_leaves_ + pair_index;
    while (i > 1) {
        path.push_back(nodes_[i ^ 1]);
        i >>= 1;
    }
    return path;
}

bool MatrixCommit::verify(const Hash32& root, size_t pair_index, size_t n_leaves,
                          const std::vector<Fe>& lo_row, const std::vector<Fe>& hi_row,
                          const std::vector<Hash32>& path) {
    size_t expect_depth = 0;
    while ((size_t(1) << expect_depth) < n_leaves) expect_depth++;
    if ((size_t(1) << expect_depth) != n_leaves || path.size() != expect_depth) return false;
    if (pair_index >= n_leaves) return false;
    Hash32 h = leaf_hash(lo_row, hi_row);
    size_t i = n_leaves + pair_index;
    for (const Hash32& sib : path) {
        Blake b;
        b.update("node");
        if (i & 1) {
            b.update(sib.data(), 32);
            b.update(h.data(), 32);
        } else {
            b.update(h.data(), 32);
            b.update(sib.data(), 32);
        }
        h = b.finish();
        i >>= 1;
    }
    return h == root;
}

}  // namespace sslc
