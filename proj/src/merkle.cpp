#include "sslc/merkle.hpp"

namespace sslc {

TxTree build_tree(const std::vector<Digest>& leaves) {
    if (leaves.empty()) throw EmptyLeafSet();
    TxTree t;
    t.levels.push_back(leaves);
    if (leaves.size() == 1) {
        t.levels.push_back({hash_lone(leaves[0])});
        return t;
    }
    while (t.levels.back().size() > 1) {
        const auto& cur = t.levels.back();
        std::vector<Digest> next;
        next.reserve((cur.size() + 1) / 2);
        for (size_t i = 0; i < cur.size(); i += 2) {
            if (i + 1 < cur.size())
                next.push_back(hash_two(cur[i], cur[i + 1]));
            else
                next.push_back(hash_lone(cur[i]));
        }
        t.levels.push_back(std::move(next));
    }
    return t;
}

MerklePath open(const TxTree& tree, uint64_t index) {
    if (index >= tree.leaves().size()) throw IndexOutOfRange();
    MerklePath p;
    p.leaf_index = index;
    if (tree.leaves().size() == 1) return p;  // empty path, lone-root rule
    uint64_t i = index;
    for (size_t lvl = 0; lvl + 1 < tree.levels.size(); lvl++) {
        const auto& nodes = tree.levels[lvl];
        uint64_t sib = i ^ 1;
        p.siblings.push_back(sib < nodes.size() ? nodes[sib] : Digest{});
        i >>= 1;
    }
    return p;
}

bool verify_path(const Digest& root, const Digest& leaf, const MerklePath& path) {
    if (path.siblings.empty()) return path.leaf_index == 0 && root == hash_lone(leaf);
    Digest cur = leaf;
    uint64_t idx = path.leaf_index;
    for (const Digest& sib : path.siblings) {
        if (sib.is_zero()) {
            // lone node: must be a left child
            if (idx & 1) return false;
            cur = hash_lone(cur);
        } else if (idx & 1) {
            cur = hash_two(sib, cur);
        } else {
            cur = hash_two(cur, sib);
        }
        idx >>= 1;
    }
    return idx == 0 && cur == root;
}

}  // namespace sslc
