#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sslc/query.hpp"

namespace sslc {

// Public claim x = ({(block_index, root)}, k, r, spec_digest).
struct Claim {
    std::vector<std::pair<uint64_t, Digest>> roots;  // strictly increasing block_index
    uint64_t k = 0;
    uint64_t result_numerator = 0;
    uint64_t result_denominator = 1;
    Digest spec_digest;

    std::optional<Digest> root_of(uint64_t block_index) const {
        for (const auto& [idx, d] : roots)
            if (idx == block_index) return d;
        return std::nullopt;
    }

    // Canonical JSON with stable field order and hex digests.
    std::string canonical_json() const;
    static Claim from_json(const std::string& body);
};

// The blockchain view st the client cross-checks against full nodes:
// exactly the data Fig-6-style lookups can serve.
struct ChainView {
    std::vector<std::pair<uint64_t, Digest>> roots;
    uint64_t k = 0;
};

inline ChainView view_of(const Claim& c) { return ChainView{c.roots, c.k}; }

// One run of relevant transactions of a single block. A block may span
// several batches; carry_in_hash threads the strict hash order across
// the boundary (empty for the first batch of a block).
struct Batch {
    uint64_t block_index = 0;
    std::vector<Transaction> transactions;  // ascending tx_hash
    std::vector<MerklePath> paths;          // aligned with transactions
    std::optional<Digest> carry_in_hash;
};

struct Witness {
    std::vector<Batch> batches;
};

enum class RelationFailure {
    NONE,
    RESULT_MISMATCH,
    COUNT_MISMATCH,
    BAD_PATH,
    ORDER_VIOLATION,
    PREDICATE_VIOLATION,
};

const char* relation_failure_name(RelationFailure f);

struct RelationCheck {
    bool ok = false;
    RelationFailure reason = RelationFailure::NONE;
};

// Builds the honest claim/witness pair: roots cover exactly the blocks
// with at least one relevant transaction, one batch per such block.
// Propagates EmptyQuery for AVERAGE over zero matches.
std::pair<Claim, Witness> build_claim(const Chain& chain, const QuerySpec& spec);

// Native checker for the hardened relation. Checks, in order: every
// opening against its claimed root, strict per-block hash order across
// batch boundaries, the predicate on every transaction, the total count
// against k, and the recomputed fold against the claimed result.
RelationCheck check_relation(const Claim& claim, const Witness& witness, const QuerySpec& spec);

}  // namespace sslc
