#include "sslc/statement.hpp"

#include <json.hpp>

namespace sslc {

const char* relation_failure_name(RelationFailure f) {
    switch (f) {
        case RelationFailure::NONE: return "NONE";
        case RelationFailure::RESULT_MISMATCH: return "RESULT_MISMATCH";
        case RelationFailure::COUNT_MISMATCH: return "COUNT_MISMATCH";
        case RelationFailure::BAD_PATH: return "BAD_PATH";
        case RelationFailure::ORDER_VIOLATION: return "ORDER_VIOLATION";
        case RelationFailure::PREDICATE_VIOLATION: return "PREDICATE_VIOLATION";
    }
    return "?";
}

std::string Claim::canonical_json() const {
    nlohmann::ordered_json j;
    auto& roots_j = j["roots"] = nlohmann::ordered_json::array();
    for (const auto& [idx, d] : roots)
        roots_j.push_back({{"index", idx}, {"digest", d.to_hex()}});
    j["k"] = k;
    j["result"] = {{"num", result_numerator}, {"den", result_denominator}};
    j["spec_digest"] = spec_digest.to_hex();
    return j.dump();
}

Claim Claim::from_json(const std::string& body) {
    auto j = nlohmann::json::parse(body);
    Claim c;
    for (const auto& r : j.at("roots")) {
        Digest d;
        if (!Digest::from_hex(r.at("digest").get<std::string>(), d))
            throw std::runtime_error("bad root digest hex");
        c.roots.emplace_back(r.at("index").get<uint64_t>(), d);
    }
    c.k = j.at("k").get<uint64_t>();
    c.result_numerator = j.at("result").at("num").get<uint64_t>();
    c.result_denominator = j.at("result").at("den").get<uint64_t>();
    if (!Digest::from_hex(j.at("spec_digest").get<std::string>(), c.spec_digest))
        throw std::runtime_error("bad spec digest hex");
    return c;
}

std::pair<Claim, Witness> build_claim(const Chain& chain, const QuerySpec& spec) {
    Claim claim;
    Witness witness;
    std::vector<PartialResult> partials;
    for (const auto& block : chain.blocks) {
        auto [pr, relevant] = map_block(block, spec);
        partials.push_back(pr);
        if (relevant.empty()) continue;
        claim.roots.emplace_back(block.index, block.tx_root);
        Batch b;
        b.block_index = block.index;
        for (auto& [tx, path] : relevant) {
            b.transactions.push_back(std::move(tx));
            b.paths.push_back(std::move(path));
        }
        witness.batches.push_back(std::move(b));
    }
    QueryResult r = reduce_all(partials, spec);
    claim.k = r.k;
    claim.result_numerator = r.value_numerator;
    claim.result_denominator = r.value_denominator;
    claim.spec_digest = spec.digest();
    return {claim, witness};
}

RelationCheck check_relation(const Claim& claim, const Witness& witness, const QuerySpec& spec) {
    auto fail = [](RelationFailure f) { return RelationCheck{false, f}; };

    // claim well-formedness: strictly increasing root indices
    for (size_t i = 0; i + 1 < claim.roots.size(); i++)
        if (claim.roots[i].first >= claim.roots[i + 1].first)
            return fail(RelationFailure::ORDER_VIOLATION);

    // (3) every opening verifies against the claimed root of its block
    for (const auto& batch : witness.batches) {
        auto root = claim.root_of(batch.block_index);
        if (!root) return fail(RelationFailure::BAD_PATH);
        if (batch.transactions.size() != batch.paths.size())
            return fail(RelationFailure::BAD_PATH);
        for (size_t i = 0; i < batch.transactions.size(); i++) {
            Digest leaf = batch.transactions[i].compute_hash();
            if (!verify_path(*root, leaf, batch.paths[i]))
                return fail(RelationFailure::BAD_PATH);
        }
    }

    // (4) strict ascending tx_hash within each block, across batches via carry
    {
        std::optional<uint64_t> cur_block;
        std::optional<Digest> last_hash;
        for (const auto& batch : witness.batches) {
            bool fresh = !cur_block || *cur_block != batch.block_index;
            if (fresh) {
                // ascending block order also forces each block's batches
                // to form one contiguous run
                if (cur_block && batch.block_index < *cur_block)
                    return fail(RelationFailure::ORDER_VIOLATION);
                if (batch.carry_in_hash) return fail(RelationFailure::ORDER_VIOLATION);
                last_hash.reset();
            } else {
                if (!batch.carry_in_hash || !last_hash || *batch.carry_in_hash != *last_hash)
                    return fail(RelationFailure::ORDER_VIOLATION);
            }
            cur_block = batch.block_index;
            for (const auto& tx : batch.transactions) {
                Digest h = tx.compute_hash();
                if (last_hash && !(*last_hash < h)) return fail(RelationFailure::ORDER_VIOLATION);
                last_hash = h;
            }
        }
    }

    // (5) the predicate holds for every witness transaction; the claim
    // must also commit to the query being checked
    if (claim.spec_digest != spec.digest()) return fail(RelationFailure::PREDICATE_VIOLATION);
    for (const auto& batch : witness.batches)
        for (const auto& tx : batch.transactions)
            if (!spec.matches(tx)) return fail(RelationFailure::PREDICATE_VIOLATION);

    // (2) total witness transaction count equals k
    uint64_t count = 0;
    for (const auto& batch : witness.batches) count += batch.transactions.size();
    if (count != claim.k) return fail(RelationFailure::COUNT_MISMATCH);

    // (1) recomputed fold equals the claimed result
    uint64_t sum = 0;
    for (const auto& batch : witness.batches)
        for (const auto& tx : batch.transactions) sum += tx.amount;
    uint64_t num = 0, den = 1;
    switch (spec.finalize) {
        case Finalize::AVERAGE:
            if (count == 0) return fail(RelationFailure::RESULT_MISMATCH);
            num = sum;
            den = count;
            break;
        case Finalize::TOTAL: num = sum; den = 1; break;
        case Finalize::COUNT: num = count; den = 1; break;
    }
    if (num != claim.result_numerator || den != claim.result_denominator)
        return fail(RelationFailure::RESULT_MISMATCH);

    return RelationCheck{true, RelationFailure::NONE};
}

}  // namespace sslc
