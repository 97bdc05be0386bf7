#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sslc/ledger.hpp"

namespace sslc {

struct EmptyQuery : std::runtime_error {
    EmptyQuery() : std::runtime_error("EmptyQuery") {}
};

enum class Predicate : uint8_t { ACCOUNT_TOUCH = 0, PAYLOAD_TAG = 1 };
enum class MapKind : uint8_t { SUM_AMOUNT_AND_COUNT = 0 };
enum class ReduceKind : uint8_t { FOLD_SUM_COUNT = 0 };
enum class Finalize : uint8_t { AVERAGE = 0, TOTAL = 1, COUNT = 2 };

// A map-reduce ledger query: per-block filter + map, global fold.
// The admitted map/reduce pairs are associative and commutative, so
// block processing order can never change the result.
struct QuerySpec {
    Predicate predicate = Predicate::ACCOUNT_TOUCH;
    AccountId account;         // used by ACCOUNT_TOUCH
    uint32_t payload_tag = 0;  // used by PAYLOAD_TAG
    MapKind map_kind = MapKind::SUM_AMOUNT_AND_COUNT;
    ReduceKind reduce_kind = ReduceKind::FOLD_SUM_COUNT;
    Finalize finalize = Finalize::AVERAGE;

    bool matches(const Transaction& tx) const {
        return predicate == Predicate::ACCOUNT_TOUCH ? tx.touches(account)
                                                     : tx.payload_tag == payload_tag;
    }

    // Fixed field encoding [predicate, acc limbs x5, tag, finalize];
    // the claim commits to its hash.
    std::array<Fe, 8> encoding() const;
    Digest digest() const;

    std::string to_json() const;
    static QuerySpec from_json(const std::string& body);  // throws on malformed input
};

struct PartialResult {
    uint64_t sum = 0;
    uint64_t count = 0;  // count == 0 implies sum == 0
};

// Exact rational result; division is deferred to presentation.
struct QueryResult {
    uint64_t value_numerator = 0;
    uint64_t value_denominator = 1;
    uint64_t k = 0;  // total transactions used

    friend bool operator==(const QueryResult&, const QueryResult&) = default;
};

// Per-block map: the returned list holds exactly the predicate-matching
// transactions with openings, sorted ascending by tx_hash.
std::pair<PartialResult, std::vector<std::pair<Transaction, MerklePath>>> map_block(
    const Block& block, const QuerySpec& spec);

// Order-independent fold of per-block partials.
QueryResult reduce_all(const std::vector<PartialResult>& partials, const QuerySpec& spec);

// Whole-chain evaluation; the brute-force oracle every proof is tested against.
QueryResult evaluate_native(const Chain& chain, const QuerySpec& spec);

}  // namespace sslc
