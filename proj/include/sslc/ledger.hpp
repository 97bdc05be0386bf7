#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslc/merkle.hpp"
#include "sslc/poseidon.hpp"

namespace sslc {

struct InvalidParams : std::runtime_error {
    explicit InvalidParams(const std::string& what) : std::runtime_error("InvalidParams: " + what) {}
};

struct AccountId {
    std::array<uint8_t, 32> id{};

    friend bool operator==(const AccountId&, const AccountId&) = default;
    std::string to_hex() const { return hex_encode(id.data(), id.size()); }
    static bool from_hex(std::string_view s, AccountId& out);

    // 32 bytes packed little-endian into byte-aligned limbs (7,7,7,7,4).
    std::array<Fe, 5> limbs() const;
};

struct Transaction {
    AccountId sender;
    AccountId receiver;
    uint64_t amount = 0;  // base token units; integer by design
    uint64_t nonce = 0;
    uint32_t payload_tag = 0;  // application marker, e.g. vote-for-candidate
    Digest tx_hash;            // leaf digest, derived from the fields

    // Fixed-order, fixed-width wire encoding:
    // sender || receiver || amount:8B || nonce:8B || payload_tag:4B.
    std::array<uint8_t, 84> serialize() const;

    // The serialized bytes as byte-aligned field limbs, one group per
    // field so circuits can address fields without bit surgery:
    // sender(5) receiver(5) amount(2: 7B+1B) nonce(2) tag(1).
    std::array<Fe, 15> limbs() const;

    // Exactly 4 field elements committing to the canonical serialization.
    Digest encode() const {
        auto l = limbs();
        return hash_elements(std::span<const Fe>(l));
    }

    // Leaf rule: the leaf digest is hash_elements over the 4 encoded elements.
    Digest compute_hash() const {
        Digest c = encode();
        return hash_elements(std::span<const Fe>(c.e));
    }

    bool touches(const AccountId& acc) const { return sender == acc || receiver == acc; }
};

struct Block {
    uint64_t index = 0;
    std::vector<Transaction> transactions;
    Digest tx_root;

    std::vector<Digest> leaf_digests() const {
        std::vector<Digest> out;
        out.reserve(transactions.size());
        for (const auto& tx : transactions) out.push_back(tx.tx_hash);
        return out;
    }
};

struct Chain {
    std::vector<Block> blocks;

    size_t total_transactions() const {
        size_t n = 0;
        for (const auto& b : blocks) n += b.transactions.size();
        return n;
    }
};

// Deterministic synthetic chain; exactly relevant_per_block transactions
// per block touch `account`, amounts uniform in [1, 10^6].
Chain generate_chain(uint64_t seed, uint64_t num_blocks, uint64_t txs_per_block,
                     uint64_t relevant_per_block, const AccountId& account);

// Count of transactions where `account` is sender or receiver; unknown
// accounts count 0 (the service layer maps unknown to bottom).
uint64_t tx_count_for_account(const Chain& chain, const AccountId& account);

// Stored transaction root for a block, or nullopt past the tip.
std::optional<Digest> tx_root_of(const Chain& chain, uint64_t block_index);

// True when every account in the chain differs from `account`.
bool account_unknown(const Chain& chain, const AccountId& account);

// JSON Lines fixture, one block per line.
void save_chain(const Chain& chain, const std::string& path);
Chain load_chain(const std::string& path);

}  // namespace sslc
