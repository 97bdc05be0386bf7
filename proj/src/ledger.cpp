#include "sslc/ledger.hpp"

#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "sslc/rng.hpp"

namespace sslc {

bool AccountId::from_hex(std::string_view s, AccountId& out) {
    std::vector<uint8_t> bytes;
    if (!hex_decode(s, bytes) || bytes.size() != 32) return false;
    std::copy(bytes.begin(), bytes.end(), out.id.begin());
    return true;
}

// LE pack of `len` bytes starting at `p` (len <= 7).
static Fe pack_le(const uint8_t* p, size_t len) {
    uint64_t v = 0;
    for (size_t i = 0; i < len; i++) v |= static_cast<uint64_t>(p[i]) << (8 * i);
    return Fe::raw(v);  // < 2^56 < P
}

std::array<Fe, 5> AccountId::limbs() const {
    return {pack_le(id.data(), 7), pack_le(id.data() + 7, 7), pack_le(id.data() + 14, 7),
            pack_le(id.data() + 21, 7), pack_le(id.data() + 28, 4)};
}

std::array<uint8_t, 84> Transaction::serialize() const {
    std::array<uint8_t, 84> out{};
    std::copy(sender.id.begin(), sender.id.end(), out.begin());
    std::copy(receiver.id.begin(), receiver.id.end(), out.begin() + 32);
    for (int i = 0; i < 8; i++) out[64 + i] = static_cast<uint8_t>(amount >> (8 * i));
    for (int i = 0; i < 8; i++) out[72 + i] = static_cast<uint8_t>(nonce >> (8 * i));
    for (int i = 0; i < 4; i++) out[80 + i] = static_cast<uint8_t>(payload_tag >> (8 * i));
    return out;
}

std::array<Fe, 15> Transaction::limbs() const {
    auto s = sender.limbs();
    auto r = receiver.limbs();
    return {s[0], s[1], s[2], s[3], s[4],
            r[0], r[1], r[2], r[3], r[4],
            Fe::raw(amount & 0xffffffffffffffull), Fe::raw(amount >> 56),
            Fe::raw(nonce & 0xffffffffffffffull), Fe::raw(nonce >> 56),
            Fe::raw(payload_tag)};
}

static AccountId random_account(SplitMix64& rng) {
    AccountId a;
    for (int i = 0; i < 4; i++) {
        uint64_t w = rng.next();
        for (int j = 0; j < 8; j++) a.id[i * 8 + j] = static_cast<uint8_t>(w >> (8 * j));
    }
    return a;
}

Chain generate_chain(uint64_t seed, uint64_t num_blocks, uint64_t txs_per_block,
                     uint64_t relevant_per_block, const AccountId& account) {
    if (num_blocks == 0 || txs_per_block == 0 || relevant_per_block == 0)
        throw InvalidParams("all counts must be > 0");
    if (relevant_per_block > txs_per_block)
        throw InvalidParams("relevant_per_block > txs_per_block");

    SplitMix64 rng(seed);
    uint64_t nonce = 0;
    Chain chain;
    chain.blocks.reserve(num_blocks);

    for (uint64_t bi = 0; bi < num_blocks; bi++) {
        Block blk;
        blk.index = bi;
        blk.transactions.resize(txs_per_block);

        // partial Fisher-Yates picks the relevant slots
        std::vector<uint64_t> slots(txs_per_block);
        for (uint64_t i = 0; i < txs_per_block; i++) slots[i] = i;
        for (uint64_t i = 0; i < relevant_per_block; i++) {
            uint64_t j = i + rng.below(txs_per_block - i);
            std::swap(slots[i], slots[j]);
        }
        std::unordered_set<uint64_t> relevant(slots.begin(), slots.begin() + relevant_per_block);

        for (uint64_t ti = 0; ti < txs_per_block; ti++) {
            Transaction tx;
            if (relevant.count(ti)) {
                if (rng.next() & 1) {
                    tx.sender = account;
                    do { tx.receiver = random_account(rng); } while (tx.receiver == account);
                } else {
                    do { tx.sender = random_account(rng); } while (tx.sender == account);
                    tx.receiver = account;
                }
            } else {
                do { tx.sender = random_account(rng); } while (tx.sender == account);
                do { tx.receiver = random_account(rng); } while (tx.receiver == account);
            }
            tx.amount = rng.range(1, 1000000);
            tx.nonce = nonce++;
            tx.payload_tag = static_cast<uint32_t>(rng.below(8));
            tx.tx_hash = tx.compute_hash();
            blk.transactions[ti] = tx;
        }
        blk.tx_root = build_tree(blk.leaf_digests()).root();
        chain.blocks.push_back(std::move(blk));
    }
    return chain;
}

uint64_t tx_count_for_account(const Chain& chain, const AccountId& account) {
    uint64_t n = 0;
    for (const auto& b : chain.blocks)
        for (const auto& tx : b.transactions)
            if (tx.touches(account)) n++;
    return n;
}

std::optional<Digest> tx_root_of(const Chain& chain, uint64_t block_index) {
    if (block_index >= chain.blocks.size()) return std::nullopt;
    return chain.blocks[block_index].tx_root;
}

bool account_unknown(const Chain& chain, const AccountId& account) {
    for (const auto& b : chain.blocks)
        for (const auto& tx : b.transactions)
            if (tx.sender == account || tx.receiver == account) return false;
    return true;
}

void save_chain(const Chain& chain, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (const auto& b : chain.blocks) {
        nlohmann::json j;
        j["index"] = b.index;
        j["tx_root"] = b.tx_root.to_hex();
        auto& txs = j["txs"] = nlohmann::json::array();
        for (const auto& tx : b.transactions) {
            txs.push_back({{"sender", tx.sender.to_hex()},
                           {"receiver", tx.receiver.to_hex()},
                           {"amount", tx.amount},
                           {"nonce", tx.nonce},
                           {"tag", tx.payload_tag}});
        }
        out << j.dump() << "\n";
    }
}

Chain load_chain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Chain chain;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        Block b;
        b.index = j.at("index").get<uint64_t>();
        for (const auto& t : j.at("txs")) {
            Transaction tx;
            if (!AccountId::from_hex(t.at("sender").get<std::string>(), tx.sender) ||
                !AccountId::from_hex(t.at("receiver").get<std::string>(), tx.receiver))
                throw std::runtime_error("bad account hex in fixture");
            tx.amount = t.at("amount").get<uint64_t>();
            tx.nonce = t.at("nonce").get<uint64_t>();
            tx.payload_tag = t.at("tag").get<uint32_t>();
            tx.tx_hash = tx.compute_hash();
            b.transactions.push_back(std::move(tx));
        }
        b.tx_root = build_tree(b.leaf_digests()).root();
        Digest stored;
        if (!Digest::from_hex(j.at("tx_root").get<std::string>(), stored) || stored != b.tx_root)
            throw std::runtime_error("fixture tx_root mismatch at block " +
                                     std::to_string(b.index));
        if (b.index != chain.blocks.size())
            throw std::runtime_error("fixture block indices not consecutive");
        chain.blocks.push_back(std::move(b));
    }
    return chain;
}

}  // namespace sslc
