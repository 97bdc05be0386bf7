#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "sslc/ledger.hpp"
#include "sslc/rng.hpp"

using namespace sslc;

static AccountId acc_from_seed(uint64_t seed) {
    AccountId a;
    SplitMix64 rng(seed);
    for (int i = 0; i < 4; i++) {
        uint64_t w = rng.next();
        for (int j = 0; j < 8; j++) a.id[i * 8 + j] = static_cast<uint8_t>(w >> (8 * j));
    }
    return a;
}

TEST_CASE("generate_chain is deterministic in the seed") {
    AccountId acc = acc_from_seed(1);
    Chain a = generate_chain(99, 4, 16, 3, acc);
    Chain b = generate_chain(99, 4, 16, 3, acc);
    REQUIRE(a.blocks.size() == b.blocks.size());
    for (size_t i = 0; i < a.blocks.size(); i++) {
        CHECK(a.blocks[i].tx_root == b.blocks[i].tx_root);
        REQUIRE(a.blocks[i].transactions.size() == b.blocks[i].transactions.size());
        for (size_t t = 0; t < a.blocks[i].transactions.size(); t++)
            CHECK(a.blocks[i].transactions[t].serialize() ==
                  b.blocks[i].transactions[t].serialize());
    }
    Chain c = generate_chain(100, 4, 16, 3, acc);
    CHECK(a.blocks[0].tx_root != c.blocks[0].tx_root);
}

TEST_CASE("generate_chain validates parameters") {
    AccountId acc = acc_from_seed(2);
    CHECK_THROWS_AS(generate_chain(1, 0, 4, 1, acc), InvalidParams);
    CHECK_THROWS_AS(generate_chain(1, 4, 0, 1, acc), InvalidParams);
    CHECK_THROWS_AS(generate_chain(1, 4, 4, 0, acc), InvalidParams);
    CHECK_THROWS_AS(generate_chain(1, 4, 4, 5, acc), InvalidParams);
}

TEST_CASE("relevant count: 10 blocks x 7 relevant -> 70") {
    AccountId acc = acc_from_seed(3);
    Chain chain = generate_chain(7, 10, 32, 7, acc);
    CHECK(tx_count_for_account(chain, acc) == 70);
    // independent linear scan
    uint64_t n = 0;
    for (const auto& b : chain.blocks)
        for (const auto& tx : b.transactions)
            if (tx.sender == acc || tx.receiver == acc) n++;
    CHECK(n == 70);
}

TEST_CASE("fresh account never used counts zero and is unknown") {
    AccountId acc = acc_from_seed(4);
    Chain chain = generate_chain(8, 4, 8, 2, acc);
    AccountId other = acc_from_seed(5);
    CHECK(tx_count_for_account(chain, other) == 0);
    CHECK(account_unknown(chain, other));
    CHECK_FALSE(account_unknown(chain, acc));
}

TEST_CASE("tx roots recompute from leaves; per-block nonces distinct") {
    AccountId acc = acc_from_seed(6);
    Chain chain = generate_chain(11, 64, 32, 8, acc);
    for (const auto& b : chain.blocks) {
        CHECK(build_tree(b.leaf_digests()).root() == b.tx_root);
        for (size_t i = 0; i + 1 < b.transactions.size(); i++)
            for (size_t j = i + 1; j < b.transactions.size(); j++)
                REQUIRE(b.transactions[i].tx_hash != b.transactions[j].tx_hash);
    }
}

TEST_CASE("tx_root_of: bottom past the tip, stored root otherwise") {
    AccountId acc = acc_from_seed(7);
    Chain chain = generate_chain(13, 5, 8, 1, acc);
    CHECK_FALSE(tx_root_of(chain, 1000000000).has_value());
    CHECK_FALSE(tx_root_of(chain, 5).has_value());
    auto r0 = tx_root_of(chain, 0);
    REQUIRE(r0.has_value());
    CHECK(*r0 == chain.blocks[0].tx_root);
}

TEST_CASE("membership soundness: every tx opens against its block root") {
    AccountId acc = acc_from_seed(8);
    Chain chain = generate_chain(21, 6, 16, 4, acc);
    for (const auto& b : chain.blocks) {
        TxTree t = build_tree(b.leaf_digests());
        for (size_t i = 0; i < b.transactions.size(); i++)
            CHECK(verify_path(b.tx_root, b.transactions[i].tx_hash, open(t, i)));
    }
}

TEST_CASE("chain fixture round trip through JSON lines") {
    AccountId acc = acc_from_seed(9);
    Chain chain = generate_chain(31, 3, 8, 2, acc);
    std::string path = "/tmp/sslc_test_chain.jsonl";
    save_chain(chain, path);
    Chain back = load_chain(path);
    REQUIRE(back.blocks.size() == chain.blocks.size());
    for (size_t i = 0; i < chain.blocks.size(); i++) {
        CHECK(back.blocks[i].tx_root == chain.blocks[i].tx_root);
        CHECK(back.blocks[i].transactions.size() == chain.blocks[i].transactions.size());
    }
    CHECK(tx_count_for_account(back, acc) == tx_count_for_account(chain, acc));
    std::remove(path.c_str());
}

TEST_CASE("transaction limbs are canonical and field-aligned") {
    AccountId acc = acc_from_seed(10);
    Chain chain = generate_chain(37, 1, 4, 1, acc);
    for (const auto& tx : chain.blocks[0].transactions) {
        auto limbs = tx.limbs();
        for (auto l : limbs) CHECK(l.v < (1ull << 56));
        // amount limbs recompose
        CHECK(limbs[10].v + (limbs[11].v << 56) == tx.amount);
        CHECK(limbs[14].v == tx.payload_tag);
        // sender limbs match the account encoding when it is the sender
        if (tx.sender == acc) {
            auto al = acc.limbs();
            for (int i = 0; i < 5; i++) CHECK(limbs[i] == al[i]);
        }
        CHECK(tx.tx_hash == tx.compute_hash());
    }
}
