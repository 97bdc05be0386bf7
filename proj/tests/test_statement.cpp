#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sslc/rng.hpp"
#include "sslc/statement.hpp"

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

static QuerySpec touch_spec(const AccountId& acc) {
    QuerySpec s;
    s.predicate = Predicate::ACCOUNT_TOUCH;
    s.account = acc;
    s.finalize = Finalize::AVERAGE;
    return s;
}

TEST_CASE("build_claim covers exactly the relevant blocks") {
    AccountId acc = acc_from_seed(1);
    AccountId other = acc_from_seed(2);
    // hand-built chain where only block 3 has matches
    Chain chain;
    SplitMix64 rng(3);
    uint64_t nonce = 0;
    for (uint64_t bi = 0; bi < 6; bi++) {
        Block b;
        b.index = bi;
        for (int t = 0; t < 4; t++) {
            Transaction tx;
            tx.sender = (bi == 3 && t < 2) ? acc : other;
            tx.receiver = acc_from_seed(100 + rng.next() % 50);
            tx.amount = 10 + t;
            tx.nonce = nonce++;
            tx.tx_hash = tx.compute_hash();
            b.transactions.push_back(tx);
        }
        b.tx_root = build_tree(b.leaf_digests()).root();
        chain.blocks.push_back(b);
    }
    auto [claim, witness] = build_claim(chain, touch_spec(acc));
    REQUIRE(claim.roots.size() == 1);
    CHECK(claim.roots[0].first == 3);
    CHECK(claim.roots[0].second == chain.blocks[3].tx_root);
    CHECK(claim.k == 2);
    CHECK(check_relation(claim, witness, touch_spec(acc)).ok);
}

TEST_CASE("generated chain: m = 16, k = 128, completeness") {
    AccountId acc = acc_from_seed(4);
    Chain chain = generate_chain(9, 16, 64, 8, acc);
    QuerySpec spec = touch_spec(acc);
    auto [claim, witness] = build_claim(chain, spec);
    CHECK(claim.roots.size() == 16);
    CHECK(claim.k == 128);
    QueryResult native = evaluate_native(chain, spec);
    CHECK(claim.result_numerator == native.value_numerator);
    CHECK(claim.result_denominator == native.value_denominator);
    auto rc = check_relation(claim, witness, spec);
    CHECK(rc.ok);
    CHECK(rc.reason == RelationFailure::NONE);
}

TEST_CASE("completeness over many seeds") {
    for (uint64_t seed = 1; seed <= 40; seed++) {
        AccountId acc = acc_from_seed(seed * 7 + 1);
        SplitMix64 dims(seed);
        Chain chain = generate_chain(seed, dims.range(1, 5), dims.range(2, 16), 1, acc);
        QuerySpec spec = touch_spec(acc);
        auto [claim, witness] = build_claim(chain, spec);
        CHECK(check_relation(claim, witness, spec).ok);
    }
}

// Targeted mutations: each trips exactly its own failure reason.
struct Fixture {
    Chain chain;
    QuerySpec spec;
    Claim claim;
    Witness witness;
};

static Fixture make_fixture(uint64_t seed) {
    Fixture f;
    AccountId acc = acc_from_seed(seed);
    f.chain = generate_chain(seed, 4, 16, 3, acc);  // 12 relevant txs
    f.spec = touch_spec(acc);
    std::tie(f.claim, f.witness) = build_claim(f.chain, f.spec);
    return f;
}

TEST_CASE("mutation: perturbed result -> RESULT_MISMATCH") {
    for (uint64_t seed : {11ull, 12ull, 13ull}) {
        Fixture f = make_fixture(seed);
        f.claim.result_numerator += 1;
        auto rc = check_relation(f.claim, f.witness, f.spec);
        CHECK_FALSE(rc.ok);
        CHECK(rc.reason == RelationFailure::RESULT_MISMATCH);
    }
}

TEST_CASE("mutation: dropped transaction -> COUNT_MISMATCH") {
    for (uint64_t seed : {21ull, 22ull, 23ull}) {
        Fixture f = make_fixture(seed);
        auto& batch = f.witness.batches[0];
        batch.transactions.pop_back();
        batch.paths.pop_back();
        auto rc = check_relation(f.claim, f.witness, f.spec);
        CHECK_FALSE(rc.ok);
        CHECK(rc.reason == RelationFailure::COUNT_MISMATCH);
    }
}

TEST_CASE("mutation: perturbed sibling -> BAD_PATH") {
    for (uint64_t seed : {31ull, 32ull, 33ull}) {
        Fixture f = make_fixture(seed);
        auto& path = f.witness.batches[0].paths[0];
        REQUIRE(!path.siblings.empty());
        path.siblings[0].e[0] += Fe::one();
        auto rc = check_relation(f.claim, f.witness, f.spec);
        CHECK_FALSE(rc.ok);
        CHECK(rc.reason == RelationFailure::BAD_PATH);
    }
}

TEST_CASE("mutation: duplicate keeps k but violates strict order -> ORDER_VIOLATION") {
    for (uint64_t seed : {41ull, 42ull, 43ull}) {
        Fixture f = make_fixture(seed);
        auto& batch = f.witness.batches[0];
        REQUIRE(batch.transactions.size() >= 2);
        // duplicate entry 0 in place of entry 1; list stays sorted with an
        // equal adjacent pair, which strict ordering rejects
        batch.transactions[1] = batch.transactions[0];
        batch.paths[1] = batch.paths[0];
        auto rc = check_relation(f.claim, f.witness, f.spec);
        CHECK_FALSE(rc.ok);
        CHECK(rc.reason == RelationFailure::ORDER_VIOLATION);
    }
}

TEST_CASE("mutation: non-matching transaction swapped in -> PREDICATE_VIOLATION") {
    for (uint64_t seed : {51ull, 52ull, 53ull}) {
        Fixture f = make_fixture(seed);
        auto& batch = f.witness.batches[0];
        const Block& blk = f.chain.blocks[batch.block_index];
        // find a non-matching tx in the same block and open it honestly
        TxTree tree = build_tree(blk.leaf_digests());
        bool swapped = false;
        for (size_t i = 0; i < blk.transactions.size() && !swapped; i++) {
            if (f.spec.matches(blk.transactions[i])) continue;
            batch.transactions[0] = blk.transactions[i];
            batch.paths[0] = open(tree, i);
            swapped = true;
        }
        REQUIRE(swapped);
        // restore sorted order within the batch
        for (size_t i = 0; i + 1 < batch.transactions.size(); i++)
            for (size_t j = 0; j + 1 < batch.transactions.size() - i; j++)
                if (batch.transactions[j + 1].tx_hash < batch.transactions[j].tx_hash) {
                    std::swap(batch.transactions[j], batch.transactions[j + 1]);
                    std::swap(batch.paths[j], batch.paths[j + 1]);
                }
        auto rc = check_relation(f.claim, f.witness, f.spec);
        CHECK_FALSE(rc.ok);
        CHECK(rc.reason == RelationFailure::PREDICATE_VIOLATION);
    }
}

TEST_CASE("claim minimality: removing any root breaks some path") {
    Fixture f = make_fixture(61);
    for (size_t drop = 0; drop < f.claim.roots.size(); drop++) {
        Claim c = f.claim;
        c.roots.erase(c.roots.begin() + drop);
        auto rc = check_relation(c, f.witness, f.spec);
        CHECK_FALSE(rc.ok);
        CHECK(rc.reason == RelationFailure::BAD_PATH);
    }
}

TEST_CASE("multi-batch blocks: carry threading is enforced") {
    Fixture f = make_fixture(71);
    // split the first batch in two with a correct carry
    Witness w2;
    const Batch& b0 = f.witness.batches[0];
    REQUIRE(b0.transactions.size() == 3);
    Batch first{b0.block_index,
                {b0.transactions[0], b0.transactions[1]},
                {b0.paths[0], b0.paths[1]},
                std::nullopt};
    Batch second{b0.block_index,
                 {b0.transactions[2]},
                 {b0.paths[2]},
                 b0.transactions[1].tx_hash};
    w2.batches.push_back(first);
    w2.batches.push_back(second);
    for (size_t i = 1; i < f.witness.batches.size(); i++) w2.batches.push_back(f.witness.batches[i]);
    CHECK(check_relation(f.claim, w2, f.spec).ok);

    // wrong carry
    w2.batches[1].carry_in_hash = b0.transactions[0].tx_hash;
    auto rc = check_relation(f.claim, w2, f.spec);
    CHECK_FALSE(rc.ok);
    CHECK(rc.reason == RelationFailure::ORDER_VIOLATION);

    // missing carry
    w2.batches[1].carry_in_hash.reset();
    rc = check_relation(f.claim, w2, f.spec);
    CHECK_FALSE(rc.ok);
    CHECK(rc.reason == RelationFailure::ORDER_VIOLATION);
}

TEST_CASE("claim canonical JSON round trips") {
    Fixture f = make_fixture(81);
    Claim back = Claim::from_json(f.claim.canonical_json());
    CHECK(back.canonical_json() == f.claim.canonical_json());
    CHECK(back.k == f.claim.k);
    CHECK(back.roots == f.claim.roots);
}

TEST_CASE("wrong spec digest is a predicate violation") {
    Fixture f = make_fixture(91);
    QuerySpec other = f.spec;
    other.finalize = Finalize::COUNT;
    auto rc = check_relation(f.claim, f.witness, other);
    CHECK_FALSE(rc.ok);
    CHECK(rc.reason == RelationFailure::PREDICATE_VIOLATION);
}
