#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sslc/proof/backend.hpp"
#include "sslc/proof/ntt.hpp"
#include "sslc/proof/poseidon_plan.hpp"
#include "sslc/proof/stark.hpp"
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

TEST_CASE("ntt: coset LDE agrees with naive evaluation") {
    SplitMix64 rng(5);
    std::vector<Fe> coeffs(8);
    for (auto& c : coeffs) c = Fe::raw(rng.next() % Fe::P);
    Fe h = Fe(7);
    auto evals = coset_lde(coeffs, 32, h);
    Fe w = Fe::two_adic_root(5);
    for (size_t i = 0; i < 32; i++) {
        Fe x = h * w.pow(i);
        Fe expect = Fe::zero();
        Fe xp = Fe::one();
        for (Fe c : coeffs) {
            expect += c * xp;
            xp *= x;
        }
        CHECK(evals[i] == expect);
    }
    auto back = coset_interpolate(evals, h);
    for (size_t i = 0; i < 8; i++) CHECK(back[i] == coeffs[i]);
    for (size_t i = 8; i < 32; i++) CHECK(back[i].is_zero());
}

TEST_CASE("poseidon plan matches the permutation") {
    const auto& plan = PoseidonPlan::get();
    SplitMix64 rng(6);
    poseidon::State in;
    for (auto& x : in) x = Fe::raw(rng.next() % Fe::P);
    std::array<Fe, PoseidonPlan::STORED> stored;
    poseidon::State out = PoseidonPlan::run_trace(in, stored);

    poseidon::State ref = in;
    poseidon::permute(ref);
    CHECK(out == ref);

    // every stored cell satisfies its combo^7 definition, and the output
    // combos reproduce the permutation output
    auto cell = [&](uint16_t idx) { return idx < 12 ? in[idx] : stored[idx - 12]; };
    for (unsigned k = 0; k < PoseidonPlan::STORED; k++) {
        Fe lin = plan.eval<Fe>(plan.sbox_input[k], cell);
        Fe l2 = lin * lin;
        Fe l3 = l2 * lin;
        CHECK(stored[k] == l3 * l3 * lin);
    }
    for (unsigned j = 0; j < 12; j++) CHECK(plan.eval<Fe>(plan.output[j], cell) == out[j]);
}

struct StepFixture {
    BackendParams params;
    QuerySpec spec;
    ProofBatch batch;
    StepStatement st;
};

static StepFixture make_step_fixture(uint64_t seed, uint64_t n_txs = 3) {
    StepFixture f;
    f.params = setup({8, 6}, 16);
    AccountId acc = acc_from_seed(seed);
    Chain chain = generate_chain(seed, 1, 32, n_txs, acc);
    f.spec.predicate = Predicate::ACCOUNT_TOUCH;
    f.spec.account = acc;
    f.spec.finalize = Finalize::AVERAGE;
    auto [claim, witness] = build_claim(chain, f.spec);
    auto batches = partition_batches(witness, claim, f.params.shape.batch_capacity);
    REQUIRE(batches.size() == 1);
    f.batch = batches[0];
    f.st = next_statement(nullptr, f.batch, f.spec);
    return f;
}

TEST_CASE("step circuit: honest batch proves and verifies") {
    StepFixture f = make_step_fixture(11);
    StepCircuit ckt(f.params.shape.batch_capacity, f.params.shape.tree_depth);
    Trace tr = ckt.build_trace(f.batch, f.st);
    auto pub = StepCircuit::publics_of(f.st);
    auto proof = stark_prove(ckt, tr, pub, f.params.parameter_digest);
    CHECK(proof.size() == stark_proof_size(ckt));
    CHECK(stark_verify(ckt, pub, proof, f.params.parameter_digest));

    // wrong publics or wrong context must fail
    auto pub2 = pub;
    pub2[StepCircuit::PUB_SUM_OUT] += Fe::one();
    CHECK_FALSE(stark_verify(ckt, pub2, proof, f.params.parameter_digest));
    Hash32 other{};
    CHECK_FALSE(stark_verify(ckt, pub, proof, other));

    // corrupting any single proof byte must fail
    SplitMix64 rng(99);
    for (int i = 0; i < 32; i++) {
        auto bad = proof;
        size_t pos = rng.below(bad.size());
        bad[pos] ^= static_cast<uint8_t>(1 + rng.below(255));
        CHECK_FALSE(stark_verify(ckt, pub, bad, f.params.parameter_digest));
    }
}

TEST_CASE("step circuit rejects unsatisfiable witnesses") {
    StepFixture f = make_step_fixture(12);
    StepCircuit ckt(f.params.shape.batch_capacity, f.params.shape.tree_depth);

    SUBCASE("duplicated transaction violates the index order") {
        ProofBatch bad = f.batch;
        bad.txs.push_back(bad.txs.back());
        bad.paths.push_back(bad.paths.back());
        StepStatement st = next_statement(nullptr, bad, f.spec);
        CHECK_THROWS_AS(ckt.build_trace(bad, st), WitnessUnsatisfiable);
    }
    SUBCASE("path against the wrong root") {
        StepStatement st = f.st;
        st.root.e[0] += Fe::one();
        Trace tr = ckt.build_trace(f.batch, st);
        CHECK_THROWS_AS(stark_prove(ckt, tr, StepCircuit::publics_of(st), f.params.parameter_digest),
                        WitnessUnsatisfiable);
    }
    SUBCASE("tampered sibling breaks the membership proof") {
        ProofBatch bad = f.batch;
        bad.paths[0].siblings[0].e[0] += Fe::one();
        Trace tr = ckt.build_trace(bad, f.st);
        CHECK_THROWS_AS(stark_prove(ckt, tr, StepCircuit::publics_of(f.st), f.params.parameter_digest),
                        WitnessUnsatisfiable);
    }
    SUBCASE("foreign transaction fails the predicate") {
        StepFixture g = make_step_fixture(13);
        // swap in a non-matching tx from the same block with a valid path
        Chain chain = generate_chain(12, 1, 32, 3, acc_from_seed(12));
        const Block& blk = chain.blocks[0];
        TxTree tree = build_tree(blk.leaf_digests());
        ProofBatch bad = f.batch;
        for (size_t i = 0; i < blk.transactions.size(); i++) {
            if (f.spec.matches(blk.transactions[i])) continue;
            bad.txs[0] = blk.transactions[i];
            bad.paths[0] = open(tree, i);
            break;
        }
        // keep index order intact by re-sorting
        for (size_t i = 0; i + 1 < bad.txs.size(); i++)
            for (size_t j = 0; j + 1 < bad.txs.size() - i; j++)
                if (bad.paths[j + 1].leaf_index < bad.paths[j].leaf_index) {
                    std::swap(bad.txs[j], bad.txs[j + 1]);
                    std::swap(bad.paths[j], bad.paths[j + 1]);
                }
        StepStatement st = next_statement(nullptr, bad, f.spec);
        Trace tr = ckt.build_trace(bad, st);
        CHECK_THROWS_AS(stark_prove(ckt, tr, StepCircuit::publics_of(st), f.params.parameter_digest),
                        WitnessUnsatisfiable);
    }
    SUBCASE("declared accumulators must match the batch") {
        StepStatement st = f.st;
        st.sum_out += 1;
        CHECK_THROWS_AS(ckt.build_trace(f.batch, st), WitnessUnsatisfiable);
    }
}

TEST_CASE("aggregator: honest chain proves; claim mutations fail") {
    BackendParams params = setup({8, 6}, 16);
    AccountId acc = acc_from_seed(21);
    Chain chain = generate_chain(21, 3, 16, 2, acc);
    QuerySpec spec;
    spec.predicate = Predicate::ACCOUNT_TOUCH;
    spec.account = acc;
    spec.finalize = Finalize::AVERAGE;
    auto backend = make_backend("stark");
    auto out = prove_query(*backend, params, chain, spec);
    CHECK(backend->verify(params, out.proof, out.proof.claim));

    SUBCASE("k perturbed") {
        Claim bad = out.proof.claim;
        bad.k += 1;
        CHECK_FALSE(backend->verify(params, out.proof, bad));
    }
    SUBCASE("result perturbed") {
        Claim bad = out.proof.claim;
        bad.result_numerator += 1;
        CHECK_FALSE(backend->verify(params, out.proof, bad));
    }
    SUBCASE("root perturbed") {
        Claim bad = out.proof.claim;
        bad.roots[1].second.e[2] += Fe::one();
        CHECK_FALSE(backend->verify(params, out.proof, bad));
    }
    SUBCASE("root dropped") {
        Claim bad = out.proof.claim;
        bad.roots.pop_back();
        CHECK_FALSE(backend->verify(params, out.proof, bad));
    }
}

TEST_CASE("prove_step chains and rejects tampered predecessors") {
    BackendParams params = setup({8, 6}, 16);
    AccountId acc = acc_from_seed(31);
    Chain chain = generate_chain(31, 2, 16, 2, acc);
    QuerySpec spec;
    spec.predicate = Predicate::ACCOUNT_TOUCH;
    spec.account = acc;
    spec.finalize = Finalize::AVERAGE;
    auto [claim, witness] = build_claim(chain, spec);
    auto batches = partition_batches(witness, claim, params.shape.batch_capacity);
    REQUIRE(batches.size() == 2);

    auto backend = make_backend("stark");
    StepChain c1 = backend->prove_base(params, batches[0], spec);
    StepChain c2 = backend->prove_step(params, c1, batches[1]);
    ProofBundle fin = backend->prove_reduce(params, c2, claim, spec);
    CHECK(backend->verify(params, fin, claim));

    // tampering the predecessor's public inputs is detected
    StepChain bad = c1;
    bad.statements[0].sum_out += 1;
    CHECK_THROWS_AS(backend->prove_step(params, bad, batches[1]), InvalidPredecessor);
}

TEST_CASE("proof size is pinned by the shape") {
    StepFixture f = make_step_fixture(41, 2);
    StepCircuit ckt(f.params.shape.batch_capacity, f.params.shape.tree_depth);
    Trace tr = ckt.build_trace(f.batch, f.st);
    auto p1 = stark_prove(ckt, tr, StepCircuit::publics_of(f.st), f.params.parameter_digest);

    StepFixture g = make_step_fixture(42, 7);
    Trace tr2 = ckt.build_trace(g.batch, g.st);
    auto p2 = stark_prove(ckt, tr2, StepCircuit::publics_of(g.st), g.params.parameter_digest);
    CHECK(p1.size() == p2.size());
}
