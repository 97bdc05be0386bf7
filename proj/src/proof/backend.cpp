#include "sslc/proof/backend.hpp"

#include <algorithm>
#include <future>
#include <map>

#include <json.hpp>

namespace sslc {

BackendParams setup(const CircuitShape& shape, uint64_t max_steps) {
    if (shape.batch_capacity < 1 || shape.tree_depth < 1)
        throw UnsupportedShape("batch_capacity and tree_depth must be >= 1");
    if (shape.tree_depth > 28) throw UnsupportedShape("tree_depth beyond supported range");
    if (max_steps < 1) throw UnsupportedShape("max_steps must be >= 1");
    BackendParams p;
    p.shape = shape;
    p.max_steps = max_steps;
    Blake b;
    Hash32 sys = SystemParams::get().digest();
    b.update(sys.data(), sys.size());
    b.update_u64(shape.batch_capacity);
    b.update_u64(shape.tree_depth);
    b.update_u64(max_steps);
    p.parameter_digest = b.finish();
    return p;
}

StepStatement next_statement(const StepStatement* prev, const ProofBatch& batch,
                             const QuerySpec& spec) {
    StepStatement st = prev ? *prev : StepStatement::first(spec);
    if (prev) {
        st.step_index = prev->step_index + 1;
        st.sum_in = prev->sum_out;
        st.count_in = prev->count_out;
        st.min_in = prev->block_index == batch.block_index ? prev->min_out : 0;
        st.carry_hash_in = prev->block_index == batch.block_index ? prev->carry_hash_out : Digest{};
        st.prev_digest = prev->record_digest();
    }
    st.block_index = batch.block_index;
    st.root = batch.root;
    st.sum_out = st.sum_in;
    st.count_out = st.count_in;
    st.min_out = st.min_in;
    st.carry_hash_out = st.carry_hash_in;
    for (size_t i = 0; i < batch.txs.size(); i++) {
        st.sum_out += batch.txs[i].amount;
        st.count_out += 1;
        st.min_out = batch.paths[i].leaf_index + 1;
        st.carry_hash_out = batch.txs[i].tx_hash;
    }
    return st;
}

std::vector<ProofBatch> partition_batches(const Witness& witness, const Claim& claim,
                                          uint64_t batch_capacity) {
    // group per block, keeping block order
    std::vector<ProofBatch> out;
    std::map<uint64_t, std::vector<std::pair<Transaction, MerklePath>>> per_block;
    for (const auto& b : witness.batches)
        for (size_t i = 0; i < b.transactions.size(); i++)
            per_block[b.block_index].emplace_back(b.transactions[i], b.paths[i]);
    for (auto& [blk, items] : per_block) {
        std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
            return a.second.leaf_index < b.second.leaf_index;
        });
        auto root = claim.root_of(blk);
        Digest root_d = root ? *root : Digest{};
        for (size_t off = 0; off < items.size(); off += batch_capacity) {
            ProofBatch pb;
            pb.block_index = blk;
            pb.root = root_d;
            size_t end = std::min(items.size(), off + batch_capacity);
            for (size_t i = off; i < end; i++) {
                pb.txs.push_back(items[i].first);
                pb.paths.push_back(items[i].second);
            }
            out.push_back(std::move(pb));
        }
    }
    return out;
}

namespace {

// shared chain validation: statement linkage + per-backend proof check;
// an empty chain is the valid proof of an empty claim
void check_chain_links(const StepChain& chain) {
    if (chain.statements.size() != chain.proofs.size())
        throw InvalidPredecessor("statements and proofs misaligned");
    Digest expect = StepStatement::genesis_digest();
    uint64_t sum = 0, count = 0, step = 0;
    for (size_t i = 0; i < chain.statements.size(); i++) {
        const StepStatement& st = chain.statements[i];
        if (st.prev_digest != expect) throw InvalidPredecessor("record digest chain broken");
        if (st.step_index != step) throw InvalidPredecessor("step index broken");
        if (st.sum_in != sum || st.count_in != count)
            throw InvalidPredecessor("accumulator continuity broken");
        if (i > 0) {
            const StepStatement& pv = chain.statements[i - 1];
            if (st.block_index == pv.block_index) {
                if (st.min_in != pv.min_out || st.root != pv.root)
                    throw InvalidPredecessor("intra-block continuity broken");
            } else if (st.block_index < pv.block_index) {
                throw InvalidPredecessor("block order broken");
            } else if (st.min_in != 0) {
                throw InvalidPredecessor("fresh block must reset the index carry");
            }
        }
        expect = st.record_digest();
        sum = st.sum_out;
        count = st.count_out;
        step++;
    }
}

void check_claim_binding(const StepChain& chain, const Claim& claim, const QuerySpec& spec) {
    if (claim.spec_digest != spec.digest())
        throw WitnessUnsatisfiable("claim committed to a different query");
    uint64_t sum = 0, count = 0;
    std::vector<std::pair<uint64_t, Digest>> roots;
    for (const auto& st : chain.statements) {
        if (roots.empty() || roots.back().first != st.block_index)
            roots.emplace_back(st.block_index, st.root);
        else if (roots.back().second != st.root)
            throw WitnessUnsatisfiable("inconsistent roots within a block");
    }
    if (!chain.statements.empty()) {
        sum = chain.statements.back().sum_out;
        count = chain.statements.back().count_out;
    }
    if (roots != claim.roots) throw WitnessUnsatisfiable("claimed roots mismatch the chain");
    if (count != claim.k) throw WitnessUnsatisfiable("claimed k mismatches the chain");
    auto enc = spec.encoding();
    uint64_t fin = enc[7].v;
    uint64_t num = fin == 2 ? count : sum;
    uint64_t den = fin == 0 ? count : 1;
    if (num != claim.result_numerator || den != claim.result_denominator)
        throw WitnessUnsatisfiable("claimed result mismatches the chain fold");
}

// -------------------------------------------------------------------- stark

class StarkBackend final : public Backend {
public:
    std::string name() const override { return "stark"; }

    StepChain prove_base(const BackendParams& params, const ProofBatch& batch,
                         const QuerySpec& spec) const override {
        StepChain chain;
        chain.backend = name();
        append(params, chain, batch, spec);
        return chain;
    }

    StepChain prove_step(const BackendParams& params, const StepChain& prev,
                         const ProofBatch& batch) const override {
        if (prev.statements.empty()) throw InvalidPredecessor("prove_step needs a predecessor");
        verify_chain(params, prev);
        StepChain next = prev;
        append(params, next, batch, QuerySpec{});  // spec binding carried by the chain
        return next;
    }

    ProofBundle prove_reduce(const BackendParams& params, const StepChain& chain,
                             const Claim& claim, const QuerySpec& spec) const override {
        verify_chain(params, chain);
        check_claim_binding(chain, claim, spec);
        AggCircuit agg(params.max_steps);
        Trace tr = agg.build_trace(chain.statements);
        std::vector<Fe> pub = AggCircuit::publics_of(claim, spec.encoding());
        ProofBundle out;
        out.backend = name();
        out.claim = claim;
        out.spec_encoding = spec.encoding();
        out.parameter_digest = params.parameter_digest;
        out.bytes = stark_prove(agg, tr, pub, params.parameter_digest);
        return out;
    }

    bool verify(const BackendParams& params, const ProofBundle& proof,
                const Claim& claim) const override {
        if (proof.backend != name()) return false;
        if (proof.parameter_digest != params.parameter_digest) return false;
        // the spec encoding rides along; the claim pins it by digest
        if (poseidon::sponge(proof.spec_encoding, DomainTags::SPEC) != claim.spec_digest)
            return false;
        AggCircuit agg(params.max_steps);
        std::vector<Fe> pub = AggCircuit::publics_of(claim, proof.spec_encoding);
        return stark_verify(agg, pub, proof.bytes, params.parameter_digest);
    }

    // internal fast path: used by prove_query to run batches in parallel
    std::vector<uint8_t> prove_one(const BackendParams& params, const ProofBatch& batch,
                                   const StepStatement& st) const {
        StepCircuit ckt(params.shape.batch_capacity, params.shape.tree_depth);
        Trace tr = ckt.build_trace(batch, st);
        return stark_prove(ckt, tr, StepCircuit::publics_of(st), params.parameter_digest);
    }

    void verify_chain(const BackendParams& params, const StepChain& chain) const {
        if (chain.backend != name()) throw InvalidPredecessor("backend mismatch");
        check_chain_links(chain);
        StepCircuit ckt(params.shape.batch_capacity, params.shape.tree_depth);
        for (size_t i = 0; i < chain.statements.size(); i++)
            if (!stark_verify(ckt, StepCircuit::publics_of(chain.statements[i]), chain.proofs[i],
                              params.parameter_digest))
                throw InvalidPredecessor("step proof " + std::to_string(i) +
                                         " failed verification");
    }

private:
    void append(const BackendParams& params, StepChain& chain, const ProofBatch& batch,
                const QuerySpec& spec) const {
        const StepStatement* prev = chain.statements.empty() ? nullptr : &chain.statements.back();
        StepStatement st = next_statement(prev, batch, spec);
        chain.proofs.push_back(prove_one(params, batch, st));
        chain.statements.push_back(st);
    }
};

// ------------------------------------------------------------------- native

class NativeBackend final : public Backend {
public:
    std::string name() const override { return "native"; }

    StepChain prove_base(const BackendParams& params, const ProofBatch& batch,
                         const QuerySpec& spec) const override {
        StepChain chain;
        chain.backend = name();
        append(params, chain, batch, spec);
        return chain;
    }

    StepChain prove_step(const BackendParams& params, const StepChain& prev,
                         const ProofBatch& batch) const override {
        if (prev.statements.empty()) throw InvalidPredecessor("prove_step needs a predecessor");
        verify_chain(params, prev);
        StepChain next = prev;
        append(params, next, batch, QuerySpec{});
        return next;
    }

    ProofBundle prove_reduce(const BackendParams& params, const StepChain& chain,
                             const Claim& claim, const QuerySpec& spec) const override {
        verify_chain(params, chain);
        check_claim_binding(chain, claim, spec);
        ProofBundle out;
        out.backend = name();
        out.claim = claim;
        out.spec_encoding = spec.encoding();
        out.parameter_digest = params.parameter_digest;
        out.bytes = transcript_bytes(params, claim, spec.encoding());
        return out;
    }

    bool verify(const BackendParams& params, const ProofBundle& proof,
                const Claim& claim) const override {
        if (proof.backend != name()) return false;
        if (proof.parameter_digest != params.parameter_digest) return false;
        if (poseidon::sponge(proof.spec_encoding, DomainTags::SPEC) != claim.spec_digest)
            return false;
        return proof.bytes == transcript_bytes(params, claim, proof.spec_encoding);
    }

    // native "proof" of one batch: run the statement checks directly
    std::vector<uint8_t> prove_one(const BackendParams& params, const ProofBatch& batch,
                                   const StepStatement& st) const {
        if (batch.txs.size() > params.shape.batch_capacity)
            throw WitnessUnsatisfiable("batch exceeds capacity");
        uint64_t min_allowed = st.min_in;
        uint64_t sum = st.sum_in, count = st.count_in;
        bool is_tag = !st.p_kind.is_zero();
        for (size_t i = 0; i < batch.txs.size(); i++) {
            const Transaction& tx = batch.txs[i];
            const MerklePath& path = batch.paths[i];
            if (path.siblings.size() > params.shape.tree_depth)
                throw WitnessUnsatisfiable("merkle path deeper than circuit shape");
            if (!verify_path(batch.root, tx.compute_hash(), path))
                throw WitnessUnsatisfiable("merkle path does not verify");
            if (path.leaf_index < min_allowed)
                throw WitnessUnsatisfiable("leaf index order violated in batch");
            min_allowed = path.leaf_index + 1;
            bool matches;
            if (is_tag) {
                matches = Fe(tx.payload_tag) == st.tag;
            } else {
                auto sl = tx.sender.limbs(), rl = tx.receiver.limbs();
                auto want = std::array<Fe, 5>{st.acc[0], st.acc[1], st.acc[2], st.acc[3],
                                              st.acc[4]};
                matches = sl == want || rl == want;
            }
            if (!matches) throw WitnessUnsatisfiable("transaction fails the spec predicate");
            sum += tx.amount;
            count += 1;
        }
        if (sum != st.sum_out || count != st.count_out || min_allowed != st.min_out)
            throw WitnessUnsatisfiable("statement accumulators do not match the batch");
        // authenticated transcript entry binding params and statement
        Blake b;
        b.update(params.parameter_digest.data(), 32);
        b.update("native-step");
        for (Fe e : st.to_elements()) b.update_u64(e.v);
        Hash32 h = b.finish();
        return std::vector<uint8_t>(h.begin(), h.end());
    }

    void verify_chain(const BackendParams& params, const StepChain& chain) const {
        if (chain.backend != name()) throw InvalidPredecessor("backend mismatch");
        check_chain_links(chain);
        for (size_t i = 0; i < chain.statements.size(); i++) {
            Blake b;
            b.update(params.parameter_digest.data(), 32);
            b.update("native-step");
            for (Fe e : chain.statements[i].to_elements()) b.update_u64(e.v);
            Hash32 h = b.finish();
            if (chain.proofs[i] != std::vector<uint8_t>(h.begin(), h.end()))
                throw InvalidPredecessor("step transcript " + std::to_string(i) + " invalid");
        }
    }

private:
    void append(const BackendParams& params, StepChain& chain, const ProofBatch& batch,
                const QuerySpec& spec) const {
        const StepStatement* prev = chain.statements.empty() ? nullptr : &chain.statements.back();
        StepStatement st = next_statement(prev, batch, spec);
        chain.proofs.push_back(prove_one(params, batch, st));
        chain.statements.push_back(st);
    }

    static std::vector<uint8_t> transcript_bytes(const BackendParams& params, const Claim& claim,
                                                 const std::array<Fe, 8>& enc) {
        Blake b;
        b.update(params.parameter_digest.data(), 32);
        b.update("native-v1");
        std::string cj = claim.canonical_json();
        b.update(cj);
        for (Fe e : enc) b.update_u64(e.v);
        Hash32 h = b.finish();
        return std::vector<uint8_t>(h.begin(), h.end());
    }
};

}  // namespace

std::unique_ptr<Backend> make_backend(const std::string& name) {
    if (name == "stark") return std::make_unique<StarkBackend>();
    if (name == "native") return std::make_unique<NativeBackend>();
    throw std::runtime_error("unknown backend: " + name);
}

ProveQueryOutput prove_from_witness(const Backend& backend, const BackendParams& params,
                                    const Claim& claim, const Witness& witness,
                                    const QuerySpec& spec, unsigned threads) {
    auto batches = partition_batches(witness, claim, params.shape.batch_capacity);
    if (batches.size() > params.max_steps)
        throw UnsupportedShape("chain depth exceeds max_steps; raise it at setup");

    StepChain chain;
    chain.backend = backend.name();
    const StepStatement* prev = nullptr;
    for (const auto& b : batches) {
        StepStatement st = next_statement(prev, b, spec);
        chain.statements.push_back(st);
        prev = &chain.statements.back();
    }
    chain.proofs.resize(batches.size());

    auto* stark = dynamic_cast<const StarkBackend*>(&backend);
    auto* native = dynamic_cast<const NativeBackend*>(&backend);
    auto prove_range = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; i++) {
            chain.proofs[i] = stark ? stark->prove_one(params, batches[i], chain.statements[i])
                                    : native->prove_one(params, batches[i], chain.statements[i]);
        }
    };
    if (threads >= 2 && stark && batches.size() >= 2) {
        size_t mid = batches.size() / 2;
        auto fut = std::async(std::launch::async, prove_range, 0, mid);
        prove_range(mid, batches.size());
        fut.get();
    } else {
        prove_range(0, batches.size());
    }

    ProveQueryOutput out;
    out.proof = backend.prove_reduce(params, chain, claim, spec);
    out.result.value_numerator = claim.result_numerator;
    out.result.value_denominator = claim.result_denominator;
    out.result.k = claim.k;
    out.view = view_of(claim);
    return out;
}

ProveQueryOutput prove_query(const Backend& backend, const BackendParams& params,
                             const Chain& chain, const QuerySpec& spec, unsigned threads) {
    auto [claim, witness] = build_claim(chain, spec);
    return prove_from_witness(backend, params, claim, witness, spec, threads);
}

// ------------------------------------------------------------ proof bundle

std::vector<uint8_t> ProofBundle::serialize() const {
    nlohmann::ordered_json j;
    j["backend"] = backend;
    j["claim"] = nlohmann::ordered_json::parse(claim.canonical_json());
    auto& enc = j["spec_encoding"] = nlohmann::ordered_json::array();
    for (Fe e : spec_encoding) enc.push_back(e.v);
    std::string pj = j.dump();

    std::vector<uint8_t> out;
    auto put_u64 = [&](uint64_t v) {
        for (int i = 0; i < 8; i++) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
    };
    put_u64(bytes.size());
    out.insert(out.end(), bytes.begin(), bytes.end());
    put_u64(pj.size());
    out.insert(out.end(), pj.begin(), pj.end());
    out.insert(out.end(), parameter_digest.begin(), parameter_digest.end());
    return out;
}

ProofBundle ProofBundle::deserialize(const std::vector<uint8_t>& data) {
    size_t off = 0;
    auto get_u64 = [&]() {
        if (off + 8 > data.size()) throw std::runtime_error("truncated proof bundle");
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(data[off + i]) << (8 * i);
        off += 8;
        return v;
    };
    ProofBundle p;
    uint64_t blen = get_u64();
    if (off + blen > data.size()) throw std::runtime_error("truncated proof bytes");
    p.bytes.assign(data.begin() + off, data.begin() + off + blen);
    off += blen;
    uint64_t jlen = get_u64();
    if (off + jlen + 32 != data.size()) throw std::runtime_error("malformed proof bundle");
    std::string pj(data.begin() + off, data.begin() + off + jlen);
    off += jlen;
    std::copy(data.begin() + off, data.begin() + off + 32, p.parameter_digest.begin());

    auto j = nlohmann::json::parse(pj);
    p.backend = j.at("backend").get<std::string>();
    p.claim = Claim::from_json(j.at("claim").dump());
    auto enc = j.at("spec_encoding");
    if (enc.size() != 8) throw std::runtime_error("bad spec encoding");
    for (int i = 0; i < 8; i++) p.spec_encoding[i] = Fe::from_u64(enc[i].get<uint64_t>());
    return p;
}

}  // namespace sslc
