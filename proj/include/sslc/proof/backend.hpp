#pragma once

#include <memory>
#include <string>

#include "sslc/proof/stark.hpp"
#include "sslc/statement.hpp"

namespace sslc {

struct UnsupportedShape : std::runtime_error {
    explicit UnsupportedShape(const std::string& what)
        : std::runtime_error("UnsupportedShape: " + what) {}
};
struct InvalidPredecessor : std::runtime_error {
    explicit InvalidPredecessor(const std::string& what)
        : std::runtime_error("InvalidPredecessor: " + what) {}
};

struct CircuitShape {
    uint64_t batch_capacity = 0;
    uint64_t tree_depth = 0;
};

// Common reference data for one proof system instance: the circuit shape
// plus a digest binding the pinned field/sponge/FRI parameters. Every
// proof under equal params composes with every other.
struct BackendParams {
    CircuitShape shape;
    uint64_t max_steps = 256;
    Hash32 parameter_digest{};
};

// Deterministic, transparent setup (no ceremony).
BackendParams setup(const CircuitShape& shape, uint64_t max_steps = 256);

// The linear recursive chain grown step by step: one statement and one
// step proof per batch. Each extension verifies its predecessor before
// chaining, and every statement embeds the predecessor's record digest,
// so tampering anywhere in the prefix invalidates the chain.
struct StepChain {
    std::string backend;
    std::vector<StepStatement> statements;
    std::vector<std::vector<uint8_t>> proofs;

    const StepStatement& last() const { return statements.back(); }
};

// Final client-facing proof: opaque bytes plus the public inputs
// (the claim and the spec field encoding its digest commits to).
struct ProofBundle {
    std::string backend;
    Claim claim;
    std::array<Fe, 8> spec_encoding{};
    std::vector<uint8_t> bytes;
    Hash32 parameter_digest{};

    // length-prefixed bytes, canonical-JSON public inputs, parameter digest
    std::vector<uint8_t> serialize() const;
    static ProofBundle deserialize(const std::vector<uint8_t>& data);  // throws on malformed
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string name() const = 0;

    // First batch of a chain.
    virtual StepChain prove_base(const BackendParams& params, const ProofBatch& batch,
                                 const QuerySpec& spec) const = 0;
    // Extends a verified chain with the next batch.
    virtual StepChain prove_step(const BackendParams& params, const StepChain& prev,
                                 const ProofBatch& batch) const = 0;
    // Final proof whose public inputs are exactly the claim.
    virtual ProofBundle prove_reduce(const BackendParams& params, const StepChain& chain,
                                     const Claim& claim, const QuerySpec& spec) const = 0;
    virtual bool verify(const BackendParams& params, const ProofBundle& proof,
                        const Claim& claim) const = 0;
};

// name: "stark" (succinct) or "native" (relation checker with an
// authenticated transcript, for protocol development and fast tests).
std::unique_ptr<Backend> make_backend(const std::string& name);

// Splits per-block witness batches into proof batches of at most
// batch_capacity transactions, in ascending leaf-index order.
std::vector<ProofBatch> partition_batches(const Witness& witness, const Claim& claim,
                                          uint64_t batch_capacity);

// Derives the statement the next batch must prove.
StepStatement next_statement(const StepStatement* prev, const ProofBatch& batch,
                             const QuerySpec& spec);

struct ProveQueryOutput {
    QueryResult result;
    ChainView view;
    ProofBundle proof;
};

// build_claim -> partition -> base/step/reduce. Step proofs for disjoint
// batches run on parallel threads; the chain's statements are derived
// sequentially first.
ProveQueryOutput prove_query(const Backend& backend, const BackendParams& params,
                             const Chain& chain, const QuerySpec& spec, unsigned threads = 2);

// Same pipeline from an explicit (claim, witness) pair; the behavior
// layer uses this to emit internally-consistent proofs for doctored
// claims.
ProveQueryOutput prove_from_witness(const Backend& backend, const BackendParams& params,
                                    const Claim& claim, const Witness& witness,
                                    const QuerySpec& spec, unsigned threads = 2);

}  // namespace sslc
