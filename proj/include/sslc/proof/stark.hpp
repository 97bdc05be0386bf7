#pragma once

#include <cstdint>
#include <vector>

#include "sslc/proof/agg_circuit.hpp"
#include "sslc/proof/step_circuit.hpp"

namespace sslc {

// Transparent STARK over the trace of a circuit: commit the LDE, fold all
// constraints into one quotient with Fiat-Shamir challenges, bind with a
// DEEP out-of-domain sample, then run FRI on the DEEP polynomial down to
// a constant-size final polynomial, with grinding and query sampling from
// the same transcript. Commitment trees and the transcript use BLAKE2b;
// everything the circuits hash in-AIR stays Poseidon.
//
// `context` binds the pinned system parameters (and anything else the
// caller wants the proof tied to) into the transcript.

std::vector<uint8_t> stark_prove(const StepCircuit& ckt, const Trace& trace,
                                 const std::vector<Fe>& publics, const Hash32& context);
std::vector<uint8_t> stark_prove(const AggCircuit& ckt, const Trace& trace,
                                 const std::vector<Fe>& publics, const Hash32& context);

bool stark_verify(const StepCircuit& ckt, const std::vector<Fe>& publics,
                  const std::vector<uint8_t>& proof, const Hash32& context);
bool stark_verify(const AggCircuit& ckt, const std::vector<Fe>& publics,
                  const std::vector<uint8_t>& proof, const Hash32& context);

// Expected serialized size for a circuit's shape; proofs under one shape
// are all exactly this long.
size_t stark_proof_size(const StepCircuit& ckt);
size_t stark_proof_size(const AggCircuit& ckt);

}  // namespace sslc
