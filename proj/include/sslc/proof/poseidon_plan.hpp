#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "sslc/params.hpp"
#include "sslc/poseidon.hpp"

namespace sslc {

// Circuit-side description of the Poseidon permutation. One trace row
// carries the 12 input cells plus the S-box outputs of every round
// (12 per full round, 1 per partial round, 118 cells). All other
// intermediate state cells are linear in those, so the constraint system
// only needs, per stored cell, "stored == (linear combo)^7", plus 12
// linear output combos. The combos are derived symbolically from the
// pinned MDS/round constants at startup.
struct PoseidonPlan {
    static constexpr unsigned IN = SpongeParams::WIDTH;  // 12 input cells
    static constexpr unsigned STORED =
        SpongeParams::FULL_ROUNDS * SpongeParams::WIDTH + SpongeParams::PARTIAL_ROUNDS;  // 118
    static constexpr unsigned CELLS = IN + STORED;  // columns a permutation row occupies

    // Sparse linear expression over [const, in_0..in_11, s_0..s_117].
    struct Lin {
        Fe c0;
        std::vector<std::pair<uint16_t, Fe>> terms;  // index 0..11 -> in, 12.. -> stored
    };

    std::array<Lin, STORED> sbox_input;  // stored[k] == sbox_input[k]^7
    std::array<Lin, SpongeParams::WIDTH> output;

    static const PoseidonPlan& get();

    // Runs the permutation capturing the stored cells in plan order.
    static poseidon::State run_trace(const poseidon::State& in, std::array<Fe, STORED>& stored);

    // Evaluates a combo against accessor fns for in/stored cells.
    template <class V, class CellFn>
    V eval(const Lin& lin, CellFn&& cell) const {
        V acc = V(lin.c0);
        for (auto& [idx, coeff] : lin.terms) acc = acc + cell(idx) * coeff;
        return acc;
    }
};

}  // namespace sslc
