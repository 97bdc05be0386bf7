#include "sslc/proof/poseidon_plan.hpp"

namespace sslc {

namespace {

constexpr unsigned W = SpongeParams::WIDTH;
constexpr unsigned BASIS = 1 + PoseidonPlan::IN + PoseidonPlan::STORED;  // const + cells

using Dense = std::array<Fe, BASIS>;

PoseidonPlan::Lin compress(const Dense& d) {
    PoseidonPlan::Lin lin;
    lin.c0 = d[0];
    for (unsigned i = 1; i < BASIS; i++)
        if (!d[i].is_zero()) lin.terms.emplace_back(static_cast<uint16_t>(i - 1), d[i]);
    return lin;
}

Dense unit(unsigned cell_index) {  // cell_index in [0, IN+STORED)
    Dense d{};
    d[1 + cell_index] = Fe::one();
    return d;
}

PoseidonPlan build_plan() {
    const auto& sp = SystemParams::get().sponge;
    PoseidonPlan plan;

    std::array<Dense, W> state;
    for (unsigned i = 0; i < W; i++) state[i] = unit(i);

    unsigned stored = 0;
    auto apply_mds = [&](std::array<Dense, W>& st) {
        std::array<Dense, W> out{};
        for (unsigned i = 0; i < W; i++)
            for (unsigned j = 0; j < W; j++) {
                Fe m = sp.mds[i][j];
                for (unsigned b = 0; b < BASIS; b++) out[i][b] += m * st[j][b];
            }
        st = out;
    };
    auto sbox_cell = [&](unsigned i, unsigned r) {
        state[i][0] += sp.round_constants[r][i];
        plan.sbox_input[stored] = compress(state[i]);
        state[i] = unit(PoseidonPlan::IN + stored);
        stored++;
    };

    unsigned r = 0;
    constexpr unsigned HALF = SpongeParams::FULL_ROUNDS / 2;
    for (unsigned k = 0; k < HALF; k++, r++) {
        for (unsigned i = 0; i < W; i++) sbox_cell(i, r);
        apply_mds(state);
    }
    for (unsigned k = 0; k < SpongeParams::PARTIAL_ROUNDS; k++, r++) {
        // round constants land on every cell, only cell 0 goes through the S-box
        for (unsigned i = 1; i < W; i++) state[i][0] += sp.round_constants[r][i];
        sbox_cell(0, r);
        apply_mds(state);
    }
    for (unsigned k = 0; k < HALF; k++, r++) {
        for (unsigned i = 0; i < W; i++) sbox_cell(i, r);
        apply_mds(state);
    }
    for (unsigned i = 0; i < W; i++) plan.output[i] = compress(state[i]);
    return plan;
}

}  // namespace

const PoseidonPlan& PoseidonPlan::get() {
    static const PoseidonPlan plan = build_plan();
    return plan;
}

poseidon::State PoseidonPlan::run_trace(const poseidon::State& in,
                                        std::array<Fe, STORED>& stored) {
    const auto& sp = SystemParams::get().sponge;
    poseidon::State s = in;
    unsigned idx = 0;
    auto sbox = [](Fe x) {
        Fe x2 = x * x;
        Fe x3 = x2 * x;
        return x3 * x3 * x;
    };
    auto mds = [&](poseidon::State& st) {
        poseidon::State out{};
        for (unsigned i = 0; i < W; i++) {
            unsigned __int128 acc_lo = 0;
            uint64_t acc_hi = 0;
            for (unsigned j = 0; j < W; j++) {
                unsigned __int128 t = static_cast<unsigned __int128>(sp.mds[i][j].v) * st[j].v;
                acc_lo += static_cast<uint64_t>(t);
                acc_hi += static_cast<uint64_t>(t >> 64);
            }
            out[i] = Fe::raw(Fe::reduce128(acc_lo)) + Fe::raw(Fe::mul_reduce(acc_hi, Fe::EPSILON));
        }
        st = out;
    };

    unsigned r = 0;
    constexpr unsigned HALF = SpongeParams::FULL_ROUNDS / 2;
    for (unsigned k = 0; k < HALF; k++, r++) {
        for (unsigned i = 0; i < W; i++) {
            s[i] = sbox(s[i] + sp.round_constants[r][i]);
            stored[idx++] = s[i];
        }
        mds(s);
    }
    for (unsigned k = 0; k < SpongeParams::PARTIAL_ROUNDS; k++, r++) {
        for (unsigned i = 0; i < W; i++) s[i] += sp.round_constants[r][i];
        s[0] = sbox(s[0]);
        stored[idx++] = s[0];
        mds(s);
    }
    for (unsigned k = 0; k < HALF; k++, r++) {
        for (unsigned i = 0; i < W; i++) {
            s[i] = sbox(s[i] + sp.round_constants[r][i]);
            stored[idx++] = s[i];
        }
        mds(s);
    }
    return s;
}

}  // namespace sslc
