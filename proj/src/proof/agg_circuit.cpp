#include "sslc/proof/agg_circuit.hpp"

namespace sslc {

namespace {
size_t next_pow2(size_t x) {
    size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}
}  // namespace

AggCircuit::AggCircuit(uint64_t max_steps) {
    rows_ = std::max<size_t>(512, next_pow2(max_steps * SLOT_ROWS));
}

AirShape AggCircuit::shape() const {
    AirShape s;
    s.n_cols = N_COLS;
    s.rows = rows_;
    s.slot_rows = SLOT_ROWS;
    s.periodic.assign(7, std::vector<Fe>(SLOT_ROWS, Fe::zero()));
    for (size_t p = 0; p < 5; p++) s.periodic[P_POS0 + p][p] = Fe::one();
    s.periodic[P_SLST][SLOT_ROWS - 1] = Fe::one();
    for (size_t p = 0; p + 1 < SLOT_ROWS; p++)
        s.periodic[P_POW16][p] = Fe(uint64_t(1) << (4 * (p + 1)));
    return s;
}

Digest AggCircuit::fold_roots(const std::vector<std::pair<uint64_t, Digest>>& roots) {
    Digest acc{};
    for (const auto& [idx, root] : roots) {
        std::array<Fe, 9> in{acc[0], acc[1], acc[2], acc[3], Fe::from_u64(idx),
                             root[0], root[1], root[2], root[3]};
        acc = poseidon::sponge(in, DomainTags::ROOTSACC);
    }
    return acc;
}

std::vector<Fe> AggCircuit::publics_of(const Claim& claim, const std::array<Fe, 8>& spec_enc) {
    std::vector<Fe> pub(19);
    pub[A_PKIND] = spec_enc[0];
    for (int i = 0; i < 5; i++) pub[A_ACC0 + i] = spec_enc[1 + i];
    pub[A_TAG] = spec_enc[6];
    pub[A_FKIND] = spec_enc[7];
    pub[A_K] = Fe::from_u64(claim.k);
    pub[A_NUM] = Fe::from_u64(claim.result_numerator);
    pub[A_DEN] = Fe::from_u64(claim.result_denominator);
    Digest acc = fold_roots(claim.roots);
    for (int i = 0; i < 4; i++) pub[A_RACC0 + i] = acc[i];
    Digest gen = StepStatement::genesis_digest();
    for (int i = 0; i < 4; i++) pub[A_GEN0 + i] = gen[i];
    return pub;
}

std::vector<Boundary> AggCircuit::boundaries(const std::vector<Fe>& pub) const {
    std::vector<Boundary> b;
    auto one_col = [&](size_t row, size_t col, Fe value) {
        b.push_back(Boundary{row, {{col, Fe::one()}}, Fe::zero(), value});
    };
    for (int j = 0; j < 4; j++) one_col(0, RACC + j, Fe::zero());
    for (int j = 0; j < 4; j++) one_col(0, RPRV + j, pub[A_GEN0 + j]);
    one_col(0, RSUMIN, Fe::zero());
    one_col(0, RCNTIN, Fe::zero());
    one_col(0, RSTP, Fe::zero());
    one_col(0, RMININ, Fe::zero());
    one_col(0, RNB, Fe::one());
    one_col(0, RPBLK, Fe::raw(Fe::P - 1));
    one_col(0, RFS, Fe::zero());
    one_col(0, RFC, Fe::zero());

    // finalize mux with constant selectors
    uint64_t f = pub[A_FKIND].v;
    Fe kA = Fe(f == 0 ? 1 : 0), kT = Fe(f == 1 ? 1 : 0), kC = Fe(f == 2 ? 1 : 0);
    size_t last = rows_ - 1;
    one_col(last, RFCX, pub[A_K]);
    b.push_back(Boundary{last, {{RFSX, kA + kT}, {RFCX, kC}}, Fe::zero(), pub[A_NUM]});
    b.push_back(Boundary{last, {{RFCX, kA}}, kT + kC, pub[A_DEN]});
    for (int j = 0; j < 4; j++) one_col(last, RACCX + j, pub[A_RACC0 + j]);
    return b;
}

Trace AggCircuit::build_trace(const std::vector<StepStatement>& steps) const {
    size_t n_slots = rows_ / SLOT_ROWS;
    if (steps.size() > n_slots) throw WitnessUnsatisfiable("step count exceeds aggregator capacity");

    Trace tr(N_COLS, rows_);
    std::array<Fe, PoseidonPlan::STORED> stored;
    auto fill_perm = [&](size_t row, const poseidon::State& in) -> poseidon::State {
        poseidon::State out = PoseidonPlan::run_trace(in, stored);
        for (unsigned j = 0; j < 12; j++) tr.at(PIN + j, row) = in[j];
        for (unsigned k = 0; k < PoseidonPlan::STORED; k++) tr.at(PST + k, row) = stored[k];
        return out;
    };

    Digest acc{};  // roots accumulator before the current record
    Fe pblk = Fe::raw(Fe::P - 1);
    uint64_t fs = 0, fc = 0;
    uint64_t prev_block = 0;

    for (size_t slot = 0; slot < n_slots; slot++) {
        size_t base = slot * SLOT_ROWS;
        bool e = slot < steps.size();
        StepStatement st = e ? steps[slot] : StepStatement{};
        // the first slot is a block start by convention (bound at row 0)
        bool nb = slot == 0 || (e && st.block_index != prev_block);
        auto rec = st.to_elements();

        // record sponge rows 0..2
        poseidon::State s{};
        s[8] = Fe::from_u64(DomainTags::RECORD);
        s[9] = Fe(StepStatement::N_ELEMENTS);
        for (int j = 0; j < 8; j++) s[j] = rec[j];
        poseidon::State out0 = fill_perm(base + 0, s);
        s = out0;
        for (int j = 0; j < 8; j++) s[j] += rec[8 + j];
        poseidon::State out1 = fill_perm(base + 1, s);
        s = out1;
        for (int j = 0; j < 7; j++) s[j] += rec[16 + j];
        poseidon::State out2 = fill_perm(base + 2, s);
        Digest dig{{out2[0], out2[1], out2[2], out2[3]}};

        // roots accumulator rows 3..4
        Digest accnew{};
        if (e && nb) {
            poseidon::State r{};
            r[8] = Fe::from_u64(DomainTags::ROOTSACC);
            r[9] = Fe(9);
            for (int j = 0; j < 4; j++) r[j] = acc[j];
            r[4] = Fe::from_u64(st.block_index);
            for (int j = 0; j < 3; j++) r[5 + j] = st.root[j];
            poseidon::State ro0 = fill_perm(base + 3, r);
            r = ro0;
            r[0] += st.root[3];
            poseidon::State ro1 = fill_perm(base + 4, r);
            accnew = Digest{{ro1[0], ro1[1], ro1[2], ro1[3]}};
        } else {
            fill_perm(base + 3, poseidon::State{});
            fill_perm(base + 4, poseidon::State{});
        }
        for (size_t p = 5; p < SLOT_ROWS; p++) fill_perm(base + p, poseidon::State{});

        // block-index gap bits
        uint64_t diff = 0;
        if (e && nb) {
            Fe gap = Fe::from_u64(st.block_index) - pblk - Fe::one();
            if (gap.v >> 32) throw WitnessUnsatisfiable("block index gap exceeds 32 bits");
            diff = gap.v;
        }

        Digest accnext = e ? (nb ? accnew : acc) : acc;
        uint64_t fsx = e ? st.sum_out : fs;
        uint64_t fcx = e ? st.count_out : fc;

        uint64_t bacc = 0;
        for (size_t p = 0; p < SLOT_ROWS; p++) {
            size_t row = base + p;
            for (int j = 0; j < 4; j++) {
                uint64_t bit = (diff >> (4 * p + j)) & 1;
                tr.at(RBB + j, row) = Fe(bit);
                bacc += bit << (4 * p + j);
            }
            tr.at(RBAC, row) = Fe::from_u64(bacc);
            tr.at(RE, row) = Fe(e ? 1 : 0);
            tr.at(RNB, row) = Fe(nb ? 1 : 0);
            tr.at(RBLK, row) = rec[7];
            for (int j = 0; j < 4; j++) tr.at(RROOT + j, row) = rec[8 + j];
            tr.at(RSTP, row) = rec[12];
            tr.at(RMININ, row) = rec[13];
            tr.at(RMINOUT, row) = rec[14];
            tr.at(RSUMIN, row) = rec[15];
            tr.at(RSUMOUT, row) = rec[16];
            tr.at(RCNTIN, row) = rec[17];
            tr.at(RCNTOUT, row) = rec[18];
            for (int j = 0; j < 4; j++) tr.at(RPRV + j, row) = rec[19 + j];
            for (int j = 0; j < 4; j++) tr.at(RDIG + j, row) = dig[j];
            tr.at(RPBLK, row) = pblk;
            for (int j = 0; j < 4; j++) {
                tr.at(RACC + j, row) = acc[j];
                tr.at(RACCN + j, row) = accnew[j];
                tr.at(RACCX + j, row) = accnext[j];
            }
            tr.at(RFS, row) = Fe::from_u64(fs);
            tr.at(RFC, row) = Fe::from_u64(fc);
            tr.at(RFSX, row) = Fe::from_u64(fsx);
            tr.at(RFCX, row) = Fe::from_u64(fcx);
        }

        pblk = rec[7];
        acc = accnext;
        fs = fsx;
        fc = fcx;
        if (e) prev_block = st.block_index;
    }
    return tr;
}

}  // namespace sslc
