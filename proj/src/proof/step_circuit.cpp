#include "sslc/proof/step_circuit.hpp"

namespace sslc {

namespace {
size_t next_pow2(size_t x) {
    size_t p = 1;
    while (p < x) p <<= 1;
    return p;
}
}  // namespace

std::array<Fe, StepStatement::N_ELEMENTS> StepStatement::to_elements() const {
    return {p_kind, acc[0], acc[1], acc[2], acc[3], acc[4], tag,
            Fe::from_u64(block_index),
            root[0], root[1], root[2], root[3],
            Fe::from_u64(step_index),
            Fe::from_u64(min_in), Fe::from_u64(min_out),
            Fe::from_u64(sum_in), Fe::from_u64(sum_out),
            Fe::from_u64(count_in), Fe::from_u64(count_out),
            prev_digest[0], prev_digest[1], prev_digest[2], prev_digest[3]};
}

Digest StepStatement::record_digest() const {
    auto e = to_elements();
    return poseidon::sponge(e, DomainTags::RECORD);
}

Digest StepStatement::genesis_digest() {
    std::array<Fe, 1> zero{Fe::zero()};
    return poseidon::sponge(zero, DomainTags::GENESIS);
}

StepStatement StepStatement::first(const QuerySpec& spec) {
    StepStatement st{};
    auto enc = spec.encoding();
    st.p_kind = enc[0];
    for (int i = 0; i < 5; i++) st.acc[i] = enc[1 + i];
    st.tag = enc[6];
    st.prev_digest = genesis_digest();
    return st;
}

StepCircuit::StepCircuit(uint64_t batch_capacity, uint64_t tree_depth)
    : capacity_(batch_capacity), depth_(tree_depth) {
    slot_rows_ = next_pow2(depth_ + 4);
    rows_ = std::max<size_t>(512, next_pow2(capacity_ * slot_rows_));
}

AirShape StepCircuit::shape() const {
    AirShape s;
    s.n_cols = N_COLS;
    s.rows = rows_;
    s.slot_rows = slot_rows_;
    s.periodic.assign(8, std::vector<Fe>(slot_rows_, Fe::zero()));
    s.periodic[P_A1][0] = Fe::one();
    s.periodic[P_A2][1] = Fe::one();
    s.periodic[P_LEAF][2] = Fe::one();
    for (uint64_t t = 0; t < depth_; t++) {
        s.periodic[P_LVL][3 + t] = Fe::one();
        s.periodic[P_POW][3 + t] = Fe(uint64_t(1) << (t + 1));
    }
    s.periodic[P_LST][3 + depth_ - 1] = Fe::one();
    s.periodic[P_SLST][slot_rows_ - 1] = Fe::one();
    for (size_t p = 3 + depth_ - 1; p + 1 < slot_rows_; p++) s.periodic[P_IPS][p] = Fe::one();
    return s;
}

std::vector<Fe> StepCircuit::publics_of(const StepStatement& st) {
    auto e = st.to_elements();
    return std::vector<Fe>(e.begin(), e.end());
}

std::vector<Boundary> StepCircuit::boundaries(const std::vector<Fe>& pub) const {
    std::vector<Boundary> b;
    auto one_col = [&](size_t row, size_t col, Fe value) {
        b.push_back(Boundary{row, {{col, Fe::one()}}, Fe::zero(), value});
    };
    one_col(0, CSUM, pub[PUB_SUM_IN]);
    one_col(0, CCNT, pub[PUB_CNT_IN]);
    one_col(0, CMIN, pub[PUB_MIN_IN]);
    one_col(rows_ - 1, CSUM, pub[PUB_SUM_OUT]);
    one_col(rows_ - 1, CCNT, pub[PUB_CNT_OUT]);
    one_col(rows_ - 1, CMND, pub[PUB_MIN_OUT]);
    return b;
}

Trace StepCircuit::build_trace(const ProofBatch& batch, const StepStatement& st) const {
    size_t n_slots = slots();
    if (batch.txs.size() > capacity_ || batch.txs.size() > n_slots)
        throw WitnessUnsatisfiable("batch exceeds circuit capacity");
    if (batch.txs.size() != batch.paths.size())
        throw WitnessUnsatisfiable("transactions and paths misaligned");
    for (const auto& p : batch.paths)
        if (p.siblings.size() > depth_)
            throw WitnessUnsatisfiable("merkle path deeper than circuit shape");

    Trace tr(N_COLS, rows_);
    std::array<Fe, PoseidonPlan::STORED> stored;

    auto fill_perm = [&](size_t row, const poseidon::State& in) -> poseidon::State {
        poseidon::State out = PoseidonPlan::run_trace(in, stored);
        for (unsigned j = 0; j < 12; j++) tr.at(PIN + j, row) = in[j];
        for (unsigned k = 0; k < PoseidonPlan::STORED; k++) tr.at(PST + k, row) = stored[k];
        return out;
    };

    uint64_t min_allowed = st.min_in;
    uint64_t run_sum = st.sum_in, run_count = st.count_in;

    for (size_t slot = 0; slot < n_slots; slot++) {
        size_t base = slot * slot_rows_;
        bool enabled = slot < batch.txs.size();
        Transaction tx;  // zero transaction for disabled slots
        uint64_t leaf_index = 0;
        size_t path_len = 0;
        std::vector<Digest> sibs;
        if (enabled) {
            tx = batch.txs[slot];
            leaf_index = batch.paths[slot].leaf_index;
            sibs = batch.paths[slot].siblings;
            path_len = sibs.size();
        }
        auto limbs = tx.limbs();

        // leaf pipeline: two absorbs + content hash
        poseidon::State s{};
        s[8] = Fe::from_u64(DomainTags::ELEMENTS);
        s[9] = Fe(15);
        for (int j = 0; j < 8; j++) s[j] = limbs[j];
        poseidon::State out0 = fill_perm(base + 0, s);
        s = out0;
        for (int j = 0; j < 7; j++) s[j] += limbs[8 + j];
        poseidon::State out1 = fill_perm(base + 1, s);
        poseidon::State s2{};
        s2[8] = Fe::from_u64(DomainTags::ELEMENTS);
        s2[9] = Fe(4);
        for (int j = 0; j < 4; j++) s2[j] = out1[j];
        poseidon::State out2 = fill_perm(base + 2, s2);
        Digest cur{{out2[0], out2[1], out2[2], out2[3]}};

        // flags and registers
        bool ms = enabled && tx.sender.limbs() == std::array<Fe, 5>{st.acc[0], st.acc[1], st.acc[2],
                                                                    st.acc[3], st.acc[4]};
        bool mr = enabled && tx.receiver.limbs() == std::array<Fe, 5>{st.acc[0], st.acc[1],
                                                                      st.acc[2], st.acc[3],
                                                                      st.acc[4]};
        bool mt = enabled && Fe(tx.payload_tag) == st.tag;
        uint64_t amt = enabled ? tx.amount : 0;

        uint64_t idx_val = 0;
        uint64_t diff = 0;
        if (enabled) {
            if (leaf_index < min_allowed)
                throw WitnessUnsatisfiable("leaf index order violated in batch");
            diff = leaf_index - min_allowed;
            if (depth_ < 64 && diff >> depth_)
                throw WitnessUnsatisfiable("index gap exceeds tree depth range");
        }

        // level rows
        uint64_t idx_acc = 0, dac_acc = 0;
        for (uint64_t t = 0; t < depth_; t++) {
            size_t row = base + 3 + t;
            bool lone_root = enabled && path_len == 0 && t == 0;  // single-leaf tree
            bool active = enabled && (t < path_len || lone_root);
            bool lone = lone_root || (active && t < path_len && sibs[t].is_zero());
            bool bit = active && !lone && ((leaf_index >> t) & 1);
            bool dbit = enabled && ((diff >> t) & 1);

            poseidon::State in{};
            if (active) {
                if (lone) {
                    for (int j = 0; j < 4; j++) in[j] = cur[j];
                    in[8] = Fe::from_u64(DomainTags::NODE1);
                    in[9] = Fe(4);
                } else {
                    const Digest& sib = sibs[t];
                    for (int j = 0; j < 4; j++) {
                        in[j] = bit ? sib[j] : cur[j];
                        in[4 + j] = bit ? cur[j] : sib[j];
                    }
                    in[8] = Fe::from_u64(DomainTags::NODE2);
                    in[9] = Fe(8);
                }
            }
            poseidon::State pout = fill_perm(row, in);

            idx_acc += bit ? (uint64_t(1) << t) : 0;
            dac_acc += dbit ? (uint64_t(1) << t) : 0;
            tr.at(CB, row) = Fe(bit ? 1 : 0);
            tr.at(CM, row) = Fe(lone ? 1 : 0);
            tr.at(CA, row) = Fe(active ? 1 : 0);
            tr.at(CDB, row) = Fe(dbit ? 1 : 0);
            tr.at(CIDX, row) = Fe::from_u64(idx_acc);
            tr.at(CDAC, row) = Fe::from_u64(dac_acc);
            for (int j = 0; j < 4; j++) tr.at(CUR + j, row) = cur[j];
            if (active) cur = Digest{{pout[0], pout[1], pout[2], pout[3]}};
        }
        if (enabled && idx_acc != leaf_index)
            throw WitnessUnsatisfiable("leaf index does not fit the path depth");

        // idle rows: keep the permutation honest on zero state
        for (size_t p = 3 + depth_; p < slot_rows_; p++) {
            fill_perm(base + p, poseidon::State{});
            tr.at(CIDX, base + p) = Fe::from_u64(idx_acc);
            tr.at(CDAC, base + p) = Fe::from_u64(dac_acc);
        }

        uint64_t next_min = enabled ? leaf_index + 1 : min_allowed;
        uint64_t pre_sum = run_sum, pre_count = run_count;
        if (enabled) {
            run_sum += amt;
            run_count += 1;
        }
        for (size_t p = 0; p < slot_rows_; p++) {
            size_t row = base + p;
            tr.at(CE, row) = Fe(enabled ? 1 : 0);
            tr.at(CMS, row) = Fe(ms ? 1 : 0);
            tr.at(CMR, row) = Fe(mr ? 1 : 0);
            tr.at(CMT, row) = Fe(mt ? 1 : 0);
            tr.at(CAMT, row) = Fe::from_u64(amt);
            tr.at(CMIN, row) = Fe::from_u64(min_allowed);
            tr.at(CMND, row) = Fe::from_u64(next_min);
            tr.at(CSUM, row) = Fe::from_u64(p == 0 ? pre_sum : run_sum);
            tr.at(CCNT, row) = Fe::from_u64(p == 0 ? pre_count : run_count);
        }
        min_allowed = next_min;
    }

    if (run_sum != st.sum_out || run_count != st.count_out || min_allowed != st.min_out)
        throw WitnessUnsatisfiable("statement accumulators do not match the batch");
    return tr;
}

}  // namespace sslc
