#pragma once

#include <array>
#include <cstdint>

#include "sslc/ledger.hpp"
#include "sslc/proof/air.hpp"
#include "sslc/query.hpp"

namespace sslc {

// Public inputs of one recursive step: the batch's block root, the spec
// binding, running fold accumulators, leaf-index carries realizing the
// cross-batch strict order, and the predecessor record digest forming the
// linear chain.
struct StepStatement {
    Fe p_kind;                // 0 account-touch, 1 payload-tag
    std::array<Fe, 5> acc;    // account limbs
    Fe tag;                   // payload tag value
    uint64_t block_index = 0;
    Digest root;
    uint64_t step_index = 0;
    uint64_t min_in = 0;      // smallest admissible leaf index in this batch
    uint64_t min_out = 0;     // carry for the next batch of the same block
    uint64_t sum_in = 0, sum_out = 0;
    uint64_t count_in = 0, count_out = 0;
    Digest carry_hash_in;     // last tx hash before this batch (informational)
    Digest carry_hash_out;
    Digest prev_digest;       // record digest of the predecessor step

    static constexpr size_t N_ELEMENTS = 23;
    std::array<Fe, N_ELEMENTS> to_elements() const;  // the in-circuit record
    Digest record_digest() const;
    static Digest genesis_digest();

    static StepStatement first(const QuerySpec& spec);  // zeroed accumulators
};

// One proof-layer batch: relevant transactions of a single block in
// ascending leaf-index order, with their openings.
struct ProofBatch {
    uint64_t block_index = 0;
    Digest root;
    std::vector<Transaction> txs;
    std::vector<MerklePath> paths;
};

// AIR for the per-batch relation. One Poseidon permutation per row; a
// transaction slot spans slot_rows rows: two absorb rows and a leaf row
// compute the leaf digest from the limbs, then tree_depth level rows walk
// the Merkle path (inactive levels pass through), trailing idle rows pad
// the slot to a power of two.
class StepCircuit {
public:
    StepCircuit(uint64_t batch_capacity, uint64_t tree_depth);

    uint64_t capacity() const { return capacity_; }
    uint64_t tree_depth() const { return depth_; }
    size_t slots() const { return rows_ / slot_rows_; }

    AirShape shape() const;
    size_t n_publics() const { return 23; }
    uint8_t circuit_id() const { return 1; }
    std::vector<Boundary> boundaries(const std::vector<Fe>& publics) const;

    // Fills the trace; throws WitnessUnsatisfiable when the batch cannot
    // satisfy the schedule (bad index order, path deeper than the shape).
    Trace build_trace(const ProofBatch& batch, const StepStatement& st) const;

    static std::vector<Fe> publics_of(const StepStatement& st);

    // column layout
    static constexpr size_t PIN = 0;    // permutation input cells
    static constexpr size_t PST = 12;   // stored S-box cells
    static constexpr size_t CUR = 130;  // current node digest (4)
    static constexpr size_t CB = 134, CM = 135, CA = 136, CDB = 137;
    static constexpr size_t CE = 138, CMS = 139, CMR = 140, CMT = 141;
    static constexpr size_t CAMT = 142, CIDX = 143, CDAC = 144;
    static constexpr size_t CMIN = 145, CMND = 146, CSUM = 147, CCNT = 148;
    static constexpr size_t N_COLS = 149;

    // periodic tables
    static constexpr size_t P_A1 = 0, P_A2 = 1, P_LEAF = 2, P_LVL = 3, P_LST = 4,
                            P_SLST = 5, P_POW = 6, P_IPS = 7;

    // publics layout
    static constexpr size_t PUB_PKIND = 0, PUB_ACC0 = 1, PUB_TAG = 6, PUB_BLK = 7,
                            PUB_ROOT0 = 8, PUB_STEP = 12, PUB_MIN_IN = 13, PUB_MIN_OUT = 14,
                            PUB_SUM_IN = 15, PUB_SUM_OUT = 16, PUB_CNT_IN = 17,
                            PUB_CNT_OUT = 18, PUB_PREV0 = 19;

    template <class Ctx>
    void eval(Ctx& x) const {
        using V = typename Ctx::V;
        const auto& plan = PoseidonPlan::get();
        auto cell = [&](uint16_t idx) {
            return idx < 12 ? x.cur(PIN + idx) : x.cur(PST + idx - 12);
        };
        // permutation round constraints: stored == (linear combo)^7
        for (unsigned k = 0; k < PoseidonPlan::STORED; k++) {
            V lin = plan.template eval<V>(plan.sbox_input[k], cell);
            V l2 = lin * lin;
            V l3 = l2 * lin;
            x.c(x.cur(PST + k) - l3 * l3 * lin);
        }
        std::array<V, 12> out;
        for (unsigned j = 0; j < 12; j++) out[j] = plan.template eval<V>(plan.output[j], cell);

        V a1 = x.per(P_A1), a2 = x.per(P_A2), lf = x.per(P_LEAF), lv = x.per(P_LVL);
        V ll = x.per(P_LST), sl = x.per(P_SLST), pw = x.per(P_POW), ip = x.per(P_IPS);
        V one = x.k(Fe::one());

        // absorb row 0: sponge capacity carries the tag and input length
        x.c(a1 * (x.cur(PIN + 8) - x.k(Fe(DomainTags::ELEMENTS))));
        x.c(a1 * (x.cur(PIN + 9) - x.k(Fe(15))));
        x.c(a1 * x.cur(PIN + 10));
        x.c(a1 * x.cur(PIN + 11));
        // absorb row 0 -> 1: capacity continuity, unused rate lane passes
        for (unsigned j = 0; j < 4; j++) x.cn(a1 * (x.nxt(PIN + 8 + j) - out[8 + j]));
        x.cn(a1 * (x.nxt(PIN + 7) - out[7]));
        // absorb row 1 -> leaf row: fresh 4-element sponge over the content
        for (unsigned j = 0; j < 4; j++) x.cn(a2 * (x.nxt(PIN + j) - out[j]));
        for (unsigned j = 4; j < 8; j++) x.cn(a2 * x.nxt(PIN + j));
        x.cn(a2 * (x.nxt(PIN + 8) - x.k(Fe(DomainTags::ELEMENTS))));
        x.cn(a2 * (x.nxt(PIN + 9) - x.k(Fe(4))));
        x.cn(a2 * x.nxt(PIN + 10));
        x.cn(a2 * x.nxt(PIN + 11));
        // leaf row -> level 0: load the leaf, start index accumulators
        for (unsigned j = 0; j < 4; j++) x.cn(lf * (x.nxt(CUR + j) - out[j]));
        x.cn(lf * (x.nxt(CIDX) - x.nxt(CB)));
        x.cn(lf * (x.nxt(CDAC) - x.nxt(CDB)));

        // level rows: flag algebra
        x.c(lv * x.cur(CB) * (x.cur(CB) - one));
        x.c(lv * x.cur(CM) * (x.cur(CM) - one));
        x.c(lv * x.cur(CA) * (x.cur(CA) - one));
        x.c(lv * x.cur(CDB) * (x.cur(CDB) - one));
        x.c(lv * x.cur(CM) * x.cur(CB));          // a lone node is a left child
        x.c(lv * x.cur(CM) * (one - x.cur(CA)));  // lone implies active
        x.c(lv * x.cur(CB) * (one - x.cur(CA)));  // inactive levels keep bit 0
        x.cn(lv * (one - ll) * x.nxt(CA) * (one - x.cur(CA)));  // active levels form a prefix

        // perm input arrangement on active level rows
        {
            V act = lv * x.cur(CA);
            V two = act * (one - x.cur(CM));
            V lone = act * x.cur(CM);
            for (unsigned j = 0; j < 4; j++) {
                x.c(two * (one - x.cur(CB)) * (x.cur(PIN + j) - x.cur(CUR + j)));
                x.c(two * x.cur(CB) * (x.cur(PIN + 4 + j) - x.cur(CUR + j)));
                x.c(lone * (x.cur(PIN + j) - x.cur(CUR + j)));
                x.c(lone * x.cur(PIN + 4 + j));
            }
            x.c(act * (x.cur(PIN + 8) - x.cur(CM) * x.k(Fe(DomainTags::NODE1)) -
                       (one - x.cur(CM)) * x.k(Fe(DomainTags::NODE2))));
            x.c(act * (x.cur(PIN + 9) - x.cur(CM) * x.k(Fe(4)) - (one - x.cur(CM)) * x.k(Fe(8))));
            x.c(act * x.cur(PIN + 10));
            x.c(act * x.cur(PIN + 11));
        }

        // walk: cur folds the parent, idx/diff accumulate path bits
        for (unsigned j = 0; j < 4; j++)
            x.cn(lv * (one - ll) *
                 (x.nxt(CUR + j) - x.cur(CA) * out[j] - (one - x.cur(CA)) * x.cur(CUR + j)));
        x.cn(lv * (one - ll) * (x.nxt(CIDX) - x.cur(CIDX) - x.nxt(CB) * pw));
        x.cn(lv * (one - ll) * (x.nxt(CDAC) - x.cur(CDAC) - x.nxt(CDB) * pw));
        x.cn(ip * (x.nxt(CIDX) - x.cur(CIDX)));
        x.cn(ip * (x.nxt(CDAC) - x.cur(CDAC)));

        // the folded parent at the last level must equal the claimed root
        for (unsigned j = 0; j < 4; j++)
            x.c(ll * x.cur(CE) *
                (x.cur(CA) * out[j] + (one - x.cur(CA)) * x.cur(CUR + j) - x.pub(PUB_ROOT0 + j)));

        // strict index order: idx - min decomposes into tree_depth bits
        x.c(sl * x.cur(CE) * (x.cur(CIDX) - x.cur(CMIN) - x.cur(CDAC)));
        x.c(sl * (x.cur(CMND) - x.cur(CE) * (x.cur(CIDX) + one) - (one - x.cur(CE)) * x.cur(CMIN)));
        x.cn(sl * (x.nxt(CMIN) - x.cur(CMND)));
        x.cn(sl * x.nxt(CE) * (one - x.cur(CE)));  // enabled slots form a prefix

        // slot registers hold for the whole slot
        for (size_t reg : {CE, CMS, CMR, CMT, CAMT, CMIN})
            x.cn((one - sl) * (x.nxt(reg) - x.cur(reg)));
        // fold accumulators step once per slot, entering absorb row 1
        x.cn(a1 * (x.nxt(CSUM) - x.cur(CSUM) - x.cur(CE) * x.cur(CAMT)));
        x.cn(a1 * (x.nxt(CCNT) - x.cur(CCNT) - x.cur(CE)));
        x.cn((one - a1) * (x.nxt(CSUM) - x.cur(CSUM)));
        x.cn((one - a1) * (x.nxt(CCNT) - x.cur(CCNT)));

        // predicate flags force equality with the spec's account / tag
        for (unsigned j = 0; j < 5; j++)
            x.c(a1 * x.cur(CMS) * (x.cur(PIN + j) - x.pub(PUB_ACC0 + j)));
        for (unsigned j = 0; j < 3; j++)
            x.c(a1 * x.cur(CMR) * (x.cur(PIN + 5 + j) - x.pub(PUB_ACC0 + j)));
        x.cn(a1 * x.cur(CMR) * (x.nxt(PIN + 0) - out[0] - x.pub(PUB_ACC0 + 3)));
        x.cn(a1 * x.cur(CMR) * (x.nxt(PIN + 1) - out[1] - x.pub(PUB_ACC0 + 4)));
        x.cn(a1 * x.cur(CMT) * (x.nxt(PIN + 6) - out[6] - x.pub(PUB_TAG)));
        x.c(a1 * x.cur(CMS) * (x.cur(CMS) - one));
        x.c(a1 * x.cur(CMR) * (x.cur(CMR) - one));
        x.c(a1 * x.cur(CMT) * (x.cur(CMT) - one));
        x.c(a1 * x.cur(CE) * (x.cur(CE) - one));
        // an enabled slot must match the predicate the spec asks for
        x.c(a1 * (one - x.pub(PUB_PKIND)) * x.cur(CE) * (one - x.cur(CMS)) * (one - x.cur(CMR)));
        x.c(a1 * x.pub(PUB_PKIND) * x.cur(CE) * (one - x.cur(CMT)));
        // the slot amount is the recomposed amount limbs
        x.cn(a1 * (x.cur(CAMT) - (x.nxt(PIN + 2) - out[2]) -
                   x.k(Fe(1ull << 56)) * (x.nxt(PIN + 3) - out[3])));
    }

private:
    uint64_t capacity_;
    uint64_t depth_;
    size_t slot_rows_;
    size_t rows_;
};

}  // namespace sslc
