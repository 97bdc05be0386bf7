#pragma once

#include <array>
#include <cstdint>

#include "sslc/proof/air.hpp"
#include "sslc/proof/step_circuit.hpp"
#include "sslc/query.hpp"
#include "sslc/statement.hpp"

namespace sslc {

// AIR over the chain of step records. Each slot of 8 rows re-hashes one
// step's public-input record in-circuit (3 sponge rows), threads the hash
// chain, the fold accumulators and the per-block index carries across
// records, folds every block-start (index, root) pair into a running
// roots accumulator (2 sponge rows), and finally binds the accumulated
// totals and the roots accumulator to the claim. Verifying this one
// fixed-shape proof therefore checks the whole linear chain against the
// claim x = ({roots}, k, r, spec_digest).
class AggCircuit {
public:
    explicit AggCircuit(uint64_t max_steps);

    uint64_t max_steps() const { return rows_ / SLOT_ROWS; }

    AirShape shape() const;
    size_t n_publics() const { return 19; }
    uint8_t circuit_id() const { return 2; }
    std::vector<Boundary> boundaries(const std::vector<Fe>& publics) const;

    Trace build_trace(const std::vector<StepStatement>& steps) const;

    // Aggregator public inputs derived from a claim + spec encoding; the
    // roots accumulator is the client-side fold over the claimed roots.
    static std::vector<Fe> publics_of(const Claim& claim, const std::array<Fe, 8>& spec_enc);
    static Digest fold_roots(const std::vector<std::pair<uint64_t, Digest>>& roots);

    static constexpr size_t SLOT_ROWS = 8;

    // column layout
    static constexpr size_t PIN = 0, PST = 12;
    static constexpr size_t RE = 130, RNB = 131, RBLK = 132, RROOT = 133;  // root: 4
    static constexpr size_t RSTP = 137, RMININ = 138, RMINOUT = 139;
    static constexpr size_t RSUMIN = 140, RSUMOUT = 141, RCNTIN = 142, RCNTOUT = 143;
    static constexpr size_t RPRV = 144, RDIG = 148;  // 4 each
    static constexpr size_t RPBLK = 152, RACC = 153, RACCN = 157, RACCX = 161;  // acc: 4 each
    static constexpr size_t RFS = 165, RFC = 166, RFSX = 167, RFCX = 168;
    static constexpr size_t RBAC = 169, RBB = 170;  // 4 bit columns
    static constexpr size_t N_COLS = 174;

    // periodic tables
    static constexpr size_t P_POS0 = 0, P_POS1 = 1, P_POS2 = 2, P_POS3 = 3, P_POS4 = 4,
                            P_SLST = 5, P_POW16 = 6;

    // publics layout
    static constexpr size_t A_PKIND = 0, A_ACC0 = 1, A_TAG = 6, A_FKIND = 7, A_K = 8, A_NUM = 9,
                            A_DEN = 10, A_RACC0 = 11, A_GEN0 = 15;

    template <class Ctx>
    void eval(Ctx& x) const {
        using V = typename Ctx::V;
        const auto& plan = PoseidonPlan::get();
        auto cell = [&](uint16_t idx) {
            return idx < 12 ? x.cur(PIN + idx) : x.cur(PST + idx - 12);
        };
        for (unsigned k = 0; k < PoseidonPlan::STORED; k++) {
            V lin = plan.template eval<V>(plan.sbox_input[k], cell);
            V l2 = lin * lin;
            V l3 = l2 * lin;
            x.c(x.cur(PST + k) - l3 * l3 * lin);
        }
        std::array<V, 12> out;
        for (unsigned j = 0; j < 12; j++) out[j] = plan.template eval<V>(plan.output[j], cell);

        V p0 = x.per(P_POS0), p1 = x.per(P_POS1), p2 = x.per(P_POS2), p3 = x.per(P_POS3);
        V p4 = x.per(P_POS4), sl = x.per(P_SLST), pw = x.per(P_POW16);
        V one = x.k(Fe::one());
        V e = x.cur(RE), nb = x.cur(RNB);

        // record sponge: capacity init and enabled records bind the spec
        x.c(p0 * (x.cur(PIN + 8) - x.k(Fe(DomainTags::RECORD))));
        x.c(p0 * (x.cur(PIN + 9) - x.k(Fe(StepStatement::N_ELEMENTS))));
        x.c(p0 * x.cur(PIN + 10));
        x.c(p0 * x.cur(PIN + 11));
        x.c(p0 * e * (x.cur(PIN + 0) - x.pub(A_PKIND)));
        for (unsigned j = 0; j < 5; j++) x.c(p0 * e * (x.cur(PIN + 1 + j) - x.pub(A_ACC0 + j)));
        x.c(p0 * e * (x.cur(PIN + 6) - x.pub(A_TAG)));
        x.c(p0 * (x.cur(RBLK) - x.cur(PIN + 7)));
        // record mirrors from the absorb deltas
        for (unsigned j = 0; j < 4; j++) x.cn(p0 * (x.cur(RROOT + j) - x.nxt(PIN + j) + out[j]));
        x.cn(p0 * (x.cur(RSTP) - x.nxt(PIN + 4) + out[4]));
        x.cn(p0 * (x.cur(RMININ) - x.nxt(PIN + 5) + out[5]));
        x.cn(p0 * (x.cur(RMINOUT) - x.nxt(PIN + 6) + out[6]));
        x.cn(p0 * (x.cur(RSUMIN) - x.nxt(PIN + 7) + out[7]));
        for (unsigned j = 0; j < 4; j++) x.cn(p0 * (x.nxt(PIN + 8 + j) - out[8 + j]));
        x.cn(p1 * (x.cur(RSUMOUT) - x.nxt(PIN + 0) + out[0]));
        x.cn(p1 * (x.cur(RCNTIN) - x.nxt(PIN + 1) + out[1]));
        x.cn(p1 * (x.cur(RCNTOUT) - x.nxt(PIN + 2) + out[2]));
        for (unsigned j = 0; j < 4; j++) x.cn(p1 * (x.cur(RPRV + j) - x.nxt(PIN + 3 + j) + out[3 + j]));
        x.cn(p1 * (x.nxt(PIN + 7) - out[7]));
        for (unsigned j = 0; j < 4; j++) x.cn(p1 * (x.nxt(PIN + 8 + j) - out[8 + j]));
        for (unsigned j = 0; j < 4; j++) x.c(p2 * (x.cur(RDIG + j) - out[j]));

        // roots accumulator sponge on enabled block-start records
        {
            V g = p3 * e * nb;
            for (unsigned j = 0; j < 4; j++) x.c(g * (x.cur(PIN + j) - x.cur(RACC + j)));
            x.c(g * (x.cur(PIN + 4) - x.cur(RBLK)));
            for (unsigned j = 0; j < 3; j++) x.c(g * (x.cur(PIN + 5 + j) - x.cur(RROOT + j)));
            x.c(g * (x.cur(PIN + 8) - x.k(Fe(DomainTags::ROOTSACC))));
            x.c(g * (x.cur(PIN + 9) - x.k(Fe(9))));
            x.c(g * x.cur(PIN + 10));
            x.c(g * x.cur(PIN + 11));
            x.cn(g * (x.nxt(PIN + 0) - out[0] - x.cur(RROOT + 3)));
            for (unsigned j = 1; j < 8; j++) x.cn(g * (x.nxt(PIN + j) - out[j]));
            for (unsigned j = 0; j < 4; j++) x.cn(g * (x.nxt(PIN + 8 + j) - out[8 + j]));
            for (unsigned j = 0; j < 4; j++) x.c(p4 * e * nb * (x.cur(RACCN + j) - out[j]));
        }

        // registers hold for the whole slot
        for (size_t reg :
             {RE, RNB, RBLK, RROOT, RROOT + 1, RROOT + 2, RROOT + 3, RSTP, RMININ, RMINOUT,
              RSUMIN, RSUMOUT, RCNTIN, RCNTOUT, RPRV, RPRV + 1, RPRV + 2, RPRV + 3, RDIG,
              RDIG + 1, RDIG + 2, RDIG + 3, RPBLK, RACC, RACC + 1, RACC + 2, RACC + 3, RACCN,
              RACCN + 1, RACCN + 2, RACCN + 3, RFS, RFC})
            x.cn((one - sl) * (x.nxt(reg) - x.cur(reg)));

        x.c(p0 * e * (e - one));
        x.c(p0 * nb * (nb - one));

        // block-index gap decomposition: 4 bits per row
        for (unsigned j = 0; j < 4; j++) x.c(x.cur(RBB + j) * (x.cur(RBB + j) - one));
        {
            V bits0 = x.cur(RBB) + x.k(Fe(2)) * x.cur(RBB + 1) + x.k(Fe(4)) * x.cur(RBB + 2) +
                      x.k(Fe(8)) * x.cur(RBB + 3);
            x.c(p0 * (x.cur(RBAC) - bits0));
            V bitsn = x.nxt(RBB) + x.k(Fe(2)) * x.nxt(RBB + 1) + x.k(Fe(4)) * x.nxt(RBB + 2) +
                      x.k(Fe(8)) * x.nxt(RBB + 3);
            x.cn((one - sl) * (x.nxt(RBAC) - x.cur(RBAC) - bitsn * pw));
        }
        // strictly increasing block index on enabled block starts
        x.c(sl * e * nb * (x.cur(RBLK) - x.cur(RPBLK) - one - x.cur(RBAC)));
        x.cn(sl * (x.nxt(RPBLK) - x.cur(RBLK)));

        // chain and continuity across records
        {
            V en = x.nxt(RE);
            for (unsigned j = 0; j < 4; j++) x.cn(sl * en * (x.nxt(RPRV + j) - x.cur(RDIG + j)));
            x.cn(sl * en * (x.nxt(RSUMIN) - x.cur(RSUMOUT)));
            x.cn(sl * en * (x.nxt(RCNTIN) - x.cur(RCNTOUT)));
            x.cn(sl * en * (x.nxt(RSTP) - x.cur(RSTP) - one));
            V cont = sl * en * (one - x.nxt(RNB));
            x.cn(cont * (x.nxt(RBLK) - x.cur(RBLK)));
            for (unsigned j = 0; j < 4; j++) x.cn(cont * (x.nxt(RROOT + j) - x.cur(RROOT + j)));
            x.cn(cont * (x.nxt(RMININ) - x.cur(RMINOUT)));
            x.cn(sl * en * x.nxt(RNB) * x.nxt(RMININ));
            x.cn(sl * en * (one - e));  // enabled records form a prefix
        }

        // roots accumulator and final totals step once per slot
        for (unsigned j = 0; j < 4; j++) {
            x.c(sl * (x.cur(RACCX + j) - e * (nb * x.cur(RACCN + j) + (one - nb) * x.cur(RACC + j)) -
                      (one - e) * x.cur(RACC + j)));
            x.cn(sl * (x.nxt(RACC + j) - x.cur(RACCX + j)));
        }
        x.c(sl * (x.cur(RFSX) - e * x.cur(RSUMOUT) - (one - e) * x.cur(RFS)));
        x.c(sl * (x.cur(RFCX) - e * x.cur(RCNTOUT) - (one - e) * x.cur(RFC)));
        x.cn(sl * (x.nxt(RFS) - x.cur(RFSX)));
        x.cn(sl * (x.nxt(RFC) - x.cur(RFCX)));
    }

private:
    size_t rows_;
};

}  // namespace sslc
