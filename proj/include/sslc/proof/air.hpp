#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sslc/field.hpp"
#include "sslc/proof/poseidon_plan.hpp"

namespace sslc {

struct WitnessUnsatisfiable : std::runtime_error {
    explicit WitnessUnsatisfiable(const std::string& what)
        : std::runtime_error("WitnessUnsatisfiable: " + what) {}
};

// Column-major execution trace.
struct Trace {
    size_t rows = 0;
    std::vector<std::vector<Fe>> cols;

    Trace() = default;
    Trace(size_t n_cols, size_t n_rows) : rows(n_rows), cols(n_cols, std::vector<Fe>(n_rows)) {}
    Fe& at(size_t col, size_t row) { return cols[col][row]; }
    Fe get(size_t col, size_t row) const { return cols[col][row]; }
};

// Boundary constraint: linear combo of columns at one row equals a value.
struct Boundary {
    size_t row;
    std::vector<std::pair<size_t, Fe>> terms;  // (column, coefficient)
    Fe constant;
    Fe value;
};

struct AirShape {
    size_t n_cols = 0;
    size_t rows = 0;       // power of two
    size_t slot_rows = 0;  // schedule period, power of two dividing rows
    std::vector<std::vector<Fe>> periodic;  // each table has slot_rows entries
};

// A circuit provides:
//   AirShape shape() const;
//   size_t n_publics() const;  uint8_t circuit_id() const;
//   std::vector<Boundary> boundaries(const std::vector<Fe>& publics) const;
//   template <class Ctx> void eval(Ctx&) const;
// eval() emits every polynomial constraint through the context:
//   ctx.cur(c)/ctx.nxt(c)  trace cells on the current/next row
//   ctx.per(k)             periodic table k at the current row
//   ctx.pub(i), ctx.k(Fe)  public input / literal constant
//   ctx.c(expr)            constraint on the current row
//   ctx.cn(expr)           constraint referencing nxt; masked on the last row
// Emission order is part of the proof system: all contexts replay it.

// --- contexts ---------------------------------------------------------------

// Counts emissions; used to size the challenge powers.
struct CountCtx {
    using V = Fe;
    size_t count = 0;
    V cur(size_t) const { return Fe::zero(); }
    V nxt(size_t) const { return Fe::zero(); }
    V per(size_t) const { return Fe::zero(); }
    V pub(size_t) const { return Fe::zero(); }
    V k(Fe) const { return Fe::zero(); }
    void c(V) { count++; }
    void cn(V) { count++; }
};

// Checks that every constraint vanishes on the witness trace; reports the
// first violation. Runs in the base field row by row.
struct TraceCheckCtx {
    using V = Fe;
    const Trace* trace;
    const AirShape* shape;
    const std::vector<Fe>* publics;
    size_t row = 0;
    size_t emission = 0;
    bool failed = false;
    size_t fail_emission = 0;

    V cur(size_t c) const { return trace->cols[c][row]; }
    V nxt(size_t c) const { return trace->cols[c][(row + 1) % trace->rows]; }
    V per(size_t k) const { return (*shape).periodic[k][row % shape->slot_rows]; }
    V pub(size_t i) const { return (*publics)[i]; }
    V k(Fe x) const { return x; }
    void c(V expr) { record(expr); }
    void cn(V expr) {
        if (row + 1 == trace->rows) {
            emission++;  // masked by the edge factor on the last row
            return;
        }
        record(expr);
    }
    void record(V expr) {
        if (!failed && !expr.is_zero()) {
            failed = true;
            fail_emission = emission;
        }
        emission++;
    }
};

// Prover-side evaluation at one LDE point; values stay in the base field,
// the challenge fold lifts into the extension.
struct ProverCtx {
    using V = Fe;
    const std::vector<std::vector<Fe>>* lde;
    size_t i = 0;         // LDE row
    size_t next_off = 0;  // blowup
    size_t n_lde = 0;
    const std::vector<std::vector<Fe>>* periodic_lde;  // tables of period blowup*slot_rows
    size_t periodic_span = 0;
    const std::vector<Fe>* publics;
    const std::vector<Fe2>* alpha_pows;
    Fe edge;  // x_i - g^{n-1}
    Fe2 acc{};
    size_t emission = 0;

    Fe cur(size_t c) const { return (*lde)[c][i]; }
    Fe nxt(size_t c) const { return (*lde)[c][(i + next_off) % n_lde]; }
    Fe per(size_t k) const { return (*periodic_lde)[k][i % periodic_span]; }
    Fe pub(size_t p) const { return (*publics)[p]; }
    Fe k(Fe x) const { return x; }
    void c(Fe expr) { acc += (*alpha_pows)[emission++] * expr; }
    void cn(Fe expr) { acc += (*alpha_pows)[emission++] * (edge * expr); }
};

// Verifier-side evaluation at the out-of-domain point z.
struct OodCtx {
    using V = Fe2;
    const std::vector<Fe2>* ood_cur;
    const std::vector<Fe2>* ood_nxt;
    std::vector<Fe2> periodic_at_z;
    const std::vector<Fe>* publics;
    const std::vector<Fe2>* alpha_pows;
    Fe2 edge;  // z - g^{n-1}
    Fe2 acc{};
    size_t emission = 0;

    V cur(size_t c) const { return (*ood_cur)[c]; }
    V nxt(size_t c) const { return (*ood_nxt)[c]; }
    V per(size_t k) const { return periodic_at_z[k]; }
    V pub(size_t i) const { return Fe2::from((*publics)[i]); }
    V k(Fe x) const { return Fe2::from(x); }
    void c(V expr) { acc += (*alpha_pows)[emission++] * expr; }
    void cn(V expr) { acc += (*alpha_pows)[emission++] * (edge * expr); }
};

}  // namespace sslc
