#include "sslc/proof/stark.hpp"

#include <cassert>
#include <cstring>
#include <thread>

#include "sslc/proof/matrix_commit.hpp"
#include "sslc/proof/ntt.hpp"
#include "sslc/proof/transcript.hpp"

namespace sslc {

namespace {

constexpr unsigned BLOWUP_BITS = 3;
constexpr size_t BLOWUP = 1u << BLOWUP_BITS;
constexpr size_t N_QUERIES = 28;
constexpr unsigned GRIND_BITS = 20;
constexpr size_t FINAL_SIZE = 512;     // evaluations in the last FRI layer
constexpr size_t FINAL_POLY_LEN = 64;  // its coefficient count
constexpr size_t N_PIECES = 8;

unsigned log2_exact(size_t n) {
    unsigned b = 0;
    while ((size_t(1) << b) < n) b++;
    return b;
}

template <class Fn>
void par2(size_t begin, size_t end, Fn fn) {
    if (end - begin < 2) {
        fn(begin, end);
        return;
    }
    size_t mid = begin + (end - begin) / 2;
    std::thread th([&] { fn(begin, mid); });
    fn(mid, end);
    th.join();
}

// Periodic tables evaluated on the LDE coset; the value pattern repeats
// every BLOWUP * slot_rows points.
std::vector<std::vector<Fe>> periodic_on_lde(const AirShape& shape, Fe h, Fe w) {
    size_t n = shape.rows, q = shape.slot_rows;
    size_t span = BLOWUP * q;
    uint64_t stride = n / q;
    Fe omega = Fe::two_adic_root(log2_exact(n)).pow(stride);  // order q
    std::vector<Fe> om(q);
    for (size_t t = 0; t < q; t++) om[t] = omega.pow(t);
    // lagrange denominators over the q-subgroup
    std::vector<Fe> den(q, Fe::one());
    for (size_t p = 0; p < q; p++)
        for (size_t t = 0; t < q; t++)
            if (t != p) den[p] *= om[p] - om[t];
    batch_invert(den);

    Fe wq = w.pow(stride);      // order BLOWUP*q on the big domain
    Fe hq = h.pow(stride);
    std::vector<std::vector<Fe>> out(shape.periodic.size(), std::vector<Fe>(span));
    Fe y = hq;
    for (size_t i = 0; i < span; i++) {
        // lagrange basis at y
        std::vector<Fe> basis(q);
        for (size_t p = 0; p < q; p++) {
            Fe num = Fe::one();
            for (size_t t = 0; t < q; t++)
                if (t != p) num *= y - om[t];
            basis[p] = num * den[p];
        }
        for (size_t k = 0; k < shape.periodic.size(); k++) {
            Fe acc = Fe::zero();
            for (size_t p = 0; p < q; p++) acc += shape.periodic[k][p] * basis[p];
            out[k][i] = acc;
        }
        y *= wq;
    }
    return out;
}

std::vector<Fe2> periodic_at_point(const AirShape& shape, Fe2 z) {
    size_t n = shape.rows, q = shape.slot_rows;
    uint64_t stride = n / q;
    Fe omega = Fe::two_adic_root(log2_exact(n)).pow(stride);
    std::vector<Fe> om(q);
    for (size_t t = 0; t < q; t++) om[t] = omega.pow(t);
    std::vector<Fe> den(q, Fe::one());
    for (size_t p = 0; p < q; p++)
        for (size_t t = 0; t < q; t++)
            if (t != p) den[p] *= om[p] - om[t];
    batch_invert(den);
    Fe2 y = z.pow(stride);
    std::vector<Fe2> basis(q);
    for (size_t p = 0; p < q; p++) {
        Fe2 num = Fe2::one();
        for (size_t t = 0; t < q; t++)
            if (t != p) num *= y - Fe2::from(om[t]);
        basis[p] = num * den[p];
    }
    std::vector<Fe2> out(shape.periodic.size());
    for (size_t k = 0; k < shape.periodic.size(); k++) {
        Fe2 acc{};
        for (size_t p = 0; p < q; p++) acc += basis[p] * shape.periodic[k][p];
        out[k] = acc;
    }
    return out;
}

Fe boundary_combo(const Boundary& b, const std::vector<std::vector<Fe>>& lde, size_t i) {
    Fe acc = b.constant;
    for (auto& [col, coeff] : b.terms) acc += lde[col][i] * coeff;
    return acc;
}

Fe2 boundary_combo_ood(const Boundary& b, const std::vector<Fe2>& ood_cur) {
    Fe2 acc = Fe2::from(b.constant);
    for (auto& [col, coeff] : b.terms) acc += ood_cur[col] * coeff;
    return acc;
}

struct Writer {
    std::vector<uint8_t> buf;
    void u8(uint8_t v) { buf.push_back(v); }
    void u64(uint64_t v) {
        for (int i = 0; i < 8; i++) buf.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }
    void fe(Fe x) { u64(x.v); }
    void fe2(Fe2 x) {
        fe(x.a);
        fe(x.b);
    }
    void hash(const Hash32& h) { buf.insert(buf.end(), h.begin(), h.end()); }
    void bytes(std::string_view s) { buf.insert(buf.end(), s.begin(), s.end()); }
};

struct Reader {
    const uint8_t* p;
    const uint8_t* end;
    bool ok = true;

    bool need(size_t n) {
        if (static_cast<size_t>(end - p) < n) ok = false;
        return ok;
    }
    uint8_t u8() {
        if (!need(1)) return 0;
        return *p++;
    }
    uint64_t u64() {
        if (!need(8)) return 0;
        uint64_t v = 0;
        for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(p[i]) << (8 * i);
        p += 8;
        return v;
    }
    Fe fe() {
        uint64_t v = u64();
        if (v >= Fe::P) ok = false;
        return Fe::raw(v % Fe::P);
    }
    Fe2 fe2() {
        Fe a = fe(), b = fe();
        return {a, b};
    }
    Hash32 hash() {
        Hash32 h{};
        if (!need(32)) return h;
        std::copy(p, p + 32, h.begin());
        p += 32;
        return h;
    }
    bool match(std::string_view s) {
        if (!need(s.size())) return false;
        if (std::memcmp(p, s.data(), s.size()) != 0) ok = false;
        p += s.size();
        return ok;
    }
};

constexpr std::string_view MAGIC = "SSLCPF01";

Fe2 fri_fold_pair(Fe2 lo, Fe2 hi, Fe2 beta, Fe x_lo_inv_2) {
    // f'(x^2) = (f(x)+f(-x))/2 + beta * (f(x)-f(-x)) / (2x)
    Fe2 even = (lo + hi) * Fe(2).inv();
    Fe2 odd = (lo - hi) * x_lo_inv_2;
    return even + beta * odd;
}

struct FriLayout {
    size_t n_folds = 0;    // total folds
    size_t n_commits = 0;  // committed intermediate layers
};

FriLayout fri_layout(size_t big_n) {
    FriLayout f;
    f.n_folds = log2_exact(big_n) - log2_exact(FINAL_SIZE);
    f.n_commits = f.n_folds - 1;
    return f;
}

template <class Ckt>
size_t proof_size_impl(const Ckt& ckt) {
    AirShape shape = ckt.shape();
    size_t n = shape.rows, N = n * BLOWUP;
    FriLayout fl = fri_layout(N);
    size_t depth = log2_exact(N / 2);
    size_t per_query = shape.n_cols * 8 * 2 + depth * 32  // trace pair + path
                       + 2 * N_PIECES * 8 * 2 + depth * 32;  // quotient pieces
    size_t m = N;
    for (size_t l = 0; l < fl.n_commits; l++) {
        m /= 2;
        per_query += 2 * 16 + log2_exact(m / 2) * 32;
    }
    return MAGIC.size() + 1 + 8 + 8 + 32 + 32 + (shape.n_cols * 2 + N_PIECES) * 16 + 8 +
           fl.n_commits * 32 + FINAL_POLY_LEN * 16 + 8 + N_QUERIES * per_query;
}

// ---------------------------------------------------------------------------

template <class Ckt>
std::vector<uint8_t> prove_impl(const Ckt& ckt, const Trace& trace,
                                const std::vector<Fe>& publics, const Hash32& context) {
    AirShape shape = ckt.shape();
    const size_t n = shape.rows;
    const size_t N = n * BLOWUP;
    const unsigned nbits = log2_exact(n);
    const Fe g = Fe::two_adic_root(nbits);
    const Fe w = Fe::two_adic_root(nbits + BLOWUP_BITS);
    const Fe h = Fe(Fe::MULTIPLICATIVE_GENERATOR);

    if (trace.rows != n || trace.cols.size() != shape.n_cols)
        throw WitnessUnsatisfiable("trace does not match the circuit shape");

    // constraint census
    CountCtx cc;
    ckt.eval(cc);
    const size_t n_trans = cc.count;
    std::vector<Boundary> bnds = ckt.boundaries(publics);

    // witness self-check: prove only satisfiable traces
    {
        TraceCheckCtx tc;
        tc.trace = &trace;
        tc.shape = &shape;
        tc.publics = &publics;
        for (size_t r = 0; r < n; r++) {
            tc.row = r;
            tc.emission = 0;
            ckt.eval(tc);
            if (tc.failed)
                throw WitnessUnsatisfiable("constraint " + std::to_string(tc.fail_emission) +
                                           " violated at row " + std::to_string(r));
        }
        for (const auto& b : bnds) {
            Fe acc = b.constant;
            for (auto& [col, coeff] : b.terms) acc += trace.cols[col][b.row] * coeff;
            if (acc != b.value) throw WitnessUnsatisfiable("boundary constraint violated");
        }
    }

    // trace low-degree extension and commitment
    std::vector<std::vector<Fe>> coeffs(shape.n_cols);
    std::vector<std::vector<Fe>> lde(shape.n_cols);
    par2(0, shape.n_cols, [&](size_t a, size_t b) {
        for (size_t c = a; c < b; c++) {
            coeffs[c] = coset_interpolate(trace.cols[c], Fe::one());
            lde[c] = coset_lde(coeffs[c], N, h);
        }
    });
    MatrixCommit trace_mc = MatrixCommit::build(&lde, N);

    Transcript t;
    t.absorb("ctx", context);
    t.absorb_u64("circuit", ckt.circuit_id());
    t.absorb_u64("rows", n);
    t.absorb_fes("publics", publics);
    t.absorb("trace_root", trace_mc.root());
    Fe2 alpha = t.challenge_fe2("alpha");

    std::vector<Fe2> alpha_pows(n_trans + bnds.size());
    {
        Fe2 cur = Fe2::one();
        for (auto& ap : alpha_pows) {
            ap = cur;
            cur *= alpha;
        }
    }

    // evaluation tables shared across the composition loop
    auto periodic_lde = periodic_on_lde(shape, h, w);
    size_t span = BLOWUP * shape.slot_rows;
    std::vector<Fe> zinv(BLOWUP);  // (x^n - 1) on the coset has period BLOWUP
    {
        Fe hn = h.pow(n);
        Fe wn = w.pow(n);
        Fe cur = hn;
        for (size_t i = 0; i < BLOWUP; i++) {
            zinv[i] = cur - Fe::one();
            cur *= wn;
        }
        batch_invert(zinv);
    }
    std::vector<Fe> xs(N);
    {
        Fe cur = h;
        for (size_t i = 0; i < N; i++) {
            xs[i] = cur;
            cur *= w;
        }
    }
    Fe glast = g.pow(n - 1);
    // per-boundary-row denominators
    std::vector<size_t> bnd_rows;
    for (const auto& b : bnds)
        if (std::find(bnd_rows.begin(), bnd_rows.end(), b.row) == bnd_rows.end())
            bnd_rows.push_back(b.row);
    std::vector<std::vector<Fe>> bnd_inv(bnd_rows.size(), std::vector<Fe>(N));
    for (size_t k = 0; k < bnd_rows.size(); k++) {
        Fe gr = g.pow(bnd_rows[k]);
        for (size_t i = 0; i < N; i++) bnd_inv[k][i] = xs[i] - gr;
        batch_invert(bnd_inv[k]);
    }

    // composition values on the LDE coset
    std::vector<Fe2> comp(N);
    par2(0, N, [&](size_t lo, size_t hi) {
        ProverCtx pc;
        pc.lde = &lde;
        pc.next_off = BLOWUP;
        pc.n_lde = N;
        pc.periodic_lde = &periodic_lde;
        pc.periodic_span = span;
        pc.publics = &publics;
        pc.alpha_pows = &alpha_pows;
        for (size_t i = lo; i < hi; i++) {
            pc.i = i;
            pc.edge = xs[i] - glast;
            pc.acc = Fe2{};
            pc.emission = 0;
            ckt.eval(pc);
            Fe2 v = pc.acc * zinv[i % BLOWUP];
            for (size_t b = 0; b < bnds.size(); b++) {
                size_t k = 0;
                while (bnd_rows[k] != bnds[b].row) k++;
                Fe num = boundary_combo(bnds[b], lde, i) - bnds[b].value;
                v += alpha_pows[n_trans + b] * (num * bnd_inv[k][i]);
            }
            comp[i] = v;
        }
    });

    // split the quotient into N_PIECES column pairs of degree < n
    std::vector<Fe2> qc = coset_interpolate2(comp, h);
    for (size_t i = 7 * n; i < N; i++)
        if (!qc[i].is_zero()) throw WitnessUnsatisfiable("composition degree overflow");
    std::vector<std::vector<Fe>> piece_lde(2 * N_PIECES);
    par2(0, N_PIECES, [&](size_t a, size_t b) {
        for (size_t j = a; j < b; j++) {
            std::vector<Fe> ca(n), cb(n);
            for (size_t i = 0; i < n; i++) {
                ca[i] = qc[j * n + i].a;
                cb[i] = qc[j * n + i].b;
            }
            piece_lde[2 * j] = coset_lde(ca, N, h);
            piece_lde[2 * j + 1] = coset_lde(cb, N, h);
        }
    });
    MatrixCommit piece_mc = MatrixCommit::build(&piece_lde, N);
    t.absorb("quot_root", piece_mc.root());

    Fe2 z = t.challenge_fe2("z");
    Fe2 gz = z * g;

    // out-of-domain evaluations
    std::vector<Fe2> ood_cur(shape.n_cols), ood_nxt(shape.n_cols), ood_piece(N_PIECES);
    par2(0, shape.n_cols, [&](size_t a, size_t b) {
        for (size_t c = a; c < b; c++) {
            Fe2 vz{}, vgz{};
            for (size_t i = coeffs[c].size(); i-- > 0;) {
                vz = vz * z + Fe2::from(coeffs[c][i]);
                vgz = vgz * gz + Fe2::from(coeffs[c][i]);
            }
            ood_cur[c] = vz;
            ood_nxt[c] = vgz;
        }
    });
    for (size_t j = 0; j < N_PIECES; j++) {
        Fe2 v{};
        for (size_t i = n; i-- > 0;) v = v * z + qc[j * n + i];
        ood_piece[j] = v;
    }
    {
        std::vector<Fe2> all;
        all.insert(all.end(), ood_cur.begin(), ood_cur.end());
        all.insert(all.end(), ood_nxt.begin(), ood_nxt.end());
        all.insert(all.end(), ood_piece.begin(), ood_piece.end());
        t.absorb_fe2s("ood", all);
    }
    Fe2 gamma = t.challenge_fe2("gamma");
    std::vector<Fe2> gamma_pows(2 * shape.n_cols + N_PIECES);
    {
        Fe2 cur = Fe2::one();
        for (auto& gp : gamma_pows) {
            gp = cur;
            cur *= gamma;
        }
    }

    // DEEP polynomial on the coset
    std::vector<Fe2> deep(N);
    {
        std::vector<Fe2> ivz(N), ivgz(N);
        for (size_t i = 0; i < N; i++) {
            ivz[i] = Fe2::from(xs[i]) - z;
            ivgz[i] = Fe2::from(xs[i]) - gz;
        }
        batch_invert(ivz);
        batch_invert(ivgz);
        par2(0, N, [&](size_t lo, size_t hi) {
            for (size_t i = lo; i < hi; i++) {
                Fe2 acc_z{}, acc_gz{};
                for (size_t c = 0; c < shape.n_cols; c++) {
                    acc_z += gamma_pows[c] * (Fe2::from(lde[c][i]) - ood_cur[c]);
                    acc_gz += gamma_pows[shape.n_cols + c] * (Fe2::from(lde[c][i]) - ood_nxt[c]);
                }
                for (size_t j = 0; j < N_PIECES; j++) {
                    Fe2 pv{piece_lde[2 * j][i], piece_lde[2 * j + 1][i]};
                    acc_z += gamma_pows[2 * shape.n_cols + j] * (pv - ood_piece[j]);
                }
                deep[i] = acc_z * ivz[i] + acc_gz * ivgz[i];
            }
        });
    }

    // FRI
    FriLayout fl = fri_layout(N);
    std::vector<std::vector<std::vector<Fe>>> layer_cols;  // 2 base cols per layer
    std::vector<MatrixCommit> layer_mcs;
    std::vector<std::vector<Fe2>> layers;  // folded arrays (for openings)
    std::vector<Fe2> final_coeffs;
    {
        std::vector<Fe2> arr = deep;
        size_t m = N;
        Fe shift = h;
        layer_cols.reserve(fl.n_commits);
        for (size_t f = 0; f < fl.n_folds; f++) {
            Fe2 beta = t.challenge_fe2("fri_beta");
            size_t half = m / 2;
            Fe wm = Fe::two_adic_root(log2_exact(m));
            std::vector<Fe> xinv2(half);
            {
                Fe cur = shift;
                for (size_t j = 0; j < half; j++) {
                    xinv2[j] = cur + cur;
                    cur *= wm;
                }
                batch_invert(xinv2);
            }
            std::vector<Fe2> next(half);
            for (size_t j = 0; j < half; j++)
                next[j] = fri_fold_pair(arr[j], arr[j + half], beta, xinv2[j]);
            arr = std::move(next);
            m = half;
            shift = shift * shift;
            if (m > FINAL_SIZE) {
                std::vector<std::vector<Fe>> cols(2, std::vector<Fe>(m));
                for (size_t j = 0; j < m; j++) {
                    cols[0][j] = arr[j].a;
                    cols[1][j] = arr[j].b;
                }
                layer_cols.push_back(std::move(cols));
                layer_mcs.push_back(MatrixCommit::build(&layer_cols.back(), m));
                layers.push_back(arr);
                t.absorb("fri_root", layer_mcs.back().root());
            }
        }
        final_coeffs = coset_interpolate2(arr, shift);
        for (size_t i = FINAL_POLY_LEN; i < final_coeffs.size(); i++)
            if (!final_coeffs[i].is_zero())
                throw WitnessUnsatisfiable("FRI final degree overflow");
        final_coeffs.resize(FINAL_POLY_LEN);
        t.absorb_fe2s("fri_final", final_coeffs);
    }

    uint64_t nonce = t.grind(GRIND_BITS);
    t.absorb_grind(nonce);
    std::vector<uint32_t> queries = t.challenge_indices("queries", N_QUERIES, N / 2);

    // serialize
    Writer wtr;
    wtr.bytes(MAGIC);
    wtr.u8(ckt.circuit_id());
    wtr.u64(n);
    wtr.u64(shape.n_cols);
    wtr.hash(trace_mc.root());
    wtr.hash(piece_mc.root());
    for (auto& v : ood_cur) wtr.fe2(v);
    for (auto& v : ood_nxt) wtr.fe2(v);
    for (auto& v : ood_piece) wtr.fe2(v);
    wtr.u64(fl.n_commits);
    for (auto& mc : layer_mcs) wtr.hash(mc.root());
    for (auto& v : final_coeffs) wtr.fe2(v);
    wtr.u64(nonce);
    for (uint32_t qi : queries) {
        for (size_t c = 0; c < shape.n_cols; c++) wtr.fe(lde[c][qi]);
        for (size_t c = 0; c < shape.n_cols; c++) wtr.fe(lde[c][qi + N / 2]);
        for (auto& hsh : trace_mc.open(qi)) wtr.hash(hsh);
        for (size_t c = 0; c < 2 * N_PIECES; c++) wtr.fe(piece_lde[c][qi]);
        for (size_t c = 0; c < 2 * N_PIECES; c++) wtr.fe(piece_lde[c][qi + N / 2]);
        for (auto& hsh : piece_mc.open(qi)) wtr.hash(hsh);
        size_t pos = qi;
        size_t m = N / 2;
        for (size_t l = 0; l < fl.n_commits; l++) {
            size_t half = m / 2;
            size_t j = pos % half;
            wtr.fe2(layers[l][j]);
            wtr.fe2(layers[l][j + half]);
            for (auto& hsh : layer_mcs[l].open(j)) wtr.hash(hsh);
            pos = j;
            m = half;
        }
    }
    return std::move(wtr.buf);
}

template <class Ckt>
bool verify_impl(const Ckt& ckt, const std::vector<Fe>& publics,
                 const std::vector<uint8_t>& proof, const Hash32& context) {
    AirShape shape = ckt.shape();
    const size_t n = shape.rows;
    const size_t N = n * BLOWUP;
    const unsigned nbits = log2_exact(n);
    const Fe g = Fe::two_adic_root(nbits);
    const Fe w = Fe::two_adic_root(nbits + BLOWUP_BITS);
    const Fe h = Fe(Fe::MULTIPLICATIVE_GENERATOR);
    const FriLayout fl = fri_layout(N);

    if (proof.size() != proof_size_impl(ckt)) return false;
    if (publics.size() != ckt.n_publics()) return false;

    Reader rd{proof.data(), proof.data() + proof.size()};
    if (!rd.match(MAGIC)) return false;
    if (rd.u8() != ckt.circuit_id()) return false;
    if (rd.u64() != n) return false;
    if (rd.u64() != shape.n_cols) return false;
    Hash32 trace_root = rd.hash();
    Hash32 quot_root = rd.hash();
    std::vector<Fe2> ood_cur(shape.n_cols), ood_nxt(shape.n_cols), ood_piece(N_PIECES);
    for (auto& v : ood_cur) v = rd.fe2();
    for (auto& v : ood_nxt) v = rd.fe2();
    for (auto& v : ood_piece) v = rd.fe2();
    if (rd.u64() != fl.n_commits) return false;
    std::vector<Hash32> layer_roots(fl.n_commits);
    for (auto& r : layer_roots) r = rd.hash();
    std::vector<Fe2> final_coeffs(FINAL_POLY_LEN);
    for (auto& v : final_coeffs) v = rd.fe2();
    uint64_t nonce = rd.u64();
    if (!rd.ok) return false;

    // transcript replay
    Transcript t;
    t.absorb("ctx", context);
    t.absorb_u64("circuit", ckt.circuit_id());
    t.absorb_u64("rows", n);
    t.absorb_fes("publics", publics);
    t.absorb("trace_root", trace_root);
    Fe2 alpha = t.challenge_fe2("alpha");
    t.absorb("quot_root", quot_root);
    Fe2 z = t.challenge_fe2("z");
    Fe2 gz = z * g;
    {
        std::vector<Fe2> all;
        all.insert(all.end(), ood_cur.begin(), ood_cur.end());
        all.insert(all.end(), ood_nxt.begin(), ood_nxt.end());
        all.insert(all.end(), ood_piece.begin(), ood_piece.end());
        t.absorb_fe2s("ood", all);
    }
    Fe2 gamma = t.challenge_fe2("gamma");
    std::vector<Fe2> betas(fl.n_folds);
    for (size_t f = 0; f < fl.n_folds; f++) {
        betas[f] = t.challenge_fe2("fri_beta");
        size_t m = N >> (f + 1);
        if (m > FINAL_SIZE) t.absorb("fri_root", layer_roots[f]);
    }
    t.absorb_fe2s("fri_final", final_coeffs);
    if (!t.check_grind(nonce, GRIND_BITS)) return false;
    t.absorb_grind(nonce);
    std::vector<uint32_t> queries = t.challenge_indices("queries", N_QUERIES, N / 2);

    // out-of-domain consistency: constraints at z against the quotient
    CountCtx cc;
    ckt.eval(cc);
    const size_t n_trans = cc.count;
    std::vector<Boundary> bnds = ckt.boundaries(publics);
    std::vector<Fe2> alpha_pows(n_trans + bnds.size());
    {
        Fe2 cur = Fe2::one();
        for (auto& ap : alpha_pows) {
            ap = cur;
            cur *= alpha;
        }
    }
    {
        OodCtx oc;
        oc.ood_cur = &ood_cur;
        oc.ood_nxt = &ood_nxt;
        oc.periodic_at_z = periodic_at_point(shape, z);
        oc.publics = &publics;
        oc.alpha_pows = &alpha_pows;
        oc.edge = z - Fe2::from(g.pow(n - 1));
        ckt.eval(oc);
        Fe2 zn = z.pow(n);
        Fe2 lhs = oc.acc * (zn - Fe2::one()).inv();
        for (size_t b = 0; b < bnds.size(); b++) {
            Fe2 num = boundary_combo_ood(bnds[b], ood_cur) - Fe2::from(bnds[b].value);
            lhs += alpha_pows[n_trans + b] * num * (z - Fe2::from(g.pow(bnds[b].row))).inv();
        }
        Fe2 rhs{};
        Fe2 zpow = Fe2::one();
        for (size_t j = 0; j < N_PIECES; j++) {
            rhs += zpow * ood_piece[j];
            zpow *= zn;
        }
        if (lhs != rhs) return false;
    }

    std::vector<Fe2> gamma_pows(2 * shape.n_cols + N_PIECES);
    {
        Fe2 cur = Fe2::one();
        for (auto& gp : gamma_pows) {
            gp = cur;
            cur *= gamma;
        }
    }

    // queries
    std::vector<Fe> trace_lo(shape.n_cols), trace_hi(shape.n_cols);
    std::vector<Fe> piece_lo(2 * N_PIECES), piece_hi(2 * N_PIECES);
    for (uint32_t qi : queries) {
        for (auto& v : trace_lo) v = rd.fe();
        for (auto& v : trace_hi) v = rd.fe();
        std::vector<Hash32> tpath(log2_exact(N / 2));
        for (auto& hsh : tpath) hsh = rd.hash();
        for (auto& v : piece_lo) v = rd.fe();
        for (auto& v : piece_hi) v = rd.fe();
        std::vector<Hash32> ppath(log2_exact(N / 2));
        for (auto& hsh : ppath) hsh = rd.hash();
        if (!rd.ok) return false;
        if (!MatrixCommit::verify(trace_root, qi, N / 2, trace_lo, trace_hi, tpath)) return false;
        if (!MatrixCommit::verify(quot_root, qi, N / 2, piece_lo, piece_hi, ppath)) return false;

        Fe x_lo = h * w.pow(qi);
        Fe x_hi = x_lo.neg();
        auto deep_at = [&](const std::vector<Fe>& trow, const std::vector<Fe>& prow,
                           Fe x) -> Fe2 {
            Fe2 acc_z{}, acc_gz{};
            for (size_t c = 0; c < shape.n_cols; c++) {
                acc_z += gamma_pows[c] * (Fe2::from(trow[c]) - ood_cur[c]);
                acc_gz += gamma_pows[shape.n_cols + c] * (Fe2::from(trow[c]) - ood_nxt[c]);
            }
            for (size_t j = 0; j < N_PIECES; j++) {
                Fe2 pv{prow[2 * j], prow[2 * j + 1]};
                acc_z += gamma_pows[2 * shape.n_cols + j] * (pv - ood_piece[j]);
            }
            return acc_z * (Fe2::from(x) - z).inv() + acc_gz * (Fe2::from(x) - gz).inv();
        };
        Fe2 cur_lo = deep_at(trace_lo, piece_lo, x_lo);
        Fe2 cur_hi = deep_at(trace_hi, piece_hi, x_hi);

        // fold 0
        Fe2 cur = fri_fold_pair(cur_lo, cur_hi, betas[0], (x_lo + x_lo).inv());
        size_t pos = qi;
        size_t m = N / 2;
        Fe shift = h * h;
        for (size_t l = 0; l < fl.n_commits; l++) {
            size_t half = m / 2;
            size_t j = pos % half;
            Fe2 lo = rd.fe2();
            Fe2 hi = rd.fe2();
            std::vector<Hash32> lpath(log2_exact(half));
            for (auto& hsh : lpath) hsh = rd.hash();
            if (!rd.ok) return false;
            std::vector<Fe> lrow{lo.a, lo.b}, hrow{hi.a, hi.b};
            if (!MatrixCommit::verify(layer_roots[l], j, half, lrow, hrow, lpath)) return false;
            if ((pos < half ? lo : hi) != cur) return false;
            Fe wm = Fe::two_adic_root(log2_exact(m));
            Fe xj = shift * wm.pow(j);
            cur = fri_fold_pair(lo, hi, betas[l + 1], (xj + xj).inv());
            pos = j;
            m = half;
            shift = shift * shift;
        }
        // final polynomial evaluation at the surviving point
        {
            Fe wm = Fe::two_adic_root(log2_exact(m));
            Fe2 xf = Fe2::from(shift * wm.pow(pos));
            Fe2 v{};
            for (size_t i = FINAL_POLY_LEN; i-- > 0;) v = v * xf + final_coeffs[i];
            if (v != cur) return false;
        }
    }
    return rd.p == rd.end;
}

}  // namespace

std::vector<uint8_t> stark_prove(const StepCircuit& ckt, const Trace& trace,
                                 const std::vector<Fe>& publics, const Hash32& context) {
    return prove_impl(ckt, trace, publics, context);
}
std::vector<uint8_t> stark_prove(const AggCircuit& ckt, const Trace& trace,
                                 const std::vector<Fe>& publics, const Hash32& context) {
    return prove_impl(ckt, trace, publics, context);
}
bool stark_verify(const StepCircuit& ckt, const std::vector<Fe>& publics,
                  const std::vector<uint8_t>& proof, const Hash32& context) {
    return verify_impl(ckt, publics, proof, context);
}
bool stark_verify(const AggCircuit& ckt, const std::vector<Fe>& publics,
                  const std::vector<uint8_t>& proof, const Hash32& context) {
    return verify_impl(ckt, publics, proof, context);
}
size_t stark_proof_size(const StepCircuit& ckt) { return proof_size_impl(ckt); }
size_t stark_proof_size(const AggCircuit& ckt) { return proof_size_impl(ckt); }

}  // namespace sslc
