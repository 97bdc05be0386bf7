#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sslc/field.hpp"
#include "sslc/merkle.hpp"
#include "sslc/poseidon.hpp"
#include "sslc/rng.hpp"

using namespace sslc;

static Fe rand_fe(SplitMix64& rng) {
    uint64_t v;
    do { v = rng.next(); } while (v >= Fe::P);
    return Fe::raw(v);
}

TEST_CASE("field axioms, randomized") {
    SplitMix64 rng(0xf1e1d);
    for (int i = 0; i < 10000; i++) {
        Fe a = rand_fe(rng), b = rand_fe(rng), c = rand_fe(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Fe::zero());
        if (!a.is_zero()) CHECK(a * a.inv() == Fe::one());
    }
}

TEST_CASE("mul_reduce agrees with naive 128-bit mod") {
    SplitMix64 rng(42);
    for (int i = 0; i < 20000; i++) {
        uint64_t a = rng.next() % Fe::P, b = rng.next() % Fe::P;
        unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
        uint64_t expect = static_cast<uint64_t>(t % Fe::P);
        CHECK(Fe::mul_reduce(a, b) == expect);
    }
    // corner values
    uint64_t edge[] = {0, 1, 2, Fe::P - 1, Fe::P - 2, 0xffffffffull, 0x100000000ull};
    for (uint64_t a : edge)
        for (uint64_t b : edge) {
            unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
            CHECK(Fe::mul_reduce(a, b) == static_cast<uint64_t>(t % Fe::P));
        }
}

TEST_CASE("two-adic roots have the right order") {
    for (unsigned bits : {1u, 2u, 10u, 20u}) {
        Fe w = Fe::two_adic_root(bits);
        CHECK(w.pow(1ull << bits) == Fe::one());
        CHECK(w.pow(1ull << (bits - 1)) != Fe::one());
    }
}

TEST_CASE("7 is a quadratic non-residue, so Fe2 is a field") {
    CHECK(Fe(7).pow((Fe::P - 1) / 2) == Fe(Fe::P - 1));
    SplitMix64 rng(7);
    for (int i = 0; i < 200; i++) {
        Fe2 x{rand_fe(rng), rand_fe(rng)};
        if (x.is_zero()) continue;
        CHECK(x * x.inv() == Fe2::one());
    }
}

TEST_CASE("hash_elements: determinism, width, distinct inputs differ") {
    std::vector<Fe> a{Fe(1), Fe(2), Fe(3), Fe(4)};
    std::vector<Fe> b{Fe(1), Fe(2), Fe(3), Fe(5)};
    CHECK(hash_elements(a) == hash_elements(a));
    CHECK(hash_elements(a) != hash_elements(b));
    CHECK(hash_elements(a).e.size() == 4);
    // length is bound into the sponge
    std::vector<Fe> c{Fe(1), Fe(2), Fe(3), Fe(4), Fe(0)};
    CHECK(hash_elements(a) != hash_elements(c));
}

static std::vector<Digest> make_leaves(size_t n) {
    std::vector<Digest> out(n);
    for (size_t i = 0; i < n; i++) {
        std::vector<Fe> in{Fe(i + 1), Fe(1000 + i)};
        out[i] = hash_elements(in);
    }
    return out;
}

TEST_CASE("build_tree rejects empty input") {
    CHECK_THROWS_AS(build_tree({}), EmptyLeafSet);
}

TEST_CASE("single-leaf tree: lone-root rule, empty path") {
    auto leaves = make_leaves(1);
    TxTree t = build_tree(leaves);
    CHECK(t.root() == hash_lone(leaves[0]));
    MerklePath p = open(t, 0);
    CHECK(p.siblings.empty());
    CHECK(verify_path(t.root(), leaves[0], p));
}

TEST_CASE("4-leaf root matches hand expansion") {
    auto l = make_leaves(4);
    TxTree t = build_tree(l);
    Digest expect = hash_two(hash_two(l[0], l[1]), hash_two(l[2], l[3]));
    CHECK(t.root() == expect);

    // open(tree, 2) -> siblings [l3, hash(l0,l1)]
    MerklePath p = open(t, 2);
    REQUIRE(p.siblings.size() == 2);
    CHECK(p.siblings[0] == l[3]);
    CHECK(p.siblings[1] == hash_two(l[0], l[1]));
}

TEST_CASE("3-leaf tree hashes the odd right node alone") {
    auto l = make_leaves(3);
    TxTree t = build_tree(l);
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels[1][1] == hash_lone(l[2]));
    CHECK(t.root() == hash_two(hash_two(l[0], l[1]), hash_lone(l[2])));
}

TEST_CASE("open: index at leaf_count is out of range") {
    auto l = make_leaves(5);
    TxTree t = build_tree(l);
    CHECK_THROWS_AS(open(t, 5), IndexOutOfRange);
}

TEST_CASE("round trip for every size 1..64 and every index") {
    for (size_t n = 1; n <= 64; n++) {
        auto l = make_leaves(n);
        TxTree t = build_tree(l);
        for (size_t i = 0; i < n; i++) {
            MerklePath p = open(t, i);
            CHECK(verify_path(t.root(), l[i], p));
        }
    }
}

TEST_CASE("tamper sensitivity: any +1 perturbation breaks verification") {
    for (size_t n : {1ull, 2ull, 3ull, 5ull, 8ull, 11ull, 16ull}) {
        auto l = make_leaves(n);
        TxTree t = build_tree(l);
        for (size_t i = 0; i < n; i++) {
            MerklePath p = open(t, i);
            // leaf perturbation
            for (int k = 0; k < 4; k++) {
                Digest bad = l[i];
                bad.e[k] += Fe::one();
                CHECK_FALSE(verify_path(t.root(), bad, p));
            }
            // sibling perturbation
            for (size_t s = 0; s < p.siblings.size(); s++)
                for (int k = 0; k < 4; k++) {
                    MerklePath bad = p;
                    bad.siblings[s].e[k] += Fe::one();
                    CHECK_FALSE(verify_path(t.root(), l[i], bad));
                }
            // root perturbation
            for (int k = 0; k < 4; k++) {
                Digest bad = t.root();
                bad.e[k] += Fe::one();
                CHECK_FALSE(verify_path(bad, l[i], p));
            }
        }
    }
}

TEST_CASE("wrong leaf_index fails on a full 8-leaf tree") {
    auto l = make_leaves(8);
    TxTree t = build_tree(l);
    for (size_t i = 0; i < 8; i++) {
        MerklePath p = open(t, i);
        for (uint64_t j = 0; j < 8; j++) {
            MerklePath q = p;
            q.leaf_index = j;
            CHECK(verify_path(t.root(), l[i], q) == (j == i));
        }
    }
}

TEST_CASE("digest hex round trip") {
    auto d = hash_elements(std::vector<Fe>{Fe(9)});
    Digest back;
    REQUIRE(Digest::from_hex(d.to_hex(), back));
    CHECK(back == d);
}
