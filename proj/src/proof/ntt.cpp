#include "sslc/proof/ntt.hpp"

#include <cassert>
#include <map>

namespace sslc {

namespace {

unsigned log2_exact(size_t n) {
    unsigned b = 0;
    while ((size_t(1) << b) < n) b++;
    assert((size_t(1) << b) == n);
    return b;
}

// twiddles[i] = w^i for i < n/2, cached per size
const std::vector<Fe>& twiddles(size_t n) {
    static std::map<size_t, std::vector<Fe>> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    Fe w = Fe::two_adic_root(log2_exact(n));
    std::vector<Fe> tw(n / 2);
    Fe cur = Fe::one();
    for (size_t i = 0; i < n / 2; i++) {
        tw[i] = cur;
        cur *= w;
    }
    return cache.emplace(n, std::move(tw)).first->second;
}

template <class T>
void bit_reverse(std::vector<T>& a) {
    size_t n = a.size();
    for (size_t i = 1, j = 0; i < n; i++) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

// Core butterfly loop; T is Fe or Fe2, twiddles stay base-field.
template <class T>
void ntt_core(std::vector<T>& a, bool inverse) {
    size_t n = a.size();
    if (n == 1) return;
    const auto& tw = twiddles(n);
    bit_reverse(a);
    for (size_t len = 2; len <= n; len <<= 1) {
        size_t step = n / len;
        for (size_t i = 0; i < n; i += len) {
            for (size_t j = 0; j < len / 2; j++) {
                Fe w = tw[j * step];
                if (inverse && j) w = tw[n / 2 - j * step].neg();
                else if (inverse) w = tw[0];
                T u = a[i + j];
                T v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        Fe ninv = Fe(n).inv();
        for (auto& x : a) x = x * ninv;
    }
}

}  // namespace

void ntt(std::vector<Fe>& a) { ntt_core(a, false); }
void intt(std::vector<Fe>& a) { ntt_core(a, true); }

std::vector<Fe> coset_lde(const std::vector<Fe>& coeffs, size_t domain_size, Fe shift) {
    assert(coeffs.size() <= domain_size);
    std::vector<Fe> a(domain_size);
    Fe p = Fe::one();
    for (size_t i = 0; i < coeffs.size(); i++) {
        a[i] = coeffs[i] * p;
        p *= shift;
    }
    ntt(a);
    return a;
}

std::vector<Fe> coset_interpolate(std::vector<Fe> evals, Fe shift) {
    intt(evals);
    Fe sinv = shift.inv();
    Fe p = Fe::one();
    for (auto& c : evals) {
        c *= p;
        p *= sinv;
    }
    return evals;
}

std::vector<Fe2> coset_interpolate2(std::vector<Fe2> evals, Fe shift) {
    ntt_core(evals, true);
    Fe sinv = shift.inv();
    Fe p = Fe::one();
    for (auto& c : evals) {
        c = c * p;
        p *= sinv;
    }
    return evals;
}

}  // namespace sslc
