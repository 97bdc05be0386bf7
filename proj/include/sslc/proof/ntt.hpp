#pragma once

#include <vector>

#include "sslc/field.hpp"

namespace sslc {

// Radix-2 in-place NTT over the Goldilocks two-adic subgroup.
// Sizes are powers of two up to 2^32.

// Evaluations of `coeffs` (padded with zeros) on the coset shift * <w_N>,
// N = domain_size.
std::vector<Fe> coset_lde(const std::vector<Fe>& coeffs, size_t domain_size, Fe shift);

// Inverse: recover coefficients from evaluations on shift * <w_N>.
std::vector<Fe> coset_interpolate(std::vector<Fe> evals, Fe shift);
std::vector<Fe2> coset_interpolate2(std::vector<Fe2> evals, Fe shift);

// Plain subgroup NTT/INTT (shift = 1).
void ntt(std::vector<Fe>& a);
void intt(std::vector<Fe>& a);

}  // namespace sslc
