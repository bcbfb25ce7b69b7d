#pragma once

#include "ensys/polynomial.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ensys {

// D = 0 rewritten as lhs = rhs with non-negative coefficients on both sides.
struct NormalizedPair {
    Polynomial lhs;
    Polynomial rhs;
    std::size_t p = 0;  // number of original variables
};

// Coefficient cap and per-variable degree caps that define the family T.
struct FamilySpec {
    BigInt delta;
    std::vector<std::uint32_t> degree_caps;
    BigInt monomial_count;  // product of (cap_i + 1)
    BigInt family_size;     // (delta + 1)^monomial_count
};

// Sign split of d with the "+1 on both sides" repair when a side condition fails.
NormalizedPair split_nonneg(const Polynomial& d);

// True iff the pair satisfies the three side conditions and non-negativity.
bool satisfies_side_conditions(const NormalizedPair& pair);

FamilySpec family_params(const NormalizedPair& pair);

}  // namespace ensys
