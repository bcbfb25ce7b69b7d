#pragma once

#include "ensys/atomic_system.hpp"
#include "ensys/bigint.hpp"
#include "ensys/normalize.hpp"
#include "ensys/polynomial.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace ensys {

// Auxiliary variables of a flattened system and the polynomial each one holds.
struct FlatteningPlan {
    struct Subterm {
        VarIndex var;
        Polynomial definition;
    };
    std::size_t p = 0;
    std::vector<Subterm> subterms;  // in definition order
    VarIndex lhs_var = 0;           // holds A
    VarIndex rhs_var = 0;           // holds B
};

struct FlattenResult {
    EnSystem system;
    FlatteningPlan plan;
};

/// Subterm flattening of A = B. Variables 1..p are the original variables;
/// every other variable is defined by one atomic equation from earlier ones,
/// shared by expanded-polynomial equality, and A = B is asserted as
/// valA + zero = valB. Every solution of A = B extends uniquely.
FlattenResult flatten(const NormalizedPair& pair);

// tau(s) for s in p+1..n; tau(p+1) = 0, tau(p+2) = A, tau(p+3) = B.
struct TauMap {
    std::size_t p = 0;
    std::map<VarIndex, Polynomial> entries;
};

struct Lemma1Result {
    EnSystem system;
    TauMap tau;
};

inline constexpr unsigned long kDefaultFamilyLimit = 5000;

/// The exhaustive construction S = H u {x_{p+1} + x_{p+2} = x_{p+3}} over the
/// whole family T. Throws FamilyTooLarge when |T| exceeds limit.
Lemma1Result lemma1_system(const NormalizedPair& pair, unsigned long limit = kDefaultFamilyLimit);

// Appends m - n variables, each fixed by a Unit equation. Throws if m < n.
EnSystem pad_to(const EnSystem& system, VarIndex m);

}  // namespace ensys
