#pragma once

#include "ensys/atomic_system.hpp"
#include "ensys/bigint.hpp"
#include "ensys/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace ensys::testing {

// Odometer over [lo, hi]^n; calls f on every tuple.
inline void for_each_tuple(std::size_t n, std::int64_t lo, std::int64_t hi,
                           const std::function<void(const std::vector<std::int64_t>&)>& f) {
    std::vector<std::int64_t> x(n, lo);
    while (true) {
        f(x);
        std::size_t t = 0;
        while (t < n && x[t] == hi) x[t++] = lo;
        if (t == n) return;
        ++x[t];
    }
}

// Direct check of one equation on machine integers.
inline bool holds(const AtomicEquation& eq, const std::vector<std::int64_t>& x) {
    switch (eq.kind) {
        case EquationKind::Unit: return x[eq.i - 1] == 1;
        case EquationKind::Add: return x[eq.i - 1] + x[eq.j - 1] == x[eq.k - 1];
        case EquationKind::Mul: return x[eq.i - 1] * x[eq.j - 1] == x[eq.k - 1];
    }
    return false;
}

// Naive full enumeration over the whole box.
inline std::vector<std::vector<std::int64_t>> naive_solutions(const EnSystem& s, std::int64_t lo, std::int64_t hi) {
    std::vector<std::vector<std::int64_t>> out;
    for_each_tuple(s.n(), lo, hi, [&](const std::vector<std::int64_t>& x) {
        for (const auto& eq : s.equations())
            if (!holds(eq, x)) return;
        out.push_back(x);
    });
    return out;
}

inline AtomicEquation random_equation(std::mt19937& rng, VarIndex n) {
    std::uniform_int_distribution<VarIndex> var(1, n);
    std::uniform_int_distribution<int> kind(0, 5);
    switch (kind(rng)) {
        case 0: return AtomicEquation::unit(var(rng));
        case 1:
        case 2:
        case 3: return AtomicEquation::add(var(rng), var(rng), var(rng));
        default: return AtomicEquation::mul(var(rng), var(rng), var(rng));
    }
}

inline EnSystem random_system(std::mt19937& rng, VarIndex n, std::size_t max_equations) {
    EnSystem s(n);
    std::uniform_int_distribution<std::size_t> count(1, max_equations);
    const std::size_t m = std::min<std::size_t>(count(rng), n + 2 * n * n * n);
    while (s.size() < m) s.add(random_equation(rng, n));
    return s;
}

// Random polynomial over the given variables with small coefficients and degrees.
inline Polynomial random_polynomial(std::mt19937& rng, const std::vector<std::string>& vars, int max_coeff,
                                    std::uint32_t max_degree, int max_terms) {
    std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
    std::uniform_int_distribution<std::uint32_t> degree(0, max_degree);
    std::uniform_int_distribution<int> terms(1, max_terms);
    Polynomial p = Polynomial::constant(0, vars);
    const int t = terms(rng);
    for (int i = 0; i < t; ++i) {
        Polynomial::Exponents e(vars.size());
        for (auto& d : e) d = degree(rng);
        p.add_term(e, coeff(rng));
    }
    return p;
}

inline std::vector<BigInt> big(const std::vector<std::int64_t>& x) {
    std::vector<BigInt> out;
    for (auto v : x) out.emplace_back(static_cast<long>(v));
    return out;
}

}  // namespace ensys::testing
