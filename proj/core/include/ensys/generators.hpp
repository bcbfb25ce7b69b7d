#pragma once

#include "ensys/atomic_system.hpp"
#include "ensys/bigint.hpp"
#include "ensys/circuit.hpp"
#include "ensys/polynomial.hpp"
#include "ensys/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ensys {

/// A generated system together with the box in which its prescribed count
/// is certified by exhaustive search.
struct Generated {
    std::string family;
    std::string parameters;  // e.g. "n=5 m=7"
    EnSystem system;
    std::optional<Box> recommended_box;
};

// Smallest admissible variable counts.
VarIndex theorem1_min_n(VarIndex s);            // 12 + 2s
VarIndex theorem2_min_m(std::uint64_t n);       // 3 + 2[log2(n-1)]
VarIndex theorem3_min_m(std::uint64_t n);       // 11 + 2[log2(2n-1)]
VarIndex theorem4_min_m(std::uint64_t n);       // 8 + 2[log2(n-3)]

// x + y = n - 1 with Unit and Add equations only; exactly n solutions in N^m.
Generated gen_theorem2(std::uint64_t n, VarIndex m);

// (2x+1)^2 + (2y)^2 = 5^(2n-1); exactly n solutions in N^m.
Generated gen_theorem3(std::uint64_t n, VarIndex m);

// x*y = 2^((n-2)/2) for even n, (x*y - 2^((n-3)/2)) * (x^2 + y^2) = 0 for odd n;
// exactly n solutions in Z^m.
Generated gen_theorem4(std::uint64_t n, VarIndex m);

// x1 + x1 = x2, x1 * x1 = x2, x_i * x_i = x_{i+1}: two integer solutions.
Generated gen_observation(VarIndex n);

/// Wraps a system psi over x_1..x_s whose solutions define x_{x1} = f(x_{x2})
/// with unique witnesses into a system U over exactly n variables that has
/// f(n) solutions over N when f(n) >= 1. Requires n >= 12 + 2s.
Generated gen_theorem1(const EnSystem& psi, VarIndex x1, VarIndex x2, VarIndex n);

// Box check of the single-fold property: inside box, every (x1, x2) pair of
// psi's solutions has at most one witness tuple.
bool check_single_fold(const EnSystem& psi, VarIndex x1, VarIndex x2, const Box& box);

inline constexpr std::uint64_t kChebyshevDegreeLimit = std::uint64_t{1} << 12;

// P_0 = x, P_{k+1} = 4 P_k (1 - P_k), over the single variable "x".
Polynomial chebyshev_P(unsigned k, std::uint64_t degree_limit = kChebyshevDegreeLimit);

struct Theorem5System {
    std::uint64_t n = 0;
    std::vector<unsigned> levels;  // k with binary digit a_k = 1
    EnSystem system;
    std::vector<CircuitStep> steps;
    VarIndex x = 0;
    VarIndex y = 0;
    VarIndex w = 0;  // holds W_n(x, y)
};

/// W_n(x, y) = prod over a_k = 1 of ((1 - 2 P_k(x))^2 + (y - k)^2), flattened
/// with P_k built by the recurrence and shared across factors. Real
/// solutions of the system correspond one-to-one to real zeros of W_n.
Theorem5System gen_theorem5(std::uint64_t n);

// Expanded W_n over {x, y}; only practical for small n.
Polynomial theorem5_polynomial(std::uint64_t n, std::uint64_t degree_limit = kChebyshevDegreeLimit);

enum class GalleryEquation { ExponentialSurrogate, FourSquare };

struct GalleryReport {
    CountReport enumeration;  // brute force over the stated box
    BigInt closed_form;       // k (k >= 1) or 8 s(k/8 - 1) style prediction
};

/// ExponentialSurrogate: (u+v-x+1)^2 + (2^u-s)^2 + (2^v-t)^2 at x = k, enumerated
/// over u, v in [-B, B] with s = 2^u, t = 2^v forced for integer solutions.
/// FourSquare: 8(u^2+v^2+s^2+t^2+1) - x at x = k, enumerated over all integer
/// 4-tuples with every |coordinate| <= sqrt(k/8). |k| <= 10^5. The default
/// search bound for the exponential surrogate is max(|k|, 1), which covers
/// every solution.
GalleryReport gallery_count(GalleryEquation which, std::int64_t k,
                            std::optional<std::int64_t> search_bound = std::nullopt);

}  // namespace ensys
