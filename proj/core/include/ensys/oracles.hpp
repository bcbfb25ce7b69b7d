#pragma once

#include "ensys/bigint.hpp"
#include "ensys/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ensys {

// Brute-force count of (x, y) in N^2 with (2x+1)^2 + (2y)^2 = 5^(2n-1); n in 1..12.
std::uint64_t count_two_squares(unsigned n);

// Sum of the positive divisors of k that are not divisible by 4.
BigInt divisor_sum_s(std::uint64_t k);

// Ordered integer 4-tuples with u^2 + v^2 + s^2 + t^2 = k; k <= 10^4.
std::uint64_t r4_bruteforce(std::uint64_t k);

struct RootSet {
    unsigned k = 0;
    std::vector<double> roots;  // strictly increasing, all in (0, 1)
};

// (1 - cos((4i+1) pi / 2^(k+1))) / 2 for i = 0..2^k-1, sorted; k <= 20.
RootSet closed_form_roots(unsigned k);

// |cos(2^k arccos(1 - 2x))|, the trigonometric form of 1 - 2 P_k(x) on [0, 1].
double trig_residual(unsigned k, double x);

inline constexpr unsigned kSturmDegreeCap = 256;

/// Number of distinct real roots of a univariate integer polynomial in
/// (lo, hi], by an exact Sturm sequence. A missing end means infinity.
/// Throws on the zero polynomial, more than one variable, lo >= hi, or a
/// degree above the cap.
std::uint64_t sturm_root_count(const Polynomial& poly, const std::optional<BigRational>& lo,
                               const std::optional<BigRational>& hi, unsigned degree_cap = kSturmDegreeCap);

// Cauchy bound R: every real root lies in (-R, R).
BigInt cauchy_root_bound(const Polynomial& poly);

// Sum over binary digits a_k = 1 of n of the real-root count of 1 - 2 P_k,
// each counted on (-R, R] with R its Cauchy bound. n in 1..1024.
std::uint64_t count_Wn_real_zeros(std::uint64_t n, unsigned degree_cap = kSturmDegreeCap);

}  // namespace ensys
