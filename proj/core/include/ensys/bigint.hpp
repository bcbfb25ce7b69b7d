#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace ensys {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline BigInt pow_ui(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

inline BigInt two_pow(unsigned long exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
    return r;
}

// Floor of the square root of a non-negative integer.
inline BigInt isqrt(const BigInt& v) {
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const BigInt& v) {
    return sgn(v) >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0;
}

// Number of bits in |v|; zero has bit length 0.
inline std::size_t bit_length(const BigInt& v) {
    if (sgn(v) == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// Integer part of log2(v) for v >= 1.
inline unsigned floor_log2(const BigInt& v) { return static_cast<unsigned>(bit_length(v) - 1); }

inline unsigned floor_log2(unsigned long long v) {
    unsigned r = 0;
    while (v >>= 1) ++r;
    return r;
}

}  // namespace ensys
