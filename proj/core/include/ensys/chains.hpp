#pragma once

#include "ensys/bigint.hpp"

#include <cstddef>
#include <vector>

namespace ensys {

/// Straight-line chain built by the binary method.
///
/// Position 0 holds the start value; step t writes position t + 1 from two
/// earlier positions. An additive chain reaches start * multiplier using
/// additions, a multiplicative chain reaches start ^ multiplier using
/// multiplications.
struct Chain {
    enum class Kind { Additive, Multiplicative };
    struct Step {
        std::size_t lhs;
        std::size_t rhs;
    };

    Kind kind = Kind::Additive;
    BigInt start = 1;
    BigInt multiplier = 1;
    std::vector<Step> steps;

    std::vector<BigInt> replay() const;
    BigInt target() const { return replay().back(); }
    std::size_t length() const noexcept { return steps.size(); }

    // 2 * [log2 multiplier], the step budget both chain kinds must respect.
    std::size_t budget() const { return 2 * static_cast<std::size_t>(floor_log2(multiplier)); }
};

// Double-and-add chain from 1 to target (target >= 1).
Chain addition_chain(const BigInt& target);

// Square-and-multiply chain from base to base^exponent (exponent >= 1).
Chain power_chain(const BigInt& base, const BigInt& exponent);

}  // namespace ensys
