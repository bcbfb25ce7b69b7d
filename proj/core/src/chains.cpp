#include "ensys/chains.hpp"

#include "ensys/errors.hpp"

namespace ensys {

namespace {

// Binary method on the multiplier: one doubling per bit below the leading one,
// plus one "add the start value" per set bit below the leading one.
Chain binary_chain(Chain::Kind kind, const BigInt& start, const BigInt& multiplier) {
    Chain c{kind, start, multiplier, {}};
    std::size_t current = 0;
    for (std::size_t bit = bit_length(multiplier) - 1; bit-- > 0;) {
        c.steps.push_back({current, current});
        current = c.steps.size();
        if (mpz_tstbit(multiplier.get_mpz_t(), bit)) {
            c.steps.push_back({current, 0});
            current = c.steps.size();
        }
    }
    return c;
}

}  // namespace

std::vector<BigInt> Chain::replay() const {
    std::vector<BigInt> values{start};
    values.reserve(steps.size() + 1);
    for (const auto& s : steps) {
        if (s.lhs >= values.size() || s.rhs >= values.size())
            throw InvalidArgument("chain step refers to a later position");
        values.push_back(kind == Kind::Additive ? BigInt(values[s.lhs] + values[s.rhs])
                                                : BigInt(values[s.lhs] * values[s.rhs]));
    }
    return values;
}

Chain addition_chain(const BigInt& target) {
    if (target < 1) throw InvalidArgument("addition_chain: target must be at least 1");
    return binary_chain(Chain::Kind::Additive, 1, target);
}

Chain power_chain(const BigInt& base, const BigInt& exponent) {
    if (exponent < 1) throw InvalidArgument("power_chain: exponent must be at least 1");
    return binary_chain(Chain::Kind::Multiplicative, base, exponent);
}

}  // namespace ensys
