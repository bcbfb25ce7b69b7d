#pragma once

#include "ensys/atomic_system.hpp"
#include "ensys/bigint.hpp"
#include "ensys/polynomial.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace ensys {

/// How a circuit variable gets its value.
struct CircuitStep {
    enum class Op { Input, One, Zero, Add, Sub, Mul };
    Op op;
    VarIndex var;
    VarIndex a = 0;
    VarIndex b = 0;
};

/// Incrementally builds an E_n system in which every non-input variable is
/// defined by exactly one atomic equation from earlier variables:
///
///     one   x = 1
///     zero  x + x = x
///     add   a + b = x
///     sub   x + b = a      (x = a - b)
///     mul   a * b = x
///
/// Repeated requests for the same operation on the same operands return the
/// existing variable. With polynomial tracking enabled, every variable also
/// carries its defining polynomial over the inputs and requests are shared by
/// expanded-polynomial equality instead.
class Circuit {
public:
    Circuit() = default;

    // Tracking circuit; inputs are created immediately as variables 1..p.
    explicit Circuit(const std::vector<std::string>& inputs);

    // Untracked input variable.
    VarIndex input(std::string label);

    VarIndex one();
    VarIndex zero();
    VarIndex add(VarIndex a, VarIndex b);
    VarIndex sub(VarIndex a, VarIndex b);
    VarIndex mul(VarIndex a, VarIndex b);
    VarIndex square(VarIndex a) { return mul(a, a); }

    // Non-negative constant via the binary addition chain from one().
    VarIndex constant(const BigInt& value);
    // base^exponent via the square-and-multiply chain (exponent >= 1).
    VarIndex power(VarIndex base, const BigInt& exponent);

    // Constraints that define no new variable.
    void assert_equal(VarIndex a, VarIndex b);  // a + zero = b
    void assert_zero(VarIndex a);               // a + a = a
    void add_constraint(const AtomicEquation& eq) { system_.add(eq); }
    void set_label(VarIndex v, std::string label) { system_.set_label(v, std::move(label)); }

    bool tracking() const noexcept { return tracking_; }
    const std::optional<Polynomial>& polynomial(VarIndex v) const { return polys_.at(v); }

    const EnSystem& system() const noexcept { return system_; }
    const std::vector<CircuitStep>& steps() const noexcept { return steps_; }
    VarIndex size() const noexcept { return system_.n(); }
    EnSystem take_system() && { return std::move(system_); }

private:
    using StructKey = std::tuple<CircuitStep::Op, VarIndex, VarIndex>;

    VarIndex binary(CircuitStep::Op op, VarIndex a, VarIndex b);
    VarIndex make(CircuitStep::Op op, VarIndex a, VarIndex b, const AtomicEquation& eq,
                  std::optional<Polynomial> poly, std::string label);
    std::optional<Polynomial> combine(CircuitStep::Op op, VarIndex a, VarIndex b) const;
    std::string label_for(CircuitStep::Op op, VarIndex a, VarIndex b, const std::optional<Polynomial>& poly) const;

    EnSystem system_;
    std::vector<CircuitStep> steps_;
    std::vector<std::optional<Polynomial>> polys_{std::nullopt};  // index 0 unused
    std::vector<std::string> inputs_;
    bool tracking_ = false;
    std::map<StructKey, VarIndex> structural_;
    std::map<Polynomial::TermMap, VarIndex> by_poly_;
};

}  // namespace ensys
