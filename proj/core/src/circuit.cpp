#include "ensys/circuit.hpp"

#include "ensys/chains.hpp"
#include "ensys/errors.hpp"

#include <utility>

namespace ensys {

using Op = CircuitStep::Op;

Circuit::Circuit(const std::vector<std::string>& inputs) : tracking_(true) {
    Polynomial scope(inputs);
    inputs_ = scope.variables();
    for (const auto& name : inputs_) {
        auto poly = Polynomial::variable(name, inputs_);
        by_poly_.emplace(poly.terms(), system_.n() + 1);
        VarIndex v = system_.add_variable(name);
        polys_.push_back(std::move(poly));
        steps_.push_back({Op::Input, v});
    }
}

VarIndex Circuit::input(std::string label) {
    if (tracking_) throw InvalidArgument("tracking circuits declare inputs at construction");
    VarIndex v = system_.add_variable(std::move(label));
    polys_.emplace_back();
    steps_.push_back({Op::Input, v});
    return v;
}

std::optional<Polynomial> Circuit::combine(Op op, VarIndex a, VarIndex b) const {
    if (!tracking_) return std::nullopt;
    switch (op) {
        case Op::One: return Polynomial::constant(1, inputs_);
        case Op::Zero: return Polynomial(inputs_);
        case Op::Add: return *polys_.at(a) + *polys_.at(b);
        case Op::Sub: return *polys_.at(a) - *polys_.at(b);
        case Op::Mul: return *polys_.at(a) * *polys_.at(b);
        case Op::Input: break;
    }
    return std::nullopt;
}

std::string Circuit::label_for(Op op, VarIndex a, VarIndex b, const std::optional<Polynomial>& poly) const {
    if (poly) return poly->to_string();
    auto x = [](VarIndex v) { return "x" + std::to_string(v); };
    switch (op) {
        case Op::One: return "1";
        case Op::Zero: return "0";
        case Op::Add: return x(a) + "+" + x(b);
        case Op::Sub: return x(a) + "-" + x(b);
        case Op::Mul: return x(a) + "*" + x(b);
        case Op::Input: break;
    }
    return {};
}

VarIndex Circuit::make(Op op, VarIndex a, VarIndex b, const AtomicEquation& eq,
                       std::optional<Polynomial> poly, std::string label) {
    VarIndex v = system_.add_variable(std::move(label));
    AtomicEquation bound = eq;
    // Placeholder index 0 in eq stands for the new variable.
    if (bound.i == 0) bound.i = v;
    if (bound.j == 0 && bound.kind != EquationKind::Unit) bound.j = v;
    if (bound.k == 0 && bound.kind != EquationKind::Unit) bound.k = v;
    system_.add(bound);
    steps_.push_back({op, v, a, b});
    if (poly) by_poly_.emplace(poly->terms(), v);
    polys_.push_back(std::move(poly));
    return v;
}

namespace {

std::pair<VarIndex, VarIndex> ordered(Op op, VarIndex a, VarIndex b) {
    if ((op == Op::Add || op == Op::Mul) && b < a) std::swap(a, b);
    return {a, b};
}

}  // namespace

VarIndex Circuit::one() {
    StructKey key{Op::One, 0, 0};
    if (auto it = structural_.find(key); it != structural_.end()) return it->second;
    auto poly = combine(Op::One, 0, 0);
    if (poly) {
        if (auto it = by_poly_.find(poly->terms()); it != by_poly_.end()) return structural_[key] = it->second;
    }
    auto label = label_for(Op::One, 0, 0, poly);
    return structural_[key] = make(Op::One, 0, 0, AtomicEquation::unit(0), std::move(poly), label);
}

VarIndex Circuit::zero() {
    StructKey key{Op::Zero, 0, 0};
    if (auto it = structural_.find(key); it != structural_.end()) return it->second;
    auto poly = combine(Op::Zero, 0, 0);
    if (poly) {
        if (auto it = by_poly_.find(poly->terms()); it != by_poly_.end()) return structural_[key] = it->second;
    }
    auto label = label_for(Op::Zero, 0, 0, poly);
    return structural_[key] = make(Op::Zero, 0, 0, AtomicEquation::add(0, 0, 0), std::move(poly), label);
}

namespace {

AtomicEquation pattern(Op op, VarIndex a, VarIndex b) {
    switch (op) {
        case Op::Add: return AtomicEquation::add(a, b, 0);
        case Op::Sub: return AtomicEquation::add(0, b, a);
        case Op::Mul: return AtomicEquation::mul(a, b, 0);
        default: break;
    }
    throw InvalidArgument("not a binary circuit operation");
}

}  // namespace

VarIndex Circuit::binary(Op op, VarIndex a, VarIndex b) {
    if (a == 0 || b == 0 || a > size() || b > size()) throw InvalidArgument("circuit operand out of range");
    auto [x, y] = ordered(op, a, b);
    StructKey key{op, x, y};
    if (auto it = structural_.find(key); it != structural_.end()) return it->second;
    auto poly = combine(op, x, y);
    if (poly) {
        if (auto it = by_poly_.find(poly->terms()); it != by_poly_.end()) return structural_[key] = it->second;
    }
    auto label = label_for(op, x, y, poly);
    return structural_[key] = make(op, x, y, pattern(op, x, y), std::move(poly), label);
}

VarIndex Circuit::add(VarIndex a, VarIndex b) { return binary(Op::Add, a, b); }
VarIndex Circuit::sub(VarIndex a, VarIndex b) { return binary(Op::Sub, a, b); }
VarIndex Circuit::mul(VarIndex a, VarIndex b) { return binary(Op::Mul, a, b); }

VarIndex Circuit::constant(const BigInt& value) {
    if (sgn(value) < 0) throw InvalidArgument("circuit constants must be non-negative");
    if (sgn(value) == 0) return zero();
    Chain chain = addition_chain(value);
    std::vector<VarIndex> at{one()};
    for (const auto& s : chain.steps) at.push_back(add(at[s.lhs], at[s.rhs]));
    return at.back();
}

VarIndex Circuit::power(VarIndex base, const BigInt& exponent) {
    Chain chain = power_chain(1, exponent);
    std::vector<VarIndex> at{base};
    for (const auto& s : chain.steps) at.push_back(mul(at[s.lhs], at[s.rhs]));
    return at.back();
}

void Circuit::assert_equal(VarIndex a, VarIndex b) { system_.add(AtomicEquation::add(a, zero(), b)); }

void Circuit::assert_zero(VarIndex a) { system_.add(AtomicEquation::add(a, a, a)); }

}  // namespace ensys
