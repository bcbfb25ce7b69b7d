#include "ensys/compiler.hpp"

#include "ensys/circuit.hpp"
#include "ensys/errors.hpp"

#include <algorithm>
#include <numeric>

namespace ensys {

// ---------------------------------------------------------------------------
// flatten

namespace {

VarIndex build(Circuit& c, const Polynomial& poly) {
    if (poly.is_zero()) return c.zero();

    std::vector<const Polynomial::TermMap::value_type*> order;
    for (const auto& t : poly.terms()) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        auto da = std::accumulate(a->first.begin(), a->first.end(), 0u);
        auto db = std::accumulate(b->first.begin(), b->first.end(), 0u);
        if (da != db) return da > db;
        return a->first > b->first;
    });

    VarIndex acc = 0;
    for (const auto* term : order) {
        const auto& [e, coeff] = *term;
        VarIndex mono = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            VarIndex factor = c.power(static_cast<VarIndex>(i + 1), e[i]);
            mono = mono == 0 ? factor : c.mul(mono, factor);
        }
        VarIndex value;
        if (mono == 0)
            value = c.constant(coeff);
        else if (coeff == 1)
            value = mono;
        else
            value = c.mul(c.constant(coeff), mono);
        acc = acc == 0 ? value : c.add(acc, value);
    }
    return acc;
}

}  // namespace

FlattenResult flatten(const NormalizedPair& pair) {
    const auto& vars = pair.lhs.variables();
    if (pair.rhs.variables() != vars || vars.size() != pair.p)
        throw InvalidArgument("flatten: both sides must share the original variable list");

    Circuit c(vars);
    c.one();
    VarIndex a = build(c, pair.lhs);
    VarIndex b = build(c, pair.rhs);
    c.assert_equal(a, b);

    FlattenResult out;
    out.plan.p = pair.p;
    out.plan.lhs_var = a;
    out.plan.rhs_var = b;
    for (VarIndex v = static_cast<VarIndex>(pair.p) + 1; v <= c.size(); ++v)
        out.plan.subterms.push_back({v, *c.polynomial(v)});
    out.system = std::move(c).take_system();
    return out;
}

// ---------------------------------------------------------------------------
// lemma1_system
//
// A member of T is stored as its coefficient digits (one per monomial within
// the degree caps) and identified by the mixed-radix code of those digits.

namespace {

class Family {
public:
    Family(const FamilySpec& spec, std::size_t p) : caps_(spec.degree_caps), p_(p) {
        delta_ = static_cast<unsigned>(spec.delta.get_ui());
        monomials_ = static_cast<std::size_t>(spec.monomial_count.get_ui());
        size_ = static_cast<std::size_t>(spec.family_size.get_ui());
        stride_.assign(p_, 1);
        for (std::size_t i = 1; i < p_; ++i) stride_[i] = stride_[i - 1] * (caps_[i - 1] + 1);
        digits_.resize(size_ * monomials_);
        for (std::size_t code = 0; code < size_; ++code) {
            std::size_t rest = code;
            for (std::size_t m = 0; m < monomials_; ++m) {
                digits_[code * monomials_ + m] = static_cast<std::uint16_t>(rest % (delta_ + 1));
                rest /= delta_ + 1;
            }
        }
    }

    std::size_t size() const { return size_; }
    std::size_t monomials() const { return monomials_; }
    const std::uint16_t* digits(std::size_t code) const { return &digits_[code * monomials_]; }

    std::size_t monomial_index(const Polynomial::Exponents& e) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < p_; ++i) idx += e[i] * stride_[i];
        return idx;
    }

    Polynomial::Exponents exponents(std::size_t monomial) const {
        Polynomial::Exponents e(p_);
        for (std::size_t i = 0; i < p_; ++i) e[i] = static_cast<std::uint32_t>((monomial / stride_[i]) % (caps_[i] + 1));
        return e;
    }

    std::size_t code_of(const Polynomial& poly) const {
        std::vector<std::uint16_t> d(monomials_, 0);
        for (const auto& [e, c] : poly.terms()) d[monomial_index(e)] = static_cast<std::uint16_t>(c.get_ui());
        return encode(d.data());
    }

    std::size_t encode(const std::uint16_t* d) const {
        std::size_t code = 0;
        for (std::size_t m = monomials_; m-- > 0;) code = code * (delta_ + 1) + d[m];
        return code;
    }

    Polynomial polynomial(std::size_t code, const std::vector<std::string>& vars) const {
        Polynomial poly(vars);
        const auto* d = digits(code);
        for (std::size_t m = 0; m < monomials_; ++m)
            if (d[m] != 0) poly.add_term(exponents(m), d[m]);
        return poly;
    }

    // Code of a + b, or nullopt when some coefficient exceeds delta.
    std::optional<std::size_t> sum(std::size_t a, std::size_t b, std::vector<std::uint16_t>& scratch) const {
        const auto* da = digits(a);
        const auto* db = digits(b);
        scratch.resize(monomials_);
        for (std::size_t m = 0; m < monomials_; ++m) {
            unsigned v = da[m] + db[m];
            if (v > delta_) return std::nullopt;
            scratch[m] = static_cast<std::uint16_t>(v);
        }
        return encode(scratch.data());
    }

    // Code of a * b, or nullopt when a degree cap or delta is exceeded.
    std::optional<std::size_t> product(std::size_t a, std::size_t b, std::vector<std::uint16_t>& scratch,
                                       const std::vector<std::vector<std::size_t>>& support) const {
        scratch.assign(monomials_, 0);
        const auto* da = digits(a);
        const auto* db = digits(b);
        for (std::size_t ma : support[a]) {
            auto ea = exponents(ma);
            for (std::size_t mb : support[b]) {
                std::size_t idx = 0;
                for (std::size_t i = 0; i < p_; ++i) {
                    std::uint32_t e = ea[i] + (mb / stride_[i]) % (caps_[i] + 1);
                    if (e > caps_[i]) return std::nullopt;
                    idx += e * stride_[i];
                }
                unsigned v = scratch[idx] + static_cast<unsigned>(da[ma]) * db[mb];
                if (v > delta_) return std::nullopt;
                scratch[idx] = static_cast<std::uint16_t>(v);
            }
        }
        return encode(scratch.data());
    }

private:
    std::vector<std::uint32_t> caps_;
    std::size_t p_;
    unsigned delta_ = 0;
    std::size_t monomials_ = 0;
    std::size_t size_ = 0;
    std::vector<std::size_t> stride_;
    std::vector<std::uint16_t> digits_;
};

}  // namespace

Lemma1Result lemma1_system(const NormalizedPair& pair, unsigned long limit) {
    if (!satisfies_side_conditions(pair)) throw InvalidArgument("lemma1_system: pair violates the side conditions");
    FamilySpec spec = family_params(pair);
    if (spec.family_size > limit)
        throw FamilyTooLarge("lemma1_system: |T| = " + to_string(spec.family_size) + " exceeds limit " +
                             std::to_string(limit));

    if (spec.delta >= 0xFFFF) throw FamilyTooLarge("lemma1_system: coefficient cap too large");

    const std::size_t p = pair.p;
    const auto& vars = pair.lhs.variables();
    Family family(spec, p);

    // Codes of the original variables that belong to T.
    std::vector<std::size_t> var_code(p, SIZE_MAX);
    for (std::size_t i = 0; i < p; ++i)
        if (spec.degree_caps[i] >= 1) var_code[i] = family.code_of(Polynomial::variable(vars[i], vars));

    const std::size_t zero_code = 0;
    const std::size_t a_code = family.code_of(pair.lhs);
    const std::size_t b_code = family.code_of(pair.rhs);

    std::vector<bool> pinned(family.size(), false);
    for (auto c : var_code)
        if (c != SIZE_MAX) pinned[c] = true;
    pinned[zero_code] = pinned[a_code] = pinned[b_code] = true;

    struct Member {
        std::size_t code;
        Polynomial poly;
    };
    std::vector<Member> rest;
    for (std::size_t code = 0; code < family.size(); ++code)
        if (!pinned[code]) rest.push_back({code, family.polynomial(code, vars)});
    std::sort(rest.begin(), rest.end(), [](const Member& x, const Member& y) {
        auto dx = x.poly.total_degree(), dy = y.poly.total_degree();
        if (dx != dy) return dx < dy;
        return x.poly.terms() < y.poly.terms();
    });

    // code -> variable index, and the inverse.
    std::vector<VarIndex> var_of(family.size(), 0);
    std::vector<std::size_t> code_of_var(1, SIZE_MAX);
    Lemma1Result out;
    out.tau.p = p;
    EnSystem& s = out.system;
    for (std::size_t i = 0; i < p; ++i) {
        VarIndex v = s.add_variable(vars[i]);
        code_of_var.push_back(var_code[i]);
        if (var_code[i] != SIZE_MAX) var_of[var_code[i]] = v;
    }
    auto assign = [&](std::size_t code, Polynomial poly) {
        VarIndex v = s.add_variable(poly.to_string());
        var_of[code] = v;
        code_of_var.push_back(code);
        out.tau.entries.emplace(v, std::move(poly));
    };
    assign(zero_code, Polynomial(vars));
    assign(a_code, pair.lhs);
    assign(b_code, pair.rhs);
    for (auto& m : rest) assign(m.code, std::move(m.poly));

    const VarIndex n = s.n();
    std::vector<std::vector<std::size_t>> support(family.size());
    for (std::size_t code = 0; code < family.size(); ++code) {
        const auto* d = family.digits(code);
        for (std::size_t m = 0; m < family.monomials(); ++m)
            if (d[m] != 0) support[code].push_back(m);
    }

    // H: Unit identities, then Add, then Mul, each in (i, j, k) order.
    std::size_t one_code = family.code_of(Polynomial::constant(1, vars));
    s.add(AtomicEquation::unit(var_of[one_code]));

    std::vector<std::uint16_t> scratch;
    for (VarIndex i = 1; i <= n; ++i) {
        if (code_of_var[i] == SIZE_MAX) continue;
        for (VarIndex j = 1; j <= n; ++j) {
            if (code_of_var[j] == SIZE_MAX) continue;
            if (auto k = family.sum(code_of_var[i], code_of_var[j], scratch))
                s.add(AtomicEquation::add(i, j, var_of[*k]));
        }
    }
    for (VarIndex i = 1; i <= n; ++i) {
        if (code_of_var[i] == SIZE_MAX) continue;
        for (VarIndex j = 1; j <= n; ++j) {
            if (code_of_var[j] == SIZE_MAX) continue;
            if (auto k = family.product(code_of_var[i], code_of_var[j], scratch, support))
                s.add(AtomicEquation::mul(i, j, var_of[*k]));
        }
    }

    const auto base = static_cast<VarIndex>(p);
    s.add(AtomicEquation::add(base + 1, base + 2, base + 3));
    return out;
}

EnSystem pad_to(const EnSystem& system, VarIndex m) {
    if (m < system.n())
        throw InvalidArgument("pad_to: target " + std::to_string(m) + " is below the current variable count " +
                              std::to_string(system.n()));
    EnSystem out = system;
    while (out.n() < m) out.add(AtomicEquation::unit(out.add_variable("pad")));
    return out;
}

}  // namespace ensys
