#include "ensys/polynomial.hpp"

#include "ensys/errors.hpp"
#include "ensys/normalize.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ensys {

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::uint32_t sum_exponents(const Polynomial::Exponents& e) {
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

}  // namespace

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
    std::vector<std::string> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Polynomial::Polynomial(std::vector<std::string> variables)
    : variables_(sorted_unique(std::move(variables))) {}

Polynomial Polynomial::constant(const BigInt& value, std::vector<std::string> variables) {
    Polynomial p(std::move(variables));
    p.add_term(Exponents(p.variables_.size(), 0), value);
    return p;
}

Polynomial Polynomial::variable(const std::string& name, std::vector<std::string> variables) {
    variables.push_back(name);
    Polynomial p(std::move(variables));
    Exponents e(p.variables_.size(), 0);
    e[*p.index_of(name)] = 1;
    p.add_term(e, 1);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && sum_exponents(terms_.begin()->first) == 0);
}

BigInt Polynomial::constant_term() const { return coefficient(Exponents(variables_.size(), 0)); }

BigInt Polynomial::coefficient(const Exponents& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? BigInt(0) : it->second;
}

std::optional<std::size_t> Polynomial::as_variable() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [e, c] = *terms_.begin();
    if (c != 1 || sum_exponents(e) != 1) return std::nullopt;
    return static_cast<std::size_t>(std::find(e.begin(), e.end(), 1u) - e.begin());
}

std::uint32_t Polynomial::degree_in(std::size_t var_index) const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var_index));
    return d;
}

std::uint32_t Polynomial::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, sum_exponents(e));
    return d;
}

std::optional<std::size_t> Polynomial::index_of(const std::string& name) const {
    auto it = std::lower_bound(variables_.begin(), variables_.end(), name);
    if (it == variables_.end() || *it != name) return std::nullopt;
    return static_cast<std::size_t>(it - variables_.begin());
}

void Polynomial::add_term(const Exponents& exponents, const BigInt& c) {
    if (exponents.size() != variables_.size())
        throw InvalidArgument("exponent vector length does not match variable count");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponents, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::with_variables(const std::vector<std::string>& variables) const {
    Polynomial out(variables);
    if (out.variables_ == variables_) {
        out.terms_ = terms_;
        return out;
    }
    std::vector<std::optional<std::size_t>> slot(variables_.size());
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        slot[i] = out.index_of(variables_[i]);
        if (!slot[i] && degree_in(i) > 0)
            throw InvalidArgument("variable '" + variables_[i] + "' missing from target variable list");
    }
    for (const auto& [e, c] : terms_) {
        Exponents mapped(out.variables_.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (slot[i]) mapped[*slot[i]] = e[i];
        out.terms_.emplace(std::move(mapped), c);
    }
    return out;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (variables_ != rhs.variables_) {
        auto vars = merge_variables(variables_, rhs.variables_);
        *this = with_variables(vars);
        return *this += rhs.with_variables(vars);
    }
    for (const auto& [e, c] : rhs.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this += -rhs; }

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    if (variables_ != rhs.variables_) {
        auto vars = merge_variables(variables_, rhs.variables_);
        *this = with_variables(vars);
        return *this *= rhs.with_variables(vars);
    }
    Polynomial out(variables_);
    Exponents e(variables_.size());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    *this = std::move(out);
    return *this;
}

Polynomial Polynomial::pow(std::uint32_t exponent) const {
    Polynomial result = constant(1, variables_);
    Polynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1u) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.variables_ == b.variables_) return a.terms_ == b.terms_;
    auto vars = merge_variables(a.variables_, b.variables_);
    return a.with_variables(vars).terms_ == b.with_variables(vars).terms_;
}

BigInt Polynomial::evaluate(std::span<const BigInt> values) const {
    if (values.size() != variables_.size())
        throw InvalidArgument("assignment size does not match variable count");
    BigInt total = 0;
    BigInt term, power;
    for (const auto& [e, c] : terms_) {
        term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            mpz_pow_ui(power.get_mpz_t(), values[i].get_mpz_t(), e[i]);
            term *= power;
        }
        total += term;
    }
    return total;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<const TermMap::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
        auto da = sum_exponents(a->first), db = sum_exponents(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });

    std::ostringstream os;
    bool first = true;
    for (const auto* t : order) {
        const auto& [e, c] = *t;
        BigInt mag = abs(c);
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1 || sum_exponents(e) == 0) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (wrote) os << "*";
            os << variables_[i];
            if (e[i] > 1) os << "^" << e[i];
            wrote = true;
        }
    }
    return os.str();
}

BigInt evaluate(const Polynomial& poly, const std::map<std::string, BigInt>& assignment) {
    std::vector<BigInt> values;
    values.reserve(poly.variable_count());
    for (const auto& name : poly.variables()) {
        auto it = assignment.find(name);
        if (it == assignment.end()) throw InvalidArgument("missing value for variable '" + name + "'");
        values.push_back(it->second);
    }
    return poly.evaluate(values);
}

// ---------------------------------------------------------------------------
// A = B normalization

bool satisfies_side_conditions(const NormalizedPair& pair) {
    for (const auto* side : {&pair.lhs, &pair.rhs})
        for (const auto& [e, c] : side->terms())
            if (sgn(c) < 0) return false;
    if (pair.lhs.is_zero() || pair.lhs.as_variable()) return false;
    if (pair.rhs.is_zero() || pair.rhs.as_variable()) return false;
    return !(pair.lhs == pair.rhs);
}

NormalizedPair split_nonneg(const Polynomial& d) {
    if (d.is_zero()) throw InvalidArgument("split_nonneg: zero polynomial");
    NormalizedPair pair{Polynomial(d.variables()), Polynomial(d.variables()), d.variable_count()};
    for (const auto& [e, c] : d.terms()) {
        if (sgn(c) > 0)
            pair.lhs.add_term(e, c);
        else
            pair.rhs.add_term(e, -c);
    }
    if (!satisfies_side_conditions(pair)) {
        auto one = Polynomial::constant(1, d.variables());
        pair.lhs += one;
        pair.rhs += one;
    }
    return pair;
}

FamilySpec family_params(const NormalizedPair& pair) {
    FamilySpec spec;
    spec.delta = 0;
    for (const auto* side : {&pair.lhs, &pair.rhs})
        for (const auto& [e, c] : side->terms()) spec.delta = std::max(spec.delta, BigInt(c));
    spec.monomial_count = 1;
    for (std::size_t i = 0; i < pair.p; ++i) {
        auto cap = std::max(pair.lhs.degree_in(i), pair.rhs.degree_in(i));
        spec.degree_caps.push_back(cap);
        spec.monomial_count *= cap + 1;
    }
    if (spec.monomial_count > (1u << 24)) throw CapExceeded("family_params: too many monomials");
    spec.family_size = pow_ui(spec.delta + 1, spec.monomial_count.get_ui());
    return spec;
}

}  // namespace ensys
