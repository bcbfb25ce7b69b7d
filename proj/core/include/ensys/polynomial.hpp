#pragma once

#include "ensys/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ensys {

/// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Variables are kept sorted by name and unique; every exponent vector has one
/// entry per variable. Zero coefficients are never stored, so the zero
/// polynomial is the empty term map. Binary operations on polynomials with
/// different variable lists work over the sorted union of both lists.
class Polynomial {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, BigInt>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> variables);

    static Polynomial constant(const BigInt& value, std::vector<std::string> variables = {});
    static Polynomial variable(const std::string& name, std::vector<std::string> variables = {});

    const std::vector<std::string>& variables() const noexcept { return variables_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t variable_count() const noexcept { return variables_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    BigInt constant_term() const;
    BigInt coefficient(const Exponents& exponents) const;

    // Index of the variable this polynomial equals (coefficient 1, degree 1), if any.
    std::optional<std::size_t> as_variable() const;

    std::uint32_t degree_in(std::size_t var_index) const;
    std::uint32_t total_degree() const;
    std::optional<std::size_t> index_of(const std::string& name) const;

    // Accumulates c * x^exponents; entries summing to zero are erased.
    void add_term(const Exponents& exponents, const BigInt& c);

    // Same polynomial expressed over a superset of its variables.
    Polynomial with_variables(const std::vector<std::string>& variables) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }
    Polynomial pow(std::uint32_t exponent) const;

    // Term maps compared over the union of variables; unused variables do not matter.
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    // Strict identity: same variable list and same terms.
    bool identical(const Polynomial& other) const {
        return variables_ == other.variables_ && terms_ == other.terms_;
    }

    // Exact evaluation; values are given per variable in variables() order.
    BigInt evaluate(std::span<const BigInt> values) const;

    // Parseable text, terms in descending graded order, e.g. "4*x^2 + 4*x + 1".
    std::string to_string() const;

private:
    std::vector<std::string> variables_;
    TermMap terms_;
};

// Evaluates at a name-keyed assignment; throws InvalidArgument on a missing variable.
BigInt evaluate(const Polynomial& poly, const std::map<std::string, BigInt>& assignment);

// Sorted union of two sorted variable lists.
std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

}  // namespace ensys
