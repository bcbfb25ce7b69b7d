#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ensys {

using VarIndex = std::uint32_t;  // 1-based variable index

enum class EquationKind : std::uint8_t { Unit, Add, Mul };

/// One member of E_n: x_i = 1, x_i + x_j = x_k, or x_i * x_j = x_k.
/// Unit equations keep j = k = 0.
struct AtomicEquation {
    EquationKind kind = EquationKind::Unit;
    VarIndex i = 0;
    VarIndex j = 0;
    VarIndex k = 0;

    static AtomicEquation unit(VarIndex i) { return {EquationKind::Unit, i, 0, 0}; }
    static AtomicEquation add(VarIndex i, VarIndex j, VarIndex k) { return {EquationKind::Add, i, j, k}; }
    static AtomicEquation mul(VarIndex i, VarIndex j, VarIndex k) { return {EquationKind::Mul, i, j, k}; }

    // Same equation with (i, j) sorted; Unit equations are returned unchanged.
    AtomicEquation commutative_key() const;
    VarIndex max_index() const;
    std::string to_string() const;

    auto operator<=>(const AtomicEquation&) const = default;
};

/// A finite subset of E_n. Equations keep their insertion order; exact
/// duplicates are rejected on insertion. Labels name what a variable encodes
/// and never affect semantics.
class EnSystem {
public:
    EnSystem() = default;
    explicit EnSystem(VarIndex n) : n_(n) {}

    VarIndex n() const noexcept { return n_; }
    const std::vector<AtomicEquation>& equations() const noexcept { return equations_; }
    std::size_t size() const noexcept { return equations_.size(); }
    const std::map<VarIndex, std::string>& labels() const noexcept { return labels_; }

    // Returns false when the equation is already present.
    bool add(const AtomicEquation& eq);
    bool contains(const AtomicEquation& eq) const { return index_.contains(eq); }

    // Appends a fresh variable and returns its index.
    VarIndex add_variable(std::string label = {});
    void set_n(VarIndex n) { n_ = n; }
    void set_label(VarIndex v, std::string label);

    bool has_kind(EquationKind kind) const;

    friend bool operator==(const EnSystem& a, const EnSystem& b) {
        return a.n_ == b.n_ && a.equations_ == b.equations_ && a.labels_ == b.labels_;
    }

private:
    VarIndex n_ = 0;
    std::vector<AtomicEquation> equations_;
    std::set<AtomicEquation> index_;
    std::map<VarIndex, std::string> labels_;
};

// Every equation of E_n: n Unit, n^3 Add and n^3 Mul equations.
EnSystem full_En(VarIndex n);

struct Diagnostic {
    enum class Severity { Warning, Error };
    Severity severity;
    std::string code;  // "index-range", "commutative-duplicate", "unused-variable"
    std::string message;
};

std::vector<Diagnostic> validate(const EnSystem& system);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Text form, one item per line:
///
///     @vars 5
///     @label 3 x^2
///     x2 = 1
///     x1 + x1 = x3
///     x1 * x1 = x4
///
/// '#' starts a comment. Without @vars, n is the largest index used.
std::string to_text(const EnSystem& system);
EnSystem from_text(std::string_view text);

}  // namespace ensys
