#pragma once

#include "ensys/atomic_system.hpp"
#include "ensys/bigint.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace ensys {

enum class DomainKind { NonNegative, Integer };

// Per-variable range override; a missing side is unbounded.
struct VarRange {
    std::optional<BigInt> lo;
    std::optional<BigInt> hi;
};

/// Search box: every variable ranges over [0, B] (NonNegative) or [-B, B]
/// (Integer) unless overridden. Overrides are clipped to [0, inf) in
/// NonNegative mode.
struct Box {
    DomainKind kind = DomainKind::NonNegative;
    BigInt bound = 0;
    std::map<VarIndex, VarRange> overrides;

    static Box naturals(const BigInt& bound) { return {DomainKind::NonNegative, bound, {}}; }
    static Box integers(const BigInt& bound) { return {DomainKind::Integer, bound, {}}; }

    // Leaves variables first..last without a bound (the propagated-bound mode
    // for auxiliary variables of compiled systems).
    Box& unbounded(VarIndex first, VarIndex last);
    Box& pin(VarIndex v, const BigInt& value);

    VarRange range(VarIndex v) const;
};

// Closed interval with optional infinite ends.
struct Interval {
    BigInt lo;
    BigInt hi;
    bool lo_inf = false;
    bool hi_inf = false;

    bool fixed() const { return !lo_inf && !hi_inf && lo == hi; }
    bool finite() const { return !lo_inf && !hi_inf; }
    bool empty() const { return finite() && lo > hi; }
    bool contains(const BigInt& v) const { return (lo_inf || lo <= v) && (hi_inf || v <= hi); }
};

using Domains = std::vector<Interval>;  // indexed by variable, slot 0 unused

struct SolveOptions {
    bool keep = false;
    std::uint64_t node_budget = 100'000'000;
    unsigned threads = 1;
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::uint64_t fixpoints = 0;
};

struct CountReport {
    VarIndex n = 0;
    DomainKind kind = DomainKind::NonNegative;
    BigInt count = 0;
    std::optional<std::vector<std::vector<BigInt>>> solutions;  // sorted lexicographically
    bool exhausted = false;
    // Every found solution satisfies |x_i| <= 2^(2^(n-1)).
    bool bound_flag = true;
    // Some coordinate of some solution equals that bound in absolute value.
    bool bound_attained = false;
    SolveStats stats;
};

// Initial domains for a box.
Domains initial_domains(const EnSystem& system, const Box& box);

/// Narrows domains to a fixpoint of the per-equation rules. Returns false on
/// contradiction (some domain became empty). Stopping before the fixpoint is
/// sound; fully assigned systems are always decided exactly.
bool propagate(const EnSystem& system, Domains& domains, DomainKind kind);

/// Exact number of assignments in the box that satisfy every equation.
/// Throws BudgetExceeded when the node budget runs out and InvalidArgument
/// when an unbounded variable stays undetermined.
CountReport count_solutions(const EnSystem& system, const Box& box, const SolveOptions& options = {});

// True iff every distinct length-p prefix among solutions occurs exactly once.
bool verify_unique_extension(const EnSystem& system, std::size_t p,
                             const std::vector<std::vector<BigInt>>& solutions);

// |v| <= 2^(2^(n-1)), decided without materializing the bound for large n.
bool within_conjecture_bound(const BigInt& v, VarIndex n);
bool equals_conjecture_bound(const BigInt& v, VarIndex n);

// Plain assignment check; values[v - 1] is the value of x_v.
bool satisfies(const EnSystem& system, const std::vector<BigInt>& values);

}  // namespace ensys
