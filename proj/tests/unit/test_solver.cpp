#include "support.hpp"

#include "ensys/errors.hpp"
#include "ensys/generators.hpp"
#include "ensys/solver.hpp"

#include <gtest/gtest.h>

using namespace ensys;
using ensys::testing::naive_solutions;

namespace {

std::vector<std::vector<BigInt>> as_big(const std::vector<std::vector<std::int64_t>>& rows) {
    std::vector<std::vector<BigInt>> out;
    for (const auto& r : rows) out.push_back(ensys::testing::big(r));
    return out;
}

Box box_for(DomainKind kind, long b) { return kind == DomainKind::NonNegative ? Box::naturals(b) : Box::integers(b); }

}  // namespace

TEST(CountSolutions, FullEnOneHasNoSolution) {
    auto r = count_solutions(full_En(1), Box::naturals(5));
    EXPECT_EQ(r.count, 0);
    EXPECT_TRUE(r.exhausted);
}

TEST(CountSolutions, ObservationThreeAttainsTheBound) {
    auto r = count_solutions(gen_observation(3).system, Box::integers(16), {.keep = true});
    EXPECT_EQ(r.count, 2);
    EXPECT_EQ(*r.solutions, (std::vector<std::vector<BigInt>>{{0, 0, 0}, {2, 4, 16}}));
    EXPECT_TRUE(r.bound_flag);
    EXPECT_TRUE(r.bound_attained);
}

TEST(CountSolutions, TheoremTwoFive) {
    EXPECT_EQ(count_solutions(gen_theorem2(5, 7).system, Box::naturals(5)).count, 5);
}

TEST(CountSolutions, BoundFlagDetectsLargeValues) {
    EnSystem s(1);
    s.add(AtomicEquation::add(1, 1, 1));
    EXPECT_TRUE(count_solutions(s, Box::integers(9)).bound_flag);
    EnSystem t(1);
    t.add(AtomicEquation::mul(1, 1, 1));
    auto r = count_solutions(t, Box::integers(9), {.keep = true});
    EXPECT_EQ(r.count, 2);
    EXPECT_TRUE(r.bound_flag);
    EnSystem u(2);
    u.add(AtomicEquation::add(1, 1, 2));
    u.add(AtomicEquation::unit(1));
    EXPECT_TRUE(count_solutions(u, Box::naturals(9)).bound_flag);
    EnSystem w(1);
    w.add(AtomicEquation::mul(1, 1, 1));
    w.set_n(2);  // x2 is free and reaches 9 > 2^(2^1)
    EXPECT_FALSE(count_solutions(w, Box::naturals(9)).bound_flag);
}

TEST(Propagate, Examples) {
    EnSystem a(2);
    a.add(AtomicEquation::add(1, 1, 2));
    Box box = Box::naturals(100);
    box.pin(1, 1);
    Domains d = initial_domains(a, box);
    ASSERT_TRUE(propagate(a, d, DomainKind::NonNegative));
    EXPECT_TRUE(d[2].fixed());
    EXPECT_EQ(d[2].lo, 2);

    EnSystem b(2);
    b.add(AtomicEquation::mul(1, 1, 2));
    Box nb = Box::naturals(100);
    nb.pin(2, 9);
    Domains dn = initial_domains(b, nb);
    ASSERT_TRUE(propagate(b, dn, DomainKind::NonNegative));
    EXPECT_TRUE(dn[1].fixed());
    EXPECT_EQ(dn[1].lo, 3);
    Box zb = Box::integers(100);
    zb.pin(2, 9);
    Domains dz = initial_domains(b, zb);
    ASSERT_TRUE(propagate(b, dz, DomainKind::Integer));
    EXPECT_EQ(dz[1].lo, -3);
    EXPECT_EQ(dz[1].hi, 3);
    auto r = count_solutions(b, zb, {.keep = true});
    EXPECT_EQ(*r.solutions, (std::vector<std::vector<BigInt>>{{-3, 9}, {3, 9}}));

    EnSystem c(3);
    c.add(AtomicEquation::mul(1, 2, 3));
    Box cb = Box::integers(50);
    cb.pin(2, 0);
    Domains dc = initial_domains(c, cb);
    ASSERT_TRUE(propagate(c, dc, DomainKind::Integer));
    EXPECT_TRUE(dc[3].fixed());
    EXPECT_EQ(dc[3].lo, 0);
    EXPECT_EQ(dc[1].lo, -50);
    EXPECT_EQ(dc[1].hi, 50);
}

TEST(Propagate, DivisionMustBeExact) {
    EnSystem s(3);
    s.add(AtomicEquation::mul(1, 2, 3));
    Box box = Box::integers(20);
    box.pin(2, 4);
    box.pin(3, 10);
    Domains d = initial_domains(s, box);
    EXPECT_FALSE(propagate(s, d, DomainKind::Integer));
}

TEST(Propagate, NegativeResultsAreRejectedOverN) {
    EnSystem s(3);
    s.add(AtomicEquation::add(1, 2, 3));
    Box box = Box::naturals(20);
    box.pin(1, 5);
    box.pin(3, 2);
    Domains d = initial_domains(s, box);
    EXPECT_FALSE(propagate(s, d, DomainKind::NonNegative));
}

TEST(Solver, OracleEquivalenceOnRandomSystems) {
    std::mt19937 rng(20240611);
    for (int round = 0; round < 300; ++round) {
        const VarIndex n = 1 + rng() % 4;
        EnSystem s = ensys::testing::random_system(rng, n, 6);
        const long b = rng() % 7;
        for (DomainKind kind : {DomainKind::NonNegative, DomainKind::Integer}) {
            auto expected = naive_solutions(s, kind == DomainKind::NonNegative ? 0 : -b, b);
            auto got = count_solutions(s, box_for(kind, b), {.keep = true});
            ASSERT_EQ(got.count, expected.size()) << to_text(s) << " B=" << b;
            std::sort(expected.begin(), expected.end());
            ASSERT_EQ(*got.solutions, as_big(expected)) << to_text(s);
        }
    }
}

TEST(Solver, ThreadCountDoesNotChangeTheReport) {
    std::mt19937 rng(77);
    for (int round = 0; round < 40; ++round) {
        EnSystem s = ensys::testing::random_system(rng, 3 + rng() % 3, 4);
        for (DomainKind kind : {DomainKind::NonNegative, DomainKind::Integer}) {
            auto one = count_solutions(s, box_for(kind, 6), {.keep = true, .threads = 1});
            auto four = count_solutions(s, box_for(kind, 6), {.keep = true, .threads = 4});
            EXPECT_EQ(one.count, four.count);
            EXPECT_EQ(one.solutions, four.solutions);
            EXPECT_EQ(one.bound_flag, four.bound_flag);
            EXPECT_EQ(one.bound_attained, four.bound_attained);
        }
    }
}

TEST(Solver, CountIsMonotoneInTheBound) {
    std::mt19937 rng(123);
    for (int round = 0; round < 60; ++round) {
        EnSystem s = ensys::testing::random_system(rng, 1 + rng() % 4, 5);
        for (DomainKind kind : {DomainKind::NonNegative, DomainKind::Integer}) {
            BigInt previous = 0;
            for (long b = 0; b <= 6; ++b) {
                BigInt c = count_solutions(s, box_for(kind, b)).count;
                EXPECT_GE(c, previous);
                previous = c;
            }
        }
    }
}

// Narrowing never removes a solution; a reported contradiction means no
// completion of the pins inside the box is a solution.
TEST(Propagate, SoundOnRandomPartialAssignments) {
    std::mt19937 rng(55);
    for (int round = 0; round < 400; ++round) {
        const VarIndex n = 1 + rng() % 4;
        EnSystem s = ensys::testing::random_system(rng, n, 6);
        const long b = 1 + rng() % 6;
        const DomainKind kind = rng() % 2 ? DomainKind::NonNegative : DomainKind::Integer;
        const long lo = kind == DomainKind::NonNegative ? 0 : -b;
        Box box = box_for(kind, b);
        std::map<VarIndex, long> pins;
        for (VarIndex v = 1; v <= n; ++v)
            if (rng() % 3 == 0) {
                long value = lo + static_cast<long>(rng() % static_cast<unsigned long>(b - lo + 1));
                pins[v] = value;
                box.pin(v, value);
            }
        Domains d = initial_domains(s, box);
        const bool consistent = propagate(s, d, kind);
        for (const auto& sol : naive_solutions(s, lo, b)) {
            bool matches = true;
            for (const auto& [v, value] : pins) matches = matches && sol[v - 1] == value;
            if (!matches) continue;
            ASSERT_TRUE(consistent) << to_text(s);
            for (VarIndex v = 1; v <= n; ++v) ASSERT_TRUE(d[v].contains(sol[v - 1])) << to_text(s);
        }
    }
}

TEST(Solver, BudgetExhaustionIsLoud) {
    EnSystem s(4);
    s.add(AtomicEquation::add(1, 2, 3));
    EXPECT_THROW(count_solutions(s, Box::naturals(50), {.node_budget = 10}), BudgetExceeded);
}

TEST(Solver, UndeterminedUnboundedVariableIsAnError) {
    EnSystem s(2);
    s.add(AtomicEquation::unit(1));
    Box box = Box::naturals(3);
    box.unbounded(2, 2);
    EXPECT_THROW(count_solutions(s, box), InvalidArgument);
}

TEST(Solver, UnboundedAuxiliariesFollowTheirDefinitions) {
    // x1 * x1 = x2, x2 * x2 = x3 with only x1 bounded.
    EnSystem s(3);
    s.add(AtomicEquation::mul(1, 1, 2));
    s.add(AtomicEquation::mul(2, 2, 3));
    Box box = Box::integers(5);
    box.unbounded(2, 3);
    auto r = count_solutions(s, box, {.keep = true});
    EXPECT_EQ(r.count, 11);
    EXPECT_EQ(r.solutions->back(), (std::vector<BigInt>{5, 25, 625}));
}

TEST(UniqueExtension, Examples) {
    EnSystem s(2);
    s.add(AtomicEquation::add(1, 1, 1));
    auto r = count_solutions(s, Box::naturals(3), {.keep = true});
    EXPECT_FALSE(verify_unique_extension(s, 1, *r.solutions));
    EXPECT_TRUE(verify_unique_extension(s, 2, *r.solutions));
    EXPECT_TRUE(verify_unique_extension(s, 1, {}));
}

TEST(ConjectureBound, ExactComparisons) {
    EXPECT_TRUE(within_conjecture_bound(16, 3));
    EXPECT_TRUE(equals_conjecture_bound(-16, 3));
    EXPECT_FALSE(within_conjecture_bound(17, 3));
    EXPECT_FALSE(equals_conjecture_bound(15, 3));
    EXPECT_TRUE(within_conjecture_bound(2, 1));
    EXPECT_FALSE(within_conjecture_bound(3, 1));
    EXPECT_TRUE(equals_conjecture_bound(two_pow(1ul << 20), 21));
    EXPECT_FALSE(within_conjecture_bound(two_pow(1ul << 20) + 1, 21));
    EXPECT_TRUE(within_conjecture_bound(pow_ui(10, 1000), 100));
}

TEST(Satisfies, DirectCheck) {
    EnSystem s(3);
    s.add(AtomicEquation::unit(1));
    s.add(AtomicEquation::mul(1, 2, 3));
    EXPECT_TRUE(satisfies(s, {1, 7, 7}));
    EXPECT_FALSE(satisfies(s, {1, 7, 8}));
    EXPECT_FALSE(satisfies(s, {2, 7, 14}));
}
