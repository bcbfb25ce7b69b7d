#include "support.hpp"

#include "ensys/atomic_system.hpp"
#include "ensys/errors.hpp"
#include "ensys/generators.hpp"
#include "ensys/json_io.hpp"

#include <gtest/gtest.h>

using namespace ensys;

TEST(AtomicEquation, TextForms) {
    EXPECT_EQ(AtomicEquation::unit(3).to_string(), "x3 = 1");
    EXPECT_EQ(AtomicEquation::add(1, 2, 4).to_string(), "x1 + x2 = x4");
    EXPECT_EQ(AtomicEquation::mul(1, 1, 5).to_string(), "x1 * x1 = x5");
    EXPECT_EQ(AtomicEquation::add(2, 1, 3).commutative_key(), AtomicEquation::add(1, 2, 3));
    EXPECT_EQ(AtomicEquation::mul(4, 2, 1).max_index(), 4u);
}

TEST(FullEn, SmallestCase) {
    EnSystem e = full_En(1);
    EXPECT_EQ(e.n(), 1u);
    EXPECT_EQ(e.size(), 3u);
    EXPECT_TRUE(e.contains(AtomicEquation::unit(1)));
    EXPECT_TRUE(e.contains(AtomicEquation::add(1, 1, 1)));
    EXPECT_TRUE(e.contains(AtomicEquation::mul(1, 1, 1)));
}

TEST(FullEn, SizeIsNPlusTwoNCubed) {
    for (VarIndex n = 1; n <= 6; ++n) EXPECT_EQ(full_En(n).size(), n + 2 * n * n * n) << n;
    EXPECT_THROW(full_En(0), InvalidArgument);
}

TEST(EnSystem, RejectsExactDuplicatesOnly) {
    EnSystem s(3);
    EXPECT_TRUE(s.add(AtomicEquation::add(1, 2, 3)));
    EXPECT_FALSE(s.add(AtomicEquation::add(1, 2, 3)));
    EXPECT_TRUE(s.add(AtomicEquation::add(2, 1, 3)));
    EXPECT_EQ(s.size(), 2u);
}

TEST(Validate, WellFormedGeneratorOutputIsClean) {
    EXPECT_TRUE(validate(gen_theorem2(5, 7).system).empty());
    EXPECT_FALSE(has_errors(validate(full_En(2))));
}

TEST(Validate, RangeError) {
    EnSystem s(3);
    s.add(AtomicEquation::add(1, 2, 3));
    s.add(AtomicEquation::add(1, 1, 4));
    auto d = validate(s);
    ASSERT_EQ(std::count_if(d.begin(), d.end(), [](const Diagnostic& x) { return x.code == "index-range"; }), 1);
    EXPECT_TRUE(has_errors(d));
}

TEST(Validate, CommutativeDuplicateWarning) {
    EnSystem s(3);
    s.add(AtomicEquation::add(1, 2, 3));
    s.add(AtomicEquation::add(2, 1, 3));
    auto d = validate(s);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].code, "commutative-duplicate");
    EXPECT_EQ(d[0].severity, Diagnostic::Severity::Warning);
    EXPECT_FALSE(has_errors(d));
}

TEST(Validate, UnusedVariableWarning) {
    EnSystem s(3);
    s.add(AtomicEquation::unit(1));
    auto d = validate(s);
    EXPECT_EQ(std::count_if(d.begin(), d.end(), [](const Diagnostic& x) { return x.code == "unused-variable"; }), 2);
}

TEST(TextFormat, FullEnRoundTrip) {
    EnSystem e = full_En(2);
    EXPECT_EQ(from_text(to_text(e)), e);
}

TEST(TextFormat, ObservationKernel) {
    EnSystem s = from_text("x1 + x1 = x2\nx1 * x1 = x2");
    EXPECT_EQ(s.n(), 2u);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.equations()[0], AtomicEquation::add(1, 1, 2));
    EXPECT_EQ(s.equations()[1], AtomicEquation::mul(1, 1, 2));
    EXPECT_EQ(s, gen_observation(2).system);
}

TEST(TextFormat, MalformedLineReportsLine) {
    try {
        from_text("x1 ++ x2");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
    try {
        from_text("# header\nx1 = 1\nx1 * = x2\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(from_text("x0 = 1"), ParseError);
    EXPECT_THROW(from_text("x1 = 2"), ParseError);
    EXPECT_THROW(from_text("@vars 1\nx1 + x1 = x2"), ParseError);
}

TEST(TextFormat, CommentsLabelsAndVarsDirective) {
    EnSystem s = from_text("# demo\n@vars 4\n@label 2 two words\nx1 = 1  # trailing\nx1 + x1 = x2\n");
    EXPECT_EQ(s.n(), 4u);
    EXPECT_EQ(s.labels().at(2), "two words");
    EXPECT_EQ(s.size(), 2u);
    EXPECT_EQ(from_text(to_text(s)), s);
}

TEST(Serialization, RandomRoundTrips) {
    std::mt19937 rng(31);
    for (int round = 0; round < 200; ++round) {
        EnSystem s = ensys::testing::random_system(rng, 1 + rng() % 7, 12);
        if (rng() % 3 == 0) s.set_label(1, "lbl" + std::to_string(round));
        EXPECT_EQ(from_text(to_text(s)), s);
        EXPECT_EQ(system_from_json(to_json(s)), s);
    }
}

TEST(Json, SystemShape) {
    EnSystem s(2);
    s.add(AtomicEquation::unit(1));
    s.add(AtomicEquation::add(1, 1, 2));
    s.set_label(2, "two");
    const std::string doc = to_json(s);
    EXPECT_NE(doc.find("\"kind\": \"unit\""), std::string::npos);
    EXPECT_NE(doc.find("\"kind\": \"add\""), std::string::npos);
    EXPECT_NE(doc.find("\"2\": \"two\""), std::string::npos);
    EXPECT_THROW(system_from_json("{\"n\": 2, \"equations\": [{\"kind\": \"pow\", \"i\": 1}]}"), ParseError);
    EXPECT_THROW(system_from_json("{\"n\": 2"), ParseError);
    EXPECT_THROW(system_from_json("{\"equations\": []}"), ParseError);
}
