#include "lcmlab/irreducibility.hpp"
#include "lcmlab/polynomial.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lcmlab;

namespace {
Polynomial P(const char* s) { return Polynomial::parse(s); }
}  // namespace

TEST(Parse, SymbolicAndCoefficientListAgree) {
    EXPECT_EQ(P("X^4-2"), P("-2,0,0,0,1"));
    EXPECT_EQ(P("x^2 + x + 1"), P("1,1,1"));
    EXPECT_EQ(P("X^6-3*X^2+5X-7"), P("-7,5,-3,0,0,0,1"));
    EXPECT_EQ(P("X^3+X^3-X^3-2").to_string(), "X^3-2");
    EXPECT_EQ(P("X^2-X").to_string(), "X^2-X");
}

TEST(Parse, RejectsNonMonicLowDegreeAndGarbage) {
    EXPECT_THROW(P("2X^2+1"), PolynomialError);
    EXPECT_THROW(P("X+1"), PolynomialError);
    EXPECT_THROW(P("5"), PolynomialError);
    EXPECT_THROW(P("X^2++1"), PolynomialError);
    EXPECT_THROW(P("X^2+y"), PolynomialError);
    EXPECT_THROW(P("1,,1"), PolynomialError);
    EXPECT_THROW(P("X^2-X^2+X"), PolynomialError);
}

TEST(Evaluate, Examples) {
    EXPECT_EQ(evaluate(P("X^2+1"), 3), 10);
    EXPECT_EQ(evaluate(P("X^4-2"), 2), 14);
    EXPECT_EQ(evaluate(P("X^4-2"), 1), -1);
}

TEST(Evaluate, IsARingHomomorphism) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-20, 20), deg(2, 6), arg(-50, 50);
    for (int trial = 0; trial < 200; ++trial) {
        const int df = deg(rng) + 1;
        const int dg = std::uniform_int_distribution<int>(2, df - 1)(rng);  // df > dg keeps f+g monic
        Coeffs fc(df + 1), gc(dg + 1);
        for (auto& c : fc) c = coef(rng);
        for (auto& c : gc) c = coef(rng);
        fc.back() = 1;
        gc.back() = 1;
        const Polynomial f(fc), g(gc);
        const Polynomial sum(poly::add(f.coeffs(), g.coeffs())), prod(poly::mul(f.coeffs(), g.coeffs()));
        const BigInt n = arg(rng);
        EXPECT_EQ(evaluate(sum, n), evaluate(f, n) + evaluate(g, n));
        EXPECT_EQ(evaluate(prod, n), evaluate(f, n) * evaluate(g, n));
    }
}

TEST(IsEven, Examples) {
    EXPECT_TRUE(is_even(P("X^4-2")));
    EXPECT_FALSE(is_even(P("X^2+X+1")));
    EXPECT_TRUE(is_even(P("X^6-2")));
}

TEST(IsEven, ImpliesSymmetricValues) {
    for (const char* s : {"X^4-2", "X^6+3X^4-X^2+9", "X^8+1", "X^2"}) {
        const auto f = P(s);
        ASSERT_TRUE(is_even(f));
        for (long n = -30; n <= 30; ++n) EXPECT_EQ(evaluate(f, n), evaluate(f, -n));
    }
}

TEST(IsSquarefree, Examples) {
    EXPECT_TRUE(is_squarefree(P("X^4-2")));
    EXPECT_FALSE(is_squarefree(P("X^4+2X^2+1")));  // (X^2+1)^2
    EXPECT_FALSE(is_squarefree(P("X^2")));
    EXPECT_TRUE(is_squarefree(P("X^2-1")));
}

TEST(Irreducibility, Examples) {
    using Status = IrreducibilityVerdict::Status;
    auto v = irreducibility_witness(P("X^2+1"), 100);
    EXPECT_EQ(v.status, Status::Irreducible);
    EXPECT_EQ(v.witness_prime, 3u);

    v = irreducibility_witness(P("X^2-1"), 100);
    ASSERT_EQ(v.status, Status::Reducible);
    EXPECT_EQ(poly::to_string(*v.witness_factor), "X-1");

    // reducible modulo every prime, irreducible over Q
    v = irreducibility_witness(P("X^4+1"), 1'000'000);
    EXPECT_EQ(v.status, Status::Unknown);
}

TEST(Irreducibility, ReducibleWitnessDividesExactly) {
    using Status = IrreducibilityVerdict::Status;
    for (const char* s : {"X^6+1", "X^4+4", "X^4+2X^2+1", "X^2", "X^4-5X^2+4"}) {
        const auto f = P(s);
        const auto v = irreducibility_witness(f, 200);
        ASSERT_EQ(v.status, Status::Reducible) << s;
        const auto [q, exact] = poly::divide_monic(f.coeffs(), *v.witness_factor);
        EXPECT_TRUE(exact) << s << " / " << poly::to_string(*v.witness_factor);
        EXPECT_GT(poly::degree(q), 0);
    }
}

TEST(Irreducibility, IrreducibleHasNoIntegerRoot) {
    using Status = IrreducibilityVerdict::Status;
    for (const char* s : {"X^4-2", "X^6-3", "X^3-2", "X^2+X+1", "X^5-X-1"}) {
        const auto f = P(s);
        const auto v = irreducibility_witness(f, 1000);
        ASSERT_EQ(v.status, Status::Irreducible) << s;
        for (long n = -10000; n <= 10000; ++n) ASSERT_NE(evaluate(f, n), 0) << s << " at " << n;
    }
}

TEST(Irreducibility, RejectsTinyBudget) { EXPECT_THROW(irreducibility_witness(P("X^2+1"), 1), std::invalid_argument); }
