#include "lcmlab/primes.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <random>

using namespace lcmlab;

TEST(Sieve, SmallPrimes) {
    EXPECT_EQ(primes_up_to(1).size(), 0u);
    EXPECT_EQ(primes_up_to(2), (std::vector<std::uint64_t>{2}));
    EXPECT_EQ(primes_up_to(30), (std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_EQ(primes_up_to(100000).size(), 9592u);
}

TEST(PerfectPower, DetectsMaximalExponent) {
    auto pp = perfect_power(BigInt(1) << 12);
    ASSERT_TRUE(pp);
    EXPECT_EQ(pp->first, 2);
    EXPECT_EQ(pp->second, 12u);
    EXPECT_FALSE(perfect_power(BigInt(12)));
    pp = perfect_power(BigInt("10000000000000000000000000000000000000000"));
    ASSERT_TRUE(pp);
    EXPECT_EQ(pp->second, 40u);
}

TEST(Factorize, MatchesTrialDivisionOnRandomValues) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t v = (rng() >> 24) + 2;
        const auto expected = oracle::trial_division(v);
        const auto got = factorize(from_u64(v));
        ASSERT_EQ(got.size(), expected.size()) << v;
        std::size_t k = 0;
        for (const auto& [p, e] : got) {
            EXPECT_EQ(to_u64(p), expected[k].first);
            EXPECT_EQ(e, expected[k].second);
            ++k;
        }
    }
}

TEST(Factorize, SemiprimeOfTwo32BitPrimes) {
    const BigInt p("4294967291"), q("4294967279");
    const auto f = factorize(p * q * p);
    ASSERT_EQ(f.size(), 2u);
    EXPECT_EQ(f.at(p), 2u);
    EXPECT_EQ(f.at(q), 1u);
}

TEST(Factorize, BudgetExhaustionThrows) {
    const BigInt p("1000000000000000003"), q("1000000000000000009");
    EXPECT_THROW(factorize(p * q, RhoSchedule{1000, 0}), FactoringError);
}

TEST(Factorize, DeterministicUnderDifferentSeeds) {
    const BigInt n = BigInt("600851475143") * BigInt("1000003");
    EXPECT_EQ(factorize(n, {1u << 24, 1}), factorize(n, {1u << 24, 99}));
}

TEST(Divisors, OfTwelve) {
    EXPECT_EQ(divisors(BigInt(-12)), (std::vector<BigInt>{1, 2, 3, 4, 6, 12}));
}
