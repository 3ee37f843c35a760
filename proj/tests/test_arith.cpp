#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>

#include "sqf/arith.hpp"

using sqf::BigInt;

namespace {

// Oracles: plain 64-bit loops, independent of GMP helpers.
bool slow_is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t p = 2; p * p <= v; ++p)
        if (v % p == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> slow_factor(std::uint64_t v) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        unsigned e = 0;
        while (v % p == 0) {
            v /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

// Euler's criterion for an odd prime p.
int euler_criterion(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) return 0;
    unsigned __int128 result = 1, base = a;
    for (std::uint64_t e = (p - 1) / 2; e; e >>= 1) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
    }
    return result == 1 ? 1 : -1;
}

BigInt random_big(std::mt19937_64& rng, unsigned bits) {
    BigInt v = 0;
    for (unsigned i = 0; i < bits; i += 32) v = (v << 32) + static_cast<unsigned long>(rng() & 0xffffffffu);
    return v >> (bits % 32 ? 32 - bits % 32 : 0);
}

bool squarefree_by_trial(const BigInt& v) {
    for (unsigned long p = 2; BigInt(p * p) <= v; ++p)
        if (v % (p * p) == 0) return false;
    return true;
}

}  // namespace

TEST_CASE("isqrt") {
    CHECK(sqf::isqrt(0) == 0);
    CHECK(sqf::isqrt(17) == 4);
    CHECK(676 * 676 == 456976);
    CHECK(sqf::isqrt(456976) == 676);
    CHECK_THROWS_AS(sqf::isqrt(-1), std::domain_error);

    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const BigInt v = random_big(rng, 1 + static_cast<unsigned>(rng() % 300));
        const BigInt r = sqf::isqrt(v);
        CHECK(r * r <= v);
        CHECK((r + 1) * (r + 1) > v);
    }
}

TEST_CASE("is_perfect_square") {
    CHECK(sqf::exact_sqrt(169) == BigInt(13));
    CHECK_FALSE(sqf::is_perfect_square(5));
    CHECK_FALSE(sqf::is_perfect_square(-4));

    // P_3(3) * P_6(3) from the recurrence P_{k+2} = 3 P_{k+1} + P_k.
    std::int64_t p[7] = {0, 1};
    for (int k = 2; k <= 6; ++k) p[k] = 3 * p[k - 1] + p[k - 2];
    REQUIRE(p[3] * p[6] == 3600);
    CHECK(sqf::exact_sqrt(BigInt(static_cast<long>(p[3] * p[6]))) == BigInt(60));
}

TEST_CASE("squarefree_part") {
    CHECK(sqf::squarefree_part(3380) == std::pair<BigInt, BigInt>(5, 26));
    CHECK(sqf::squarefree_part(20) == std::pair<BigInt, BigInt>(5, 2));
    CHECK(sqf::squarefree_part(1) == std::pair<BigInt, BigInt>(1, 1));
    CHECK_THROWS_AS(sqf::squarefree_part(0), std::domain_error);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const BigInt v = BigInt(static_cast<unsigned long>(rng() % 1'000'000'000)) + 1;
        const auto [d, c] = sqf::squarefree_part(v);
        CHECK(d * c * c == v);
        CHECK(squarefree_by_trial(d));
    }
}

TEST_CASE("fourth_power_free_part") {
    CHECK(sqf::fourth_power_free_part(17) == std::pair<BigInt, BigInt>(17, 1));
    CHECK(sqf::fourth_power_free_part(16) == std::pair<BigInt, BigInt>(1, 2));
    CHECK(sqf::fourth_power_free_part(48) == std::pair<BigInt, BigInt>(3, 2));
    CHECK_THROWS_AS(sqf::fourth_power_free_part(-3), std::domain_error);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        // Bias towards high prime powers.
        BigInt v = 1;
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
            BigInt pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), p, static_cast<unsigned long>(rng() % 11));
            v *= pw;
        }
        v *= static_cast<unsigned long>(rng() % 1000 + 1);
        const auto [r, s] = sqf::fourth_power_free_part(v);
        CHECK(r * s * s * s * s == v);
        for (const auto& [p, e] : sqf::factorize(r).factors) CHECK(e < 4);
    }
}

TEST_CASE("jacobi_symbol") {
    CHECK(sqf::jacobi_symbol(4, 7) == 1);
    CHECK(sqf::jacobi_symbol(0, 5) == 0);

    const BigInt a = BigInt(13) * 1543321 % 53;
    CHECK(euler_criterion(a.get_ui(), 53) == -1);
    CHECK(sqf::jacobi_symbol(a, 53) == -1);

    CHECK_THROWS_AS(sqf::jacobi_symbol(3, 8), std::domain_error);
    CHECK_THROWS_AS(sqf::jacobi_symbol(3, -7), std::domain_error);
    CHECK_THROWS_AS(sqf::jacobi_symbol(3, 0), std::domain_error);

    std::mt19937_64 rng(17);
    const std::uint64_t primes[] = {3, 5, 7, 53, 101, 7919, 1'000'003};
    for (std::uint64_t p : primes) {
        for (int i = 0; i < 50; ++i) {
            const std::uint64_t a1 = rng() % 100000, b1 = rng() % 100000;
            const BigInt bp{static_cast<unsigned long>(p)};
            CHECK(sqf::jacobi_symbol(a1, bp) == euler_criterion(a1, p));
            CHECK(sqf::jacobi_symbol(BigInt(a1) * b1, bp) ==
                  sqf::jacobi_symbol(a1, bp) * sqf::jacobi_symbol(b1, bp));
            if (a1 % p) CHECK(sqf::jacobi_symbol(BigInt(a1) * a1, bp) == 1);
        }
    }
}

TEST_CASE("is_probable_prime") {
    CHECK(sqf::is_probable_prime(53));
    CHECK_FALSE(sqf::is_probable_prime(91));
    CHECK(sqf::is_probable_prime(BigInt("408359633417260832077")));
    CHECK(BigInt("408359633417260832077") < sqf::kDeterministicPrimeLimit);
    CHECK_FALSE(sqf::is_probable_prime(0));
    CHECK_FALSE(sqf::is_probable_prime(1));
    // Carmichael numbers and strong pseudoprimes to small bases.
    for (const char* v : {"561", "41041", "2047", "3215031751", "3825123056546413051"})
        CHECK_FALSE(sqf::is_probable_prime(BigInt(v)));
    for (std::uint64_t v = 0; v < 20000; ++v) CHECK(sqf::is_probable_prime(static_cast<unsigned long>(v)) == slow_is_prime(v));
}

TEST_CASE("factorize") {
    auto expect = [](unsigned long v, std::vector<sqf::PrimePower> want) {
        const auto f = sqf::factorize(v);
        CHECK(f.complete);
        CHECK(f.factors == want);
    };
    expect(3380, {{2, 2}, {5, 1}, {13, 2}});
    expect(53, {{53, 1}});
    expect(20, {{2, 2}, {5, 1}});
    expect(1, {});

    // Against trial division.
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        const std::uint64_t v = rng() % 10'000'000'000ull + 1;
        const auto f = sqf::factorize(static_cast<unsigned long>(v));
        const auto want = slow_factor(v);
        REQUIRE(f.factors.size() == want.size());
        for (std::size_t k = 0; k < want.size(); ++k) {
            CHECK(f.factors[k].prime == static_cast<unsigned long>(want[k].first));
            CHECK(f.factors[k].exponent == want[k].second);
        }
    }
}

TEST_CASE("factorize beyond trial division") {
    // Two 40-bit primes: needs the rho stage.
    const BigInt p("1099511627791"), q("1099511628401");
    REQUIRE(sqf::is_probable_prime(p));
    REQUIRE(sqf::is_probable_prime(q));
    const auto f = sqf::factorize(p * q * 12 * p);
    CHECK(f.complete);
    CHECK(f.recompose() == p * q * 12 * p);
    for (const auto& pp : f.factors) CHECK(sqf::is_probable_prime(pp.prime));
    CHECK(f.factors.back() == sqf::PrimePower{q, 1});

    // Product of two ~100-bit primes cannot be split within a tiny budget.
    BigInt a("1267650600228229401496703205653"), b("1267650600228229401496703205707");
    REQUIRE(sqf::is_probable_prime(a));
    REQUIRE(sqf::is_probable_prime(b));
    const auto g = sqf::factorize(a * b * 6, 100);
    CHECK_FALSE(g.complete);
    CHECK(g.recompose() == a * b * 6);
    CHECK(g.cofactors == std::vector<BigInt>{a * b});
}

TEST_CASE("primes_in_range matches a naive sieve") {
    const auto ps = sqf::primes_in_range(1000, 5000);
    std::vector<std::uint64_t> want;
    for (std::uint64_t v = 1000; v < 5000; ++v)
        if (slow_is_prime(v)) want.push_back(v);
    CHECK(ps == want);
    CHECK(sqf::primes_in_range(0, 10) == std::vector<std::uint64_t>{2, 3, 5, 7});
    CHECK(sqf::primes_in_range(5, 5).empty());
}

TEST_CASE("parse_bigint") {
    CHECK(sqf::parse_bigint("408359633417260832077") == BigInt("408359633417260832077"));
    CHECK(sqf::parse_bigint("-12") == -12);
    CHECK_THROWS_AS(sqf::parse_bigint("12a"), std::invalid_argument);
    CHECK_THROWS_AS(sqf::parse_bigint(""), std::invalid_argument);
    CHECK_THROWS_AS(sqf::parse_bigint("1e5"), std::invalid_argument);
}
