#pragma once

/**
 * @file arith.hpp
 * @brief Exact integer kernels shared by every other module.
 *
 * All values are arbitrary precision (GMP). Functions are pure and safe to
 * call concurrently.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sqf {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Default trial-division bound used by factorize().
inline constexpr std::uint64_t kDefaultTrialBound = 1'000'000;

/// Below this value is_probable_prime() is a proof (first 13 prime witnesses,
/// Sorenson & Webster 2015).
inline const BigInt kDeterministicPrimeLimit{"3317044064679887385961981"};

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Prime factorization of a positive integer. When `complete` is false,
/// `cofactors` holds composite parts that could not be split within the
/// effort bound; the product of prime powers and cofactors is still `value`.
struct Factorization {
    BigInt value;
    std::vector<PrimePower> factors;
    std::vector<BigInt> cofactors;
    bool complete = true;

    BigInt recompose() const;
};

BigInt isqrt(const BigInt& v);

/// Returns the root k >= 0 when v == k*k.
std::optional<BigInt> exact_sqrt(const BigInt& v);
bool is_perfect_square(const BigInt& v);

/// v = d * c^2 with d squarefree.
std::pair<BigInt, BigInt> squarefree_part(const BigInt& v);

/// v = r * s^4 with r fourth-power free.
std::pair<BigInt, BigInt> fourth_power_free_part(const BigInt& v);

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi_symbol(const BigInt& a, const BigInt& n);

/// Strong probable-prime test with the fixed witness set {2,3,...,41}.
/// Deterministic for v < kDeterministicPrimeLimit.
bool is_probable_prime(const BigInt& v);

Factorization factorize(const BigInt& v, std::uint64_t effort_bound = kDefaultTrialBound);

/// Primes in [lo, hi), ascending. Segmented; memory is O(sqrt(hi) + (hi-lo)).
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

BigInt mod_floor(const BigInt& a, const BigInt& m);

BigInt parse_bigint(const std::string& text);
std::string to_decimal(const BigInt& v);

}  // namespace sqf
