#pragma once

/**
 * @file certify.hpp
 * @brief Uniqueness certificates for simplest quartic fields.
 *
 * A "cohn-nonresidue" certificate (n, d, t, r0, p) for n == 2 (mod 4) states:
 *   - n^2 + 16 = d y^2 and eps = (n + y sqrt d)/4 is the fundamental unit,
 *     of trace t;
 *   - r0 is the least odd index with d | u_r0;
 *   - p == 1 (mod 4) is prime, p | v_r0, and d u_r0 is a non-residue mod p.
 * Together these rule out any m != n with K_m = K_n.
 *
 * A "petho-parity" certificate covers n = 4 only. It relies on Petho's
 * theorem (u_1 and u_7 are the only squares of the t = 2 sequence) as an
 * external axiom and shows the remaining d-square case is impossible by
 * parity. Its conclusion is that K_l = K_4 only for l in {4, 956}.
 *
 * File format: one JSON object, keys in the order
 *   version (integer 1), kind, n, d, t, r0, p
 * with every integer except version written as a base-10 string, no
 * whitespace, UTF-8, terminated by a single newline.
 */

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqf/arith.hpp"
#include "sqf/sequences.hpp"

namespace sqf {

inline constexpr std::uint64_t kDefaultPrimeBound = 100'000'000;
inline constexpr unsigned long kDefaultIndexCap = 10'000;

enum class CertKind { CohnNonresidue, PethoParity };

std::string to_string(CertKind k);

struct UniquenessCertificate {
    int version = 1;
    CertKind kind = CertKind::CohnNonresidue;
    BigInt n;
    BigInt d;
    BigInt t;
    BigInt r0;
    BigInt p;

    bool operator==(const UniquenessCertificate&) const = default;
};

class CertificateFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical encoding, newline included.
std::string to_json(const UniquenessCertificate& cert);
/// Accepts only the canonical encoding; throws CertificateFormatError.
UniquenessCertificate certificate_from_json(const std::string& text);

/// Least odd j <= index_cap with d | u_j, by iteration modulo d.
std::optional<unsigned long> find_r0(const LucasParams& params, const BigInt& d, unsigned long index_cap);

enum class IssueFailure { None, Hypothesis, UnitNotFundamental, NoR0WithinCap, NoSuitablePrime };

std::string to_string(IssueFailure f);

struct IssueResult {
    std::optional<UniquenessCertificate> certificate;
    IssueFailure failure = IssueFailure::None;
    std::string reason;
    std::optional<unsigned long> r0;
    /// Prime divisors of v_r0 found during the search, ascending.
    std::vector<BigInt> divisors_seen;

    bool ok() const { return certificate.has_value(); }
};

/// The fixed n = 4 certificate.
UniquenessCertificate petho_certificate();

/// Searches primes p == 1 (mod 4), p <= prime_bound, dividing v_r0; returns
/// the smallest one satisfying the non-residue condition. Workers scan
/// disjoint prime segments; the result does not depend on their number.
IssueResult issue_certificate(const BigInt& n, std::uint64_t prime_bound = kDefaultPrimeBound,
                              unsigned long index_cap = kDefaultIndexCap, unsigned workers = 1);

struct CheckLine {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyResult {
    bool accepted = false;
    std::vector<CheckLine> transcript;
    std::string conclusion;
};

VerifyResult verify_certificate(const UniquenessCertificate& cert);

}  // namespace sqf
