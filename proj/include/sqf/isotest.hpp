#pragma once

/**
 * @file isotest.hpp
 * @brief Deciding K_m = K_n for the simplest quartic fields.
 *
 * K_n is the splitting field of f_n(x) = x^4 - n x^3 - 6 x^2 + n x + 1.
 * Its unique quadratic subfield is Q(sqrt d) where n^2 + 16 = d y^2, and
 * K_m = K_n exactly when both indices share d and
 *
 *     alpha = x y d (x sqrt d + m)(y sqrt d + n)
 *
 * is a square in Q(sqrt d). Indices are positive integers other than 3.
 */

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqf/arith.hpp"
#include "sqf/quadfield.hpp"

namespace sqf {

struct QuadInvariant {
    BigInt n;
    BigInt d;
    BigInt y;
};

/// Throws std::invalid_argument for n < 1 or n == 3.
void validate_index(const BigInt& n);

QuadInvariant quad_invariant(const BigInt& n);

/// f_n(x) = x^4 - n x^3 - 6 x^2 + n x + 1, coefficients from x^4 down.
struct QuarticPolynomial {
    BigInt n;
    std::array<BigInt, 5> coeffs;

    explicit QuarticPolynomial(const BigInt& n);
};

enum class IsoStage {
    Square,       // alpha is a square: fields coincide
    DifferentD,   // quadratic subfields differ
    NonSquare,    // same d, alpha not a square
};

std::string to_string(IsoStage s);

struct IsoResult {
    bool equal = false;
    IsoStage stage = IsoStage::DifferentD;
    QuadInvariant inv_m;
    QuadInvariant inv_n;
    std::optional<QuadInt> alpha;
    /// witness^2 == alpha when equal.
    std::optional<QuadInt> witness;
};

IsoResult fields_equal(const BigInt& m, const BigInt& n);

/// Checks in Z[x]/(f_n) that rho -> (rho-1)/(rho+1) permutes the roots of f_n
/// and that the three printed Mobius maps compose to a cyclic group of order 4.
bool galois_orbit_check(const BigInt& n);

enum class HypothesisCase { A, B, None };

std::string to_string(HypothesisCase c);

struct HypothesisReport {
    BigInt n;
    HypothesisCase which = HypothesisCase::None;
    BigInt d;
    BigInt y;
    BigInt trace;
    bool trace_odd = false;
    int unit_norm = 0;
    QuadInt unit;
};

HypothesisReport theorem_hypotheses(const BigInt& n);

/// All pairs m < n <= limit with K_m = K_n, sorted. Deterministic for any
/// worker count.
std::vector<std::pair<unsigned long, unsigned long>> duplicate_search(unsigned long limit, unsigned workers = 1);

}  // namespace sqf
