#pragma once

/**
 * @file curves.hpp
 * @brief Quartic curves C1, C2, Weierstrass curves E1, E2, E3 and the maps
 *        between them, over exact rationals.
 *
 *   C1: y^2 = (t^2+4) x^4 - 4            E1: Y^2 = X^3 - 4 (t^2+4) X
 *   C2: y^2 = d^2 (t^2+4) x^4 - 4        E2: Y^2 = X^3 - 4 d^2 (t^2+4) X
 *                                         E3: Y^2 = X^3 - 4 (t^2+4)^3 X
 *
 * phi_i : C_i -> E_i has degree 2; psi : E2 -> E3 is the isomorphism
 * (X, Y) -> (x0^2 X, x0^3 Y) where t^2 + 4 = x0^2 d.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sqf/arith.hpp"
#include "sqf/sequences.hpp"

namespace sqf {

enum class CurveKind { C1, C2, E1, E2, E3 };

std::string to_string(CurveKind k);

/// y^2 = A x^4 + B with B = -4.
struct QuarticCurveSpec {
    CurveKind kind;
    BigInt t;
    BigInt d;  // 1 for C1
    BigInt A;
    BigInt B;

    static QuarticCurveSpec c1(const BigInt& t);
    /// Requires t^2 + 4 = d z^2 for an integer z.
    static QuarticCurveSpec c2(const BigInt& t, const BigInt& d);
};

/// Y^2 = X^3 + a4 X.
struct WeierstrassCurveSpec {
    CurveKind kind;
    BigInt t;
    BigInt d;
    BigInt a4;

    static WeierstrassCurveSpec e1(const BigInt& t);
    static WeierstrassCurveSpec e2(const BigInt& t, const BigInt& d);
    static WeierstrassCurveSpec e3(const BigInt& t);
};

struct RationalPoint {
    bool infinity = false;
    Rational x;
    Rational y;

    static RationalPoint at_infinity() { return {true, 0, 0}; }
    static RationalPoint affine(Rational x, Rational y) { return {false, std::move(x), std::move(y)}; }

    bool operator==(const RationalPoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
    bool is_integral() const;
    std::string to_string() const;
};

bool on_curve(const QuarticCurveSpec& spec, const RationalPoint& pt);
bool on_curve(const WeierstrassCurveSpec& spec, const RationalPoint& pt);

/// phi_1 (which = 1) or phi_2 (which = 2). The image is checked on E_which.
RationalPoint phi_map(int which, const BigInt& t, const BigInt& d, const RationalPoint& pt);

/// psi : E2 -> E3. Throws std::domain_error unless t^2 + 4 = x0^2 d.
RationalPoint psi_map(const BigInt& t, const BigInt& d, const RationalPoint& pt);

RationalPoint ec_neg(const RationalPoint& p);
RationalPoint ec_add(const WeierstrassCurveSpec& spec, const RationalPoint& p, const RationalPoint& q);
RationalPoint ec_mul(const WeierstrassCurveSpec& spec, const RationalPoint& p, unsigned long k);

/// 4 d^2 (t^2+4) is not a perfect square.
bool torsion_preconditions(const BigInt& t, const BigInt& d);

int root_number_E1(const BigInt& t);
int root_number_E3(const BigInt& t);

struct BsDerivation {
    BigInt t;
    BigInt r;
    BigInt s;
    bool r_is_1_mod_16 = false;
    bool no_prime_3_mod_4 = false;
    bool isomorphism_ok = false;  // E1 ~ Y^2 = X^3 - r X via (X, Y) -> (X/(2s)^2, Y/(2s)^3)
    int w_infinity = -1;
    int w_2 = -1;
    int w_odd = 1;  // product over odd p | r
    int global = 0;
    bool matches_case_formula = false;
    std::vector<std::string> discrepancies;

    bool passed() const { return discrepancies.empty(); }
};

/// Bookkeeping behind w(E1) = +1 for t == 0 (mod 8).
BsDerivation bs_derivation_check(const BigInt& t);

/// Integer points (x, y), 0 <= x <= x_bound, y >= 0, sorted by x.
std::vector<std::pair<BigInt, BigInt>> integer_points_search(const QuarticCurveSpec& spec, unsigned long x_bound,
                                                             unsigned workers = 1);

struct CorrespondenceEntry {
    unsigned long j;
    SquareClass cls;
    CurveKind curve;
    BigInt x;
    BigInt y;
};

struct BijectionReport {
    BigInt t;
    BigInt d;
    BigInt z;
    bool omega_fundamental = false;
    std::string claim;  // "bijection" or "injection"
    std::vector<CorrespondenceEntry> from_sequence;
    std::vector<std::pair<BigInt, BigInt>> c1_points;
    std::vector<std::pair<BigInt, BigInt>> c2_points;
    /// Curve points traced back to omega^j through (y + x^2 sqrt(A))/2.
    std::vector<CorrespondenceEntry> from_curves;
    std::vector<std::string> mismatches;
    bool exact_match = false;
};

/// Pairs odd-index u_j that are squares (resp. d-squares) with points on C1
/// (resp. C2), and compares against brute-force point lists with x <= x_bound.
/// d must be the squarefree part of t^2 + 4.
BijectionReport square_point_bijection(const BigInt& t, const BigInt& d, unsigned long max_index,
                                       unsigned long x_bound);

}  // namespace sqf
