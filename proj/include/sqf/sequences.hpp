#pragma once

// Lucas-type sequences attached to a unit of trace t and norm -1:
//   u_0 = 0, u_1 = 1, u_{j+2} = t u_{j+1} + u_j
//   v_0 = 2, v_1 = t, v_{j+2} = t v_{j+1} + v_j

#include <string>
#include <utility>
#include <vector>

#include "sqf/arith.hpp"
#include "sqf/quadfield.hpp"

namespace sqf {

class LucasParams {
public:
    explicit LucasParams(BigInt t);

    const BigInt& t() const noexcept { return t_; }
    /// t^2 + 4 = d * z^2, d squarefree.
    const BigInt& d() const noexcept { return d_; }
    const BigInt& z() const noexcept { return z_; }
    /// omega = (t + sqrt(t^2+4))/2 in Q(sqrt d).
    const QuadInt& omega() const noexcept { return omega_; }

private:
    BigInt t_;
    BigInt d_;
    BigInt z_;
    QuadInt omega_;
};

struct SequencePair {
    unsigned long j = 0;
    BigInt u;
    BigInt v;
};

BigInt u_term(const LucasParams& params, unsigned long j);
BigInt v_term(const LucasParams& params, unsigned long j);
SequencePair uv_term(const LucasParams& params, unsigned long j);

/// (u_0, v_0), ..., (u_count-1, v_count-1).
std::vector<SequencePair> uv_terms(const LucasParams& params, unsigned long count);

/// (u_j mod M, v_j mod M) by powering the companion matrix [[t,1],[1,0]].
std::pair<BigInt, BigInt> uv_mod(const BigInt& t, const BigInt& j, const BigInt& modulus);
inline std::pair<BigInt, BigInt> uv_mod(const LucasParams& params, const BigInt& j, const BigInt& modulus) {
    return uv_mod(params.t(), j, modulus);
}

enum class SquareClass { Square, DSquare, Neither };

std::string to_string(SquareClass c);

/// Square, d times a square, or neither. d must be squarefree and >= 2.
SquareClass classify_square(const BigInt& value, const BigInt& d);

/// One of the exceptional solutions of y^2 = P_r(a) P_s(a), 0 < r < s, a odd.
struct CohnException {
    unsigned r;
    unsigned s;
    /// Literal a, or 0 for the family "a = b^2, b odd".
    unsigned a;

    bool odd_square_family() const noexcept { return a == 0; }
    std::string describe() const;
};

const std::vector<CohnException>& cohn_exceptions();
bool is_cohn_exception(unsigned r, unsigned s, const BigInt& a);

struct SquareTerm {
    unsigned long j;
    SquareClass cls;
    BigInt u;

    bool operator==(const SquareTerm&) const = default;
};

/// All odd j <= max_index with u_j a square or d times a square.
std::vector<SquareTerm> find_square_terms(const LucasParams& params, unsigned long max_index, const BigInt& d);

}  // namespace sqf
