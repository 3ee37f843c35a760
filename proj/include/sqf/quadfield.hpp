#pragma once

/**
 * @file quadfield.hpp
 * @brief Ring of integers of a real quadratic field Q(sqrt d).
 *
 * Every element is stored as (a + b*sqrt(d)) / 2 with a single denominator,
 * regardless of d mod 4. Integrality is the parity rule:
 *   d == 1 (mod 4): a == b (mod 2);   otherwise: a and b both even.
 *
 * No floating point is used anywhere; ordering under the embedding
 * sqrt(d) > 0 is decided by exact sign analysis.
 */

#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include "sqf/arith.hpp"

namespace sqf {

/// Q(sqrt d) for squarefree d >= 2.
class QuadraticField {
public:
    explicit QuadraticField(BigInt d);

    const BigInt& d() const noexcept { return d_; }
    bool operator==(const QuadraticField&) const = default;

private:
    BigInt d_;
};

class QuadInt {
public:
    /// (a + b*sqrt d)/2; throws std::domain_error if not integral.
    QuadInt(const QuadraticField& field, BigInt a, BigInt b);

    static QuadInt from_integer(const QuadraticField& field, const BigInt& n);
    /// x + y*sqrt(d) with integer x, y.
    static QuadInt from_parts(const QuadraticField& field, const BigInt& x, const BigInt& y);

    const QuadraticField& field() const noexcept { return field_; }
    const BigInt& a() const noexcept { return a_; }
    const BigInt& b() const noexcept { return b_; }

    QuadInt conj() const;
    BigInt norm() const;
    BigInt trace() const { return a_; }

    /// Sign of the real embedding with sqrt(d) > 0.
    int sign() const;
    /// Sign of the conjugate embedding.
    int conj_sign() const { return conj().sign(); }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_unit() const;
    bool totally_nonnegative() const { return sign() >= 0 && conj_sign() >= 0; }

    QuadInt operator-() const;
    QuadInt& operator+=(const QuadInt& o);
    QuadInt& operator-=(const QuadInt& o);
    QuadInt& operator*=(const QuadInt& o);
    friend QuadInt operator+(QuadInt x, const QuadInt& y) { return x += y; }
    friend QuadInt operator-(QuadInt x, const QuadInt& y) { return x -= y; }
    friend QuadInt operator*(QuadInt x, const QuadInt& y) { return x *= y; }

    bool operator==(const QuadInt& o) const { return field_ == o.field_ && a_ == o.a_ && b_ == o.b_; }
    /// Real-embedding order.
    std::strong_ordering operator<=>(const QuadInt& o) const;

    QuadInt pow(unsigned long e) const;

    std::string to_string() const;

private:
    void require_same_field(const QuadInt& o) const;

    QuadraticField field_;
    BigInt a_;
    BigInt b_;
};

std::ostream& operator<<(std::ostream& os, const QuadInt& x);

struct FundamentalUnit {
    QuadInt elem;
    BigInt trace;
    int norm;
};

FundamentalUnit fundamental_unit(const QuadraticField& field);

struct UnitPower {
    int sign;
    long exponent;

    bool operator==(const UnitPower&) const = default;
};

/// x = sign * eps^exponent, or nullopt if x is not a signed power of eps.
/// Throws std::domain_error if x is not a unit or lives in another field.
std::optional<UnitPower> express_as_unit_power(const QuadInt& x, const FundamentalUnit& eps);

/// beta with beta^2 == x, or nullopt when x is not a square in the field.
/// The returned root is nonnegative in the real embedding.
std::optional<QuadInt> sqrt_in_field(const QuadInt& x);

}  // namespace sqf
