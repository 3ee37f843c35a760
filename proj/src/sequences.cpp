#include "sqf/sequences.hpp"

#include <stdexcept>

namespace sqf {

namespace {

QuadInt make_omega(const BigInt& t, const BigInt& d, const BigInt& z) { return QuadInt(QuadraticField(d), t, z); }

struct Mat2 {
    BigInt a, b, c, d;
};

Mat2 mul_mod(const Mat2& x, const Mat2& y, const BigInt& m) {
    return {mod_floor(x.a * y.a + x.b * y.c, m), mod_floor(x.a * y.b + x.b * y.d, m),
            mod_floor(x.c * y.a + x.d * y.c, m), mod_floor(x.c * y.b + x.d * y.d, m)};
}

}  // namespace

LucasParams::LucasParams(BigInt t)
    : t_(std::move(t)),
      d_(squarefree_part(t_ * t_ + 4).first),
      z_(squarefree_part(t_ * t_ + 4).second),
      omega_(make_omega(t_, d_, z_)) {
    if (t_ < 1) throw std::domain_error("LucasParams: t must be positive");
}

SequencePair uv_term(const LucasParams& params, unsigned long j) {
    const BigInt& t = params.t();
    BigInt u0 = 0, u1 = 1, v0 = 2, v1 = t;
    for (unsigned long i = 0; i < j; ++i) {
        BigInt u2 = t * u1 + u0;
        BigInt v2 = t * v1 + v0;
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    return {j, u0, v0};
}

BigInt u_term(const LucasParams& params, unsigned long j) { return uv_term(params, j).u; }
BigInt v_term(const LucasParams& params, unsigned long j) { return uv_term(params, j).v; }

std::vector<SequencePair> uv_terms(const LucasParams& params, unsigned long count) {
    std::vector<SequencePair> out;
    out.reserve(count);
    const BigInt& t = params.t();
    BigInt u0 = 0, u1 = 1, v0 = 2, v1 = t;
    for (unsigned long j = 0; j < count; ++j) {
        out.push_back({j, u0, v0});
        BigInt u2 = t * u1 + u0;
        BigInt v2 = t * v1 + v0;
        u0 = std::move(u1);
        u1 = std::move(u2);
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    return out;
}

std::pair<BigInt, BigInt> uv_mod(const BigInt& t, const BigInt& j, const BigInt& modulus) {
    if (modulus < 1) throw std::domain_error("uv_mod: modulus must be positive");
    if (j < 0) throw std::domain_error("uv_mod: negative index");
    if (modulus == 1) return {0, 0};
    // [[t,1],[1,0]]^j = [[u_{j+1}, u_j], [u_j, u_{j-1}]]
    Mat2 result{1, 0, 0, 1};
    Mat2 base{mod_floor(t, modulus), 1, 1, 0};
    const std::size_t bits = mpz_sizeinbase(j.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = mul_mod(result, result, modulus);
        if (mpz_tstbit(j.get_mpz_t(), i)) result = mul_mod(result, base, modulus);
    }
    // v_j = u_{j+1} + u_{j-1}
    return {result.b, mod_floor(result.a + result.d, modulus)};
}

std::string to_string(SquareClass c) {
    switch (c) {
        case SquareClass::Square: return "square";
        case SquareClass::DSquare: return "d-square";
        case SquareClass::Neither: return "neither";
    }
    return "neither";
}

SquareClass classify_square(const BigInt& value, const BigInt& d) {
    if (d < 2) throw std::domain_error("classify_square: d must be >= 2");
    if (value < 1) throw std::domain_error("classify_square: value must be positive");
    if (is_perfect_square(value)) return SquareClass::Square;
    if (mpz_divisible_p(value.get_mpz_t(), d.get_mpz_t()) && is_perfect_square(BigInt(value / d)))
        return SquareClass::DSquare;
    return SquareClass::Neither;
}

std::string CohnException::describe() const {
    const std::string a_text = odd_square_family() ? "b^2 (b odd)" : std::to_string(a);
    return "(" + std::to_string(r) + ", " + std::to_string(s) + ", " + a_text + ")";
}

const std::vector<CohnException>& cohn_exceptions() {
    static const std::vector<CohnException> table{{1, 2, 0}, {1, 12, 1}, {2, 12, 1}, {3, 6, 1}, {3, 6, 3}};
    return table;
}

bool is_cohn_exception(unsigned r, unsigned s, const BigInt& a) {
    if (a < 1 || mpz_even_p(a.get_mpz_t())) return false;
    for (const auto& e : cohn_exceptions()) {
        if (e.r != r || e.s != s) continue;
        if (e.odd_square_family() ? is_perfect_square(a) : a == e.a) return true;
    }
    return false;
}

std::vector<SquareTerm> find_square_terms(const LucasParams& params, unsigned long max_index, const BigInt& d) {
    std::vector<SquareTerm> out;
    for (const auto& term : uv_terms(params, max_index + 1)) {
        if (term.j % 2 == 0) continue;
        const auto cls = classify_square(term.u, d);
        if (cls != SquareClass::Neither) out.push_back({term.j, cls, term.u});
    }
    return out;
}

}  // namespace sqf
