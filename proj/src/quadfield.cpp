#include "sqf/quadfield.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace sqf {

namespace {

bool integral(const BigInt& d, const BigInt& a, const BigInt& b) {
    if (mod_floor(d, 4) == 1) return mpz_even_p(BigInt(a - b).get_mpz_t()) != 0;
    return mpz_even_p(a.get_mpz_t()) && mpz_even_p(b.get_mpz_t());
}

// a + b*sqrt(d) with integers a, b.
int sign_of(const BigInt& a, const BigInt& b, const BigInt& d) {
    const int sa = sgn(a), sb = sgn(b);
    if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
    if (sa <= 0 && sb <= 0) return -1;
    const BigInt a2 = a * a, db2 = d * b * b;
    if (sa > 0) return a2 > db2 ? 1 : -1;
    return db2 > a2 ? 1 : -1;
}

std::optional<FundamentalUnit> make_unit(const QuadraticField& field, const BigInt& a, const BigInt& b) {
    if (!integral(field.d(), a, b)) return std::nullopt;
    QuadInt e(field, a, b);
    return FundamentalUnit{e, e.trace(), static_cast<int>(e.norm().get_si())};
}

// Least b > 0 with a^2 - d b^2 = +-4 by direct scan; used where convergents
// are not guaranteed to expose the half-integral solutions.
FundamentalUnit scan_unit(const QuadraticField& field) {
    const BigInt& d = field.d();
    for (BigInt b = 1;; ++b) {
        const BigInt db2 = d * b * b;
        for (const BigInt& a2 : {BigInt(db2 - 4), BigInt(db2 + 4)}) {
            if (a2 <= 0) continue;
            if (auto a = exact_sqrt(a2))
                if (auto u = make_unit(field, *a, b)) return *u;
        }
    }
}

FundamentalUnit convergent_unit(const QuadraticField& field) {
    const BigInt& d = field.d();
    const BigInt a0 = isqrt(d);
    BigInt m = 0, den = 1, partial = a0;
    BigInt p_prev = 1, p = a0, q_prev = 0, q = 1;
    std::optional<FundamentalUnit> best;
    BigInt best_b;
    // Convergent denominators grow monotonically; once q exceeds the best b
    // found, no later convergent can yield a smaller unit.
    while (!best || q <= best_b) {
        const BigInt norm = p * p - d * q * q;
        std::optional<FundamentalUnit> cand;
        if (norm == 4 || norm == -4) cand = make_unit(field, p, q);
        else if (norm == 1 || norm == -1) cand = make_unit(field, 2 * p, 2 * q);
        if (cand && (!best || cand->elem.b() < best_b ||
                     (cand->elem.b() == best_b && cand->elem.a() < best->elem.a()))) {
            best_b = cand->elem.b();
            best = cand;
        }
        m = den * partial - m;
        den = (d - m * m) / den;
        partial = (a0 + m) / den;
        BigInt p_next = partial * p + p_prev, q_next = partial * q + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
    }
    return *best;
}

}  // namespace

QuadraticField::QuadraticField(BigInt d) : d_(std::move(d)) {
    if (d_ < 2) throw std::domain_error("QuadraticField: d must be >= 2");
    if (squarefree_part(d_).second != 1) throw std::domain_error("QuadraticField: d must be squarefree");
}

QuadInt::QuadInt(const QuadraticField& field, BigInt a, BigInt b) : field_(field), a_(std::move(a)), b_(std::move(b)) {
    if (!integral(field_.d(), a_, b_))
        throw std::domain_error("QuadInt: (" + a_.get_str() + " + " + b_.get_str() + "*sqrt(" + field_.d().get_str() +
                                "))/2 is not an algebraic integer");
}

QuadInt QuadInt::from_integer(const QuadraticField& field, const BigInt& n) { return QuadInt(field, 2 * n, 0); }

QuadInt QuadInt::from_parts(const QuadraticField& field, const BigInt& x, const BigInt& y) {
    return QuadInt(field, 2 * x, 2 * y);
}

QuadInt QuadInt::conj() const { return QuadInt(field_, a_, -b_); }

BigInt QuadInt::norm() const {
    BigInt n = a_ * a_ - field_.d() * b_ * b_;
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), 4);
    return n;
}

int QuadInt::sign() const { return sign_of(a_, b_, field_.d()); }

bool QuadInt::is_unit() const {
    const BigInt n = norm();
    return n == 1 || n == -1;
}

QuadInt QuadInt::operator-() const { return QuadInt(field_, -a_, -b_); }

QuadInt& QuadInt::operator+=(const QuadInt& o) {
    require_same_field(o);
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

QuadInt& QuadInt::operator-=(const QuadInt& o) {
    require_same_field(o);
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

QuadInt& QuadInt::operator*=(const QuadInt& o) {
    require_same_field(o);
    BigInt na = a_ * o.a_ + field_.d() * b_ * o.b_;
    BigInt nb = a_ * o.b_ + b_ * o.a_;
    mpz_divexact_ui(na.get_mpz_t(), na.get_mpz_t(), 2);
    mpz_divexact_ui(nb.get_mpz_t(), nb.get_mpz_t(), 2);
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
}

std::strong_ordering QuadInt::operator<=>(const QuadInt& o) const {
    require_same_field(o);
    const int s = sign_of(a_ - o.a_, b_ - o.b_, field_.d());
    return s <=> 0;
}

QuadInt QuadInt::pow(unsigned long e) const {
    QuadInt result = from_integer(field_, 1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

std::string QuadInt::to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

void QuadInt::require_same_field(const QuadInt& o) const {
    if (!(field_ == o.field_)) throw std::domain_error("QuadInt: operands live in different fields");
}

std::ostream& operator<<(std::ostream& os, const QuadInt& x) {
    // Prints x + y*sqrt(d), using halves only when needed.
    const bool halves = mpz_odd_p(x.a().get_mpz_t()) || mpz_odd_p(x.b().get_mpz_t());
    BigInt a = x.a(), b = x.b();
    if (!halves) {
        a /= 2;
        b /= 2;
    }
    if (halves) os << '(';
    os << a << (b < 0 ? " - " : " + ") << abs(b) << "*sqrt(" << x.field().d() << ')';
    if (halves) os << ")/2";
    return os;
}

FundamentalUnit fundamental_unit(const QuadraticField& field) {
    return field.d() <= 64 ? scan_unit(field) : convergent_unit(field);
}

std::optional<UnitPower> express_as_unit_power(const QuadInt& x, const FundamentalUnit& eps) {
    if (!(x.field() == eps.elem.field())) throw std::domain_error("express_as_unit_power: field mismatch");
    if (!x.is_unit()) throw std::domain_error("express_as_unit_power: input is not a unit");
    const QuadInt one = QuadInt::from_integer(x.field(), 1);
    if (eps.elem <= one) throw std::domain_error("express_as_unit_power: base unit must exceed 1");

    int sign = 1;
    QuadInt target = x;
    if (target.sign() < 0) {
        sign = -1;
        target = -target;
    }
    bool inverted = false;
    if (target < one) {
        // target^-1 = norm(target) * conj(target)
        target = target.conj();
        if (x.norm() < 0) target = -target;
        inverted = true;
    }

    // Binary descent on eps^(2^i).
    std::vector<QuadInt> powers{eps.elem};
    while (true) {
        QuadInt next = powers.back() * powers.back();
        if (next > target) break;
        powers.push_back(std::move(next));
    }
    QuadInt acc = one;
    long exponent = 0;
    for (std::size_t i = powers.size(); i-- > 0;) {
        QuadInt trial = acc * powers[i];
        if (trial <= target) {
            acc = std::move(trial);
            exponent += 1L << i;
        }
    }
    if (!(acc == target)) return std::nullopt;
    return UnitPower{sign, inverted ? -exponent : exponent};
}

std::optional<QuadInt> sqrt_in_field(const QuadInt& x) {
    const QuadraticField& field = x.field();
    if (x.is_zero()) return x;
    if (!x.totally_nonnegative()) return std::nullopt;

    // 4x = U + V sqrt(d); seek 2*root = c + e sqrt(d), C = 2c, E = 2e.
    const BigInt& d = field.d();
    const BigInt U = 2 * x.a(), V = 2 * x.b();
    const auto s = exact_sqrt(U * U - d * V * V);
    if (!s) return std::nullopt;
    for (int branch : {1, -1}) {
        const BigInt c_sq4 = 2 * (U + branch * *s);
        const BigInt e_sq4_d = 2 * (U - branch * *s);
        if (c_sq4 < 0 || e_sq4_d < 0 || !mpz_divisible_p(e_sq4_d.get_mpz_t(), d.get_mpz_t())) continue;
        const auto C = exact_sqrt(c_sq4);
        auto E = exact_sqrt(BigInt(e_sq4_d / d));
        if (!C || !E) continue;
        if (sgn(V) < 0) *E = -*E;
        if (*C * *E != 2 * V) continue;
        if (mpz_odd_p(C->get_mpz_t()) || mpz_odd_p(E->get_mpz_t())) continue;
        const BigInt ra = *C / 2, rb = *E / 2;
        if (!integral(d, ra, rb)) continue;
        QuadInt root(field, ra, rb);
        if (root * root == x) return root;
    }
    return std::nullopt;
}

}  // namespace sqf
