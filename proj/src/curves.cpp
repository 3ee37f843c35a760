#include "sqf/curves.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <stdexcept>
#include <thread>

#include "sqf/quadfield.hpp"

namespace sqf {

namespace {

BigInt t2p4(const BigInt& t) { return t * t + 4; }

BigInt require_z(const BigInt& t, const BigInt& d) {
    if (d < 1) throw std::domain_error("curve parameter d must be positive");
    const BigInt a = t2p4(t);
    if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) throw std::domain_error("t^2 + 4 is not d times a square");
    auto z = exact_sqrt(BigInt(a / d));
    if (!z) throw std::domain_error("t^2 + 4 is not d times a square");
    return *z;
}

Rational power(const Rational& v, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= v;
    return r;
}

}  // namespace

std::string to_string(CurveKind k) {
    switch (k) {
        case CurveKind::C1: return "C1";
        case CurveKind::C2: return "C2";
        case CurveKind::E1: return "E1";
        case CurveKind::E2: return "E2";
        case CurveKind::E3: return "E3";
    }
    return "?";
}

QuarticCurveSpec QuarticCurveSpec::c1(const BigInt& t) { return {CurveKind::C1, t, 1, t2p4(t), -4}; }

QuarticCurveSpec QuarticCurveSpec::c2(const BigInt& t, const BigInt& d) {
    require_z(t, d);
    return {CurveKind::C2, t, d, d * d * t2p4(t), -4};
}

WeierstrassCurveSpec WeierstrassCurveSpec::e1(const BigInt& t) { return {CurveKind::E1, t, 1, -4 * t2p4(t)}; }

WeierstrassCurveSpec WeierstrassCurveSpec::e2(const BigInt& t, const BigInt& d) {
    return {CurveKind::E2, t, d, -4 * d * d * t2p4(t)};
}

WeierstrassCurveSpec WeierstrassCurveSpec::e3(const BigInt& t) {
    const BigInt a = t2p4(t);
    return {CurveKind::E3, t, 1, -4 * a * a * a};
}

bool RationalPoint::is_integral() const { return infinity || (x.get_den() == 1 && y.get_den() == 1); }

std::string RationalPoint::to_string() const {
    if (infinity) return "O";
    return "(" + x.get_str() + ", " + y.get_str() + ")";
}

bool on_curve(const QuarticCurveSpec& spec, const RationalPoint& pt) {
    if (pt.infinity) return false;
    return pt.y * pt.y == Rational(spec.A) * power(pt.x, 4) + Rational(spec.B);
}

bool on_curve(const WeierstrassCurveSpec& spec, const RationalPoint& pt) {
    if (pt.infinity) return true;
    return pt.y * pt.y == power(pt.x, 3) + Rational(spec.a4) * pt.x;
}

RationalPoint phi_map(int which, const BigInt& t, const BigInt& d, const RationalPoint& pt) {
    if (which != 1 && which != 2) throw std::domain_error("phi_map: which must be 1 or 2");
    const auto source = which == 1 ? QuarticCurveSpec::c1(t) : QuarticCurveSpec::c2(t, d);
    if (!on_curve(source, pt)) throw std::domain_error("phi_map: point " + pt.to_string() + " is not on " + to_string(source.kind));
    const Rational scale(source.A);  // (t^2+4) or d^2 (t^2+4)
    auto image = RationalPoint::affine(scale * pt.x * pt.x, scale * pt.x * pt.y);
    const auto target = which == 1 ? WeierstrassCurveSpec::e1(t) : WeierstrassCurveSpec::e2(t, d);
    if (!on_curve(target, image)) throw std::logic_error("phi_map: image left the target curve");
    return image;
}

RationalPoint psi_map(const BigInt& t, const BigInt& d, const RationalPoint& pt) {
    const BigInt x0 = require_z(t, d);
    if (!on_curve(WeierstrassCurveSpec::e2(t, d), pt)) throw std::domain_error("psi_map: point is not on E2");
    if (pt.infinity) return pt;
    const Rational s(x0);
    auto image = RationalPoint::affine(s * s * pt.x, s * s * s * pt.y);
    if (!on_curve(WeierstrassCurveSpec::e3(t), image)) throw std::logic_error("psi_map: image left E3");
    return image;
}

RationalPoint ec_neg(const RationalPoint& p) {
    if (p.infinity) return p;
    return RationalPoint::affine(p.x, -p.y);
}

RationalPoint ec_add(const WeierstrassCurveSpec& spec, const RationalPoint& p, const RationalPoint& q) {
    if (!on_curve(spec, p) || !on_curve(spec, q)) throw std::domain_error("ec_add: point not on curve");
    if (p.infinity) return q;
    if (q.infinity) return p;
    Rational slope;
    if (p.x == q.x) {
        if (p.y == -q.y) return RationalPoint::at_infinity();
        slope = (3 * p.x * p.x + Rational(spec.a4)) / (2 * p.y);
    } else {
        slope = (q.y - p.y) / (q.x - p.x);
    }
    Rational x3 = slope * slope - p.x - q.x;
    Rational y3 = slope * (p.x - x3) - p.y;
    return RationalPoint::affine(std::move(x3), std::move(y3));
}

RationalPoint ec_mul(const WeierstrassCurveSpec& spec, const RationalPoint& p, unsigned long k) {
    RationalPoint acc = RationalPoint::at_infinity(), base = p;
    while (k) {
        if (k & 1) acc = ec_add(spec, acc, base);
        k >>= 1;
        if (k) base = ec_add(spec, base, base);
    }
    return acc;
}

bool torsion_preconditions(const BigInt& t, const BigInt& d) { return !is_perfect_square(4 * d * d * t2p4(t)); }

int root_number_E1(const BigInt& t) {
    if (t < 1) throw std::domain_error("root_number_E1: t must be positive");
    return mod_floor(t, 8) == 0 ? 1 : -1;
}

int root_number_E3(const BigInt& t) {
    if (t < 1) throw std::domain_error("root_number_E3: t must be positive");
    return mpz_even_p(t.get_mpz_t()) ? 1 : -1;
}

BsDerivation bs_derivation_check(const BigInt& t) {
    if (t < 1 || mod_floor(t, 8) != 0) throw std::domain_error("bs_derivation_check: t must be a positive multiple of 8");
    BsDerivation rep;
    rep.t = t;
    const BigInt half = t / 2;
    std::tie(rep.r, rep.s) = fourth_power_free_part(half * half + 1);

    rep.r_is_1_mod_16 = mod_floor(rep.r, 16) == 1;
    if (!rep.r_is_1_mod_16) rep.discrepancies.push_back("r = " + to_decimal(rep.r) + " is not 1 mod 16");

    const auto fac = factorize(rep.r);
    rep.no_prime_3_mod_4 = fac.complete && std::none_of(fac.factors.begin(), fac.factors.end(), [](const PrimePower& pp) {
                               return mod_floor(pp.prime, 4) == 3;
                           });
    if (!rep.no_prime_3_mod_4) rep.discrepancies.push_back("r has a prime factor 3 mod 4 (or did not factor)");

    // E1 : Y^2 = X^3 - 16 r s^4 X  ~  E : Y^2 = X^3 - r X
    const auto e1 = WeierstrassCurveSpec::e1(t);
    const BigInt scale = 2 * rep.s;
    const BigInt scale4 = scale * scale * scale * scale;
    const WeierstrassCurveSpec reduced{CurveKind::E1, t, 1, -rep.r};
    const BigInt a = t2p4(t);
    const auto p1 = RationalPoint::affine(Rational(a), Rational(t * a));
    const auto mapped = RationalPoint::affine(p1.x / Rational(scale * scale), p1.y / Rational(scale * scale * scale));
    rep.isomorphism_ok = e1.a4 == -rep.r * scale4 && on_curve(e1, p1) && on_curve(reduced, mapped);
    if (!rep.isomorphism_ok) rep.discrepancies.push_back("E1 is not isomorphic to Y^2 = X^3 - r X by scaling");

    rep.w_infinity = -1;  // sign(-r), r > 0
    rep.w_2 = rep.r_is_1_mod_16 ? -1 : 0;
    rep.w_odd = rep.no_prime_3_mod_4 ? 1 : 0;
    rep.global = rep.w_infinity * rep.w_2 * rep.w_odd;
    rep.matches_case_formula = rep.global == root_number_E1(t);
    if (!rep.matches_case_formula) rep.discrepancies.push_back("local product does not match w(E1) = +1");
    return rep;
}

std::vector<std::pair<BigInt, BigInt>> integer_points_search(const QuarticCurveSpec& spec, unsigned long x_bound,
                                                             unsigned workers) {
    workers = std::max(1u, workers);
    std::vector<std::vector<std::pair<BigInt, BigInt>>> parts(workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (unsigned long x = w; x <= x_bound; x += workers) {
                    const BigInt bx{x};
                    const BigInt rhs = spec.A * bx * bx * bx * bx + spec.B;
                    if (auto y = exact_sqrt(rhs)) parts[w].emplace_back(bx, *y);
                }
            });
        }
    }
    std::vector<std::pair<BigInt, BigInt>> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    std::sort(out.begin(), out.end());
    return out;
}

BijectionReport square_point_bijection(const BigInt& t, const BigInt& d, unsigned long max_index,
                                       unsigned long x_bound) {
    BijectionReport rep;
    rep.t = t;
    rep.d = d;
    rep.z = require_z(t, d);
    const LucasParams params(t);
    if (params.d() != d) throw std::domain_error("square_point_bijection: d must be the squarefree part of t^2 + 4");

    const QuadraticField field(d);
    const auto fund = fundamental_unit(field);
    rep.omega_fundamental = params.omega() == fund.elem;
    rep.claim = rep.omega_fundamental ? "bijection" : "injection";

    const auto c1 = QuarticCurveSpec::c1(t);
    const auto c2 = QuarticCurveSpec::c2(t, d);

    // Sequence side: u_j = x^2 -> (x, v_j) on C1; u_j = d x^2 -> (x, v_j) on C2.
    const auto terms = uv_terms(params, max_index + 1);
    for (const auto& st : find_square_terms(params, max_index, d)) {
        const bool sq = st.cls == SquareClass::Square;
        const BigInt x = *exact_sqrt(sq ? st.u : BigInt(st.u / d));
        const BigInt& y = terms[st.j].v;
        const auto& spec = sq ? c1 : c2;
        if (!on_curve(spec, RationalPoint::affine(Rational(x), Rational(y))))
            rep.mismatches.push_back("u_" + std::to_string(st.j) + " gives an off-curve point");
        rep.from_sequence.push_back({st.j, st.cls, spec.kind, x, y});
    }

    rep.c1_points = integer_points_search(c1, x_bound);
    rep.c2_points = integer_points_search(c2, x_bound);

    // Curve side: alpha = (y + x^2 sqrt(A))/2 is a unit of norm -1; recover j.
    const FundamentalUnit omega{params.omega(), t, -1};
    auto trace_back = [&](const std::pair<BigInt, BigInt>& pt, CurveKind kind) {
        const auto& [x, y] = pt;
        const BigInt coeff = (kind == CurveKind::C1 ? BigInt(1) : d) * x * x * rep.z;
        const QuadInt alpha(field, y, coeff);
        const auto power = express_as_unit_power(alpha, omega);
        const std::string label = to_string(kind) + " point (" + to_decimal(x) + ", " + to_decimal(y) + ")";
        if (!power || power->sign != 1 || power->exponent <= 0 || power->exponent % 2 == 0) {
            if (rep.omega_fundamental) rep.mismatches.push_back(label + " is not an odd power of omega");
            return;
        }
        const auto j = static_cast<unsigned long>(power->exponent);
        const BigInt u = uv_term(params, j).u;
        const BigInt expect = kind == CurveKind::C1 ? BigInt(x * x) : BigInt(d * x * x);
        if (u != expect) rep.mismatches.push_back(label + " maps to j = " + std::to_string(j) + " but u_j differs");
        rep.from_curves.push_back({j, kind == CurveKind::C1 ? SquareClass::Square : SquareClass::DSquare, kind, x, y});
        if (j > max_index)
            rep.mismatches.push_back(label + " corresponds to j = " + std::to_string(j) + " beyond max_index");
    };
    for (const auto& pt : rep.c1_points) trace_back(pt, CurveKind::C1);
    for (const auto& pt : rep.c2_points) trace_back(pt, CurveKind::C2);

    // Compare the image of the sequence side (within x_bound) with the brute-force lists.
    using Key = std::tuple<CurveKind, BigInt, BigInt>;
    std::set<Key> seq_side, curve_side;
    for (const auto& e : rep.from_sequence)
        if (e.x <= x_bound) seq_side.insert({e.curve, e.x, e.y});
    for (const auto& [x, y] : rep.c1_points) curve_side.insert({CurveKind::C1, x, y});
    for (const auto& [x, y] : rep.c2_points) curve_side.insert({CurveKind::C2, x, y});
    for (const auto& k : seq_side)
        if (!curve_side.count(k))
            rep.mismatches.push_back("sequence point (" + to_decimal(std::get<1>(k)) + ", " + to_decimal(std::get<2>(k)) +
                                     ") missing from brute-force list");
    if (rep.omega_fundamental) {
        for (const auto& k : curve_side)
            if (!seq_side.count(k))
                rep.mismatches.push_back("curve point (" + to_decimal(std::get<1>(k)) + ", " +
                                         to_decimal(std::get<2>(k)) + ") has no sequence preimage");
    }
    rep.exact_match = rep.mismatches.empty();
    return rep;
}

}  // namespace sqf
