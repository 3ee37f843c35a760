// Runs each acceptance criterion once and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "sqf/certify.hpp"
#include "sqf/curves.hpp"
#include "sqf/isotest.hpp"

using namespace sqf;
using Clock = std::chrono::steady_clock;
using Pairs = std::vector<std::pair<unsigned long, unsigned long>>;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Pairs kThree{{1, 103}, {2, 22}, {4, 956}};

Outcome duplicates_1000() {
    const auto start = Clock::now();
    const auto pairs = duplicate_search(1000);
    const double s = seconds_since(start);
    return {pairs == kThree && s < 10, std::to_string(pairs.size()) + " pairs in " + std::to_string(s) + " s"};
}

Outcome duplicates_10000() {
    const auto start = Clock::now();
    const auto pairs = duplicate_search(10000);
    const double s = seconds_since(start);
    return {pairs == kThree && s < 300, std::to_string(pairs.size()) + " pairs in " + std::to_string(s) + " s"};
}

Outcome k58() {
    const auto r = fields_equal(2, 58);
    const QuadraticField q5(5);
    const bool ok = !r.equal && r.stage == IsoStage::NonSquare && r.alpha &&
                    *r.alpha == QuadInt::from_parts(q5, 97760, 43680) && !sqrt_in_field(*r.alpha);
    return {ok, "stage " + to_string(r.stage) + (r.alpha ? ", alpha " + r.alpha->to_string() : "")};
}

Outcome certificates() {
    std::ostringstream d;
    bool ok = true;
    const auto c6 = issue_certificate(6);
    ok = ok && c6.ok() && c6.certificate->r0 == 13 && c6.certificate->p == 53 &&
         verify_certificate(*c6.certificate).accepted;
    d << "n=6 " << (c6.ok() ? c6.certificate->p.get_str() : "none");

    auto start = Clock::now();
    const auto c10 = issue_certificate(10, 100'000'000);
    const double s10 = seconds_since(start);
    ok = ok && c10.ok() && c10.certificate->r0 == 29 && c10.certificate->p == 64233493 &&
         verify_certificate(*c10.certificate).accepted && s10 < 300;
    d << "; n=10 " << (c10.ok() ? c10.certificate->p.get_str() : "none") << " in " << s10 << " s";

    start = Clock::now();
    bool v14 = false;
    try {
        const auto cert = certificate_from_json(slurp(SQF_FIXTURE_DIR "/n14.cert.json"));
        v14 = cert.r0 == 53 && cert.p == BigInt("408359633417260832077") && verify_certificate(cert).accepted;
    } catch (const std::exception&) {
    }
    const double s14 = seconds_since(start);
    ok = ok && v14 && s14 < 1;
    d << "; n=14 fixture " << (v14 ? "accepted" : "rejected") << " in " << s14 << " s";
    return {ok, d.str()};
}

Outcome sequence_values() {
    const LucasParams p(3);
    const auto s = uv_term(p, 13);
    const bool ok = s.u == 1543321 && s.u == BigInt(13) * 118717 && s.v == 5564523 && s.v % 53 == 0;
    return {ok, "u13=" + s.u.get_str() + " v13=" + s.v.get_str()};
}

std::vector<BigInt> plain_terms(long a, unsigned count) {
    std::vector<BigInt> u(count);
    u[0] = 0;
    if (count > 1) u[1] = 1;
    for (unsigned k = 2; k < count; ++k) u[k] = a * u[k - 1] + u[k - 2];
    return u;
}

Outcome cohn_table() {
    bool ok = true;
    // Literal triples and samples of the a = b^2 family.
    for (const auto& e : cohn_exceptions()) {
        const std::vector<long> as = e.odd_square_family() ? std::vector<long>{1, 9, 25, 49, 81} : std::vector<long>{e.a};
        for (long a : as) {
            const auto u = plain_terms(a, e.s + 1);
            ok = ok && is_perfect_square(u[e.r] * u[e.s]);
        }
    }
    const auto u3 = plain_terms(3, 7), u1 = plain_terms(1, 13);
    ok = ok && u3[3] * u3[6] == 3600 && u1[1] * u1[12] == 144 && u1[2] * u1[12] == 144 && u1[3] * u1[6] == 16;
    std::size_t scanned = 0, offending = 0;
    for (long a = 1; a <= 9; a += 2) {
        const auto u = plain_terms(a, 31);
        for (unsigned r = 1; r <= 30; ++r)
            for (unsigned s = r + 1; s <= 30; ++s, ++scanned)
                if (is_perfect_square(u[r] * u[s]) && !is_cohn_exception(r, s, a)) ++offending;
    }
    ok = ok && offending == 0;
    return {ok, std::to_string(scanned) + " products scanned, " + std::to_string(offending) + " non-exceptional squares"};
}

Outcome identities() {
    std::size_t checked = 0;
    bool ok = true;
    std::mt19937_64 rng(41);
    for (long t = 1; t <= 10; ++t) {
        const auto s = uv_terms(LucasParams(t), 401);
        const BigInt disc = t * t + 4;
        for (std::size_t j = 0; j <= 200; ++j) {
            ok = ok && s[j].v * s[j].v - disc * s[j].u * s[j].u == (j % 2 ? -4 : 4);
            ok = ok && s[2 * j].u == s[j].u * s[j].v && s[2 * j].v == s[j].v * s[j].v - (j % 2 ? -2 : 2);
            const std::size_t r = rng() % 201;
            ok = ok && 2 * s[r + j].u == s[r].u * s[j].v + s[j].u * s[r].v;
            const std::size_t b = rng() % 200 + 1;
            if (j) {
                BigInt g;
                mpz_gcd(g.get_mpz_t(), s[j].u.get_mpz_t(), s[b].u.get_mpz_t());
                ok = ok && g == s[std::gcd(j, b)].u;
            }
            checked += 4;
        }
    }
    return {ok, std::to_string(checked) + " identity instances"};
}

Outcome curve_suite() {
    bool ok = true;
    std::size_t pts = 0;
    for (long t = 1; t <= 10; ++t) {
        const auto [d, z] = squarefree_part(BigInt(t * t + 4));
        for (int which : {1, 2}) {
            const auto spec = which == 1 ? QuarticCurveSpec::c1(t) : QuarticCurveSpec::c2(t, d);
            const auto target = which == 1 ? WeierstrassCurveSpec::e1(t) : WeierstrassCurveSpec::e2(t, d);
            for (const auto& [x, y] : integer_points_search(spec, 50)) {
                const auto img = phi_map(which, t, d, RationalPoint::affine(x, y));
                ok = ok && on_curve(target, img);
                ++pts;
            }
        }
    }
    for (long t = 1; t <= 20; ++t) {
        const auto e = WeierstrassCurveSpec::e1(t);
        const long a = t * t + 4;
        ok = ok && ec_add(e, RationalPoint::affine(a, t * a), RationalPoint::affine(0, 0)) ==
                       RationalPoint::affine(-4, 4 * t);
    }
    const auto b = square_point_bijection(2, 2, 25, 20);
    const std::vector<std::pair<BigInt, BigInt>> want{{1, 2}, {13, 478}};
    ok = ok && b.exact_match && b.claim == "bijection" && b.c1_points == want && b.from_sequence.size() == 2 &&
         b.from_sequence[0].j == 1 && b.from_sequence[1].j == 7;
    return {ok, std::to_string(pts) + " curve points pushed forward; bijection " + (b.exact_match ? "exact" : "inexact")};
}

Outcome root_numbers() {
    bool ok = true;
    for (long t = 1; t <= 64; ++t) {
        ok = ok && root_number_E1(t) == (t % 8 == 0 ? 1 : -1);
        ok = ok && root_number_E3(t) == (t % 2 ? -1 : 1);
    }
    std::size_t derivations = 0;
    for (long t = 8; t <= 512; t += 8, ++derivations) {
        const auto bs = bs_derivation_check(t);
        ok = ok && bs.passed() && bs.global == 1;
    }
    return {ok, std::to_string(derivations) + " derivations checked"};
}

Outcome hypotheses() {
    const auto a = theorem_hypotheses(2), b = theorem_hypotheses(8), none = theorem_hypotheses(4);
    const bool ok = a.which == HypothesisCase::A && b.which == HypothesisCase::B && b.trace == 1 &&
                    none.which == HypothesisCase::None && !none.trace_odd;
    return {ok, "2->" + to_string(a.which) + " 8->" + to_string(b.which) + " (t=" + b.trace.get_str() + ") 4->" +
                    to_string(none.which) + " (t=" + none.trace.get_str() + ")"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"duplicate search to 1000", duplicates_1000},
        {"duplicate search to 10000", duplicates_10000},
        {"K_58 != K_2 at the square-root stage", k58},
        {"certificates for n = 6, 10, 14", certificates},
        {"sequence values for t = 3", sequence_values},
        {"Cohn table", cohn_table},
        {"sequence identities", identities},
        {"curve suite", curve_suite},
        {"root numbers", root_numbers},
        {"hypothesis classifier", hypotheses},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.ok) ++failures;
        std::cout << (o.ok ? "PASS" : "FAIL") << ' ' << i + 1 << ' ' << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    return failures ? 1 : 0;
}
