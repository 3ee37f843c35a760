#include "sqf/certify.hpp"

#include <algorithm>
#include <future>
#include <set>

#include "json.hpp"
#include "sqf/isotest.hpp"
#include "sqf/quadfield.hpp"

namespace sqf {

namespace {

constexpr std::uint64_t kSegment = 1u << 20;
// Minimality of r0 is checked by a linear scan modulo d.
constexpr unsigned long kMaxVerifiableR0 = 100'000'000;

bool canonical_digits(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
    return s == "0" || s[0] != '0';
}

std::optional<CertKind> parse_kind(const std::string& s) {
    if (s == "cohn-nonresidue") return CertKind::CohnNonresidue;
    if (s == "petho-parity") return CertKind::PethoParity;
    return std::nullopt;
}

struct SegmentScan {
    std::vector<std::uint64_t> divisors;  // primes in the segment dividing v
    std::optional<std::uint64_t> hit;     // least passing prime in the segment
};

SegmentScan scan_segment(std::uint64_t lo, std::uint64_t hi, const BigInt& v, const BigInt& du) {
    SegmentScan out;
    for (std::uint64_t p : primes_in_range(lo, hi)) {
        if (!mpz_divisible_ui_p(v.get_mpz_t(), p)) continue;
        out.divisors.push_back(p);
        if (out.hit || p % 4 != 1) continue;
        const BigInt bp{static_cast<unsigned long>(p)};
        if (jacobi_symbol(mod_floor(du, bp), bp) == -1) out.hit = p;
    }
    return out;
}

bool nonresidue_ok(const BigInt& p, const BigInt& du) {
    return p % 4 == 1 && jacobi_symbol(mod_floor(du, p), p) == -1;
}

std::optional<QuadInt> unit_from_index(const QuadraticField& field, const BigInt& n, const BigInt& y) {
    // (n + y sqrt d)/4 = (n/2 + (y/2) sqrt d)/2
    if (mpz_odd_p(n.get_mpz_t()) || mpz_odd_p(y.get_mpz_t())) return std::nullopt;
    try {
        return QuadInt(field, n / 2, y / 2);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
}

}  // namespace

std::string to_string(CertKind k) { return k == CertKind::PethoParity ? "petho-parity" : "cohn-nonresidue"; }

std::string to_json(const UniquenessCertificate& cert) {
    std::string out = "{\"version\":" + std::to_string(cert.version) + ",\"kind\":\"" + to_string(cert.kind) + "\"";
    const std::pair<const char*, const BigInt*> fields[] = {
        {"n", &cert.n}, {"d", &cert.d}, {"t", &cert.t}, {"r0", &cert.r0}, {"p", &cert.p}};
    for (const auto& [key, value] : fields) out += std::string(",\"") + key + "\":\"" + to_decimal(*value) + "\"";
    out += "}\n";
    return out;
}

UniquenessCertificate certificate_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw CertificateFormatError(std::string("certificate is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CertificateFormatError("certificate must be a JSON object");
    static const std::set<std::string> keys{"version", "kind", "n", "d", "t", "r0", "p"};
    for (const auto& [key, _] : j.items())
        if (!keys.count(key)) throw CertificateFormatError("unexpected key: " + key);
    for (const auto& key : keys)
        if (!j.contains(key)) throw CertificateFormatError("missing key: " + key);
    if (!j["version"].is_number_integer()) throw CertificateFormatError("version must be an integer");
    if (j["version"].get<long long>() != 1) throw CertificateFormatError("unsupported certificate version");
    if (!j["kind"].is_string()) throw CertificateFormatError("kind must be a string");
    const auto kind = parse_kind(j["kind"].get<std::string>());
    if (!kind) throw CertificateFormatError("unknown certificate kind: " + j["kind"].get<std::string>());

    UniquenessCertificate cert;
    cert.version = 1;
    cert.kind = *kind;
    auto number = [&](const char* key) {
        if (!j[key].is_string()) throw CertificateFormatError(std::string(key) + " must be a base-10 string");
        const auto s = j[key].get<std::string>();
        if (!canonical_digits(s)) throw CertificateFormatError(std::string(key) + " is not a canonical integer: " + s);
        return BigInt{s, 10};
    };
    cert.n = number("n");
    cert.d = number("d");
    cert.t = number("t");
    cert.r0 = number("r0");
    cert.p = number("p");
    if (to_json(cert) != text) throw CertificateFormatError("certificate is not in canonical encoding");
    return cert;
}

std::optional<unsigned long> find_r0(const LucasParams& params, const BigInt& d, unsigned long index_cap) {
    if (d < 1) throw std::domain_error("find_r0: modulus must be positive");
    const BigInt t = mod_floor(params.t(), d);
    BigInt u0 = 0, u1 = 1;  // u_{j-1}, u_j mod d
    for (unsigned long j = 1; j <= index_cap; ++j) {
        if (j % 2 == 1 && mod_floor(u1, d) == 0) return j;
        BigInt u2 = mod_floor(t * u1 + u0, d);
        u0 = std::move(u1);
        u1 = std::move(u2);
    }
    return std::nullopt;
}

std::string to_string(IssueFailure f) {
    switch (f) {
        case IssueFailure::None: return "none";
        case IssueFailure::Hypothesis: return "hypothesis";
        case IssueFailure::UnitNotFundamental: return "unit not fundamental";
        case IssueFailure::NoR0WithinCap: return "no r0 within index cap";
        case IssueFailure::NoSuitablePrime: return "no suitable p";
    }
    return "none";
}

UniquenessCertificate petho_certificate() {
    UniquenessCertificate c;
    c.kind = CertKind::PethoParity;
    c.n = 4;
    c.d = 2;
    c.t = 2;
    c.r0 = 7;
    c.p = 2;
    return c;
}

IssueResult issue_certificate(const BigInt& n, std::uint64_t prime_bound, unsigned long index_cap, unsigned workers) {
    validate_index(n);
    IssueResult res;
    auto fail = [&](IssueFailure f, std::string reason) {
        res.failure = f;
        res.reason = std::move(reason);
        return res;
    };
    if (n == 4) {
        res.certificate = petho_certificate();
        return res;
    }
    if (mod_floor(n, 4) != 2) return fail(IssueFailure::Hypothesis, "n is not 2 mod 4");

    const QuadInvariant inv = quad_invariant(n);
    const QuadraticField field(inv.d);
    const auto eps = unit_from_index(field, n, inv.y);
    const auto fund = fundamental_unit(field);
    if (!eps || !(*eps == fund.elem))
        return fail(IssueFailure::UnitNotFundamental,
                    "(n + y sqrt d)/4 is not the fundamental unit " + fund.elem.to_string());

    const BigInt t = n / 2;
    const LucasParams params(t);
    const auto r0 = find_r0(params, inv.d, index_cap);
    if (!r0) return fail(IssueFailure::NoR0WithinCap, "no odd r <= " + std::to_string(index_cap) + " with d | u_r");
    res.r0 = r0;

    const SequencePair term = uv_term(params, *r0);
    const BigInt du = inv.d * term.u;
    BigInt rem = term.v;  // v_r0 with every prime found so far divided out

    auto success = [&](const BigInt& p) {
        UniquenessCertificate cert;
        cert.kind = CertKind::CohnNonresidue;
        cert.n = n;
        cert.d = inv.d;
        cert.t = t;
        cert.r0 = *r0;
        cert.p = p;
        res.certificate = cert;
        return res;
    };

    workers = std::max(1u, workers);
    for (std::uint64_t lo = 2; lo <= prime_bound;) {
        std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
        for (unsigned w = 0; w < workers && lo <= prime_bound; ++w) {
            const std::uint64_t hi = std::min(prime_bound + 1, lo + kSegment);
            ranges.emplace_back(lo, hi);
            lo = hi;
        }
        std::vector<std::future<SegmentScan>> scans;
        for (const auto& [a, b] : ranges)
            scans.push_back(std::async(std::launch::async, scan_segment, a, b, std::cref(term.v), std::cref(du)));
        std::optional<std::uint64_t> hit;
        for (auto& f : scans) {
            const SegmentScan s = f.get();
            for (std::uint64_t p : s.divisors) {
                const BigInt bp{static_cast<unsigned long>(p)};
                res.divisors_seen.push_back(bp);
                while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
            }
            if (!hit && s.hit) hit = s.hit;
        }
        if (hit) return success(BigInt{static_cast<unsigned long>(*hit)});

        // Every prime below `lo` has been divided out; once lo^2 > rem the
        // cofactor is 1 or a single prime.
        const std::uint64_t scanned = ranges.back().second;
        if (BigInt{static_cast<unsigned long>(scanned)} * scanned > rem) {
            if (rem > 1 && rem <= prime_bound) {
                res.divisors_seen.push_back(rem);
                if (nonresidue_ok(rem, du)) return success(rem);
            }
            break;
        }
    }
    return fail(IssueFailure::NoSuitablePrime,
                "no prime p = 1 mod 4, p <= " + std::to_string(prime_bound) + ", divides v_r0 with (d u_r0 / p) = -1");
}

namespace {

void verify_cohn(const UniquenessCertificate& cert, VerifyResult& out) {
    auto check = [&](std::string name, bool ok, std::string detail) {
        out.transcript.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };

    const bool index_ok = cert.n >= 1 && cert.n != 3 && mod_floor(cert.n, 4) == 2;
    check("index", index_ok, "n = " + to_decimal(cert.n) + (index_ok ? " is 2 mod 4" : " is not a valid 2 mod 4 index"));
    if (!index_ok) return;

    const QuadInvariant inv = quad_invariant(cert.n);
    const bool d_ok = inv.d == cert.d;
    check("quadratic-invariant", d_ok,
          "n^2 + 16 = " + to_decimal(inv.d) + " * " + to_decimal(inv.y) + "^2, certificate d = " + to_decimal(cert.d));
    if (!d_ok) return;

    const QuadraticField field(inv.d);
    const auto eps = unit_from_index(field, cert.n, inv.y);
    const auto fund = fundamental_unit(field);
    check("fundamental-unit", eps && *eps == fund.elem,
          "fundamental unit " + fund.elem.to_string() + ", (n + y sqrt d)/4 " +
              (eps ? "= " + eps->to_string() : std::string("is not integral")));

    const bool t_ok = cert.t * 2 == cert.n && mpz_odd_p(cert.t.get_mpz_t()) && fund.trace == cert.t;
    check("trace", t_ok, "t = " + to_decimal(cert.t) + ", trace of fundamental unit = " + to_decimal(fund.trace));
    if (!t_ok) return;

    const bool r0_odd = cert.r0 >= 1 && mpz_odd_p(cert.r0.get_mpz_t());
    check("r0-odd", r0_odd, "r0 = " + to_decimal(cert.r0));
    if (!r0_odd) return;

    const auto [u_mod_d, v_mod_d] = uv_mod(cert.t, cert.r0, cert.d);
    (void)v_mod_d;
    check("r0-divisible", u_mod_d == 0, "u_r0 mod d = " + to_decimal(u_mod_d));

    bool minimal = cert.r0 <= kMaxVerifiableR0;
    if (minimal) {
        const auto first = find_r0(LucasParams(cert.t), cert.d, cert.r0.get_ui());
        minimal = first && BigInt{*first} == cert.r0;
    }
    check("r0-minimal", minimal, "no smaller odd index has d | u_j");

    const bool p_mod4 = mod_floor(cert.p, 4) == 1;
    check("p-mod-4", p_mod4, "p mod 4 = " + to_decimal(mod_floor(cert.p, 4)));

    const bool deterministic = cert.p < kDeterministicPrimeLimit;
    const bool prime = deterministic && is_probable_prime(cert.p);
    check("p-prime", prime,
          deterministic ? (prime ? "strong-pseudoprime test to 13 bases (proof below 3.3e24)" : "composite")
                        : "p exceeds the deterministic primality range");
    if (cert.p < 2) return;

    const auto [u_mod_p, v_mod_p] = uv_mod(cert.t, cert.r0, cert.p);
    check("p-divides-v", v_mod_p == 0, "v_r0 mod p = " + to_decimal(v_mod_p));
    if (!prime) return;
    const int symbol = jacobi_symbol(mod_floor(cert.d * u_mod_p, cert.p), cert.p);
    check("nonresidue", symbol == -1, "(d u_r0 / p) = " + std::to_string(symbol));
}

void verify_petho(const UniquenessCertificate& cert, VerifyResult& out) {
    auto check = [&](std::string name, bool ok, std::string detail) {
        out.transcript.push_back({std::move(name), ok, std::move(detail)});
        return ok;
    };
    const auto expected = petho_certificate();
    if (!check("petho-fields", cert == expected, "petho-parity applies only to n=4, d=2, t=2, r0=7, p=2")) return;

    const QuadInvariant inv = quad_invariant(cert.n);
    check("quadratic-invariant", inv.d == cert.d, "4^2 + 16 = " + to_decimal(inv.d) + " * " + to_decimal(inv.y) + "^2");

    const auto fund = fundamental_unit(QuadraticField(cert.d));
    check("fundamental-unit", fund.trace == cert.t && fund.norm == -1,
          fund.elem.to_string() + ", trace " + to_decimal(fund.trace) + ", norm " + std::to_string(fund.norm));

    const LucasParams params(cert.t);
    const BigInt u1 = u_term(params, 1), u7 = u_term(params, 7);
    check("petho-squares", u1 == 1 && u7 == 169,
          "u_1 = " + to_decimal(u1) + " = 1^2, u_7 = " + to_decimal(u7) +
              " = 13^2; Petho: these are the only squares (external axiom)");

    // Orbit of (u_j, u_{j+1}) mod p from (0, 1); every odd-index entry must be nonzero.
    bool odd_terms_odd = true;
    BigInt a = 0, b = 1;
    unsigned long j = 0;
    do {
        if (j % 2 == 1 && a == 0) odd_terms_odd = false;
        BigInt c = mod_floor(cert.t * b + a, cert.p);
        a = std::move(b);
        b = std::move(c);
        ++j;
    } while (!(a == 0 && b == 1) || j % 2 == 1);
    check("parity", odd_terms_odd,
          "odd-index u_j are odd (period " + std::to_string(j) + " mod 2), so u_1 u_s = 2 k^2 is impossible");

    const IsoResult partner = fields_equal(4, 956);
    check("partner", partner.equal, "K_4 = K_956 via alpha = " + partner.alpha->to_string());
    const QuadraticField field(2);
    const QuadInvariant inv956 = quad_invariant(956);
    const auto power = express_as_unit_power(QuadInt(field, 956 / 2, inv956.y / 2), fund);
    check("partner-exponent", power && power->sign == 1 && BigInt{power->exponent} == cert.r0,
          "(956 + 676 sqrt 2)/4 = eps^" + (power ? std::to_string(power->exponent) : std::string("?")));
}

}  // namespace

VerifyResult verify_certificate(const UniquenessCertificate& cert) {
    VerifyResult out;
    out.transcript.push_back({"version", cert.version == 1, "version " + std::to_string(cert.version)});
    if (cert.version == 1) {
        if (cert.kind == CertKind::CohnNonresidue) verify_cohn(cert, out);
        else verify_petho(cert, out);
    }
    out.accepted = std::all_of(out.transcript.begin(), out.transcript.end(), [](const CheckLine& c) { return c.passed; });
    if (out.accepted) {
        out.conclusion = cert.kind == CertKind::CohnNonresidue
                             ? "no positive integer m != " + to_decimal(cert.n) + " has K_m = K_" + to_decimal(cert.n)
                             : "K_l = K_4 only for l in {4, 956}";
    } else {
        out.conclusion = "certificate rejected";
    }
    return out;
}

}  // namespace sqf
