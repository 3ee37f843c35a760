#include "sqf/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sqf {

namespace {

constexpr std::array<unsigned, 13> kWitnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

std::vector<std::uint64_t> sieve_upto(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> primes = sieve_upto(kDefaultTrialBound);
    return primes;
}

bool strong_probable_prime(const BigInt& n, const BigInt& odd_part, unsigned twos, unsigned base) {
    const BigInt n_minus_1 = n - 1;
    BigInt x;
    const BigInt a{base};
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) return true;
    for (unsigned i = 1; i < twos; ++i) {
        x = (x * x) % n;
        if (x == n_minus_1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or nullopt when
// the iteration budget runs out.
std::optional<BigInt> pollard_brent(const BigInt& n, std::uint64_t budget) {
    if (mpz_even_p(n.get_mpz_t())) return BigInt{2};
    for (unsigned long c = 1; c <= 8; ++c) {
        BigInt y = 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1, spent = 0;
        constexpr std::uint64_t batch = 128;
        auto f = [&](const BigInt& v) { return BigInt((v * v + c) % n); };
        while (g == 1 && spent < budget) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = f(y);
                    BigInt diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = gcd(q, n);
                k += lim;
                spent += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Batch overshot; step back one at a time.
            do {
                ys = f(ys);
                g = gcd(BigInt(abs(x - ys)), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return std::nullopt;
}

void split_cofactor(const BigInt& n, std::uint64_t budget, std::map<BigInt, unsigned>& primes,
                    std::vector<BigInt>& stuck, unsigned multiplicity) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        primes[n] += multiplicity;
        return;
    }
    if (auto root = exact_sqrt(n)) {
        split_cofactor(*root, budget, primes, stuck, multiplicity * 2);
        return;
    }
    auto factor = pollard_brent(n, budget);
    if (!factor) {
        for (unsigned i = 0; i < multiplicity; ++i) stuck.push_back(n);
        return;
    }
    const BigInt other = n / *factor;
    split_cofactor(*factor, budget, primes, stuck, multiplicity);
    split_cofactor(other, budget, primes, stuck, multiplicity);
}

}  // namespace

BigInt Factorization::recompose() const {
    BigInt acc = 1;
    for (const auto& pp : factors) {
        BigInt power;
        mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        acc *= power;
    }
    for (const auto& c : cofactors) acc *= c;
    return acc;
}

BigInt isqrt(const BigInt& v) {
    if (v < 0) throw std::domain_error("isqrt: negative input");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

std::optional<BigInt> exact_sqrt(const BigInt& v) {
    if (v < 0) return std::nullopt;
    BigInt r, rem;
    mpz_sqrtrem(r.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return r;
}

bool is_perfect_square(const BigInt& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

std::pair<BigInt, BigInt> squarefree_part(const BigInt& v) {
    if (v <= 0) throw std::domain_error("squarefree_part: input must be positive");
    const auto fac = factorize(v);
    if (!fac.complete) throw std::runtime_error("squarefree_part: factorization incomplete");
    BigInt d = 1, c = 1;
    for (const auto& [p, e] : fac.factors) {
        if (e % 2) d *= p;
        BigInt power;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e / 2);
        c *= power;
    }
    return {d, c};
}

std::pair<BigInt, BigInt> fourth_power_free_part(const BigInt& v) {
    if (v <= 0) throw std::domain_error("fourth_power_free_part: input must be positive");
    const auto fac = factorize(v);
    if (!fac.complete) throw std::runtime_error("fourth_power_free_part: factorization incomplete");
    BigInt r = 1, s = 1;
    for (const auto& [p, e] : fac.factors) {
        BigInt power;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e % 4);
        r *= power;
        mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e / 4);
        s *= power;
    }
    return {r, s};
}

int jacobi_symbol(const BigInt& a, const BigInt& n) {
    if (n < 1 || mpz_even_p(n.get_mpz_t())) throw std::domain_error("jacobi_symbol: modulus must be odd and positive");
    return mpz_jacobi(a.get_mpz_t(), n.get_mpz_t());
}

bool is_probable_prime(const BigInt& v) {
    if (v < 2) return false;
    for (unsigned p : kWitnesses) {
        if (v == p) return true;
        if (mpz_divisible_ui_p(v.get_mpz_t(), p)) return false;
    }
    BigInt odd_part = v - 1;
    unsigned twos = 0;
    while (mpz_even_p(odd_part.get_mpz_t())) {
        odd_part >>= 1;
        ++twos;
    }
    return std::all_of(kWitnesses.begin(), kWitnesses.end(),
                       [&](unsigned base) { return strong_probable_prime(v, odd_part, twos, base); });
}

Factorization factorize(const BigInt& v, std::uint64_t effort_bound) {
    if (v < 1) throw std::domain_error("factorize: input must be positive");
    Factorization out;
    out.value = v;
    std::map<BigInt, unsigned> found;
    BigInt rem = v;

    auto divide_out = [&](std::uint64_t p) {
        if (!mpz_divisible_ui_p(rem.get_mpz_t(), p)) return;
        unsigned e = 0;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
            ++e;
        }
        found[BigInt{static_cast<unsigned long>(p)}] += e;
    };

    // Trial division; stops early once p^2 exceeds the remaining cofactor.
    bool exhausted = false;
    auto trial = [&](const std::vector<std::uint64_t>& primes) {
        for (std::uint64_t p : primes) {
            if (p > effort_bound) return;
            if (mpz_cmp_ui(rem.get_mpz_t(), static_cast<unsigned long>(p * p)) < 0) {
                exhausted = true;
                return;
            }
            divide_out(p);
        }
    };
    trial(small_primes());
    for (std::uint64_t lo = kDefaultTrialBound + 1; !exhausted && lo <= effort_bound;) {
        const std::uint64_t hi = std::min<std::uint64_t>(effort_bound + 1, lo + (1u << 22));
        trial(primes_in_range(lo, hi));
        lo = hi;
    }

    if (rem != 1) {
        if (exhausted) {
            found[rem] += 1;
        } else {
            split_cofactor(rem, std::max<std::uint64_t>(effort_bound, 1u << 16), found, out.cofactors, 1);
        }
    }
    for (auto& [p, e] : found) out.factors.push_back({p, e});
    std::sort(out.cofactors.begin(), out.cofactors.end());
    out.complete = out.cofactors.empty();
    return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint64_t> out;
    if (hi <= lo || hi <= 2) return out;
    lo = std::max<std::uint64_t>(lo, 2);
    std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi)));
    while (root * root < hi) ++root;
    const auto base = root <= kDefaultTrialBound ? small_primes() : sieve_upto(root);
    std::vector<bool> composite(hi - lo, false);
    for (std::uint64_t p : base) {
        if (p * p >= hi) break;
        std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
        for (std::uint64_t j = start; j < hi; j += p) composite[j - lo] = true;
    }
    for (std::uint64_t i = lo; i < hi; ++i)
        if (!composite[i - lo]) out.push_back(i);
    return out;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

BigInt parse_bigint(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_bigint: empty string");
    const std::size_t start = text[0] == '-' ? 1 : 0;
    if (start == text.size() ||
        !std::all_of(text.begin() + static_cast<long>(start), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw std::invalid_argument("parse_bigint: not a base-10 integer: " + text);
    return BigInt{text, 10};
}

std::string to_decimal(const BigInt& v) { return v.get_str(10); }

}  // namespace sqf
