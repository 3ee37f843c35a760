#include "sqf/isotest.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

namespace sqf {

namespace {

// Residues modulo the monic quartic f_n, coefficients of 1, x, x^2, x^3.
using Residue = std::array<BigInt, 4>;

class QuarticRing {
public:
    explicit QuarticRing(const BigInt& n) : n_(n) {}

    Residue constant(const BigInt& c) const { return {c, 0, 0, 0}; }
    Residue linear(const BigInt& p, const BigInt& q) const { return {q, p, 0, 0}; }  // p*x + q

    Residue add(const Residue& x, const Residue& y) const {
        Residue r;
        for (std::size_t i = 0; i < 4; ++i) r[i] = x[i] + y[i];
        return r;
    }

    Residue mul(const Residue& x, const Residue& y) const {
        std::array<BigInt, 7> full;
        for (auto& c : full) c = 0;
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) full[i + j] += x[i] * y[j];
        // x^4 = n x^3 + 6 x^2 - n x - 1
        for (std::size_t k = 6; k >= 4; --k) {
            const BigInt c = full[k];
            full[k] = 0;
            full[k - 1] += n_ * c;
            full[k - 2] += 6 * c;
            full[k - 3] -= n_ * c;
            full[k - 4] -= c;
        }
        return {full[0], full[1], full[2], full[3]};
    }

    Residue pow(Residue base, unsigned e) const {
        Residue r = constant(1);
        while (e--) r = mul(r, base);
        return r;
    }

private:
    BigInt n_;
};

// 2x2 integer matrix [[p, q], [r, s]] acting as x -> (p x + q)/(r x + s).
using Mobius = std::array<long, 4>;

Mobius compose(const Mobius& f, const Mobius& g) {
    return {f[0] * g[0] + f[1] * g[2], f[0] * g[1] + f[1] * g[3], f[2] * g[0] + f[3] * g[2],
            f[2] * g[1] + f[3] * g[3]};
}

bool proportional(const Mobius& f, const Mobius& g) {
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (f[i] * g[j] != f[j] * g[i]) return false;
    return true;
}

// (r x + s)^4 f((p x + q)/(r x + s)) reduced modulo f.
bool maps_root_to_root(const QuarticRing& ring, const QuarticPolynomial& f, const Mobius& m) {
    const Residue num = ring.linear(m[0], m[1]);
    const Residue den = ring.linear(m[2], m[3]);
    Residue total = ring.constant(0);
    for (unsigned k = 0; k <= 4; ++k) {
        const BigInt& c = f.coeffs[4 - k];  // coefficient of X^k
        total = ring.add(total, ring.mul(ring.constant(c), ring.mul(ring.pow(num, k), ring.pow(den, 4 - k))));
    }
    return std::all_of(total.begin(), total.end(), [](const BigInt& c) { return c == 0; });
}

}  // namespace

void validate_index(const BigInt& n) {
    if (n < 1) throw std::invalid_argument("index must be a positive integer (K_{-n} = K_n)");
    if (n == 3) throw std::invalid_argument("index 3 is excluded: 3^2 + 16 is a square");
}

QuadInvariant quad_invariant(const BigInt& n) {
    validate_index(n);
    auto [d, y] = squarefree_part(n * n + 16);
    return {n, d, y};
}

QuarticPolynomial::QuarticPolynomial(const BigInt& n_) : n(n_), coeffs{1, -n_, -6, n_, 1} {}

std::string to_string(IsoStage s) {
    switch (s) {
        case IsoStage::Square: return "square";
        case IsoStage::DifferentD: return "different-d";
        case IsoStage::NonSquare: return "non-square";
    }
    return "non-square";
}

IsoResult fields_equal(const BigInt& m, const BigInt& n) {
    IsoResult res;
    res.inv_m = quad_invariant(m);
    res.inv_n = quad_invariant(n);
    if (res.inv_m.d != res.inv_n.d) {
        res.stage = IsoStage::DifferentD;
        return res;
    }
    const QuadraticField field(res.inv_n.d);
    const BigInt& d = field.d();
    const BigInt& x = res.inv_m.y;
    const BigInt& y = res.inv_n.y;
    const QuadInt alpha = QuadInt::from_integer(field, x * y * d) * QuadInt::from_parts(field, m, x) *
                          QuadInt::from_parts(field, n, y);
    res.alpha = alpha;
    res.witness = sqrt_in_field(alpha);
    res.equal = res.witness.has_value();
    res.stage = res.equal ? IsoStage::Square : IsoStage::NonSquare;
    return res;
}

bool galois_orbit_check(const BigInt& n) {
    validate_index(n);
    const QuarticPolynomial f(n);
    const QuarticRing ring(n);
    const Mobius sigma{1, -1, 1, 1};   // (rho - 1)/(rho + 1)
    const Mobius sigma2{0, -1, 1, 0};  // -1/rho
    const Mobius sigma3{1, 1, -1, 1};  // (1 + rho)/(1 - rho)
    const Mobius identity{1, 0, 0, 1};

    for (const auto& m : {sigma, sigma2, sigma3})
        if (!maps_root_to_root(ring, f, m)) return false;
    return proportional(compose(sigma, sigma), sigma2) && proportional(compose(sigma, sigma2), sigma3) &&
           proportional(compose(sigma, sigma3), identity) && !proportional(sigma, identity) &&
           !proportional(sigma2, identity);
}

std::string to_string(HypothesisCase c) {
    switch (c) {
        case HypothesisCase::A: return "A";
        case HypothesisCase::B: return "B";
        case HypothesisCase::None: return "NONE";
    }
    return "NONE";
}

HypothesisReport theorem_hypotheses(const BigInt& n) {
    const QuadInvariant inv = quad_invariant(n);
    const auto unit = fundamental_unit(QuadraticField(inv.d));
    const bool odd = mpz_odd_p(unit.trace.get_mpz_t()) != 0;
    HypothesisCase which = HypothesisCase::None;
    if (mod_floor(n, 4) == 2) which = HypothesisCase::A;
    else if (mod_floor(n, 16) == 8 && odd) which = HypothesisCase::B;
    return {n, which, inv.d, inv.y, unit.trace, odd, unit.norm, unit.elem};
}

std::vector<std::pair<unsigned long, unsigned long>> duplicate_search(unsigned long limit, unsigned workers) {
    std::vector<BigInt> d_of(limit + 1);
    workers = std::max(1u, workers);
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (unsigned long n = 1 + w; n <= limit; n += workers)
                    if (n != 3) d_of[n] = quad_invariant(BigInt{n}).d;
            });
        }
    }

    std::map<BigInt, std::vector<unsigned long>> buckets;
    for (unsigned long n = 1; n <= limit; ++n)
        if (n != 3) buckets[d_of[n]].push_back(n);

    std::vector<std::pair<unsigned long, unsigned long>> out;
    for (const auto& [d, members] : buckets) {
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j)
                if (fields_equal(BigInt{members[i]}, BigInt{members[j]}).equal)
                    out.emplace_back(members[i], members[j]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace sqf
