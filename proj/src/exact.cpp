#include "congr/exact.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace congr {

// ---------------------------------------------------------------------------
// Primality and factorization
// ---------------------------------------------------------------------------

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic for all n < 2^64 with this base set.
bool mr_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

const std::vector<uint32_t>& small_primes() {
    static std::vector<uint32_t> primes = [] {
        const uint32_t limit = 1000000;
        std::vector<bool> sieve(limit + 1, true);
        std::vector<uint32_t> out;
        for (uint32_t i = 2; i <= limit; ++i) {
            if (sieve[i]) {
                out.push_back(i);
                for (uint64_t j = static_cast<uint64_t>(i) * i; j <= limit; j += i) sieve[j] = false;
            }
        }
        return out;
    }();
    return primes;
}

// Pollard rho with Brent cycle detection; n odd composite, no factors < 10^6.
mpz_class rho_brent(const mpz_class& n) {
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0x5eedul);
    while (true) {
        mpz_class y = rng.get_z_range(n - 3) + 2;
        mpz_class c = rng.get_z_range(n - 2) + 1;
        mpz_class x = y, q = 1, g = 1, ys = y;
        const long m = 128;
        long r = 1;
        while (g == 1) {
            x = y;
            for (long i = 0; i < r; ++i) y = (y * y + c) % n;
            long k = 0;
            while (k < r && g == 1) {
                ys = y;
                long lim = std::min(m, r - k);
                for (long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * (x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                mpz_class d = x - ys;
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(mpz_class n, std::map<mpz_class, unsigned>& acc) {
    if (n == 1) return;
    if (is_prime(n)) {
        acc[n] += 1;
        return;
    }
    mpz_class d = rho_brent(n);
    factor_rec(d, acc);
    factor_rec(n / d, acc);
}

}  // namespace

bool is_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t()) && sizeof(unsigned long) == 8) {
        return mr_u64(mpz_get_ui(n.get_mpz_t()));
    }
    return mpz_probab_prime_p(n.get_mpz_t(), 64) > 0;
}

Factorization factor(const mpz_class& n) {
    if (n < 1) throw Error("factor: n must be >= 1");
    std::map<mpz_class, unsigned> acc;
    mpz_class rest = n;
    for (uint32_t p : small_primes()) {
        if (mpz_class(p) * p > rest) break;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            acc[p] += 1;
            mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        }
    }
    if (rest > 1) factor_rec(rest, acc);
    Factorization f;
    for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
    return f;
}

mpz_class Factorization::value() const {
    mpz_class v = 1;
    for (auto& [p, e] : factors) {
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        v *= pe;
    }
    return v;
}

std::string Factorization::str() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [p, e] : factors) {
        if (!first) os << " * ";
        first = false;
        os << p;
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

long val_p(const mpq_class& q, const mpz_class& p) {
    if (q == 0) throw ZeroInput("val_p: zero input");
    long v = 0;
    mpz_class num = q.get_num(), den = q.get_den();
    while (mpz_divisible_p(num.get_mpz_t(), p.get_mpz_t())) {
        num /= p;
        ++v;
    }
    while (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t())) {
        den /= p;
        --v;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Dirichlet characters
// ---------------------------------------------------------------------------

int kronecker_symbol(const mpz_class& a, const mpz_class& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

DirichletCharacter DirichletCharacter::kronecker(long disc) {
    // fundamental discriminant: disc = 1 mod 4 squarefree, or 4m with m = 2,3 mod 4 squarefree
    long d = disc;
    bool ok = false;
    if (d % 4 == 1 || ((d % 4) + 4) % 4 == 1) {
        mpz_class ad = std::abs(d);
        ok = true;
        auto f = factor(ad);
        for (auto& [p, e] : f.factors)
            if (e > 1) ok = false;
    } else if (d % 4 == 0) {
        long m = d / 4;
        long r = ((m % 4) + 4) % 4;
        if (r == 2 || r == 3) {
            ok = true;
            auto f = factor(mpz_class(std::abs(m)));
            for (auto& [p, e] : f.factors)
                if (e > 1) ok = false;
        }
    }
    if (!ok || d == 1) throw Error("DirichletCharacter: not a fundamental discriminant");
    DirichletCharacter chi;
    chi.modulus = static_cast<unsigned long>(std::abs(d));
    chi.kronecker_disc = d;
    return chi;
}

bool DirichletCharacter::is_odd() const {
    if (is_trivial()) return false;
    return kronecker_disc < 0;
}

int DirichletCharacter::operator()(const mpz_class& n) const {
    if (is_trivial()) {
        mpz_class g;
        mpz_gcd_ui(g.get_mpz_t(), n.get_mpz_t(), modulus);
        return g == 1 ? 1 : 0;
    }
    return kronecker_symbol(mpz_class(kronecker_disc), n);
}

DirichletCharacter DirichletCharacter::power(long e) const {
    if (is_trivial()) return *this;
    long r = ((e % 2) + 2) % 2;
    if (r == 1) return *this;
    return DirichletCharacter::trivial(modulus);
}

std::string DirichletCharacter::str() const {
    if (is_trivial()) return modulus == 1 ? "1" : "triv mod " + std::to_string(modulus);
    return "kronecker(" + std::to_string(kronecker_disc) + ")";
}

// ---------------------------------------------------------------------------
// ExactScalar
// ---------------------------------------------------------------------------

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    rat *= o.rat;
    pi_exp += o.pi_exp;
    if (imaginary && o.imaginary) {
        rat = -rat;
        imaginary = false;
    } else if (o.imaginary) {
        imaginary = true;
    }
    if (sqrt_disc == o.sqrt_disc) {
        if (sqrt_disc != 0) rat *= mpz_class(sqrt_disc);
        sqrt_disc = 0;
    } else if (sqrt_disc == 0) {
        sqrt_disc = o.sqrt_disc;
    } else if (o.sqrt_disc != 0) {
        // sqrt(a)sqrt(b) = sqrt(ab) with the common square factor pulled out
        mpz_class g = gcd(mpz_class(sqrt_disc), mpz_class(o.sqrt_disc));
        rat *= g;
        sqrt_disc = static_cast<unsigned long>(mpz_get_ui(mpz_class(mpz_class(sqrt_disc) / g * (mpz_class(o.sqrt_disc) / g)).get_mpz_t()));
    }
    return *this;
}

mpq_class ExactScalar::val(const mpz_class& p) const {
    if (rat == 0) throw ZeroInput("ExactScalar::val: zero value");
    mpq_class v(val_p(rat, p));
    if (sqrt_disc != 0 && mpz_divisible_p(mpz_class(sqrt_disc).get_mpz_t(), p.get_mpz_t())) {
        v += mpq_class(1, 2);
    }
    return v;
}

Real ExactScalar::to_real(mpfr_prec_t prec) const {
    if (imaginary) throw Error("ExactScalar::to_real: imaginary value");
    Real v = Real::of(rat, prec);
    if (sqrt_disc != 0) v *= sqrt(Real::of(mpz_class(sqrt_disc), prec));
    if (pi_exp != 0) v *= Real::pi(prec).pow_si(pi_exp);
    return v;
}

std::string ExactScalar::str() const {
    std::ostringstream os;
    os << rat;
    if (imaginary) os << " * i";
    if (sqrt_disc != 0) os << " * sqrt(" << sqrt_disc << ")";
    if (pi_exp != 0) os << " * pi^" << pi_exp;
    return os.str();
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and Dirichlet L-values
// ---------------------------------------------------------------------------

const std::vector<mpq_class>& bernoulli_table(unsigned long n) {
    static std::vector<mpq_class> table = {mpq_class(1), mpq_class(-1, 2)};
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    if (table.size() > n) return table;
    // tangent numbers T_1..T_m by the zigzag triangle (integer arithmetic),
    // then B_{2k} = (-1)^{k-1} (2k) T_k / (4^k (4^k - 1))
    unsigned long m = (n + 2) / 2;
    std::vector<mpz_class> t(m + 1);
    t[1] = 1;
    for (unsigned long k = 2; k <= m; ++k) t[k] = t[k - 1] * (k - 1);
    for (unsigned long k = 2; k <= m; ++k)
        for (unsigned long j = k; j <= m; ++j) t[j] = t[j - 1] * (j - k) + t[j] * (j - k + 2);
    table.resize(2 * m + 1, mpq_class(0));
    table[0] = 1;
    table[1] = mpq_class(-1, 2);
    for (unsigned long k = 1; k <= m; ++k) {
        mpz_class fourk;
        mpz_ui_pow_ui(fourk.get_mpz_t(), 4, k);
        mpq_class b(t[k] * mpz_class(2 * k), fourk * (fourk - 1));
        b.canonicalize();
        table[2 * k] = (k % 2 == 1) ? b : -b;
    }
    return table;
}

mpq_class bernoulli(unsigned long n) { return bernoulli_table(n)[n]; }

mpq_class bernoulli_poly(unsigned long n, const mpq_class& x) {
    const auto& B = bernoulli_table(n);
    // B_n(x) = sum C(n,k) B_k x^{n-k}
    mpq_class res = 0;
    mpz_class binom = 1;
    mpq_class xpow = 1;
    // iterate k = n down to 0 so x powers build up
    std::vector<mpq_class> xp(n + 1);
    xp[0] = 1;
    for (unsigned long i = 1; i <= n; ++i) xp[i] = xp[i - 1] * x;
    for (unsigned long k = 0; k <= n; ++k) {
        if (k > 0) {
            binom *= (n - k + 1);
            mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), k);
        }
        res += mpq_class(binom) * B[k] * xp[n - k];
    }
    res.canonicalize();
    return res;
}

mpq_class gen_bernoulli(unsigned long n, const DirichletCharacter& chi) {
    if (n < 1) throw Error("gen_bernoulli: n >= 1 required");
    unsigned long f = chi.modulus;
    mpq_class s = 0;
    for (unsigned long a = 1; a <= f; ++a) {
        int c = chi(mpz_class(a));
        if (c == 0) continue;
        s += c * bernoulli_poly(n, mpq_class(a, f));
    }
    mpz_class fpow;
    mpz_ui_pow_ui(fpow.get_mpz_t(), f, n - 1);
    s *= fpow;
    s.canonicalize();
    return s;
}

ExactScalar dirichlet_L_critical(unsigned long j, const DirichletCharacter& chi) {
    if (j < 1) throw NotCritical("dirichlet_L_critical: j >= 1 required");
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), j);
    if (!chi.is_odd()) {
        if (j % 2 != 0) throw NotCritical("even character needs even j");
        // zeta(j) = (-1)^{j/2+1} B_j (2 pi)^j / (2 j!)
        mpq_class r = bernoulli(j);
        mpz_class two_j;
        mpz_ui_pow_ui(two_j.get_mpz_t(), 2, j);
        r *= two_j;
        r /= 2 * fact;
        if ((j / 2 + 1) % 2 == 1) r = -r;
        if (chi.modulus > 1) {
            // remove Euler factors at p | modulus
            auto f = factor(mpz_class(chi.modulus));
            for (auto& [p, e] : f.factors) {
                mpz_class pj;
                mpz_pow_ui(pj.get_mpz_t(), p.get_mpz_t(), j);
                r *= mpq_class(pj - 1, pj);
            }
        }
        r.canonicalize();
        return {r, 0, static_cast<long>(j), false};
    }
    if (j % 2 != 1) throw NotCritical("odd character needs odd j");
    // L(j, chi) = (-1)^{1+(j-1)/2} (2 pi / f)^j sqrt(f) B_{j,chi} / (2 j!)
    unsigned long f = chi.modulus;
    mpq_class r = gen_bernoulli(j, chi);
    mpz_class two_j, f_j;
    mpz_ui_pow_ui(two_j.get_mpz_t(), 2, j);
    mpz_ui_pow_ui(f_j.get_mpz_t(), f, j);
    r *= two_j;
    r /= mpq_class(f_j) * 2 * fact;
    if ((1 + (j - 1) / 2) % 2 == 1) r = -r;
    r.canonicalize();
    return {r, f, static_cast<long>(j), false};
}

// ---------------------------------------------------------------------------
// Continued-fraction recognition
// ---------------------------------------------------------------------------

namespace {

struct CfCut {
    mpq_class value;
    long quotient_digits;
};

// Continued fraction of num/den (den > 0); returns the convergent before the
// first partial quotient >= threshold, or nullopt.
std::optional<CfCut> cf_cut(mpz_class num, mpz_class den, const mpz_class& threshold) {
    bool neg = num < 0;
    if (neg) num = -num;
    // convergent recurrence h_i = a_i h_{i-1} + h_{i-2} with h_{-2} = 0, h_{-1} = 1
    // (and k_{-2} = 1, k_{-1} = 0); p/q tracks the last completed convergent
    mpz_class p_prev = 0, q_prev = 1, p = 1, q = 0;
    bool first = true;
    while (den != 0) {
        mpz_class a = num / den;
        mpz_class rem = num - a * den;
        // a huge partial quotient marks the cut, except at the degenerate 0/1
        // convergent (tiny values legitimately open with a large quotient)
        if (!first && a >= threshold && !(p == 0 && q == 1)) {
            mpq_class v(neg ? -p : p, q);
            v.canonicalize();
            return CfCut{v, static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10))};
        }
        mpz_class pn = a * p + p_prev;
        mpz_class qn = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = pn;
        q = qn;
        num = den;
        den = rem;
        first = false;
    }
    // terminated exactly: the value itself is the rational
    mpq_class v(neg ? -p : p, q);
    v.canonicalize();
    return CfCut{v, 0};
}

std::optional<CfCut> recognize_at(const Real& x, long digits, long max_den_digits) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Real scaled = x * Real::of(scale, x.prec());
    mpz_class num;
    mpfr_get_z(num.get_mpz_t(), scaled.raw(), MPFR_RNDN);
    mpz_class threshold;
    long texp = digits - 2 * max_den_digits - 10;
    if (texp < 6) texp = 6;
    mpz_ui_pow_ui(threshold.get_mpz_t(), 10, static_cast<unsigned long>(texp));
    auto cut = cf_cut(num, scale, threshold);
    if (!cut) return std::nullopt;
    mpz_class den_cap;
    mpz_ui_pow_ui(den_cap.get_mpz_t(), 10, static_cast<unsigned long>(max_den_digits));
    if (cut->value.get_den() >= den_cap) return std::nullopt;
    return cut;
}

}  // namespace

std::optional<Recognition> cf_recognize(const Real& x, long working_digits, long max_den_digits) {
    if (working_digits < 30) throw PrecisionTooLow("cf_recognize: working_digits >= 30 required");
    if (max_den_digits >= working_digits / 2)
        throw PrecisionTooLow("cf_recognize: max_den_digits must be < working_digits/2");
    if (!mpfr_number_p(x.raw())) throw PrecisionTooLow("cf_recognize: non-finite input");
    if (x.prec() < static_cast<mpfr_prec_t>(working_digits * 3.322))
        throw PrecisionTooLow("cf_recognize: input precision below working_digits");

    auto a = recognize_at(x, working_digits, max_den_digits);
    if (!a) return std::nullopt;
    auto b = recognize_at(x, working_digits - 20, max_den_digits);
    if (!b || a->value != b->value) return std::nullopt;
    return Recognition{a->value, a->quotient_digits};
}

}  // namespace congr
