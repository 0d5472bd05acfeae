#include "congr/qexp.hpp"

#include <algorithm>
#include <thread>

#include "congr/errors.hpp"
#include "congr/parallel.hpp"

namespace congr {

const mpq_class& QExpansion::a(long n) const {
    if (n < 0 || n > truncation()) throw OutOfRange("QExpansion: index " + std::to_string(n) + " beyond truncation");
    return coeffs[static_cast<size_t>(n)];
}

bool QExpansion::is_integral() const {
    for (const auto& c : coeffs)
        if (c.get_den() != 1) return false;
    return true;
}

namespace {

// Dense integer series product c = a*b truncated to N, parallel over output blocks.
std::vector<mpz_class> mul_z(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b, long N) {
    std::vector<mpz_class> c(static_cast<size_t>(N) + 1);
    parallel_for_blocks(N + 1, [&](long lo, long hi) {
        mpz_class acc, t;
        for (long n = lo; n < hi; ++n) {
            acc = 0;
            long imax = std::min<long>(n, static_cast<long>(a.size()) - 1);
            for (long i = std::max<long>(0, n - (static_cast<long>(b.size()) - 1)); i <= imax; ++i) {
                if (a[i] == 0) continue;
                t = a[i] * b[n - i];
                acc += t;
            }
            c[n] = acc;
        }
    });
    return c;
}

std::vector<mpz_class> to_z(const QExpansion& f) {
    std::vector<mpz_class> v(f.coeffs.size());
    for (size_t i = 0; i < v.size(); ++i) {
        if (f.coeffs[i].get_den() != 1) throw NonIntegralCoefficient("integral series expected");
        v[i] = f.coeffs[i].get_num();
    }
    return v;
}

}  // namespace

QExpansion mul(const QExpansion& a, const QExpansion& b) {
    long N = std::min(a.truncation(), b.truncation());
    QExpansion r;
    r.weight = a.weight + b.weight;
    r.level = std::max(a.level, b.level);
    r.character = a.character;  // trivial*trivial in all internal uses
    if (a.is_integral() && b.is_integral()) {
        auto c = mul_z(to_z(a), to_z(b), N);
        r.coeffs.assign(c.begin(), c.end());
        return r;
    }
    r.coeffs.assign(static_cast<size_t>(N) + 1, mpq_class(0));
    for (long n = 0; n <= N; ++n) {
        mpq_class acc = 0;
        for (long i = 0; i <= n; ++i) acc += a.coeffs[i] * b.coeffs[n - i];
        r.coeffs[n] = acc;
    }
    return r;
}

QExpansion eisenstein(long k, long N) {
    if (k < 4 || k % 2 != 0) throw BadWeight("eisenstein: even k >= 4 required");
    QExpansion e;
    e.weight = k;
    e.level = 1;
    e.coeffs.assign(static_cast<size_t>(N) + 1, mpq_class(0));
    e.coeffs[0] = 1;
    mpq_class c = mpq_class(-2 * k) / bernoulli(static_cast<unsigned long>(k));
    c.canonicalize();
    // sigma_{k-1} by divisor accumulation
    std::vector<mpz_class> sigma(static_cast<size_t>(N) + 1);
    for (long d = 1; d <= N; ++d) {
        mpz_class dk;
        mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k - 1));
        for (long m = d; m <= N; m += d) sigma[m] += dk;
    }
    for (long n = 1; n <= N; ++n) e.coeffs[n] = c * mpq_class(sigma[n]);
    return e;
}

QExpansion delta(long N) {
    if (N < 1) N = 1;
    // eta^3 = sum (-1)^k (2k+1) q^{k(k+1)/2} (Jacobi), Delta = q * (eta^3)^8
    std::vector<mpz_class> e3(static_cast<size_t>(N) + 1);
    for (long k = 0;; ++k) {
        long idx = k * (k + 1) / 2;
        if (idx > N) break;
        e3[idx] = (k % 2 == 0) ? (2 * k + 1) : -(2 * k + 1);
    }
    auto e6 = mul_z(e3, e3, N);
    auto e12 = mul_z(e6, e6, N);
    auto e24 = mul_z(e12, e12, N);
    QExpansion d;
    d.weight = 12;
    d.level = 1;
    d.coeffs.assign(static_cast<size_t>(N) + 1, mpq_class(0));
    for (long n = 1; n <= N; ++n) d.coeffs[n] = e24[n - 1];
    return d;
}

QExpansion newform_s26(long N) {
    if (N < 6) throw Error("newform_s26: N >= 6 required");
    QExpansion e4 = eisenstein(4, N);
    QExpansion e6 = eisenstein(6, N);
    QExpansion f = mul(mul(delta(N), mul(e4, e4)), e6);
    f.weight = 26;
    f.level = 1;
    return f;
}

QExpansion eigenform_level1(long weight, long N) {
    static const long dim1[] = {12, 16, 18, 20, 22, 26};
    if (std::find(std::begin(dim1), std::end(dim1), weight) == std::end(dim1))
        throw Unsupported("eigenform_level1: dim S_" + std::to_string(weight) + "(SL2(Z)) != 1");
    if (weight == 26) return newform_s26(N);
    QExpansion f = delta(N);
    if (weight > 12) f = mul(f, eisenstein(weight - 12, N));
    f.weight = weight;
    f.level = 1;
    return f;
}

mpq_class hecke_eigenvalue(const QExpansion& f, long m) {
    if (!f.is_normalized_eigenform()) throw Error("hecke_eigenvalue: form not normalized");
    return f.a(m);
}

SatakeLocal satake(const QExpansion& f, const mpz_class& p) {
    if (!mpz_fits_slong_p(p.get_mpz_t()) || mpz_get_si(p.get_mpz_t()) > f.truncation())
        throw OutOfRange("satake: p beyond truncation");
    long pl = mpz_get_si(p.get_mpz_t());
    SatakeLocal s;
    s.p = p;
    mpq_class ap = f.a(pl);
    if (ap.get_den() != 1) throw NonIntegralCoefficient("satake: non-integral a_p");
    s.trace = ap.get_num();
    if (f.level % pl == 0) {
        s.norm = 0;
    } else {
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(f.weight - 1));
        s.norm = f.character(p) * pk;
    }
    return s;
}

std::vector<mpz_class> reduce_mod(const QExpansion& f, const mpz_class& ell, unsigned r) {
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), ell.get_mpz_t(), r);
    std::vector<mpz_class> out(f.coeffs.size());
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        const mpq_class& c = f.coeffs[i];
        if (mpz_divisible_p(c.get_den().get_mpz_t(), ell.get_mpz_t()))
            throw NonIntegralCoefficient("reduce_mod: denominator divisible by ell at index " + std::to_string(i));
        mpz_class deninv;
        if (!mpz_invert(deninv.get_mpz_t(), c.get_den().get_mpz_t(), mod.get_mpz_t()))
            throw NonIntegralCoefficient("reduce_mod: denominator not invertible");
        out[i] = c.get_num() * deninv % mod;
        if (out[i] < 0) out[i] += mod;
    }
    return out;
}

}  // namespace congr
