#include "congr/real.hpp"

#include <cstdlib>
#include <stdexcept>

#include "congr/exact.hpp"

namespace congr {

std::string Real::str(size_t digits) const {
    if (mpfr_nan_p(x_)) return "nan";
    if (mpfr_inf_p(x_)) return sign() > 0 ? "inf" : "-inf";
    if (is_zero()) return "0";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, x_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sgn;
    if (mant[0] == '-') {
        sgn = "-";
        mant = mant.substr(1);
    }
    // strip trailing zeros but keep at least one digit
    size_t last = mant.find_last_not_of('0');
    mant = mant.substr(0, std::max<size_t>(last + 1, 1));
    std::string out = sgn + mant.substr(0, 1);
    if (mant.size() > 1) out += "." + mant.substr(1);
    out += "e" + std::to_string(static_cast<long>(e - 1));
    return out;
}

Complex exp(const Complex& z) {
    mpfr_prec_t p = z.prec();
    Real ex(p), c(p), s(p);
    mpfr_exp(ex.raw(), z.re.raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), z.im.raw(), MPFR_RNDN);
    return {ex * c, ex * s};
}

Complex log(const Complex& z) {
    mpfr_prec_t p = z.prec();
    Real m(p), a(p);
    mpfr_hypot(m.raw(), z.re.raw(), z.im.raw(), MPFR_RNDN);
    mpfr_log(m.raw(), m.raw(), MPFR_RNDN);
    mpfr_atan2(a.raw(), z.im.raw(), z.re.raw(), MPFR_RNDN);
    return {m, a};
}

Complex pow(const Complex& z, const Complex& w) {
    if (w.is_real() && z.is_real() && z.re.sign() > 0) return Complex::of(pow(z.re, w.re));
    return exp(w * log(z));
}

Complex pow(const Real& base, const Complex& expo) {
    if (expo.is_real()) return Complex::of(pow(base, expo.re));
    return pow(Complex::of(base), expo);
}

namespace {

// Stirling series once the argument is far enough right for the wanted precision.
Complex lngamma_stirling(const Complex& z, mpfr_prec_t prec) {
    Complex w(z);
    Complex corr(prec);  // sum of log(z + j) for the shift
    Real bound = Real::of((static_cast<double>(prec) + 30.0) * 0.6931 / 6.2832 + 10.0, 64);
    while (w.re < bound) {
        corr += log(w);
        w.re += Real::of(1l, prec);
    }
    Complex lz = log(w);
    Complex half(Real::of(mpq_class(1, 2), prec), Real(prec));
    Complex res = (w - half) * lz - w;
    Real two_pi = Real::pi(prec) * 2l;
    res.re += log(two_pi) / 2l;
    // sum B_{2k} / (2k(2k-1) w^{2k-1})
    Complex w2 = w * w;
    Complex wpow = w;  // w^{2k-1}
    for (unsigned long k = 1;; ++k) {
        if (k > 1) wpow *= w2;
        mpq_class c = bernoulli(2 * k) / mpq_class(2 * k * (2 * k - 1));
        Complex term = Complex::of(Real::of(c, prec)) / wpow;
        res += term;
        if (term.mag_exp() < -(prec + 16)) break;
        if (k > 4 * static_cast<unsigned long>(prec)) throw Error("lngamma: Stirling did not converge");
    }
    return res - corr;
}

}  // namespace

Complex lngamma(const Complex& z) {
    mpfr_prec_t p = z.prec();
    if (z.is_real()) {
        if (z.re.sign() > 0) {
            Real r(p);
            mpfr_lngamma(r.raw(), z.re.raw(), MPFR_RNDN);
            return Complex::of(r);
        }
        // negative real axis: caller must avoid poles; fall through via reflection
    }
    Real half = Real::of(mpq_class(1, 2), p);
    if (z.re < half) {
        // reflection: log pi - log sin(pi z) - lngamma(1 - z); branch only matters mod 2*pi*i
        Complex one(Real::of(1l, p), Real(p));
        Complex piz = Complex(Real::pi(p), Real(p)) * z;
        Real sr(p), cr(p), sh(p), ch(p);
        mpfr_sin_cos(sr.raw(), cr.raw(), piz.re.raw(), MPFR_RNDN);
        mpfr_sinh_cosh(sh.raw(), ch.raw(), piz.im.raw(), MPFR_RNDN);
        Complex sinpiz(sr * ch, cr * sh);
        return Complex::of(log(Real::pi(p))) - log(sinpiz) - lngamma(one - z);
    }
    return lngamma_stirling(z, p);
}

Complex cgamma(const Complex& z) {
    if (z.is_real() && z.re.sign() > 0) {
        return Complex::of(gamma(z.re));
    }
    return exp(lngamma(z));
}

}  // namespace congr
