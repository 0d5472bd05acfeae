#ifndef CONGR_REAL_HPP
#define CONGR_REAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

namespace congr {

// RAII wrapper around mpfr_t. Every value carries its own precision (bits);
// binary operations round to the larger of the two operand precisions.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept {
        mpfr_init2(x_, 2);
        mpfr_swap(x_, o.x_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    static Real of(double v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.x_, v, MPFR_RNDN);
        return r;
    }
    static Real of(long v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.x_, v, MPFR_RNDN);
        return r;
    }
    static Real of(const mpz_class& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.x_, v.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const mpq_class& v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.x_, v.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.x_, MPFR_RNDN);
        return r;
    }
    static Real euler(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_euler(r.x_, MPFR_RNDN);
        return r;
    }
    static Real ln2(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_log2(r.x_, MPFR_RNDN);
        return r;
    }
    static Real zeta_ui(unsigned long k, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_zeta_ui(r.x_, k, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(x_); }
    mpfr_ptr raw() { return x_; }
    mpfr_srcptr raw() const { return x_; }

    bool is_zero() const { return mpfr_zero_p(x_); }
    int sign() const { return mpfr_sgn(x_); }
    // log2 of |x| rounded up; INT_MIN-ish for zero.
    long mag_exp() const { return mpfr_zero_p(x_) ? -1000000000L : mpfr_get_exp(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.x_, x_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }
    Real& operator*=(long b) { mpfr_mul_si(x_, x_, b, MPFR_RNDN); return *this; }
    Real& operator/=(long b) { mpfr_div_si(x_, x_, b, MPFR_RNDN); return *this; }

    friend Real operator*(const Real& a, long b) {
        Real r(a.prec());
        mpfr_mul_si(r.x_, a.x_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, long b) {
        Real r(a.prec());
        mpfr_div_si(r.x_, a.x_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator+(const Real& a, long b) {
        Real r(a.prec());
        mpfr_add_si(r.x_, a.x_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, long b) {
        Real r(a.prec());
        mpfr_sub_si(r.x_, a.x_, b, MPFR_RNDN);
        return r;
    }
    friend Real operator-(long a, const Real& b) {
        Real r(b.prec());
        mpfr_si_sub(r.x_, a, b.x_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_); }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.x_, b.x_); }

    friend Real abs(const Real& a) {
        Real r(a.prec());
        mpfr_abs(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real sqrt(const Real& a) {
        Real r(a.prec());
        mpfr_sqrt(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real exp(const Real& a) {
        Real r(a.prec());
        mpfr_exp(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real log(const Real& a) {
        Real r(a.prec());
        mpfr_log(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real gamma(const Real& a) {
        Real r(a.prec());
        mpfr_gamma(r.x_, a.x_, MPFR_RNDN);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        mpfr_pow(r.x_, a.x_, b.x_, MPFR_RNDN);
        return r;
    }
    Real pow_si(long e) const {
        Real r(prec());
        mpfr_pow_si(r.x_, x_, e, MPFR_RNDN);
        return r;
    }

    // Decimal rendering with the given number of significant digits.
    std::string str(size_t digits = 20) const;

  private:
    mpfr_t x_;
};

// Minimal complex type over Real. MPC is not available on this system and the
// engine only needs field operations plus exp/log/pow and lngamma.
struct Complex {
    Real re, im;

    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Complex of(const Real& r) { return Complex(r, Real(r.prec())); }

    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
    bool is_real() const { return im.is_zero(); }
    long mag_exp() const { return std::max(re.mag_exp(), im.mag_exp()); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    Complex operator-() const { return {-re, -im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
    Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }
    Complex& operator*=(const Complex& b) { *this = *this * b; return *this; }

    friend Complex conj(const Complex& a) { return {a.re, -a.im}; }
    friend Real abs(const Complex& a) {
        Real r(a.prec());
        mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
        return r;
    }

    Complex& operator*=(const Real& b) { re *= b; im *= b; return *this; }
    Complex& operator/=(const Real& b) { re /= b; im /= b; return *this; }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator*(const Real& a, const Complex& b) { return {b.re * a, b.im * a}; }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
};

Complex exp(const Complex& z);
Complex log(const Complex& z);
// z^w = exp(w log z), principal branch.
Complex pow(const Complex& z, const Complex& w);
Complex pow(const Real& base, const Complex& expo);
// log Gamma(z), principal branch, via Stirling with upward shifts.
Complex lngamma(const Complex& z);
Complex cgamma(const Complex& z);

}  // namespace congr

#endif
