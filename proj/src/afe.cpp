#include "congr/afe.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "congr/errors.hpp"
#include "congr/parallel.hpp"

namespace congr {

long afe_coefficient_cutoff(const AnalyticCore& core, long digits, double coeff_exp) {
    const double d = static_cast<double>(core.mu.size());
    const double sqN = std::sqrt(mpz_get_d(core.conductor.get_mpz_t()));
    long n = 16;
    while (true) {
        double t = static_cast<double>(n) / sqN;
        double decay_digits = d * M_PI * std::pow(t, 2.0 / d) / std::log(10.0);
        double amp = coeff_exp * std::log10(static_cast<double>(n)) + 2.0 * std::log10(static_cast<double>(n) + 1.0);
        if (decay_digits >= static_cast<double>(digits) + 14.0 + amp) break;
        n += 1 + n / 16;
        if (n > 50000000) throw NeedMoreCoefficients("afe: cutoff estimate diverged");
    }
    // headroom for split parameters A <= 3/2: the half evaluated at n/(A sqrt N)
    // needs its tail certified at proportionally larger n
    return (3 * n) / 2 + 4;
}

mpfr_prec_t afe_working_prec(long digits, double coeff_log10_max) {
    double wd = 2.0 * (static_cast<double>(digits) + 15.0) + 2.0 * std::max(0.0, coeff_log10_max) + 10.0;
    return static_cast<mpfr_prec_t>(wd * 3.3220) + 16;
}

namespace {

constexpr int kConsecutiveSmall = 4;

// ---------------------------------------------------------------------------
// scalar adapters
// ---------------------------------------------------------------------------

template <class T>
struct STraits;

template <>
struct STraits<Real> {
    static Real from_real(const Real& r) { return r; }
    static bool integer_value(const Real& s, long& out) {
        if (!mpfr_integer_p(s.raw()) || !mpfr_fits_slong_p(s.raw(), MPFR_RNDN)) return false;
        out = mpfr_get_si(s.raw(), MPFR_RNDN);
        return true;
    }
    // exp(expo * lnt)
    static Real pow_exp(const Real& expo, const Real& lnt) { return exp(expo * lnt); }
    static bool equal(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()); }
};

template <>
struct STraits<Complex> {
    static Complex from_real(const Real& r) { return Complex::of(r); }
    static bool integer_value(const Complex& s, long& out) {
        if (!s.im.is_zero()) return false;
        return STraits<Real>::integer_value(s.re, out);
    }
    static Complex pow_exp(const Complex& expo, const Real& lnt) { return exp(expo * lnt); }
    static bool equal(const Complex& a, const Complex& b) {
        return mpfr_equal_p(a.re.raw(), b.re.raw()) && mpfr_equal_p(a.im.raw(), b.im.raw());
    }
};

// ---------------------------------------------------------------------------
// shared constants at working precision
// ---------------------------------------------------------------------------

struct Consts {
    mpfr_prec_t W;
    int LEN;
    Real pi, lnpi, ln2, euler;
    std::vector<Real> zeta;  // zeta[k], valid for 2 <= k <= LEN

    Consts(mpfr_prec_t W_, int LEN_)
        : W(W_), LEN(LEN_), pi(Real::pi(W_)), lnpi(log(Real::pi(W_))), ln2(Real::ln2(W_)), euler(Real::euler(W_)) {
        zeta.reserve(LEN + 1);
        for (int k = 0; k <= LEN; ++k) zeta.push_back(k >= 2 ? Real::zeta_ui(static_cast<unsigned long>(k), W_) : Real(W_));
    }
};

// ---------------------------------------------------------------------------
// truncated Laurent jets around a point: sum_i c[i] delta^{lead+i}
// ---------------------------------------------------------------------------

struct RJet {
    long lead = 0;
    std::vector<Real> c;

    Real coeff(long deg, mpfr_prec_t W) const {
        long i = deg - lead;
        if (i < 0 || i >= static_cast<long>(c.size())) return Real(W);
        return c[static_cast<size_t>(i)];
    }
};

RJet rjet_mul(const RJet& a, const RJet& b, int LEN, mpfr_prec_t W) {
    RJet r;
    r.lead = a.lead + b.lead;
    r.c.assign(LEN, Real(W));
    for (int i = 0; i < LEN && i < static_cast<int>(a.c.size()); ++i) {
        if (a.c[i].is_zero()) continue;
        int jmax = std::min<int>(LEN - i, static_cast<int>(b.c.size()));
        for (int j = 0; j < jmax; ++j) {
            if (b.c[j].is_zero()) continue;
            mpfr_fma(r.c[i + j].raw(), a.c[i].raw(), b.c[j].raw(), r.c[i + j].raw(), MPFR_RNDN);
        }
    }
    return r;
}

// multiply by (q0 + q1*delta), q0 may be zero
void rjet_mul_linear(RJet& a, const mpq_class& q0, const mpq_class& q1, mpfr_prec_t W) {
    if (q0 == 0) {
        Real f = Real::of(q1, W);
        for (auto& x : a.c) x *= f;
        a.lead += 1;
        return;
    }
    Real r0 = Real::of(q0, W), r1 = Real::of(q1, W);
    Real prev(W);
    for (size_t i = 0; i < a.c.size(); ++i) {
        Real cur = a.c[i];
        a.c[i] = cur * r0 + prev * r1;
        prev = cur;
    }
}

// divide by (q0 + q1*delta), q0 may be zero (then it is an exact shift)
void rjet_div_linear(RJet& a, const mpq_class& q0, const mpq_class& q1, mpfr_prec_t W) {
    if (q0 == 0) {
        Real f = Real::of(q1, W);
        for (auto& x : a.c) x /= f;
        a.lead -= 1;
        return;
    }
    Real r0 = Real::of(q0, W), r1 = Real::of(q1, W);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (i > 0) a.c[i] -= r1 * a.c[i - 1];
        a.c[i] /= r0;
    }
}

// Taylor jet of Gamma(b + delta/2) at b = 1 (half=false) or b = 1/2 (half=true)
RJet gamma_base_jet(bool half, const Consts& C) {
    const int LEN = C.LEN;
    const mpfr_prec_t W = C.W;
    // log Gamma(b+x) = log Gamma(b) + sum_{m>=1} s[m] x^m
    std::vector<Real> s(LEN, Real(W));
    if (!half) {
        s[1] = -C.euler;
        for (int m = 2; m < LEN; ++m) {
            Real v = C.zeta[m] / static_cast<long>(m);
            s[m] = (m % 2 == 0) ? v : -v;
        }
    } else {
        s[1] = -C.euler - C.ln2 * 2l;
        for (int m = 2; m < LEN; ++m) {
            mpz_class pw;
            mpz_ui_pow_ui(pw.get_mpz_t(), 2, static_cast<unsigned long>(m));
            Real v = C.zeta[m] * Real::of(mpz_class(pw - 1), W) / static_cast<long>(m);
            s[m] = (m % 2 == 0) ? v : -v;
        }
    }
    // e = exp(series), e[0] = 1, e[k] = (1/k) sum_{i=1..k} i s[i] e[k-i]
    std::vector<Real> e(LEN, Real(W));
    e[0] = Real::of(1l, W);
    for (int k = 1; k < LEN; ++k) {
        Real acc(W);
        for (int i = 1; i <= k; ++i) {
            if (s[i].is_zero()) continue;
            acc += s[i] * static_cast<long>(i) * e[k - i];
        }
        e[k] = acc / static_cast<long>(k);
    }
    RJet jet;
    jet.lead = 0;
    jet.c = std::move(e);
    Real g0 = half ? sqrt(C.pi) : Real::of(1l, W);
    // substitute x -> delta/2 and scale by Gamma(b)
    Real scale = g0;
    for (int i = 0; i < LEN; ++i) {
        jet.c[i] *= scale;
        scale = scale / 2l;
    }
    return jet;
}

// jet of Gamma((z + mu)/2) around z0, as a function of delta = z - z0
RJet gamma_jet_at(long z0, long mu, const Consts& C) {
    // argument w0 = (z0+mu)/2; base 1 or 1/2 by parity
    bool half = ((z0 + mu) % 2 + 2) % 2 != 0;
    RJet jet = gamma_base_jet(half, C);
    mpq_class b = half ? mpq_class(1, 2) : mpq_class(1);
    mpq_class w0(z0 + mu, 2);
    w0.canonicalize();
    mpq_class q = w0 - b;  // integer shift count
    long steps = mpz_get_si(mpq_class(q).get_num().get_mpz_t());
    if (steps > 0) {
        // Gamma(b+k+x) = Gamma(b+x) * prod_{i=0}^{k-1} (b+i+x)
        for (long i = 0; i < steps; ++i) rjet_mul_linear(jet, b + i, mpq_class(1, 2), C.W);
    } else if (steps < 0) {
        // Gamma(b-k+x) = Gamma(b+x) / prod_{i=1}^{k} (b-i+x)
        for (long i = 1; i <= -steps; ++i) rjet_div_linear(jet, b - i, mpq_class(1, 2), C.W);
    }
    return jet;
}

// ---------------------------------------------------------------------------
// pole-ladder tables
// ---------------------------------------------------------------------------

template <class T>
struct Entry {
    long z0;
    std::vector<T> A;  // contribution = t^{-z0} sum_j A[j] ln(t)^j
};

template <class T>
struct ClassBuilder {
    const Consts* C;
    std::vector<long> mu;
    long z0;
    std::vector<RJet> gj;
    Real pi_scalar;
    Real pi_step;          // pi^d
    std::vector<Real> pe;  // exp(-(d/2) ln pi * delta) coefficients
    T s;
    bool s_is_int = false;
    long s_int = 0;
    bool emitted_fp = false;

    ClassBuilder(const Consts& c, std::vector<long> mu_, long z_top, const T& s_) : C(&c), mu(std::move(mu_)), z0(z_top), pi_scalar(c.W), pi_step(c.W), s(s_) {
        const mpfr_prec_t W = c.W;
        long d = static_cast<long>(mu.size());
        for (long m : mu) gj.push_back(gamma_jet_at(z0, m, c));
        long musum = 0;
        for (long m : mu) musum += m;
        // pi^{-(d z0 + musum)/2}
        mpq_class e0(-(d * z0 + musum), 2);
        e0.canonicalize();
        pi_scalar = pow(c.pi, Real::of(e0, W));
        pi_step = c.pi.pow_si(d);
        // exp(-(d/2) lnpi delta)
        Real base = -(c.lnpi * d / 2l);
        pe.assign(c.LEN, Real(W));
        pe[0] = Real::of(1l, W);
        for (int i = 1; i < c.LEN; ++i) pe[i] = pe[i - 1] * base / static_cast<long>(i);
        s_is_int = STraits<T>::integer_value(s, s_int);
    }

    Entry<T> step() {
        const mpfr_prec_t W = C->W;
        const int LEN = C->LEN;
        // total = pi_scalar * pe * prod gj
        RJet tot = gj[0];
        for (size_t j = 1; j < gj.size(); ++j) tot = rjet_mul(tot, gj[j], LEN, W);
        RJet pej;
        pej.lead = 0;
        pej.c = pe;
        tot = rjet_mul(tot, pej, LEN, W);
        for (auto& x : tot.c) x *= pi_scalar;

        long nu = -tot.lead;
        if (nu < 1) throw Error("afe: ladder point without pole, builder bug");
        Entry<T> entry;
        entry.z0 = z0;
        if (s_is_int && s_int == z0) {
            // finite part of gamma(sigma) t^{-sigma} at sigma = s: coefficients of L^j
            emitted_fp = true;
            entry.A.clear();
            Real fact = Real::of(1l, W);
            for (long j = 0; j <= nu; ++j) {
                if (j > 0) fact *= static_cast<long>(j);
                Real g = tot.coeff(-j, W);
                Real v = g / fact;
                if (j % 2 == 1) v = -v;
                entry.A.push_back(STraits<T>::from_real(v));
            }
        } else {
            // residue of gamma(z) t^{-z} / (s - z): A[j] = (-1)^j/j! sum_m tot[-1-j-m] (s-z0)^{-(m+1)}
            T dif = s - STraits<T>::from_real(Real::of(z0, W));
            T inv = STraits<T>::from_real(Real::of(1l, W)) / dif;
            std::vector<T> invpow;
            invpow.push_back(inv);
            for (long m = 1; m < nu; ++m) invpow.push_back(invpow.back() * inv);
            Real fact = Real::of(1l, W);
            for (long j = 0; j < nu; ++j) {
                if (j > 0) fact *= static_cast<long>(j);
                T acc = STraits<T>::from_real(Real(W));
                for (long m = 0; m + j < nu; ++m) {
                    Real g = tot.coeff(-1 - j - m, W);
                    if (g.is_zero()) continue;
                    acc += invpow[static_cast<size_t>(m)] * g;
                }
                T v = acc * (Real::of(1l, W) / fact);
                if (j % 2 == 1) v = -v;
                entry.A.push_back(v);
            }
        }
        // advance to z0 - 2: Gamma(w-1) = Gamma(w)/(w-1), w = (z0+mu)/2
        for (size_t j = 0; j < gj.size(); ++j) {
            mpq_class q0(z0 + mu[j] - 2, 2);
            q0.canonicalize();
            rjet_div_linear(gj[j], q0, mpq_class(1, 2), W);
        }
        pi_scalar *= pi_step;
        z0 -= 2;
        return entry;
    }
};

template <class T>
struct GTable {
    T s;
    bool fp = false;
    long fp_z0 = 0;
    std::vector<T> fpA;
    T gamma_s;

    struct Cls {
        long z_top;
        std::vector<Entry<T>> entries;
        ClassBuilder<T> builder;
    };
    std::vector<Cls> classes;

    // Evaluate G_s(t); extend tables when allowed (single-threaded phase).
    T eval(const Real& t, const Real& lnt, long eps2, bool may_extend) {
        const mpfr_prec_t W = t.prec();
        T G(W);
        Real L = lnt;
        if (!fp) {
            G = gamma_s * STraits<T>::pow_exp(-s, lnt);
        } else {
            Real u = exp(lnt * (-fp_z0));
            T poly = fpA.back();
            for (long j = static_cast<long>(fpA.size()) - 2; j >= 0; --j) poly = poly * L + fpA[static_cast<size_t>(j)];
            G = poly * u;
        }
        Real t2 = t * t;
        for (auto& cls : classes) {
            Real u = exp(lnt * (-cls.z_top));
            int consec = 0;
            for (size_t l = 0;; ++l) {
                if (l >= cls.entries.size()) {
                    if (!may_extend) throw Error("afe: table too short in parallel phase");
                    for (int k = 0; k < 32; ++k) cls.entries.push_back(cls.builder.step());
                }
                const Entry<T>& e = cls.entries[l];
                if (!(fp && e.z0 == fp_z0)) {  // the FP ladder point is folded into the leading part
                    T poly = e.A.back();
                    for (long j = static_cast<long>(e.A.size()) - 2; j >= 0; --j)
                        poly = poly * L + e.A[static_cast<size_t>(j)];
                    poly *= u;
                    G -= poly;
                    long m = poly.mag_exp();
                    if (m < eps2) {
                        if (++consec >= kConsecutiveSmall) break;
                    } else {
                        consec = 0;
                    }
                }
                u *= t2;
                if (l > 2000000) throw Error("afe: ladder did not converge");
            }
        }
        return G;
    }
};

template <class T>
GTable<T> build_table(const AnalyticCore& core, const Consts& C, const T& s) {
    GTable<T> tab;
    tab.s = s;
    long s_int = 0;
    bool s_is_int = STraits<T>::integer_value(s, s_int);
    bool on_ladder = false;
    if (s_is_int) {
        for (long m : core.mu)
            if (s_int <= -m && ((s_int + m) % 2 == 0)) on_ladder = true;
    }
    // parity classes
    for (int parity = 0; parity < 2; ++parity) {
        long z_top = 0;
        bool found = false;
        for (long m : core.mu) {
            long zt = -m;
            if (((zt % 2) + 2) % 2 != parity) continue;
            if (!found || zt > z_top) z_top = zt;
            found = true;
        }
        if (!found) continue;
        typename GTable<T>::Cls cls{z_top, {}, ClassBuilder<T>(C, core.mu, z_top, s)};
        tab.classes.push_back(std::move(cls));
    }
    if (on_ladder) {
        tab.fp = true;
        tab.fp_z0 = s_int;
        // walk the relevant class up to s_int to extract the finite-part entry
        for (auto& cls : tab.classes) {
            if (((s_int % 2) + 2) % 2 != ((cls.z_top % 2) + 2) % 2 || s_int > cls.z_top) continue;
            ClassBuilder<T> probe(C, core.mu, cls.z_top, s);
            while (probe.z0 >= s_int) {
                Entry<T> e = probe.step();
                if (e.z0 == s_int) {
                    tab.fpA = e.A;
                    break;
                }
            }
        }
        if (tab.fpA.empty()) throw Error("afe: finite-part extraction failed");
    } else {
        // gamma(s) = prod_j Gamma_R(s + mu_j)
        const mpfr_prec_t W = C.W;
        T acc = STraits<T>::from_real(Real::of(1l, W));
        long d = static_cast<long>(core.mu.size());
        long musum = 0;
        for (long m : core.mu) musum += m;
        for (long m : core.mu) {
            T arg = (s + STraits<T>::from_real(Real::of(m, W))) * (Real::of(mpq_class(1, 2), W));
            if constexpr (std::is_same_v<T, Real>) {
                acc *= gamma(arg);
            } else {
                acc *= cgamma(arg);
            }
        }
        // pi^{-(d s + musum)/2}
        T pexp = -(s * STraits<T>::from_real(Real::of(d, W)) + STraits<T>::from_real(Real::of(musum, W))) * Real::of(mpq_class(1, 2), W);
        acc *= exp(pexp * C.lnpi);
        tab.gamma_s = acc;
    }
    return tab;
}

}  // namespace

// ---------------------------------------------------------------------------
// LambdaEvaluator
// ---------------------------------------------------------------------------

struct AfeSizing {
    long n_used;
    double max_a_bits;
};

static AfeSizing afe_sizing(const AnalyticCore& core, const std::vector<mpz_class>& an, long digits) {
    double growth = 0.1;
    for (size_t i = 2; i < an.size(); ++i) {
        double v = std::abs(mpz_get_d(an[i].get_mpz_t()));
        if (v > 1.5) growth = std::max(growth, std::log(v) / std::log(static_cast<double>(i)));
    }
    AfeSizing s;
    // upper cap on summation; the per-term kernel-decay rule prunes below it
    s.n_used = std::min<long>(static_cast<long>(an.size()) - 1, afe_coefficient_cutoff(core, digits, growth));
    s.max_a_bits = 0;
    for (long i = 1; i <= s.n_used; ++i)
        s.max_a_bits = std::max(s.max_a_bits, static_cast<double>(mpz_sizeinbase(an[i].get_mpz_t(), 2)));
    return s;
}

template <class T>
struct LambdaEvaluator<T>::Impl {
    AnalyticCore core;
    const std::vector<mpz_class>* an;
    long digits;
    AfeSizing sizing;
    mpfr_prec_t W;
    Consts consts;
    long base_eps2;
    double max_a_bits;
    long n_used;
    std::vector<std::pair<T, std::unique_ptr<GTable<T>>>> tables;

    Impl(AnalyticCore c, const std::vector<mpz_class>* a, long dig)
        : core(std::move(c)),
          an(a),
          digits(dig),
          sizing(afe_sizing(core, *a, dig)),
          W(afe_working_prec(dig, sizing.max_a_bits * 0.30103)),
          consts(W, static_cast<int>(core.mu.size()) + 4) {
        base_eps2 = -static_cast<long>((static_cast<double>(digits) + 12.0) * 3.3220);
        max_a_bits = sizing.max_a_bits;
        n_used = sizing.n_used;
    }

    GTable<T>& table_for(const T& s) {
        for (auto& [key, tab] : tables)
            if (STraits<T>::equal(key, s)) return *tab;
        tables.emplace_back(s, std::make_unique<GTable<T>>(build_table<T>(core, consts, s)));
        return *tables.back().second;
    }

    // Kernel tail bound in decimal digits at argument t: the term a_n G(t) is
    // negligible once d pi t^{2/d} / ln10 exceeds digits + margin + log10|a_n|.
    bool skip_term(double t, double a_log10) const {
        double d = static_cast<double>(core.mu.size());
        double decay = d * M_PI * std::pow(t, 2.0 / d) / std::log(10.0);
        return decay > static_cast<double>(digits) + 13.0 + a_log10 + 2.0 * std::log10(t + 2.0);
    }

    // sum_{n=1}^{M} a_n G_s(c * n), deterministic block reduction
    T coeff_sum(GTable<T>& tab, const Real& c) {
        long M = n_used;
        double cd = c.to_double();
        // largest n whose term is actually evaluated
        long M_eff = 0;
        for (long n = M; n >= 1; --n) {
            const mpz_class& a = (*an)[static_cast<size_t>(n)];
            if (a == 0) continue;
            double albits = 0.30103 * static_cast<double>(mpz_sizeinbase(a.get_mpz_t(), 2));
            if (!skip_term(cd * static_cast<double>(n), albits)) {
                M_eff = n;
                break;
            }
        }
        if (M_eff == 0) return T(W);
        // extension pass at the largest evaluated argument
        {
            Real t = c * M_eff;
            Real lnt = log(t);
            (void)tab.eval(t, lnt, base_eps2 - static_cast<long>(max_a_bits) - 8, true);
        }
        long nblocks = (M_eff + 255) / 256;
        std::vector<T> partial(static_cast<size_t>(nblocks), T(W));
        parallel_for_blocks(M_eff, [&](long lo, long hi) {
            T acc(W);
            for (long n = lo + 1; n <= hi; ++n) {  // shift: blocks cover [0,M) -> n in [1,M]
                const mpz_class& a = (*an)[static_cast<size_t>(n)];
                if (a == 0) continue;
                long abits = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
                if (skip_term(cd * static_cast<double>(n), 0.30103 * static_cast<double>(abits))) continue;
                Real t = c * n;
                Real lnt = log(t);
                T g = tab.eval(t, lnt, base_eps2 - abits - 8, false);
                acc += g * Real::of(a, W);
            }
            partial[static_cast<size_t>(lo / 256)] = std::move(acc);
        });
        T sum(W);
        for (auto& p : partial) sum += p;
        return sum;
    }
};

template <class T>
LambdaEvaluator<T>::LambdaEvaluator(AnalyticCore core, const std::vector<mpz_class>* an, long digits)
    : impl_(new Impl(std::move(core), an, digits)) {}

template <class T>
LambdaEvaluator<T>::~LambdaEvaluator() = default;

template <class T>
LambdaEvaluator<T>::LambdaEvaluator(LambdaEvaluator&&) noexcept = default;

template <class T>
mpfr_prec_t LambdaEvaluator<T>::wbits() const {
    return impl_->W;
}

template <class T>
long LambdaEvaluator<T>::cutoff() const {
    return static_cast<long>(impl_->an->size()) - 1;
}

template <class T>
T LambdaEvaluator<T>::gamma_factor(const T& s) const {
    GTable<T> tab = build_table<T>(impl_->core, impl_->consts, s);
    if (tab.fp) throw Error("gamma_factor: s on a pole of the gamma product");
    return tab.gamma_s;
}

template <class T>
AfeHalves<T> LambdaEvaluator<T>::halves(const T& s, const mpq_class& A) {
    Impl& im = *impl_;
    const mpfr_prec_t W = im.W;
    T wp1 = STraits<T>::from_real(Real::of(im.core.w + 1, W));
    T s2 = wp1 - s;
    GTable<T>& tab1 = im.table_for(s);
    GTable<T>& tab2 = im.table_for(s2);

    Real sqN = sqrt(Real::of(im.core.conductor, W));
    Real Ar = Real::of(A, W);
    Real lnA = log(Ar);

    AfeHalves<T> out{T(W), T(W), T(W)};
    {
        Real c = Ar / sqN;
        T sum = im.coeff_sum(tab1, c);
        out.h1 = sum * STraits<T>::pow_exp(s, lnA);
    }
    {
        Real c = Real::of(1l, W) / (Ar * sqN);
        T sum = im.coeff_sum(tab2, c);
        out.h2 = sum * STraits<T>::pow_exp(-s2, lnA);
    }
    for (auto& [rho, res] : im.core.lambda_poles) {
        T rhoT = STraits<T>::from_real(Real::of(rho, W));
        T dif = s - rhoT;
        if constexpr (std::is_same_v<T, Real>) {
            if (dif.is_zero()) throw Error("afe: evaluation at a pole of Lambda");
        } else {
            if (dif.re.is_zero() && dif.im.is_zero()) throw Error("afe: evaluation at a pole of Lambda");
        }
        T term = STraits<T>::from_real(Real::of(res, W)) * STraits<T>::pow_exp(dif, lnA) / dif;
        out.pole += term;
    }
    return out;
}

template <class T>
T LambdaEvaluator<T>::lambda(const T& s, const T& eps, const mpq_class& A) {
    AfeHalves<T> h = halves(s, A);
    return h.h1 + eps * h.h2 + h.pole;
}

template class LambdaEvaluator<Real>;
template class LambdaEvaluator<Complex>;

Real afe_eval_G(const AnalyticCore& core, long digits, const mpq_class& s, const mpq_class& t) {
    mpfr_prec_t W = afe_working_prec(digits, 0);
    Consts C(W, static_cast<int>(core.mu.size()) + 4);
    Real sr = Real::of(s, W);
    GTable<Real> tab = build_table<Real>(core, C, sr);
    Real tr = Real::of(t, W);
    long eps2 = -static_cast<long>((static_cast<double>(digits) + 12.0) * 3.3220);
    return tab.eval(tr, log(tr), eps2, true);
}

}  // namespace congr
