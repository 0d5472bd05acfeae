#ifndef CONGR_QEXP_HPP
#define CONGR_QEXP_HPP

#include <gmpxx.h>

#include <vector>

#include "congr/exact.hpp"

namespace congr {

// Exact q-expansion sum_{n=0}^{N} a(n) q^n of a classical modular form.
struct QExpansion {
    std::vector<mpq_class> coeffs;  // index 0..truncation
    long weight = 0;
    long level = 1;
    DirichletCharacter character = DirichletCharacter::trivial();

    long truncation() const { return static_cast<long>(coeffs.size()) - 1; }
    const mpq_class& a(long n) const;
    bool is_normalized_eigenform() const { return coeffs.size() > 1 && coeffs[1] == 1; }
    bool is_integral() const;
};

// Local Hecke data at p: trace = alpha + beta, norm = alpha*beta = chi(p) p^{k-1}
// (0 at p | level, where the trace is just a_p).
struct SatakeLocal {
    mpz_class p;
    mpz_class trace;
    mpz_class norm;
};

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
QExpansion eisenstein(long k, long N);

// Delta = q prod (1-q^n)^24, exact to N terms.
QExpansion delta(long N);

// The unique normalized eigenform of weight 26 and level 1, as Delta*E4^2*E6.
QExpansion newform_s26(long N);

// Normalized eigenform of level 1 for the one-dimensional cusp spaces,
// weight in {12, 16, 18, 20, 22, 26}.
QExpansion eigenform_level1(long weight, long N);

// Eigenvalue = coefficient for a normalized eigenform.
mpq_class hecke_eigenvalue(const QExpansion& f, long m);

SatakeLocal satake(const QExpansion& f, const mpz_class& p);

// Componentwise reduction mod ell^r. Throws NonIntegralCoefficient when a
// denominator is divisible by ell.
std::vector<mpz_class> reduce_mod(const QExpansion& f, const mpz_class& ell, unsigned r);

// Exact product of two expansions truncated to min of the truncations.
QExpansion mul(const QExpansion& a, const QExpansion& b);

}  // namespace congr

#endif
