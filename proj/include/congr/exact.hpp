#ifndef CONGR_EXACT_HPP
#define CONGR_EXACT_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "congr/errors.hpp"
#include "congr/real.hpp"

namespace congr {

// ---------------------------------------------------------------------------
// Factorization and primality
// ---------------------------------------------------------------------------

struct Factorization {
    // (prime, exponent), primes strictly increasing.
    std::vector<std::pair<mpz_class, unsigned>> factors;

    mpz_class value() const;
    std::string str() const;  // "2^37 * 523", "1" for empty
};

// Deterministic Miller-Rabin below 2^64, 64 probabilistic rounds above.
bool is_prime(const mpz_class& n);

// Trial division to 10^6, then Pollard rho (Brent). n >= 1; factor(1) = {}.
Factorization factor(const mpz_class& n);

// p-adic valuation of a nonzero rational. Throws ZeroInput on q = 0.
long val_p(const mpq_class& q, const mpz_class& p);

// ---------------------------------------------------------------------------
// Dirichlet characters (trivial and Kronecker)
// ---------------------------------------------------------------------------

struct DirichletCharacter {
    unsigned long modulus = 1;
    // 0: trivial (mod `modulus`; Euler factors at p | modulus removed).
    // Otherwise the fundamental discriminant D of the Kronecker symbol (D/.).
    long kronecker_disc = 0;

    static DirichletCharacter trivial(unsigned long modulus = 1) { return {modulus, 0}; }
    static DirichletCharacter kronecker(long disc);

    bool is_trivial() const { return kronecker_disc == 0; }
    bool is_odd() const;  // chi(-1) = -1
    int operator()(const mpz_class& n) const;
    int operator()(long n) const { return (*this)(mpz_class(n)); }
    // chi^e collapses to either chi or the trivial character mod `modulus`.
    DirichletCharacter power(long e) const;
    std::string str() const;
};

int kronecker_symbol(const mpz_class& a, const mpz_class& n);

// ---------------------------------------------------------------------------
// Exact scalars of the form (num/den) * sqrt(D)^delta * pi^e, optionally * i
// ---------------------------------------------------------------------------

struct ExactScalar {
    mpq_class rat = 0;
    unsigned long sqrt_disc = 0;  // 0 = no surd; else squarefree > 0
    long pi_exp = 0;
    bool imaginary = false;  // value carries a factor of i

    static ExactScalar of(const mpq_class& q) { return {q, 0, 0, false}; }

    ExactScalar& operator*=(const ExactScalar& o);
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }

    // Valuation of the algebraic part (pi ignored); half-integral when p | sqrt_disc.
    mpq_class val(const mpz_class& p) const;

    // Numeric value of the full scalar (requires imaginary == false).
    Real to_real(mpfr_prec_t prec) const;
    std::string str() const;
};

// ---------------------------------------------------------------------------
// Bernoulli numbers, generalized Bernoulli numbers, Dirichlet L-values
// ---------------------------------------------------------------------------

// B_0..B_n with B_1 = -1/2 (generating function t/(e^t - 1)).
const std::vector<mpq_class>& bernoulli_table(unsigned long n);
mpq_class bernoulli(unsigned long n);

// Value of the Bernoulli polynomial B_n(x).
mpq_class bernoulli_poly(unsigned long n, const mpq_class& x);

// Generalized Bernoulli number B_{n,chi} (finite sum over residues mod the
// conductor). Parity vanishing holds except for B_{1,trivial}.
mpq_class gen_bernoulli(unsigned long n, const DirichletCharacter& chi);

// Exact critical value L(j, chi) as (rational) * sqrt(D)^{0 or 1} * pi^j.
// For the trivial character mod m > 1 the Euler factors at p | m are removed.
// Throws NotCritical when the parity of j does not match chi(-1).
ExactScalar dirichlet_L_critical(unsigned long j, const DirichletCharacter& chi);

// ---------------------------------------------------------------------------
// Continued-fraction rational recognition
// ---------------------------------------------------------------------------

struct Recognition {
    mpq_class value;
    // log10 of the oversized partial quotient that marked the cut, for diagnostics.
    long quotient_digits = 0;
};

// Recognizes x as a rational with at most max_den_digits denominator digits.
// A candidate is accepted only when the continued fraction of x truncated at
// `working_digits` and at `working_digits - 20` produces the same fraction and
// the partial quotient at the cut exceeds 10^(working_digits - 2*max_den_digits - 10).
// Returns nullopt on NoMatch. Throws PrecisionTooLow if preconditions fail.
std::optional<Recognition> cf_recognize(const Real& x, long working_digits, long max_den_digits);

}  // namespace congr

#endif
