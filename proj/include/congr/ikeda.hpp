#ifndef CONGR_IKEDA_HPP
#define CONGR_IKEDA_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "congr/heckechar.hpp"
#include "congr/qexp.hpp"

namespace congr {

// Parameters of the lift I_phi on U(n,n): n = 2m or 2m+1; phi has weight 2k+1
// and level D_K when n is even, weight 2k and level 1 when n is odd.
struct LiftContext {
    long n, m, k;
    long disc_abs;  // D_K

    static LiftContext make(long n, long k, long disc);
    bool n_even() const { return n % 2 == 0; }
    // x = k (n even) or k - 1/2 (n odd), as a rational
    mpq_class x_exponent() const { return n_even() ? mpq_class(k) : mpq_class(2 * k - 1, 2); }
    long expected_phi_weight() const { return n_even() ? 2 * k + 1 : 2 * k; }
    long expected_phi_level() const { return n_even() ? disc_abs : 1; }
};

// Laurent polynomial with integer coefficients, keyed by degree.
struct LaurentPoly {
    std::map<long, long> coeffs;

    bool satisfies_functional_equation(int chi_sign) const;  // F(1/X) = chi_sign F(X)
    std::string str() const;
};

// gamma(h) = (-D_K)^{floor(n/2)} det h
mpq_class gamma_of(const mpq_class& det_h, const LiftContext& ctx);

// Supported local Laurent polynomials F~_p: v = 0 -> 1; v = 1, chi = -1 -> X - 1/X.
// (v = 1, chi = +1) is underdetermined and v >= 2 is out of scope.
LaurentPoly local_poly(unsigned v, int chi_sign);

// Exact normalized Fourier coefficient of the lift for a supported gamma:
// product over p | gamma of the simplified local value a_phi(p).
mpz_class lift_coeff(const mpz_class& gamma, const LiftContext& ctx, const QExpansion& phi);

struct CongruenceReport {
    bool premise_holds = true;          // a_phi = a_phi' mod ell^r up to the bound
    long premise_violation_index = 0;   // first index violating the premise
    bool all_congruent = true;          // lift coefficients congruent mod ell^r
    std::optional<mpz_class> first_violation_gamma;
    long checked = 0;
    std::string summary() const;
};

// Verifies lift_coeff(gamma) = lift_coeff'(gamma) mod ell^r over every
// supported gamma with |gamma| <= bound.
CongruenceReport lift_congruence_check(const QExpansion& phi, const QExpansion& phi2, const LiftContext& ctx,
                                       const mpz_class& ell, unsigned r, long bound);

// Smallest odd prime p = -1 mod D_K with a_phi(p) != 0 mod ell; nullopt when
// the sweep is exhausted (abelian-image caveat).
std::optional<long> nonvanishing_sweep(const QExpansion& phi, const LiftContext& ctx, const mpz_class& ell, long bound);

// Standard-L evaluation points {s + k + m - n - i + 1 : i = 1..n}. The psi tag
// is bookkeeping only and is echoed in logs.
std::vector<mpq_class> std_L_points(const LiftContext& ctx, const mpq_class& s, const std::string& psi_tag = "");

// Enumerate the supported gamma values (+-squarefree products of odd inert
// primes) up to the bound, 1 included, ascending by absolute value.
std::vector<mpz_class> supported_gammas(const LiftContext& ctx, long bound);

}  // namespace congr

#endif
