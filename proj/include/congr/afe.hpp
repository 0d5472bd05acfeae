#ifndef CONGR_AFE_HPP
#define CONGR_AFE_HPP

#include <gmpxx.h>

#include <memory>
#include <vector>

#include "congr/real.hpp"

namespace congr {

// Analytic data of a completed L-function
//   Lambda(s) = N^{s/2} prod_j Gamma_R(s + mu_j) L(s),   Gamma_R(s) = pi^{-s/2} Gamma(s/2),
// self-dual up to conjugation: Lambda(s) = eps * conj(Lambda(w+1-conj(s))).
struct AnalyticCore {
    std::vector<long> mu;  // integer Gamma_R shifts
    mpz_class conductor = 1;
    long w = 0;  // motivic weight
    std::vector<std::pair<mpq_class, mpq_class>> lambda_poles;  // (location, residue of Lambda)
};

// Smallest coefficient count M so that the smoothed-kernel tail past M stays
// below 10^{-(digits+12)} after amplification by |a_n| <= n^{coeff_exp}.
long afe_coefficient_cutoff(const AnalyticCore& core, long digits, double coeff_exp);

// Working precision covering the series-hump cancellation at the largest cut.
mpfr_prec_t afe_working_prec(long digits, double coeff_log10_max);

template <class T>
struct AfeHalves {
    T h1, h2, pole;  // Lambda = h1 + eps*h2 + pole
};

// Evaluates Lambda via the smoothed approximate functional equation
//   Lambda(s) = sum_n a_n A^s G_s(A n/sqrt(N))
//             + eps sum_n a_n A^{-(w+1-s)} G_{w+1-s}(n/(A sqrt(N)))
//             + sum_rho r_rho A^{s-rho}/(s-rho),
// where G_s(t) = int_1^oo h(ut) u^{s-1} du and h is the inverse Mellin
// transform of prod_j Gamma_R(z + mu_j). G is computed from the residue
// expansion of the Mellin-Barnes integral; the split parameter A produces
// independent decompositions of the same value, which is what the root-number
// solver and the functional-equation residual consume.
template <class T>
class LambdaEvaluator {
  public:
    // an: 1-based Dirichlet coefficients (an[0] unused), available through an->size()-1.
    LambdaEvaluator(AnalyticCore core, const std::vector<mpz_class>* an, long digits);
    ~LambdaEvaluator();
    LambdaEvaluator(LambdaEvaluator&&) noexcept;

    AfeHalves<T> halves(const T& s, const mpq_class& A);
    T lambda(const T& s, const T& eps, const mpq_class& A);
    // prod_j Gamma_R(s + mu_j); throws if s sits on a pole of the product.
    T gamma_factor(const T& s) const;

    mpfr_prec_t wbits() const;
    long cutoff() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

extern template class LambdaEvaluator<Real>;
extern template class LambdaEvaluator<Complex>;

// Single smoothed-kernel value G_s(t) at a real rational point (testing hook;
// for one Gamma_R factor this is pi^{-s/2} t^{-s} Gamma(s/2, pi t^2)).
Real afe_eval_G(const AnalyticCore& core, long digits, const mpq_class& s, const mpq_class& t);

}  // namespace congr

#endif
