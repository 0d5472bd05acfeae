#ifndef CONGR_CERTIFY_HPP
#define CONGR_CERTIFY_HPP

#include <memory>
#include <string>
#include <vector>

#include "congr/ikeda.hpp"
#include "congr/lseries.hpp"

namespace congr {

struct CertConfig {
    long disc = -3;  // signed fundamental discriminant
    long n = 5, k = 13, m = 2;
    long t = -24;
    long precision_digits = 150;
    long prime_bound = 10000;
    long denominator_digit_bound = 40;
    long T = 1;  // generator from the hermitian matrix of the gamma(h) witness

    void validate() const;  // throws ConfigInvalid
    LiftContext lift_context() const { return LiftContext::make(n, k, disc); }
};

struct LalgEntry {
    std::string name;  // e.g. "L_alg(27, Sym2 x chi)"
    long point = 0;
    mpq_class value;
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CertificationReport {
    mpz_class ell;
    std::vector<Check> checks;
    long depth_b = 0;
    bool certified = false;
    std::string reject_reason;  // empty when certified
    long witness_prime = 0;     // nonvanishing sweep witness
};

// The assembled exact data of one certification run (eta_phi-unit-normalized).
struct CertData {
    mpq_class V;
    std::vector<LalgEntry> v_factors;
    mpq_class U;  // rational: the sqrt(3) factors of the Dirichlet values pair up
    std::vector<LalgEntry> u_conv_factors;
    std::vector<ExactScalar> u_dirichlet_factors;
    std::string selection_log;
};

// Number of units of O_K/N O_K (multiplicative over prime powers; split,
// inert and ramified cases).
mpz_class unit_group_order_mod(const ImagQuadField& field, const mpz_class& N);

// dim S_k(SL_2(Z)) for even k >= 4 (classical formula).
long dim_cusp_forms_level1(long k);

class Certifier {
  public:
    explicit Certifier(CertConfig config);

    const CertConfig& config() const { return cfg_; }
    const QExpansion& phi() const { return phi_; }
    const QExpansion& g() const { return g_; }

    // product of the parity-correct lalg_sym2 values over i = 2..n
    // (pre: phi is the unique newform in its space, so eta_phi is a unit)
    const CertData& compute();

    CertificationReport check_hypotheses(const mpz_class& ell);
    std::vector<CertificationReport> congruence_primes();

  private:
    CertConfig cfg_;
    ImagQuadField field_;
    QExpansion phi_, g_;
    std::unique_ptr<Lalg> lalg_;
    std::unique_ptr<CertData> data_;
};

}  // namespace congr

#endif
