#ifndef CONGR_LSERIES_HPP
#define CONGR_LSERIES_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "congr/afe.hpp"
#include "congr/exact.hpp"
#include "congr/qexp.hpp"

namespace congr {

// Gamma_R(s + shift) or Gamma_C(s + shift) = Gamma_R(s+shift) Gamma_R(s+shift+1).
struct GammaShift {
    char kind;  // 'R' or 'C'
    mpq_class shift;
};

struct LFunctionSpec {
    long degree = 1;
    mpz_class conductor = 1;
    std::vector<GammaShift> gamma_shifts;
    long motivic_weight = 0;
    std::optional<Complex> root_number;  // empty = unknown, call solve_root_number
    std::vector<mpz_class> coeffs;       // 1-based Dirichlet coefficients, [0] unused
    std::map<long, std::vector<mpz_class>> bad_factors;  // p -> [c1..cd], local factor 1 + c1 x + ...
    std::vector<std::pair<mpq_class, mpq_class>> lambda_poles;
    std::string label;

    AnalyticCore core() const;  // validates integrality of shifts
};

struct LValue {
    Complex value;
    Real abs_error_bound;
    Complex s;
    long precision_digits = 0;
};

// local factor coefficients [c1, c2, c3] of Sym^2 at a good prime:
// (1 - nu psi x)(1 - (a^2-2nu) psi x + nu^2 psi^2 x^2), psi = twist(p)
std::vector<mpz_class> sym2_local_poly(const SatakeLocal& s, int psi_p);
// degree-4 Rankin-Selberg local factor at a good prime
std::vector<mpz_class> conv_local_poly(const SatakeLocal& f, const SatakeLocal& g);
// degree-2 bad factor at p | level(g): (1 - alpha_f a_g(p) x)(1 - beta_f a_g(p) x)
std::vector<mpz_class> conv_bad_poly(const SatakeLocal& f, const mpz_class& ag_p);

// Multiplicative expansion of an Euler product. local(p) returns [c1..cd] of
// the local factor 1 + c1 x + ... (empty = factor 1).
std::vector<mpz_class> euler_to_dirichlet(long M, const std::function<std::vector<mpz_class>(long)>& local);

// Spec builders. The gamma data of sym2/conv specs is left unset here and
// filled in by the candidate auto-selection against the residual test.
LFunctionSpec zeta_spec(long n_coeffs);
LFunctionSpec dirichlet_spec(const DirichletCharacter& chi, long n_coeffs);
// Symmetric square, twist trivial (modulus 1, primitive, conductor 1) or odd
// quadratic mod 3. A trivial twist of modulus > 1 is rejected here: evaluate
// the primitive spec and multiply by the exact missing Euler factor instead.
LFunctionSpec sym2_spec(const QExpansion& f, const DirichletCharacter& twist, long n_coeffs);
LFunctionSpec conv_spec(const QExpansion& f, const QExpansion& g, long n_coeffs);

// Evaluation wrapper: owns the AFE engines and the functional-equation data
// selection for one spec.
class LSeries {
  public:
    LSeries(LFunctionSpec spec, long digits);
    ~LSeries();
    LSeries(const LSeries&) = delete;
    LSeries& operator=(const LSeries&) = delete;

    const LFunctionSpec& spec() const { return spec_; }
    long digits() const { return digits_; }

    // Completed and finite L-values. Throws RootNumberUnknown if the root
    // number is neither given nor solved yet.
    LValue afe_eval(const Complex& s);
    Real value_real(const mpq_class& s);  // L(s) at a real rational point

    // Solves eps from the split-parameter linear relation at two probe points;
    // result must be unit-modulus within 1e-20 or Inconsistent is thrown.
    Complex solve_root_number(const mpq_class& probe1, const mpq_class& probe2);

    // |Lambda_A(s) - Lambda_1(s)| for an independent split A (consistency of
    // the functional-equation data).
    Real fe_residual(const Complex& s);
    Real fe_residual(const mpq_class& s);

    // completed value Lambda(s) at a real rational point (A = 1)
    Real completed_value(const mpq_class& s);
    // gamma factor N^{s/2} prod Gamma_R(s+mu) at a real point
    Real completed_prefactor(const mpq_class& s);

  private:
    LFunctionSpec spec_;
    long digits_;
    std::unique_ptr<LambdaEvaluator<Real>> engR_;
    std::unique_ptr<LambdaEvaluator<Complex>> engC_;
    LambdaEvaluator<Real>& engine_real();
    LambdaEvaluator<Complex>& engine_cplx();
};

// Functional-equation data candidates and the auto-selection result.
struct FeSelection {
    std::vector<GammaShift> shifts;
    mpz_class conductor;
    Complex eps;
    Real residual_rel;   // relative residual of the accepted candidate
    std::string detail;  // one line per rejected candidate
};

// Tries every (shifts, conductor) candidate at ~40 digits and returns the
// unique one passing |eps|=1 and a small functional-equation residual.
FeSelection select_fe_data(const LFunctionSpec& base, const std::vector<std::vector<GammaShift>>& shift_candidates,
                           const std::vector<mpz_class>& conductor_candidates);

// Gauss sum of the odd quadratic character mod 3: i*sqrt(3).
ExactScalar gauss_sum(const DirichletCharacter& chi);

// <f,f> for a level-1 normalized eigenform of weight k via the Rankin-Selberg
// identity <f,f> = Gamma(k) L(Sym^2 f, k) / (2^{2k-1} pi^{k+1}).
Real petersson_norm(const QExpansion& f, long digits);

// The L_alg pipeline of the certification run: shares the eigenform, the CM
// form, the Petersson norm and the selected functional-equation data.
class Lalg {
  public:
    Lalg(QExpansion phi, QExpansion g, long digits, long max_den_digits = 40);

    // q-expansion length the pipeline needs at this precision (worst-case
    // functional-equation candidate drives the kernel cutoff)
    static long required_truncation(long digits, long phi_weight, long g_weight);

    const QExpansion& phi() const { return phi_; }
    const QExpansion& g() const { return g_; }
    Real petersson();

    // L(j+25, Sym^2 phi (x) chi^{j+1}) / (pi^{25+2j} <phi,phi>), recognized.
    mpq_class sym2(long j);
    // L(j, phi (x) g) / (pi^{6-2j} G(chi_3) i^{33-2j} <phi,phi>), recognized.
    mpq_class conv(long j);

    // numeric value before recognition (diagnostics)
    Real sym2_numeric(long j);
    Real conv_numeric(long j);

    std::string selection_log() const { return selection_log_; }

  private:
    QExpansion phi_, g_;
    long digits_, max_den_;
    std::optional<Real> norm_;
    std::unique_ptr<LSeries> sym2_even_;  // primitive untwisted, conductor 1
    std::unique_ptr<LSeries> sym2_odd_;   // twisted by chi mod 3
    std::unique_ptr<LSeries> conv_;
    std::string selection_log_;

    LSeries& sym2_series(bool odd_twist);
    LSeries& conv_series();
    mpq_class recognize(const Real& x, const std::string& what);
};

}  // namespace congr

#endif
