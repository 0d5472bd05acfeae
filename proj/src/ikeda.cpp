#include "congr/ikeda.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "congr/errors.hpp"
#include "congr/exact.hpp"

namespace congr {

LiftContext LiftContext::make(long n, long k, long disc) {
    if (n < 2) throw Error("LiftContext: n >= 2 required");
    ImagQuadField::of_disc(disc);  // validates
    LiftContext c;
    c.n = n;
    c.m = n / 2;
    c.k = k;
    c.disc_abs = -disc;
    return c;
}

bool LaurentPoly::satisfies_functional_equation(int chi_sign) const {
    for (const auto& [d, c] : coeffs) {
        auto it = coeffs.find(-d);
        long mirrored = (it == coeffs.end()) ? 0 : it->second;
        if (mirrored != chi_sign * c) return false;
    }
    return true;
}

std::string LaurentPoly::str() const {
    if (coeffs.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        auto [d, c] = *it;
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        long a = std::abs(c);
        if (a != 1 || d == 0) os << a;
        if (d != 0) {
            if (a != 1) os << "*";
            os << "X";
            if (d != 1) os << "^" << d;
        }
    }
    return os.str();
}

mpq_class gamma_of(const mpq_class& det_h, const LiftContext& ctx) {
    if (det_h == 0) throw ZeroInput("gamma_of: det h = 0");
    mpz_class base(-ctx.disc_abs);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(ctx.n / 2));
    mpq_class r = det_h * pw;
    r.canonicalize();
    return r;
}

LaurentPoly local_poly(unsigned v, int chi_sign) {
    if (v == 0) return LaurentPoly{{{0, 1}}};
    if (v == 1 && chi_sign == -1) return LaurentPoly{{{1, 1}, {-1, -1}}};
    if (v == 1 && chi_sign == 1)
        throw Unsupported("local_poly: v = 1 with chi = +1 is underdetermined (X + a + 1/X)");
    throw Unsupported("local_poly: valuations >= 2 are out of scope");
}

namespace {

struct LocalDatum {
    long p;
    unsigned v;
};

// Factor |gamma| and validate the supported region: squarefree, odd primes,
// inert (chi_K(p) = -1), coprime to D_K.
std::vector<LocalDatum> supported_local_data(const mpz_class& gamma, const LiftContext& ctx) {
    if (gamma == 0) throw ZeroInput("lift_coeff: gamma = 0");
    mpz_class a = abs(gamma);
    std::vector<LocalDatum> out;
    if (a == 1) return out;
    auto chi = DirichletCharacter::kronecker(-ctx.disc_abs);
    Factorization f = factor(a);
    for (const auto& [p, e] : f.factors) {
        if (e > 1) throw UnsupportedLocalDatum("lift_coeff: val_p(gamma) >= 2 at p = " + p.get_str());
        if (p == 2) throw UnsupportedLocalDatum("lift_coeff: p = 2 not supported");
        if (mpz_divisible_ui_p(mpz_class(ctx.disc_abs).get_mpz_t(), mpz_get_ui(p.get_mpz_t())))
            throw UnsupportedLocalDatum("lift_coeff: p | D_K not supported");
        // Hilbert symbol (-D_K, gamma)_p = chi_K(p)^{val_p(gamma)} for odd p coprime to D_K
        if (chi(p) != -1)
            throw UnsupportedLocalDatum("lift_coeff: chi_K(p) = +1 at p = " + p.get_str() +
                                        " (local polynomial underdetermined)");
        if (!mpz_fits_slong_p(p.get_mpz_t())) throw UnsupportedLocalDatum("lift_coeff: p too large");
        out.push_back({mpz_get_si(p.get_mpz_t()), static_cast<unsigned>(e)});
    }
    return out;
}

}  // namespace

mpz_class lift_coeff(const mpz_class& gamma, const LiftContext& ctx, const QExpansion& phi) {
    if (phi.weight != ctx.expected_phi_weight() || phi.level != ctx.expected_phi_level())
        throw Error("lift_coeff: phi does not match the lift context");
    auto data = supported_local_data(gamma, ctx);
    // |gamma|^x prod_p F~_p(alpha'_p) with F~ = X - 1/X collapses to prod a_phi(p):
    // p^x (alpha' - 1/alpha') = alpha + beta exactly since alpha beta = chi(p) p^{2k-1} = -p^{2k-1}
    mpz_class acc = 1;
    for (const auto& d : data) {
        if (d.p > phi.truncation())
            throw InsufficientCoefficients("lift_coeff: need a_phi(" + std::to_string(d.p) + ")");
        mpq_class ap = phi.a(d.p);
        if (ap.get_den() != 1) throw NonIntegralCoefficient("lift_coeff: non-integral a_phi(p)");
        acc *= ap.get_num();
    }
    return acc;
}

std::vector<mpz_class> supported_gammas(const LiftContext& ctx, long bound) {
    auto chi = DirichletCharacter::kronecker(-ctx.disc_abs);
    std::vector<long> primes;
    for (long p = 3; p <= bound; p += 2) {
        if (!is_prime(mpz_class(p))) continue;
        if (ctx.disc_abs % p == 0) continue;
        if (chi(p) == -1) primes.push_back(p);
    }
    std::vector<mpz_class> out = {1, -1};
    // depth-first squarefree products
    std::function<void(size_t, mpz_class)> rec = [&](size_t i, mpz_class prod) {
        for (size_t j = i; j < primes.size(); ++j) {
            mpz_class next = prod * primes[j];
            if (next > bound) break;
            out.push_back(next);
            out.push_back(-next);
            rec(j + 1, next);
        }
    };
    rec(0, 1);
    std::sort(out.begin(), out.end(), [](const mpz_class& x, const mpz_class& y) {
        mpz_class ax = abs(x), ay = abs(y);
        if (ax != ay) return ax < ay;
        return x > y;  // +g before -g
    });
    return out;
}

CongruenceReport lift_congruence_check(const QExpansion& phi, const QExpansion& phi2, const LiftContext& ctx,
                                       const mpz_class& ell, unsigned r, long bound) {
    if (phi.weight != phi2.weight || phi.level != phi2.level)
        throw Error("lift_congruence_check: forms of the same weight and level required");
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), ell.get_mpz_t(), r);
    CongruenceReport rep;
    long top = std::min({static_cast<long>(bound), phi.truncation(), phi2.truncation()});
    for (long n = 1; n <= top; ++n) {
        mpq_class d = phi.a(n) - phi2.a(n);
        if (d == 0) continue;
        if (d.get_den() != 1 || !mpz_divisible_p(d.get_num().get_mpz_t(), mod.get_mpz_t())) {
            rep.premise_holds = false;
            rep.premise_violation_index = n;
            break;
        }
    }
    for (const mpz_class& gamma : supported_gammas(ctx, bound)) {
        mpz_class c1 = lift_coeff(gamma, ctx, phi);
        mpz_class c2 = lift_coeff(gamma, ctx, phi2);
        ++rep.checked;
        mpz_class d = c1 - c2;
        if (!mpz_divisible_p(d.get_mpz_t(), mod.get_mpz_t())) {
            rep.all_congruent = false;
            if (!rep.first_violation_gamma) rep.first_violation_gamma = gamma;
        }
    }
    return rep;
}

std::string CongruenceReport::summary() const {
    std::ostringstream os;
    os << "checked " << checked << " supported gamma values: ";
    if (all_congruent) os << "all lift coefficients congruent";
    else os << "violation at gamma = " << first_violation_gamma->get_str();
    if (!premise_holds) os << " (premise fails at coefficient " << premise_violation_index << ")";
    return os.str();
}

std::optional<long> nonvanishing_sweep(const QExpansion& phi, const LiftContext& ctx, const mpz_class& ell, long bound) {
    if (ell == 2 || mpz_divisible_p(mpz_class(2 * ctx.disc_abs).get_mpz_t(), ell.get_mpz_t()))
        throw Error("nonvanishing_sweep: ell | 2 D_K");
    auto chi = DirichletCharacter::kronecker(-ctx.disc_abs);
    long D = ctx.disc_abs;
    for (long p = 3; p <= std::min(bound, phi.truncation()); p += 2) {
        if (p % D != D - 1) continue;  // p = -1 mod D_K
        if (!is_prime(mpz_class(p))) continue;
        if (chi(p) != -1) throw Error("nonvanishing_sweep: inertness cross-check failed at p = " + std::to_string(p));
        mpq_class ap = phi.a(p);
        if (ap.get_den() != 1) throw NonIntegralCoefficient("nonvanishing_sweep: non-integral coefficient");
        if (!mpz_divisible_p(ap.get_num().get_mpz_t(), ell.get_mpz_t())) return p;
    }
    return std::nullopt;
}

std::vector<mpq_class> std_L_points(const LiftContext& ctx, const mpq_class& s, const std::string&) {
    std::vector<mpq_class> out;
    for (long i = 1; i <= ctx.n; ++i) {
        mpq_class v = s + ctx.k + ctx.m - ctx.n - i + 1;
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

}  // namespace congr
