#include "congr/certify.hpp"

#include <algorithm>
#include <sstream>

namespace congr {

void CertConfig::validate() const {
    ImagQuadField field = [&] {
        try {
            return ImagQuadField::of_disc(disc);
        } catch (const UnsupportedField& e) {
            throw ConfigInvalid(e.what());
        }
    }();
    if (n != 2 * m && n != 2 * m + 1) throw ConfigInvalid("n must be 2m or 2m+1");
    if (n > 2 * k - 1) throw ConfigInvalid("Sturm range requires n <= 2k-1");
    long tmin = -2 * k - 2 * m;
    long tmax = std::min(-6l, -4 * n);  // t < min{-6, -4n}
    if (!(tmin <= t && t < tmax))
        throw ConfigInvalid("t = " + std::to_string(t) + " outside [" + std::to_string(tmin) + ", " +
                            std::to_string(tmax) + ")");
    if (t % field.unit_order != 0) throw ConfigInvalid("unit order must divide t");
    if (precision_digits < 60) throw ConfigInvalid("precision_digits >= 60 required");
    if (denominator_digit_bound < 10 || denominator_digit_bound >= precision_digits / 2)
        throw ConfigInvalid("denominator_digit_bound must lie in [10, precision_digits/2)");
    if (T != 1 && n % 4 != 2) throw ConfigInvalid("T != 1 only enters for n = 2 mod 4");
    if (n % 4 == 2 && T == 1)
        throw ConfigInvalid("n = 2 mod 4 requires the T = p witness from the inert-prime matrix");
}

mpz_class unit_group_order_mod(const ImagQuadField& field, const mpz_class& N) {
    if (N <= 0) throw Error("unit_group_order_mod: N >= 1 required");
    mpz_class order = 1;
    auto chi = field.chi();
    for (const auto& [p, e] : factor(N).factors) {
        mpz_class pe, pem1;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        mpz_pow_ui(pem1.get_mpz_t(), p.get_mpz_t(), e - 1);
        int c = chi(p);
        if (c == 1) {
            // split: (Z/p^e)^* x (Z/p^e)^*
            mpz_class u = pe - pem1;
            order *= u * u;
        } else if (c == -1) {
            // inert: F_{p^2}-type: p^{2e} - p^{2e-2}
            order *= pe * pe - pem1 * pem1;
        } else {
            // ramified: p^{2e} - p^{2e-1}
            order *= pe * pe - pe * pem1;
        }
    }
    return order;
}

long dim_cusp_forms_level1(long k) {
    if (k < 4 || k % 2 != 0) throw BadWeight("dim_cusp_forms_level1: even k >= 4");
    long dim_mk = (k % 12 == 2) ? k / 12 : k / 12 + 1;
    return dim_mk - 1;
}

Certifier::Certifier(CertConfig config) : cfg_(std::move(config)), field_(ImagQuadField::of_disc(cfg_.disc)) {
    cfg_.validate();
    if (cfg_.n % 2 == 0)
        throw Unsupported("Certifier: even n needs phi in S_{2k+1}(D_K, chi_K); only the level-1 (odd n) case is automated");
    long trunc = std::max(Lalg::required_truncation(cfg_.precision_digits, 2 * cfg_.k, 2 * cfg_.k + 2 * cfg_.m + cfg_.t + 1),
                          cfg_.prime_bound);
    phi_ = eigenform_level1(2 * cfg_.k, trunc);
    // g = g_{xi beta^{-1}} of weight 2k+2m+t+1, composite infinity exponent u = -(2k+2m+t)
    long u = -(2 * cfg_.k + 2 * cfg_.m + cfg_.t);
    g_ = cm_form(field_, u, trunc);
    lalg_ = std::make_unique<Lalg>(phi_, g_, cfg_.precision_digits, cfg_.denominator_digit_bound);
}

const CertData& Certifier::compute() {
    if (data_) return *data_;
    // eta_phi unit requires phi to be alone in its space
    long dim = dim_cusp_forms_level1(phi_.weight);
    if (dim != 1)
        throw EtaNotUnit("compute_V: dim S_" + std::to_string(phi_.weight) + "(SL2(Z)) = " + std::to_string(dim) +
                         "; eta_phi handling beyond the unique-newform case is out of scope");
    auto d = std::make_unique<CertData>();
    d->V = 1;
    long kappa = phi_.weight;  // 2k
    for (long i = 2; i <= cfg_.n; ++i) {
        mpq_class v = lalg_->sym2(i);
        std::ostringstream name;
        name << "L_alg(" << (i + kappa - 1) << ", Sym2 phi x chi^" << (i + 1) << ")";
        d->v_factors.push_back({name.str(), i + kappa - 1, v});
        d->V *= v;
    }
    d->V.canonicalize();

    // U: convolution product over the shifted points x Dirichlet values
    mpq_class bc_point(2 * cfg_.n + mpq_class(cfg_.t, 2));
    auto bc_points = std_L_points(cfg_.lift_context(), bc_point);
    long u = -(2 * cfg_.k + 2 * cfg_.m + cfg_.t);  // infinity exponent of xi beta^{-1}
    auto conv_points = shift_identity_points(u, bc_points);
    d->U = 1;
    ExactScalar u_surd = ExactScalar::of(1);
    for (const auto& jq : conv_points) {
        if (jq.get_den() != 1) throw Error("compute_U: non-integral convolution point");
        long j = mpz_get_si(jq.get_num().get_mpz_t());
        mpq_class v = lalg_->conv(j);
        std::ostringstream name;
        name << "L_alg(" << j << ", phi x g)";
        d->u_conv_factors.push_back({name.str(), j, v});
        d->U *= v;
    }
    for (long i = 2; i <= cfg_.n; ++i) {
        DirichletCharacter chi_i = field_.chi().power(i);
        ExactScalar val = dirichlet_L_critical(static_cast<unsigned long>(i), chi_i);
        d->u_dirichlet_factors.push_back(val);
        u_surd *= ExactScalar{val.rat, val.sqrt_disc, 0, false};
    }
    if (u_surd.sqrt_disc != 0) throw Error("compute_U: unpaired surd in the Dirichlet product");
    d->U *= u_surd.rat;
    d->U.canonicalize();
    d->selection_log = lalg_->selection_log();
    data_ = std::move(d);
    return *data_;
}

CertificationReport Certifier::check_hypotheses(const mpz_class& ell) {
    const CertData& data = compute();
    CertificationReport rep;
    rep.ell = ell;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
        if (!pass && rep.reject_reason.empty()) rep.reject_reason = name + ": " + detail;
    };

    long bound_2k2m = 2 * cfg_.k + 2 * cfg_.m;
    add("ell > 2k+2m", ell > bound_2k2m, ell.get_str() + " vs " + std::to_string(bound_2k2m));

    // ell does not divide 2 h_K D_K i(phi); h_K = 1 and i(phi) = 1 in scope
    mpz_class bad = 2 * mpz_class(field_.disc_abs);
    bool coprime = mpz_class(bad % ell) != 0;
    add("ell coprime to 2 h_K D_K i(phi)", coprime, "2 h_K D_K i(phi) = " + bad.get_str());

    long tmax = std::min(-6l, -4 * cfg_.n);
    bool t_ok = (-bound_2k2m <= cfg_.t) && (cfg_.t < tmax);
    add("t range", t_ok, "t = " + std::to_string(cfg_.t));

    // val_ell(T #(O_K/N O_K)^x) = 0 with N = T D_K h_K Nm(cond xi), cond xi = 1
    mpz_class N = mpz_class(cfg_.T) * field_.disc_abs;
    mpz_class ug = unit_group_order_mod(field_, N);
    mpz_class tu = ug * cfg_.T;
    bool unit_ok = mpz_class(tu % ell) != 0;
    add("val(T #(O_K/N O_K)^x) = 0", unit_ok, "T #(O_K/" + N.get_str() + ")^x = " + tu.get_str());

    long vU = (data.U == 0) ? 0 : val_p(data.U, ell);
    add("val(U) = 0", vU == 0, "val_" + ell.get_str() + "(U) = " + std::to_string(vU));

    long vV = (data.V == 0) ? 0 : val_p(data.V, ell);
    add("b = val(V) >= 1", vV >= 1, "val_" + ell.get_str() + "(V) = " + std::to_string(vV));

    std::optional<long> witness;
    try {
        witness = nonvanishing_sweep(phi_, cfg_.lift_context(), ell, cfg_.prime_bound);
    } catch (const Error&) {
        witness = std::nullopt;
    }
    add("nonvanishing witness", witness.has_value(),
        witness ? "a_phi(" + std::to_string(*witness) + ") != 0 mod ell" : "no witness up to the sweep bound");
    if (witness) rep.witness_prime = *witness;

    // informational only: ordinarity of phi at ell is not a certification gate
    if (ell <= phi_.truncation()) {
        long ell_l = mpz_get_si(ell.get_mpz_t());
        mpq_class ap = phi_.a(ell_l);
        bool ordin = ap != 0 && !mpz_divisible_p(ap.get_num().get_mpz_t(), ell.get_mpz_t());
        rep.checks.push_back({"[info] phi ordinary at ell", ordin, ordin ? "a_phi(ell) is an ell-unit" : "a_phi(ell) = 0 mod ell"});
    }
    rep.checks.push_back({"[info] A_3 condition", true, "A_3 (a volume-type constant) is not computable in scope; not a gate"});

    rep.depth_b = std::max(0l, vV);
    bool all = true;
    for (const auto& c : rep.checks)
        if (c.name.rfind("[info]", 0) != 0 && !c.pass) all = false;
    rep.certified = all && rep.depth_b >= 1;
    return rep;
}

std::vector<CertificationReport> Certifier::congruence_primes() {
    const CertData& data = compute();
    mpz_class num = abs(data.V.get_num());
    Factorization f = factor(num);
    long bound = 2 * cfg_.k + 2 * cfg_.m;
    std::vector<CertificationReport> out;
    for (const auto& [p, e] : f.factors) {
        if (p <= bound) continue;
        out.push_back(check_hypotheses(p));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.ell < b.ell; });
    return out;
}

}  // namespace congr
