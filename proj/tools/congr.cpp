#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "congr/certify.hpp"
#include "congr/heckechar.hpp"
#include "congr/ikeda.hpp"
#include "congr/lseries.hpp"

using json = nlohmann::ordered_json;
using namespace congr;

namespace {

long env_digits(long fallback) {
    if (const char* e = std::getenv("CONGR_DIGITS")) {
        long v = std::atol(e);
        if (v >= 60) return v;
    }
    return fallback;
}

// flat key = value file with optional [section] headers; '#' comments
std::map<std::string, std::string> parse_kv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line, section;
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        size_t b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigInvalid("malformed config line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (!section.empty()) key = section + "." + key;
        if (kv.count(key)) throw ConfigInvalid("duplicate config key: " + key);
        kv[key] = val;
    }
    return kv;
}

CertConfig load_config(const std::string& path) {
    auto kv = parse_kv_file(path);
    CertConfig cfg;
    std::map<std::string, long*> fields = {
        {"disc", &cfg.disc},
        {"n", &cfg.n},
        {"k", &cfg.k},
        {"m", &cfg.m},
        {"t", &cfg.t},
        {"precision_digits", &cfg.precision_digits},
        {"prime_bound", &cfg.prime_bound},
        {"denominator_digit_bound", &cfg.denominator_digit_bound},
        {"T", &cfg.T},
    };
    std::ostringstream errs;
    for (auto& [key, val] : kv) {
        auto it = fields.find(key);
        if (it == fields.end()) {
            errs << "unknown key '" << key << "'\n";
            continue;
        }
        try {
            size_t pos = 0;
            long v = std::stol(val, &pos);
            if (pos != val.size()) throw std::invalid_argument(val);
            *it->second = v;
        } catch (const std::exception&) {
            errs << "bad integer for key '" << key << "': " << val << "\n";
        }
    }
    if (!errs.str().empty()) throw ConfigInvalid("config errors:\n" + errs.str());
    cfg.validate();
    return cfg;
}

std::string factored(const mpq_class& q) {
    if (q == 0) return "0";
    std::string s;
    if (q < 0) s += "-";
    s += factor(abs(q.get_num())).str();
    if (q.get_den() != 1) s += " / (" + factor(q.get_den()).str() + ")";
    return s;
}

json rational_json(const mpq_class& q) {
    json j;
    j["rational"] = q.get_str();
    j["factored"] = factored(q);
    return j;
}

json factor_list(const mpz_class& n) {
    json arr = json::array();
    if (n == 0) return arr;
    for (auto& [p, e] : factor(abs(n)).factors) arr.push_back(json::array({p.get_str(), e}));
    return arr;
}

int run_qexp(const std::string& form, long terms) {
    QExpansion f;
    if (form == "s26") f = newform_s26(std::max(terms, 6l));
    else if (form == "delta") f = delta(std::max(terms, 1l));
    else if (form == "e4") f = eisenstein(4, terms);
    else if (form == "e6") f = eisenstein(6, terms);
    else throw Error("unknown form '" + form + "' (expected s26, delta, e4, e6)");
    long lo = (form == "e4" || form == "e6") ? 0 : 1;
    for (long n = lo; n <= terms; ++n) std::cout << f.a(n) << "\n";
    return 0;
}

int run_cmform(long disc, long u, long terms) {
    ImagQuadField K = ImagQuadField::of_disc(disc);
    QExpansion g = cm_form(K, u, terms);
    for (long n = 1; n <= terms; ++n) std::cout << g.a(n) << "\n";
    return 0;
}

LFunctionSpec spec_from_file(const std::string& path, long digits) {
    auto kv = parse_kv_file(path);
    auto need = [&](const std::string& k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigInvalid("spec file missing key '" + k + "'");
        return it->second;
    };
    LFunctionSpec s;
    s.label = kv.count("label") ? kv["label"] : path;
    s.degree = std::stol(need("degree"));
    s.conductor = mpz_class(need("conductor"));
    s.motivic_weight = std::stol(need("motivic_weight"));
    {
        std::stringstream gs(need("gamma"));
        std::string tok;
        while (std::getline(gs, tok, ',')) {
            auto colon = tok.find(':');
            if (colon == std::string::npos) throw ConfigInvalid("gamma entries look like R:0 or C:-6");
            std::string kind = tok.substr(0, colon);
            kind.erase(std::remove_if(kind.begin(), kind.end(), ::isspace), kind.end());
            s.gamma_shifts.push_back({kind.at(0), mpq_class(tok.substr(colon + 1))});
        }
    }
    if (kv.count("poles")) {
        std::stringstream ps(kv["poles"]);
        std::string tok;
        while (std::getline(ps, tok, ',')) {
            auto colon = tok.find(':');
            if (colon == std::string::npos) throw ConfigInvalid("pole entries look like rho:residue");
            s.lambda_poles.emplace_back(mpq_class(tok.substr(0, colon)), mpq_class(tok.substr(colon + 1)));
        }
    }
    std::string coeffs = need("coeffs");
    std::stringstream cs(coeffs);
    std::string kind;
    cs >> kind;
    AnalyticCore probe = s.core();
    long M = afe_coefficient_cutoff(probe, digits, kind == "sym2" ? 25.4 : (kind == "conv" ? 16.0 : 0.2)) + 8;
    if (kind == "zeta") {
        LFunctionSpec z = zeta_spec(M);
        s.coeffs = std::move(z.coeffs);
        if (s.lambda_poles.empty()) s.lambda_poles = z.lambda_poles;
    } else if (kind == "dirichlet") {
        long d;
        cs >> d;
        s.coeffs = dirichlet_spec(DirichletCharacter::kronecker(d), M).coeffs;
    } else if (kind == "sym2") {
        std::string formname, twist;
        cs >> formname >> twist;
        if (formname != "s26") throw Unsupported("spec coeffs: only the s26 eigenform is built in");
        QExpansion phi = newform_s26(M);
        DirichletCharacter tw = (twist == "chi3") ? DirichletCharacter::kronecker(-3) : DirichletCharacter::trivial(1);
        s.coeffs = sym2_spec(phi, tw, M).coeffs;
    } else if (kind == "conv") {
        QExpansion phi = newform_s26(M);
        QExpansion g = cm_form(ImagQuadField::of_disc(-3), -6, M);
        s.coeffs = conv_spec(phi, g, M).coeffs;
    } else {
        throw Unsupported("spec coeffs generator '" + kind + "' (expected zeta, dirichlet D, sym2 s26 [chi3], conv)");
    }
    std::string rn = need("root_number");
    if (rn != "solve") {
        if (rn == "1") s.root_number = Complex::of(Real::of(1l, 64));
        else if (rn == "-1") s.root_number = Complex::of(Real::of(-1l, 64));
        else throw ConfigInvalid("root_number must be 1, -1 or solve");
    }
    return s;
}

int run_lvalue(const std::string& specpath, const std::string& spoint, long digits) {
    LFunctionSpec spec = spec_from_file(specpath, digits);
    LSeries ls(std::move(spec), digits);
    if (!ls.spec().root_number) {
        mpq_class c(ls.spec().motivic_weight + 1, 2);
        Complex eps = ls.solve_root_number(c + mpq_class(1, 3), c + mpq_class(3, 7));
        std::cout << "solved root number: " << eps.re.str(30) << (eps.im.is_zero() ? "" : " + i*" + eps.im.str(30))
                  << "\n";
    }
    mpq_class s(spoint);
    s.canonicalize();
    LValue v = ls.afe_eval(Complex::of(Real::of(s, static_cast<mpfr_prec_t>(digits * 3.4))));
    std::cout << "L(" << s << ") = " << v.value.re.str(static_cast<size_t>(digits));
    if (!v.value.im.is_zero()) std::cout << " + i*" << v.value.im.str(static_cast<size_t>(digits));
    std::cout << "\nabs error bound: " << v.abs_error_bound.str(4) << "\n";
    return 0;
}

int run_lalg(const std::string& which, long j, long digits) {
    long trunc = Lalg::required_truncation(digits, 26, 7);
    QExpansion phi = newform_s26(trunc);
    QExpansion g = cm_form(ImagQuadField::of_disc(-3), -6, trunc);
    long max_den = std::min(40l, digits / 2 - 10);
    Lalg lalg(std::move(phi), std::move(g), digits, max_den);
    mpq_class v = (which == "sym2") ? lalg.sym2(j) : lalg.conv(j);
    std::cout << factored(v) << "\n";
    std::cout << "= " << v << "\n";
    return 0;
}

int run_ikeda_coeff(const std::string& gamma_str) {
    LiftContext ctx = LiftContext::make(5, 13, -3);
    mpz_class gamma(gamma_str);
    long need = 100;
    for (auto& [p, e] : factor(abs(gamma)).factors) need = std::max(need, mpz_get_si(p.get_mpz_t()) + 1);
    QExpansion phi = newform_s26(need);
    mpz_class c = lift_coeff(gamma, ctx, phi);
    std::cout << c.get_str() << "\n";
    return 0;
}

int run_ikeda_sweep(const std::string& ell_str, long bound) {
    LiftContext ctx = LiftContext::make(5, 13, -3);
    mpz_class ell(ell_str);
    QExpansion phi = newform_s26(bound);
    auto w = nonvanishing_sweep(phi, ctx, ell, bound);
    if (w) {
        std::cout << "witness p = " << *w << " (a_phi(p) != 0 mod " << ell.get_str() << ", chi_K(p) = -1)\n";
        return 0;
    }
    std::cout << "NoneFound: every odd p = -1 mod D_K up to " << bound << " has a_phi(p) = 0 mod " << ell.get_str()
              << "; cannot rule out an abelian residual image by this sweep\n";
    return 0;
}

json report_json(const CertConfig& cfg, const CertData& data, const std::vector<CertificationReport>& reports) {
    json out;
    json echo;
    echo["disc"] = cfg.disc;
    echo["n"] = cfg.n;
    echo["k"] = cfg.k;
    echo["m"] = cfg.m;
    echo["t"] = cfg.t;
    echo["precision_digits"] = cfg.precision_digits;
    echo["prime_bound"] = cfg.prime_bound;
    echo["denominator_digit_bound"] = cfg.denominator_digit_bound;
    echo["T"] = cfg.T;
    out["config_echo"] = echo;
    json sym2 = json::array();
    for (auto& f : data.v_factors)
        sym2.push_back({{"name", f.name}, {"point", f.point}, {"value", rational_json(f.value)}});
    out["lalg_sym2"] = sym2;
    json conv = json::array();
    for (auto& f : data.u_conv_factors)
        conv.push_back({{"name", f.name}, {"point", f.point}, {"value", rational_json(f.value)}});
    out["lalg_conv"] = conv;
    json dir = json::array();
    for (auto& f : data.u_dirichlet_factors) dir.push_back(f.str());
    out["dirichlet"] = dir;
    out["V"] = {{"value", data.V.get_str()},
                {"num_factors", factor_list(data.V.get_num())},
                {"den_factors", factor_list(data.V.get_den())}};
    out["U"] = {{"value", data.U.get_str()},
                {"num_factors", factor_list(data.U.get_num())},
                {"den_factors", factor_list(data.U.get_den())}};
    json reps = json::array();
    for (auto& r : reports) {
        json e;
        e["ell"] = r.ell.get_str();
        json checks = json::array();
        for (auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        e["checks"] = checks;
        e["depth"] = r.depth_b;
        e["status"] = r.certified ? "Certified" : ("Rejected(" + r.reject_reason + ")");
        e["witness_prime"] = r.witness_prime;
        reps.push_back(e);
    }
    out["reports"] = reps;
    out["selection_log"] = data.selection_log;
    return out;
}

int run_certify(const std::string& cfgpath, const std::string& jsonpath, long digits_override) {
    CertConfig cfg = load_config(cfgpath);
    if (digits_override) cfg.precision_digits = digits_override;
    Certifier cert(cfg);
    const CertData& data = cert.compute();
    auto reports = cert.congruence_primes();

    std::cout << "V = " << factored(data.V) << "\n";
    std::cout << "U = " << factored(data.U) << "\n";
    std::cout << "candidate primes from numerator(V), ell > " << 2 * cfg.k + 2 * cfg.m << ":\n";
    bool any = false;
    for (auto& r : reports) {
        std::cout << "  ell = " << r.ell.get_str() << ": "
                  << (r.certified ? "Certified, depth b = " + std::to_string(r.depth_b)
                                  : "Rejected — " + r.reject_reason);
        if (r.witness_prime) std::cout << "  [witness p = " << r.witness_prime << "]";
        std::cout << "\n";
        any = any || r.certified;
    }
    if (!jsonpath.empty()) {
        std::ofstream out(jsonpath);
        out << report_json(cfg, data, reports).dump(2) << "\n";
        std::cout << "report written to " << jsonpath << "\n";
    }
    return any ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"congruence-prime certifier for Ikeda lifts on U(n,n)"};
    app.require_subcommand(1);
    long digits = 0;  // 0 = subcommand default, overridable by CONGR_DIGITS

    auto* sq = app.add_subcommand("qexp", "print exact q-expansion coefficients");
    std::string form = "s26";
    long terms = 6;
    sq->add_option("--form", form, "s26 | delta | e4 | e6");
    sq->add_option("--terms", terms, "number of coefficients")->check(CLI::PositiveNumber);

    auto* sc = app.add_subcommand("cmform", "CM newform attached to an unramified Hecke character");
    long disc = -3, uexp = -6, cterms = 19;
    sc->add_option("--disc", disc, "field discriminant (negative)");
    sc->add_option("--u", uexp, "infinity exponent u < 0, unit order | u");
    sc->add_option("--terms", cterms, "number of coefficients")->check(CLI::PositiveNumber);

    auto* sv = app.add_subcommand("lvalue", "evaluate an L-function from a spec file");
    std::string specpath, spoint = "2";
    sv->add_option("--spec", specpath, "spec file")->required();
    sv->add_option("--s", spoint, "evaluation point (rational)");
    sv->add_option("--digits", digits, "working precision in digits");

    auto* sl = app.add_subcommand("lalg", "recognized algebraic L-values of the weight-26 example");
    std::string which = "sym2";
    long jpoint = 2;
    sl->add_option("--which", which, "sym2 | conv")->check(CLI::IsMember({"sym2", "conv"}));
    sl->add_option("--j", jpoint, "index (sym2: 2..5, conv: 7..11)");
    sl->add_option("--digits", digits, "working precision in digits");

    auto* si = app.add_subcommand("ikeda", "Ikeda-lift Fourier coefficient arithmetic");
    si->require_subcommand(1);
    auto* sic = si->add_subcommand("coeff", "normalized lift coefficient for a supported gamma");
    std::string gamma_str = "1";
    sic->add_option("--gamma", gamma_str, "gamma(h), +-squarefree product of odd inert primes")->required();
    auto* sis = si->add_subcommand("sweep", "first nonvanishing witness mod ell");
    std::string ell_str;
    long bound = 10000;
    sis->add_option("--ell", ell_str, "prime ell")->required();
    sis->add_option("--bound", bound, "sweep bound")->check(CLI::PositiveNumber);

    auto* sy = app.add_subcommand("certify", "run the full congruence-prime certification");
    std::string cfgpath, jsonpath;
    sy->add_option("--config", cfgpath, "certification config file")->required();
    sy->add_option("--json", jsonpath, "write the JSON report here");
    sy->add_option("--digits", digits, "working precision override");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sq) return run_qexp(form, terms);
        if (*sc) return run_cmform(disc, uexp, cterms);
        if (*sv) return run_lvalue(specpath, spoint, digits ? digits : env_digits(150));
        if (*sl) return run_lalg(which, jpoint, digits ? digits : env_digits(150));
        if (*si && *sic) return run_ikeda_coeff(gamma_str);
        if (*si && *sis) return run_ikeda_sweep(ell_str, bound);
        if (*sy) return run_certify(cfgpath, jsonpath, digits ? digits : env_digits(0));
    } catch (const ConfigInvalid& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
