#include "congr/heckechar.hpp"

#include <algorithm>
#include <tuple>

#include "congr/errors.hpp"

namespace congr {

ImagQuadField ImagQuadField::of_disc(long disc) {
    static const long class_number_one[] = {3, 4, 7, 8, 11, 19, 43, 67, 163};
    long d = -disc;
    bool found = false;
    for (long c : class_number_one)
        if (c == d) found = true;
    if (!found)
        throw UnsupportedField("ImagQuadField: discriminant " + std::to_string(disc) +
                               " is not a class-number-1 fundamental discriminant");
    ImagQuadField f;
    f.disc_abs = d;
    f.unit_order = (d == 3) ? 6 : (d == 4) ? 4 : 2;
    return f;
}

namespace {

// All (a, b) with a^2 + D b^2 = 4j and the integrality parity for O_K.
std::vector<QuadInt> lattice_points(long D, long j) {
    std::vector<QuadInt> pts;
    mpz_class target = mpz_class(4) * j;
    bool half_integers = (D % 4 == 3);
    for (long b = 0;; ++b) {
        mpz_class rest = target - mpz_class(D) * b * b;
        if (rest < 0) break;
        mpz_class a2 = rest;
        mpz_class a;
        if (mpz_perfect_square_p(a2.get_mpz_t())) {
            mpz_sqrt(a.get_mpz_t(), a2.get_mpz_t());
            bool par_ok = half_integers ? ((a - b) % 2 == 0) : (a % 2 == 0);
            if (par_ok) {
                pts.push_back({a, b});
                if (a != 0) pts.push_back({-a, b});
                if (b != 0) {
                    pts.push_back({a, -b});
                    if (a != 0) pts.push_back({-a, -b});
                }
            }
        }
    }
    return pts;
}

QuadInt unit_rotate(const QuadInt& z, long D) {
    // multiplication by omega = (1 + sqrt(-3))/2 for D = 3, by i for D = 4
    if (D == 3) return {(z.a - 3 * z.b) / 2, (z.a + z.b) / 2};
    if (D == 4) return {-2 * z.b, z.a / 2};
    return {-z.a, -z.b};
}

std::vector<QuadInt> unit_orbit(const QuadInt& z, const ImagQuadField& F) {
    std::vector<QuadInt> orbit;
    QuadInt cur = z;
    for (int i = 0; i < F.unit_order / 2; ++i) {
        orbit.push_back(cur);
        orbit.push_back({-cur.a, -cur.b});
        cur = unit_rotate(cur, F.disc_abs);
    }
    return orbit;
}

std::tuple<mpz_class, mpz_class, int, int> canon_key(const QuadInt& z) {
    return {abs(z.a), abs(z.b), z.a < 0 ? 1 : 0, z.b < 0 ? 1 : 0};
}

}  // namespace

std::vector<QuadInt> ideals_of_norm(const ImagQuadField& field, long j) {
    auto pts = lattice_points(field.disc_abs, j);
    std::vector<QuadInt> reps;
    std::vector<bool> used(pts.size(), false);
    auto find_idx = [&](const QuadInt& z) -> long {
        for (size_t i = 0; i < pts.size(); ++i)
            if (pts[i].a == z.a && pts[i].b == z.b) return static_cast<long>(i);
        return -1;
    };
    for (size_t i = 0; i < pts.size(); ++i) {
        if (used[i]) continue;
        auto orbit = unit_orbit(pts[i], field);
        QuadInt best = orbit[0];
        for (const auto& z : orbit) {
            long idx = find_idx(z);
            if (idx >= 0) used[idx] = true;
            if (canon_key(z) < canon_key(best)) best = z;
        }
        reps.push_back(best);
    }
    std::sort(reps.begin(), reps.end(), [](const QuadInt& x, const QuadInt& y) { return canon_key(x) < canon_key(y); });
    return reps;
}

QExpansion cm_form(const ImagQuadField& field, long u, long N) {
    if (u >= 0) throw Error("cm_form: u < 0 required");
    if ((-u) % field.unit_order != 0)
        throw UnitObstruction("cm_form: unit order " + std::to_string(field.unit_order) +
                              " does not divide u = " + std::to_string(u));
    long m = -u;
    long D = field.disc_abs;
    QExpansion g;
    g.weight = m + 1;
    g.level = D;
    g.character = field.chi();
    g.coeffs.assign(static_cast<size_t>(N) + 1, mpq_class(0));
    for (long j = 1; j <= N; ++j) {
        // sum over all lattice generators of alpha^m, divided by the unit count;
        // alpha^m is unit-invariant because unit_order | m
        auto pts = lattice_points(D, j);
        if (pts.empty()) continue;
        mpq_class re_sum = 0;
        for (const auto& z : pts) {
            // alpha = (a + b sqrt(-D))/2; compute alpha^m in Q(sqrt(-D))
            mpq_class x(z.a, 2), y(z.b, 2);
            x.canonicalize();
            y.canonicalize();
            mpq_class px = 1, py = 0;
            long e = m;
            mpq_class bx = x, by = y;
            while (e) {
                if (e & 1) {
                    mpq_class nx = px * bx - D * py * by;
                    mpq_class ny = px * by + py * bx;
                    px = nx;
                    py = ny;
                }
                mpq_class sx = bx * bx - D * by * by;
                mpq_class sy = 2 * bx * by;
                bx = sx;
                by = sy;
                e >>= 1;
            }
            re_sum += px;  // imaginary parts cancel over the full point set
        }
        mpq_class a = re_sum / field.unit_order;
        a.canonicalize();
        if (a.get_den() != 1) throw Error("cm_form: non-integral coefficient, normalization bug");
        g.coeffs[j] = a;
    }
    return g;
}

std::vector<mpq_class> shift_identity_points(long u, const std::vector<mpq_class>& pts) {
    std::vector<mpq_class> out;
    out.reserve(pts.size());
    for (const auto& s : pts) {
        mpq_class v = s - mpq_class(u, 2);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

}  // namespace congr
