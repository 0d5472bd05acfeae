#ifndef CONGR_HECKECHAR_HPP
#define CONGR_HECKECHAR_HPP

#include <vector>

#include "congr/qexp.hpp"

namespace congr {

// Imaginary quadratic field of class number 1, discriminant -disc_abs.
struct ImagQuadField {
    long disc_abs;   // D_K > 0, field is Q(sqrt(-D_K)) of discriminant -D_K
    int unit_order;  // 6 for D_K=3, 4 for D_K=4, else 2

    // Throws UnsupportedField unless -disc is a fundamental discriminant of
    // class number 1.
    static ImagQuadField of_disc(long disc);

    DirichletCharacter chi() const { return DirichletCharacter::kronecker(-disc_abs); }
};

// Element (a + b sqrt(-D_K))/2 of O_K; a = b mod 2 when D_K = 3 mod 4,
// else b even (so it is really a' + b' sqrt(-D_K/4) for D_K = 0 mod 4).
struct QuadInt {
    mpz_class a, b;

    mpz_class norm_times4(long D) const { return a * a + D * b * b; }
};

struct HeckeCharSpec {
    ImagQuadField field;
    long t;  // infinity type z -> (z/|z|)^{-t}; conductor 1 only
};

// One generator per ideal of norm j (canonical representative per unit orbit).
std::vector<QuadInt> ideals_of_norm(const ImagQuadField& field, long j);

// CM newform attached to the unramified Hecke character with composite
// infinity exponent u < 0 (unit_order | u): weight -u+1, level D_K,
// nebentypus chi_K; a(j) = sum over ideals of norm j of alpha^{-u}.
QExpansion cm_form(const ImagQuadField& field, long u, long N);

// Base-change to convolution evaluation points: { s - u/2 : s in pts }.
std::vector<mpq_class> shift_identity_points(long u, const std::vector<mpq_class>& pts);

}  // namespace congr

#endif
