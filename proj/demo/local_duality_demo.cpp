// End-to-end tour on the D4 singularity f = z1^3 + z1 z2^2: Milnor data,
// the residue pairing with its determinant, the duality pairing of the
// socle against 1, and the exact/numeric residue comparison.

#include <cstdio>

#include "residua/parser.hpp"
#include "residua/vres.hpp"

using namespace residua;

int main() {
    ring_ptr ring = poly_ring::make(2);
    polynomial f = parse_polynomial(ring, "z1^3 + z1*z2^2");
    section s = section::gradient_of(f);

    milnor_algebra m = make_milnor(s);
    std::printf("mu = %zu, basis:", m.mu);
    for (const auto& b : m.basis) std::printf(" %s", polynomial::from_monomial(ring, b, 1).str().c_str());
    std::printf("\n");

    pairing_matrix pm = residue_pairing_matrix(s);
    std::printf("pairing determinant = %s (nondegenerate: %s)\n", pm.determinant.str().c_str(),
                pm.determinant.is_zero() ? "no" : "yes");

    residue_value hess = hessian_residue(f);
    std::printf("hessian residue = %s\n", hess.value.str().c_str());

    polynomial g = parse_polynomial(ring, "z2^2");
    polynomial one = polynomial::one(ring);
    residue_value pv = pairing_psi(g, one, s);
    std::printf("(z2^2, 1)_psi = %s * (2 pi i)^%d\n", pv.value.str().c_str(), pv.unit_power);

    equa9_report cmp = compare_equa9(g, one, s, {1.0, 48, 1e-3});
    std::printf("numeric Res = %.10f%+.10fi, exact target = %.10f, |diff| = %.2e -> %s\n",
                cmp.numeric.value.real(), cmp.numeric.value.imag(), cmp.expected.real(),
                cmp.abs_diff, cmp.pass ? "match" : "MISMATCH");
    return cmp.pass ? 0 : 1;
}
