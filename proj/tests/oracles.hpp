#pragma once

#include <vector>

#include "residua/polynomial.hpp"

// Independent residue oracles used by the unit and acceptance suites. They
// never touch the Groebner/transformation-law path: the one-variable oracle
// is exact Laurent-series coefficient extraction, and the diagonal oracle
// multiplies per-variable one-dimensional results.
namespace residua::oracle {

/// res_0( g dz / f ) for univariate g, f with f = c_a z^a (1 + ...),
/// computed from the exact power-series inverse of the unit factor.
inline gaussian_rational residue_univariate(const polynomial& g, const polynomial& f) {
    if (f.is_zero()) fail(errc::invalid_argument, "oracle: zero denominator");
    // order a and coefficients c_{a+m}
    unsigned a = 0;
    bool found = false;
    std::vector<gaussian_rational> c; // c[m] = coeff of z^{a+m}
    unsigned maxdeg = 0;
    for (const auto& [m, k] : f.terms()) maxdeg = std::max(maxdeg, m[0]);
    for (unsigned k = 0; k <= maxdeg; ++k) {
        gaussian_rational ck = f.coeff(monomial::var(1, 0, k));
        if (!found) {
            if (ck.is_zero()) continue;
            a = k;
            found = true;
        }
        c.push_back(ck);
    }
    if (a == 0) return gaussian_rational(0); // f is a unit at the origin
    // v = 1 / (c_a + c_{a+1} z + ...), truncated at order a-1
    std::vector<gaussian_rational> v(a, gaussian_rational(0));
    gaussian_rational inv0 = c[0].inv();
    v[0] = inv0;
    for (unsigned m = 1; m < a; ++m) {
        gaussian_rational acc(0);
        for (unsigned j = 1; j <= m; ++j) {
            gaussian_rational cj = j < c.size() ? c[j] : gaussian_rational(0);
            acc += cj * v[m - j];
        }
        v[m] = -(acc * inv0);
    }
    // [z^{a-1}] (g * v)
    gaussian_rational out(0);
    for (const auto& [m, k] : g.terms()) {
        unsigned t = m[0];
        if (t <= a - 1) out += k * v[a - 1 - t];
    }
    return out;
}

/// res_0( g dz / (f_1(z_1) ... f_n(z_n)) ) where each f_i involves only
/// z_i: the product of per-variable one-dimensional residues, monomial by
/// monomial of g.
inline gaussian_rational residue_diagonal(const polynomial& g,
                                          const std::vector<polynomial>& fs) {
    const ring_ptr& ring = g.ring();
    std::size_t n = ring->nvars();
    if (fs.size() != n) fail(errc::arity_error, "oracle: section length mismatch");
    ring_ptr R1 = poly_ring::make(1);

    // restrict f_i to a univariate polynomial (validates diagonality)
    std::vector<polynomial> f1;
    for (std::size_t i = 0; i < n; ++i) {
        polynomial u(R1);
        for (const auto& [m, c] : fs[i].terms()) {
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && m[j] != 0)
                    fail(errc::invalid_argument, "oracle: section is not diagonal");
            u.add_term(monomial::var(1, 0, m[i]), c);
        }
        f1.push_back(std::move(u));
    }

    gaussian_rational out(0);
    for (const auto& [m, c] : g.terms()) {
        gaussian_rational prod = c;
        for (std::size_t i = 0; i < n && !prod.is_zero(); ++i)
            prod *= residue_univariate(polynomial::variable(R1, 0, m[i]), f1[i]);
        out += prod;
    }
    return out;
}

} // namespace residua::oracle
