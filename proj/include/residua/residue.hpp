#pragma once

#include <string>
#include <vector>

#include "residua/koszul.hpp"
#include "residua/linalg.hpp"

namespace residua {

/// Exact residue value: `value * (2*pi*i)^unit_power`. Algebraic residues
/// carry unit_power 0; the duality pairing carries unit_power n.
struct residue_value {
    gaussian_rational value;
    int unit_power = 0;

    friend bool operator==(const residue_value&, const residue_value&) = default;
};

/// Determinant of a square polynomial matrix by Laplace expansion (the
/// matrices here are n x n with n the variable count).
inline polynomial poly_det(const std::vector<std::vector<polynomial>>& m) {
    std::size_t n = m.size();
    if (n == 0) fail(errc::invalid_argument, "empty matrix");
    for (const auto& row : m)
        if (row.size() != n) fail(errc::invalid_argument, "non-square matrix");
    const ring_ptr& ring = m[0][0].ring();
    if (n == 1) return m[0][0];

    polynomial acc = polynomial::zero(ring);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<polynomial>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<polynomial> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        polynomial term = m[0][j] * poly_det(minor);
        if (j % 2) term = -term;
        acc += term;
    }
    return acc;
}

/// Residue computation through the transformation law: find the smallest
/// pure powers z_i^{a_i} inside the section ideal, lift them through the
/// generators, and reduce to a monomial denominator where the residue is a
/// plain coefficient. Everything is exact and reusable across numerators.
class groth_engine {
public:
    explicit groth_engine(section s, unsigned power_cap = 64)
        : s_(std::move(s)), milnor_(make_milnor(s_)), det_a_(s_.ring) {
        std::size_t n = s_.n();
        for (std::size_t i = 0; i < n; ++i) {
            unsigned a = 0;
            for (unsigned k = 1; k <= power_cap; ++k) {
                polynomial zk = polynomial::variable(s_.ring, i, k);
                if (normal_form(zk, milnor_.gb).remainder.is_zero()) {
                    a = k;
                    break;
                }
            }
            if (a == 0)
                fail(errc::non_isolated_zero,
                     "no power of " + s_.ring->vars[i] + " up to " + std::to_string(power_cap) +
                         " lies in the section ideal (zero locus not concentrated at the origin)");
            exps_.push_back(a);
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto lift = lift_in_ideal(polynomial::variable(s_.ring, i, exps_[i]), s_.f);
            if (!lift) fail(errc::internal, "pure power lost between normal form and lift");
            lift_.push_back(std::move(*lift));
        }
        det_a_ = poly_det(lift_);
    }

    const section& sec() const { return s_; }
    const milnor_algebra& milnor() const { return milnor_; }
    const std::vector<unsigned>& pure_power_exponents() const { return exps_; }
    const std::vector<std::vector<polynomial>>& lift_matrix() const { return lift_; }
    const polynomial& lift_determinant() const { return det_a_; }

    /// res_s(g): coefficient of z^(a-1) in g * det(A).
    residue_value residue(const polynomial& g) const {
        check_same_ring(s_.ring, g.ring());
        return residue_with(g, det_a_);
    }

    /// Same extraction against an alternative lift determinant (exposed so
    /// lift-independence can be exercised from outside).
    residue_value residue_with(const polynomial& g, const polynomial& det_alt) const {
        polynomial p = g * det_alt;
        std::vector<std::uint32_t> e;
        e.reserve(exps_.size());
        for (unsigned a : exps_) e.push_back(a - 1);
        return {p.coeff(monomial(std::move(e))), 0};
    }

private:
    section s_;
    milnor_algebra milnor_;
    std::vector<unsigned> exps_;
    std::vector<std::vector<polynomial>> lift_;
    polynomial det_a_;
};

inline residue_value groth_residue(const polynomial& g, const section& s, unsigned cap = 64) {
    return groth_engine(s, cap).residue(g);
}

/// The residue pairing on the Milnor basis, with its exact determinant.
struct pairing_matrix {
    std::vector<monomial> basis;
    gq_matrix entries;
    gaussian_rational determinant;
};

inline pairing_matrix residue_pairing_matrix_from(const groth_engine& eng) {
    const auto& basis = eng.milnor().basis;
    std::size_t mu = basis.size();
    pairing_matrix out{basis, gq_matrix(mu, std::vector<gaussian_rational>(mu, gaussian_rational(0))),
                       gaussian_rational(1)};
    const ring_ptr& ring = eng.sec().ring;
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = i; j < mu; ++j) {
            polynomial p = polynomial::from_monomial(ring, basis[i] * basis[j], 1);
            gaussian_rational v = eng.residue(p).value;
            out.entries[i][j] = v;
            out.entries[j][i] = v;
        }
    out.determinant = exact_det(out.entries);
    return out;
}

inline pairing_matrix residue_pairing_matrix(const section& s) {
    return residue_pairing_matrix_from(groth_engine(s));
}

struct duality_report {
    bool nondegenerate = false;
    gaussian_rational determinant;
    std::size_t mu = 0;
};

inline duality_report duality_check(const section& s) {
    groth_engine eng(s);
    auto pm = residue_pairing_matrix_from(eng);
    return {!pm.determinant.is_zero(), pm.determinant, eng.milnor().mu};
}

/// The duality pairing (g,h)_psi for psi = dz_1^...^dz_n (x) e_1^...^e_n,
/// assembled mechanically from the composed sign pipeline
/// (-1)^{floor((n+3)/2) + n(n+1)/2} * (-2 pi i)^n * Res, with
/// Res = (-1)^{n(n+1)/2} res_s(g,h). Result carries unit (2 pi i)^n.
inline residue_value pairing_psi_from(const groth_engine& eng, const polynomial& g,
                                      const polynomial& h) {
    long n = static_cast<long>(eng.sec().n());
    residue_value res = eng.residue(g * h);
    long expo = (n + 3) / 2 + n * (n + 1) / 2 // prefactor of the duality formula
                + n                           // (-2 pi i)^n = (-1)^n (2 pi i)^n
                + n * (n + 1) / 2;            // virtual residue vs Grothendieck residue
    gaussian_rational v = (expo % 2) ? -res.value : res.value;
    return {v, static_cast<int>(n)};
}

inline residue_value pairing_psi(const polynomial& g, const polynomial& h, const section& s) {
    return pairing_psi_from(groth_engine(s), g, h);
}

/// Residue of the Hessian determinant against the gradient section.
inline residue_value hessian_residue(const polynomial& f) {
    const ring_ptr& ring = f.ring();
    std::size_t n = ring->nvars();
    std::vector<std::vector<polynomial>> hess;
    hess.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<polynomial> row;
        row.reserve(n);
        for (std::size_t j = 0; j < n; ++j) row.push_back(f.derivative(i).derivative(j));
        hess.push_back(std::move(row));
    }
    return groth_residue(poly_det(hess), section::gradient_of(f));
}

} // namespace residua
