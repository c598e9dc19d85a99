#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "residua/exterior.hpp"
#include "residua/groebner.hpp"
#include "residua/linalg.hpp"
#include "residua/polynomial.hpp"

namespace residua {

/// Section s = f1 e1 + ... + fn en of the trivialized rank-n bundle.
/// Weights/degrees describe the quasi-homogeneous structure: deg z_i = w_i
/// and f_i quasi-homogeneous of degree d_i.
struct section {
    ring_ptr ring;
    std::vector<polynomial> f;
    std::optional<std::vector<long>> weights;
    std::optional<std::vector<long>> degrees;

    std::size_t n() const { return ring->nvars(); }

    static section make(ring_ptr ring, std::vector<polynomial> fs,
                        std::optional<std::vector<long>> w = std::nullopt,
                        std::optional<std::vector<long>> d = std::nullopt) {
        section s{std::move(ring), std::move(fs), std::move(w), std::move(d)};
        if (s.f.size() != s.ring->nvars())
            fail(errc::arity_error, "section length " + std::to_string(s.f.size()) +
                                        " != variable count " + std::to_string(s.ring->nvars()));
        for (const auto& p : s.f) check_same_ring(s.ring, p.ring());
        if (s.weights && s.weights->size() != s.n())
            fail(errc::arity_error, "weight count != variable count");
        return s;
    }

    static section gradient_of(const polynomial& f,
                               std::optional<std::vector<long>> w = std::nullopt) {
        std::vector<polynomial> fs;
        for (std::size_t i = 0; i < f.ring()->nvars(); ++i) fs.push_back(f.derivative(i));
        return make(f.ring(), std::move(fs), std::move(w));
    }

    /// Validated (weights, degrees): every monomial of f_i has w-degree d_i.
    /// Defaults to unit weights when none are given.
    std::pair<std::vector<long>, std::vector<long>> validated_weights() const {
        std::vector<long> w = weights ? *weights : std::vector<long>(n(), 1);
        for (long x : w)
            if (x <= 0) fail(errc::not_quasi_homogeneous, "weights must be positive");
        std::vector<long> d(n(), 0);
        for (std::size_t i = 0; i < n(); ++i) {
            if (f[i].is_zero())
                fail(errc::not_quasi_homogeneous, "zero section component f" + std::to_string(i + 1));
            bool first = true;
            for (const auto& [m, c] : f[i].terms()) {
                long dm = m.weighted_deg(w);
                if (first) {
                    d[i] = dm;
                    first = false;
                } else if (dm != d[i]) {
                    fail(errc::not_quasi_homogeneous,
                         "f" + std::to_string(i + 1) + " is not quasi-homogeneous for the given weights");
                }
            }
        }
        if (degrees) {
            if (degrees->size() != n()) fail(errc::arity_error, "degree count != variable count");
            for (std::size_t i = 0; i < n(); ++i)
                if ((*degrees)[i] != d[i])
                    fail(errc::not_quasi_homogeneous,
                         "claimed degree of f" + std::to_string(i + 1) + " does not match");
        }
        return {std::move(w), std::move(d)};
    }

    /// The section as an A0(V)-valued form over its own polynomial ring.
    form<polynomial> as_form() const {
        frame fr{static_cast<int>(n()), 1};
        form<polynomial> s(fr);
        for (std::size_t i = 0; i < n(); ++i) s.add(w_e(static_cast<int>(i) + 1), f[i]);
        return s;
    }
};

/// Contraction by the section, the Koszul differential on wedge-V-dual
/// forms over the polynomial ring.
inline form<polynomial> iota_section(const section& s, const form<polynomial>& w) {
    return iota_alpha(s.as_form(), w);
}

/// The quotient algebra of the section's component ideal: standard-monomial
/// basis, exact multiplication table and the Milnor number mu.
struct milnor_algebra {
    groebner_basis gb;
    std::vector<monomial> basis;
    std::size_t mu = 0;
    // mult[i][j] = coordinates of basis[i]*basis[j] in the basis
    std::vector<std::vector<std::vector<gaussian_rational>>> mult;

    std::size_t index_of(const monomial& m) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == m) return i;
        fail(errc::internal, "monomial not in Milnor basis");
    }

    /// Normal-form coordinates of an arbitrary polynomial.
    std::vector<gaussian_rational> coords(const polynomial& p) const {
        polynomial r = normal_form(p, gb).remainder;
        std::vector<gaussian_rational> out(basis.size(), gaussian_rational(0));
        for (const auto& [m, c] : r.terms()) out[index_of(m)] = c;
        return out;
    }
};

inline milnor_algebra make_milnor(const section& s,
                                  const monomial_order& ord = monomial_order::grevlex()) {
    milnor_algebra out{buchberger(s.f, ord), {}, 0, {}};
    auto sm = standard_monomials(out.gb);
    if (!sm)
        fail(errc::non_isolated_zero,
             "the section ideal is not zero-dimensional (no isolated zero at the origin)");
    out.basis = std::move(*sm);
    out.mu = out.basis.size();
    out.mult.resize(out.mu);
    for (std::size_t i = 0; i < out.mu; ++i) {
        out.mult[i].reserve(out.mu);
        for (std::size_t j = 0; j < out.mu; ++j) {
            polynomial p = polynomial::from_monomial(s.ring, out.basis[i] * out.basis[j], 1);
            out.mult[i].push_back(out.coords(p));
        }
    }
    return out;
}

/// Graded dimensions of the Koszul homology of iota_s, cohomological degree
/// k in [-n, 0] (the populated range of the local complex), internal degree
/// d with deg z_i = w_i and deg E_i = d_i, the unique grading that makes
/// the differential degree-preserving.
struct homology_table {
    std::vector<std::tuple<int, long, std::size_t>> entries; // (k, d, dim), dim > 0 entries plus zeros in range
    long dmin = 0, dmax = 0;

    std::size_t dim(int k, long d) const {
        for (const auto& [kk, dd, s] : entries)
            if (kk == k && dd == d) return s;
        return 0;
    }
    std::size_t total_dim(int k) const {
        std::size_t s = 0;
        for (const auto& [kk, dd, n] : entries)
            if (kk == k) s += n;
        return s;
    }
    long euler() const {
        long e = 0;
        for (const auto& [k, d, n] : entries) e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(n);
        return e;
    }
};

namespace detail {

// Monomials of exact weighted degree W (recursive enumeration).
inline void monomials_of_wdeg(std::size_t var, long remaining, const std::vector<long>& w,
                              std::vector<std::uint32_t>& cur, std::vector<monomial>& out) {
    if (var + 1 == w.size()) {
        if (remaining >= 0 && remaining % w[var] == 0) {
            cur[var] = static_cast<std::uint32_t>(remaining / w[var]);
            out.emplace_back(std::vector<std::uint32_t>(cur));
            cur[var] = 0;
        }
        return;
    }
    for (long e = 0; e * w[var] <= remaining; ++e) {
        cur[var] = static_cast<std::uint32_t>(e);
        monomials_of_wdeg(var + 1, remaining - e * w[var], w, cur, out);
    }
    cur[var] = 0;
}

inline std::vector<monomial> monomials_of_wdeg(long W, const std::vector<long>& w) {
    std::vector<monomial> out;
    if (W < 0) return out;
    std::vector<std::uint32_t> cur(w.size(), 0);
    monomials_of_wdeg(0, W, w, cur, out);
    return out;
}

} // namespace detail

/// Exact graded homology of the contraction complex
///   0 -> wedge^n V* (x) R -> ... -> V* (x) R -> R -> 0
/// over the requested internal-degree window (defaulting to the window that
/// carries the whole quotient algebra).
inline homology_table koszul_homology_graded(
    const section& s, std::optional<std::pair<long, long>> degree_range = std::nullopt) {
    auto [w, d] = s.validated_weights();
    const int n = static_cast<int>(s.n());
    frame fr{n, 1};
    form<polynomial> sform = s.as_form();

    long socle = 0;
    for (int i = 0; i < n; ++i) socle += d[i] - w[i];
    long dmin = degree_range ? degree_range->first : 0;
    long dmax = degree_range
                    ? degree_range->second
                    : std::max(socle, 0L) + *std::max_element(d.begin(), d.end());
    if (dmin > dmax) fail(errc::invalid_argument, "empty degree range");

    // Slice basis at (k, d): pairs (monomial m, |L| = k) with
    // wdeg(m) + sum_{i in L} d_i = d.
    struct slice_elem {
        monomial m;
        std::uint32_t L;
    };
    auto slice_basis = [&](int k, long deg) {
        std::vector<slice_elem> out;
        for (std::uint32_t L = 0; L < (1u << n); ++L) {
            if (std::popcount(L) != k) continue;
            long dL = 0;
            for (int i = 0; i < n; ++i)
                if (L & (1u << i)) dL += d[i];
            for (auto& m : detail::monomials_of_wdeg(deg - dL, w)) out.push_back({std::move(m), L});
        }
        return out;
    };

    // Matrix of iota_s from slice (k, d) to slice (k-1, d); the expansion
    // doubles as the degree-preservation check (any stray monomial throws).
    auto slice_matrix = [&](const std::vector<slice_elem>& src,
                            const std::vector<slice_elem>& dst) {
        std::map<std::pair<monomial, std::uint32_t>, std::size_t> index;
        for (std::size_t j = 0; j < dst.size(); ++j) index[{dst[j].m, dst[j].L}] = j;
        gq_matrix mat(dst.size(), std::vector<gaussian_rational>(src.size(), gaussian_rational(0)));
        for (std::size_t c = 0; c < src.size(); ++c) {
            word wd{0, 0, 0, src[c].L << 1, 0};
            auto img = iota_alpha(sform,
                                  form<polynomial>::term(fr, wd,
                                                         polynomial::from_monomial(
                                                             s.ring, src[c].m, 1)));
            for (const auto& [ww, coefpoly] : img.terms()) {
                std::uint32_t L2 = ww.dual >> 1;
                for (const auto& [m2, c2] : coefpoly.terms()) {
                    auto it = index.find({m2, L2});
                    if (it == index.end())
                        fail(errc::internal, "iota_s broke the internal grading");
                    mat[it->second][c] += c2;
                }
            }
        }
        return mat;
    };

    homology_table table;
    table.dmin = dmin;
    table.dmax = dmax;
    for (long deg = dmin; deg <= dmax; ++deg) {
        std::vector<std::vector<slice_elem>> bases;
        bases.reserve(n + 1);
        for (int k = 0; k <= n; ++k) bases.push_back(slice_basis(k, deg));
        std::vector<std::size_t> rank(n + 2, 0); // rank of iota_s: level k -> k-1
        for (int k = 1; k <= n; ++k) {
            if (bases[k].empty() || bases[k - 1].empty()) continue;
            rank[k] = exact_rank(slice_matrix(bases[k], bases[k - 1]));
        }
        for (int k = 0; k <= n; ++k) {
            std::size_t dimv = bases[k].size();
            std::size_t ker = dimv - rank[k]; // map out of level k
            std::size_t im = rank[k + 1];     // map into level k
            std::size_t h = ker - im;
            if (h > 0) table.entries.emplace_back(-k, deg, h);
        }
    }
    std::sort(table.entries.begin(), table.entries.end());
    return table;
}

inline long euler_characteristic(const homology_table& t) { return t.euler(); }

} // namespace residua
