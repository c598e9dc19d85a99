#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "residua/dolbeault.hpp"
#include "residua/residue.hpp"

namespace residua {

/// Flat export of eta_psi for the numeric integrator: fully expanded
/// monomial terms c * z^m zbar^m' <s,s>^{-pow} dzbar_B ^ dz_{1..n},
/// tagged with the closed-form branch index they came from.
struct eta_tree {
    int n = 0;
    ring_ptr dring;
    polynomial ss;
    struct term {
        int branch;                // i of the closed-form sum
        gaussian_rational coeff;
        monomial mono;             // exponents over z_1..z_n, zb_1..zb_n
        unsigned ss_pow;
        std::uint32_t dzbar;       // generator mask, bits 1..n
        std::uint32_t dz;
    };
    std::vector<term> terms;
};

namespace detail {

inline form<smooth_expr> eta_closed_branch(const dctx_ptr& ctx, const polynomial& gh, int i) {
    int n = ctx->n;
    long lead = static_cast<long>(n) * n; // n(n-1)/2 + n(n+1)/2
    gaussian_rational fact(1);
    for (long k = 2; k <= n - 1; ++k) fact *= gaussian_rational(k);
    if (lead % 2) fact = -fact;
    form<smooth_expr> w =
        form<smooth_expr>::term(ctx->fr, word{}, smooth_expr::scalar(ctx, (i % 2) ? 1 : -1));
    for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        w = wedge(w, dbar(form<smooth_expr>::term(ctx->fr, word{},
                                                  smooth_expr(ctx, ctx->fbar[j - 1]))));
    }
    w = wedge(w, form<smooth_expr>::term(ctx->fr, word{0, full_mask(n), 0, 0, 0},
                                         smooth_expr::scalar(ctx, 1)));
    smooth_expr c = smooth_expr(ctx, ctx->fbar[i - 1].scaled(fact), static_cast<unsigned>(n)) *
                    smooth_expr(ctx, embed_holomorphic(gh, ctx->dring));
    return w.scaled(c);
}

} // namespace detail

inline eta_tree export_eta(const polynomial& g, const polynomial& h, const section& s,
                           dctx_ptr ctx = nullptr) {
    // eta_psi re-verifies pipeline == closed form before anything is exported
    eta_result checked = eta_psi(g, h, s, ctx);
    ctx = checked.ctx;

    eta_tree tree{ctx->n, ctx->dring, ctx->ss, {}};
    polynomial gh = g * h;
    form<smooth_expr> acc(ctx->fr);
    for (int i = 1; i <= ctx->n; ++i) {
        form<smooth_expr> branch = detail::eta_closed_branch(ctx, gh, i);
        acc += branch;
        for (const auto& [w, c] : branch.terms())
            for (const auto& [m, k] : c.num().terms())
                tree.terms.push_back({i, k, m, c.pow(), w.dzbar >> 1, w.dz >> 1});
    }
    if (!(acc == checked.eta)) fail(errc::internal, "branch export diverged from eta");
    return tree;
}

struct quadrature_spec {
    double radius = 1.0;
    int resolution = 64; // points per angular dimension
    double target_tol = 0.0; // 0 disables the coarseness check

    void validate() const {
        if (radius <= 0) fail(errc::invalid_argument, "radius must be positive");
        if (resolution < 8) fail(errc::invalid_argument, "resolution must be at least 8");
    }
};

struct numeric_residue {
    std::complex<double> value{};
    double error_estimate = 0.0;
    double radius = 1.0;
    int resolution = 0;
};

namespace detail {

// Forward-mode duals over K real parameters; the chart is written once in
// terms of these and the pullback Jacobian falls out mechanically.
template <int K>
struct dual {
    std::complex<double> v{};
    std::array<std::complex<double>, K> d{};

    static dual param(double value, int slot) {
        dual x;
        x.v = value;
        x.d[slot] = 1.0;
        return x;
    }
    static dual constant(std::complex<double> value) {
        dual x;
        x.v = value;
        return x;
    }
    friend dual operator*(const dual& a, const dual& b) {
        dual r;
        r.v = a.v * b.v;
        for (int k = 0; k < K; ++k) r.d[k] = a.d[k] * b.v + a.v * b.d[k];
        return r;
    }
    dual conj() const {
        dual r;
        r.v = std::conj(v);
        for (int k = 0; k < K; ++k) r.d[k] = std::conj(d[k]);
        return r;
    }
};

template <int K>
dual<K> cos_d(const dual<K>& x) {
    dual<K> r;
    r.v = std::cos(x.v.real());
    for (int k = 0; k < K; ++k) r.d[k] = -std::sin(x.v.real()) * x.d[k];
    return r;
}
template <int K>
dual<K> sin_d(const dual<K>& x) {
    dual<K> r;
    r.v = std::sin(x.v.real());
    for (int k = 0; k < K; ++k) r.d[k] = std::cos(x.v.real()) * x.d[k];
    return r;
}
// e^{i x} for a real parameter expression x
template <int K>
dual<K> cis_d(const dual<K>& x) {
    dual<K> r;
    std::complex<double> e{std::cos(x.v.real()), std::sin(x.v.real())};
    r.v = e;
    for (int k = 0; k < K; ++k) r.d[k] = std::complex<double>{0.0, 1.0} * e * x.d[k];
    return r;
}

inline std::complex<double> det3(const std::array<std::array<std::complex<double>, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int k, std::vector<double>& x, std::vector<double>& w) {
    x.assign(k, 0.0);
    w.assign(k, 0.0);
    for (int i = 0; i < (k + 1) / 2; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = -t;
        x[k - 1 - i] = t;
        double ww = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = ww;
        w[k - 1 - i] = ww;
    }
}

struct kahan {
    std::complex<double> sum{};
    std::complex<double> c{};
    void add(std::complex<double> x) {
        std::complex<double> y = x - c;
        std::complex<double> t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

inline std::complex<double> eval_poly(const polynomial& p,
                                      std::span<const std::complex<double>> vals) {
    return p.eval(vals);
}

// Endpoint-inclusive sweep of <s,s> over the sphere; the quadrature nodes
// themselves never touch the chart boundary, so grazing zeros need this.
inline void probe_ss(const eta_tree& tree, double r, double& min_ss, double& max_ss) {
    min_ss = 1e300;
    max_ss = 0.0;
    auto look = [&](std::span<const std::complex<double>> vals) {
        double v = std::abs(eval_poly(tree.ss, vals));
        min_ss = std::min(min_ss, v);
        max_ss = std::max(max_ss, v);
    };
    if (tree.n == 1) {
        for (int i = 0; i <= 256; ++i) {
            double th = 2.0 * std::numbers::pi * i / 256;
            std::complex<double> z = r * std::complex<double>{std::cos(th), std::sin(th)};
            std::array<std::complex<double>, 2> vals{z, std::conj(z)};
            look(vals);
        }
        return;
    }
    for (int it = 0; it <= 32; ++it) {
        double th = (std::numbers::pi / 2.0) * it / 32;
        for (int i1 = 0; i1 < 24; ++i1)
            for (int i2 = 0; i2 < 24; ++i2) {
                double p1 = 2.0 * std::numbers::pi * i1 / 24;
                double p2 = 2.0 * std::numbers::pi * i2 / 24;
                std::complex<double> z1 =
                    r * std::cos(th) * std::complex<double>{std::cos(p1), std::sin(p1)};
                std::complex<double> z2 =
                    r * std::sin(th) * std::complex<double>{std::cos(p2), std::sin(p2)};
                std::array<std::complex<double>, 4> vals{z1, z2, std::conj(z1), std::conj(z2)};
                look(vals);
            }
    }
}

// One full quadrature pass at the given resolution.
inline std::complex<double> integrate_once(const eta_tree& tree, const quadrature_spec& spec,
                                           int res) {
    const double r = spec.radius;
    kahan acc;

    if (tree.n == 1) {
        // circle, trapezoid rule (spectrally accurate for periodic data)
        const double h = 2.0 * std::numbers::pi / res;
        for (int i = 0; i < res; ++i) {
            double th = i * h;
            std::complex<double> z = r * std::complex<double>{std::cos(th), std::sin(th)};
            std::complex<double> dz{-r * std::sin(th), r * std::cos(th)}; // dz/dtheta
            std::array<std::complex<double>, 2> vals{z, std::conj(z)};
            std::complex<double> ssc = eval_poly(tree.ss, vals);
            std::complex<double> f{};
            for (const auto& t : tree.terms) {
                std::complex<double> c = t.coeff.to_complex();
                for (std::size_t v = 0; v < 2; ++v)
                    for (std::uint32_t k = 0; k < t.mono[v]; ++k) c *= vals[v];
                for (unsigned k = 0; k < t.ss_pow; ++k) c /= ssc;
                f += c * dz;
            }
            acc.add(f * h);
        }
        return acc.sum;
    }

    // n = 2: product-angle Gauss-Legendre over (theta, phi1, phi2)
    std::vector<double> xs, ws;
    gauss_legendre(res, xs, ws);
    auto map_to = [](double a, double b, double x) { return 0.5 * ((b - a) * x + (a + b)); };
    const double half = 0.5;

    using D = dual<3>;
    for (int it = 0; it < res; ++it) {
        double th = map_to(0.0, std::numbers::pi / 2.0, xs[it]);
        double wt = ws[it] * half * (std::numbers::pi / 2.0);
        for (int i1 = 0; i1 < res; ++i1) {
            double p1 = map_to(0.0, 2.0 * std::numbers::pi, xs[i1]);
            double w1 = ws[i1] * half * (2.0 * std::numbers::pi);
            for (int i2 = 0; i2 < res; ++i2) {
                double p2 = map_to(0.0, 2.0 * std::numbers::pi, xs[i2]);
                double w2 = ws[i2] * half * (2.0 * std::numbers::pi);

                D theta = D::param(th, 0), phi1 = D::param(p1, 1), phi2 = D::param(p2, 2);
                D rr = D::constant(r);
                D z1 = rr * cos_d(theta) * cis_d(phi1);
                D z2 = rr * sin_d(theta) * cis_d(phi2);
                std::array<D, 4> zs{z1, z2, z1.conj(), z2.conj()};
                std::array<std::complex<double>, 4> vals{zs[0].v, zs[1].v, zs[2].v, zs[3].v};

                std::complex<double> ssc = eval_poly(tree.ss, vals);
                std::complex<double> f{};
                for (const auto& t : tree.terms) {
                    std::complex<double> c = t.coeff.to_complex();
                    for (std::size_t v = 0; v < 4; ++v)
                        for (std::uint32_t k = 0; k < t.mono[v]; ++k) c *= vals[v];
                    for (unsigned k = 0; k < t.ss_pow; ++k) c /= ssc;
                    // rows: dzbar factors ascending, then dz factors ascending
                    std::array<std::array<std::complex<double>, 3>, 3> m{};
                    int row = 0;
                    for (int b = 1; b <= 2; ++b)
                        if (t.dzbar & (1u << (b - 1))) {
                            for (int k = 0; k < 3; ++k) m[row][k] = zs[b + 1].d[k];
                            ++row;
                        }
                    for (int a = 1; a <= 2; ++a)
                        if (t.dz & (1u << (a - 1))) {
                            for (int k = 0; k < 3; ++k) m[row][k] = zs[a - 1].d[k];
                            ++row;
                        }
                    f += c * det3(m);
                }
                acc.add(f * wt * w1 * w2);
            }
        }
    }
    // The chart frame (theta, phi1, phi2) is negatively oriented as the
    // boundary of the ball: dx1^dy1^dx2^dy2 = -r^3 cos(theta) sin(theta)
    // dr^dtheta^dphi1^dphi2.
    return -acc.sum;
}

} // namespace detail

/// (1 / 2 pi i)^n times the integral of eta over the origin-centred sphere
/// of the given radius. The error estimate compares successive resolutions.
inline numeric_residue integrate_eta(const eta_tree& tree, const quadrature_spec& spec) {
    spec.validate();
    if (tree.n != 1 && tree.n != 2)
        fail(errc::invalid_argument, "numeric path supports n = 1 and n = 2");

    double minss, maxss;
    detail::probe_ss(tree, spec.radius, minss, maxss);
    if (!tree.terms.empty() && minss <= 1e-9 * std::max(1.0, maxss))
        fail(errc::singular_on_sphere,
             "the section nearly vanishes on the sphere of radius " + std::to_string(spec.radius));

    std::complex<double> full = detail::integrate_once(tree, spec, spec.resolution);
    std::complex<double> half =
        detail::integrate_once(tree, spec, std::max(8, spec.resolution / 2));

    std::complex<double> two_pi_i{0.0, 2.0 * std::numbers::pi};
    std::complex<double> norm = 1.0;
    for (int k = 0; k < tree.n; ++k) norm *= two_pi_i;
    numeric_residue out{full / norm, std::abs(full - half) / std::abs(norm), spec.radius,
                        spec.resolution};
    if (spec.target_tol > 0 && out.error_estimate > spec.target_tol)
        fail(errc::resolution_too_coarse,
             "error estimate " + std::to_string(out.error_estimate) + " exceeds tolerance");
    return out;
}

inline numeric_residue integrate_eta(const polynomial& g, const polynomial& h, const section& s,
                                     const quadrature_spec& spec) {
    return integrate_eta(export_eta(g, h, s), spec);
}

/// Numeric virtual residue against the exact path: Res = (-1)^{n(n+1)/2} res_s(g,h).
struct equa9_report {
    numeric_residue numeric;
    gaussian_rational exact_residue; // res_s(g h)
    std::complex<double> expected{}; // sign-adjusted exact value
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline equa9_report compare_equa9(const polynomial& g, const polynomial& h, const section& s,
                                  const quadrature_spec& spec) {
    equa9_report rep;
    rep.numeric = integrate_eta(g, h, s, spec);
    rep.exact_residue = groth_residue(g * h, s).value;
    long n = static_cast<long>(s.n());
    std::complex<double> expected = rep.exact_residue.to_complex();
    if ((n * (n + 1) / 2) % 2) expected = -expected;
    rep.expected = expected;
    rep.abs_diff = std::abs(rep.numeric.value - expected);
    rep.tolerance = std::max(spec.target_tol, 10.0 * rep.numeric.error_estimate);
    if (spec.target_tol == 0.0) rep.tolerance = std::max(1e-8, 10.0 * rep.numeric.error_estimate);
    rep.pass = rep.abs_diff <= rep.tolerance;
    return rep;
}

struct radius_report {
    std::vector<numeric_residue> values;
    double spread = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline radius_report radius_independence(const polynomial& g, const polynomial& h,
                                         const section& s, const std::vector<double>& radii,
                                         quadrature_spec spec) {
    if (radii.empty()) fail(errc::invalid_argument, "no radii given");
    radius_report rep;
    eta_tree tree = export_eta(g, h, s);
    for (double r : radii) {
        quadrature_spec one = spec;
        one.radius = r;
        rep.values.push_back(integrate_eta(tree, one));
    }
    for (const auto& a : rep.values)
        for (const auto& b : rep.values)
            rep.spread = std::max(rep.spread, std::abs(a.value - b.value));
    rep.tolerance = spec.target_tol > 0 ? spec.target_tol : (s.n() == 1 ? 1e-8 : 1e-3);
    rep.pass = rep.spread < rep.tolerance;
    return rep;
}

} // namespace residua
