#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "residua/exterior.hpp"
#include "residua/polynomial.hpp"

namespace residua {

struct law_item {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::string detail; // first failing instance, if any

    law_item() = default;
    explicit law_item(std::string n) : name(std::move(n)) {}
};

struct law_report {
    std::vector<law_item> items;

    bool all_pass() const {
        for (const auto& it : items)
            if (it.failures) return false;
        return true;
    }
    std::size_t total_checks() const {
        std::size_t s = 0;
        for (const auto& it : items) s += it.checks;
        return s;
    }
    std::size_t total_failures() const {
        std::size_t s = 0;
        for (const auto& it : items) s += it.failures;
        return s;
    }
};

namespace detail {

inline void record(law_item& it, bool ok, const std::function<std::string()>& describe) {
    ++it.checks;
    if (!ok) {
        if (it.failures == 0) it.detail = describe();
        ++it.failures;
    }
}

// Subset masks over generator bits 1..n.
inline std::vector<std::uint32_t> subsets(int n) {
    std::vector<std::uint32_t> out;
    out.reserve(1u << n);
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        std::uint32_t m = 0;
        for (int i = 0; i < n; ++i)
            if (s & (1u << i)) m |= 1u << (i + 1);
        out.push_back(m);
    }
    return out;
}

inline polynomial rand_coeff(const ring_ptr& ring, std::mt19937& rng) {
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<long> num(-4, 4);
    polynomial p(ring);
    for (int t = 0; t < 2; ++t) {
        std::vector<std::uint32_t> e(ring->nvars());
        for (auto& x : e) x = static_cast<std::uint32_t>(expo(rng));
        gaussian_rational c(num(rng));
        if (num(rng) > 2) c += gaussian_rational(num(rng)) * gaussian_rational::i();
        p.add_term(monomial(std::move(e)), c);
    }
    return p;
}

} // namespace detail

/// Machine verification of the wedge/contraction identities on the local
/// model: graded commutativity, the three defining adjunctions, both
/// halves of the two contraction compatibilities, the Leibniz rule and the pairing
/// compatibility with dbar. Exhaustive over basis words; random polynomial
/// coefficients exercise the bilinear extensions.
inline law_report exterior_law_suite(int n, unsigned seed = 1, int random_samples = 100) {
    law_report rep;
    frame fr{n, 1};
    ring_ptr D = poly_ring::make_with_conjugates(n);
    using F = form<polynomial>;
    const polynomial one = polynomial::one(D);
    auto subs = detail::subsets(n);

    auto mkword = [&](std::uint32_t zb, std::uint32_t z, std::uint32_t v, std::uint32_t d) {
        return word{zb, z, v, d, 0};
    };
    auto single = [&](const word& w) { return F::term(fr, w, one); };
    std::mt19937 rng(seed);

    { // graded commutativity on all basis word pairs
        law_item it{"wedge_graded_commutativity"};
        for (auto a1 : subs)
            for (auto a2 : subs)
                for (auto b1 : subs)
                    for (auto b2 : subs) {
                        word wa = mkword(a1, 0, 0, a2);
                        word wb = mkword(0, b1, b2, 0);
                        F a = single(wa), b = single(wb);
                        int s = (wa.sharp() * wb.sharp()) & 1 ? -1 : 1;
                        F lhs = wedge(a, b);
                        F rhs = wedge(b, a).scaled_int(s);
                        detail::record(it, lhs == rhs, [&] { return a.str() + " ^ " + b.str(); });
                    }
        rep.items.push_back(std::move(it));
    }

    { // defining adjunction of iota_alpha on every basis pair
        law_item it{"iota_alpha_adjunction"};
        for (int a = 1; a <= n; ++a) {
            F alpha = F::term(fr, w_e(a), detail::rand_coeff(D, rng));
            for (auto zb : subs)
                for (auto L : subs) {
                    F w = F::term(fr, mkword(zb, 0, 0, L), detail::rand_coeff(D, rng));
                    F iw = iota_alpha(alpha, w);
                    for (auto N : subs) {
                        F nu = single(mkword(0, 0, N, 0));
                        F lhs = kappa_pair(nu, iw);
                        F rhs = kappa_pair(wedge(alpha, nu), w);
                        detail::record(it, lhs == rhs,
                                       [&] { return "alpha=e" + std::to_string(a); });
                    }
                }
        }
        rep.items.push_back(std::move(it));
    }

    { // pairing flavor: <iota nu, w> = <nu, gamma ^ w>; derivation flavor
      // picks up the prefix parity and the two differ by exactly (-1)^{i+j}
        law_item it{"iota_gamma_flavors"};
        for (int g = 1; g <= n; ++g) {
            F gamma = F::term(fr, w_estar(g), detail::rand_coeff(D, rng));
            for (auto zb : subs)
                for (auto K : subs) {
                    word wnu = mkword(zb, 0, K, 0);
                    F nu = F::term(fr, wnu, detail::rand_coeff(D, rng));
                    F ip = iota_gamma_pairing(gamma, nu);
                    F id = iota_gamma(gamma, nu);
                    int pf = wnu.form_deg() & 1 ? -1 : 1;
                    detail::record(it, ip == id.scaled_int(pf),
                                   [&] { return "flavor relation nu=" + nu.str(); });
                    for (auto N : subs) {
                        F w = single(mkword(0, 0, 0, N));
                        F lhs = kappa_pair(ip, w);
                        F rhs = kappa_pair(nu, wedge(gamma, w));
                        detail::record(it, lhs == rhs,
                                       [&] { return "gamma=E" + std::to_string(g); });
                        F lhsd = kappa_pair(id, w);
                        detail::record(it, lhsd == rhs.scaled_int(pf),
                                       [&] { return "derivation gamma=E" + std::to_string(g); });
                    }
                }
        }
        rep.items.push_back(std::move(it));
    }

    { // defining identity of contract_u with its sign rule
        law_item it{"contract_u_defining_identity"};
        for (auto A : subs)
            for (auto B : subs)
                for (auto K : subs)
                    for (auto Q : subs)
                        for (auto L : subs) {
                            if (std::popcount(L) > std::popcount(K)) continue; // pre: k >= l
                            word wu = mkword(B, A, K, 0);
                            word wt = mkword(Q, 0, 0, L);
                            F u = single(wu), th = single(wt);
                            F ut = contract_u(u, th);
                            int l = std::popcount(L);
                            long expo = static_cast<long>(wu.form_deg()) * l +
                                        static_cast<long>(wt.form_deg()) * wu.sharp() +
                                        static_cast<long>(l) * (l - 1) / 2;
                            int sgn = (expo & 1) ? -1 : 1;
                            for (auto N : subs) {
                                if (std::popcount(N) !=
                                    std::popcount(K) - l)
                                    continue;
                                F nu = single(mkword(0, 0, 0, N));
                                F lhs = kappa_pair(ut, nu);
                                F rhs = kappa_pair(u, wedge(th, nu)).scaled_int(sgn);
                                detail::record(it, lhs == rhs, [&] {
                                    return "u=" + u.str() + " theta=" + th.str();
                                });
                            }
                        }
        rep.items.push_back(std::move(it));
    }

    { // contraction compatibility: alpha^(u|_theta) = u|_(iota_alpha theta)
      // and iota_gamma(u|_theta) = u|_(gamma^theta), u of top V-degree
        law_item it{"contraction_compatibility_top"};
        std::uint32_t top = full_mask(n);
        for (auto A : subs)
            for (auto B : subs)
                for (auto Q : subs)
                    for (auto L : subs)
                        for (int a = 1; a <= n; ++a) {
                            word wu = mkword(B, A, top, 0);
                            word wt = mkword(Q, 0, 0, L);
                            F u = single(wu), th = single(wt);
                            F alpha = single(w_e(a));
                            F gamma = single(w_estar(a));
                            F ut = contract_u(u, th);
                            F lhs1 = wedge(alpha, ut);
                            F rhs1 = contract_u(u, iota_alpha(alpha, th));
                            detail::record(it, lhs1 == rhs1, [&] {
                                return "alpha-side u=" + u.str() + " th=" + th.str();
                            });
                            F lhs2 = iota_gamma(gamma, ut);
                            F rhs2 = contract_u(u, wedge(gamma, th));
                            detail::record(it, lhs2 == rhs2, [&] {
                                return "gamma-side u=" + u.str() + " th=" + th.str();
                            });
                        }
        rep.items.push_back(std::move(it));
    }

    { // scalar-form and dbar compatibility: alpha^(u|_th) = u|_(alpha th)
      // for scalar forms alpha, and the dbar Leibniz shape
        law_item it{"contraction_scalar_and_dbar"};
        for (int round = 0; round < random_samples; ++round) {
            std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
            std::uint32_t K = subs[pick(rng)];
            std::uint32_t L = K == 0 ? 0 : subs[pick(rng)] & K; // ensure l <= k slotwise
            word wu = mkword(subs[pick(rng)], subs[pick(rng)], K, 0);
            word wt = mkword(subs[pick(rng)], 0, 0, L);
            F u = F::term(fr, wu, detail::rand_coeff(D, rng));
            F th = F::term(fr, wt, detail::rand_coeff(D, rng));
            word wa = mkword(subs[pick(rng)], subs[pick(rng)], 0, 0);
            F alpha = F::term(fr, wa, detail::rand_coeff(D, rng));

            F lhs = wedge(alpha, contract_u(u, th));
            F rhs = contract_u(u, wedge(alpha, th));
            detail::record(it, lhs == rhs,
                           [&] { return "scalar-form side u=" + u.str(); });

            F lhsd = dbar(contract_u(u, th));
            int st = wt.sharp() & 1 ? -1 : 1;
            F rhsd = contract_u(dbar(u), th).scaled_int(st) + contract_u(u, dbar(th));
            detail::record(it, lhsd == rhsd, [&] { return "dbar side u=" + u.str(); });
        }
        rep.items.push_back(std::move(it));
    }

    { // top-degree contraction compatibility with random coefficients
        law_item it{"contraction_compatibility_random"};
        for (int round = 0; round < random_samples; ++round) {
            std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
            std::uniform_int_distribution<int> var(1, n);
            word wu = mkword(subs[pick(rng)], subs[pick(rng)], full_mask(n), 0);
            word wt = mkword(subs[pick(rng)], 0, 0, subs[pick(rng)]);
            F u = F::term(fr, wu, detail::rand_coeff(D, rng));
            F th = F::term(fr, wt, detail::rand_coeff(D, rng));
            F alpha = F::term(fr, w_e(var(rng)), detail::rand_coeff(D, rng));
            F gamma = F::term(fr, w_estar(var(rng)), detail::rand_coeff(D, rng));
            F ut = contract_u(u, th);
            detail::record(it, wedge(alpha, ut) == contract_u(u, iota_alpha(alpha, th)),
                           [&] { return "alpha side u=" + u.str(); });
            detail::record(it, iota_gamma(gamma, ut) == contract_u(u, wedge(gamma, th)),
                           [&] { return "gamma side u=" + u.str(); });
        }
        rep.items.push_back(std::move(it));
    }

    { // the Koszul differential squares to zero for arbitrary sections
        law_item it{"iota_section_squares_to_zero"};
        for (int round = 0; round < random_samples; ++round) {
            std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
            F s(fr);
            for (int i = 1; i <= n; ++i) s.add(w_e(i), detail::rand_coeff(D, rng));
            word w = mkword(subs[pick(rng)], 0, 0, subs[pick(rng)]);
            F x = F::term(fr, w, detail::rand_coeff(D, rng));
            detail::record(it, iota_alpha(s, iota_alpha(s, x)).is_zero(),
                           [&] { return "x=" + x.str(); });
        }
        rep.items.push_back(std::move(it));
    }

    { // Leibniz rule for iota_alpha over wedge products of dual-valued forms
        law_item it{"iota_alpha_leibniz"};
        for (int round = 0; round < random_samples; ++round) {
            std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
            word w1 = mkword(subs[pick(rng)], 0, 0, subs[pick(rng)]);
            word w2 = mkword(subs[pick(rng)], 0, 0, subs[pick(rng)]);
            F w = F::term(fr, w1, detail::rand_coeff(D, rng));
            F th = F::term(fr, w2, detail::rand_coeff(D, rng));
            std::uniform_int_distribution<int> va(1, n);
            F alpha = F::term(fr, w_e(va(rng)), detail::rand_coeff(D, rng));
            F lhs = iota_alpha(alpha, wedge(w, th));
            int sw = w1.sharp() & 1 ? -1 : 1;
            F rhs = wedge(iota_alpha(alpha, w), th) +
                    wedge(w, iota_alpha(alpha, th)).scaled_int(sw);
            detail::record(it, lhs == rhs, [&] { return "w=" + w.str(); });
        }
        rep.items.push_back(std::move(it));
    }

    { // pairing compatibility: dbar<a,b> = <dbar a, b> + (-1)^#a <a, dbar b>
        law_item it{"kappa_pair_dbar_compatibility"};
        for (int round = 0; round < random_samples; ++round) {
            std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
            word wa = mkword(subs[pick(rng)], subs[pick(rng)], subs[pick(rng)], 0);
            F a = F::term(fr, wa, detail::rand_coeff(D, rng));
            F b(fr);
            b.add(mkword(subs[pick(rng)], 0, 0, subs[pick(rng)]), detail::rand_coeff(D, rng));
            b.add(mkword(0, subs[pick(rng)], 0, subs[pick(rng)]), detail::rand_coeff(D, rng));
            int sa = wa.sharp() & 1 ? -1 : 1;
            F lhs = dbar(kappa_pair(a, b));
            F rhs = kappa_pair(dbar(a), b) + kappa_pair(a, dbar(b)).scaled_int(sa);
            detail::record(it, lhs == rhs, [&] { return "a=" + a.str(); });
        }
        rep.items.push_back(std::move(it));
    }

    { // grading: the k = 0 slice carries the degree i + j - l
        law_item it{"degree_restriction_k0"};
        for (auto zb : subs)
            for (auto z : subs)
                for (auto L : subs) {
                    word w = mkword(zb, z, 0, L);
                    int expected = std::popcount(zb) + std::popcount(z) - std::popcount(L);
                    detail::record(it, w.sharp() == expected, [&] { return "word"; });
                }
        rep.items.push_back(std::move(it));
    }

    return rep;
}

} // namespace residua
