#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "residua/polynomial.hpp"

namespace residua {

/// Reduced Groebner basis together with the order that produced it. When
/// built with cofactor tracking, gens[k] = sum_j cofactors[k][j] * input[j]
/// holds exactly, which is what ideal-membership lifting consumes.
struct groebner_basis {
    ring_ptr ring;
    monomial_order order;
    std::vector<polynomial> gens;
    bool reduced = true;
    std::vector<polynomial> input;
    std::vector<std::vector<polynomial>> cofactors;
};

struct division_result {
    polynomial remainder;
    std::vector<polynomial> quotients; // aligned with the divisor list
};

/// Multivariate division: p = sum quotients[i]*divisors[i] + remainder and
/// no remainder term is divisible by any divisor's leading monomial.
inline division_result divide(const polynomial& p, const std::vector<polynomial>& divisors,
                              const monomial_order& ord) {
    const ring_ptr& ring = p.ring();
    for (const auto& d : divisors) check_same_ring(ring, d.ring());

    struct lead {
        monomial m;
        gaussian_rational c;
    };
    std::vector<lead> leads;
    leads.reserve(divisors.size());
    for (const auto& d : divisors) {
        if (d.is_zero()) fail(errc::invalid_argument, "zero divisor in division");
        auto [m, c] = d.leading(ord);
        leads.push_back({m, c});
    }

    division_result out{polynomial::zero(ring), {}};
    out.quotients.assign(divisors.size(), polynomial::zero(ring));

    polynomial h = p;
    while (!h.is_zero()) {
        auto [lm, lc] = h.leading(ord);
        bool reduced_step = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!leads[i].m.divides(lm)) continue;
            monomial q = leads[i].m.divide_into(lm);
            gaussian_rational cq = lc / leads[i].c;
            out.quotients[i].add_term(q, cq);
            h -= divisors[i].mul_monomial(q, cq);
            reduced_step = true;
            break;
        }
        if (!reduced_step) {
            out.remainder.add_term(lm, lc);
            polynomial t = polynomial::from_monomial(ring, lm, lc);
            h -= t;
        }
    }
    return out;
}

inline division_result normal_form(const polynomial& p, const groebner_basis& g) {
    check_same_ring(p.ring(), g.ring);
    return divide(p, g.gens, g.order);
}

namespace detail {

struct tracked {
    polynomial p;
    std::vector<polynomial> rep; // p = sum rep[j] * input[j]
    std::uint64_t sugar = 0;
};

// Full normal form with cofactor tracking. Invariant throughout:
// collected + h.p == sum h.rep[j] * input[j], so moving an irreducible
// leading term into `collected` costs nothing.
inline tracked reduce_tracked(tracked h, const std::vector<tracked>& basis,
                              const monomial_order& ord, const ring_ptr& ring) {
    polynomial collected(ring);
    while (!h.p.is_zero()) {
        auto [lm, lc] = h.p.leading(ord);
        bool step = false;
        for (const auto& g : basis) {
            if (g.p.is_zero()) continue;
            auto [gm, gc] = g.p.leading(ord);
            if (!gm.divides(lm)) continue;
            monomial q = gm.divide_into(lm);
            gaussian_rational cq = lc / gc;
            h.p -= g.p.mul_monomial(q, cq);
            for (std::size_t j = 0; j < h.rep.size(); ++j)
                h.rep[j] -= g.rep[j].mul_monomial(q, cq);
            h.sugar = std::max(h.sugar, g.sugar + q.deg());
            step = true;
            break;
        }
        if (!step) {
            collected.add_term(lm, lc);
            h.p -= polynomial::from_monomial(ring, lm, lc);
        }
    }
    h.p = std::move(collected);
    return h;
}

} // namespace detail

/// Buchberger with sugar-strategy pair selection, product criterion and full
/// inter-reduction. Returns the unique reduced basis (monic generators) and
/// exact cofactors over the nonzero input generators.
inline groebner_basis buchberger(const std::vector<polynomial>& generators,
                                 const monomial_order& ord) {
    if (generators.empty()) fail(errc::invalid_argument, "buchberger: empty generator list");
    ring_ptr ring = generators.front().ring();
    for (const auto& g : generators) check_same_ring(ring, g.ring());

    std::vector<polynomial> input;
    for (const auto& g : generators)
        if (!g.is_zero()) input.push_back(g);

    groebner_basis out{ring, ord, {}, true, input, {}};
    if (input.empty()) return out; // zero ideal

    std::vector<detail::tracked> basis;
    for (std::size_t j = 0; j < input.size(); ++j) {
        detail::tracked t{input[j], {}, input[j].total_deg()};
        t.rep.assign(input.size(), polynomial::zero(ring));
        t.rep[j] = polynomial::one(ring);
        basis.push_back(std::move(t));
    }

    struct pair_item {
        std::uint64_t sugar;
        monomial lcm;
        std::size_t i, j;
    };
    auto pair_less = [&](const pair_item& a, const pair_item& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        if (int c = ord.compare(a.lcm, b.lcm)) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<pair_item> queue;
    auto push_pairs_for = [&](std::size_t k) {
        auto [mk, ck] = basis[k].p.leading(ord);
        for (std::size_t i = 0; i < k; ++i) {
            if (basis[i].p.is_zero()) continue;
            auto [mi, ci] = basis[i].p.leading(ord);
            monomial l = monomial::lcm(mi, mk);
            // Product criterion: coprime leading monomials reduce to zero.
            if (l.deg() == mi.deg() + mk.deg()) continue;
            std::uint64_t sug = std::max(basis[i].sugar + l.deg() - mi.deg(),
                                         basis[k].sugar + l.deg() - mk.deg());
            queue.push_back({sug, l, i, k});
        }
    };
    for (std::size_t k = 1; k < basis.size(); ++k) push_pairs_for(k);

    while (!queue.empty()) {
        auto it = std::min_element(queue.begin(), queue.end(), pair_less);
        pair_item pr = *it;
        queue.erase(it);
        const auto& gi = basis[pr.i];
        const auto& gj = basis[pr.j];
        if (gi.p.is_zero() || gj.p.is_zero()) continue;

        auto [mi, ci] = gi.p.leading(ord);
        auto [mj, cj] = gj.p.leading(ord);
        monomial qi = mi.divide_into(pr.lcm);
        monomial qj = mj.divide_into(pr.lcm);

        detail::tracked s{gi.p.mul_monomial(qi, ci.inv()) - gj.p.mul_monomial(qj, cj.inv()),
                          {},
                          pr.sugar};
        s.rep.assign(input.size(), polynomial::zero(ring));
        for (std::size_t t = 0; t < input.size(); ++t)
            s.rep[t] = gi.rep[t].mul_monomial(qi, ci.inv()) - gj.rep[t].mul_monomial(qj, cj.inv());

        detail::tracked red = detail::reduce_tracked(std::move(s), basis, ord, ring);
        if (red.p.is_zero()) continue;
        basis.push_back(std::move(red));
        push_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop generators whose leading monomial is divisible by
    // another (replacing the classic pairwise sweep).
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (basis[i].p.is_zero()) continue;
        auto mi = basis[i].p.leading(ord).first;
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || basis[j].p.is_zero()) continue;
            auto mj = basis[j].p.leading(ord).first;
            if (mj.divides(mi) && (mj != mi || j < i)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) keep.push_back(i);
    }

    std::vector<detail::tracked> minimal;
    for (auto k : keep) minimal.push_back(std::move(basis[k]));

    // Full inter-reduction: each generator reduced to normal form against
    // the others, iterated to a fixed point.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<detail::tracked> others;
            for (std::size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            detail::tracked red =
                detail::reduce_tracked(minimal[i], others, ord, ring);
            if (!(red.p == minimal[i].p)) {
                changed = true;
                minimal[i] = std::move(red);
            }
        }
    }

    // Monic normalization and a canonical generator order (ascending LM).
    for (auto& t : minimal) {
        auto [m, c] = t.p.leading(ord);
        gaussian_rational inv = c.inv();
        t.p = t.p.scaled(inv);
        for (auto& r : t.rep) r = r.scaled(inv);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const auto& a, const auto& b) {
        return ord.less(a.p.leading(ord).first, b.p.leading(ord).first);
    });

    for (auto& t : minimal) {
        out.gens.push_back(std::move(t.p));
        out.cofactors.push_back(std::move(t.rep));
    }
    return out;
}

/// Standard monomials of the quotient ring: all monomials not divisible by
/// any leading monomial. nullopt when the quotient is infinite-dimensional.
inline std::optional<std::vector<monomial>> standard_monomials(const groebner_basis& g) {
    std::size_t n = g.ring->nvars();
    std::vector<monomial> lms;
    for (const auto& p : g.gens) lms.push_back(p.leading(g.order).first);

    // Ideal = (1): empty quotient.
    for (const auto& m : lms)
        if (m.is_one()) return std::vector<monomial>{};

    // Finite dimension iff some leading monomial is a pure power of each
    // variable (zero-dimensionality criterion).
    std::vector<std::uint32_t> box(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        std::uint32_t best = 0;
        for (const auto& m : lms) {
            bool pure = m[v] > 0;
            for (std::size_t w = 0; w < n && pure; ++w)
                if (w != v && m[w] > 0) pure = false;
            if (pure && (best == 0 || m[v] < best)) best = m[v];
        }
        if (best == 0) return std::nullopt;
        box[v] = best;
    }

    std::vector<monomial> basis;
    std::vector<std::uint32_t> e(n, 0);
    while (true) {
        monomial m{std::vector<std::uint32_t>(e)};
        bool divisible = false;
        for (const auto& lm : lms)
            if (lm.divides(m)) {
                divisible = true;
                break;
            }
        if (!divisible) basis.push_back(std::move(m));
        std::size_t v = 0;
        while (v < n) {
            if (++e[v] < box[v]) break;
            e[v] = 0;
            ++v;
        }
        if (v == n) break;
    }
    std::sort(basis.begin(), basis.end(),
              [&](const monomial& a, const monomial& b) { return g.order.less(a, b); });
    return basis;
}

/// Writes target as an exact combination of the generators, or nullopt when
/// target is not in the ideal. Every success is re-expanded and verified.
inline std::optional<std::vector<polynomial>> lift_in_ideal(
    const polynomial& target, const std::vector<polynomial>& gens,
    const monomial_order& ord = monomial_order::grevlex()) {
    for (const auto& g : gens)
        if (g.is_zero()) fail(errc::invalid_argument, "lift_in_ideal: zero generator");
    groebner_basis gb = buchberger(gens, ord);
    division_result nf = normal_form(target, gb);
    if (!nf.remainder.is_zero()) return std::nullopt;

    std::vector<polynomial> lift(gens.size(), polynomial::zero(target.ring()));
    // Input list inside gb drops zero generators; here gens are all nonzero,
    // so indices align with gb.input.
    for (std::size_t k = 0; k < gb.gens.size(); ++k)
        for (std::size_t j = 0; j < gens.size(); ++j)
            lift[j] += nf.quotients[k] * gb.cofactors[k][j];

    polynomial check = polynomial::zero(target.ring());
    for (std::size_t j = 0; j < gens.size(); ++j) check += lift[j] * gens[j];
    if (!(check == target)) fail(errc::internal, "lift re-expansion mismatch");
    return lift;
}

} // namespace residua
