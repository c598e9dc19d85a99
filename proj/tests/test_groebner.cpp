#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "residua/groebner.hpp"
#include "residua/parser.hpp"
#include "test_util.hpp"

using namespace residua;

namespace {

ring_ptr R2 = poly_ring::make(2);

polynomial P(const std::string& s) { return parse_polynomial(R2, s); }

bool same_set(const std::vector<polynomial>& a, std::vector<std::string> expect) {
    if (a.size() != expect.size()) return false;
    for (const auto& e : expect) {
        auto p = P(e);
        if (std::none_of(a.begin(), a.end(), [&](const polynomial& q) { return q == p; }))
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("normal form: ideal member") {
    auto g = buchberger({P("z1")}, monomial_order::lex());
    auto nf = normal_form(P("z1^2"), g);
    CHECK(nf.remainder.is_zero());
    REQUIRE(nf.quotients.size() == 1);
    CHECK(nf.quotients[0] == P("z1"));
}

TEST_CASE("normal form: already reduced") {
    auto g = buchberger({P("z1^2")}, monomial_order::grevlex());
    auto nf = normal_form(P("z1 + 1"), g);
    CHECK(nf.remainder == P("z1 + 1"));
    CHECK(nf.quotients[0].is_zero());
}

TEST_CASE("normal form: mixed, with exact re-expansion") {
    auto g = buchberger({P("3*z1^2"), P("3*z2^2")}, monomial_order::grevlex());
    auto p = P("z1^3 + z2");
    auto nf = normal_form(p, g);
    CHECK(nf.remainder == P("z2"));
    polynomial acc = nf.remainder;
    for (std::size_t i = 0; i < g.gens.size(); ++i) acc += nf.quotients[i] * g.gens[i];
    CHECK(acc == p);
}

TEST_CASE("normal form is a homomorphism modulo the ideal") {
    auto g = buchberger({P("z1^2 - z2"), P("z2^2")}, monomial_order::grevlex());
    std::mt19937 rng(11);
    for (int round = 0; round < 30; ++round) {
        auto p = testutil::random_poly(R2, rng);
        auto q = testutil::random_poly(R2, rng);
        auto lhs = normal_form(p * q, g).remainder;
        auto rhs =
            normal_form(normal_form(p, g).remainder * normal_form(q, g).remainder, g).remainder;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("buchberger: simple bases") {
    auto g = buchberger({P("z1"), P("z2")}, monomial_order::grevlex());
    CHECK(same_set(g.gens, {"z1", "z2"}));

    auto g2 = buchberger({P("3*z1^2"), P("3*z2^2")}, monomial_order::grevlex());
    CHECK(same_set(g2.gens, {"z1^2", "z2^2"}));

    auto g3 = buchberger({P("z1^2 - z2"), P("z2^2")}, monomial_order::grlex());
    std::vector<monomial> lts;
    for (const auto& p : g3.gens) lts.push_back(p.leading(g3.order).first);
    CHECK(std::count(lts.begin(), lts.end(), monomial(std::vector<std::uint32_t>{2, 0})) == 1);
    CHECK(std::count(lts.begin(), lts.end(), monomial(std::vector<std::uint32_t>{0, 2})) == 1);
}

TEST_CASE("buchberger: circle and hyperbola (cross-checked reduced basis)") {
    // <z1^2+z2^2-1, z1*z2-1> in grevlex has the reduced basis
    // {z1*z2-1, z1^2+z2^2-1, z2^3 - z2 + z1}.
    auto g = buchberger({P("z1^2 + z2^2 - 1"), P("z1*z2 - 1")}, monomial_order::grevlex());
    CHECK(same_set(g.gens, {"z1*z2 - 1", "z1^2 + z2^2 - 1", "z2^3 + z1 - z2"}));
}

TEST_CASE("buchberger properties: idempotent, order independent, S-pairs vanish") {
    std::vector<polynomial> gens = {P("z1^2 - z2"), P("z2^2"), P("z1*z2 + z2")};
    auto g = buchberger(gens, monomial_order::grevlex());

    auto again = buchberger(g.gens, monomial_order::grevlex());
    CHECK(again.gens == g.gens);

    std::vector<polynomial> perm = {gens[2], gens[0], gens[1]};
    auto g2 = buchberger(perm, monomial_order::grevlex());
    CHECK(g2.gens == g.gens);

    for (std::size_t i = 0; i < g.gens.size(); ++i)
        for (std::size_t j = i + 1; j < g.gens.size(); ++j) {
            auto mi = g.gens[i].leading(g.order);
            auto mj = g.gens[j].leading(g.order);
            monomial l = monomial::lcm(mi.first, mj.first);
            auto s = g.gens[i].mul_monomial(mi.first.divide_into(l), mi.second.inv()) -
                     g.gens[j].mul_monomial(mj.first.divide_into(l), mj.second.inv());
            CHECK(normal_form(s, g).remainder.is_zero());
        }

    for (const auto& f : gens) CHECK(normal_form(f, g).remainder.is_zero());
}

TEST_CASE("buchberger: zero ideal and unit ideal") {
    auto g = buchberger({polynomial::zero(R2)}, monomial_order::grevlex());
    CHECK(g.gens.empty());

    auto u = buchberger({P("z1"), P("z1 + 1")}, monomial_order::grevlex());
    CHECK(same_set(u.gens, {"1"}));
}

TEST_CASE("buchberger cofactors re-expand") {
    std::vector<polynomial> gens = {P("z1^2 + z2"), P("z1*z2 - 1"), P("z2^3")};
    auto g = buchberger(gens, monomial_order::grevlex());
    REQUIRE(g.cofactors.size() == g.gens.size());
    for (std::size_t k = 0; k < g.gens.size(); ++k) {
        polynomial acc = polynomial::zero(R2);
        for (std::size_t j = 0; j < g.input.size(); ++j) acc += g.cofactors[k][j] * g.input[j];
        CHECK(acc == g.gens[k]);
    }
}

TEST_CASE("standard monomials") {
    auto g = buchberger({P("z1^2"), P("z2^2")}, monomial_order::grevlex());
    auto sm = standard_monomials(g);
    REQUIRE(sm.has_value());
    CHECK(sm->size() == 4);
    CHECK(same_set({polynomial::from_monomial(R2, (*sm)[0], 1),
                    polynomial::from_monomial(R2, (*sm)[1], 1),
                    polynomial::from_monomial(R2, (*sm)[2], 1),
                    polynomial::from_monomial(R2, (*sm)[3], 1)},
                   {"1", "z1", "z2", "z1*z2"}));

    auto inf = buchberger({P("z1")}, monomial_order::grevlex());
    CHECK(!standard_monomials(inf).has_value());

    auto R1 = poly_ring::make(1);
    auto g1 = buchberger({parse_polynomial(R1, "z1^4")}, monomial_order::grevlex());
    auto sm1 = standard_monomials(g1);
    REQUIRE(sm1.has_value());
    CHECK(sm1->size() == 4); // 1, z, z^2, z^3

    auto unit = buchberger({P("z1"), P("z1+1")}, monomial_order::grevlex());
    auto smu = standard_monomials(unit);
    REQUIRE(smu.has_value());
    CHECK(smu->empty());
}

TEST_CASE("lift_in_ideal") {
    auto lift = lift_in_ideal(P("z1^3"), {P("3*z1^2"), P("3*z2^2")});
    REQUIRE(lift.has_value());
    CHECK((*lift)[0] == P("1/3*z1"));
    CHECK((*lift)[1].is_zero());

    CHECK(!lift_in_ideal(P("1"), {P("z1"), P("z2")}).has_value());

    auto l2 = lift_in_ideal(P("z1*z2"), {P("z1")});
    REQUIRE(l2.has_value());
    CHECK((*l2)[0] == P("z2"));
}

TEST_CASE("lift re-expansion holds on random members") {
    std::mt19937 rng(23);
    std::vector<polynomial> gens = {P("z1^2 - z2"), P("z2^2 + z1")};
    for (int round = 0; round < 20; ++round) {
        auto a = testutil::random_poly(R2, rng, 3, 2);
        auto b = testutil::random_poly(R2, rng, 3, 2);
        polynomial member = a * gens[0] + b * gens[1];
        auto lift = lift_in_ideal(member, gens);
        REQUIRE(lift.has_value());
        polynomial acc = polynomial::zero(R2);
        for (std::size_t j = 0; j < gens.size(); ++j) acc += (*lift)[j] * gens[j];
        CHECK(acc == member);
    }
}
