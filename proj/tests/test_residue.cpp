#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "residua/parser.hpp"
#include "residua/residue.hpp"
#include "test_util.hpp"

using namespace residua;

namespace {

ring_ptr R1 = poly_ring::make(1);
ring_ptr R2 = poly_ring::make(2);

section sect(const ring_ptr& r, const std::string& text) {
    return section::make(r, parse_section_list(r, text));
}
gaussian_rational q(long p, long d = 1) { return gaussian_rational::rational(p, d); }

} // namespace

TEST_CASE("monomial sections: plain coefficient extraction") {
    auto s = sect(R2, "[z1^2, z2^2]");
    CHECK(groth_residue(parse_polynomial(R2, "z1*z2"), s).value == q(1));
    CHECK(groth_residue(parse_polynomial(R2, "1"), s).value == q(0));
    CHECK(groth_residue(parse_polynomial(R2, "z1^3*z2"), s).value == q(0));
}

TEST_CASE("scaled cusp section") {
    auto s = sect(R2, "[3*z1^2, 3*z2^2]");
    groth_engine eng(s);
    CHECK(eng.pure_power_exponents() == std::vector<unsigned>{2, 2});
    CHECK(eng.residue(parse_polynomial(R2, "z1*z2")).value == q(1, 9));
    CHECK(eng.residue(parse_polynomial(R2, "z1")).value == q(0));
}

TEST_CASE("series oracle handles unit factors") {
    // res( z dz / (z^2 + z^4) ) = res( dz / (z (1+z^2)) ) = 1 at the origin
    auto f = parse_polynomial(R1, "z1^2 + z1^4");
    CHECK(oracle::residue_univariate(parse_polynomial(R1, "z1"), f) == q(1));
    CHECK(oracle::residue_univariate(parse_polynomial(R1, "1"), f) == q(0));
    // res( dz / (z^3 (2 - z^2)) ): series 1/(2 - z^2) = 1/2 + z^2/4 + ...
    auto f2 = parse_polynomial(R1, "2*z1^3 - z1^5");
    CHECK(oracle::residue_univariate(parse_polynomial(R1, "z1^2"), f2) == q(1, 2));
    CHECK(oracle::residue_univariate(parse_polynomial(R1, "1"), f2) == q(1, 4));
}

TEST_CASE("agreement with the independent oracles") {
    // one variable: origin-concentrated sections are exactly the monomials
    for (const char* ftext : {"z1^3", "3*z1^2", "2*z1", "i*z1^4", "1/2*z1^5"}) {
        auto f = parse_polynomial(R1, ftext);
        auto s = section::make(R1, {f});
        for (const char* gtext : {"1", "z1", "z1^2", "1 + 2*z1 + 3*z1^3", "i*z1^2 - 1/2"}) {
            auto g = parse_polynomial(R1, gtext);
            CAPTURE(ftext, gtext);
            CHECK(groth_residue(g, s).value == oracle::residue_univariate(g, f));
        }
    }
    // diagonal product extension in two variables
    std::mt19937 rng(5);
    int done = 0;
    for (const char* stext :
         {"[z1^2, z2^2]", "[3*z1^2, 3*z2^2]", "[z1^3, 2*z2^2]", "[i*z1^2, z2^4]"}) {
        auto s = sect(R2, stext);
        for (int round = 0; round < 6; ++round) {
            auto g = testutil::random_poly(R2, rng, 5, 4);
            CAPTURE(stext, g.str());
            CHECK(groth_residue(g, s).value == oracle::residue_diagonal(g, s.f));
            ++done;
        }
    }
    CHECK(done >= 20);
}

TEST_CASE("residue vanishes on the ideal") {
    std::mt19937 rng(9);
    for (const char* stext : {"[3*z1^2, 3*z2^2]", "[3*z1^2 + z2^2, 2*z1*z2]", "[z1^3, z2^2]"}) {
        auto s = sect(R2, stext);
        groth_engine eng(s);
        for (int round = 0; round < 8; ++round) {
            auto qq = testutil::random_poly(R2, rng, 3, 3);
            for (const auto& fi : s.f) CHECK(eng.residue(qq * fi).value == q(0));
        }
    }
}

TEST_CASE("residue does not depend on the choice of lift") {
    auto s = sect(R2, "[3*z1^2 + z2^2, 2*z1*z2]");
    groth_engine eng(s);
    // perturb the lift by syzygy rows: A'_i = A_i + q_i * (f_2, -f_1)
    std::mt19937 rng(31);
    for (int round = 0; round < 6; ++round) {
        auto lift = eng.lift_matrix();
        for (std::size_t i = 0; i < lift.size(); ++i) {
            auto qq = testutil::random_poly(R2, rng, 2, 2);
            lift[i][0] += qq * s.f[1];
            lift[i][1] -= qq * s.f[0];
        }
        // perturbed rows still lift the same pure powers
        for (std::size_t i = 0; i < lift.size(); ++i) {
            polynomial acc = polynomial::zero(R2);
            for (std::size_t j = 0; j < lift.size(); ++j) acc += lift[i][j] * s.f[j];
            REQUIRE(acc == polynomial::variable(
                               R2, i, eng.pure_power_exponents()[i]));
        }
        polynomial det_alt = poly_det(lift);
        for (const char* gtext : {"1", "z1*z2", "z2^2", "z1 + i*z2^3"}) {
            auto g = parse_polynomial(R2, gtext);
            CHECK(eng.residue_with(g, det_alt) == eng.residue(g));
        }
    }
}

TEST_CASE("pairing matrix of one-variable A2") {
    auto s = sect(R1, "[3*z1^2]");
    auto pm = residue_pairing_matrix(s);
    REQUIRE(pm.basis.size() == 2);
    CHECK(pm.entries[0][0] == q(0));
    CHECK(pm.entries[0][1] == q(1, 3));
    CHECK(pm.entries[1][0] == q(1, 3));
    CHECK(pm.entries[1][1] == q(0));
    CHECK(pm.determinant == q(-1, 9));
}

TEST_CASE("pairing matrix examples") {
    auto unitpair = residue_pairing_matrix(sect(R2, "[z1, z2]"));
    REQUIRE(unitpair.basis.size() == 1);
    CHECK(unitpair.entries[0][0] == q(1));
    CHECK(unitpair.determinant == q(1));

    auto pm = residue_pairing_matrix(sect(R2, "[3*z1^2, 3*z2^2]"));
    REQUIRE(pm.basis.size() == 4);
    // anti-diagonal pairing 1 <-> z1z2 and z1 <-> z2, all entries 1/9
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(pm.entries[i][j] == (i + j == 3 ? q(1, 9) : q(0)));
    CHECK(!pm.determinant.is_zero());
}

TEST_CASE("duality checks over the small regression set") {
    for (const char* stext :
         {"[z1, z2]", "[3*z1^2, 3*z2^2]", "[3*z1^2 + z2^2, 2*z1*z2]", "[3*z1^2, 4*z2^3]"}) {
        auto rep = duality_check(sect(R2, stext));
        CAPTURE(stext);
        CHECK(rep.nondegenerate);
        CHECK(!rep.determinant.is_zero());
    }
}

TEST_CASE("pairing_psi: mechanical sign pipeline") {
    // n = 1, s = (z), g = h = 1: res = 1, exponent floor(4/2)+1+1+1 = 5
    auto s1 = sect(R1, "[z1]");
    auto p1 = pairing_psi(parse_polynomial(R1, "1"), parse_polynomial(R1, "1"), s1);
    CHECK(p1.unit_power == 1);
    CHECK(p1.value == q(-1));

    // n = 2: exponent floor(5/2)+3+2+3 = 10, even
    auto s2 = sect(R2, "[3*z1^2, 3*z2^2]");
    auto p2 = pairing_psi(parse_polynomial(R2, "z1"), parse_polynomial(R2, "z2"), s2);
    CHECK(p2.unit_power == 2);
    CHECK(p2.value == q(1, 9));

    // vanishing on the ideal and bilinearity
    groth_engine eng(s2);
    auto g1 = parse_polynomial(R2, "z1 + z2^2");
    auto g2 = parse_polynomial(R2, "i*z1*z2");
    auto h = parse_polynomial(R2, "1 - z2");
    CHECK(pairing_psi_from(eng, parse_polynomial(R2, "3*z1^2") * h, h).value == q(0));
    auto lhs = pairing_psi_from(eng, g1 + g2, h);
    auto rhs1 = pairing_psi_from(eng, g1, h);
    auto rhs2 = pairing_psi_from(eng, g2, h);
    CHECK(lhs.value == rhs1.value + rhs2.value);
}

TEST_CASE("hessian residues equal the Milnor numbers") {
    auto fz3 = parse_polynomial(R1, "z1^3");
    CHECK(hessian_residue(fz3).value == q(2));

    CHECK(hessian_residue(parse_polynomial(R2, "z1^2 + z2^2")).value == q(1));
    CHECK(hessian_residue(parse_polynomial(R2, "z1^3 + z2^3")).value == q(4));
    CHECK(hessian_residue(parse_polynomial(R2, "z1^3 + z1*z2^2")).value == q(4)); // D4
    CHECK(hessian_residue(parse_polynomial(R2, "z1^3 + z2^4")).value == q(6));    // E6
}

TEST_CASE("empty zero locus: unit ideal has mu 0 and vanishing residues") {
    auto s = sect(R2, "[z1, z1 + 1]");
    groth_engine eng(s);
    CHECK(eng.milnor().mu == 0);
    CHECK(eng.residue(parse_polynomial(R2, "1 + z1*z2")).value == q(0));
    auto rep = duality_check(s);
    CHECK(rep.mu == 0);
    CHECK(rep.nondegenerate); // 0x0 pairing, determinant 1 by convention
}

TEST_CASE("three variables: duality for the Fermat cubic gradient") {
    auto R3 = poly_ring::make(3);
    auto f = parse_polynomial(R3, "z1^3 + z2^3 + z3^3");
    auto s = section::gradient_of(f);
    groth_engine eng(s);
    CHECK(eng.milnor().mu == 8);
    // the socle class z1 z2 z3 pairs against 1; its square is in the ideal
    auto socle = parse_polynomial(R3, "z1*z2*z3");
    CHECK(eng.residue(socle).value == q(1, 27));
    CHECK(eng.residue(socle * socle).value == q(0));
    auto rep = duality_check(s);
    CHECK(rep.nondegenerate);
    CHECK(hessian_residue(f).value == q(8));
}

TEST_CASE("X9 family: non-monomial lifts at mu = 9") {
    auto f = parse_polynomial(R2, "z1^4 + z2^4 + z1^2*z2^2");
    auto s = section::gradient_of(f);
    groth_engine eng(s);
    CHECK(eng.milnor().mu == 9);
    CHECK(hessian_residue(f).value == q(9));
    auto rep = duality_check(s);
    CHECK(rep.nondegenerate);
}

TEST_CASE("non-isolated zeros are refused") {
    CHECK_THROWS_AS(groth_residue(parse_polynomial(R2, "1"), sect(R2, "[z1, z1*z2]")), error);
    // power cap trips when the locus extends beyond the origin
    auto f = parse_polynomial(R1, "z1^2 + z1^3"); // extra zero at -1
    CHECK_THROWS_MATCHES(groth_engine(section::make(R1, {f})), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::non_isolated_zero;
                         }));
}
