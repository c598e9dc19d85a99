#include <catch2/catch_amalgamated.hpp>

#include "residua/polynomial.hpp"
#include "test_util.hpp"

using namespace residua;

namespace {
ring_ptr R2 = poly_ring::make(2);
polynomial z1 = polynomial::variable(R2, 0);
polynomial z2 = polynomial::variable(R2, 1);
} // namespace

TEST_CASE("ring laws on random polynomials") {
    std::mt19937 rng(42);
    for (int round = 0; round < 50; ++round) {
        auto a = testutil::random_poly(R2, rng);
        auto b = testutil::random_poly(R2, rng);
        auto c = testutil::random_poly(R2, rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("no zero coefficients are stored") {
    auto p = z1 - z1;
    CHECK(p.is_zero());
    CHECK(p.term_count() == 0);
    auto q = z1 * z2 + z1 * z2 - z1 * z2.scaled(gaussian_rational(2));
    CHECK(q.is_zero());
}

TEST_CASE("leading terms under the standard orders") {
    // p = z1*z2^2 + z1^2
    auto p = z1 * z2 * z2 + z1 * z1;
    CHECK(p.leading(monomial_order::lex()).first == monomial(std::vector<std::uint32_t>{2, 0}));
    CHECK(p.leading(monomial_order::grlex()).first == monomial(std::vector<std::uint32_t>{1, 2}));
    CHECK(p.leading(monomial_order::grevlex()).first == monomial(std::vector<std::uint32_t>{1, 2}));
    // weights (3,1): z1^2 has degree 6, z1*z2^2 has degree 5
    CHECK(p.leading(monomial_order::weighted({3, 1})).first == monomial(std::vector<std::uint32_t>{2, 0}));
}

TEST_CASE("grevlex vs grlex differ in dimension three") {
    auto R3 = poly_ring::make(3);
    // classic separating pair: x*z vs y^2 (equal total degree)
    monomial xz(std::vector<std::uint32_t>{1, 0, 1});
    monomial y2(std::vector<std::uint32_t>{0, 2, 0});
    CHECK(monomial_order::grlex().less(y2, xz));
    CHECK(monomial_order::grevlex().less(xz, y2));
}

TEST_CASE("derivative") {
    // d/dz1 (z1^3*z2 + z2) = 3 z1^2 z2
    auto p = z1.pow(3) * z2 + z2;
    auto d = p.derivative(0);
    CHECK(d == z1.pow(2) * z2.scaled(gaussian_rational(3)));
    CHECK(p.derivative(1) == z1.pow(3) + polynomial::one(R2));
}

TEST_CASE("conjugation in a doubled ring") {
    auto D = poly_ring::make_with_conjugates(2);
    auto z = polynomial::variable(D, 0);
    auto zb = polynomial::variable(D, 2);
    auto p = z.scaled(gaussian_rational::i()) + zb * zb;
    auto q = p.conj();
    CHECK(q == zb.scaled(-gaussian_rational::i()) + z * z);
    CHECK(q.conj() == p);
}

TEST_CASE("canonical string form") {
    auto p = z2 - z1 * z1;
    CHECK(p.str() == "-z1^2 + z2");
    auto q = z1.scaled(gaussian_rational::rational(1, 3)) + polynomial::constant(R2, gaussian_rational::i());
    CHECK(q.str() == "1/3*z1 + i");
    auto mixed = z1.scaled(gaussian_rational::rational(1, 2) + gaussian_rational::i());
    CHECK(mixed.str() == "(1/2 + i)*z1");
    CHECK(polynomial::zero(R2).str() == "0");
}

TEST_CASE("evaluation") {
    auto p = z1 * z1 + z2.scaled(gaussian_rational::i());
    std::vector<std::complex<double>> at{{2.0, 0.0}, {0.0, 1.0}};
    auto v = p.eval(at);
    CHECK(v.real() == Catch::Approx(3.0)); // 4 + i*(i) = 4 - 1
    CHECK(v.imag() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("ring mismatch is rejected") {
    auto other = poly_ring::make(3);
    auto q = polynomial::variable(other, 0);
    CHECK_THROWS_AS(z1 + q, residua::error);
}
