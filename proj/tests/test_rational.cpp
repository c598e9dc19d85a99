#include <catch2/catch_amalgamated.hpp>

#include "residua/rational.hpp"

using residua::gaussian_rational;

TEST_CASE("construction keeps lowest terms") {
    auto q = gaussian_rational::rational(2, 4);
    CHECK(q.re() == mpq_class(1, 2));
    CHECK(q.str() == "1/2");
    CHECK(gaussian_rational(mpq_class(6, -3)).str() == "-2");
}

TEST_CASE("field arithmetic") {
    auto a = gaussian_rational::rational(1, 3) + gaussian_rational::rational(1, 2) * gaussian_rational::i();
    auto b = gaussian_rational::rational(-2, 5) + gaussian_rational::rational(3, 4) * gaussian_rational::i();

    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) * a == a * a + b * a);
    CHECK(a - a == gaussian_rational(0));

    auto inv = b.inv();
    CHECK(b * inv == gaussian_rational(1));
    CHECK(a / b * b == a);
}

TEST_CASE("i squares to -1") {
    auto i = gaussian_rational::i();
    CHECK(i * i == gaussian_rational(-1));
    CHECK(i.conj() == -i);
    CHECK((i * i.conj()) == gaussian_rational(1));
}

TEST_CASE("string forms") {
    CHECK(gaussian_rational(0).str() == "0");
    CHECK(gaussian_rational::i().str() == "i");
    CHECK((-gaussian_rational::i()).str() == "-i");
    auto z = gaussian_rational::rational(1, 2) - gaussian_rational::rational(3, 4) * gaussian_rational::i();
    CHECK(z.str() == "1/2 - 3/4*i");
    auto w = gaussian_rational::rational(-2, 1) + gaussian_rational::i();
    CHECK(w.str() == "-2 + i");
}

TEST_CASE("conversion to complex double") {
    auto z = gaussian_rational::rational(1, 4) + gaussian_rational::rational(-1, 8) * gaussian_rational::i();
    auto c = z.to_complex();
    CHECK(c.real() == Catch::Approx(0.25));
    CHECK(c.imag() == Catch::Approx(-0.125));
}
