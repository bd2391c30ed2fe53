#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kfour/field.hpp"
#include "kfour/poly.hpp"

using namespace kfour;

TEST_CASE("canonical modulus table is valid for every degree") {
    for (unsigned e = 1; e <= 8; ++e) {
        Field f = Field::gf(e);
        REQUIRE(f.degree() == e);
        REQUIRE(f.size() == (1u << e));
    }
}

TEST_CASE("reducible modulus is rejected at construction") {
    REQUIRE_THROWS_AS(Field(2, 0b101), std::invalid_argument);  // x^2 + 1 = (x+1)^2
    REQUIRE_THROWS_AS(Field(2, 0b1011), std::invalid_argument); // degree mismatch
    REQUIRE_THROWS_AS(Field(9, 0b11), std::invalid_argument);
}

TEST_CASE("GF(2) basics") {
    Field f = Field::gf(1);
    REQUIRE(f.add(1, 1) == 0);
    REQUIRE(f.mul(1, 1) == 1);
    REQUIRE(f.inv(1) == 1);
}

TEST_CASE("GF(4) with modulus t^2+t+1: t*t = t+1") {
    Field f = Field::gf(2);
    REQUIRE(f.modulus() == 0b111);
    REQUIRE(f.mul(0b10, 0b10) == 0b11);
}

TEST_CASE("inversion of zero is a domain error") {
    REQUIRE_THROWS_AS(Field::gf(3).inv(0), std::domain_error);
    REQUIRE_THROWS_AS(Scalar::zero(Field::gf(1)).inverse(), std::domain_error);
}

TEST_CASE("mixed-field scalar operands are rejected") {
    Scalar a = Scalar::one(Field::gf(2));
    Scalar b = Scalar::one(Field::gf(3));
    REQUIRE_THROWS_AS(a + b, FieldMismatchError);
    REQUIRE_THROWS_AS(a * b, FieldMismatchError);
}

TEST_CASE("characteristic 2 and inverses, exhaustive for e <= 4") {
    for (unsigned e = 1; e <= 4; ++e) {
        Field f = Field::gf(e);
        for (unsigned a = 0; a < f.size(); ++a) {
            REQUIRE(f.add(a, a) == 0);
            if (a) REQUIRE(f.mul(a, f.inv(a)) == 1);
            // Frobenius closure a^(2^e) = a
            uint8_t p = static_cast<uint8_t>(a);
            for (unsigned k = 0; k < e; ++k) p = f.mul(p, p);
            REQUIRE(p == a);
        }
    }
}

TEST_CASE("ring axioms, exhaustive for e <= 3") {
    for (unsigned e = 1; e <= 3; ++e) {
        Field f = Field::gf(e);
        for (unsigned a = 0; a < f.size(); ++a)
            for (unsigned b = 0; b < f.size(); ++b)
                for (unsigned c = 0; c < f.size(); ++c) {
                    REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
                    REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
                    REQUIRE(f.mul(a, b) == f.mul(b, a));
                }
    }
}

TEST_CASE("ring axioms, randomized triples up to e = 8") {
    std::mt19937 rng(20260809);
    for (unsigned e = 4; e <= 8; ++e) {
        Field f = Field::gf(e);
        for (int t = 0; t < 500; ++t) {
            uint8_t a = static_cast<uint8_t>(rng() % f.size());
            uint8_t b = static_cast<uint8_t>(rng() % f.size());
            uint8_t c = static_cast<uint8_t>(rng() % f.size());
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        }
    }
}

TEST_CASE("nonzero elements form a group of order 2^e - 1") {
    for (unsigned e = 1; e <= 4; ++e) {
        Field f = Field::gf(e);
        for (unsigned a = 1; a < f.size(); ++a) {
            uint8_t p = 1;
            for (unsigned k = 0; k < f.size() - 1; ++k) p = f.mul(p, static_cast<uint8_t>(a));
            REQUIRE(p == 1);
        }
    }
}

TEST_CASE("polynomial arithmetic and irreducibility") {
    Field f2 = Field::gf(1);
    Poly x = Poly::x(f2);
    Poly x2x1 = Poly::parse(f2, "x^2+x+1");
    REQUIRE(x2x1.to_string() == "x^2+x+1");
    REQUIRE(is_irreducible(x2x1));
    REQUIRE_FALSE(is_irreducible(Poly::parse(f2, "x^2+1")));
    REQUIRE((x * x + x + Poly::one(f2)) == x2x1);

    auto [q, r] = (x2x1 * x2x1).divmod(x2x1);
    REQUIRE(q == x2x1);
    REQUIRE(r.is_zero());

    REQUIRE(poly_gcd(x2x1 * x, x2x1) == x2x1);
    REQUIRE(poly_lcm(x, x2x1) == x * x2x1);

    Field f4 = Field::gf(2);
    Poly xw = Poly::x_plus(f4, 2);  // x + omega
    REQUIRE(is_irreducible(xw));
    REQUIRE(xw.to_string() == "x+2");
    REQUIRE(Poly::parse(f4, "x+2") == xw);
    // x^2 + x + 1 splits over GF(4): (x+w)(x+w^2) where w^2 = w+1
    REQUIRE_FALSE(is_irreducible(Poly::parse(f4, "x^2+x+1")));
}
