#include "doctest.h"

#include "cycalc/error.hpp"
#include "cycalc/ratqa.hpp"

#include <random>

using namespace cycalc;

namespace {

Rational rnd(std::mt19937& g, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 3);
    return canonical(Rational(num(g), den(g)));
}

QPoly rnd_poly(std::mt19937& g, int deg) {
    std::vector<Rational> c;
    for (int i = 0; i <= deg; ++i) c.push_back(rnd(g));
    return QPoly(c);
}

}  // namespace

TEST_CASE("rational formatting round trip") {
    CHECK(to_string(Rational(3, 6)) == "1/2");
    CHECK(to_string(Rational(-4, 2)) == "-2");
    CHECK(parse_rational("-1431/2") == Rational(-1431, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("x/2"), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("nullspace vectors are annihilated") {
    std::mt19937 g(11);
    for (int trial = 0; trial < 20; ++trial) {
        QMatrix a(3, 6);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 6; ++j) a(i, j) = rnd(g);
        auto ns = nullspace(a);
        CHECK(ns.size() + rank(a) == 6);
        for (const auto& v : ns)
            for (const auto& x : a.apply(v)) CHECK(x == 0);
    }
}

TEST_CASE("inverse and solve") {
    std::mt19937 g(5);
    QMatrix a(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) a(i, j) = rnd(g) + (i == j ? 20 : 0);
    CHECK(a * inverse(a) == QMatrix::identity(4));
    std::vector<Rational> x{1, Rational(-2, 3), 5, 0};
    CHECK(solve_unique(a, a.apply(x)) == x);
    QMatrix s(2, 2);
    s(0, 0) = 1, s(0, 1) = 2, s(1, 0) = 2, s(1, 1) = 4;
    CHECK_THROWS_AS(inverse(s), Error);
}

TEST_CASE("polynomial division and gcd") {
    std::mt19937 g(7);
    for (int trial = 0; trial < 20; ++trial) {
        QPoly a = rnd_poly(g, 4), b = rnd_poly(g, 2), c = rnd_poly(g, 3);
        if (b.is_zero()) continue;
        auto d = divmod(a, b);
        CHECK(d.quotient * b + d.remainder == a);
        CHECK(d.remainder.degree() < b.degree());
        QPoly h = gcd(a * b, c * b);
        CHECK(divmod(h, b).remainder.is_zero());
        CHECK(h.lead() == 1);
    }
}

TEST_CASE("theta operator") {
    QPoly p(std::vector<Rational>{3, 2, 5});
    CHECK(p.theta() == QPoly(std::vector<Rational>{0, 2, 10}));
    CHECK(p.shift(2).coeff(4) == 5);
}

TEST_CASE("content clears denominators") {
    QPoly p(std::vector<Rational>{Rational(2, 3), Rational(4, 9)});
    QPoly n = p * (1 / content(p));
    CHECK(n == QPoly(std::vector<Rational>{3, 2}));
}

TEST_CASE("Bareiss agrees with cofactor expansion") {
    std::mt19937 g(3);
    for (int trial = 0; trial < 10; ++trial) {
        PolyMatrix m(4, std::vector<QPoly>(4));
        for (auto& row : m)
            for (auto& e : row) e = rnd_poly(g, 2);
        if (trial == 0) m[0][0] = QPoly();
        CHECK(ffdet(m) == cofactor_det(m));
    }
}

TEST_CASE("polynomial matrix kernel") {
    std::mt19937 g(19);
    for (int trial = 0; trial < 10; ++trial) {
        PolyMatrix c(3, std::vector<QPoly>(4));
        for (auto& row : c)
            for (auto& e : row) e = rnd_poly(g, 2);
        auto f = polymatrix_kernel(c);
        REQUIRE(f.size() == 4);
        for (const auto& row : c) {
            QPoly s;
            for (std::size_t j = 0; j < 4; ++j) s += row[j] * f[j];
            CHECK(s.is_zero());
        }
        CHECK(content(f) == 1);
    }
    PolyMatrix z(2, std::vector<QPoly>(3));
    z[0] = {QPoly(1), QPoly(2), QPoly(3)};
    z[1] = {QPoly(2), QPoly(4), QPoly(6)};
    CHECK_THROWS_WITH(polymatrix_kernel(z), doctest::Contains("degenerate elimination"));
}
