#include "doctest.h"

#include "cycalc/abelianization.hpp"
#include "cycalc/error.hpp"
#include "cycalc/pfops.hpp"

using namespace cycalc;

namespace {

OreOperator th() { return OreOperator::theta(); }
OreOperator qq() { return OreOperator::q(); }
OreOperator c(long v) { return OreOperator::constant(QPoly(v)); }

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("Ore multiplication") {
    CHECK(ore_mul(th(), qq()) == ore_mul(qq(), th()) + qq());
    CHECK(ore_mul(th(), th()) == OreOperator({QPoly(), QPoly(), QPoly(1L)}));
    auto a = th() + qq(), b = ore_mul(th(), th()) + c(3);
    auto d = ore_mul(qq(), th()) - c(1);
    CHECK(ore_mul(ore_mul(a, b), d) == ore_mul(a, ore_mul(b, d)));
}

TEST_CASE("right division") {
    auto p = ore_mul(th(), th()) + ore_mul(qq(), th());
    auto self = ore_right_divide(p, p);
    CHECK(self.quotient == c(1));
    CHECK(self.remainder.is_zero());
    auto byt = ore_right_divide(p, th());
    CHECK(byt.denominator == QPoly(1L));
    CHECK(byt.quotient == th() + qq());
    CHECK(byt.remainder.is_zero());

    // Generic case: den * p = quo o s + rem with rem of lower order.
    auto s = ore_mul(qq(), ore_mul(th(), th())) + th() + c(2);
    auto x = ore_mul(th(), th()) * Rational(3) + ore_mul(qq(), th()) + c(5);
    auto big = ore_mul(x, s) + th();
    auto dv = ore_right_divide(big, s);
    CHECK(dv.remainder.order() < s.order());
    CHECK(dv.denominator * big == ore_mul(dv.quotient, s) + dv.remainder);
    CHECK_THROWS_AS(ore_right_divide(th(), c(1)), Error);
}

TEST_CASE("reciprocal composition clears denominators") {
    QPoly r = QPoly(std::vector<Rational>{1, -4});
    auto a = ore_mul(th(), th()) + qq();
    auto b = compose_reciprocal(a, r);
    // r^3 (a o 1/r) o r = r^3 a
    CHECK(ore_mul(b, OreOperator::constant(r)) == pow(r, 3) * a);
}

TEST_CASE("BvS transform") {
    CHECK(bvs_transform(th(), {}) == th());
    CHECK(bvs_transform(th(), {1}) == th());
    auto qop = qq();  // q * 1
    auto t = bvs_transform(qop, {1, 1});
    auto expect = ore_mul(qq(), ore_mul(th() + c(1), th() + c(1)));
    CHECK(t == expect);
}

TEST_CASE("annihilator search") {
    std::vector<Rational> one(20, 0);
    one[0] = 1;
    auto op = annihilator_search(one, 1, 0);
    REQUIRE(op);
    CHECK(normalize(*op) == th());

    std::vector<Rational> cb;
    Integer b = 1;
    for (int m = 0; m < 30; ++m) {
        cb.push_back(Rational(b));
        b = b * 2 * (2 * m + 1) / (m + 1);
    }
    auto op2 = annihilator_search(cb, 1, 1);
    REQUIRE(op2);
    CHECK(normalize(*op2) == parse_operator("(1-4q)\\theta - 2q"));

    auto s = i_series(catalog_lookup("no4").spec, 30);
    auto op4 = annihilator_search(s.I0, 4, 2);
    REQUIRE(op4);
    CHECK(normalize(*op4) == normalize(golden_operator("no4")));

    // Too short to pin down the operator with the guard band intact.
    CHECK_THROWS_AS(annihilator_search(std::vector<Rational>(s.I0.begin(), s.I0.begin() + 12), 4, 2), Error);
}

TEST_CASE("underdetermined search") {
    // A sparse series is killed by many operators once the guard band is empty.
    std::vector<Rational> one(3, 0);
    one[0] = 1;
    bool threw = false;
    try {
        annihilator_search(one, 2, 0, 0);
    } catch (const Error& e) {
        threw = e.code() == ErrorCode::underdetermined;
    }
    CHECK(threw);
}

TEST_CASE("normalization") {
    auto half = ore_mul(th(), th()) * Rational(1, 2) - qq();
    CHECK(normalize(half) == ore_mul(th(), th()) - qq() * Rational(2));
    CHECK(normalize(c(-1) * Rational(1) + ore_mul(th(), th()) * Rational(-1)) == ore_mul(th(), th()) + c(1));
    auto g = golden_operator("no23");
    CHECK(normalize(g).coeff(4, 0) == 3721);
}

TEST_CASE("operator application") {
    std::vector<Rational> s{0};
    for (int m = 1; m < 10; ++m) s.push_back(Rational(1, m));
    auto t = apply_operator(th(), s);
    CHECK(t[0] == 0);
    for (int m = 1; m < 10; ++m) CHECK(t[static_cast<std::size_t>(m)] == 1);

    auto i17 = i_series(catalog_lookup("no17").spec, 40);
    CHECK(all_zero(apply_operator(golden_operator("no17"), i17.I0)));
}

TEST_CASE("JSON and text forms") {
    auto g = golden_operator("no28");
    CHECK(operator_from_json(operator_to_json(g)) == g);
    CHECK(parse_operator(pretty(g)) == g);
    auto n = normalize(g);
    CHECK(n.coeff(4, 0) == 529);
    CHECK(n.q_degree() == 9);
    CHECK(n == normalize(parse_operator(pretty(n))));
    CHECK(parse_operator("\\left(\\theta + 1\\right)^2") == ore_mul(th() + c(1), th() + c(1)));
    CHECK_THROWS_AS(parse_operator("\\theta +* q"), Error);
}
