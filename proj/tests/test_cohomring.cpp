#include "doctest.h"

#include "cycalc/cohomring.hpp"
#include "cycalc/error.hpp"

#include <random>

using namespace cycalc;

TEST_CASE("graded lex monomials") {
    auto m = monomials_of_degree(3, 2);
    REQUIRE(m.size() == 6);
    CHECK(m.front() == Exponent{2, 0, 0});
    CHECK(m.back() == Exponent{0, 0, 2});
}

TEST_CASE("projective power ring dimensions") {
    auto r = Ring::make(projective_power_presentation(2, 3, 6));
    auto d = r->dims();
    CHECK(d == std::vector<std::size_t>{1, 2, 3, 2, 1, 0, 0});
    auto h = r->gen(0);
    CHECK(pow(h, 3).is_zero());
    CHECK(!pow(h, 2).is_zero());
}

TEST_CASE("general presentation quotient") {
    // Q[x,y]/(x^2 - y^2, xy): degree 2 has dimension 1, degree 3 vanishes.
    RingPresentation p;
    p.generators = {"x", "y"};
    p.relations = {MPoly::monomial({2, 0}) - MPoly::monomial({0, 2}), MPoly::monomial({1, 1})};
    p.dmax = 4;
    auto r = Ring::make(p);
    CHECK(r->dims() == std::vector<std::size_t>{1, 2, 1, 0, 0});
    auto x = r->gen(0), y = r->gen(1);
    CHECK(x * x == y * y);
    CHECK((x * y).is_zero());
    CHECK((x * x * x).is_zero());
}

TEST_CASE("ring multiplication is associative and commutative") {
    RingPresentation p;
    p.generators = {"a", "b", "c"};
    p.relations = {MPoly::monomial({2, 0, 0}) - MPoly::monomial({0, 1, 1}),
                   MPoly::monomial({0, 3, 0}) + MPoly::monomial({1, 1, 1}) * Rational(2)};
    p.dmax = 6;
    auto r = Ring::make(p);
    std::mt19937 g(1);
    std::uniform_int_distribution<int> d(-3, 3);
    auto rnd = [&] {
        MPoly f(3);
        for (int deg = 0; deg <= 2; ++deg)
            for (const auto& e : monomials_of_degree(3, deg)) f.add_term(e, d(g));
        return r->from_poly(f);
    };
    for (int t = 0; t < 5; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("non-homogeneous relations are rejected") {
    RingPresentation p;
    p.generators = {"x"};
    p.relations = {MPoly::monomial({2}) - MPoly::constant(1, 1)};
    p.dmax = 3;
    CHECK_THROWS_AS(Ring::make(p), Error);
}

TEST_CASE("tableaux and hook-content formula agree") {
    for (std::size_t k = 1; k <= 5; ++k)
        for (int n = 0; n <= 5; ++n)
            for (const auto& lam : partitions_of(n, static_cast<int>(k)))
                CHECK(Integer(ssyt_contents(lam, k).size()) == hook_content_dimension(lam, k));
    CHECK(conjugate({3, 1}) == Partition{2, 1, 1});
    CHECK(partitions_of(4).size() == 5);
}

TEST_CASE("Schur polynomial is symmetric") {
    MPoly s = schur_poly({2, 1}, 3, {0, 1, 2});
    CHECK(s == s.permuted({1, 0, 2}));
    CHECK(s == s.permuted({2, 0, 1}));
    CHECK(s.coeff({1, 1, 1}) == 2);
}

TEST_CASE("Grassmannian integrals") {
    auto r = Ring::make(projective_power_presentation(2, 4, 4));
    auto s1 = r->linear({1, 1});
    CHECK(integrate_grassmann(pow(s1, 4), 2, 4) == 2);
    CHECK(integrate_grassmann(schur(r, {2, 2}, {0, 1}), 2, 4) == 1);
    // Schubert degree of G(2,5) is 5, of G(3,6) is 42.
    auto r25 = Ring::make(projective_power_presentation(2, 5, 6));
    CHECK(integrate_grassmann(pow(r25->linear({1, 1}), 6), 2, 5) == 5);
    CHECK(integrate_grassmann(pow(MPoly::linear({1, 1, 1}), 9), 3, 6) == 42);
    CHECK_THROWS_AS(integrate_grassmann(s1 + pow(s1, 4), 2, 4), Error);
}

TEST_CASE("Schur classes are dual under the intersection pairing") {
    const std::size_t k = 2;
    const int n = 5;
    auto r = Ring::make(projective_power_presentation(k, n, 6));
    auto box = partitions_of(0, 2, 3);
    for (int m = 1; m <= 6; ++m)
        for (const auto& p : partitions_of(m, 2, 3)) box.push_back(p);
    for (const auto& lam : box)
        for (const auto& mu : box) {
            if (lam.size() + mu.size() == 0) continue;
            int sl = 0, sm = 0;
            for (int x : lam) sl += x;
            for (int x : mu) sm += x;
            if (sl + sm != 6) continue;
            Partition dual(2, 0);
            for (std::size_t i = 0; i < 2; ++i) dual[1 - i] = 3 - (i < mu.size() ? mu[i] : 0);
            while (!dual.empty() && dual.back() == 0) dual.pop_back();
            auto v = integrate_grassmann(schur(r, lam, {0, 1}) * schur(r, mu, {0, 1}), k, n);
            CHECK(v == (lam == dual ? 1 : 0));
        }
}
