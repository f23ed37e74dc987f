#include "doctest.h"

#include "cycalc/error.hpp"
#include "cycalc/qconn.hpp"

using namespace cycalc;

namespace {

QPoly mono(const Rational& c, std::size_t d) { return QPoly::monomial(c, d); }

const TwistedBasis& basis25() {
    static TwistedBasis b = twisted_pairing(no25_seeds().basis, no25_twist());
    return b;
}

const CorrelatorTable& table25() {
    static CorrelatorTable t = wdvv_solve(no25_seeds().seeds, basis25(), no25_twist());
    return t;
}

}  // namespace

TEST_CASE("twisted pairing on G(3,7)") {
    const auto& b = basis25();
    REQUIRE(b.size() == 8);
    CHECK(b.gram(2, 4) == 66);
    CHECK(b.gram(3, 4) == 36);
    CHECK(b.gram(3, 5) == 20);
    for (std::size_t j = 0; j < 7; ++j) CHECK(b.gram(0, j) == 0);
    auto id = b.gram * b.dual;
    CHECK(id == QMatrix::identity(8));
}

TEST_CASE("classical correlators") {
    auto t = classical_correlators(basis25(), no25_twist());
    CHECK(t.at(0, 2, 4, 0) == 66);
    CHECK(t.at(1, 1, 4, 0) == 66);
    CHECK(t.at(1, 3, 3, 0) == 20);
    CHECK(t.at(4, 2, 0, 0) == t.at(0, 4, 2, 0));
    CHECK(!t.in_window(1, 1, 1, 0));
    CHECK_THROWS_AS(t.set(1, 1, 1, 0, 5), Error);
}

TEST_CASE("WDVV saturation") {
    const auto& t = table25();
    CHECK(t.unknowns().empty());
    CHECK(!wdvv_violation(t, basis25()).has_value());
    auto c = classical_correlators(basis25(), no25_twist());
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) CHECK(*t.get(i, j, k, 0) == *c.get(i, j, k, 0));
    // symmetry
    CHECK(t.at(1, 4, 7, 2) == t.at(7, 1, 4, 2));
    CHECK(t.at(3, 3, 5, 1) == 176);
}

TEST_CASE("WDVV reports missing seeds") {
    auto seeds = no25_seeds().seeds;
    seeds.pop_back();
    seeds.pop_back();
    seeds.pop_back();
    bool stuck = false;
    try {
        wdvv_solve(seeds, basis25(), no25_twist());
    } catch (const Error& e) {
        stuck = std::string(e.what()).find("WDVV propagation stuck") != std::string::npos;
    }
    CHECK(stuck);
}

TEST_CASE("connection matrix") {
    auto m = connection_matrix(table25(), basis25());
    ConnectionMatrix expect(8, std::vector<QPoly>(8));
    expect[0][1] = mono(4, 1);
    expect[0][4] = mono(72, 2);
    expect[0][5] = mono(40, 2);
    expect[0][7] = mono(396, 3);
    expect[1][0] = 1;
    expect[1][2] = mono(9, 1);
    expect[1][3] = mono(5, 1);
    expect[1][6] = mono(132, 2);
    expect[2][1] = 1;
    expect[2][4] = mono(8, 1);
    expect[2][5] = mono(4, 1);
    expect[3][4] = mono(6, 1);
    expect[3][5] = mono(4, 1);
    expect[3][7] = mono(132, 2);
    expect[4][2] = 1;
    expect[5][3] = 1;
    expect[5][6] = mono(Rational(33, 2), 1);
    expect[6][4] = 1;
    expect[6][5] = Rational(6, 11);
    expect[6][7] = mono(4, 1);
    expect[7][6] = 1;
    CHECK(m == expect);
}

TEST_CASE("toy eliminations") {
    ConnectionMatrix zero(1, std::vector<QPoly>(1));
    CHECK(qde_eliminate(zero) == OreOperator::theta());

    ConnectionMatrix toy{{QPoly(), mono(1, 1)}, {QPoly(1L), QPoly()}};
    auto op = qde_eliminate(toy);
    auto j = j_series(toy, 20);
    auto scal = j_scalar(j);
    CHECK(scal[0] == 1);
    auto r = apply_operator(op, scal);
    for (const auto& x : r) CHECK(x == 0);
}

TEST_CASE("J-series basics") {
    ConnectionMatrix zero(3, std::vector<QPoly>(3));
    auto j = j_series(zero, 4);
    CHECK(j[0] == std::vector<Rational>{1, 0, 0});
    for (std::size_t d = 1; d < j.size(); ++d) CHECK(j[d] == std::vector<Rational>{0, 0, 0});
    CHECK(lefschetz_series(j, zero, {}) == j_scalar(j));

    ConnectionMatrix bad{{QPoly(1L)}};
    CHECK_THROWS_AS(j_series(bad, 3), Error);
}

TEST_CASE("No. 25 elimination and Lefschetz") {
    auto r = run_no25(50);
    CHECK(r.qde == normalize(golden_operator("no25_qde")));
    CHECK(r.qde.coeff(0, 6) == -6653952);
    auto killed = apply_operator(r.qde, j_scalar(j_series(r.matrix, 30)));
    for (const auto& x : killed) CHECK(x == 0);
    REQUIRE(r.picard_fuchs);
    CHECK(*r.picard_fuchs == normalize(golden_operator("no25")));
    auto f = check_factorization(r.qde, no25_lines(), *r.picard_fuchs, golden_operator("no25_r").coeff(0),
                                 golden_operator("no25_r4"));
    CHECK(f.divisible);
    CHECK(f.identity);
}

TEST_CASE("seed file round trip") {
    const auto& f = no25_seeds();
    auto back = seed_file_from_json(seed_file_to_json(f));
    CHECK(back.seeds.size() == 10);
    CHECK(back.basis.size() == f.basis.size());
    CHECK(back.seeds[6].value == 176);
    CHECK_THROWS_AS(seed_file_from_json("{\"basis\":[],\"pairing\":[],\"seeds\":[{\"classes\":[3],\"d\":1,\"value\":\"1\"}]}"),
                    Error);
}
