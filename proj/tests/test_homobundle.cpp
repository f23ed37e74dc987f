#include "doctest.h"

#include "cycalc/error.hpp"
#include "cycalc/homobundle.hpp"

#include <algorithm>

using namespace cycalc;

TEST_CASE("Schur weights") {
    CHECK(schur_weights({1}, 2) == std::vector<Exponent>{{1, 0}, {0, 1}});
    auto sym2 = schur_weights({2}, 2);
    std::sort(sym2.begin(), sym2.end());
    CHECK(sym2 == std::vector<Exponent>{{0, 2}, {1, 1}, {2, 0}});
    auto w5 = schur_weights({1, 1, 1, 1, 1}, 6);
    CHECK(w5.size() == 6);
    for (const auto& w : w5) CHECK(std::count(w.begin(), w.end(), 1) == 5);
}

TEST_CASE("weight multisets are permutation invariant") {
    for (std::size_t k = 2; k <= 4; ++k)
        for (int m = 1; m <= 5; ++m)
            for (const auto& lam : partitions_of(m, 3, 5)) {
                auto ws = schur_weights(lam, k);
                auto sorted = ws;
                std::sort(sorted.begin(), sorted.end());
                auto swapped = ws;
                for (auto& w : swapped) std::swap(w[0], w[1]);
                std::sort(swapped.begin(), swapped.end());
                CHECK(sorted == swapped);
            }
}

TEST_CASE("dualize") {
    auto d = dualize(catalog_lookup("no17").spec);
    CHECK(d.k == 6);
    CHECK(d.summands[0].carrier == Carrier::SDual);
    CHECK(d.summands[0].lambda == Partition{1, 1, 1, 1, 1});
    auto d24 = dualize(catalog_lookup("no24").spec);
    CHECK(d24.k == 4);
    CHECK(dualize(d24) == catalog_lookup("no24").spec);
    auto d12 = dualize(catalog_lookup("no12").spec);
    CHECK(d12.k == 5);
    CHECK(d12.summands == catalog_lookup("no12").spec.summands);
    for (const char* mixed : {"no16", "no18", "no25"}) {
        try {
            dualize(catalog_lookup(mixed).spec);
            CHECK(false);
        } catch (const Error& e) {
            CHECK(std::string(e.what()) == "not dualizable; use qconn or P_Δ pipeline");
            CHECK(e.code() == ErrorCode::pipeline_mismatch);
        }
    }
}

TEST_CASE("Euler lifts") {
    auto r = Ring::make(projective_power_presentation(2, 6, 8));
    TargetSpec o1{2, 6, {{Carrier::O, {}, 1}}, ""};
    CHECK(euler_lift(o1, r) == r->linear({1, 1}));
    TargetSpec s1{2, 6, {{Carrier::SDual, {1}, 1}}, ""};
    CHECK(euler_lift(s1, r) == r->linear({2, 1}) * r->linear({1, 2}));
    auto r8 = Ring::make(projective_power_presentation(2, 8, 12));
    TargetSpec sym{2, 8, {{Carrier::SDual, {2}, 0}}, ""};
    CHECK(euler_lift(sym, r8) == r8->linear({2, 0}) * r8->linear({1, 1}) * r8->linear({0, 2}));
}

TEST_CASE("elementary symmetric rewriting") {
    // p2 = e1^2 - 2 e2
    MPoly p2 = MPoly::monomial({2, 0, 0}) + MPoly::monomial({0, 2, 0}) + MPoly::monomial({0, 0, 2});
    MPoly e = to_elementary(p2);
    CHECK(e == MPoly::monomial({2, 0, 0}) - MPoly::monomial({0, 1, 0}) * Rational(2));
    CHECK_THROWS(to_elementary(MPoly::monomial({1, 0})));
}

TEST_CASE("Q Chern classes match the dual S* side") {
    // c(Q) on G(2,5) integrates like c(S*) on G(3,5).
    BundleSummand q{Carrier::Q, {1, 1}, 1};
    auto cq = chern_classes(q, 2, 5, 3);
    BundleSummand s{Carrier::SDual, {1, 1}, 1};
    auto cs = chern_classes(s, 3, 5, 3);
    MPoly h2 = MPoly::linear({1, 1}), h3 = MPoly::linear({1, 1, 1});
    for (int j = 0; j <= 3; ++j) {
        int rest = 6 - j;
        CHECK(integrate_grassmann(cq[j] * pow(h2, rest), 2, 5) == integrate_grassmann(cs[j] * pow(h3, rest), 3, 5));
    }
}

TEST_CASE("catalog shape") {
    CHECK(catalog().size() == 22);
    CHECK(catalog_lookup("no7").spec.k == 2);
    CHECK(catalog_lookup("No. 7").bundle == "S*(1) + O(1)^3");
    CHECK(catalog_lookup("no18").database == "unknown");
    CHECK_THROWS_AS(catalog_lookup("no99"), Error);
    std::vector<int> nos;
    for (auto* e : catalog_filter(2, 7)) nos.push_back(e->number);
    CHECK(nos == std::vector<int>{12, 13, 15, 16});
    CHECK(catalog_lookup("no16").alias_of == 12);
    for (const auto& e : catalog()) CHECK_NOTHROW(check_calabi_yau(e.spec));
}

TEST_CASE("spec JSON round trip") {
    for (const auto& e : catalog()) CHECK(spec_from_json(spec_to_json(e.spec)) == e.spec);
    CHECK_THROWS_AS(spec_from_json("{\"grassmann\":[2]}"), Error);
}

TEST_CASE("Calabi-Yau check failures") {
    TargetSpec bad{2, 5, {{Carrier::O, {}, 1}, {Carrier::O, {}, 1}, {Carrier::O, {}, 2}}, ""};
    try {
        check_calabi_yau(bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invariant_mismatch);
    }
}

TEST_CASE("sample topological invariants") {
    CHECK(topological_invariants(catalog_lookup("no1").spec) == Invariants{8, 56, -176});
    CHECK(topological_invariants(catalog_lookup("no5").spec) == Invariants{25, 70, -100});
}
