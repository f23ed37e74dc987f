// Acceptance criteria, one line each. Exit status is nonzero when a criterion fails
// that is not listed in kKnownFailures.
#include "cycalc/abelianization.hpp"
#include "cycalc/error.hpp"
#include "cycalc/pfops.hpp"
#include "cycalc/qconn.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

using namespace cycalc;

namespace {

// No. 18 I1red[3]: the printed 26746/3 contradicts the printed operator, which forces 9574/3.
const std::set<int> kKnownFailures = {3};

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::vector<Rational> R(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(parse_rational(x));
    return out;
}

std::string show(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
    return out + ")";
}

int guard_checks = 0;

bool guard_clean(const OreOperator& op, const std::vector<Rational>& series) {
    ++guard_checks;
    for (const auto& x : apply_operator(op, series))
        if (x != 0) return false;
    return true;
}

// Grows the series until an order-4 operator appears, as the command line front end does.
std::optional<OreOperator> find_operator(const std::function<std::vector<Rational>(int)>& series, Outcome& o) {
    for (int cap : {4, 6, 9, 12}) {
        auto s = series(5 * (cap + 1) + 11);
        auto op = annihilator_search(s, 4, cap);
        if (op) {
            o.require(guard_clean(*op, s), "guard band");
            return normalize(*op);
        }
    }
    return std::nullopt;
}

Outcome criterion1() {
    Outcome o;
    for (int n : {4, 5, 7, 13, 15, 17, 20, 23, 24, 28}) {
        auto label = "no" + std::to_string(n);
        auto t0 = std::chrono::steady_clock::now();
        const auto& spec = catalog_lookup(label).spec;
        auto op = find_operator([&](int order) { return i_series(spec, order).I0; }, o);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!op) {
            o.require(false, label + " no operator");
            continue;
        }
        o.require(*op == normalize(golden_operator(label)), label + " differs from golden");
        double limit = spec.k == 2 ? 60 : 25 * 60;
        o.require(secs <= limit, label + " too slow");
    }
    if (o.pass) o.detail = "10 operators equal the golden operators";
    return o;
}

Outcome criterion2() {
    Outcome o;
    auto s = i_series(catalog_lookup("no7").spec, 3);
    o.require(s.I0 == R({"1", "7", "199", "8359"}), "I0 " + show(s.I0));
    o.require(s.I1red == R({"0", "21", "1431/2", "64373/2"}), "I1red " + show(s.I1red));
    if (o.pass) o.detail = "I0 " + show(s.I0) + ", I1red " + show(s.I1red);
    return o;
}

Outcome criterion3() {
    Outcome o;
    auto s = pdelta_series(3);
    o.require(s.I0 == R({"1", "6", "66", "1092"}), "I0 " + show(s.I0));
    o.require(s.I1red == R({"0", "10", "167", "26746/3"}), "I1red computed " + show(s.I1red) + ", printed (0, 10, 167, 26746/3)");
    auto op = find_operator([](int order) { return pdelta_series(order).I0; }, o);
    o.require(op && *op == normalize(golden_operator("no18")), "P_Delta operator");
    if (o.pass) o.detail = "I0, I1red and the P_Delta operator match";
    else if (op && *op == normalize(golden_operator("no18"))) o.detail += "; I0 and the P_Delta operator match";
    return o;
}

Outcome criterion4() {
    Outcome o;
    auto r = run_no25(50);
    ConnectionMatrix expect(8, std::vector<QPoly>(8));
    auto m = [](long c, std::size_t d) { return QPoly::monomial(c, d); };
    expect[0][1] = m(4, 1);
    expect[0][4] = m(72, 2);
    expect[0][5] = m(40, 2);
    expect[0][7] = m(396, 3);
    expect[1][0] = 1;
    expect[1][2] = m(9, 1);
    expect[1][3] = m(5, 1);
    expect[1][6] = m(132, 2);
    expect[2][1] = 1;
    expect[2][4] = m(8, 1);
    expect[2][5] = m(4, 1);
    expect[3][4] = m(6, 1);
    expect[3][5] = m(4, 1);
    expect[3][7] = m(132, 2);
    expect[4][2] = 1;
    expect[5][3] = 1;
    expect[5][6] = QPoly::monomial(Rational(33, 2), 1);
    expect[6][4] = 1;
    expect[6][5] = Rational(6, 11);
    expect[6][7] = m(4, 1);
    expect[7][6] = 1;
    o.require(r.matrix == expect, "(a) connection matrix");
    o.require(r.qde == normalize(golden_operator("no25_qde")), "(b) QDE");
    o.require(r.picard_fuchs && *r.picard_fuchs == normalize(golden_operator("no25")), "(c) Picard-Fuchs operator");
    if (r.picard_fuchs) {
        o.require(guard_clean(*r.picard_fuchs, r.i0), "(c) guard band");
        auto f = check_factorization(r.qde, no25_lines(), *r.picard_fuchs, golden_operator("no25_r").coeff(0),
                                     golden_operator("no25_r4"));
        o.require(f.divisible, "(d) S_4 does not right-divide P");
        o.require(f.identity, "(d) P != theta^2(theta-1)^2 (1/r) R_4 S_4");
    }
    if (o.pass) o.detail = "(a) connection matrix, (b) QDE, (c) Picard-Fuchs operator, (d) factorization all exact";
    return o;
}

Outcome criterion5() {
    Outcome o;
    int rows = 0;
    for (const auto& e : catalog()) {
        ++rows;
        o.require(topological_invariants(e.spec) == e.invariants, "No. " + std::to_string(e.number));
    }
    o.require(rows == 22, "row count " + std::to_string(rows));
    if (o.pass) o.detail = "22 rows equal the catalog";
    return o;
}

Outcome criterion6() {
    Outcome o;
    auto a = i_series(catalog_lookup("no10").spec, 20);
    auto b = i_series(catalog_lookup("no12").spec, 20);
    o.require(a.I0 == b.I0 && a.I1red == b.I1red && a.I2red == b.I2red && a.I3red == b.I3red, "series differ");
    if (o.pass) o.detail = "No. 10 (dualized) equals No. 12 through q^20";
    return o;
}

Outcome criterion7() {
    Outcome o;
    // WDVV residuals
    const auto& sf = no25_seeds();
    auto basis = twisted_pairing(sf.basis, no25_twist());
    auto table = wdvv_solve(sf.seeds, basis, no25_twist());
    o.require(!wdvv_violation(table, basis).has_value(), "WDVV residual");

    // omega-divisibility and weight bookkeeping through the exact pipeline
    for (const char* t : {"no4", "no7", "no13", "no20", "no23", "no28"}) {
        try {
            auto td = grassmann_toric_data(catalog_lookup(t).spec);
            auto s = reference_series(td, 2);
            auto fast = grassmann_fast_series(catalog_lookup(t).spec, 2);
            o.require(s.I0 == fast.I0 && s.I1red == fast.I1red && s.I2red == fast.I2red && s.I3red == fast.I3red,
                      std::string(t) + " fast/reference");
            for (int total = 0; total <= 2; ++total)
                for (const auto& d : enumerate_degrees(td, total)) {
                    int w = 0;
                    for (const auto& b : td.bundles) w += b.mult * b.degree(d);
                    for (const auto& v : td.divisors) w -= v.mult * v.degree(d);
                    o.require(toric_coeff(td, d).weight == w, std::string(t) + " weight");
                }
        } catch (const Error& e) {
            o.require(false, std::string(t) + ": " + e.what());
        }
    }
    try {
        auto ref = reference_series(pdelta_toric_data(), 1);
        auto fast = pdelta_series(1);
        o.require(ref.I0 == fast.I0 && ref.I1red == fast.I1red, "P_Delta fast/reference");
    } catch (const Error& e) {
        o.require(false, std::string("P_Delta: ") + e.what());
    }

    // orthonormality of Schur classes on G(2,5) against complements in the 2x3 box
    std::vector<Partition> box;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= a; ++b) {
            Partition p;
            if (a) p.push_back(a);
            if (b) p.push_back(b);
            box.push_back(p);
        }
    for (const auto& l : box)
        for (const auto& m : box) {
            int sz = 0;
            for (int x : l) sz += x;
            for (int x : m) sz += x;
            if (sz != 6) continue;
            Partition comp;
            int l1 = l.size() > 1 ? l[1] : 0, l0 = l.empty() ? 0 : l[0];
            if (3 - l1) comp.push_back(3 - l1);
            if (3 - l0) comp.push_back(3 - l0);
            Rational v = integrate_grassmann(schur_poly(l, 2, {0, 1}) * schur_poly(m, 2, {0, 1}), 2, 5);
            o.require(v == (m == comp ? 1 : 0), "Schur duality");
        }
    o.require(guard_checks >= 12, "guard checks ran " + std::to_string(guard_checks));
    if (o.pass)
        o.detail = "WDVV residuals zero, omega-divisibility and weights clean, " + std::to_string(guard_checks) +
                   " guard bands clean, Schur duality on G(2,5)";
    return o;
}

}  // namespace

int main() {
    struct Item {
        int id;
        const char* name;
        double limit;
        Outcome (*run)();
    };
    // Criterion 7 counts guard checks from the earlier criteria, so it runs last.
    std::vector<Item> items = {
        {1, "Grassmannian operators", 25 * 60 + 10 * 60, criterion1},
        {2, "No. 7 series", 10, criterion2},
        {3, "No. 18 series and operator", 300, criterion3},
        {4, "No. 25 quantum connection", 300, criterion4},
        {5, "catalog invariants", 60, criterion5},
        {6, "No. 10 versus No. 12", 60, criterion6},
        {7, "property suites", 1e9, criterion7},
    };
    int failed = 0, unexpected = 0;
    for (const auto& it : items) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > it.limit) o.require(false, "time limit exceeded");
        bool known = !o.pass && kKnownFailures.count(it.id);
        std::printf("criterion %d %s: %s (%.1fs) %s%s\n", it.id, it.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str(),
                    known ? " [known failure, see README]" : "");
        std::fflush(stdout);
        if (!o.pass) {
            ++failed;
            if (!known) ++unexpected;
        }
    }
    std::printf("%zu criteria, %d failed, %d unexpected\n", items.size(), failed, unexpected);
    return unexpected ? 1 : 0;
}
