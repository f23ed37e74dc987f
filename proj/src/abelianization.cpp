#include "cycalc/abelianization.hpp"

#include "cycalc/error.hpp"
#include "modular.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace cycalc {

using modular::Field;
using modular::u64;

int LinearClass::degree(const DegreeVector& d) const {
    if (d.size() != pairing.size()) fail(ErrorCode::invalid_argument, "degree vector has wrong length");
    int e = 0;
    for (std::size_t i = 0; i < d.size(); ++i) e += pairing[i] * d[i];
    return e;
}

namespace {

int sum_of(const DegreeVector& d) { return std::accumulate(d.begin(), d.end(), 0); }

RingElement constant(const Ring& R, const Rational& c) { return R.one() * c; }

// 1 / (L + m) as a truncated series, m != 0.
RingElement inverse_shift(const Ring& R, const RingElement& L, int m) {
    RingElement out = R.zero();
    RingElement power = R.one();
    Rational inv = Rational(1, m);
    Rational c = inv;
    for (int j = 0; j <= R.dmax(); ++j) {
        out += power * c;
        power = power * L;
        c *= -inv;
        if (power.is_zero()) break;
    }
    return out;
}

std::vector<Rational> to_rational(const Exponent& w) {
    std::vector<Rational> out;
    for (int x : w) out.emplace_back(x);
    return out;
}

MPoly linear_poly(const std::vector<Rational>& cls) { return MPoly::linear(cls); }

void compositions(int total, std::size_t parts, DegreeVector& cur, std::size_t pos, std::vector<DegreeVector>& out) {
    if (pos + 1 == parts) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur[pos] = v;
        compositions(total - v, parts, cur, pos + 1, out);
    }
}

std::string partition_name(const Partition& mu) {
    std::string s = "s(";
    for (std::size_t i = 0; i < mu.size(); ++i) s += (i ? "," : "") + std::to_string(mu[i]);
    return s + ")";
}

std::vector<Partition> partitions_upto3(std::size_t max_parts, int max_part) {
    std::vector<Partition> out;
    for (int m = 0; m <= 3; ++m)
        for (auto& p : partitions_of(m, static_cast<int>(max_parts), max_part)) out.push_back(p);
    return out;
}

MPoly euler_poly(const TargetSpec& spec) {
    MPoly e = MPoly::constant(static_cast<std::size_t>(spec.k), 1);
    for (const auto& w : line_weights(spec)) e = e * linear_poly(to_rational(w));
    return e;
}

MPoly sigma1(std::size_t k) { return MPoly::linear(std::vector<Rational>(k, Rational(1))); }

// Integrals of s_mu * sigma_1^{3-|mu|} * e(E) over G(k,n), normalized by that of sigma_1^3.
std::map<Partition, Rational> grassmann_pairings(const TargetSpec& spec, const std::vector<Partition>& parts) {
    std::size_t k = static_cast<std::size_t>(spec.k);
    MPoly e = euler_poly(spec);
    MPoly s1 = sigma1(k);
    Rational norm = integrate_grassmann(pow(s1, 3) * e, k, spec.n);
    if (norm == 0) fail(ErrorCode::invariant_mismatch, "degree of the zero locus vanishes");
    std::vector<std::size_t> vars(k);
    std::iota(vars.begin(), vars.end(), 0);
    std::map<Partition, Rational> out;
    for (const auto& mu : parts) {
        int size = std::accumulate(mu.begin(), mu.end(), 0);
        MPoly f = schur_poly(mu, k, vars) * pow(s1, static_cast<unsigned>(3 - size)) * e;
        out[mu] = canonical(integrate_grassmann(f, k, spec.n) / norm);
    }
    return out;
}

TargetSpec pure_form(const TargetSpec& spec) {
    if (is_mixed(spec)) fail(ErrorCode::pipeline_mismatch, "not dualizable; use qconn or P_Δ pipeline");
    if (has_carrier(spec, Carrier::Q)) return dualize(spec);
    return spec;
}

}  // namespace

// ---------------------------------------------------------------- toric data

ToricData grassmann_toric_data(const TargetSpec& input) {
    TargetSpec spec = pure_form(input);
    validate(spec);
    std::size_t k = static_cast<std::size_t>(spec.k);
    int n = spec.n;
    ToricData td;
    td.name = spec.label.empty() ? "G(" + std::to_string(k) + "," + std::to_string(n) + ")" : spec.label;
    int P = static_cast<int>(k * (k - 1) / 2);
    td.ring = Ring::make(projective_power_presentation(k, n, P + 3));
    for (std::size_t i = 0; i < k; ++i) {
        LinearClass D;
        D.cls.assign(k, 0);
        D.cls[i] = 1;
        D.pairing.assign(k, 0);
        D.pairing[i] = 1;
        D.mult = n;
        td.divisors.push_back(D);
    }
    for (const auto& w : line_weights(spec)) td.bundles.push_back({to_rational(w), w, 1});
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            LinearClass r;
            r.cls.assign(k, 0);
            r.pairing.assign(k, 0);
            r.cls[i] = 1;
            r.cls[j] = -1;
            r.pairing[i] = 1;
            r.pairing[j] = -1;
            td.roots.push_back(r);
        }
    Integer fact = 1;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<unsigned long>(i);
    td.weyl_order = static_cast<int>(fact.get_si());
    int km1 = static_cast<int>(k) - 1;
    td.sign = [km1](const DegreeVector& d) { return km1 * sum_of(d); };
    td.height = [](const DegreeVector& d) { return sum_of(d); };
    td.in_cone = [k](const DegreeVector& d) {
        if (d.size() != k) return false;
        return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
    };
    td.enumerate = [k](int total) {
        std::vector<DegreeVector> out;
        DegreeVector cur(k);
        compositions(total, k, cur, 0, out);
        return out;
    };
    auto parts = partitions_upto3(k, n - static_cast<int>(k));
    auto pairing = grassmann_pairings(spec, parts);
    std::vector<std::size_t> vars(k);
    std::iota(vars.begin(), vars.end(), 0);
    for (const auto& mu : parts) {
        td.lifts.push_back(schur(td.ring, mu, vars));
        td.lift_degree.push_back(std::accumulate(mu.begin(), mu.end(), 0));
        td.lift_names.push_back(partition_name(mu));
        td.lift_pairing.push_back(pairing.at(mu));
    }
    return td;
}

namespace {

// Geometry of P_Delta in the free coordinates (H12, H22, H31, H32).
struct PDeltaGeometry {
    static constexpr std::size_t nv = 4;
    std::array<std::vector<Rational>, 6> entry;  // order 11,12,21,22,31,32
    std::array<LinearClass, 6> divisors;
    std::array<LinearClass, 3> bundles;
    std::array<LinearClass, 4> roots;
    MPoly q1, omega, euler;
    std::vector<MPoly> lifts;
    std::vector<int> lift_degree;
    std::vector<std::string> lift_names;
    std::vector<Rational> lift_pairing;
    RingPresentation presentation;
    RingHandle top_ring;
    Rational point_norm;
    Rational h3_norm;
    std::vector<std::vector<int>> sr_pairs;  // pairs of entry indices

    // Evaluation data for the fast path: points and per-degree functionals on invariant polynomials.
    std::vector<std::vector<Rational>> points;
    std::array<std::vector<Rational>, 4> weights;  // weights[m][p]

    Rational integrate(const MPoly& f) const {
        RingElement x = top_ring->from_poly(f);
        return canonical(x.component(14)[0] / point_norm);
    }
    // Twisted pairing on N up to a common factor.
    Rational pairing(const MPoly& f) const { return integrate(f * euler * omega * omega); }
};

std::vector<Rational> unit(std::size_t i) {
    std::vector<Rational> v(4, 0);
    v[i] = 1;
    return v;
}

std::vector<Rational> add(const std::vector<Rational>& a, const std::vector<Rational>& b, int sb = 1) {
    std::vector<Rational> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + Rational(sb) * b[i];
    return c;
}

std::vector<int> pairing6(std::initializer_list<std::pair<int, int>> terms) {
    std::vector<int> p(6, 0);
    for (auto [idx, c] : terms) p[idx] += c;
    return p;
}

std::vector<Rational> combo(const std::array<std::vector<Rational>, 6>& e, const std::vector<int>& c) {
    std::vector<Rational> out(4, 0);
    for (std::size_t i = 0; i < 6; ++i)
        if (c[i]) out = add(out, e[i], c[i]);
    return out;
}

// Basis of the W-invariant polynomials of degree m in the free coordinates.
std::vector<MPoly> invariant_basis(const std::array<std::vector<Rational>, 6>& entry, int m) {
    // entry index = 2*row + col
    std::vector<std::array<int, 3>> rows = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::array<int, 2>> cols = {{0, 1}, {1, 0}};
    // free variables are entries 12, 22, 31, 32 = indices 1, 3, 4, 5
    const std::array<int, 4> free_idx = {1, 3, 4, 5};
    std::vector<std::vector<MPoly>> actions;
    for (const auto& s : rows)
        for (const auto& t : cols) {
            std::vector<MPoly> images;
            for (int f : free_idx) {
                int r = f / 2, c = f % 2;
                images.push_back(MPoly::linear(entry[2 * s[r] + t[c]]));
            }
            actions.push_back(images);
        }
    auto monos = monomials_of_degree(4, m);
    QMatrix M(monos.size(), monos.size());
    for (std::size_t a = 0; a < monos.size(); ++a) {
        MPoly mono = MPoly::monomial(monos[a]);
        MPoly sym(4);
        for (const auto& img : actions) sym += mono.substitute(img);
        for (std::size_t b = 0; b < monos.size(); ++b) M(a, b) = sym.coeff(monos[b]);
    }
    auto piv = rref(M);
    std::vector<MPoly> out;
    for (std::size_t r = 0; r < piv.size(); ++r) {
        MPoly p(4);
        for (std::size_t b = 0; b < monos.size(); ++b)
            if (M(r, b) != 0) p.add_term(monos[b], M(r, b));
        out.push_back(p);
    }
    return out;
}

const PDeltaGeometry& pdelta_geometry() {
    static std::once_flag once;
    static std::unique_ptr<PDeltaGeometry> geo;
    std::call_once(once, [] {
        auto g = std::make_unique<PDeltaGeometry>();
        auto& E = g->entry;
        E[1] = unit(0);                             // H12
        E[3] = unit(1);                             // H22
        E[4] = unit(2);                             // H31
        E[5] = unit(3);                             // H32
        E[0] = add(add(E[1], E[4]), E[5], -1);      // H11 = H12 + H31 - H32
        E[2] = add(add(E[3], E[4]), E[5], -1);      // H21 = H22 + H31 - H32
        for (int i = 0; i < 6; ++i) g->divisors[i] = {E[i], pairing6({{i, 1}}), 3};
        auto D1 = pairing6({{0, 2}, {3, 2}, {4, 2}});
        auto D2 = pairing6({{0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
        auto D3 = pairing6({{1, 2}, {2, 2}, {5, 2}});
        g->bundles[0] = {combo(E, D1), D1, 1};
        g->bundles[1] = {combo(E, D2), D2, 1};
        g->bundles[2] = {combo(E, D3), D3, 1};
        auto R1 = pairing6({{0, 1}, {2, -1}});
        auto R2 = pairing6({{0, 1}, {4, -1}});
        auto R3 = pairing6({{2, 1}, {4, -1}});
        auto R4 = pairing6({{1, 1}, {0, -1}});
        g->roots[0] = {combo(E, R1), R1, 1};
        g->roots[1] = {combo(E, R2), R2, 1};
        g->roots[2] = {combo(E, R3), R3, 1};
        g->roots[3] = {combo(E, R4), R4, 1};

        g->omega = MPoly::constant(4, 1);
        for (const auto& r : g->roots) g->omega = g->omega * MPoly::linear(r.cls);
        g->euler = MPoly::constant(4, 1);
        for (const auto& b : g->bundles) g->euler = g->euler * MPoly::linear(b.cls);
        g->q1 = MPoly::linear(g->bundles[1].cls);

        // Stanley-Reisner pairs: two entries in the same row or the same column.
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                if (a / 2 == b / 2 || a % 2 == b % 2) g->sr_pairs.push_back({a, b});

        g->presentation.generators = {"H12", "H22", "H31", "H32"};
        for (const auto& pr : g->sr_pairs)
            g->presentation.relations.push_back(pow(MPoly::linear(E[pr[0]]), 3) * pow(MPoly::linear(E[pr[1]]), 3));
        RingPresentation top = g->presentation;
        top.dmax = 14;
        g->top_ring = Ring::make(top);
        if (g->top_ring->dim(14) != 1) fail("top degree of P_Delta is not one-dimensional");
        // Torus-fixed point with nonzero entries (1,1),(2,1),(2,2),(3,2).
        MPoly pt = pow(MPoly::linear(E[0]), 2) * pow(MPoly::linear(E[2]), 2) * pow(MPoly::linear(E[3]), 2) *
                   pow(MPoly::linear(E[5]), 2) * pow(MPoly::linear(E[1]), 3) * pow(MPoly::linear(E[4]), 3);
        g->point_norm = g->top_ring->from_poly(pt).component(14)[0];
        if (g->point_norm == 0) fail("point class vanishes on P_Delta");

        // Lifts: 1; q1; q1^2, q2, p2; q1^3, q1 q2, q1 p2.
        MPoly one = MPoly::constant(4, 1);
        MPoly q2 = MPoly::linear(g->bundles[0].cls) * MPoly::linear(g->bundles[2].cls) * Rational(1, 4);
        std::array<MPoly, 3> el = {MPoly::linear(add(E[0], E[3])), MPoly::linear(add(E[2], E[5])),
                                   MPoly::linear(add(E[4], E[1]))};
        MPoly p2 = el[0] * el[1] + el[0] * el[2] + el[1] * el[2];
        MPoly q1 = g->q1;
        g->lifts = {one, q1, q1 * q1, q2, p2, q1 * q1 * q1, q1 * q2, q1 * p2};
        g->lift_degree = {0, 1, 2, 2, 2, 3, 3, 3};
        g->lift_names = {"1", "q1", "q1^2", "q2", "p2", "q1^3", "q1*q2", "q1*p2"};
        g->h3_norm = g->pairing(q1 * q1 * q1);
        if (g->h3_norm == 0) fail(ErrorCode::invariant_mismatch, "degree of the zero locus vanishes");
        for (std::size_t i = 0; i < g->lifts.size(); ++i)
            g->lift_pairing.push_back(
                canonical(g->pairing(g->lifts[i] * pow(q1, static_cast<unsigned>(3 - g->lift_degree[i]))) / g->h3_norm));

        // Evaluation points and weights: for invariant f of degree m,
        // sum_p weights[m][p] f(p) equals pairing(f q1^{3-m}) / pairing(q1^3).
        g->points = {{1, 3, 7, 12}, {2, -5, 4, 9}, {-3, 8, 1, 5}, {6, 2, -7, 3}};
        for (int m = 0; m <= 3; ++m) {
            auto basis = invariant_basis(E, m);
            std::size_t r = basis.size();
            if (r > g->points.size()) fail("not enough evaluation points");
            QMatrix ev(r, r);
            std::vector<Rational> phi(r);
            for (std::size_t j = 0; j < r; ++j) {
                for (std::size_t p = 0; p < r; ++p) ev(j, p) = basis[j].eval(g->points[p]);
                phi[j] = canonical(g->pairing(basis[j] * pow(q1, static_cast<unsigned>(3 - m))) / g->h3_norm);
            }
            g->weights[m] = solve_unique(ev, phi);
        }
        geo = std::move(g);
    });
    return *geo;
}

bool sr_killed(const DegreeVector& d, const PDeltaGeometry& g) {
    for (const auto& pr : g.sr_pairs)
        if (d[pr[0]] < 0 && d[pr[1]] < 0) return true;
    return false;
}

bool pdelta_in_cone(const DegreeVector& d) {
    if (d.size() != 6) return false;
    // order 11,12,21,22,31,32
    if (-d[0] + d[1] + d[2] - d[3] != 0) return false;
    if (-d[0] + d[1] + d[4] - d[5] != 0) return false;
    if (d[0] + d[3] < 0 || d[2] + d[5] < 0 || d[4] + d[1] < 0) return false;
    if (d[0] + d[3] + d[4] < 0 || d[1] + d[2] + d[5] < 0) return false;
    return true;
}

std::vector<DegreeVector> pdelta_enumerate(int total) {
    if (total < 0) fail(ErrorCode::invalid_argument, "negative total degree");
    std::vector<DegreeVector> out;
    int B = total + 1;
    // h = 2 d12 + 2 d22 + 3 d31 - d32 on the lattice
    for (int d12 = -B; d12 <= B; ++d12)
        for (int d22 = -B; d22 <= B; ++d22)
            for (int d31 = -B; d31 <= B; ++d31) {
                int d32 = 2 * d12 + 2 * d22 + 3 * d31 - total;
                if (d32 < -B || d32 > B) continue;
                DegreeVector d = {d12 + d31 - d32, d12, d22 + d31 - d32, d22, d31, d32};
                if (!pdelta_in_cone(d)) continue;
                for (int x : d)
                    if (std::abs(x) > total) fail("unbounded cone enumeration");
                out.push_back(d);
            }
    return out;
}

}  // namespace

ToricData pdelta_toric_data() {
    const auto& g = pdelta_geometry();
    ToricData td;
    td.name = "P_Delta";
    RingPresentation pres = g.presentation;
    pres.dmax = 4 + 3;
    td.ring = Ring::make(pres);
    td.divisors.assign(g.divisors.begin(), g.divisors.end());
    td.bundles.assign(g.bundles.begin(), g.bundles.end());
    td.roots.assign(g.roots.begin(), g.roots.end());
    td.weyl_order = 12;
    td.sign = [](const DegreeVector& d) { return sum_of(d); };
    td.height = [](const DegreeVector& d) { return sum_of(d); };
    td.in_cone = pdelta_in_cone;
    td.enumerate = pdelta_enumerate;
    for (const auto& l : g.lifts) td.lifts.push_back(td.ring->from_poly(l));
    td.lift_degree = g.lift_degree;
    td.lift_names = g.lift_names;
    td.lift_pairing = g.lift_pairing;
    return td;
}

// ---------------------------------------------------------------- reference pipeline

WeightedElement toric_coeff(const ToricData& td, const DegreeVector& d) {
    if (!td.in_cone(d)) fail(ErrorCode::invalid_argument, "degree vector outside the cone");
    const Ring& R = *td.ring;
    RingElement value = R.one();
    int weight = 0;
    for (const auto& b : td.bundles) {
        int e = b.degree(d);
        if (e < 0) fail(ErrorCode::invalid_argument, "negative bundle degree has no inverse");
        RingElement L = R.linear(b.cls);
        for (int m = 1; m <= e; ++m) value = value * pow(L + constant(R, m), static_cast<unsigned>(b.mult));
        weight += b.mult * e;
    }
    for (const auto& D : td.divisors) {
        int e = D.degree(d);
        RingElement L = R.linear(D.cls);
        if (e > 0) {
            for (int m = 1; m <= e; ++m) value = value * pow(inverse_shift(R, L, m), static_cast<unsigned>(D.mult));
        } else {
            for (int m = e + 1; m <= 0; ++m) value = value * pow(L + constant(R, m), static_cast<unsigned>(D.mult));
        }
        weight -= D.mult * e;
    }
    return {value, weight};
}

std::vector<DegreeVector> enumerate_degrees(const ToricData& td, int total) {
    if (total < 0) fail(ErrorCode::invalid_argument, "negative total degree");
    return td.enumerate(total);
}

RingElement omega(const ToricData& td) {
    RingElement w = td.ring->one();
    for (const auto& r : td.roots) w = w * td.ring->linear(r.cls);
    return w;
}

WeightedElement abelianized_numerator(const ToricData& td, int total) {
    const Ring& R = *td.ring;
    WeightedElement acc{R.zero(), 0};
    bool first = true;
    for (const auto& d : enumerate_degrees(td, total)) {
        WeightedElement term = toric_coeff(td, d);
        RingElement roots = R.one();
        for (const auto& r : td.roots) roots = roots * (R.linear(r.cls) + constant(R, r.degree(d)));
        term.value = term.value * roots;
        term.weight += td.positive_roots();
        if (td.sign(d) % 2 != 0) term.value *= Rational(-1);
        if (first) {
            acc = term;
            first = false;
        } else {
            acc += term;
        }
    }
    if (first) acc.weight = td.positive_roots();
    return acc;
}

std::vector<Rational> omega_divide(const ToricData& td, const WeightedElement& a) {
    int P = td.positive_roots();
    if (td.ring->dmax() < P + 3) fail("abelian ring truncated below |Phi+| + 3");
    for (int m = 0; m < P; ++m)
        if (!a.value.is_zero_in_degree(m)) fail("not ω-divisible");
    RingElement w = omega(td);
    std::vector<Rational> coeffs(td.lifts.size(), 0);
    for (int m = 0; m <= 3; ++m) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < td.lifts.size(); ++i)
            if (td.lift_degree[i] == m) idx.push_back(i);
        const auto& rhs = a.value.component(P + m);
        if (idx.empty()) {
            if (!a.value.is_zero_in_degree(P + m)) fail("not ω-divisible");
            continue;
        }
        QMatrix M(rhs.size(), idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) {
            RingElement col = td.lifts[idx[c]] * w;
            const auto& comp = col.component(P + m);
            for (std::size_t r = 0; r < rhs.size(); ++r) M(r, c) = comp[r];
        }
        std::vector<Rational> x;
        try {
            x = solve_unique(M, rhs);
        } catch (const Error&) {
            fail("not ω-divisible");
        }
        for (std::size_t c = 0; c < idx.size(); ++c) coeffs[idx[c]] = x[c];
    }
    return coeffs;
}

namespace {

IScalarSeries make_series(const std::string& target, int order) {
    IScalarSeries s;
    s.target = target;
    s.order = order;
    s.I0.assign(order + 1, 0);
    s.I1red.assign(order + 1, 0);
    s.I2red.assign(order + 1, 0);
    s.I3red.assign(order + 1, 0);
    return s;
}

std::vector<Rational>& slot(IScalarSeries& s, int m) {
    switch (m) {
        case 0: return s.I0;
        case 1: return s.I1red;
        case 2: return s.I2red;
        default: return s.I3red;
    }
}

void check_normalization(const IScalarSeries& s) {
    if (s.I0.empty() || s.I0[0] != 1 || s.I1red[0] != 0) fail("I-series normalization failed: I0[0] != 1");
}

}  // namespace

IScalarSeries reference_series(const ToricData& td, int order) {
    if (order < 0) fail(ErrorCode::invalid_argument, "negative order");
    IScalarSeries s = make_series(td.name, order);
    for (int D = 0; D <= order; ++D) {
        auto c = omega_divide(td, abelianized_numerator(td, D));
        for (std::size_t i = 0; i < c.size(); ++i) slot(s, td.lift_degree[i])[D] += c[i] * td.lift_pairing[i];
    }
    for (int m = 0; m < 4; ++m)
        for (auto& v : slot(s, m)) v = canonical(v);
    check_normalization(s);
    return s;
}

// ---------------------------------------------------------------- Grassmannian fast path

namespace {

struct RowType {
    int a, b;
    bool operator<(const RowType& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
    bool operator==(const RowType& o) const { return a == o.a && b == o.b; }
};

struct LineSplit {
    std::vector<RowType> row;  // lines a*sigma_1 + b*H_i attached to one row
    std::vector<int> pure;     // lines a*sigma_1
};

std::optional<LineSplit> split_lines(const TargetSpec& spec) {
    std::size_t k = static_cast<std::size_t>(spec.k);
    std::vector<std::vector<RowType>> per_row(k);
    LineSplit out;
    for (const auto& w : line_weights(spec)) {
        if (std::all_of(w.begin(), w.end(), [&](int x) { return x == w[0]; })) {
            out.pure.push_back(w[0]);
            continue;
        }
        int a, i;
        if (k == 2) {
            a = std::min(w[0], w[1]);
            i = w[0] > w[1] ? 0 : 1;
        } else {
            std::map<int, int> count;
            for (int x : w) ++count[x];
            if (count.size() != 2) return std::nullopt;
            auto it = std::find_if(count.begin(), count.end(), [&](auto& kv) { return kv.second == 1; });
            if (it == count.end()) return std::nullopt;
            int odd = it->first;
            a = odd == count.begin()->first ? std::prev(count.end())->first : count.begin()->first;
            i = static_cast<int>(std::find(w.begin(), w.end(), odd) - w.begin());
        }
        int b = w[i] - a;
        if (a < 0 || a + std::min(b, 0) < 0) return std::nullopt;
        per_row[i].push_back({a, b});
    }
    for (auto& r : per_row) std::sort(r.begin(), r.end());
    for (std::size_t i = 1; i < k; ++i)
        if (per_row[i] != per_row[0]) return std::nullopt;
    out.row = per_row[0];
    return out;
}

constexpr int kS = 4;  // sigma_1 powers 0..3

// Dense truncated series in (H, s): index h * kS + s.
using BiSeries = std::vector<u64>;

void mul_linear(const Field& F, BiSeries& x, int A, u64 c0, u64 cH, u64 cs) {
    for (int h = A; h >= 0; --h)
        for (int s = kS - 1; s >= 0; --s) {
            u64 v = F.mul(x[h * kS + s], c0);
            if (h > 0) v = F.add(v, F.mul(x[(h - 1) * kS + s], cH));
            if (s > 0) v = F.add(v, F.mul(x[h * kS + s - 1], cs));
            x[h * kS + s] = v;
        }
}

BiSeries mul_bi(const Field& F, const BiSeries& x, const BiSeries& y, int A) {
    BiSeries z((A + 1) * kS, 0);
    for (int h1 = 0; h1 <= A; ++h1)
        for (int s1 = 0; s1 < kS; ++s1) {
            u64 a = x[h1 * kS + s1];
            if (!a) continue;
            for (int h2 = 0; h1 + h2 <= A; ++h2)
                for (int s2 = 0; s1 + s2 < kS; ++s2) {
                    u64 b = y[h2 * kS + s2];
                    if (b) z[(h1 + h2) * kS + s1 + s2] = F.add(z[(h1 + h2) * kS + s1 + s2], F.mul(a, b));
                }
        }
    return z;
}

// Truncated polynomial in (u <= U, s < kS): index u * kS + s.
using UPoly = std::vector<u64>;

void mul_acc(const Field& F, UPoly& z, const UPoly& x, const UPoly& y, int U, bool negate) {
    for (int u1 = 0; u1 <= U; ++u1)
        for (int s1 = 0; s1 < kS; ++s1) {
            u64 a = x[u1 * kS + s1];
            if (!a) continue;
            if (negate) a = F.neg(a);
            for (int u2 = 0; u1 + u2 <= U; ++u2)
                for (int s2 = 0; s1 + s2 < kS; ++s2) {
                    u64 b = y[u2 * kS + s2];
                    if (b) z[(u1 + u2) * kS + s1 + s2] = F.add(z[(u1 + u2) * kS + s1 + s2], F.mul(a, b));
                }
        }
}

struct GrassmannFast {
    TargetSpec spec;
    int k, n, order, A;
    LineSplit split;
    std::vector<Partition> parts;
    std::vector<Rational> pairing;  // per partition

    std::vector<u64> run(const Field& F) const;
};

std::vector<u64> GrassmannFast::run(const Field& F) const {
    int N = order;
    // Bundle tables per row type: P[e] = prod_{m=1}^{e} (a s + b H + m).
    std::vector<RowType> types = split.row;
    std::vector<std::vector<BiSeries>> P(types.size());
    for (std::size_t t = 0; t < types.size(); ++t) {
        int emax = types[t].a * N + std::max(types[t].b, 0) * N;
        BiSeries cur((A + 1) * kS, 0);
        cur[0] = 1;
        P[t].push_back(cur);
        for (int e = 1; e <= emax; ++e) {
            mul_linear(F, cur, A, F.from_int(e), F.from_int(types[t].b), F.from_int(types[t].a));
            P[t].push_back(cur);
        }
    }
    // Denominators prod_{m=1}^{d} (H+m)^{-n}, univariate in H.
    std::vector<std::vector<u64>> inv(N + 1, std::vector<u64>(A + 1, 0));
    inv[0][0] = 1;
    for (int d = 1; d <= N; ++d) {
        std::vector<u64> cur = inv[d - 1];
        u64 id = F.inv(F.from_int(d));
        for (int rep = 0; rep < n; ++rep) {
            // multiply by 1/(H+d) = sum (-1)^j H^j / d^{j+1}: y_h = (x_h - y_{h-1}) / d
            std::vector<u64> y(A + 1);
            for (int h = 0; h <= A; ++h) y[h] = F.mul(F.sub(cur[h], h ? y[h - 1] : 0), id);
            cur = y;
        }
        inv[d] = cur;
    }
    std::vector<std::vector<u64>> binom(k, std::vector<u64>(k, 0));
    for (int i = 0; i < k; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j) binom[i][j] = F.add(binom[i - 1][j - 1], j < i ? binom[i - 1][j] : 0);
    }

    std::vector<u64> out(4 * (N + 1), 0);
    for (int D = 0; D <= N; ++D) {
        int U = D;
        // entry[alpha][pw] as UPoly
        std::vector<std::vector<UPoly>> entry(A + 1, std::vector<UPoly>(k, UPoly((U + 1) * kS, 0)));
        for (int d = 0; d <= D; ++d) {
            BiSeries R((A + 1) * kS, 0);
            for (int h = 0; h <= A; ++h) R[h * kS] = inv[d][h];
            for (std::size_t t = 0; t < types.size(); ++t) {
                int e = types[t].a * D + types[t].b * d;
                if (e < 0) fail("negative bundle degree in the Grassmannian fast path");
                R = mul_bi(F, R, P[t][e], A);
            }
            u64 dd = F.from_int(d);
            std::vector<u64> dpow(k, 1);
            for (int i = 1; i < k; ++i) dpow[i] = F.mul(dpow[i - 1], dd);
            for (int alpha = 0; alpha <= A; ++alpha)
                for (int pw = 0; pw < k; ++pw) {
                    UPoly& E = entry[alpha][pw];
                    for (int l = 0; l <= std::min(pw, alpha); ++l) {
                        u64 c = F.mul(binom[pw][l], dpow[pw - l]);
                        if (!c) continue;
                        for (int s = 0; s < kS; ++s)
                            E[d * kS + s] = F.add(E[d * kS + s], F.mul(c, R[(alpha - l) * kS + s]));
                    }
                }
        }
        // Laplace expansion from the bottom row, memoized on (row, free columns, row exponents).
        std::unordered_map<u64, UPoly> memo;
        std::vector<int> alpha(k);
        std::function<const UPoly&(int, unsigned)> minor = [&](int r, unsigned mask) -> const UPoly& {
            u64 key = static_cast<u64>(r) | (static_cast<u64>(mask) << 4);
            for (int i = r; i < k; ++i) key |= static_cast<u64>(alpha[i]) << (12 + 4 * i);
            auto it = memo.find(key);
            if (it != memo.end()) return it->second;
            UPoly z((U + 1) * kS, 0);
            if (r == k) {
                z[0] = 1;
            } else {
                int pos = 0;
                for (int c = 0; c < k; ++c) {
                    if (!(mask & (1u << c))) continue;
                    const UPoly& sub = minor(r + 1, mask & ~(1u << c));
                    mul_acc(F, z, entry[alpha[r]][k - 1 - c], sub, U, pos % 2 == 1);
                    ++pos;
                }
            }
            return memo.emplace(key, std::move(z)).first->second;
        };
        // Pure sigma_1 lines and the sign.
        std::vector<u64> G(kS, 0);
        G[0] = 1;
        for (int a : split.pure) {
            for (int m = 1; m <= a * D; ++m) {
                u64 c0 = F.from_int(m), cs = F.from_int(a);
                for (int s = kS - 1; s >= 0; --s) G[s] = F.add(F.mul(G[s], c0), s ? F.mul(G[s - 1], cs) : 0);
            }
        }
        if (((k - 1) * D) % 2) for (auto& g : G) g = F.neg(g);
        for (std::size_t pi = 0; pi < parts.size(); ++pi) {
            const auto& mu = parts[pi];
            int size = std::accumulate(mu.begin(), mu.end(), 0);
            for (int i = 0; i < k; ++i) alpha[i] = (i < static_cast<int>(mu.size()) ? mu[i] : 0) + k - 1 - i;
            const UPoly& det = minor(0, (1u << k) - 1);
            u64 J = F.from_rational(pairing[pi]);
            for (int m = size; m <= 3; ++m) {
                int q = m - size;
                u64 c = 0;
                for (int j = 0; j <= q; ++j) c = F.add(c, F.mul(G[j], det[D * kS + q - j]));
                out[m * (N + 1) + D] = F.add(out[m * (N + 1) + D], F.mul(c, J));
            }
        }
    }
    return out;
}

std::vector<Rational> unflatten_check(IScalarSeries& s, const std::vector<Rational>& flat) {
    int N = s.order;
    for (int m = 0; m < 4; ++m)
        for (int D = 0; D <= N; ++D) slot(s, m)[D] = flat[m * (N + 1) + D];
    check_normalization(s);
    return flat;
}

}  // namespace

bool grassmann_fast_applicable(const TargetSpec& spec) {
    if (is_mixed(spec)) return false;
    TargetSpec p = has_carrier(spec, Carrier::Q) ? dualize(spec) : spec;
    return split_lines(p).has_value();
}

IScalarSeries grassmann_fast_series(const TargetSpec& input, int order) {
    if (order < 0) fail(ErrorCode::invalid_argument, "negative order");
    TargetSpec spec = pure_form(input);
    validate(spec);
    auto split = split_lines(spec);
    if (!split) fail(ErrorCode::pipeline_mismatch, "bundle lines do not split by rows; use the reference pipeline");
    GrassmannFast g;
    g.spec = spec;
    g.k = spec.k;
    g.n = spec.n;
    g.order = order;
    g.A = spec.k + 2;
    g.split = *split;
    g.parts = partitions_upto3(static_cast<std::size_t>(spec.k), -1);
    auto pm = grassmann_pairings(spec, g.parts);
    for (const auto& mu : g.parts) g.pairing.push_back(pm.at(mu));
    IScalarSeries s = make_series(input.label, order);
    auto flat = modular::solve_multimodular(4 * (order + 1), [&](const Field& F) { return g.run(F); });
    unflatten_check(s, flat);
    return s;
}

// ---------------------------------------------------------------- P_Delta fast path

namespace {

constexpr int kT = 8;  // t^0..t^7

using TSeries = std::array<u64, kT>;

void mul_t(const Field& F, TSeries& x, const TSeries& y) {
    TSeries z{};
    for (int i = 0; i < kT; ++i) {
        if (!x[i]) continue;
        for (int j = 0; i + j < kT; ++j)
            if (y[j]) z[i + j] = F.add(z[i + j], F.mul(x[i], y[j]));
    }
    x = z;
}

std::vector<u64> pdelta_run(const Field& F, int N, const std::vector<std::vector<DegreeVector>>& vectors) {
    const auto& g = pdelta_geometry();
    std::size_t npts = g.points.size();
    // Univariate series in x: entry factor for value v, bundle factor for degree e.
    std::map<int, TSeries> entry_base;
    for (int v = -N; v <= N; ++v) {
        TSeries s{};
        s[0] = 1;
        if (v > 0) {
            for (int m = 1; m <= v; ++m) {
                u64 im = F.inv(F.from_int(m));
                for (int rep = 0; rep < 3; ++rep) {
                    TSeries y{};
                    for (int h = 0; h < kT; ++h) y[h] = F.mul(F.sub(s[h], h ? y[h - 1] : 0), im);
                    s = y;
                }
            }
        } else {
            for (int m = v + 1; m <= 0; ++m)
                for (int rep = 0; rep < 3; ++rep) {
                    u64 c0 = F.from_int(m);
                    for (int h = kT - 1; h >= 0; --h) s[h] = F.add(F.mul(s[h], c0), h ? s[h - 1] : 0);
                }
        }
        entry_base[v] = s;
    }
    std::vector<TSeries> bundle_base(2 * N + 1);
    {
        TSeries s{};
        s[0] = 1;
        bundle_base[0] = s;
        for (int e = 1; e <= 2 * N; ++e) {
            u64 c0 = F.from_int(e);
            for (int h = kT - 1; h >= 0; --h) s[h] = F.add(F.mul(s[h], c0), h ? s[h - 1] : 0);
            bundle_base[e] = s;
        }
    }
    auto scaled = [&](const TSeries& base, u64 x) {
        TSeries s{};
        u64 p = 1;
        for (int h = 0; h < kT; ++h) {
            s[h] = F.mul(base[h], p);
            p = F.mul(p, x);
        }
        return s;
    };
    auto eval_lin = [&](const std::vector<Rational>& cls, const std::vector<Rational>& pt) {
        Rational v = 0;
        for (std::size_t i = 0; i < cls.size(); ++i) v += cls[i] * pt[i];
        return F.from_rational(v);
    };

    std::vector<u64> out(4 * (N + 1), 0);
    for (std::size_t p = 0; p < npts; ++p) {
        const auto& pt = g.points[p];
        std::array<u64, 6> Lval;
        for (int i = 0; i < 6; ++i) Lval[i] = eval_lin(g.entry[i], pt);
        std::array<u64, 3> Bval;
        for (int i = 0; i < 3; ++i) Bval[i] = eval_lin(g.bundles[i].cls, pt);
        std::array<u64, 4> Rval;
        u64 om = 1;
        for (int i = 0; i < 4; ++i) {
            Rval[i] = eval_lin(g.roots[i].cls, pt);
            om = F.mul(om, Rval[i]);
        }
        u64 om_inv = F.inv(om);
        std::array<std::map<int, TSeries>, 6> ent;
        for (int i = 0; i < 6; ++i)
            for (const auto& [v, base] : entry_base) ent[i][v] = scaled(base, Lval[i]);
        std::array<std::vector<TSeries>, 3> bun;
        for (int i = 0; i < 3; ++i)
            for (const auto& base : bundle_base) bun[i].push_back(scaled(base, Bval[i]));

        for (int h = 0; h <= N; ++h) {
            TSeries acc{};
            for (const auto& d : vectors[h]) {
                TSeries x{};
                x[0] = 1;
                for (int i = 0; i < 4; ++i) {
                    u64 c0 = F.from_int(g.roots[i].degree(d));
                    for (int j = kT - 1; j >= 0; --j) x[j] = F.add(F.mul(x[j], c0), j ? F.mul(x[j - 1], Rval[i]) : 0);
                }
                for (int i = 0; i < 6; ++i) mul_t(F, x, ent[i].at(d[i]));
                for (int i = 0; i < 3; ++i) mul_t(F, x, bun[i][g.bundles[i].degree(d)]);
                for (int j = 0; j < kT; ++j) acc[j] = F.add(acc[j], x[j]);
            }
            if (h % 2) for (auto& a : acc) a = F.neg(a);
            for (int j = 0; j < 4; ++j)
                if (acc[j]) fail("P_Delta numerator is not divisible by omega");
            for (int m = 0; m <= 3; ++m) {
                if (p >= g.weights[m].size()) continue;
                u64 w = F.from_rational(g.weights[m][p]);
                u64 f = F.mul(acc[4 + m], om_inv);
                out[m * (N + 1) + h] = F.add(out[m * (N + 1) + h], F.mul(w, f));
            }
        }
    }
    return out;
}

}  // namespace

IScalarSeries pdelta_series(int order) {
    if (order < 0) fail(ErrorCode::invalid_argument, "negative order");
    const auto& g = pdelta_geometry();
    std::vector<std::vector<DegreeVector>> vectors(order + 1);
    for (int h = 0; h <= order; ++h)
        for (auto& d : pdelta_enumerate(h))
            if (!sr_killed(d, g)) vectors[h].push_back(std::move(d));
    IScalarSeries s = make_series("no18", order);
    s.conjectural = true;
    auto flat = modular::solve_multimodular(4 * (order + 1), [&](const Field& F) { return pdelta_run(F, order, vectors); });
    unflatten_check(s, flat);
    return s;
}

IScalarSeries i_series(const TargetSpec& spec, int order) {
    if (order < 1) fail(ErrorCode::invalid_argument, "order must be at least 1");
    if (grassmann_fast_applicable(spec)) return grassmann_fast_series(spec, order);
    IScalarSeries s = reference_series(grassmann_toric_data(spec), order);
    s.target = spec.label;
    return s;
}

std::vector<Rational> mirror_map(const IScalarSeries& s) {
    if (s.I0.empty() || s.I0[0] != 1) fail(ErrorCode::invalid_argument, "I0[0] must be 1");
    std::vector<Rational> c(s.I1red.size(), 0);
    for (std::size_t n = 0; n < c.size(); ++n) {
        Rational v = s.I1red[n];
        for (std::size_t j = 1; j <= n; ++j) v -= s.I0[j] * c[n - j];
        c[n] = canonical(v);
    }
    return c;
}

std::string series_to_json(const IScalarSeries& s) {
    nlohmann::ordered_json j;
    j["target"] = s.target;
    j["order"] = s.order;
    if (s.conjectural) j["conjectural"] = true;
    auto arr = [](const std::vector<Rational>& v) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    j["I0"] = arr(s.I0);
    j["I1red"] = arr(s.I1red);
    j["I2red"] = arr(s.I2red);
    j["I3red"] = arr(s.I3red);
    return j.dump();
}

IScalarSeries series_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed series JSON: ") + e.what());
    }
    IScalarSeries s;
    try {
        s.target = j.at("target").get<std::string>();
        s.order = j.at("order").get<int>();
        s.conjectural = j.value("conjectural", false);
        // Only I0 is mandatory; pipelines without a z-expansion leave the reduced series empty.
        auto read = [&](const char* key, bool required) {
            std::vector<Rational> v;
            if (!required && !j.contains(key)) return v;
            for (const auto& x : j.at(key)) v.push_back(parse_rational(x.get<std::string>()));
            if ((required || !v.empty()) && v.size() != static_cast<std::size_t>(s.order + 1))
                fail(ErrorCode::invalid_argument, "series length mismatch");
            return v;
        };
        s.I0 = read("I0", true);
        s.I1red = read("I1red", false);
        s.I2red = read("I2red", false);
        s.I3red = read("I3red", false);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed series JSON: ") + e.what());
    }
    return s;
}

}  // namespace cycalc
