#include "cycalc/homobundle.hpp"

#include "cycalc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>

namespace cycalc {

std::string carrier_name(Carrier c) {
    switch (c) {
        case Carrier::SDual: return "S*";
        case Carrier::Q: return "Q";
        case Carrier::O: return "O";
    }
    return "?";
}

Carrier parse_carrier(const std::string& s) {
    if (s == "S*" || s == "S^*" || s == "Sdual") return Carrier::SDual;
    if (s == "Q") return Carrier::Q;
    if (s == "O") return Carrier::O;
    fail(ErrorCode::invalid_argument, "unknown carrier '" + s + "'");
}

std::vector<Exponent> schur_weights(const Partition& lambda, std::size_t k) {
    return ssyt_contents(lambda, k);
}

namespace {

std::size_t carrier_rank(Carrier c, int k, int n) {
    return static_cast<std::size_t>(c == Carrier::SDual ? k : n - k);
}

int part(const Partition& l, std::size_t i) { return i < l.size() ? l[i] : 0; }

}  // namespace

Integer summand_rank(const BundleSummand& s, int k, int n) {
    if (s.carrier == Carrier::O) return 1;
    return hook_content_dimension(s.lambda, carrier_rank(s.carrier, k, n));
}

Integer rank(const TargetSpec& spec) {
    Integer r = 0;
    for (const auto& s : spec.summands) r += summand_rank(s, spec.k, spec.n);
    return r;
}

bool has_carrier(const TargetSpec& spec, Carrier c) {
    return std::any_of(spec.summands.begin(), spec.summands.end(), [c](const auto& s) { return s.carrier == c; });
}

bool is_mixed(const TargetSpec& spec) { return has_carrier(spec, Carrier::SDual) && has_carrier(spec, Carrier::Q); }

void validate(const TargetSpec& spec) {
    if (spec.k < 1 || spec.n <= spec.k) fail(ErrorCode::invalid_argument, "invalid Grassmannian G(" + std::to_string(spec.k) + "," + std::to_string(spec.n) + ")");
    if (spec.summands.empty()) fail(ErrorCode::invalid_argument, "empty bundle");
    for (const auto& s : spec.summands) {
        for (std::size_t i = 0; i < s.lambda.size(); ++i) {
            if (s.lambda[i] < 0) fail(ErrorCode::invalid_argument, "negative partition part");
            if (i > 0 && s.lambda[i] > s.lambda[i - 1]) fail(ErrorCode::invalid_argument, "partition not weakly decreasing");
        }
        if (s.carrier == Carrier::O) {
            if (std::accumulate(s.lambda.begin(), s.lambda.end(), 0) != 0) fail(ErrorCode::invalid_argument, "line bundle summand carries a partition");
            if (s.twist < 0) fail(ErrorCode::invalid_argument, "O(t) with t < 0 is not globally generated");
            continue;
        }
        std::size_t r = carrier_rank(s.carrier, spec.k, spec.n);
        std::size_t len = 0;
        for (int p : s.lambda)
            if (p > 0) ++len;
        if (len > r) fail(ErrorCode::invalid_argument, "partition longer than carrier rank");
        if (part(s.lambda, r - 1) + s.twist < 0) fail(ErrorCode::invalid_argument, "summand " + summand_to_string(s) + " is not globally generated");
    }
}

TargetSpec dualize(const TargetSpec& spec) {
    if (is_mixed(spec)) fail(ErrorCode::pipeline_mismatch, "not dualizable; use qconn or P_Δ pipeline");
    TargetSpec d = spec;
    d.k = spec.n - spec.k;
    for (auto& s : d.summands) {
        if (s.carrier == Carrier::SDual)
            s.carrier = Carrier::Q;
        else if (s.carrier == Carrier::Q)
            s.carrier = Carrier::SDual;
    }
    return d;
}

std::vector<Exponent> line_weights(const TargetSpec& spec) {
    std::vector<Exponent> out;
    std::size_t k = spec.k;
    for (const auto& s : spec.summands) {
        if (s.carrier == Carrier::Q) fail(ErrorCode::pipeline_mismatch, "Q-carrier summand has no torus splitting on G(k,n); dualize first");
        std::vector<Exponent> ws = s.carrier == Carrier::O ? std::vector<Exponent>{Exponent(k, 0)} : schur_weights(s.lambda, k);
        for (auto w : ws) {
            for (auto& x : w) x += s.twist;
            out.push_back(std::move(w));
        }
    }
    return out;
}

RingElement euler_lift(const TargetSpec& spec, const RingHandle& ring) {
    if (ring->nvars() != static_cast<std::size_t>(spec.k)) fail(ErrorCode::invalid_argument, "rank mismatch between spec and ring");
    RingElement e = ring->one();
    for (const auto& w : line_weights(spec)) {
        std::vector<Rational> c(w.begin(), w.end());
        e = e * ring->linear(c);
    }
    return e;
}

MPoly to_elementary(const MPoly& symmetric) {
    std::size_t r = symmetric.nvars();
    std::vector<MPoly> e(r + 1);
    e[0] = MPoly::constant(r, 1);
    for (std::size_t j = 1; j <= r; ++j) e[j] = schur_poly(Partition(j, 1), r, [&] {
                                            std::vector<std::size_t> v(r);
                                            std::iota(v.begin(), v.end(), 0);
                                            return v;
                                        }());
    MPoly rest = symmetric, out(r);
    while (!rest.is_zero()) {
        auto [a, c] = *rest.terms().rbegin();
        Exponent b(r, 0);
        MPoly prod = MPoly::constant(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            int next = i + 1 < r ? a[i + 1] : 0;
            if (a[i] < next) fail("to_elementary: polynomial is not symmetric");
            b[i] = a[i] - next;
            for (int m = 0; m < b[i]; ++m) prod = prod * e[i + 1];
        }
        out.add_term(b, c);
        rest -= prod;
    }
    return out;
}

namespace {

Integer binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<std::size_t> iota_vars(std::size_t k) {
    std::vector<std::size_t> v(k);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

MPoly sigma1(int k) { return MPoly::linear(std::vector<Rational>(k, 1)); }

}  // namespace

std::vector<MPoly> chern_classes(const BundleSummand& s, int k, int n, int max_degree) {
    long rk = summand_rank(s, k, n).get_si();
    int top = static_cast<int>(std::min<long>(rk, max_degree));
    std::vector<MPoly> out;
    if (s.carrier != Carrier::Q) {
        TargetSpec one{k, n, {s}, ""};
        MPoly c = MPoly::constant(k, 1);
        for (const auto& w : line_weights(one)) {
            std::vector<Rational> coeffs(w.begin(), w.end());
            c = (c * (MPoly::constant(k, 1) + MPoly::linear(coeffs))).truncated(top);
        }
        for (int j = 0; j <= top; ++j) out.push_back(c.homogeneous_part(j));
        return out;
    }
    std::size_t r = n - k;
    MPoly c = MPoly::constant(r, 1);
    for (const auto& w : schur_weights(s.lambda, r)) {
        std::vector<Rational> coeffs(w.begin(), w.end());
        c = (c * (MPoly::constant(r, 1) + MPoly::linear(coeffs))).truncated(top);
    }
    // Chern roots of S* are H_i, so c(Q) = 1/c(S) has c_i(Q) = h_i(H).
    std::vector<MPoly> h;
    for (std::size_t i = 1; i <= r; ++i) h.push_back(schur_poly({static_cast<int>(i)}, k, iota_vars(k)));
    MPoly untwisted = to_elementary(c).substitute(h);
    std::vector<MPoly> base;
    for (int j = 0; j <= top; ++j) base.push_back(untwisted.homogeneous_part(j));
    MPoly u = sigma1(k) * Rational(s.twist);
    for (int j = 0; j <= top; ++j) {
        MPoly cj(k);
        for (int i = 0; i <= j; ++i) cj += base[i] * pow(u, j - i) * Rational(binomial(rk - i, j - i));
        out.push_back(cj);
    }
    return out;
}

MPoly euler_class(const BundleSummand& s, int k, int n) {
    long rk = summand_rank(s, k, n).get_si();
    return chern_classes(s, k, n, static_cast<int>(rk)).back();
}

void check_calabi_yau(const TargetSpec& spec) {
    validate(spec);
    Integer rk = rank(spec);
    if (rk != spec.dim() - 3)
        fail(ErrorCode::invariant_mismatch, "rank(E) = " + rk.get_str() + " but dim G(" + std::to_string(spec.k) + "," + std::to_string(spec.n) + ") - 3 = " + std::to_string(spec.dim() - 3));
    MPoly c1(spec.k);
    for (const auto& s : spec.summands) {
        auto c = chern_classes(s, spec.k, spec.n, 1);
        if (c.size() > 1) c1 += c[1];
    }
    MPoly want = sigma1(spec.k) * Rational(spec.n);
    if (!(c1 == want)) {
        Rational got = c1.coeff([&] {
            Exponent e(spec.k, 0);
            e[0] = 1;
            return e;
        }());
        fail(ErrorCode::invariant_mismatch, "c1(E) = " + to_string(got) + "*H but c1(TX) = " + std::to_string(spec.n) + "*H");
    }
}

Invariants topological_invariants(const TargetSpec& spec) {
    check_calabi_yau(spec);
    const int k = spec.k, n = spec.n;
    const MPoly one = MPoly::constant(k, 1);
    auto inverse3 = [&](const MPoly& c) {
        MPoly a = c - one, term = one, inv = one;
        for (int m = 1; m <= 3; ++m) {
            term = (term * a * Rational(-1)).truncated(3);
            inv += term;
        }
        return inv;
    };
    MPoly ctx = one;
    for (int i = 0; i < k; ++i) ctx = ctx * pow(one + MPoly::var(k, i), n, 3);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (i != j) ctx = (ctx * inverse3(one + MPoly::var(k, i) - MPoly::var(k, j))).truncated(3);
    MPoly ce = one, e = one;
    for (const auto& s : spec.summands) {
        auto c = chern_classes(s, k, n, 3);
        MPoly sum(k);
        for (const auto& x : c) sum += x;
        ce = (ce * sum).truncated(3);
        e = e * euler_class(s, k, n);
    }
    MPoly cty = (ctx * inverse3(ce)).truncated(3);
    MPoly h = sigma1(k);
    Invariants inv;
    auto integral = [&](const MPoly& f) {
        Rational v = integrate_grassmann(f * e, k, n);
        if (v.get_den() != 1) fail("non-integral intersection number " + to_string(v));
        return Integer(v.get_num());
    };
    inv.h3 = integral(h * h * h);
    inv.c2h = integral(cty.homogeneous_part(2) * h);
    inv.c3 = integral(cty.homogeneous_part(3));
    return inv;
}

// ---------------------------------------------------------------- catalog

namespace {

BundleSummand O(int t) { return {Carrier::O, {}, t}; }
BundleSummand S(Partition l, int t = 0) { return {Carrier::SDual, std::move(l), t}; }
BundleSummand Qs(Partition l, int t = 0) { return {Carrier::Q, std::move(l), t}; }

std::vector<BundleSummand> rep(const BundleSummand& s, int m) { return std::vector<BundleSummand>(m, s); }

std::vector<BundleSummand> cat(std::initializer_list<std::vector<BundleSummand>> parts) {
    std::vector<BundleSummand> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

CatalogEntry row(int no, int k, int n, std::vector<BundleSummand> summands, std::string bundle, long h3, long c2h, long c3,
                 std::string kuchle, std::string db) {
    CatalogEntry e;
    e.number = no;
    e.spec = {k, n, std::move(summands), "no" + std::to_string(no)};
    e.bundle = std::move(bundle);
    e.invariants = {h3, c2h, c3};
    e.kuchle = std::move(kuchle);
    e.database = std::move(db);
    return e;
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> c;
    c.push_back(row(1, 2, 4, {O(4)}, "O(4)", 8, 56, -176, "", "6"));
    c.push_back(row(2, 2, 5, cat({{O(1)}, rep(O(2), 2)}), "O(1) + O(2)^2", 20, 68, -120, "(b2)", "25"));
    c.push_back(row(3, 2, 5, cat({rep(O(1), 2), {O(3)}}), "O(1)^2 + O(3)", 15, 66, -150, "(b1)", "24"));
    c.push_back(row(4, 2, 5, {S({1}, 1), O(2)}, "S*(1) + O(2)", 24, 72, -116, "", "29"));
    c.push_back(row(5, 2, 5, {Qs({1, 1}, 1)}, "Wedge^2 Q(1)", 25, 70, -100, "", "101"));
    c.push_back(row(6, 2, 6, cat({rep(O(1), 4), {O(2)}}), "O(1)^4 + O(2)", 28, 76, -116, "(b6)", "26"));
    c.push_back(row(7, 2, 6, cat({{S({1}, 1)}, rep(O(1), 3)}), "S*(1) + O(1)^3", 33, 78, -102, "(b5), I", "198"));
    c.push_back(row(10, 2, 6, {Qs({1}, 1), O(1)}, "Q(1) + O(1)", 42, 84, -98, "(b3), II", "27"));
    c.push_back(row(12, 2, 7, rep(O(1), 7), "O(1)^7", 42, 84, -98, "(b7), III", "27"));
    c.push_back(row(13, 2, 7, cat({{S({2})}, rep(O(1), 4)}), "Sym^2 S* + O(1)^4", 56, 92, -92, "(b8), V", "212"));
    c.push_back(row(15, 2, 7, {Qs({1, 1, 1, 1}), O(1), O(2)}, "Wedge^4 Q + O(1) + O(2)", 36, 84, -120, "(b10)", "185"));
    c.push_back(row(16, 2, 7, {S({1}, 1), Qs({1, 1, 1, 1})}, "S*(1) + Wedge^4 Q", 42, 84, -98, "", "27"));
    c.push_back(row(17, 2, 8, cat({{Qs({1, 1, 1, 1, 1})}, rep(O(1), 3)}), "Wedge^5 Q + O(1)^3", 57, 90, -84, "(b11), VI", "186"));
    c.push_back(row(18, 2, 8, {S({2}), Qs({1, 1, 1, 1, 1})}, "Sym^2 S* + Wedge^5 Q", 72, 96, -72, "", "unknown"));
    c.push_back(row(19, 3, 6, rep(O(1), 6), "O(1)^6", 42, 84, -96, "(c1), IV", "28"));
    c.push_back(row(20, 3, 6, {S({1, 1}), O(1), O(1), O(2)}, "Wedge^2 S* + O(1)^2 + O(2)", 32, 80, -116, "(c2)", "42"));
    c.push_back(row(21, 3, 6, {S({1}, 1), S({1, 1})}, "S*(1) + Wedge^2 S*", 42, 84, -96, "", "28"));
    c.push_back(row(22, 3, 7, cat({{S({2})}, rep(O(1), 3)}), "Sym^2 S* + O(1)^3", 128, 128, -128, "(c4)", "3"));
    c.push_back(row(23, 3, 7, cat({rep(S({1, 1}), 2), rep(O(1), 3)}), "(Wedge^2 S*)^2 + O(1)^3", 61, 94, -86, "(c6), VII", "124"));
    c.push_back(row(24, 3, 7, cat({rep(Qs({1, 1, 1}), 2), {O(1)}}), "(Wedge^3 Q)^2 + O(1)", 72, 96, -74, "(c3), IX", "unknown"));
    c.push_back(row(25, 3, 7, {S({1, 1}), Qs({1, 1, 1}), O(1), O(1)}, "Wedge^2 S* + Wedge^3 Q + O(1)^2", 66, 96, -84, "(c5), VIII", "unknown"));
    c.push_back(row(28, 3, 8, rep(S({1, 1}), 4), "(Wedge^2 S*)^4", 92, 104, -64, "", "unknown"));
    for (auto& e : c) {
        if (e.number == 10) {
            e.alias_of = 12;
            e.alias_note = "the I-function given by the abelian/nonabelian correspondence is same as No. 12";
        } else if (e.number == 16) {
            e.alias_of = 12;
            e.alias_note = "deformation equivalent to a linear section of G(2,7); the J-function is the same as that of No. 12";
        }
    }
    return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> c = build_catalog();
    return c;
}

const CatalogEntry& catalog_lookup(const std::string& label) {
    std::string digits;
    for (char ch : label)
        if (std::isdigit(static_cast<unsigned char>(ch))) digits += ch;
    std::string prefix;
    for (char ch : label)
        if (std::isalpha(static_cast<unsigned char>(ch))) prefix += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (!digits.empty() && (prefix.empty() || prefix == "no") && digits.size() < 4) {
        int no = std::stoi(digits);
        for (const auto& e : catalog())
            if (e.number == no) return e;
    }
    fail(ErrorCode::not_found, "unknown target '" + label + "'");
}

std::vector<const CatalogEntry*> catalog_filter(int k, int n) {
    std::vector<const CatalogEntry*> out;
    for (const auto& e : catalog())
        if ((k <= 0 || e.spec.k == k) && (n <= 0 || e.spec.n == n)) out.push_back(&e);
    return out;
}

// ---------------------------------------------------------------- JSON

std::string summand_to_string(const BundleSummand& s) {
    std::string base;
    if (s.carrier == Carrier::O) return "O(" + std::to_string(s.twist) + ")";
    std::string car = carrier_name(s.carrier);
    bool wedge = !s.lambda.empty() && std::all_of(s.lambda.begin(), s.lambda.end(), [](int p) { return p == 1; });
    if (s.lambda.size() == 1 && s.lambda[0] == 1)
        base = car;
    else if (wedge)
        base = "Wedge^" + std::to_string(s.lambda.size()) + " " + car;
    else if (s.lambda.size() == 1)
        base = "Sym^" + std::to_string(s.lambda[0]) + " " + car;
    else {
        base = "Sigma^(";
        for (std::size_t i = 0; i < s.lambda.size(); ++i) base += (i ? "," : "") + std::to_string(s.lambda[i]);
        base += ") " + car;
    }
    if (s.twist != 0) base += "(" + std::to_string(s.twist) + ")";
    return base;
}

std::string spec_to_json(const TargetSpec& spec) {
    nlohmann::ordered_json j;
    j["grassmann"] = {spec.k, spec.n};
    j["summands"] = nlohmann::ordered_json::array();
    for (const auto& s : spec.summands) {
        nlohmann::ordered_json js;
        js["carrier"] = carrier_name(s.carrier);
        js["lambda"] = s.lambda;
        js["twist"] = s.twist;
        j["summands"].push_back(js);
    }
    j["label"] = spec.label;
    return j.dump();
}

TargetSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed target spec: ") + e.what());
    }
    TargetSpec spec;
    try {
        auto g = j.at("grassmann");
        spec.k = g.at(0).get<int>();
        spec.n = g.at(1).get<int>();
        for (const auto& js : j.at("summands")) {
            BundleSummand s;
            s.carrier = parse_carrier(js.at("carrier").get<std::string>());
            if (js.contains("lambda")) s.lambda = js["lambda"].get<Partition>();
            s.twist = js.value("twist", 0);
            spec.summands.push_back(s);
        }
        spec.label = j.value("label", std::string());
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed target spec: ") + e.what());
    }
    validate(spec);
    return spec;
}

}  // namespace cycalc
