#include "cycalc/qconn.hpp"

#include "cycalc/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

namespace cycalc {

using json = nlohmann::json;

int BasisClass::degree() const {
    int d = 0;
    for (std::size_t i = 0; i < s.size(); ++i) d += static_cast<int>(i + 1) * s[i];
    return d;
}

SeedFile seed_file_from_json(const std::string& text) {
    SeedFile f;
    try {
        auto j = json::parse(text);
        for (const auto& b : j.at("basis")) f.basis.push_back({b.at("name").get<std::string>(), b.at("s").get<std::vector<int>>()});
        for (const auto& p : j.at("pairing"))
            f.pairing.push_back({{p.at(0).get<int>(), p.at(1).get<int>()}, parse_rational(p.at(2).get<std::string>())});
        for (const auto& s : j.at("seeds"))
            f.seeds.push_back({s.at("classes").get<std::vector<int>>(), s.at("d").get<int>(),
                               parse_rational(s.at("value").get<std::string>())});
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("bad seed file: ") + e.what());
    }
    for (const auto& s : f.seeds) {
        if (s.classes.empty() || s.classes.size() > 3) fail(ErrorCode::invalid_argument, "seed needs 1 to 3 classes");
        for (int c : s.classes)
            if (c < 0 || c >= static_cast<int>(f.basis.size())) fail(ErrorCode::invalid_argument, "seed class out of range");
    }
    return f;
}

std::string seed_file_to_json(const SeedFile& f) {
    json j;
    j["basis"] = json::array();
    for (const auto& b : f.basis) j["basis"].push_back({{"name", b.name}, {"s", b.s}});
    j["pairing"] = json::array();
    for (const auto& [ij, v] : f.pairing) j["pairing"].push_back({ij[0], ij[1], to_string(v)});
    j["seeds"] = json::array();
    for (const auto& s : f.seeds) j["seeds"].push_back({{"classes", s.classes}, {"d", s.d}, {"value", to_string(s.value)}});
    return j.dump(1);
}

const SeedFile& no25_seeds() {
    static std::once_flag once;
    static SeedFile f;
    std::call_once(once, [] {
        std::string path = std::string(CYCALC_DATA_DIR) + "/no25.json";
        std::ifstream in(path);
        if (!in) fail(ErrorCode::not_found, "missing seed file " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        f = seed_file_from_json(ss.str());
    });
    return f;
}

TargetSpec no25_twist() {
    TargetSpec t;
    t.k = 3;
    t.n = 7;
    t.summands = {{Carrier::SDual, {1, 1}, 0}, {Carrier::Q, {1, 1, 1}, 0}};
    t.label = "no25-twist";
    return t;
}

std::vector<int> no25_lines() { return {1, 1}; }

MPoly basis_lift(const BasisClass& c, int k, int n) {
    std::size_t kk = static_cast<std::size_t>(k);
    int top = c.degree();
    // c(Q) = prod (1 - H_i)^{-1}, so c_i(Q) is the complete homogeneous polynomial h_i(H).
    std::vector<MPoly> h(static_cast<std::size_t>(top) + 1, MPoly(kk));
    for (int d = 0; d <= top; ++d)
        for (const auto& e : monomials_of_degree(kk, d)) h[static_cast<std::size_t>(d)].add_term(e, 1);
    MPoly out = MPoly::constant(kk, 1);
    for (std::size_t i = 0; i < c.s.size(); ++i)
        for (int r = 0; r < c.s[i]; ++r) out = out * h[i + 1];
    (void)n;
    return out;
}

namespace {

MPoly twist_euler(const TargetSpec& t) {
    MPoly e = MPoly::constant(static_cast<std::size_t>(t.k), 1);
    for (const auto& s : t.summands) e = e * euler_class(s, t.k, t.n);
    return e;
}

int twist_rank(const TargetSpec& t) { return static_cast<int>(rank(t).get_si()); }

int twist_c1(const TargetSpec& t) {
    // Every summand's c1 is a multiple of sigma_1 = H_1 + ... + H_k.
    Exponent e(static_cast<std::size_t>(t.k), 0);
    e[0] = 1;
    Rational c = 0;
    for (const auto& s : t.summands) {
        auto cs = chern_classes(s, t.k, t.n, 1);
        if (cs.size() > 1) c += cs[1].coeff(e);
    }
    if (c.get_den() != 1) fail("non-integral c1");
    return static_cast<int>(c.get_num().get_si());
}

int window_base(const TargetSpec& t) { return t.dim() - twist_rank(t); }
int window_step(const TargetSpec& t) { return t.n - twist_c1(t); }

}  // namespace

TwistedBasis twisted_pairing(const std::vector<BasisClass>& classes, const TargetSpec& twist) {
    TwistedBasis b;
    b.classes = classes;
    std::size_t n = classes.size();
    for (std::size_t i = 1; i < n; ++i)
        if (classes[i].degree() < classes[i - 1].degree()) fail(ErrorCode::invalid_argument, "basis degrees must increase");
    int top = window_base(twist);
    MPoly e = twist_euler(twist);
    std::vector<MPoly> lifts;
    for (const auto& c : classes) {
        if (c.degree() > top) fail(ErrorCode::invalid_argument, "basis class above the twisted top degree");
        lifts.push_back(basis_lift(c, twist.k, twist.n));
    }
    b.gram = QMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            if (classes[i].degree() + classes[j].degree() != top) continue;
            Rational v = integrate_grassmann(lifts[i] * lifts[j] * e, static_cast<std::size_t>(twist.k), twist.n);
            b.gram(i, j) = v;
            b.gram(j, i) = v;
        }
    if (rank(b.gram) != n) fail(ErrorCode::invariant_mismatch, "degenerate twisted pairing");
    b.dual = inverse(b.gram);
    return b;
}

CorrelatorTable::CorrelatorTable(std::vector<int> degrees, int window_base, int window_step)
    : deg_(std::move(degrees)), base_(window_base), step_(window_step) {
    int top = deg_.empty() ? 0 : *std::max_element(deg_.begin(), deg_.end());
    if (step_ > 0) dmax_ = std::max(0, (3 * top - base_) / step_);
}

std::array<int, 4> CorrelatorTable::key(int i, int j, int k, int d) {
    std::array<int, 3> s{i, j, k};
    std::sort(s.begin(), s.end());
    return {s[0], s[1], s[2], d};
}

bool CorrelatorTable::in_window(int i, int j, int k, int d) const {
    auto n = static_cast<int>(deg_.size());
    if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n || d < 0) return false;
    return deg_[i] + deg_[j] + deg_[k] == base_ + step_ * d;
}

std::optional<Rational> CorrelatorTable::get(int i, int j, int k, int d) const {
    if (!in_window(i, j, k, d)) return Rational(0);
    auto it = values_.find(key(i, j, k, d));
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

Rational CorrelatorTable::at(int i, int j, int k, int d) const {
    auto v = get(i, j, k, d);
    if (!v) fail(ErrorCode::underdetermined, "correlator <" + std::to_string(i) + "," + std::to_string(j) + "," +
                                                 std::to_string(k) + ">_" + std::to_string(d) + " unknown");
    return *v;
}

void CorrelatorTable::set(int i, int j, int k, int d, const Rational& v) {
    if (!in_window(i, j, k, d)) {
        if (v == 0) return;
        fail(ErrorCode::invalid_argument, "correlator outside the degree window");
    }
    auto kk = key(i, j, k, d);
    auto it = values_.find(kk);
    if (it != values_.end() && it->second != v) fail(ErrorCode::invariant_mismatch, "conflicting correlator value");
    values_[kk] = v;
}

std::vector<std::array<int, 4>> CorrelatorTable::unknowns() const {
    std::vector<std::array<int, 4>> out;
    auto n = static_cast<int>(deg_.size());
    for (int d = 0; d <= dmax_; ++d)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (int k = j; k < n; ++k)
                    if (in_window(i, j, k, d) && !values_.count({i, j, k, d})) out.push_back({i, j, k, d});
    return out;
}

namespace {

std::vector<int> degrees_of(const TwistedBasis& b) {
    std::vector<int> out;
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.degree(i));
    return out;
}

int index_of(const TwistedBasis& b, const std::vector<int>& s) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        auto t = b.classes[i].s;
        while (!t.empty() && t.back() == 0) t.pop_back();
        auto u = s;
        while (!u.empty() && u.back() == 0) u.pop_back();
        if (t == u) return static_cast<int>(i);
    }
    fail(ErrorCode::invalid_argument, "basis lacks the required class");
}

int unit_index(const TwistedBasis& b) { return index_of(b, {}); }
int hyperplane_index(const TwistedBasis& b) { return index_of(b, {1}); }

// WDVV instance sum_m sum_{a,b} <i,j,a>_m g^{ab} <b,k,l>_{d-m} minus the same with j and l swapped,
// as a linear form in the unknown correlators.
struct LinearForm {
    Rational constant = 0;
    std::map<std::array<int, 4>, Rational> coef;
    bool nonlinear = false;
};

std::array<int, 4> sorted_key(int i, int j, int k, int d) {
    std::array<int, 3> s{i, j, k};
    std::sort(s.begin(), s.end());
    return {s[0], s[1], s[2], d};
}

void accumulate(LinearForm& f, const CorrelatorTable& t, const TwistedBasis& b, int i, int j, int k, int l, int d,
                const Rational& sign) {
    auto n = static_cast<int>(b.size());
    for (int m = 0; m <= d; ++m)
        for (int a = 0; a < n; ++a) {
            if (!t.in_window(i, j, a, m)) continue;
            auto x = t.get(i, j, a, m);
            if (x && *x == 0) continue;
            for (int c = 0; c < n; ++c) {
                const Rational& g = b.dual(static_cast<std::size_t>(a), static_cast<std::size_t>(c));
                if (g == 0 || !t.in_window(c, k, l, d - m)) continue;
                auto y = t.get(c, k, l, d - m);
                if (y && *y == 0) continue;
                Rational w = sign * g;
                if (x && y) {
                    f.constant += w * *x * *y;
                } else if (x) {
                    f.coef[sorted_key(c, k, l, d - m)] += w * *x;
                } else if (y) {
                    f.coef[sorted_key(i, j, a, m)] += w * *y;
                } else {
                    f.nonlinear = true;
                }
            }
        }
}

LinearForm instance(const CorrelatorTable& t, const TwistedBasis& b, int i, int j, int k, int l, int d) {
    LinearForm f;
    accumulate(f, t, b, i, j, k, l, d, 1);
    accumulate(f, t, b, i, l, k, j, d, -1);
    for (auto it = f.coef.begin(); it != f.coef.end();)
        it = it->second == 0 ? f.coef.erase(it) : std::next(it);
    return f;
}

std::vector<std::array<int, 5>> instances(const CorrelatorTable& t, const TwistedBasis& b, int base, int step, int d) {
    std::vector<std::array<int, 5>> out;
    auto n = static_cast<int>(b.size());
    (void)t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = j + 1; l < n; ++l)
                    if (b.degree(i) + b.degree(j) + b.degree(k) + b.degree(l) == base + step * d) out.push_back({i, j, k, l, d});
    return out;
}

std::string key_name(const std::array<int, 4>& k) {
    return "<" + std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]) + ">_" + std::to_string(k[3]);
}

}  // namespace

CorrelatorTable classical_correlators(const TwistedBasis& basis, const TargetSpec& twist) {
    CorrelatorTable t(degrees_of(basis), window_base(twist), window_step(twist));
    MPoly e = twist_euler(twist);
    std::vector<MPoly> lifts;
    for (const auto& c : basis.classes) lifts.push_back(basis_lift(c, twist.k, twist.n));
    auto n = static_cast<int>(basis.size());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k)
                if (t.in_window(i, j, k, 0))
                    t.set(i, j, k, 0, integrate_grassmann(lifts[i] * lifts[j] * lifts[k] * e, static_cast<std::size_t>(twist.k), twist.n));
    return t;
}

CorrelatorTable wdvv_solve(const std::vector<Seed>& seeds, const TwistedBasis& basis, const TargetSpec& twist) {
    CorrelatorTable t = classical_correlators(basis, twist);
    int base = window_base(twist), step = window_step(twist);
    int one = unit_index(basis), h = hyperplane_index(basis);
    auto n = static_cast<int>(basis.size());

    for (int d = 1; d <= t.max_degree(); ++d)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) t.set(one, a, b, d, 0);
    for (const auto& s : seeds) {
        if (s.d < 1) fail(ErrorCode::invalid_argument, "seeds must have positive degree");
        // Divisor axiom: <H, a, b>_d = d <a, b>_d and <H, H, a>_d = d^2 <a>_d.
        std::vector<int> cls = s.classes;
        Rational v = s.value;
        while (cls.size() < 3) {
            cls.insert(cls.begin(), h);
            v *= s.d;
        }
        t.set(cls[0], cls[1], cls[2], s.d, v);
    }

    for (int d = 1; d <= t.max_degree(); ++d) {
        auto inst = instances(t, basis, base, step, d);
        for (;;) {
            bool progress = false;
            std::vector<LinearForm> pending;
            for (const auto& x : inst) {
                LinearForm f = instance(t, basis, x[0], x[1], x[2], x[3], x[4]);
                if (f.nonlinear) continue;
                if (f.coef.empty()) {
                    if (f.constant != 0)
                        fail(ErrorCode::invariant_mismatch,
                             "WDVV contradiction at (" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," +
                                 std::to_string(x[2]) + "," + std::to_string(x[3]) + "," + std::to_string(x[4]) + ")");
                    continue;
                }
                if (f.coef.size() == 1) {
                    const auto& [k, c] = *f.coef.begin();
                    if (!t.known(k[0], k[1], k[2], k[3])) {
                        t.set(k[0], k[1], k[2], k[3], -f.constant / c);
                        progress = true;
                    }
                    continue;
                }
                pending.push_back(std::move(f));
            }
            if (progress) continue;
            if (pending.empty()) break;
            // Joint elimination over the remaining linear instances; commit only uniquely fixed unknowns.
            std::map<std::array<int, 4>, std::size_t> col;
            for (const auto& f : pending)
                for (const auto& [k, c] : f.coef) col.emplace(k, 0);
            std::vector<std::array<int, 4>> keys;
            for (auto& [k, idx] : col) {
                idx = keys.size();
                keys.push_back(k);
            }
            QMatrix a(pending.size(), keys.size() + 1);
            for (std::size_t r = 0; r < pending.size(); ++r) {
                for (const auto& [k, c] : pending[r].coef) a(r, col[k]) = c;
                a(r, keys.size()) = -pending[r].constant;
            }
            auto piv = rref(a);
            for (std::size_t r = 0; r < piv.size(); ++r) {
                if (piv[r] == keys.size()) fail(ErrorCode::invariant_mismatch, "inconsistent WDVV system in degree " + std::to_string(d));
                bool single = true;
                for (std::size_t c = 0; c < keys.size(); ++c)
                    if (c != piv[r] && a(r, c) != 0) single = false;
                if (!single) continue;
                const auto& k = keys[piv[r]];
                t.set(k[0], k[1], k[2], k[3], a(r, keys.size()));
                progress = true;
            }
            if (!progress) break;
        }
    }

    auto left = t.unknowns();
    if (!left.empty()) {
        std::string msg = "WDVV propagation stuck; unknown";
        for (const auto& k : left) msg += " " + key_name(k);
        fail(ErrorCode::underdetermined, msg);
    }
    if (auto bad = wdvv_violation(t, basis))
        fail(ErrorCode::invariant_mismatch, "WDVV residual at (" + std::to_string((*bad)[0]) + "," + std::to_string((*bad)[1]) + "," +
                                                std::to_string((*bad)[2]) + "," + std::to_string((*bad)[3]) + "," +
                                                std::to_string((*bad)[4]) + ")");
    return t;
}

std::optional<std::array<int, 5>> wdvv_violation(const CorrelatorTable& t, const TwistedBasis& basis) {
    auto n = static_cast<int>(basis.size());
    for (int d = 0; d <= t.max_degree(); ++d)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        LinearForm f = instance(t, basis, i, j, k, l, d);
                        if (f.nonlinear || !f.coef.empty() || f.constant != 0) return std::array<int, 5>{i, j, k, l, d};
                    }
    return std::nullopt;
}

ConnectionMatrix connection_matrix(const CorrelatorTable& t, const TwistedBasis& basis) {
    auto n = static_cast<int>(basis.size());
    int h = hyperplane_index(basis);
    ConnectionMatrix m(basis.size(), std::vector<QPoly>(basis.size()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int d = 0; d <= t.max_degree(); ++d) {
                Rational v = 0;
                for (int k = 0; k < n; ++k) {
                    const Rational& g = basis.dual(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
                    if (g != 0) v += t.at(h, j, k, d) * g;
                }
                if (v != 0) m[i][j] += QPoly::monomial(v, static_cast<std::size_t>(d));
            }
    return m;
}

OreOperator qde_eliminate(const ConnectionMatrix& m) {
    std::size_t n = m.size();
    if (n == 0) fail(ErrorCode::invalid_argument, "empty connection matrix");
    for (const auto& row : m)
        if (row.size() != n) fail(ErrorCode::invalid_argument, "connection matrix not square");
    std::vector<std::vector<QPoly>> c(n + 1, std::vector<QPoly>(n));
    c[0][n - 1] = QPoly(1);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            QPoly v = c[j][i].theta();
            for (std::size_t l = 0; l < n; ++l)
                if (!c[j][l].is_zero() && !m[l][i].is_zero()) v += c[j][l] * m[l][i];
            c[j + 1][i] = v;
        }
    }
    PolyMatrix sys(n, std::vector<QPoly>(n + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= n; ++j) sys[i][j] = c[j][i];
    auto f = polymatrix_kernel(sys);
    return normalize(OreOperator(f));
}

namespace {

QMatrix coeff_matrix(const ConnectionMatrix& m, int d) {
    QMatrix out(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j].coeff(static_cast<std::size_t>(d));
    return out;
}

QMatrix sub(const QMatrix& a, const QMatrix& b) {
    QMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
    return out;
}

QMatrix add(const QMatrix& a, const QMatrix& b) {
    QMatrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
    return out;
}

bool is_zero(const QMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

}  // namespace

std::vector<std::vector<Rational>> j_series(const ConnectionMatrix& m, int order) {
    std::size_t n = m.size();
    int qdeg = 0;
    for (const auto& row : m)
        for (const auto& e : row) qdeg = std::max(qdeg, e.degree());
    std::vector<QMatrix> md;
    for (int d = 0; d <= qdeg; ++d) md.push_back(coeff_matrix(m, d));
    QMatrix m0 = md[0];
    QMatrix p = QMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r) p = p * m0;
    if (!is_zero(p)) fail(ErrorCode::invalid_argument, "M(0) is not nilpotent");

    // J = exp(t M(0)) K(q) T_0 with theta K = K M - M(0) K, i.e. d K_d + [M(0), K_d] = sum_{e>=1} K_{d-e} M_e.
    std::vector<QMatrix> kd{QMatrix::identity(n)};
    for (int d = 1; d <= order; ++d) {
        QMatrix r(n, n);
        for (int e = 1; e <= std::min(d, qdeg); ++e) r = add(r, kd[static_cast<std::size_t>(d - e)] * md[static_cast<std::size_t>(e)]);
        Rational inv = Rational(1, d);
        QMatrix term = r;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) term(i, j) *= inv;
        QMatrix x = term;
        for (std::size_t k = 0; k < 2 * n && !is_zero(term); ++k) {
            term = sub(term * m0, m0 * term);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) term(i, j) *= inv;
            x = add(x, term);
        }
        kd.push_back(std::move(x));
    }
    std::vector<std::vector<Rational>> out;
    for (const auto& k : kd) {
        std::vector<Rational> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = k(i, 0);
        out.push_back(std::move(col));
    }
    return out;
}

std::vector<Rational> j_scalar(const std::vector<std::vector<Rational>>& j) {
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(v.empty() ? Rational(0) : v[0]);
    return out;
}

std::vector<Rational> lefschetz_series(const std::vector<std::vector<Rational>>& j, const ConnectionMatrix& m,
                                       const std::vector<int>& line_degrees) {
    QMatrix h = coeff_matrix(m, 0);
    std::vector<Rational> out;
    for (std::size_t d = 0; d < j.size(); ++d) {
        std::vector<Rational> v = j[d];
        for (int l : line_degrees)
            for (int k = 1; k <= static_cast<int>(d) * l; ++k) {
                auto hv = h.apply(v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] = hv[i] * l + v[i] * k;
            }
        out.push_back(v.empty() ? Rational(0) : v[0]);
    }
    return out;
}

QconnResult run_no25(int order) {
    const SeedFile& sf = no25_seeds();
    TargetSpec twist = no25_twist();
    QconnResult r;
    r.basis = twisted_pairing(sf.basis, twist);
    for (const auto& [ij, v] : sf.pairing)
        if (r.basis.gram(static_cast<std::size_t>(ij[0]), static_cast<std::size_t>(ij[1])) != v)
            fail(ErrorCode::invariant_mismatch, "twisted pairing disagrees with the seed file");
    CorrelatorTable t = wdvv_solve(sf.seeds, r.basis, twist);
    r.matrix = connection_matrix(t, r.basis);
    r.qde = qde_eliminate(r.matrix);
    r.i0 = lefschetz_series(j_series(r.matrix, order), r.matrix, no25_lines());
    r.picard_fuchs = annihilator_search(r.i0, 4);
    if (r.picard_fuchs) r.picard_fuchs = normalize(*r.picard_fuchs);
    return r;
}

FactorizationCheck check_factorization(const OreOperator& qde, const std::vector<int>& lines, const OreOperator& s,
                                       const QPoly& r, const OreOperator& rfac) {
    FactorizationCheck out;
    OreOperator p = bvs_transform(qde, lines);
    out.divisible = ore_right_divide(p, s).remainder.is_zero();
    OreOperator th = OreOperator::theta(), th1 = th - OreOperator::constant(QPoly(1L));
    OreOperator a = ore_mul(ore_mul(th, th), ore_mul(th1, th1));
    OreOperator lhs = pow(r, static_cast<unsigned>(a.order() + 1)) * p;
    out.identity = ore_mul(ore_mul(compose_reciprocal(a, r), rfac), s) == lhs;
    return out;
}

std::string matrix_to_json(const ConnectionMatrix& m) {
    json j = json::array();
    for (const auto& row : m) {
        json jr = json::array();
        for (const auto& e : row) {
            json c = json::array();
            for (const auto& x : e.coeffs()) c.push_back(to_string(x));
            jr.push_back(c);
        }
        j.push_back(jr);
    }
    return j.dump();
}

}  // namespace cycalc
