#include "cycalc/pfops.hpp"

#include "cycalc/error.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace cycalc {

OreOperator::OreOperator(std::vector<QPoly> coeffs) : c_(std::move(coeffs)) { trim(); }

OreOperator OreOperator::constant(const QPoly& c) { return OreOperator(std::vector<QPoly>{c}); }
OreOperator OreOperator::theta() { return OreOperator(std::vector<QPoly>{QPoly(), QPoly(1L)}); }
OreOperator OreOperator::q() { return constant(QPoly::variable()); }

OreOperator OreOperator::from_q_major(const std::vector<QPoly>& qs) {
    std::vector<QPoly> c;
    for (std::size_t j = 0; j < qs.size(); ++j)
        for (int i = 0; i <= qs[j].degree(); ++i) {
            if (c.size() <= static_cast<std::size_t>(i)) c.resize(i + 1);
            c[i] += QPoly::monomial(qs[j].coeff(i), j);
        }
    return OreOperator(std::move(c));
}

void OreOperator::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int OreOperator::q_degree() const {
    int d = -1;
    for (const auto& p : c_) d = std::max(d, p.degree());
    return d;
}

const QPoly& OreOperator::coeff(int i) const {
    static const QPoly zero;
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : zero;
}

std::vector<QPoly> OreOperator::to_q_major() const {
    int D = q_degree();
    std::vector<QPoly> out(D < 0 ? 0 : D + 1);
    for (int j = 0; j <= D; ++j) {
        std::vector<Rational> th(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) th[i] = c_[i].coeff(j);
        out[j] = QPoly(std::move(th));
    }
    return out;
}

OreOperator& OreOperator::operator+=(const OreOperator& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

OreOperator& OreOperator::operator-=(const OreOperator& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

OreOperator& OreOperator::operator*=(const Rational& s) {
    for (auto& p : c_) p *= s;
    trim();
    return *this;
}

OreOperator operator*(const QPoly& f, const OreOperator& a) {
    std::vector<QPoly> c;
    for (const auto& p : a.c_) c.push_back(f * p);
    return OreOperator(std::move(c));
}

OreOperator ore_mul(const OreOperator& a, const OreOperator& b) {
    if (a.is_zero() || b.is_zero()) return {};
    int ra = a.order(), rb = b.order();
    std::vector<QPoly> out(ra + rb + 1);
    // theta^i o f(q) = sum_l C(i,l) theta^l(f) theta^{i-l}
    std::vector<Integer> binom(1, 1);
    for (int i = 0; i <= ra; ++i) {
        if (i > 0) {
            std::vector<Integer> next(i + 1, 1);
            for (int l = 1; l < i; ++l) next[l] = binom[l - 1] + binom[l];
            binom = next;
        }
        if (a.coeff(i).is_zero()) continue;
        for (int k = 0; k <= rb; ++k) {
            QPoly f = b.coeff(k);
            for (int l = 0; l <= i; ++l) {
                if (!f.is_zero()) out[i - l + k] += a.coeff(i) * f * Rational(binom[l]);
                f = f.theta();
            }
        }
    }
    return OreOperator(std::move(out));
}

OreOperator compose_reciprocal(const OreOperator& a, const QPoly& r) {
    if (r.is_zero()) fail(ErrorCode::invalid_argument, "reciprocal of the zero polynomial");
    if (a.is_zero()) return {};
    int n = a.order();
    // theta^l(1/r) = p_l / r^{l+1}
    std::vector<QPoly> p{QPoly(1L)};
    for (int l = 0; l < n; ++l) p.push_back(p[l].theta() * r - p[l] * r.theta() * Rational(l + 1));
    std::vector<QPoly> rp{QPoly(1L)};
    for (int l = 0; l < n; ++l) rp.push_back(rp.back() * r);
    std::vector<QPoly> out(n + 1);
    std::vector<Integer> binom(1, 1);
    for (int i = 0; i <= n; ++i) {
        if (i > 0) {
            std::vector<Integer> next(i + 1, 1);
            for (int l = 1; l < i; ++l) next[l] = binom[l - 1] + binom[l];
            binom = next;
        }
        if (a.coeff(i).is_zero()) continue;
        for (int l = 0; l <= i; ++l) out[i - l] += a.coeff(i) * p[l] * rp[n - l] * Rational(binom[l]);
    }
    return OreOperator(std::move(out));
}

OreDivision ore_right_divide(const OreOperator& p, const OreOperator& s) {
    if (s.order() < 1) fail(ErrorCode::invalid_argument, "divisor must have order at least 1");
    const QPoly& lead = s.coeff(s.order());
    if (lead.is_zero()) fail(ErrorCode::invalid_argument, "division would invert the zero polynomial");
    int m = s.order();
    QPoly den(1L);
    OreOperator quo;
    OreOperator rem = p;
    // Pseudo-division: den * p = quo o s + rem.
    while (!rem.is_zero() && rem.order() >= m) {
        int k = rem.order();
        QPoly rk = rem.coeff(k);
        std::vector<QPoly> mono(k - m + 1);
        mono[k - m] = rk;
        OreOperator t(std::move(mono));
        rem = lead * rem - ore_mul(t, s);
        quo = lead * quo + t;
        den = den * lead;
    }
    // Cancel the common factor of den and all coefficients.
    QPoly g = den;
    for (const auto& c : quo.coeffs()) g = gcd(g, c);
    for (const auto& c : rem.coeffs()) g = gcd(g, c);
    auto reduce = [&](const OreOperator& op) {
        std::vector<QPoly> c;
        for (const auto& x : op.coeffs()) c.push_back(exact_div(x, g));
        return OreOperator(std::move(c));
    };
    OreDivision out{exact_div(den, g), reduce(quo), reduce(rem)};
    Rational lc = out.denominator.lead();
    if (lc != 1) {
        Rational inv = 1 / lc;
        out.denominator *= inv;
        out.quotient *= inv;
        out.remainder *= inv;
    }
    return out;
}

OreOperator bvs_transform(const OreOperator& qop, const std::vector<int>& degrees) {
    for (int d : degrees)
        if (d <= 0) fail(ErrorCode::invalid_argument, "line degrees must be positive");
    auto qs = qop.to_q_major();
    QPoly th = QPoly::variable();
    QPoly factor(1L);
    for (std::size_t j = 0; j < qs.size(); ++j) {
        if (j > 0)
            for (int d : degrees) factor = factor * (th * Rational(d) + QPoly(Rational(static_cast<long>(j))));
        qs[j] = qs[j] * factor;
    }
    return OreOperator::from_q_major(qs);
}

std::vector<Rational> apply_operator(const OreOperator& op, const std::vector<Rational>& series) {
    std::vector<Rational> out(series.size(), 0);
    int D = op.q_degree();
    for (std::size_t n = 0; n < series.size(); ++n) {
        Rational acc = 0;
        for (int j = 0; j <= D && j <= static_cast<int>(n); ++j) {
            const Rational& f = series[n - j];
            if (f == 0) continue;
            Rational x = static_cast<long>(n - j);
            Rational pw = 1;
            for (int i = 0; i <= op.order(); ++i) {
                Rational a = op.coeff(i, j);
                if (a != 0) acc += a * pw * f;
                pw *= x;
            }
        }
        out[n] = canonical(acc);
    }
    return out;
}

OreOperator normalize(const OreOperator& op) {
    if (op.is_zero()) fail(ErrorCode::invalid_argument, "cannot normalize the zero operator");
    Rational c = content(op.coeffs());
    OreOperator out = op * (1 / c);
    Rational lead = 0;
    for (int i = out.order(); i >= 0 && lead == 0; --i) lead = out.coeff(i, 0);
    if (lead == 0)
        for (int j = 0; j <= out.q_degree() && lead == 0; ++j) lead = out.coeff(out.order(), j);
    if (lead < 0) out *= Rational(-1);
    return out;
}

std::optional<OreOperator> annihilator_search(const std::vector<Rational>& series, int order, int max_degree,
                                              int guard) {
    if (order < 0 || guard < 0) fail(ErrorCode::invalid_argument, "negative order or guard");
    int L = static_cast<int>(series.size());
    for (int D = 0; D <= max_degree; ++D) {
        int unknowns = (order + 1) * (D + 1);
        if (L < unknowns + guard) {
            if (D == 0) fail(ErrorCode::underdetermined, "underdetermined; increase series length");
            return std::nullopt;
        }
        int rows = L - guard;
        QMatrix M(rows, unknowns);
        for (int n = 0; n < rows; ++n)
            for (int j = 0; j <= D && j <= n; ++j) {
                const Rational& f = series[n - j];
                Rational pw = 1;
                for (int i = 0; i <= order; ++i) {
                    M(n, i * (D + 1) + j) = pw * f;
                    pw *= (n - j);
                }
            }
        auto ker = nullspace(M);
        if (ker.empty()) continue;
        if (ker.size() > 1) fail(ErrorCode::underdetermined, "underdetermined; increase series length");
        std::vector<QPoly> c(order + 1);
        for (int i = 0; i <= order; ++i) {
            std::vector<Rational> qc(D + 1);
            for (int j = 0; j <= D; ++j) qc[j] = ker[0][i * (D + 1) + j];
            c[i] = QPoly(std::move(qc));
        }
        OreOperator op = normalize(OreOperator(std::move(c)));
        auto res = apply_operator(op, series);
        bool clean = true;
        for (const auto& x : res) clean = clean && x == 0;
        if (clean) return op;
    }
    return std::nullopt;
}

std::string operator_to_json(const OreOperator& op) {
    nlohmann::ordered_json j;
    j["var"] = "q";
    j["theta_order"] = op.order();
    nlohmann::json rows = nlohmann::json::array();
    int D = op.q_degree();
    for (int i = 0; i <= op.order(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k <= D; ++k) row.push_back(to_string(op.coeff(i, k)));
        rows.push_back(row);
    }
    j["coeffs"] = rows;
    return j.dump();
}

OreOperator operator_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        std::vector<QPoly> c;
        for (const auto& row : j.at("coeffs")) {
            std::vector<Rational> qc;
            for (const auto& x : row) qc.push_back(parse_rational(x.get<std::string>()));
            c.emplace_back(std::move(qc));
        }
        return OreOperator(std::move(c));
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::invalid_argument, std::string("malformed operator JSON: ") + e.what());
    }
}

namespace {

std::string theta_poly(const QPoly& p) {
    std::string s;
    for (int i = p.degree(); i >= 0; --i) {
        Rational c = p.coeff(i);
        if (c == 0) continue;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (s.empty()) s += neg ? "-" : "";
        else s += neg ? " - " : " + ";
        if (a != 1 || i == 0) s += to_string(a);
        if (i > 0) s += (a != 1 ? " " : "") + std::string("θ") + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return s;
}

}  // namespace

std::string pretty(const OreOperator& op) {
    if (op.is_zero()) return "0";
    auto qs = op.to_q_major();
    std::string out;
    for (std::size_t j = 0; j < qs.size(); ++j) {
        if (qs[j].is_zero()) continue;
        Rational c = content(qs[j]);
        QPoly inner = qs[j] * (1 / c);
        // sign goes outside the parentheses when the leading term is negative
        if (inner.lead() < 0) {
            inner = -inner;
            c = -c;
        }
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        std::string qpart = j == 0 ? "" : (j == 1 ? "q" : "q^" + std::to_string(j));
        bool mono = inner.coeffs().size() == static_cast<std::size_t>(inner.degree() + 1) &&
                    std::count_if(inner.coeffs().begin(), inner.coeffs().end(), [](const Rational& x) { return x != 0; }) == 1;
        std::string body = theta_poly(inner);
        std::string pieces;
        if (a != 1) pieces += to_string(a);
        if (!qpart.empty()) pieces += (pieces.empty() ? "" : " ") + qpart;
        if (mono && inner.degree() == 0 && inner.coeff(0) == 1) {
            if (pieces.empty()) pieces = "1";
        } else if (mono) {
            pieces += (pieces.empty() ? "" : " ") + body;
        } else {
            pieces += (pieces.empty() ? "(" : " (") + body + ")";
        }
        out += pieces;
    }
    return out;
}

namespace {

// Commutative polynomial in (theta, q): key (theta power, q power).
using Bivariate = std::map<std::pair<int, int>, Rational>;

Bivariate bmul(const Bivariate& a, const Bivariate& b) {
    Bivariate c;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) {
            auto& slot = c[{ka.first + kb.first, ka.second + kb.second}];
            slot += va * vb;
        }
    for (auto it = c.begin(); it != c.end();)
        it = it->second == 0 ? c.erase(it) : std::next(it);
    return c;
}

Bivariate badd(Bivariate a, const Bivariate& b, int sign) {
    for (const auto& [k, v] : b) a[k] += Rational(sign) * v;
    for (auto it = a.begin(); it != a.end();)
        it = it->second == 0 ? a.erase(it) : std::next(it);
    return a;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Bivariate parse() {
        Bivariate v = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected '" + s_.substr(pos_, 8) + "'");
        return v;
    }

private:
    [[noreturn]] void error(const std::string& what) {
        fail(ErrorCode::invalid_argument, "operator parse error at " + std::to_string(pos_) + ": " + what);
    }

    void skip() {
        while (pos_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
            } else if (s_.compare(pos_, 2, "\\,") == 0 || s_.compare(pos_, 2, "\\ ") == 0) {
                pos_ += 2;
            } else if (s_.compare(pos_, 5, "\\left") == 0) {
                pos_ += 5;
            } else if (s_.compare(pos_, 6, "\\right") == 0) {
                pos_ += 6;
            } else if (s_.compare(pos_, 2, "\\\\") == 0) {
                pos_ += 2;
            } else {
                break;
            }
        }
    }

    bool eat(const std::string& t) {
        skip();
        if (s_.compare(pos_, t.size(), t) == 0) {
            pos_ += t.size();
            return true;
        }
        return false;
    }

    bool at_factor_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '{' || c == 'q' || c == '\\' ||
               c == 't' || static_cast<unsigned char>(c) == 0xce;
    }

    Bivariate expr() {
        int sign = 1;
        if (eat("-")) sign = -1;
        else eat("+");
        Bivariate acc = badd({}, term(), sign);
        while (true) {
            if (eat("+")) acc = badd(acc, term(), 1);
            else if (eat("-")) acc = badd(acc, term(), -1);
            else break;
        }
        return acc;
    }

    Bivariate term() {
        Bivariate acc = power();
        while (true) {
            if (eat("*") || eat("\\cdot")) {
                acc = bmul(acc, power());
            } else if (eat("/")) {
                Bivariate d = power();
                if (d.size() != 1 || d.begin()->first != std::make_pair(0, 0)) error("division by a non-constant");
                Rational inv = 1 / d.begin()->second;
                for (auto& [k, v] : acc) v *= inv;
            } else if (at_factor_start()) {
                acc = bmul(acc, power());
            } else {
                break;
            }
        }
        return acc;
    }

    Bivariate power() {
        Bivariate base = primary();
        if (eat("^")) {
            bool braced = eat("{");
            int e = integer();
            if (braced && !eat("}")) error("missing '}'");
            Bivariate r{{{0, 0}, Rational(1)}};
            for (int i = 0; i < e; ++i) r = bmul(r, base);
            return r;
        }
        return base;
    }

    int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) error("expected integer");
        return std::stoi(s_.substr(start, pos_ - start));
    }

    Bivariate primary() {
        skip();
        if (eat("(")) {
            Bivariate v = expr();
            if (!eat(")")) error("missing ')'");
            return v;
        }
        if (eat("{")) {
            Bivariate v = expr();
            if (!eat("}")) error("missing '}'");
            return v;
        }
        if (eat("\\theta") || eat("θ") || eat("theta")) return {{{1, 0}, Rational(1)}};
        if (eat("q")) return {{{0, 1}, Rational(1)}};
        skip();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return {{{0, 0}, Rational(Integer(s_.substr(start, pos_ - start)))}};
        }
        error("unexpected token");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

OreOperator parse_operator(const std::string& text) {
    Bivariate b = Parser(text).parse();
    std::vector<QPoly> c;
    std::map<int, std::vector<Rational>> rows;
    int r = -1;
    for (const auto& [k, v] : b) r = std::max(r, k.first);
    c.resize(r + 1);
    for (const auto& [k, v] : b) c[k.first] += QPoly::monomial(v, k.second);
    return OreOperator(std::move(c));
}

OreOperator golden_operator(const std::string& name) {
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') fail(ErrorCode::invalid_argument, "bad golden name " + name);
    std::string path = std::string(CYCALC_DATA_DIR) + "/golden/" + name + ".txt";
    std::ifstream in(path);
    if (!in) fail(ErrorCode::not_found, "no golden operator " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_operator(ss.str());
}

}  // namespace cycalc
