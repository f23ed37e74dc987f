#include "cycalc/ratqa.hpp"

#include "cycalc/error.hpp"

#include <algorithm>
#include <utility>

namespace cycalc {

std::string to_string(const Rational& r) { return canonical(r).get_str(); }

Rational parse_rational(const std::string& s) {
    Rational r;
    if (s.empty() || r.set_str(s, 10) != 0) fail(ErrorCode::invalid_argument, "bad rational '" + s + "'");
    if (r.get_den() == 0) fail(ErrorCode::invalid_argument, "zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

Rational canonical(Rational r) {
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) fail("matrix shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) fail("vector length mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
}

std::vector<std::size_t> rref(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
    QMatrix r = m;
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Rational> solve_unique(const QMatrix& m, const std::vector<Rational>& b) {
    if (b.size() != m.rows()) fail("right-hand side length mismatch");
    QMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) fail("inconsistent linear system");
    if (pivots.size() != m.cols()) fail("linear system is not uniquely solvable");
    std::vector<Rational> x(m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, m.cols());
    return x;
}

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) fail("inverse of non-square matrix");
    std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) fail("singular matrix");
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

// ---------------------------------------------------------------- QPoly

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

QPoly::QPoly(const Rational& c) {
    if (c != 0) c_.push_back(c);
}

QPoly QPoly::monomial(const Rational& c, std::size_t power) {
    if (c == 0) return {};
    std::vector<Rational> v(power + 1);
    v[power] = c;
    return QPoly(std::move(v));
}

void QPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::eval(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

QPoly& QPoly::operator+=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

QPoly& QPoly::operator*=(const Rational& s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return QPoly(std::move(r));
}

QPoly QPoly::theta() const {
    std::vector<Rational> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * static_cast<long>(i);
    return QPoly(std::move(r));
}

QPoly QPoly::shift(std::size_t k) const {
    if (is_zero()) return {};
    std::vector<Rational> r(k, Rational(0));
    r.insert(r.end(), c_.begin(), c_.end());
    return QPoly(std::move(r));
}

std::string QPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        bool unit = (a == 1);
        if (!unit || k == 0) out += cycalc::to_string(a);
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

QPolyDivision divmod(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) fail("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {QPoly(), a};
    std::vector<Rational> quo(a.degree() - db + 1);
    Rational lead_inv = 1 / b.lead();
    for (int k = a.degree(); k >= db; --k) {
        if (rem[k] == 0) continue;
        Rational f = rem[k] * lead_inv;
        quo[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coeffs()[j];
    }
    return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly exact_div(const QPoly& a, const QPoly& b) {
    auto d = divmod(a, b);
    if (!d.remainder.is_zero()) fail("inexact polynomial division");
    return d.quotient;
}

QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a * Rational(1 / a.lead());
}

QPoly pow(const QPoly& p, unsigned e) {
    QPoly r(1);
    for (unsigned i = 0; i < e; ++i) r = r * p;
    return r;
}

Rational content(const std::vector<QPoly>& ps) {
    Integer num = 0, den = 1;
    for (const auto& p : ps)
        for (const auto& c : p.coeffs()) {
            if (c == 0) continue;
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
    if (num == 0) return 1;
    return canonical(Rational(num, den));
}

Rational content(const QPoly& p) { return content(std::vector<QPoly>{p}); }

// ---------------------------------------------------------------- determinants

QPoly ffdet(PolyMatrix m) {
    std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) fail("ffdet: matrix is not square");
    if (n == 0) return QPoly(1);
    bool negate = false;
    QPoly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return QPoly();
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = exact_div(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = QPoly();
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

QPoly cofactor_det(const PolyMatrix& m) {
    std::size_t n = m.size();
    if (n == 0) return QPoly(1);
    if (n == 1) return m[0][0];
    QPoly r;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        PolyMatrix minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<QPoly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[i][c]);
            minor.push_back(std::move(row));
        }
        QPoly t = m[0][j] * cofactor_det(minor);
        if (j % 2) r -= t;
        else r += t;
    }
    return r;
}

std::vector<QPoly> polymatrix_kernel(const PolyMatrix& c) {
    std::size_t rows = c.size();
    std::size_t cols = rows + 1;
    for (const auto& row : c)
        if (row.size() != cols) fail("polymatrix_kernel: need exactly one more column than rows");
    std::vector<QPoly> f(cols);
    QPoly g;
    for (std::size_t i = 0; i < cols; ++i) {
        PolyMatrix minor(rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t j = 0; j < cols; ++j)
                if (j != i) minor[r].push_back(c[r][j]);
        QPoly d = ffdet(std::move(minor));
        f[i] = (i % 2 == 0) ? -d : d;
        g = gcd(g, f[i]);
    }
    if (g.is_zero()) fail("degenerate elimination");
    for (auto& p : f) p = exact_div(p, g);
    Rational ct = content(f);
    for (auto& p : f) p *= Rational(1 / ct);
    return f;
}

}  // namespace cycalc
