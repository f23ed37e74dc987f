#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace cycalc {

// Reduced fraction with positive denominator. mpq_class keeps the canonical form
// as long as every value leaving this module has been canonicalized.
using Rational = mpq_class;
using Integer = mpz_class;

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);
Rational canonical(Rational r);

class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    static QMatrix identity(std::size_t n);
    QMatrix operator*(const QMatrix& o) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
    bool operator==(const QMatrix& o) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m);
std::size_t rank(QMatrix m);
std::vector<std::vector<Rational>> nullspace(const QMatrix& m);
// Unique solution of m x = b; throws if inconsistent or not unique.
std::vector<Rational> solve_unique(const QMatrix& m, const std::vector<Rational>& b);
QMatrix inverse(const QMatrix& m);

class QPoly {
public:
    QPoly() = default;
    explicit QPoly(std::vector<Rational> coeffs);
    QPoly(const Rational& c);  // NOLINT: constants convert implicitly
    QPoly(long c) : QPoly(Rational(c)) {}  // NOLINT
    static QPoly monomial(const Rational& c, std::size_t power);
    static QPoly variable() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
    Rational eval(const Rational& x) const;

    QPoly operator-() const;
    QPoly& operator+=(const QPoly& o);
    QPoly& operator-=(const QPoly& o);
    QPoly& operator*=(const Rational& s);
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator*(const QPoly& a, const QPoly& b);
    friend QPoly operator*(QPoly a, const Rational& s) { return a *= s; }
    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    // Euler operator q d/dq.
    QPoly theta() const;
    QPoly shift(std::size_t k) const;  // multiply by q^k

    std::string to_string(const std::string& var = "q") const;

private:
    void trim();
    std::vector<Rational> c_;
};

struct QPolyDivision {
    QPoly quotient, remainder;
};
QPolyDivision divmod(const QPoly& a, const QPoly& b);
QPoly exact_div(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic, or zero
QPoly pow(const QPoly& p, unsigned e);
// Positive rational c such that p / c has coprime integer coefficients.
Rational content(const QPoly& p);
Rational content(const std::vector<QPoly>& ps);

using PolyMatrix = std::vector<std::vector<QPoly>>;

// Bareiss fraction-free determinant over Q[q].
QPoly ffdet(PolyMatrix m);
QPoly cofactor_det(const PolyMatrix& m);

// Kernel of a rows x (rows+1) matrix via signed maximal minors,
// f_i = (-1)^{i+1} det(C with column i removed), divided by the gcd.
std::vector<QPoly> polymatrix_kernel(const PolyMatrix& c);

}  // namespace cycalc
