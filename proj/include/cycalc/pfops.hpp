#pragma once

#include "cycalc/ratqa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cycalc {

// Operator sum_i a_i(q) theta^i over Q[q] with theta q = q theta + q.
class OreOperator {
public:
    OreOperator() = default;
    explicit OreOperator(std::vector<QPoly> coeffs);  // coeffs[i] multiplies theta^i
    static OreOperator constant(const QPoly& c);
    static OreOperator theta();
    static OreOperator q();
    // From the q-major form sum_j q^j Q_j(theta); qs[j] holds Q_j as a polynomial in theta.
    static OreOperator from_q_major(const std::vector<QPoly>& qs);

    bool is_zero() const { return c_.empty(); }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    int q_degree() const;
    const QPoly& coeff(int i) const;
    Rational coeff(int i, int j) const { return coeff(i).coeff(static_cast<std::size_t>(j)); }
    const std::vector<QPoly>& coeffs() const { return c_; }
    std::vector<QPoly> to_q_major() const;

    OreOperator& operator+=(const OreOperator& o);
    OreOperator& operator-=(const OreOperator& o);
    OreOperator& operator*=(const Rational& s);
    friend OreOperator operator+(OreOperator a, const OreOperator& b) { return a += b; }
    friend OreOperator operator-(OreOperator a, const OreOperator& b) { return a -= b; }
    friend OreOperator operator*(OreOperator a, const Rational& s) { return a *= s; }
    // Left multiplication by a function of q.
    friend OreOperator operator*(const QPoly& f, const OreOperator& a);
    bool operator==(const OreOperator& o) const { return c_ == o.c_; }

private:
    void trim();
    std::vector<QPoly> c_;
};

OreOperator ore_mul(const OreOperator& a, const OreOperator& b);

// denominator * p = quotient o s + remainder, with order(remainder) < order(s)
// and denominator monic of minimal degree.
struct OreDivision {
    QPoly denominator;
    OreOperator quotient, remainder;
};
OreDivision ore_right_divide(const OreOperator& p, const OreOperator& s);

// B = r^{order(a)+1} (a o 1/r), which has polynomial coefficients.
OreOperator compose_reciprocal(const OreOperator& a, const QPoly& r);

// sum_j q^j Q_j(theta) -> sum_j q^j Q_j(theta) prod_i prod_{m=1}^{j} (d_i theta + m)
OreOperator bvs_transform(const OreOperator& qop, const std::vector<int>& degrees);

// Minimal operator of theta-order r annihilating the series, scanning q-degrees upward.
std::optional<OreOperator> annihilator_search(const std::vector<Rational>& series, int order, int max_degree = 12,
                                              int guard = 12);

// Integer coefficients, content 1, positive leading theta coefficient at q^0.
OreOperator normalize(const OreOperator& op);

// Coefficientwise action using theta(q^m) = m q^m.
std::vector<Rational> apply_operator(const OreOperator& op, const std::vector<Rational>& series);

std::string operator_to_json(const OreOperator& op);
OreOperator operator_from_json(const std::string& json);
std::string pretty(const OreOperator& op);
// Parses expressions such as "121 \theta^4 - 77 q (130 \theta^4 + ...)"; q is placed left of theta.
OreOperator parse_operator(const std::string& text);
// Shipped golden operator data/golden/<name>.txt.
OreOperator golden_operator(const std::string& name);

}  // namespace cycalc
