#pragma once

#include "cycalc/ratqa.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace cycalc {

using Exponent = std::vector<int>;
using Partition = std::vector<int>;

// Sparse multivariate polynomial over Q.
class MPoly {
public:
    MPoly() = default;
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}
    static MPoly constant(std::size_t nvars, const Rational& c);
    static MPoly var(std::size_t nvars, std::size_t i, const Rational& c = 1);
    static MPoly linear(const std::vector<Rational>& coeffs);
    static MPoly monomial(const Exponent& e, const Rational& c = 1);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous() const;
    int degree() const;  // -1 for zero
    Rational coeff(const Exponent& e) const;
    void add_term(const Exponent& e, const Rational& c);

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const Rational& s);
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Rational& s) { return a *= s; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

    MPoly truncated(int max_degree) const;
    MPoly homogeneous_part(int degree) const;
    MPoly substitute(const std::vector<MPoly>& images) const;
    MPoly permuted(const std::vector<std::size_t>& perm) const;  // x_i -> x_{perm[i]}
    Rational eval(const std::vector<Rational>& point) const;

private:
    std::size_t nvars_ = 0;
    std::map<Exponent, Rational> terms_;
};

MPoly pow(const MPoly& p, unsigned e, int max_degree = -1);

struct RingPresentation {
    std::vector<std::string> generators;
    std::vector<MPoly> relations;
    int dmax = 0;
};

class Ring;
using RingHandle = std::shared_ptr<const Ring>;

class RingElement {
public:
    RingElement() = default;
    RingElement(RingHandle ring, std::vector<std::vector<Rational>> comps);

    const RingHandle& ring() const { return ring_; }
    const std::vector<Rational>& component(int degree) const { return comps_.at(degree); }
    std::vector<Rational>& component(int degree) { return comps_.at(degree); }
    int dmax() const { return static_cast<int>(comps_.size()) - 1; }
    bool is_zero() const;
    bool is_zero_in_degree(int degree) const;
    int top_degree() const;  // -1 for zero
    RingElement degree_part(int degree) const;
    RingElement truncated(int max_degree) const;

    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const Rational& s);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const Rational& s) { return a *= s; }
    friend RingElement operator*(const RingElement& a, const RingElement& b);
    bool operator==(const RingElement& o) const { return comps_ == o.comps_; }

    MPoly to_poly() const;

private:
    RingHandle ring_;
    std::vector<std::vector<Rational>> comps_;
};

class Ring : public std::enable_shared_from_this<Ring> {
public:
    static RingHandle make(const RingPresentation& p);

    const RingPresentation& presentation() const { return pres_; }
    std::size_t nvars() const { return pres_.generators.size(); }
    int dmax() const { return pres_.dmax; }
    std::vector<std::size_t> dims() const;
    std::size_t dim(int degree) const { return basis_.at(degree).size(); }
    const std::vector<Exponent>& basis(int degree) const { return basis_.at(degree); }

    RingElement zero() const;
    RingElement one() const;
    RingElement gen(std::size_t i) const;
    RingElement from_poly(const MPoly& p) const;
    RingElement linear(const std::vector<Rational>& coeffs) const;

    // Normal form of a monomial: sparse (basis index, coefficient) list.
    const std::vector<std::pair<std::size_t, Rational>>& normal_form(const Exponent& e) const;

private:
    Ring() = default;
    void build();

    RingPresentation pres_;
    bool monomial_ideal_ = false;
    std::vector<std::vector<Exponent>> basis_;
    std::vector<std::vector<Exponent>> monomials_;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> basis_index_;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> mono_index_;
    std::vector<QMatrix> reduced_;  // rref of relation span per degree
    std::vector<std::vector<std::size_t>> pivot_of_col_;
    mutable std::unordered_map<std::uint64_t, std::vector<std::pair<std::size_t, Rational>>> nf_cache_;

    friend class RingElement;
};

std::uint64_t exponent_key(const Exponent& e);
std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree);  // graded lex, descending

RingElement pow(const RingElement& a, unsigned e);

// Element carrying an implicit z-power: the degree-m part multiplies z^(weight - m).
struct WeightedElement {
    RingElement value;
    int weight = 0;

    WeightedElement& operator+=(const WeightedElement& o);
    friend WeightedElement operator*(const WeightedElement& a, const WeightedElement& b) {
        return {a.value * b.value, a.weight + b.weight};
    }
};

// Semistandard tableaux of shape lambda with entries 1..k, returned as content vectors.
std::vector<Exponent> ssyt_contents(const Partition& lambda, std::size_t k);
Integer hook_content_dimension(const Partition& lambda, std::size_t k);
std::vector<Partition> partitions_of(int n, int max_parts = -1, int max_part = -1);
Partition conjugate(const Partition& lambda);

// Schur polynomial in the generators listed in vars.
MPoly schur_poly(const Partition& lambda, std::size_t nvars, const std::vector<std::size_t>& vars);
RingElement schur(const RingHandle& ring, const Partition& lambda, const std::vector<std::size_t>& vars);

// Presentation of H*((P^{n-1})^k) truncated at dmax.
RingPresentation projective_power_presentation(std::size_t k, int n, int dmax);

// Martin integration over G(k,n): (1/k!) [prod H_i^{n-1}] f * prod_{i != j}(H_i - H_j).
Rational integrate_grassmann(const RingElement& f, std::size_t k, int n);
Rational integrate_grassmann(const MPoly& f, std::size_t k, int n);

}  // namespace cycalc
